"""
Decomposition numbers as a set of branches
==========================================

When the sum formula and the structural constraints do not pin a column
down, the solver keeps every consistent assignment.  Focusing on a few
weights groups the assignments into a small number of branches.
"""

from weylforge import fixture_simple_characters, jsf_in_simple_basis, parse_system, solve_decomposition

b3 = parse_system("B3")

# B3 at p=2: literature data for two simple characters fixes the column of Delta(0,2,0)
known = fixture_simple_characters("B3", 2)
bset = solve_decomposition(b3, (0, 2, 0), 2, known=known)
print("Delta(0,2,0) column:", bset.branches)
print("sum formula in the simple basis:", jsf_in_simple_basis(b3, (0, 2, 0), 2, bset))

# without the literature data the trivial multiplicity stays open
free = solve_decomposition(b3, (0, 2, 0), 2, known={})
print("without fixtures:", len(free.branches), "branches")

# C3 at p=3: two branches for the multiplicity of L(0,3,0) in Delta(2,1,2)
c3 = parse_system("C3")
bset = solve_decomposition(c3, (2, 1, 2), 3, focus=[(0, 3, 0), (0, 0, 0)])
for i, col in enumerate(bset.branches):
    print(f"branch {i}: {col}  ({len(bset.branch_worlds(i))} consistent assignments)")
print("entries left open:", bset.undetermined)
