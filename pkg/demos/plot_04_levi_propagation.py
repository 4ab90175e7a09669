"""
Restricting to Levi subgroups and propagating examples
======================================================

Restriction of an induced module's character to a Levi subsystem gives
the induced character of the projected weight.  Reading the same
embedding the other way carries small-rank examples up to larger groups.
"""

from weylforge import levi_subsystem, nabla_character, parse_system, restrict_character
from weylforge.levi import format_pattern, merge_patterns, propagation_table

b3 = parse_system("B3")
levi = levi_subsystem(b3, [2, 3], one_based=True)
lam = (1, 2, 1)
res = restrict_character(nabla_character(b3, lam), levi)
print(levi.sub.name, res == nabla_character(levi.sub, levi.project(lam)))

for name in ["B6", "C6", "D6", "E8", "F4"]:
    rows = propagation_table(name)
    for p in sorted({r[2] for r in rows}):
        pats = merge_patterns([r[3] for r in rows if r[2] == p], p)
        print(name, f"p={p}", ", ".join(format_pattern(x) for x in pats))
