"""Levi subsystems: type identification, restriction of characters, propagation.

A Levi subsystem is materialized as a standalone root system of the
matching type together with an index map, so every other module works on
the Levi side unchanged.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .charalg import VirtualCharacter, nabla_character, tensor
from .errors import (AmbiguousTopWeight, InvalidFamilyRank, NoCertificate, NoEmbedding,
                     UnsupportedFamily)
from .rootsys import FAMILIES, RootSystem, Weight, build_root_system, cartan_matrix
from .weylact import to_dominant

WILDCARD = "*"


@dataclass(frozen=True)
class Levi:
    ambient: RootSystem
    J: tuple[int, ...]          # ambient simple indices, 0-based, sorted
    sub: RootSystem
    index_map: tuple[int, ...]  # index_map[k] = ambient index of the k-th Levi simple root

    def project(self, lam: Sequence[int]) -> Weight:
        """Levi omega-coordinates ``<lam, alpha_j^vee>`` of an ambient weight."""
        return tuple(lam[j] for j in self.index_map)

    def lift_root_combination(self, lam: Sequence[int], coeffs: Sequence[int]) -> Weight:
        """``lam - sum_k coeffs[k] * alpha_{index_map[k]}`` in ambient coordinates."""
        out = list(lam)
        for k, c in enumerate(coeffs):
            if c:
                col = self.ambient.simple_roots[self.index_map[k]]
                for i in range(len(out)):
                    out[i] -= c * col[i]
        return tuple(out)


def _isomorphisms(target, C, limit=None):
    """Bijections ``perm`` with ``target[a][b] == C[perm[a]][perm[b]]``."""
    n = len(C)
    perm: list[int] = []
    used = [False] * n
    found = []

    def extend():
        a = len(perm)
        if a == n:
            found.append(tuple(perm))
            return limit is not None and len(found) >= limit
        for x in range(n):
            if used[x] or C[x][x] != target[a][a]:
                continue
            if all(target[a][b] == C[x][perm[b]] and target[b][a] == C[perm[b]][x] for b in range(a)):
                perm.append(x)
                used[x] = True
                if extend():
                    return True
                perm.pop()
                used[x] = False
        return False

    extend()
    return found


def _candidate_types(n: int):
    for fam in FAMILIES:
        try:
            cartan_matrix(fam, n)
        except InvalidFamilyRank:
            continue
        yield fam


def _connected(C) -> bool:
    n = len(C)
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if C[i][j] and j not in seen:
                seen.add(j)
                stack.append(j)
    return len(seen) == n


def identify_type(C: Sequence[Sequence[int]]) -> tuple[str, int, tuple[int, ...]]:
    """Type of a connected Cartan matrix and a relabeling onto Bourbaki numbering.

    An order-preserving labeling is preferred, then the first family in
    A..G order, so that A3 wins over the (disallowed) D3 and a B2 stays B2.
    """
    n = len(C)
    if n == 0:
        raise NoEmbedding("empty subsystem")
    if not _connected(C):
        raise UnsupportedFamily("disconnected Levi subsystems are not supported")
    ident = tuple(range(n))
    fams = list(_candidate_types(n))
    for fam in fams:
        T = cartan_matrix(fam, n)
        if all(T[a][b] == C[a][b] for a in range(n) for b in range(n)):
            return fam, n, ident
    for fam in fams:
        T = cartan_matrix(fam, n)
        isos = _isomorphisms(T, C)
        if isos:
            rev = tuple(reversed(ident))
            return fam, n, rev if rev in isos else min(isos)
    raise NoEmbedding("Cartan submatrix is not of finite type")


@lru_cache(maxsize=1024)
def _levi(rs: RootSystem, J: tuple[int, ...]) -> Levi:
    C = [[rs.cartan[i][j] for j in J] for i in J]
    fam, n, perm = identify_type(C)
    return Levi(rs, J, build_root_system(fam, n), tuple(J[k] for k in perm))


def levi_subsystem(rs: RootSystem, J: Iterable[int], one_based: bool = False) -> Levi:
    J = sorted(set(int(j) - (1 if one_based else 0) for j in J))
    if not J or J[0] < 0 or J[-1] >= rs.rank:
        raise NoEmbedding(f"index set {J} is not a subset of the simple roots of {rs.name}")
    return _levi(rs, tuple(J))


def restrict_character(c: VirtualCharacter, J: Iterable[int] | Levi, one_based: bool = False) -> VirtualCharacter:
    """The ``lam - NJ`` part of a weight-form character, as a Levi character.

    ``lam`` is the unique dominance-maximal support weight.  Multiplicities
    of non-dominant weights are read off their dominant conjugates, so no
    explicit orbit expansion is needed.
    """
    if c.form != "weight":
        from .errors import FormMismatch
        raise FormMismatch("restriction needs a weight-form character")
    levi = J if isinstance(J, Levi) else levi_subsystem(c.rs, J, one_based)
    rs = c.rs
    if not c:
        return VirtualCharacter(levi.sub, {}, "weight")
    tops = c.maximal_weights()
    if len(tops) != 1:
        raise AmbiguousTopWeight(f"support has {len(tops)} maximal weights: {tops}")
    lam = tops[0]
    lam_j = levi.project(lam)
    sub = levi.sub
    out = {}
    d = c.to_dict()
    for kappa in sub.dominant_weights_below(lam_j):
        coeffs = sub.root_lattice_coords(sub.sub(lam_j, kappa))
        nu = levi.lift_root_combination(lam, coeffs)
        dom, _ = to_dominant(rs, nu)
        m = d.get(dom, 0)
        if m:
            out[kappa] = m
    return VirtualCharacter(sub, out, "weight")


def restrict_nabla(rs: RootSystem, lam: Sequence[int], J, one_based: bool = False) -> VirtualCharacter:
    return restrict_character(nabla_character(rs, lam), J, one_based)


def restrict_tensor_check(rs: RootSystem, lam: Sequence[int], mu: Sequence[int], J,
                          one_based: bool = False) -> bool:
    """Restriction commutes with tensor products of induced modules (top parts)."""
    levi = J if isinstance(J, Levi) else levi_subsystem(rs, J, one_based)
    a, b = nabla_character(rs, lam), nabla_character(rs, mu)
    left = restrict_character(tensor(a, b), levi)
    right = tensor(restrict_character(a, levi), restrict_character(b, levi))
    return left == right


def jq_levi_multiplicity_check(rs: RootSystem, lam: Sequence[int], mu: Sequence[int], J, p: int,
                               r: int = 1, known=None, one_based: bool = False, branch: int = 0) -> bool:
    """Compare ``[nabla(lam) : nabla^(p,r)(mu)]`` with the Levi-side multiplicity.

    Both sides are computed from good (p,r)-filtration certificates.  When
    either side is obstructed, :class:`NoCertificate` is raised; it is
    marked critical when only the Levi side is obstructed.
    """
    from .filtrate import good_filtration_test

    levi = J if isinstance(J, Levi) else levi_subsystem(rs, J, one_based)
    lam, mu = rs.weight(lam), rs.weight(mu)
    diff = rs.root_lattice_coords(rs.sub(lam, mu))
    if diff is None or any(x < 0 for x in diff) or any(diff[i] for i in range(rs.rank) if i not in levi.J):
        raise NoEmbedding(f"{lam} - {mu} is not in the span of J")
    big = good_filtration_test(nabla_character(rs, lam), "nabla_pr", p, r, known=known, branch=branch)
    small = good_filtration_test(nabla_character(levi.sub, levi.project(lam)), "nabla_pr", p, r,
                                 branch=branch)
    if not big.is_certificate or not small.is_certificate:
        raise NoCertificate(
            f"good ({p},{r})-filtration test obstructed on the "
            f"{'ambient' if not big.is_certificate else ''}"
            f"{' and ' if not big.is_certificate and not small.is_certificate else ''}"
            f"{'Levi' if not small.is_certificate else ''} side",
            ambient=big, levi=small, critical=big.is_certificate and not small.is_certificate)
    return big.multiplicity(mu) == small.multiplicity(levi.project(mu))


# -- propagation ------------------------------------------------------------

@dataclass(frozen=True)
class Base:
    id: str
    family: str
    p: int
    lam: tuple[int, ...]


def base_cases(rank_limit: int = 8) -> dict[str, list[Base]]:
    """Low-rank counterexample weights, keyed by base id."""
    return {
        "B3_111": [Base("B3_111", "B3", 2, (1, 1, 1))],
        "Bk_110": [Base("Bk_110", f"B{m}", 2, (1, 1) + (0,) * (m - 2)) for m in range(3, rank_limit + 1)],
        "C3_222": [Base("C3_222", "C3", 3, (2, 2, 2))],
        "C3_122": [Base("C3_122", "C3", 3, (1, 2, 2))],
        "D4_1111": [Base("D4_1111", "D4", 2, (1, 1, 1, 1))],
        "G2_11": [Base("G2_11", "G2", 2, (1, 1))],
    }


BASE_IDS = tuple(base_cases())


def embeddings(ambient: RootSystem, sub_family: str, sub_rank: int) -> list[Levi]:
    """Every way the given type sits in ``ambient`` as a Levi subsystem.

    Each entry's ``index_map`` is one isomorphism from the standalone
    subsystem onto a connected subset of the ambient simple roots.
    """
    T = cartan_matrix(sub_family, sub_rank)
    sub = build_root_system(sub_family, sub_rank)
    out = []
    for J in itertools.combinations(range(ambient.rank), sub_rank):
        C = [[ambient.cartan[i][j] for j in J] for i in J]
        if not _connected(C):
            continue
        for perm in _isomorphisms(T, C):
            out.append(Levi(ambient, J, sub, tuple(J[k] for k in perm)))
    return out


def levi_propagation(base: str, ambient: str | RootSystem) -> list[tuple[str, int, int, tuple]]:
    """Pattern rows ``(family, rank, p, pattern)`` obtained by placing a base case in a Levi subsystem.

    Coordinates outside the Levi subsystem are ``"*"``: any value in
    ``[0, p)`` is allowed there.
    """
    from .rootsys import parse_system

    rs = ambient if isinstance(ambient, RootSystem) else parse_system(ambient)
    cases = base_cases(max(rs.rank, 3)).get(base)
    if cases is None:
        raise NoEmbedding(f"unknown base case {base!r}")
    rows = []
    for case in cases:
        fam, n = case.family[0], int(case.family[1:])
        if n > rs.rank:
            continue
        for levi in embeddings(rs, fam, n):
            pat: list = [WILDCARD] * rs.rank
            for k, j in enumerate(levi.index_map):
                pat[j] = case.lam[k]
            row = (rs.family, rs.rank, case.p, tuple(pat))
            if row not in rows:
                rows.append(row)
    if not rows:
        raise NoEmbedding(f"{base} does not embed in {rs.name}")
    return rows


def propagation_table(ambient: str | RootSystem) -> list[tuple[str, int, int, tuple]]:
    """Rows from every base case that embeds in ``ambient``, in base order."""
    rows = []
    for base in BASE_IDS:
        try:
            found = levi_propagation(base, ambient)
        except NoEmbedding:
            continue
        rows.extend(r for r in found if r not in rows)
    return rows


def _entry_set(x, p: int) -> frozenset:
    if x == WILDCARD:
        return frozenset(range(p))
    if isinstance(x, (set, frozenset, list, tuple)):
        return frozenset(x)
    return frozenset((x,))


def _entry(vals: frozenset, p: int):
    if vals == frozenset(range(p)):
        return WILDCARD
    if len(vals) == 1:
        return next(iter(vals))
    return frozenset(vals)


def merge_patterns(patterns: Iterable[Sequence], p: int) -> list[tuple]:
    """Merge patterns that differ in a single coordinate, until nothing changes.

    The expanded weight set is preserved; the result is the shortest list
    obtained greedily in input order.
    """
    pats = [tuple(_entry_set(x, p) for x in pat) for pat in patterns]
    changed = True
    while changed:
        changed = False
        for a, b in itertools.combinations(range(len(pats)), 2):
            diff = [i for i in range(len(pats[a])) if pats[a][i] != pats[b][i]]
            if len(diff) == 1:
                i = diff[0]
                merged = pats[a][:i] + (pats[a][i] | pats[b][i],) + pats[a][i + 1:]
                pats[a] = merged
                del pats[b]
                changed = True
                break
    return [tuple(_entry(v, p) for v in pat) for pat in pats]


def expand_pattern(pattern: Sequence, p: int) -> set[tuple[int, ...]]:
    """All restricted weights matching a pattern (entries: int, ``"*"`` or a set of ints)."""
    choices = []
    for x in pattern:
        if x == WILDCARD:
            choices.append(range(p))
        elif isinstance(x, (set, frozenset, list, tuple)):
            choices.append(sorted(x))
        else:
            choices.append((x,))
    return set(itertools.product(*choices))


def format_pattern(pattern: Sequence) -> str:
    parts = []
    for x in pattern:
        if isinstance(x, (set, frozenset, list, tuple)):
            parts.append("{" + ",".join(str(v) for v in sorted(x)) + "}")
        else:
            parts.append(str(x))
    return "(" + ",".join(parts) + ")"
