"""The Jantzen sum formula, in the chi basis and in the simple-character basis."""
from __future__ import annotations

from typing import Mapping, Sequence

from .charalg import ChiSum
from .errors import MissingDecompositionData, NotDominant, check_int64
from .rootsys import RootSystem, Weight
from .weylact import dot_reflect, straighten


def nu_p(n: int, p: int) -> int:
    """p-adic valuation of a positive integer."""
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def jsf_terms(rs: RootSystem, lam: Sequence[int], p: int):
    """Yield ``(alpha_index, m, valuation, reflected weight)`` for every term of the sum."""
    lr = tuple(x + 1 for x in lam)
    for k in range(len(rs.positive_roots)):
        n = rs.pairing(lr, k)
        m = 1
        while m * p < n:
            yield k, m, nu_p(m * p, p), dot_reflect(rs, lam, k, m, p)
            m += 1


def jsf(rs: RootSystem, lam: Sequence[int], p: int, via: str = "reflection") -> ChiSum:
    """sum_{i>0} ch Delta(lam)^i as a canonical chi-sum.

    ``via="reflection"`` straightens ``s_{alpha,mp} . lam`` directly;
    ``via="shift"`` uses ``-chi(lam - mp alpha)`` instead.  Both give the
    same answer; the second exists so the two can be compared.
    """
    lam = rs.weight(lam)
    if not rs.is_dominant(lam):
        raise NotDominant(f"{lam} is not dominant")
    acc: dict[Weight, int] = {}
    for k, m, v, refl in jsf_terms(rs, lam, p):
        if via == "reflection":
            s = straighten(rs, refl)
            sign = s.sign
        elif via == "shift":
            a = rs.positive_roots[k]
            s = straighten(rs, tuple(x - m * p * y for x, y in zip(lam, a)))
            sign = -s.sign
        else:
            raise ValueError(f"unknown evaluation path {via!r}")
        if sign:
            acc[s.dominant] = check_int64(acc.get(s.dominant, 0) + sign * v, "sum coefficient")
    return ChiSum(rs, acc)


def _l_form(rs: RootSystem, sum_: ChiSum, columns: Mapping[Weight, Mapping[Weight, int]]) -> dict[Weight, int]:
    out: dict[Weight, int] = {}
    for mu, c in sum_.items():
        col = columns.get(mu)
        if col is None:
            raise MissingDecompositionData(f"no decomposition column for Delta{mu} in {rs.name}")
        for nu, d in col.items():
            out[nu] = out.get(nu, 0) + c * d
    return {nu: out[nu] for nu in rs.sort_desc(out) if out[nu]}


def jsf_in_simple_basis(rs: RootSystem, lam: Sequence[int], p: int, table, sum_: ChiSum | None = None):
    """Rewrite the sum formula in the basis of simple characters.

    ``table`` is either a mapping ``mu -> {nu: [Delta(mu):L(nu)]}`` covering
    every chi-term, giving one ``{nu: multiplicity}`` dict, or a
    :class:`~weylforge.decomp.DecompositionBranchSet`, giving the list of
    distinct results over its consistent assignments.
    """
    lam = rs.weight(lam)
    sum_ = jsf(rs, lam, p) if sum_ is None else sum_
    if hasattr(table, "branch_tables"):
        out: list[dict] = []
        for cols in table.branch_tables():
            d = _l_form(rs, sum_, cols)
            if d not in out:
                out.append(d)
        return out
    return _l_form(rs, sum_, table)
