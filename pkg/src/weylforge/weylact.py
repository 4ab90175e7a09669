"""Finite and affine Weyl group actions on omega-coordinate weights."""
from __future__ import annotations

from dataclasses import dataclass
import math
from functools import lru_cache
from typing import Sequence

from .errors import NotDominant, OrbitTooLarge
from .rootsys import RootSystem, Weight

ORBIT_LIMIT = 10**7


@dataclass(frozen=True)
class StraightenResult:
    sign: int
    dominant: Weight | None
    length: int = 0

    def __iter__(self):
        yield self.sign
        yield self.dominant


def dot_reflect(rs: RootSystem, lam: Sequence[int], alpha: Sequence[int] | int, m: int, p: int) -> Weight:
    """The affine dot reflection ``s_{alpha, mp} . lam``."""
    k = alpha if isinstance(alpha, int) else rs.root_index(alpha)
    lr = tuple(x + 1 for x in lam)
    coeff = rs.pairing(lr, k) - m * p
    a = rs.positive_roots[k]
    return tuple(x - coeff * y for x, y in zip(lam, a))


def straighten(rs: RootSystem, mu: Sequence[int]) -> StraightenResult:
    """Bring ``mu`` into the dominant chamber under the dot action.

    Returns sign 0 when ``mu + rho`` lies on a reflection hyperplane, otherwise
    ``(-1)**l(w)`` and the dominant weight ``w . mu``.
    """
    rs.check(mu)
    return _straighten(rs, tuple(mu))


@lru_cache(maxsize=1 << 18)
def _straighten(rs: RootSystem, mu: Weight) -> StraightenResult:
    nu = [x + 1 for x in mu]
    cols = rs.simple_roots
    n = rs.rank
    length = 0
    while True:
        low = 0
        idx = -1
        for i in range(n):
            v = nu[i]
            if v == 0:
                return StraightenResult(0, None, length)
            if v < low:
                low = v
                idx = i
        if idx < 0:
            return StraightenResult(-1 if length % 2 else 1, tuple(x - 1 for x in nu), length)
        col = cols[idx]
        for j in range(n):
            nu[j] -= low * col[j]
        length += 1


def to_dominant(rs: RootSystem, mu: Sequence[int]) -> tuple[Weight, int]:
    """Dominant representative of the ordinary W-orbit of ``mu`` and a word length reaching it."""
    return _to_dominant(rs, tuple(mu))


@lru_cache(maxsize=1 << 20)
def _to_dominant(rs: RootSystem, mu: Weight) -> tuple[Weight, int]:
    nu = list(mu)
    cols = rs.simple_roots
    n = rs.rank
    length = 0
    while True:
        idx = min(range(n), key=nu.__getitem__)
        v = nu[idx]
        if v >= 0:
            return tuple(nu), length
        col = cols[idx]
        for j in range(n):
            nu[j] -= v * col[j]
        length += 1


def orbit(rs: RootSystem, lam: Sequence[int], limit: int = ORBIT_LIMIT) -> list[Weight]:
    """The ordinary W-orbit of ``lam``, listed from the dominant element down."""
    rs.check(lam)
    start, _ = to_dominant(rs, tuple(lam))
    return list(_orbit(rs, start, limit))


@lru_cache(maxsize=4096)
def _orbit(rs: RootSystem, dom: Weight, limit: int) -> tuple[Weight, ...]:
    cols = rs.simple_roots
    n = rs.rank
    out = [dom]
    seen = {dom}
    frontier = [dom]
    while frontier:
        nxt = []
        for nu in frontier:
            for i in range(n):
                v = nu[i]
                # moving down only: each orbit element is reached from above
                if v > 0:
                    col = cols[i]
                    w = tuple(a - v * b for a, b in zip(nu, col))
                    if w not in seen:
                        seen.add(w)
                        nxt.append(w)
                        out.append(w)
                        if len(out) > limit:
                            raise OrbitTooLarge(
                                f"orbit of {dom} in {rs.name} exceeds {limit} elements")
        frontier = nxt
    return tuple(out)


def orbit_size(rs: RootSystem, lam: Sequence[int]) -> int:
    return len(orbit(rs, lam))


def minus_w0(rs: RootSystem, lam: Sequence[int]) -> Weight:
    """``-w0 lam`` for dominant ``lam``."""
    rs.check(lam)
    if not rs.is_dominant(lam):
        raise NotDominant(f"{tuple(lam)} is not dominant")
    dom, _ = to_dominant(rs, tuple(-x for x in lam))
    return dom


@lru_cache(maxsize=64)
def _scaled_inverse(rs: RootSystem) -> tuple[int, tuple[tuple[int, ...], ...]]:
    """``(d, M)`` with ``M = d * A^-1`` integral, ``A`` the Cartan matrix in this layout."""
    inv = rs._inv
    d = 1
    for row in inv:
        for x in row:
            d = d * x.denominator // math.gcd(d, x.denominator)
    return d, tuple(tuple(int(x * d) for x in row) for row in inv)


def _residue(rs: RootSystem, x: Sequence[int], p: int) -> tuple[int, ...]:
    """Simple-root coordinates of ``x`` modulo ``p``, scaled by ``d`` to stay integral."""
    d, M = _scaled_inverse(rs)
    q = p * d
    return tuple(sum(a * b for a, b in zip(row, x)) % q for row in M)


@lru_cache(maxsize=4096)
def _linkage_residues(rs: RootSystem, lam: Weight, p: int) -> frozenset:
    lr = tuple(x + 1 for x in lam)
    return frozenset(_residue(rs, w, p) for w in orbit(rs, lr))


def is_linked(rs: RootSystem, lam: Sequence[int], mu: Sequence[int], p: int) -> bool:
    """Whether ``mu`` lies in the dot orbit of ``lam`` under the p-dilated affine Weyl group.

    The affine group is ``W`` extended by translations ``p * ZPhi``, so the test
    is exact: some ``w(lam + rho) - (mu + rho)`` lies in ``p * ZPhi``.
    """
    rs.check(lam, mu)
    lam, mu = tuple(lam), tuple(mu)
    if lam == mu:
        return True
    a, _ = to_dominant(rs, tuple(x + 1 for x in lam))
    b, _ = to_dominant(rs, tuple(x + 1 for x in mu))
    key = _residue(rs, b, p)
    return key in _linkage_residues(rs, tuple(x - 1 for x in a), p)


def linked_below(rs: RootSystem, lam: Sequence[int], p: int) -> list[Weight]:
    """Dominant weights ``mu <= lam`` linked to ``lam``, canonical descending order."""
    lam = tuple(lam)
    res = _linkage_residues(rs, lam, p)
    return [mu for mu in rs.dominant_weights_below(lam)
            if _residue(rs, tuple(x + 1 for x in mu), p) in res]
