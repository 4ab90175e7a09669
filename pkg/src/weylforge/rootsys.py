"""Root systems of types A-G and weight arithmetic in the fundamental-weight basis.

Weights are plain tuples of ints holding omega-coordinates.  Every function
that consumes weights also takes the owning :class:`RootSystem`, which checks
the length of each tuple at the boundary.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial, lcm
from typing import Iterable, Sequence

from .errors import InvalidFamilyRank, NotDominant, SystemMismatch, UnsupportedFamily

Weight = tuple[int, ...]

FAMILIES = "ABCDEFG"

_WEYL_ORDER_EXCEPTIONAL = {("E", 6): 51840, ("E", 7): 2903040, ("E", 8): 696729600,
                           ("F", 4): 1152, ("G", 2): 12}


def _valid(family: str, rank: int) -> bool:
    if family == "A":
        return rank >= 1
    if family in "BC":
        return rank >= 2
    if family == "D":
        return rank >= 4
    if family == "E":
        return rank in (6, 7, 8)
    if family == "F":
        return rank == 4
    if family == "G":
        return rank == 2
    return False


def cartan_matrix(family: str, rank: int) -> tuple[tuple[int, ...], ...]:
    """Bourbaki Cartan matrix with ``A[i][j] = <alpha_j, alpha_i^vee>``."""
    if not isinstance(rank, int) or not _valid(family, rank):
        raise InvalidFamilyRank(f"no root system of type {family}{rank}")
    n = rank
    A = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, a_ij=-1, a_ji=-1):
        A[i][j] = a_ij
        A[j][i] = a_ji

    if family in "ABCD":
        for i in range(n - 1):
            link(i, i + 1)
        if family == "B":
            # alpha_n short
            link(n - 2, n - 1, -1, -2)
        elif family == "C":
            # alpha_n long
            link(n - 2, n - 1, -2, -1)
        elif family == "D":
            A[n - 2][n - 1] = A[n - 1][n - 2] = 0
            link(n - 3, n - 1)
    elif family == "E":
        link(0, 2)
        link(1, 3)
        for i in range(2, n - 1):
            link(i, i + 1)
    elif family == "F":
        link(0, 1)
        # alpha_1, alpha_2 long; alpha_3, alpha_4 short
        link(1, 2, -1, -2)
        link(2, 3)
    elif family == "G":
        # alpha_1 short, alpha_2 long
        link(0, 1, -3, -1)
    return tuple(tuple(row) for row in A)


def _invert(M: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    n = len(M)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(M)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


@dataclass(frozen=True)
class EpsilonCoords:
    """Epsilon-basis coordinates, stored doubled so half-integers stay exact."""

    doubled: tuple[int, ...]

    @property
    def values(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, 2) for x in self.doubled)

    @classmethod
    def from_values(cls, values: Iterable) -> "EpsilonCoords":
        doubled = []
        for v in values:
            d = Fraction(v) * 2
            if d.denominator != 1:
                raise ValueError(f"epsilon coordinate {v} is not a half-integer")
            doubled.append(int(d))
        return cls(tuple(doubled))


@dataclass(frozen=True, eq=False)
class RootSystem:
    family: str
    rank: int
    cartan: tuple[tuple[int, ...], ...]
    positive_roots: tuple[Weight, ...]
    positive_roots_simple: tuple[tuple[int, ...], ...]
    coroots: tuple[tuple[int, ...], ...]
    root_length2: tuple[int, ...]
    _inv: tuple[tuple[Fraction, ...], ...] = field(repr=False)
    _height_vec: tuple[int, ...] = field(repr=False)
    _height_den: int = field(repr=False)
    _gram: tuple[tuple[int, ...], ...] = field(repr=False)

    # -- basic data -------------------------------------------------------

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    def __repr__(self) -> str:
        return f"RootSystem({self.name})"

    def __reduce__(self):
        return build_root_system, (self.family, self.rank)

    @property
    def simple_roots(self) -> tuple[Weight, ...]:
        return tuple(tuple(self.cartan[i][j] for i in range(self.rank))
                     for j in range(self.rank))

    @property
    def fundamental_weights(self) -> tuple[Weight, ...]:
        return tuple(tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank))

    @property
    def rho(self) -> Weight:
        return (1,) * self.rank

    @property
    def zero(self) -> Weight:
        return (0,) * self.rank

    @property
    def highest_short_root(self) -> Weight:
        short = min(self.root_length2)
        cands = [r for r, l2 in zip(self.positive_roots, self.root_length2) if l2 == short]
        return max(cands, key=self.height)

    @property
    def coxeter_number(self) -> int:
        return self.pairing(self.rho, self.highest_short_root) + 1

    @property
    def weyl_group_order(self) -> int:
        n = self.rank
        if self.family == "A":
            return factorial(n + 1)
        if self.family in "BC":
            return 2**n * factorial(n)
        if self.family == "D":
            return 2 ** (n - 1) * factorial(n)
        return _WEYL_ORDER_EXCEPTIONAL[(self.family, n)]

    # -- validation -------------------------------------------------------

    def check(self, *weights: Sequence[int]) -> None:
        for w in weights:
            if len(w) != self.rank:
                raise SystemMismatch(f"weight {tuple(w)} does not belong to {self.name}")

    def weight(self, coords: Iterable[int]) -> Weight:
        w = tuple(int(x) for x in coords)
        self.check(w)
        return w

    # -- pairings and forms ----------------------------------------------

    def root_index(self, alpha: Sequence[int]) -> int:
        try:
            return self._root_pos[tuple(alpha)]
        except KeyError:
            raise SystemMismatch(f"{tuple(alpha)} is not a positive root of {self.name}") from None

    def pairing(self, lam: Sequence[int], alpha: Sequence[int] | int) -> int:
        """``<lam, alpha^vee>`` for a positive root given by omega-coords or index."""
        self.check(lam)
        k = alpha if isinstance(alpha, int) else self.root_index(alpha)
        return sum(c * x for c, x in zip(self.coroots[k], lam))

    def inner(self, lam: Sequence[int], mu: Sequence[int]) -> int:
        """Invariant form, scaled by a fixed positive integer so it is integral."""
        g = self._gram
        n = self.rank
        return sum(lam[i] * g[i][j] * mu[j] for i in range(n) if lam[i] for j in range(n))

    def simple_coords(self, mu: Sequence[int]) -> tuple[Fraction, ...]:
        """Coordinates of ``mu`` in the basis of simple roots."""
        inv = self._inv
        n = self.rank
        return tuple(sum((inv[i][j] * mu[j] for j in range(n)), Fraction(0)) for i in range(n))

    def height(self, mu: Sequence[int]) -> Fraction:
        return Fraction(self._height_key(mu), self._height_den)

    def _height_key(self, mu: Sequence[int]) -> int:
        return sum(h * x for h, x in zip(self._height_vec, mu))

    def sort_key(self, mu: Sequence[int]):
        """Ascending sort with this key lists weights in the canonical descending order."""
        return (-self._height_key(mu), tuple(-x for x in mu))

    def sort_desc(self, weights: Iterable[Sequence[int]]) -> list[Weight]:
        return sorted((tuple(w) for w in weights), key=self.sort_key)

    def root_lattice_coords(self, mu: Sequence[int]) -> tuple[int, ...] | None:
        """Integer simple-root coordinates of ``mu`` or None outside the root lattice."""
        c = self.simple_coords(mu)
        if any(x.denominator != 1 for x in c):
            return None
        return tuple(int(x) for x in c)

    def dominates(self, lam: Sequence[int], mu: Sequence[int]) -> bool:
        """``mu <= lam``: ``lam - mu`` is a nonnegative integer sum of simple roots."""
        self.check(lam, mu)
        c = self.root_lattice_coords([a - b for a, b in zip(lam, mu)])
        return c is not None and all(x >= 0 for x in c)

    def is_dominant(self, mu: Sequence[int]) -> bool:
        return all(x >= 0 for x in mu)

    def add(self, lam: Sequence[int], mu: Sequence[int]) -> Weight:
        self.check(lam, mu)
        return tuple(a + b for a, b in zip(lam, mu))

    def sub(self, lam: Sequence[int], mu: Sequence[int]) -> Weight:
        self.check(lam, mu)
        return tuple(a - b for a, b in zip(lam, mu))

    def scale(self, k: int, lam: Sequence[int]) -> Weight:
        return tuple(k * a for a in lam)

    # -- enumeration ------------------------------------------------------

    def dominant_weights_below(self, lam: Sequence[int]) -> list[Weight]:
        """All dominant ``mu <= lam``, in canonical descending order."""
        lam = self.weight(lam)
        if not self.is_dominant(lam):
            raise NotDominant(f"{lam} is not dominant")
        return list(_dominant_below(self, lam))

    def is_restricted(self, lam: Sequence[int], p: int, r: int = 1) -> bool:
        self.check(lam)
        q = p**r
        return all(0 <= x < q for x in lam)

    # -- epsilon basis ----------------------------------------------------

    def omega_to_epsilon(self, lam: Sequence[int]) -> EpsilonCoords:
        self.check(lam)
        M = _epsilon_matrix(self.family, self.rank)
        return EpsilonCoords(tuple(sum(lam[i] * M[i][s] for i in range(self.rank))
                                   for s in range(self.rank)))

    def epsilon_to_omega(self, e: EpsilonCoords | Sequence) -> Weight:
        if self.family not in "BCD":
            raise UnsupportedFamily(f"no epsilon basis for type {self.family}")
        if not isinstance(e, EpsilonCoords):
            e = EpsilonCoords.from_values(e)
        d = e.doubled
        n = self.rank
        if len(d) != n:
            raise SystemMismatch(f"{n} epsilon coordinates expected")
        doubled = [d[i] - d[i + 1] for i in range(n - 1)]
        if self.family == "B":
            doubled.append(2 * d[n - 1])
        elif self.family == "C":
            doubled.append(d[n - 1])
        else:
            doubled.append(d[n - 2] + d[n - 1])
        if any(x % 2 for x in doubled):
            raise ValueError(f"epsilon coordinates {e.values} are not an integral weight")
        return tuple(x // 2 for x in doubled)


@lru_cache(maxsize=None)
def _epsilon_matrix(family: str, n: int) -> tuple[tuple[int, ...], ...]:
    """Row i holds the doubled epsilon-coordinates of omega_i."""
    if family not in "BCD":
        raise UnsupportedFamily(f"no epsilon basis for type {family}")
    rows = []
    for i in range(n):
        row = [2 if s <= i else 0 for s in range(n)]
        if family == "B" and i == n - 1:
            row = [1] * n
        if family == "D" and i == n - 2:
            row = [1] * (n - 1) + [-1]
        if family == "D" and i == n - 1:
            row = [1] * n
        rows.append(tuple(row))
    return tuple(rows)


def _dominant_below(rs: RootSystem, lam: Weight) -> list[Weight]:
    # Dominant weights below lam are connected to lam by steps of single
    # positive roots through dominant weights.
    seen = {lam}
    frontier = [lam]
    roots = rs.positive_roots
    while frontier:
        nxt = []
        for mu in frontier:
            for a in roots:
                nu = tuple(x - y for x, y in zip(mu, a))
                if nu not in seen and all(x >= 0 for x in nu):
                    seen.add(nu)
                    nxt.append(nu)
        frontier = nxt
    return rs.sort_desc(seen)


def _positive_roots(A: tuple[tuple[int, ...], ...]) -> list[tuple[int, ...]]:
    """Positive roots in simple-root coordinates via root strings, by height."""
    n = len(A)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    roots = set(simple)
    layer = list(simple)
    ordered = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            pair = [sum(A[i][j] * beta[j] for j in range(n)) for i in range(n)]
            for i in range(n):
                if beta == simple[i]:
                    continue
                down = 0
                cur = list(beta)
                while True:
                    cur[i] -= 1
                    if tuple(cur) in roots:
                        down += 1
                    else:
                        break
                if down - pair[i] > 0:
                    up = list(beta)
                    up[i] += 1
                    up = tuple(up)
                    if up not in roots:
                        roots.add(up)
                        nxt.append(up)
                        ordered.append(up)
        layer = nxt
    return ordered


@lru_cache(maxsize=None)
def build_root_system(family: str, rank: int) -> RootSystem:
    """Construct (and memoise) the root system of the given Cartan type."""
    family = str(family).upper()
    A = cartan_matrix(family, rank)
    n = rank

    # symmetriser d_i = (alpha_i, alpha_i) / 2
    d: list[Fraction | None] = [None] * n
    d[0] = Fraction(1)
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if j != i and A[i][j] != 0 and d[j] is None:
                d[j] = d[i] * A[i][j] / A[j][i]
                stack.append(j)
    dmin = min(d)
    d = [x / dmin for x in d]
    assert all(x.denominator == 1 for x in d)
    d_int = [int(x) for x in d]

    simple_coords = _positive_roots(A)
    omega = [tuple(sum(A[i][j] * c[j] for j in range(n)) for i in range(n)) for c in simple_coords]
    length2 = []
    coroots = []
    for c in simple_coords:
        # (beta, beta) / 2 from the symmetrised form
        l2 = sum(c[i] * c[j] * d_int[i] * A[i][j] for i in range(n) for j in range(n))
        assert l2 % 2 == 0
        dbeta = l2 // 2
        length2.append(dbeta)
        cv = []
        for i in range(n):
            num = c[i] * d_int[i]
            assert num % dbeta == 0
            cv.append(num // dbeta)
        coroots.append(tuple(cv))

    inv = _invert(A)
    den = lcm(*(x.denominator for row in inv for x in row))
    height_vec = tuple(int(sum(inv[i][j] for i in range(n)) * den) for j in range(n))
    # (omega_i, omega_j) = inv[j][i] * d_j
    gram_f = [[inv[j][i] * d_int[j] for j in range(n)] for i in range(n)]
    gden = lcm(*(x.denominator for row in gram_f for x in row))
    gram = tuple(tuple(int(x * gden) for x in row) for row in gram_f)

    rs = RootSystem(
        family=family,
        rank=n,
        cartan=A,
        positive_roots=tuple(omega),
        positive_roots_simple=tuple(simple_coords),
        coroots=tuple(coroots),
        root_length2=tuple(length2),
        _inv=tuple(tuple(r) for r in inv),
        _height_vec=height_vec,
        _height_den=den,
        _gram=gram,
    )
    object.__setattr__(rs, "_root_pos", {r: k for k, r in enumerate(omega)})
    return rs


def parse_system(name: str) -> RootSystem:
    """``"B3"`` -> the B3 root system."""
    name = name.strip()
    if len(name) < 2 or not name[1:].isdigit():
        raise InvalidFamilyRank(f"cannot parse root system name {name!r}")
    return build_root_system(name[0].upper(), int(name[1:]))
