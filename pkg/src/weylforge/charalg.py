"""Formal characters: Weyl module characters, tensor products, twists, Euler characteristics.

A :class:`VirtualCharacter` stores integer coefficients on dominant weights
together with a *form* tag saying what the coefficients mean:

``weight``  multiplicity of each dominant weight (the W-orbit is implied)
``nabla``   coefficient of ch nabla(mu)
``simple``  coefficient of ch L(mu)
``chi``     coefficient of the Euler characteristic chi(mu)

``nabla`` and ``chi`` coefficients agree for dominant weights, but the tags
are kept apart so a caller cannot add a chi-sum to a weight multiset by
accident.
"""
from __future__ import annotations

import threading
from typing import Callable, Iterable, Mapping, Sequence

from .cache import default_cache
from .errors import FormMismatch, NotDominant, OrbitTooLarge, SystemMismatch, UnsupportedFamily, check_int64
from .rootsys import RootSystem, Weight
from .weylact import ORBIT_LIMIT, orbit, straighten, to_dominant

FORMS = ("weight", "nabla", "simple", "chi")


class VirtualCharacter:
    __slots__ = ("rs", "form", "_d")

    def __init__(self, rs: RootSystem, support: Mapping[Sequence[int], int] | None = None,
                 form: str = "weight"):
        if form not in FORMS:
            raise ValueError(f"unknown character form {form!r}")
        self.rs = rs
        self.form = form
        d = {}
        for mu, c in (support or {}).items():
            if c:
                mu = tuple(mu)
                rs.check(mu)
                if not rs.is_dominant(mu):
                    raise NotDominant(f"support weight {mu} is not dominant")
                d[mu] = d.get(mu, 0) + int(c)
        self._d = {k: v for k, v in d.items() if v}

    # -- mapping protocol -------------------------------------------------

    def __getitem__(self, mu) -> int:
        return self._d.get(tuple(mu), 0)

    def __contains__(self, mu) -> bool:
        return tuple(mu) in self._d

    def __len__(self) -> int:
        return len(self._d)

    def __iter__(self):
        return iter(self.weights())

    def __bool__(self) -> bool:
        return bool(self._d)

    def weights(self) -> list[Weight]:
        return self.rs.sort_desc(self._d)

    def items(self) -> list[tuple[Weight, int]]:
        return [(mu, self._d[mu]) for mu in self.weights()]

    def to_dict(self) -> dict[Weight, int]:
        return dict(self._d)

    def top(self) -> Weight:
        """Canonically first (hence dominance-maximal) support weight."""
        if not self._d:
            raise ValueError("empty character has no top weight")
        return min(self._d, key=self.rs.sort_key)

    def maximal_weights(self) -> list[Weight]:
        ws = list(self._d)
        return [mu for mu in ws if not any(nu != mu and self.rs.dominates(nu, mu) for nu in ws)]

    # -- arithmetic -------------------------------------------------------

    def _compatible(self, other: "VirtualCharacter") -> None:
        if not isinstance(other, VirtualCharacter):
            raise TypeError(f"cannot combine a character with {type(other).__name__}")
        if other.rs is not self.rs:
            raise SystemMismatch(f"{self.rs.name} vs {other.rs.name}")
        if other.form != self.form:
            raise FormMismatch(f"cannot combine {self.form}-form with {other.form}-form")

    def _new(self, d) -> "VirtualCharacter":
        return type(self)(self.rs, d, self.form) if type(self) is VirtualCharacter \
            else type(self)(self.rs, d)

    def __add__(self, other):
        self._compatible(other)
        d = dict(self._d)
        for k, v in other._d.items():
            d[k] = d.get(k, 0) + v
        return self._new(d)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self._new({k: -v for k, v in self._d.items()})

    def __mul__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        return self._new({mu: k * v for mu, v in self._d.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, VirtualCharacter):
            return NotImplemented
        return self.rs is other.rs and self.form == other.form and self._d == other._d

    def __hash__(self):
        return hash((self.rs.name, self.form, frozenset(self._d.items())))

    def is_nonnegative(self) -> bool:
        return all(v >= 0 for v in self._d.values())

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.rs.name}, {self.form}, {format_terms(self.items(), self.form)})"


class ChiSum(VirtualCharacter):
    """Linear combination of Euler characteristics ``chi(mu)``, mu dominant."""

    __slots__ = ()

    def __init__(self, rs: RootSystem, support: Mapping[Sequence[int], int] | None = None,
                 form: str = "chi"):
        if form != "chi":
            raise FormMismatch("ChiSum is always in chi form")
        super().__init__(rs, support, "chi")


def format_terms(items: Iterable[tuple[Weight, int]], form: str = "chi") -> str:
    sym = {"weight": "e", "nabla": "ch nabla", "simple": "ch L", "chi": "chi"}[form]
    out = []
    for mu, c in items:
        w = "(" + ",".join(str(x) for x in mu) + ")"
        mag = abs(c)
        term = f"{sym}{w}" if mag == 1 else f"{mag}*{sym}{w}"
        if not out:
            out.append(term if c > 0 else f"-{term}")
        else:
            out.append(("+ " if c > 0 else "- ") + term)
    return " ".join(out) if out else "0"


# -- Weyl module characters ---------------------------------------------

_nabla_cache: dict[tuple[str, Weight], dict[Weight, int]] = {}
_nabla_lock = threading.Lock()


def weyl_dimension(rs: RootSystem, lam: Sequence[int]) -> int:
    lam = rs.weight(lam)
    if not rs.is_dominant(lam):
        raise NotDominant(f"{lam} is not dominant")
    num = den = 1
    lr = tuple(x + 1 for x in lam)
    for k in range(len(rs.positive_roots)):
        num *= rs.pairing(lr, k)
        den *= rs.pairing(rs.rho, k)
    assert num % den == 0
    return check_int64(num // den, "dimension")


def _freudenthal(rs: RootSystem, lam: Weight) -> dict[Weight, int]:
    doms = rs.dominant_weights_below(lam)
    known = set(doms)
    lr = tuple(x + 1 for x in lam)
    top = rs.inner(lr, lr)
    n = rs.rank
    g = rs._gram
    # (nu, alpha) as a linear functional of nu, one per positive root
    funcs = [(a, tuple(sum(g[i][j] * a[j] for j in range(n)) for i in range(n)))
             for a in rs.positive_roots]
    mult = {lam: 1}
    for mu in doms[1:]:
        mr = tuple(x + 1 for x in mu)
        denom = top - rs.inner(mr, mr)
        total = 0
        for a, f in funcs:
            nu = mu
            while True:
                nu = tuple(x + y for x, y in zip(nu, a))
                dom, _ = to_dominant(rs, nu)
                if dom not in known:
                    break
                m = mult[dom]
                if m:
                    total += m * sum(x * y for x, y in zip(nu, f))
        q, r = divmod(2 * total, denom)
        if r:
            raise ArithmeticError(f"Freudenthal recursion not integral at {mu} in nabla({lam})")
        mult[mu] = check_int64(q, "weight multiplicity")
    return mult


def nabla_character(rs: RootSystem, lam: Sequence[int]) -> VirtualCharacter:
    """ch nabla(lam) = chi(lam) in weight form, by Freudenthal's recursion."""
    lam = rs.weight(lam)
    if not rs.is_dominant(lam):
        raise NotDominant(f"{lam} is not dominant")
    key = (rs.name, lam)
    d = _nabla_cache.get(key)
    if d is None:
        disk = default_cache()
        payload = disk.get(rs.name, 0, "nabla", lam) if disk else None
        if payload is not None:
            d = {tuple(w): int(c) for w, c in payload}
        else:
            d = _freudenthal(rs, lam)
            if disk:
                disk.put(rs.name, 0, "nabla", lam, [[list(w), c] for w, c in d.items()])
        with _nabla_lock:
            _nabla_cache.setdefault(key, d)
    return VirtualCharacter(rs, d, "weight")


def full_weights(c: VirtualCharacter, limit: int = ORBIT_LIMIT) -> dict[Weight, int]:
    """Expand a weight-form character over the W-orbits of its support."""
    _require_form(c, "weight")
    out: dict[Weight, int] = {}
    for mu, m in c.items():
        for nu in orbit(c.rs, mu, limit):
            out[nu] = m
    return out


def dimension(c: VirtualCharacter) -> int:
    _require_form(c, "weight")
    return sum(m * len(orbit(c.rs, mu)) for mu, m in c.items())


def from_full_weights(rs: RootSystem, fw: Mapping[Sequence[int], int]) -> VirtualCharacter:
    """Keep the dominant part of a W-invariant weight multiset."""
    return VirtualCharacter(rs, {mu: m for mu, m in fw.items() if all(x >= 0 for x in mu)}, "weight")


def _require_form(c: VirtualCharacter, form: str) -> None:
    if c.form != form:
        raise FormMismatch(f"expected a {form}-form character, got {c.form}-form")


# -- basis changes ------------------------------------------------------

def expand_in_basis(c: VirtualCharacter, basis: Callable[[Weight], VirtualCharacter],
                    form: str, stop_on_negative: bool = False, key=None):
    """Greedy unitriangular change of basis from weight form.

    ``basis(mu)`` must return a weight-form character with value 1 at mu and
    support below mu.  Returns ``(coefficients, first_negative)`` where
    ``first_negative`` is the first (weight, coefficient) with a negative
    coefficient met in processing order, or None.  ``key`` replaces the
    canonical processing order; any order refining height gives the same
    coefficients.
    """
    _require_form(c, "weight")
    rest = dict(c.to_dict())
    coeffs: dict[Weight, int] = {}
    first_negative = None
    rs = c.rs
    key = key or rs.sort_key
    while rest:
        mu = min(rest, key=key)
        k = rest[mu]
        coeffs[mu] = k
        if k < 0 and first_negative is None:
            first_negative = (mu, k)
            if stop_on_negative:
                break
        b = basis(mu)
        if b[mu] != 1:
            raise ValueError(f"basis element at {mu} is not unitriangular")
        for nu, m in b.to_dict().items():
            v = rest.get(nu, 0) - k * m
            if v:
                rest[nu] = v
            else:
                rest.pop(nu, None)
    return VirtualCharacter(rs, coeffs, form), first_negative


def to_nabla_basis(c: VirtualCharacter) -> VirtualCharacter:
    coeffs, _ = expand_in_basis(c, lambda mu: nabla_character(c.rs, mu), "nabla")
    return coeffs


def from_basis(c: VirtualCharacter, basis: Callable[[Weight], VirtualCharacter] | None = None) -> VirtualCharacter:
    """Weight form of a nabla-, chi- or simple-form character.

    ``basis`` is required for simple form (simple characters are not known here).
    """
    if c.form == "weight":
        return c
    if c.form in ("nabla", "chi"):
        basis = basis or (lambda mu: nabla_character(c.rs, mu))
    elif basis is None:
        raise FormMismatch("simple-form characters need a simple-character basis to expand")
    acc: dict[Weight, int] = {}
    for mu, k in c.items():
        for nu, m in basis(mu).to_dict().items():
            acc[nu] = acc.get(nu, 0) + k * m
    return VirtualCharacter(c.rs, acc, "weight")


# -- Euler characteristics ----------------------------------------------

def chi(rs: RootSystem, mu: Sequence[int]) -> ChiSum:
    s = straighten(rs, mu)
    return ChiSum(rs, {s.dominant: s.sign} if s.sign else {})


def chi_to_weight(c: ChiSum) -> VirtualCharacter:
    return from_basis(c)


def chi_vanishing_epsilon_test(rs: RootSystem, mu: Sequence[int]) -> bool:
    """Whether ``mu + rho`` has two epsilon-coordinates of equal absolute value (B, C only)."""
    if rs.family not in "BC":
        raise UnsupportedFamily("the epsilon vanishing test is defined for types B and C")
    e = rs.omega_to_epsilon(tuple(x + 1 for x in mu)).doubled
    absvals = [abs(x) for x in e]
    return len(set(absvals)) < len(absvals)


# -- products -----------------------------------------------------------

def tensor(a: VirtualCharacter, b: VirtualCharacter) -> VirtualCharacter:
    """Character of a tensor product, by Brauer-Klimyk.

    The larger factor is rewritten in the nabla basis and the smaller one is
    expanded over all its weights.
    """
    if a.rs is not b.rs:
        raise SystemMismatch(f"{a.rs.name} vs {b.rs.name}")
    _require_form(a, "weight")
    _require_form(b, "weight")
    rs = a.rs
    if not a or not b:
        return VirtualCharacter(rs, {}, "weight")
    if dimension(a) < dimension(b):
        a, b = b, a
    coeffs = to_nabla_basis(a)
    fw = full_weights(b)
    acc: dict[Weight, int] = {}
    for lam, k in coeffs.items():
        for nu, m in fw.items():
            s = straighten(rs, tuple(x + y for x, y in zip(lam, nu)))
            if s.sign:
                acc[s.dominant] = acc.get(s.dominant, 0) + s.sign * k * m
    return chi_to_weight(ChiSum(rs, acc))


def frobenius_twist(c: VirtualCharacter, q: int) -> VirtualCharacter:
    """Scale every support weight by ``q = p**r``."""
    _require_form(c, "weight")
    return VirtualCharacter(c.rs, {tuple(q * x for x in mu): m for mu, m in c.items()}, "weight")


def zprime_character(rs: RootSystem, lam: Sequence[int], p: int, r: int = 1,
                     limit: int = ORBIT_LIMIT) -> dict[Weight, int]:
    """Weights of the baby Verma-type module ``ind_{B_r T}^{G_r T}(lam)``.

    ``e(lam) * prod_{alpha > 0} (1 + e(-alpha) + ... + e(-(p^r - 1) alpha))``.
    """
    lam = rs.weight(lam)
    q = p**r
    cur = {lam: 1}
    for a in rs.positive_roots:
        nxt: dict[Weight, int] = {}
        for mu, m in cur.items():
            nu = mu
            for _ in range(q):
                nxt[nu] = nxt.get(nu, 0) + m
                nu = tuple(x - y for x, y in zip(nu, a))
        cur = nxt
        if len(cur) > limit:
            raise OrbitTooLarge(f"Z' expansion exceeds {limit} distinct weights")
    return cur
