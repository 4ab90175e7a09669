"""Decomposition numbers [Delta(lam):L(mu)] from the sum formula and positivity.

The solver walks the linkage class of ``lam`` from the bottom up.  A *world*
is one consistent assignment of decomposition columns and simple
characters to every weight processed so far.  At a restricted weight ``mu``
the sum formula in the simple basis, ``J``, bounds each entry:
``[Delta(mu):L(nu)]`` is 0 when ``J_nu = 0`` and lies in ``[1, J_nu]``
otherwise.  A choice survives only if the remainder
``ch nabla(mu) - sum d ch L(nu)`` is an honest character with value 1 at
``mu`` that also respects two structural facts about simple modules:

* for every connected set J of simple roots, the ``mu - NJ`` part of
  ``L(mu)`` is the simple module ``L_J(mu)`` of the Levi subgroup;
* for restricted ``mu``, ``L(mu)`` and ``nabla(mu)`` have the same dominant
  weights (Premet's theorem) unless p = 2 in types B, C, F or p <= 3 in
  type G.  In G2 at p = 2 the 6-dimensional L(w1) already lacks the zero
  weight, so the exclusion there is needed.

Non-restricted weights get their simple character from the Steinberg tensor
product, which fixes their column.  Worlds that survive are grouped into
branches by the column of ``Delta(lam)``, optionally projected onto a set
of focus weights.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Iterable, Mapping, Sequence

from .charalg import VirtualCharacter, frobenius_twist, nabla_character, tensor
from .errors import (BranchExplosion, InconsistentData, MissingDecompositionData, NotDominant,
                     WeylforgeError, check_int64)
from .jantzen import jsf
from .rootsys import RootSystem, Weight, parse_system
from .weylact import linked_below

BRANCH_CAP = 64
WORLD_CAP = 4096


def steinberg_split(rs: RootSystem, lam: Sequence[int], p: int, r: int = 1) -> tuple[Weight, Weight]:
    """``lam = lam0 + p^r lam1`` with ``lam0`` restricted."""
    lam = rs.weight(lam)
    if not rs.is_dominant(lam):
        raise NotDominant(f"{lam} is not dominant")
    q = p**r
    return tuple(x % q for x in lam), tuple(x // q for x in lam)


def premet_applies(family: str, p: int) -> bool:
    """Whether restricted simple modules share the dominant weights of nabla."""
    if family in "BCF":
        return p > 2
    if family == "G":
        return p > 3
    return True


@dataclass
class World:
    columns: dict = field(default_factory=dict)   # mu -> {nu: [Delta(mu):L(nu)]}
    simples: dict = field(default_factory=dict)   # mu -> {nu: dominant weight multiplicity of L(mu)}
    jsf_simple: dict = field(default_factory=dict)  # mu -> sum formula in the simple basis

    def copy(self) -> "World":
        return World(dict(self.columns), dict(self.simples), dict(self.jsf_simple))

    def merge(self, other: "World") -> "World | None":
        out = self.copy()
        for name in ("columns", "simples", "jsf_simple"):
            mine, theirs = getattr(out, name), getattr(other, name)
            for k, v in theirs.items():
                if k in mine and mine[k] != v:
                    return None
                mine[k] = v
        return out


@dataclass
class DecompositionBranchSet:
    """Decomposition data for ``Delta(lam)``.

    ``branches`` holds one column ``{mu: [Delta(lam):L(mu)]}`` per branch.
    With a ``focus`` the columns are restricted to the focus weights and
    entries outside it that still vary are listed in ``undetermined``.
    ``worlds`` are the full consistent assignments behind the branches;
    ``branch_of[i]`` is the branch of world ``i``.
    """

    rs: RootSystem
    p: int
    lam: Weight
    branches: list
    constraints: list
    worlds: list
    branch_of: list
    focus: tuple | None = None
    undetermined: dict = field(default_factory=dict)

    @property
    def system_id(self) -> str:
        return self.rs.name

    @property
    def is_exact(self) -> bool:
        return len(self.worlds) == 1

    def branch_worlds(self, branch: int) -> list[World]:
        return [w for w, b in zip(self.worlds, self.branch_of) if b == branch]

    def branch_tables(self) -> list[dict[Weight, dict[Weight, int]]]:
        """Full column tables, one per world."""
        return [w.columns for w in self.worlds]

    def column(self, mu: Sequence[int], branch: int = 0) -> dict[Weight, int]:
        """``{nu: [Delta(mu):L(nu)]}``; must agree across the worlds of the branch."""
        mu = tuple(mu)
        cols = {tuple(sorted(w.columns.get(mu, {}).items())) for w in self.branch_worlds(branch)}
        if not cols or () in cols:
            raise MissingDecompositionData(f"no column for Delta{mu}")
        if len(cols) > 1:
            raise MissingDecompositionData(f"column of Delta{mu} varies inside branch {branch}")
        return dict(next(iter(cols)))

    def simple_character_candidates(self, mu: Sequence[int], branch: int | None = None) -> list[VirtualCharacter]:
        mu = tuple(mu)
        ws = self.worlds if branch is None else self.branch_worlds(branch)
        out: list[VirtualCharacter] = []
        for w in ws:
            d = w.simples.get(mu)
            if d is None:
                raise MissingDecompositionData(f"L{mu} is not covered by the data for Delta{self.lam}")
            c = VirtualCharacter(self.rs, d, "weight")
            if c not in out:
                out.append(c)
        return out

    def simple_character(self, mu: Sequence[int], branch: int = 0) -> VirtualCharacter:
        cands = self.simple_character_candidates(mu, branch)
        if len(cands) != 1:
            raise MissingDecompositionData(
                f"ch L{tuple(mu)} takes {len(cands)} values inside branch {branch}")
        return cands[0]

    def jsf_simple_candidates(self, branch: int | None = None) -> list[dict[Weight, int]]:
        ws = self.worlds if branch is None else self.branch_worlds(branch)
        out: list[dict] = []
        for w in ws:
            d = w.jsf_simple[self.lam]
            if d not in out:
                out.append(d)
        return out


def _sub(a: Mapping, b: Mapping, k: int) -> dict:
    out = dict(a)
    for nu, m in b.items():
        v = out.get(nu, 0) - k * m
        if v:
            out[nu] = v
        else:
            out.pop(nu, None)
    return out


def _jsf_l_form(rs: RootSystem, world: World, sum_) -> dict[Weight, int] | None:
    out: dict[Weight, int] = {}
    for mu, c in sum_.items():
        col = world.columns.get(mu)
        if col is None:
            return None
        for nu, d in col.items():
            out[nu] = out.get(nu, 0) + c * d
    return {k: out[k] for k in rs.sort_desc(out) if out[k]}


def _greedy_simple(rs: RootSystem, rest: Mapping, simples: Mapping, top: Weight):
    """Expand a weight-form remainder in simple characters of weights below ``top``."""
    coeffs: dict[Weight, int] = {}
    rest = dict(rest)
    while rest:
        nu = min(rest, key=rs.sort_key)
        k = rest[nu]
        if k < 0:
            return None
        if nu not in simples:
            raise MissingDecompositionData(f"L{nu} needed below {top} but not known")
        coeffs[nu] = k
        rest = _sub(rest, simples[nu], k)
    return coeffs


def _proper_levis(rs: RootSystem) -> tuple:
    from .levi import _connected, levi_subsystem
    out = []
    for k in range(1, rs.rank):
        for J in itertools.combinations(range(rs.rank), k):
            if _connected([[rs.cartan[i][j] for j in J] for i in J]):
                out.append(levi_subsystem(rs, J))
    return tuple(out)


class Solver:
    """Bottom-up world enumeration for one ``(system, p)``."""

    def __init__(self, rs: RootSystem, p: int, known: Mapping[Weight, Mapping] | None = None,
                 structural: bool = True, world_cap: int = WORLD_CAP):
        self.rs = rs
        self.p = p
        self.world_cap = world_cap
        self.structural = structural
        self._levis = _proper_levis(rs) if structural else ()
        self._premet = structural and premet_applies(rs.family, p)
        self.known = {tuple(k): dict(v.to_dict() if isinstance(v, VirtualCharacter) else v)
                      for k, v in (known or {}).items()}
        self.used_known: set[Weight] = set()

    def solve(self, lam: Weight, seed: list[World] | None = None) -> list[World]:
        worlds = seed or [World()]
        for mu in reversed(linked_below(self.rs, lam, self.p)):
            nxt: list[World] = []
            for w in worlds:
                if mu in w.columns:
                    nxt.append(w)
                    continue
                nxt.extend(self._extend(w, mu))
                if len(nxt) > self.world_cap:
                    raise BranchExplosion(
                        f"more than {self.world_cap} consistent assignments below Delta{lam}")
            if not nxt:
                raise InconsistentData(f"no decomposition data for Delta{mu} in {self.rs.name}, "
                                       f"p={self.p} is consistent with the sum formula")
            worlds = nxt
        return worlds

    def _ensure_simple(self, w: World, mu: Weight) -> list[World]:
        if mu in w.simples:
            return [w]
        out = []
        for sub in self.solve(mu, [World()]):
            merged = w.merge(sub)
            if merged is not None:
                out.append(merged)
        return out

    def _extend(self, w: World, mu: Weight) -> list[World]:
        rs, p = self.rs, self.p
        jl = _jsf_l_form(rs, w, jsf(rs, mu, p))
        if jl is None:
            raise MissingDecompositionData(f"sum formula for Delta{mu} refers outside the solved window")
        if any(v < 0 for v in jl.values()):
            return []
        nab = nabla_character(rs, mu).to_dict()
        below = [nu for nu in jl if nu != mu]

        def finish(base: World, col: dict, lchar: Mapping) -> World:
            w2 = base.copy()
            col = dict(col)
            col[mu] = 1
            w2.columns[mu] = col
            w2.simples[mu] = dict(lchar)
            w2.jsf_simple[mu] = jl
            return w2

        if mu in self.known or not rs.is_restricted(mu, p):
            if mu in self.known:
                self.used_known.add(mu)
                pairs = [(w, self.known[mu])]
            else:
                mu0, mu1 = steinberg_split(rs, mu, p)
                pairs = []
                for w0 in self._ensure_simple(w, mu0):
                    for w1 in self._ensure_simple(w0, mu1):
                        l0 = VirtualCharacter(rs, w1.simples[mu0], "weight")
                        l1 = VirtualCharacter(rs, w1.simples[mu1], "weight")
                        pairs.append((w1, tensor(l0, frobenius_twist(l1, p)).to_dict()))
            out = []
            for w1, lchar in pairs:
                col = _greedy_simple(rs, _sub(nab, lchar, 1), w1.simples, mu)
                if col is None or any(v > jl.get(nu, 0) for nu, v in col.items()) \
                        or any(not col.get(nu) for nu in below):
                    continue
                out.append(finish(w1, col, lchar))
            if not out and mu in self.known:
                raise InconsistentData(f"supplied character of L{mu} contradicts the sum formula")
            return out

        out = []
        # depth-first over the entries in canonical order; subtracting simple
        # characters only lowers values, so a negative value prunes the subtree
        def dfs(k: int, rest: dict, chosen: dict) -> None:
            if k == len(below):
                if rest.get(mu) == 1 and (not self.structural or self._structurally_simple(mu, rest, nab)):
                    out.append(finish(w, chosen, rest))
                return
            nu = below[k]
            simple = w.simples[nu]
            cur = rest
            for d in range(1, jl[nu] + 1):
                cur = _sub(cur, simple, 1)
                if any(v < 0 for v in cur.values()):
                    break
                chosen[nu] = d
                dfs(k + 1, cur, chosen)
                del chosen[nu]

        dfs(0, nab, {})
        return out

    def _structurally_simple(self, mu: Weight, rest: dict, nab: dict) -> bool:
        if self._premet and set(rest) != set(nab):
            return False
        from .levi import restrict_character
        c = VirtualCharacter(self.rs, rest, "weight")
        for levi in self._levis:
            top = restrict_character(c, levi)
            if top not in simple_character_candidates(levi.sub, levi.project(mu), self.p):
                return False
        return True


def _freeze(known) -> tuple:
    if not known:
        return ()
    return tuple(sorted((tuple(k), tuple(sorted((v.to_dict() if isinstance(v, VirtualCharacter) else v).items())))
                        for k, v in known.items()))


@lru_cache(maxsize=1024)
def _solve_worlds(rs: RootSystem, lam: Weight, p: int, known_key: tuple, structural: bool):
    solver = Solver(rs, p, {k: dict(v) for k, v in known_key}, structural)
    return tuple(solver.solve(lam))


def solve_decomposition(rs: RootSystem, lam: Sequence[int], p: int,
                        known: Mapping | None = None, cap: int = BRANCH_CAP,
                        structural: bool = True,
                        focus: Iterable[Sequence[int]] | None = None) -> DecompositionBranchSet:
    """Every decomposition column of ``Delta(lam)`` consistent with the sum formula.

    ``known`` pins simple characters (weight form) supplied from outside,
    for example literature data from :func:`fixture_simple_characters`.
    ``focus`` restricts branching to the listed composition factors; more
    than ``cap`` distinct branches raises :class:`BranchExplosion`.
    """
    lam = rs.weight(lam)
    if not rs.is_dominant(lam):
        raise NotDominant(f"{lam} is not dominant")
    worlds = [w.copy() for w in _solve_worlds(rs, lam, p, _freeze(known), structural)]
    focus_t = None if focus is None else tuple(rs.sort_desc(set(tuple(f) for f in focus)))

    def project(col: Mapping) -> dict:
        keys = rs.sort_desc(col) if focus_t is None else [mu for mu in focus_t if col.get(mu)]
        return {mu: col[mu] for mu in keys}

    branches: list[dict] = []
    branch_of: list[int] = []
    for w in worlds:
        col = project(w.columns[lam])
        for v in col.values():
            check_int64(v, "decomposition number")
        if col not in branches:
            branches.append(col)
        branch_of.append(branches.index(col))
    if len(branches) > cap:
        raise BranchExplosion(f"{len(branches)} branches for Delta{lam} exceed the cap of {cap}")

    values: dict[Weight, set] = {}
    for w in worlds:
        for mu in linked_below(rs, lam, p):
            values.setdefault(mu, set()).add(w.columns[lam].get(mu, 0))
    constraints = []
    undetermined = {}
    for mu in rs.sort_desc(values):
        vals = sorted(values[mu])
        if len(vals) < 2:
            continue
        js = sorted({w.jsf_simple[lam].get(mu, 0) for w in worlds})
        jtxt = "/".join(str(j) for j in js)
        constraints.append(f"[Delta{lam}:L{mu}] in {{{', '.join(map(str, vals))}}} "
                           f"(sum formula multiplicity {jtxt}; bound 1 <= d <= multiplicity)")
        if focus_t is not None and mu not in focus_t:
            undetermined[mu] = tuple(vals)
    return DecompositionBranchSet(rs, p, lam, branches, constraints, worlds, branch_of,
                                  focus_t, undetermined)


def simple_character_candidates(rs: RootSystem, lam: Sequence[int], p: int,
                                known: Mapping | None = None) -> list[VirtualCharacter]:
    """Distinct candidate characters of L(lam) across all consistent assignments."""
    lam = rs.weight(lam)
    if known and lam in {tuple(k) for k in known}:
        v = known[lam]
        return [v if isinstance(v, VirtualCharacter) else VirtualCharacter(rs, v, "weight")]
    worlds = _solve_worlds(rs, lam, p, _freeze(known), True)
    out: list[VirtualCharacter] = []
    for w in worlds:
        c = VirtualCharacter(rs, w.simples[lam], "weight")
        if c not in out:
            out.append(c)
    return out


def simple_character(rs: RootSystem, lam: Sequence[int], p: int, branch: int | None = None,
                     known: Mapping | None = None) -> VirtualCharacter:
    """Weight-form character of L(lam).

    Raises :class:`MissingDecompositionData` when the available data leave
    more than one candidate, unless ``branch`` picks one of them.
    """
    cands = simple_character_candidates(rs, lam, p, known)
    if branch is not None:
        if branch >= len(cands):
            raise MissingDecompositionData(f"L{tuple(lam)} has {len(cands)} candidates, not {branch + 1}")
        return cands[branch]
    if len(cands) != 1:
        raise MissingDecompositionData(
            f"ch L{tuple(lam)} in {rs.name}, p={p} is not determined ({len(cands)} candidates)")
    return cands[0]


# -- literature fixtures --------------------------------------------------

FIXTURE_KINDS = ("simple-character", "ext-datum", "socle")


@dataclass(frozen=True)
class Fixture:
    system: str
    p: int
    kind: str
    name: str
    payload: dict
    source: str


def load_fixtures(path=None) -> list[Fixture]:
    """Read the versioned literature-data file shipped with the package."""
    if path is None:
        text = resources.files("weylforge").joinpath("fixtures/literature.json").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    doc = json.loads(text)
    if doc.get("schema_version") != 1:
        raise WeylforgeError(f"unsupported fixture schema {doc.get('schema_version')!r}")
    out = []
    for e in doc["entries"]:
        if e["kind"] not in FIXTURE_KINDS:
            raise WeylforgeError(f"unknown fixture kind {e['kind']!r}")
        parse_system(e["system"])
        out.append(Fixture(e["system"], int(e["p"]), e["kind"], e["name"], e["payload"], e.get("source", "")))
    return out


def fixture(system: str, p: int, kind: str, name: str, path=None) -> Fixture:
    for f in load_fixtures(path):
        if (f.system, f.p, f.kind, f.name) == (system, p, kind, name):
            return f
    raise MissingDecompositionData(f"no {kind} fixture {name!r} for {system}, p={p}")


def fixture_simple_characters(system: str, p: int, path=None) -> dict[Weight, VirtualCharacter]:
    """Simple characters provided as literature data for ``(system, p)``."""
    rs = parse_system(system)
    out = {}
    for f in load_fixtures(path):
        if f.system == system and f.p == p and f.kind == "simple-character":
            lam = tuple(f.payload["highest_weight"])
            out[lam] = VirtualCharacter(rs, {tuple(w): m for w, m in f.payload["dominant_multiplicities"]},
                                        "weight")
    return out
