"""Randomised invariants, at least 200 cases each."""
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

import oracles
from weylforge.charalg import (VirtualCharacter, chi, chi_vanishing_epsilon_test, dimension, frobenius_twist,
                               full_weights, nabla_character, tensor, weyl_dimension)
from weylforge.decomp import solve_decomposition
from weylforge.filtrate import good_filtration_test, steinberg_reassembly
from weylforge.jantzen import jsf
from weylforge.levi import levi_subsystem, restrict_character
from weylforge.rootsys import parse_system
from weylforge.weylact import dot_reflect, straighten

MANY = settings(max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])

SMALL = ["A1", "A2", "A3", "B2", "B3", "C3", "G2", "D4"]
RANK3 = ["A3", "B3", "C3"]


def weights(rank, lo=0, hi=3):
    return st.tuples(*[st.integers(lo, hi)] * rank)


@st.composite
def system_and_weight(draw, names=SMALL, lo=0, hi=3):
    rs = parse_system(draw(st.sampled_from(names)))
    return rs, draw(weights(rs.rank, lo, hi))


# -- straightening ------------------------------------------------------------

@MANY
@given(system_and_weight(lo=-5, hi=5), st.data())
def test_straighten_sign_flips_under_simple_dot_reflection(case, data):
    rs, mu = case
    i = data.draw(st.integers(0, rs.rank - 1))
    s = straighten(rs, mu)
    # the simple dot reflection s_i . mu = mu - (mu_i + 1) alpha_i
    nu = tuple(x - (mu[i] + 1) * a for x, a in zip(mu, rs.simple_roots[i]))
    t = straighten(rs, nu)
    assert t.sign == -s.sign
    if s.sign:
        assert t.dominant == s.dominant


@MANY
@given(system_and_weight(lo=-5, hi=5), st.data())
def test_straighten_walls_and_affine_reflections(case, data):
    rs, mu = case
    if -1 in mu:
        assert straighten(rs, mu).sign == 0
    s = straighten(rs, mu)
    if s.sign:
        assert rs.is_dominant(s.dominant)
        assert chi(rs, mu).to_dict() == {s.dominant: s.sign}
    k = data.draw(st.integers(0, len(rs.positive_roots) - 1))
    m = data.draw(st.integers(-2, 2))
    p = data.draw(st.sampled_from([2, 3, 5]))
    r = dot_reflect(rs, mu, k, m, p)
    assert dot_reflect(rs, r, k, m, p) == tuple(mu)


# -- sum formula ----------------------------------------------------------------

@MANY
@given(system_and_weight(hi=6), st.sampled_from([2, 3, 5, 7]))
def test_jsf_empty_in_lowest_alcove(case, p):
    rs, lam = case
    lr = tuple(x + 1 for x in lam)
    if max(rs.pairing(lr, k) for k in range(len(rs.positive_roots))) <= p:
        assert not jsf(rs, lam, p)


@MANY
@given(system_and_weight(RANK3, hi=4), st.sampled_from([2, 3]))
def test_jsf_terms_are_linked_and_below(case, p):
    from weylforge.weylact import is_linked
    rs, lam = case
    for mu in jsf(rs, lam, p).weights():
        assert rs.dominates(lam, mu) and mu != lam
        assert is_linked(rs, lam, mu, p)


# -- characters -----------------------------------------------------------------

@MANY
@given(system_and_weight(["A1", "A2", "A3", "B2", "B3", "C3", "G2"], hi=2))
def test_weyl_dimension_matches_weight_count(case):
    rs, lam = case
    fw = full_weights(nabla_character(rs, lam))
    assert sum(fw.values()) == weyl_dimension(rs, lam)


@MANY
@given(st.sampled_from(["B3", "C3"]), st.data())
def test_epsilon_vanishing_implies_empty_chi(name, data):
    rs = parse_system(name)
    mu = data.draw(weights(3, -5, 5))
    if chi_vanishing_epsilon_test(rs, mu):
        assert not chi(rs, mu)


@pytest.mark.parametrize("name", ["B3", "C3"])
def test_epsilon_vanishing_exhaustive_window(name):
    rs = parse_system(name)
    r = range(-4, 5)
    for mu in ((a, b, c) for a in r for b in r for c in r):
        if chi_vanishing_epsilon_test(rs, mu):
            assert not chi(rs, mu), mu


@MANY
@given(st.sampled_from(["A2", "B2", "G2", "B3", "C3"]), st.data())
def test_tensor_dimension_and_commutativity(name, data):
    rs = parse_system(name)
    a = nabla_character(rs, data.draw(weights(rs.rank, 0, 2)))
    b = nabla_character(rs, data.draw(weights(rs.rank, 0, 1)))
    ab = tensor(a, b)
    assert ab == tensor(b, a)
    assert dimension(ab) == dimension(a) * dimension(b)


@MANY
@given(system_and_weight(lo=-4, hi=4), st.data())
def test_pairing_bilinear(case, data):
    rs, lam = case
    mu = data.draw(weights(rs.rank, -4, 4))
    k = data.draw(st.integers(0, len(rs.positive_roots) - 1))
    a, b = data.draw(st.integers(-3, 3)), data.draw(st.integers(-3, 3))
    combo = tuple(a * x + b * y for x, y in zip(lam, mu))
    assert rs.pairing(combo, k) == a * rs.pairing(lam, k) + b * rs.pairing(mu, k)
    assert rs.inner(lam, mu) == rs.inner(mu, lam)
    assert rs.inner(combo, mu) == a * rs.inner(lam, mu) + b * rs.inner(mu, mu)


@MANY
@given(st.sampled_from(["B3", "C3", "D4", "B5", "C4", "D5"]), st.data())
def test_epsilon_round_trip(name, data):
    rs = parse_system(name)
    lam = data.draw(weights(rs.rank, -5, 5))
    assert rs.epsilon_to_omega(rs.omega_to_epsilon(lam)) == lam
    assert rs.epsilon_to_omega([Fraction(x, 2) for x in rs.omega_to_epsilon(lam).doubled]) == lam


# -- Levi restriction -------------------------------------------------------------

LEVIS = [("B3", (1, 2)), ("C3", (1, 2)), ("D4", (0, 1, 2))]


@MANY
@given(st.sampled_from(LEVIS), st.data())
def test_levi_restriction_of_nabla_is_nabla(case, data):
    name, J = case
    rs = parse_system(name)
    levi = levi_subsystem(rs, J)
    lam = data.draw(weights(rs.rank, 0, 2))
    got = restrict_character(nabla_character(rs, lam), levi)
    assert got == nabla_character(levi.sub, levi.project(lam))


@MANY
@given(st.sampled_from(LEVIS), st.sampled_from([2, 3]), st.data())
def test_levi_restriction_of_twisted_nabla(case, p, data):
    name, J = case
    rs = parse_system(name)
    levi = levi_subsystem(rs, J)
    mu1 = data.draw(weights(rs.rank, 0, 1))
    got = restrict_character(frobenius_twist(nabla_character(rs, mu1), p), levi)
    want = frobenius_twist(nabla_character(levi.sub, levi.project(mu1)), p)
    assert got == want


# -- Steinberg reassembly -------------------------------------------------------

_C3 = parse_system("C3")
_WORLDS = None


def _worlds():
    global _WORLDS
    if _WORLDS is None:
        _WORLDS = solve_decomposition(_C3, (2, 1, 2), 3, focus=[(0, 3, 0), (0, 0, 0)]).worlds
    return _WORLDS


@MANY
@given(st.data())
def test_steinberg_reassembly_on_delta_212_worlds(data):
    worlds = _worlds()
    w = worlds[data.draw(st.integers(0, len(worlds) - 1))]
    known = {mu: VirtualCharacter(_C3, d, "weight") for mu, d in w.simples.items() if _C3.is_restricted(mu, 3)}
    col = w.columns[(2, 1, 2)]
    assert steinberg_reassembly(_C3, col, 3, known=known) == nabla_character(_C3, (2, 1, 2))


# -- good filtrations -----------------------------------------------------------

@MANY
@given(st.sampled_from(["A2", "B2", "G2", "B3", "C3"]), st.data())
def test_good_filtration_round_trip(name, data):
    rs = parse_system(name)
    combo = data.draw(st.dictionaries(weights(rs.rank, 0, 2), st.integers(-2, 3), max_size=4))
    combo = {mu: k for mu, k in combo.items() if k}
    c = VirtualCharacter(rs, {}, "weight")
    for mu, k in combo.items():
        c = c + nabla_character(rs, mu) * k
    out = good_filtration_test(c)
    assert dict(out.coefficients) == combo
    assert out.is_certificate == all(k > 0 for k in combo.values())
    if not out.is_certificate:
        assert out.obstruction[1] < 0
    rev = good_filtration_test(c, key=lambda w: (rs.sort_key(w)[0], tuple(w)))
    assert dict(rev.coefficients) == combo and rev.is_certificate == out.is_certificate
