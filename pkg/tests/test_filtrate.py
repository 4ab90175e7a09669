import json

import pytest

from weylforge.charalg import VirtualCharacter, frobenius_twist, nabla_character, tensor
from weylforge.decomp import fixture_simple_characters, simple_character
from weylforge.errors import NotRestricted, UnknownScenario
from weylforge.filtrate import (CONSISTENT, CONSISTENT_NOTE, MIXED, OBSTRUCTED, BranchResult, Check,
                                ScenarioVerdict, bn_support_shape, candidate_gammas, good_filtration_test,
                                hom_character, nabla_pr_character, parse_scenario, second_method_predicate,
                                tmc_scenario)
from weylforge.rootsys import parse_system


def test_nabla_pr_character():
    b3 = parse_system("B3")
    assert nabla_pr_character(b3, (0, 2, 0), 2) == frobenius_twist(nabla_character(b3, (0, 1, 0)), 2)
    assert nabla_pr_character(b3, (1, 0, 0), 2) == simple_character(b3, (1, 0, 0), 2)
    c3 = parse_system("C3")
    want = tensor(simple_character(c3, (1, 0, 0), 3), frobenius_twist(nabla_character(c3, (0, 1, 0)), 3))
    assert nabla_pr_character(c3, (1, 3, 0), 3) == want


def test_good_filtration_examples():
    c3 = parse_system("C3")
    out = good_filtration_test(nabla_character(c3, (2, 1, 2)))
    assert out.is_certificate and out.certificate == (((2, 1, 2), 1),)
    bad = VirtualCharacter(c3, {(0, 1, 0): 2, (0, 0, 0): 1}, "simple")
    out = good_filtration_test(bad, "nabla", 3)
    assert not out.is_certificate
    assert out.obstruction == ((0, 0, 0), -1)
    good = VirtualCharacter(c3, {(0, 1, 0): 1, (0, 0, 0): 2}, "simple")
    out = good_filtration_test(good, "nabla", 3)
    assert out.certificate == (((0, 1, 0), 1), ((0, 0, 0), 1))
    assert "obstruction" in str(good_filtration_test(bad, "nabla", 3))
    json.dumps(out.to_json())


def test_good_p_filtration_of_b3_is_a_character_certificate():
    # the failure of a good p-filtration on nabla(2w2) is a statement about
    # module structure; the character alone expands with nonnegative coefficients
    b3 = parse_system("B3")
    out = good_filtration_test(nabla_character(b3, (0, 2, 0)), "nabla_pr", 2)
    assert out.is_certificate
    assert out.multiplicity((0, 2, 0)) == 1 and out.multiplicity((1, 0, 0)) == 0
    assert out.multiplicity((2, 0, 0)) == 1


def test_hom_character():
    c3 = parse_system("C3")
    case1 = {(2, 1, 2): 1, (0, 3, 0): 2, (0, 0, 0): 1}
    assert hom_character(c3, case1, (0, 0, 0), 3).to_dict() == {(0, 1, 0): 2, (0, 0, 0): 1}
    case2 = {(2, 1, 2): 1, (0, 3, 0): 1, (0, 0, 0): 1}
    assert hom_character(c3, case2, (0, 0, 0), 3).to_dict() == {(0, 1, 0): 1, (0, 0, 0): 1}
    assert hom_character(c3, {(1, 3, 0): 1}, (1, 0, 0), 3).to_dict() == {(0, 1, 0): 1}
    with pytest.raises(NotRestricted):
        hom_character(c3, case1, (0, 3, 0), 3)


def test_candidate_gammas():
    g2 = parse_system("G2")
    assert set(candidate_gammas(g2, 2, (2, 1))) == {(0, 0), (1, 0), (0, 1)}
    d4 = parse_system("D4")
    got = candidate_gammas(d4, 2, (1, 2, 1, 1), link_target=(0, 1, 0, 0))
    assert set(got) == {(1, 0, 1, 1), (2, 0, 0, 0), (0, 0, 2, 0), (0, 0, 0, 2), (0, 1, 0, 0), (0, 0, 0, 0)}
    for n in (3, 4, 5):
        bn = parse_system(f"B{n}")
        bound = (2, 1) + (0,) * (n - 2)
        floor = (2,) + (0,) * (n - 1)
        got = candidate_gammas(bn, 2, bound, floor=floor)
        assert set(got) == {(1,) + (0,) * (n - 1), (0, 1) + (0,) * (n - 2)}


def test_second_method_predicate():
    for n in (3, 4, 6):
        bn = parse_system(f"B{n}")
        rho = (1,) * n
        mu = (0,) + rho[1:]
        lam = (0, 0) + rho[2:]
        assert second_method_predicate(bn, lam, mu, 0, 2)
        assert second_method_predicate(bn, lam, mu, 1, 2, one_based=True)
        assert not second_method_predicate(bn, mu, mu, 0, 2)
        assert not second_method_predicate(bn, (1,) + lam[1:], mu, 0, 2)


def test_verdict_aggregation():
    yes = BranchResult("a", {}, [Check("x", True, "")])
    no = BranchResult("b", {}, [Check("x", False, "")])
    assert ScenarioVerdict("s", "B3", 2, [yes, yes]).overall == OBSTRUCTED
    assert ScenarioVerdict("s", "B3", 2, [no]).overall == CONSISTENT
    assert ScenarioVerdict("s", "B3", 2, [yes, no]).overall == MIXED
    assert CONSISTENT_NOTE in ScenarioVerdict("s", "B3", 2, [no]).report()


def test_parse_scenario():
    assert parse_scenario("Bn_prop(5)") == ("Bn_prop", 5)
    assert parse_scenario("Bn_prop") == ("Bn_prop", 4)
    assert parse_scenario("Bn_prop", 6) == ("Bn_prop", 6)
    assert parse_scenario("C3p3") == ("C3p3", None)
    with pytest.raises(UnknownScenario):
        parse_scenario("A2p5")
    with pytest.raises(UnknownScenario):
        tmc_scenario("Bn_prop(2)")


@pytest.mark.parametrize("sid", ["B3p2", "C3p3_second", "G2p2", "D4p2", "Bn_prop(4)"])
def test_scenarios_are_obstructed(sid):
    v = tmc_scenario(sid)
    assert v.overall == OBSTRUCTED
    for b in v.branches:
        assert b.witness is not None
    json.loads(json.dumps(v.to_json()))


def test_fixture_dependent_labels():
    assert tmc_scenario("G2p2").fixture_dependent
    assert tmc_scenario("D4p2").fixture_dependent
    assert not tmc_scenario("B3p2").fixture_dependent
    assert "FIXTURE-DEPENDENT" in tmc_scenario("G2p2").report()


def test_g2_socle_table():
    v = tmc_scenario("G2p2")
    assert v.extra["window"] == [[0, 1], [1, 0], [0, 0]] or \
        sorted(map(tuple, v.extra["window"])) == [(0, 0), (0, 1), (1, 0)]
    details = " ".join(c.detail for c in v.branches[0].checks)
    assert "L(0, 1)" in details


def test_b3_disjuncts():
    v = tmc_scenario("B3p2")
    labels = [b.label for b in v.branches]
    assert len(labels) == 2
    assert all(b.obstructed for b in v.branches)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_bn_support_shape(n):
    ok, coeffs, allowed = bn_support_shape(n)
    assert ok
    assert set(coeffs) <= set(allowed)


def test_good_filtration_with_literature_known():
    b3 = parse_system("B3")
    kn = fixture_simple_characters("B3", 2)
    c = VirtualCharacter(b3, {(1, 0, 0): 1, (0, 0, 0): 1}, "simple")
    assert good_filtration_test(c, "nabla", 2, known=kn).certificate == (((1, 0, 0), 1),)
