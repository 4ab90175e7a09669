import pytest

from weylforge.charalg import VirtualCharacter, full_weights, nabla_character
from weylforge.errors import AmbiguousTopWeight, NoCertificate, NoEmbedding, UnsupportedFamily
from weylforge.levi import (expand_pattern, format_pattern, identify_type, jq_levi_multiplicity_check,
                            levi_propagation, levi_subsystem, merge_patterns, propagation_table,
                            restrict_character, restrict_nabla, restrict_tensor_check)
from weylforge.rootsys import cartan_matrix, parse_system


def test_levi_types():
    b3 = parse_system("B3")
    lv = levi_subsystem(b3, [2, 3], one_based=True)
    assert lv.sub.name == "B2" and lv.index_map == (1, 2)
    f4 = parse_system("F4")
    lv = levi_subsystem(f4, [2, 3, 4], one_based=True)
    assert lv.sub.name == "C3" and lv.index_map == (3, 2, 1)
    d4 = parse_system("D4")
    assert levi_subsystem(d4, [1, 2, 3], one_based=True).sub.name == "A3"
    e6 = parse_system("E6")
    assert levi_subsystem(e6, [2, 3, 4, 5], one_based=True).sub.name == "D4"
    with pytest.raises(UnsupportedFamily):
        levi_subsystem(b3, [1, 3], one_based=True)
    with pytest.raises(NoEmbedding):
        levi_subsystem(b3, [4], one_based=True)


def test_identify_type_prefers_a3():
    fam, n, _ = identify_type(cartan_matrix("A", 3))
    assert (fam, n) == ("A", 3)


def test_restrict_examples():
    b3 = parse_system("B3")
    c = nabla_character(b3, (1, 1, 0))
    assert restrict_character(c, [0, 1, 2]).to_dict() == c.to_dict()
    triv = restrict_character(VirtualCharacter(b3, {(0, 0, 0): 1}), [1, 2])
    assert triv.to_dict() == {(0, 0): 1}
    lv = levi_subsystem(b3, [1, 2])
    for lam in [(1, 0, 0), (0, 1, 0), (0, 2, 0), (1, 1, 1)]:
        assert restrict_nabla(b3, lam, lv) == nabla_character(lv.sub, lv.project(lam))


def test_restrict_ambiguous_top():
    b3 = parse_system("B3")
    c = VirtualCharacter(b3, {(2, 0, 0): 1, (0, 0, 2): 1})
    with pytest.raises(AmbiguousTopWeight):
        restrict_character(c, [1, 2])


def test_restriction_preserves_graded_dimension():
    b3 = parse_system("B3")
    lv = levi_subsystem(b3, [1, 2])
    lam = (0, 2, 0)
    c = nabla_character(b3, lam)
    res = restrict_character(c, lv)
    # weights lam - c2 alpha2 - c3 alpha3, counted directly in the full expansion
    direct = 0
    for nu, m in full_weights(c).items():
        d = b3.root_lattice_coords(b3.sub(lam, nu))
        if d is not None and d[0] == 0 and all(x >= 0 for x in d):
            direct += m
    assert sum(m * len(full_weights(VirtualCharacter(lv.sub, {k: 1}))) for k, m in res.items()) == direct


@pytest.mark.parametrize("system,J,lam,mu", [("B3", [1, 2], (1, 0, 0), (1, 0, 0)),
                                             ("C3", [0, 1], (0, 1, 0), (1, 0, 0)),
                                             ("B3", [0, 1, 2], (1, 0, 0), (0, 0, 0))])
def test_restrict_tensor_check(system, J, lam, mu):
    assert restrict_tensor_check(parse_system(system), lam, mu, J)


def test_jq_levi_checks():
    b3 = parse_system("B3")
    assert jq_levi_multiplicity_check(b3, (1, 1, 1), (1, 1, 1), [1, 2], 2)
    assert jq_levi_multiplicity_check(b3, (0, 2, 0), (0, 2, 0), [1, 2], 2)
    assert jq_levi_multiplicity_check(b3, (0, 2, 0), (1, 1, 0), [1, 2], 2)
    # deliberately inconsistent ambient data (L(w1) claimed larger than nabla(w1))
    wrong = {(1, 0, 0): VirtualCharacter(b3, {(1, 0, 0): 1, (0, 0, 0): 2})}
    with pytest.raises(NoCertificate) as exc:
        jq_levi_multiplicity_check(b3, (1, 0, 0), (1, 0, 0), [0, 1], 2, known=wrong)
    assert not exc.value.critical
    with pytest.raises(NoEmbedding):
        jq_levi_multiplicity_check(b3, (1, 1, 1), (0, 1, 1), [1, 2], 2)


def test_propagation_examples():
    assert levi_propagation("C3_222", "F4") == [("F", 4, 3, ("*", 2, 2, 2))]
    assert levi_propagation("C3_122", "F4") == [("F", 4, 3, ("*", 2, 2, 1))]
    e6 = levi_propagation("D4_1111", "E6")
    assert e6 == [("E", 6, 2, ("*", 1, 1, 1, 1, "*"))]
    assert levi_propagation("B3_111", "B3") == [("B", 3, 2, (1, 1, 1))]
    with pytest.raises(NoEmbedding):
        levi_propagation("D4_1111", "B3")


def test_patterns():
    assert format_pattern(("*", 2, {1, 2})) == "(*,2,{1,2})"
    assert expand_pattern(("*", 1), 2) == {(0, 1), (1, 1)}
    assert merge_patterns([(1, 1, 0, "*"), (1, 1, 1, "*")], 2) == [(1, 1, "*", "*")]
    merged = merge_patterns([("*", 2, 2, 2), ("*", 1, 2, 2)], 3)
    assert merged == [("*", frozenset({1, 2}), 2, 2)]


def test_propagation_table_collects_bases():
    rows = propagation_table("F4")
    assert ("F", 4, 3, ("*", 2, 2, 2)) in rows and ("F", 4, 2, (1, 1, 0, "*")) in rows
