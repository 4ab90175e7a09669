import pytest

from weylforge.charalg import format_terms
from weylforge.decomp import fixture_simple_characters, solve_decomposition
from weylforge.errors import MissingDecompositionData, NotDominant
from weylforge.jantzen import jsf, jsf_in_simple_basis, jsf_terms, nu_p
from weylforge.rootsys import parse_system
from weylforge.weylact import is_linked


def test_nu_p():
    assert nu_p(12, 2) == 2
    assert nu_p(9, 3) == 2
    assert nu_p(7, 3) == 0


def test_c3_examples():
    c3 = parse_system("C3")
    assert jsf(c3, (1, 0, 1), 3).to_dict() == {(0, 1, 0): 1, (0, 0, 0): -1}
    assert not jsf(c3, (0, 0, 2), 3)
    assert format_terms(jsf(c3, (2, 2, 1), 3).items()) == \
        "chi(3,2,0) + 2*chi(1,3,0) + chi(2,1,1) - 2*chi(1,0,0)"


def test_trivial_cases():
    assert not jsf(parse_system("A1"), (0,), 2)
    with pytest.raises(NotDominant):
        jsf(parse_system("B3"), (0, -1, 0), 2)


@pytest.mark.parametrize("name,lam,p", [("C3", (2, 1, 2), 3), ("B3", (0, 2, 0), 2), ("G2", (2, 2), 3),
                                        ("B4", (0, 1, 1, 1), 2), ("D4", (1, 1, 1, 1), 2)])
def test_evaluation_paths_agree(name, lam, p):
    rs = parse_system(name)
    assert jsf(rs, lam, p, via="reflection") == jsf(rs, lam, p, via="shift")


@pytest.mark.parametrize("name,lam,p", [("C3", (2, 1, 2), 3), ("B3", (0, 2, 0), 2), ("C3", (2, 2, 1), 3)])
def test_terms_are_linked_and_below(name, lam, p):
    rs = parse_system(name)
    for mu in jsf(rs, lam, p).weights():
        assert mu != lam and rs.dominates(lam, mu)
        assert is_linked(rs, lam, mu, p)


def test_terms_enumerate_the_full_range():
    c3 = parse_system("C3")
    terms = list(jsf_terms(c3, (2, 1, 2), 3))
    for k, m, v, _ in terms:
        assert 0 < m * 3 < c3.pairing((3, 2, 3), k)
        assert v == nu_p(3 * m, 3)


def test_simple_basis_b3():
    b3 = parse_system("B3")
    known = fixture_simple_characters("B3", 2)
    bset = solve_decomposition(b3, (0, 2, 0), 2, known=known)
    forms = jsf_in_simple_basis(b3, (0, 2, 0), 2, bset)
    assert forms == [{(1, 0, 2): 1, (1, 1, 0): 2, (2, 0, 0): 2, (0, 1, 0): 4, (0, 0, 0): 2}]


def test_simple_basis_from_mapping():
    c3 = parse_system("C3")
    table = {(1, 0, 1): {(1, 0, 1): 1, (0, 1, 0): 1}}
    with pytest.raises(MissingDecompositionData):
        jsf_in_simple_basis(c3, (1, 1, 1), 3, table)
