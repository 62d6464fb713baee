from fractions import Fraction

import pytest
from hypothesis import assume, given

from khoval import (
    HomologyTable,
    LaurentPolynomial,
    add_kink,
    braid_to_pd,
    check_crossing_change_bounds,
    check_lemma_vanishing,
    check_support,
    classify,
    derive_signs,
    genus_from_diagram,
    jones_from_kh,
    jones_oracle,
    kauffman_bracket,
    kh,
    parse_pd,
    rasmussen_from_diagram,
    report,
    resolve,
)
from khoval.diagram import canonical_genus, crossing_change, is_connected
from khoval.errors import ComplexityBudgetExceeded, NondivisibleEulerCharacteristic, NotApplicable
from khoval.invariants import check_first_level_circles, check_jones_match, euler_characteristic

from strategies import diagrams, knots


def pd(text):
    return derive_signs(parse_pd(text))


def V(terms):
    """Jones polynomial from {power of t: coefficient}, powers may be halves."""
    return LaurentPolynomial({int(2 * Fraction(e)): c for e, c in terms.items()}, "sqrt_t")


TREFOIL_V = V({1: 1, 3: 1, 4: -1})


@pytest.fixture
def trefoil_kink():
    return add_kink(braid_to_pd([1, 1, 1], 2), sign=-1)


# -- Jones polynomial


def test_jones_unknots():
    for d in (pd("O"), pd("X(1,1,2,2)"), braid_to_pd([1, 1, -1], 2)):
        assert jones_oracle(d) == V({0: 1})
        assert jones_from_kh(kh(d), 1) == V({0: 1})


def test_jones_trefoil(trefoil):
    assert jones_oracle(trefoil) == TREFOIL_V
    assert jones_from_kh(kh(trefoil), 1) == TREFOIL_V
    assert str(TREFOIL_V) == "-t^4 + t^3 + t"


def test_jones_standard_values():
    assert jones_oracle(pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)")) == V({-1: 1, -3: 1, -4: -1})
    fig8 = pd("X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)")
    assert jones_oracle(fig8) == V({-2: 1, -1: -1, 0: 1, 1: -1, 2: 1})
    # positive Hopf link: -t^(1/2) - t^(5/2)
    assert jones_oracle(braid_to_pd([1, 1], 2)) == V({"1/2": -1, "5/2": -1})


def test_bracket_of_free_circles():
    # k crossing-free circles: delta^(k-1)
    delta = LaurentPolynomial({2: -1, -2: -1}, "A")
    assert kauffman_bracket(pd("O")) == LaurentPolynomial({0: 1}, "A")
    assert kauffman_bracket(pd("O O O")) == delta ** 2


def test_bracket_compiled_path_matches_resolve():
    d = braid_to_pd([1, 2, 1, -2, 1, 2, 1, 2, 1, 2, 2], 3)
    assert d.n == 11
    delta = LaurentPolynomial({2: -1, -2: -1}, "A")
    direct = LaurentPolynomial({}, "A")
    for bits in range(1 << d.n):
        ones = bin(bits).count("1")
        k = resolve(d, bits).circle_count
        direct = direct + LaurentPolynomial({d.n - 2 * ones: 1}, "A") * delta ** (k - 1)
    assert kauffman_bracket(d) == direct


def test_oracle_budget():
    with pytest.raises(ComplexityBudgetExceeded):
        jones_oracle(braid_to_pd([1] * 5, 2), max_crossings=4)


def test_nondivisible_euler_characteristic():
    with pytest.raises(NondivisibleEulerCharacteristic):
        jones_from_kh(HomologyTable({(0, 1): 1}, normalized=True))
    # q^2 + 2 + q^-2 divides by q + 1/q but gives odd powers of t^(1/2)
    with pytest.raises(NondivisibleEulerCharacteristic):
        jones_from_kh(HomologyTable({(0, 2): 1, (0, 0): 2, (0, -2): 1}, normalized=True), components=1)


@given(diagrams(max_strands=4, max_length=8))
def test_oracle_matches_euler_characteristic(d):
    t = kh(d)
    oracle = jones_oracle(d)
    assert check_jones_match(t, oracle).passed
    assert jones_from_kh(t, d.component_count) == oracle
    # integer powers of t exactly when the component count is odd
    assert all((e % 2 == 0) == (d.component_count % 2 == 1) for e, _ in oracle)


def test_euler_characteristic_signs():
    t = HomologyTable({(0, 1): 2, (1, 3): 1, (2, 3): 4}, normalized=True)
    assert euler_characteristic(t) == LaurentPolynomial({1: 2, 3: 3}, "q")


# -- genus and s


def test_genus_examples(trefoil, trefoil_kink):
    assert genus_from_diagram(trefoil) == 1
    assert genus_from_diagram(braid_to_pd([1, 1, -1], 2)) == 0
    assert genus_from_diagram(trefoil_kink) == 1
    assert classify(trefoil_kink).case == 1


def test_rasmussen_examples(trefoil, trefoil_kink):
    assert rasmussen_from_diagram(trefoil) == 2
    assert rasmussen_from_diagram(braid_to_pd([1, 1, -1], 2)) == 0
    assert rasmussen_from_diagram(trefoil_kink) == 2
    assert rasmussen_from_diagram(pd("O")) == 0


@pytest.mark.parametrize("d", [
    braid_to_pd([1, -1, 1, -1], 2),   # two negative crossings
    braid_to_pd([1, 1], 2),           # two components
    braid_to_pd([1, 1, 1], 3),        # disconnected
], ids=["other", "link", "split"])
def test_rasmussen_not_applicable(d):
    with pytest.raises(NotApplicable):
        rasmussen_from_diagram(d)


def test_genus_not_applicable():
    with pytest.raises(NotApplicable):
        genus_from_diagram(braid_to_pd([1, -1, 1, -1], 3))
    with pytest.raises(NotApplicable):
        genus_from_diagram(pd("X(1,1,2,2) O"))


# -- predicates


def test_lemma_vanishing(trefoil_kink):
    v = check_lemma_vanishing(trefoil_kink, kh(trefoil_kink))
    assert v.passed and "KH^(0,-1)" in v.detail
    with pytest.raises(NotApplicable):
        check_lemma_vanishing(braid_to_pd([1, 1, -1], 2), kh(braid_to_pd([1, 1, -1], 2)))
    with pytest.raises(NotApplicable):
        check_lemma_vanishing(braid_to_pd([1, 1, 1], 2), kh(braid_to_pd([1, 1, 1], 2)))


def test_lemma_vanishing_detects_a_bad_table(trefoil_kink):
    fake = HomologyTable({(0, -1): 1, (0, 1): 1}, normalized=True)
    assert not check_lemma_vanishing(trefoil_kink, fake).passed


def test_support(trefoil):
    assert check_support(0, kh(pd("O"))).passed
    t = kh(trefoil)
    assert check_support(2, t).passed
    assert not check_support(4, t).passed


def test_crossing_change_bounds(trefoil, trefoil_kink):
    v = check_crossing_change_bounds(braid_to_pd([1, 1, -1], 2))
    assert v.passed and "s(K+) = 2" in v.detail and "s = 0" in v.detail
    assert check_crossing_change_bounds(trefoil_kink).passed
    with pytest.raises(NotApplicable):
        check_crossing_change_bounds(trefoil)


def test_first_level_circles(trefoil_kink):
    v = check_first_level_circles(trefoil_kink)
    assert v.passed
    with pytest.raises(NotApplicable):
        check_first_level_circles(braid_to_pd([1, 1, -1], 2))


# -- reports


def test_report_trefoil(trefoil):
    r = report(trefoil)
    assert r.positivity.kind == "Positive"
    assert (r.g3_D, r.s, r.g4, r.g3_L) == (1, 2, 1, 1)
    assert r.jones_kh == r.jones_oracle == TREFOIL_V
    assert any(v.name == "jones_match" and v.passed for v in r.checks)
    assert r.all_passed


def test_report_unknot():
    r = report(pd("O"))
    assert (r.positivity.kind, r.g3_D, r.s) == ("Positive", 0, 0)


def test_report_other():
    r = report(braid_to_pd([1, -2, 1, -2], 3))
    assert r.positivity.kind == "Other"
    assert r.s is None and r.g4 is None and r.g3_L is None
    assert [v.name for v in r.checks] == ["jones_match"]
    assert r.kh0_support == r.homology.support(0)


def test_report_link_leaves_s_unknown():
    r = report(braid_to_pd([1, 2] * 3, 3))
    assert r.components == 3 and r.s is None
    assert r.g3_L == canonical_genus(r.diagram)
    assert any("multi-component" in n for n in r.notes)


def test_report_over_budget_keeps_diagram_fields():
    r = report(braid_to_pd([1, 2] * 10, 3), max_crossings=18, oracle_max=10)
    assert r.homology is None and r.jones_oracle is None
    assert r.s == 2 * r.g3_L
    assert any("homology skipped" in n for n in r.notes)


# -- properties over random knots with at most one negative crossing


@given(knots(max_negative=1, max_length=8))
def test_s_formula_properties(d):
    assume(is_connected(d))
    cls = classify(d)
    s = rasmussen_from_diagram(d)
    g = genus_from_diagram(d)
    assert s % 2 == 0
    assert s == 2 * g
    if cls.kind == "AlmostPositive" and canonical_genus(d) >= 1:
        assert s >= 0
        if cls.case == 1:
            assert s >= 2
    t = kh(d)
    assert check_support(s, t).passed
    if cls.kind == "AlmostPositive":
        assert check_crossing_change_bounds(d).passed
        if cls.case == 1:
            assert check_lemma_vanishing(d, t).passed
            assert check_first_level_circles(d).passed


@given(knots(max_negative=0, max_length=8))
def test_case1_from_kinks(d):
    """A negative kink on a positive knot diagram is always a case 1 diagram."""
    assume(is_connected(d))
    e = add_kink(d, sign=-1)
    assert classify(e).case == 1
    assert rasmussen_from_diagram(e) == rasmussen_from_diagram(d)
    assert check_lemma_vanishing(e, kh(e)).passed


@given(knots(max_negative=1, max_length=8))
def test_positive_resolution_bounds(d):
    assume(is_connected(d) and d.n_minus == 1)
    p = classify(d).negative_index
    plus = crossing_change(d, p)
    assert plus.n_minus == 0
    assert rasmussen_from_diagram(plus) - 2 <= rasmussen_from_diagram(d) <= rasmussen_from_diagram(plus)
