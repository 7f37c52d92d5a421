import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from formalnf.catalog import (
    IDENTITY_LABELS,
    LABELS,
    CaseId,
    IrrationalClosedForm,
    UncoveredCase,
    classify_regime,
    computed_complement,
    E_set,
    expected_complement,
    F_set,
    in_script_E,
    in_script_F,
    quadratic_case,
    resonance_sets,
    shape_check,
)
from formalnf.exactnum import GaussianRational
from formalnf.operators import SubspaceBasis
from formalnf.renormalizer import second_order_normalize
from formalnf.series import FormalTransformation, HomogeneousMap, LinearMap, u, v

from helpers import rand_germ

R = Fraction

# rational-friendly parameters for every case
PARAMETRIC = {
    "2_10rho": [dict(rho=R(2)), dict(rho=R(1, 2)), dict(rho=R(-1)), dict(rho=R(1))],
    "2_11rho": [dict(rho=R(4)), dict(rho=R(-1))],
    "3_rho10": [dict(rho=R(2)), dict(rho=R(-1))],
    "3_rhotau1": [dict(rho=R(1), tau=R(1)), dict(rho=R(2), tau=R(1)),
                  dict(rho=R(1), tau=R(2)), dict(rho=R(5), tau=R(5))],
}
ALL_CASES = [CaseId(label, **p) for label in LABELS for p in PARAMETRIC.get(label, [{}])]


def test_quadratic_case_examples():
    assert quadratic_case(CaseId("inf")) == HomogeneousMap.from_terms(2, 2, [(0, (2, 0), 1), (1, (1, 1), 1)])
    assert quadratic_case(CaseId("1_11")) == HomogeneousMap.from_terms(
        2, 2, [(0, (1, 1), -1), (1, (2, 0), -1), (1, (0, 2), -1)])


@pytest.mark.parametrize("label, params", [
    ("2_10rho", dict(rho=0)),
    ("2_10rho", {}),
    ("2_11rho", dict(rho=0)),
    ("3_rho10", dict(rho=1)),
    ("3_rhotau1", dict(rho=2, tau=-1)),
    ("3_rhotau1", dict(rho=0, tau=2)),
    ("bogus", {}),
])
def test_parameter_constraints(label, params):
    with pytest.raises(ValueError):
        CaseId(label, **params)


def test_case_parsing():
    c = CaseId.parse("3_rhotau1:rho=2,tau=1/3")
    assert (c.label, c.rho, c.tau) == ("3_rhotau1", 2, R(1, 3))
    assert CaseId.parse(str(c)) == c
    assert CaseId.parse("2_10rho", rho="3/2") == CaseId("2_10rho", R(3, 2))
    assert CaseId.parse("inf:").rho is None
    with pytest.raises(ValueError):
        CaseId.parse("2_10rho:sigma=2")


@pytest.mark.parametrize("d", range(2, 6))
def test_expected_complement_case_inf(d):
    B = expected_complement(CaseId("inf"), "zero", d)
    assert B == SubspaceBasis(2, d + 1, [u(d + 1, 0), u(d + 1, 1) * (d + 1) - v(d + 1, 0) * 2])


def test_expected_complement_resonance_jump():
    case = CaseId("2_10rho", R(2))
    B = expected_complement(case, "identity", 3)
    assert B.rank == 3 and u(4, 2) in B
    assert B == computed_complement(case, "identity", 3)


def test_gaussian_closed_form():
    case = CaseId("2_11rho", R(4))
    for d in range(2, 6):
        # built from sqrt(-4) = 2i; the symmetric combinations come out real
        assert expected_complement(case, "zero", d) == computed_complement(case, "zero", d)


def test_uncovered_and_irrational():
    with pytest.raises(IrrationalClosedForm):
        expected_complement(CaseId("2_11rho", R(2)), "zero", 3)
    with pytest.raises(UncoveredCase):
        expected_complement(CaseId("1_11"), "identity", 3)
    with pytest.raises(UncoveredCase):
        expected_complement(CaseId("2_10rho", R(-1)), "identity", 2)
    with pytest.raises(UncoveredCase):
        expected_complement(CaseId("inf"), "zero", 1)
    # the computed side is always available
    assert computed_complement(CaseId("2_11rho", R(2)), "zero", 3).rank == 2


@pytest.mark.parametrize("case", ALL_CASES, ids=str)
def test_golden_spans_zero(case):
    for d in range(2, 5):
        assert expected_complement(case, "zero", d) == computed_complement(case, "zero", d)


@pytest.mark.parametrize("label", IDENTITY_LABELS)
def test_golden_spans_identity(label):
    case = CaseId(label, **({"rho": R(3, 2)} if label == "2_10rho" else {}))
    for d in range(2, 6):
        assert expected_complement(case, "identity", d) == computed_complement(case, "identity", d)


# -- resonance sets ---------------------------------------------------------------

def test_resonance_sets_degree_three():
    assert E_set(3) == {1, R(1, 2), R(-1, 2)}
    assert F_set(3) == {3, 2, 1}
    with pytest.raises(ValueError):
        E_set(1)
    with pytest.raises(ValueError):
        F_set(2)


@pytest.mark.parametrize("rho, in_e, in_f", [
    (R(2), False, True),
    (R(-1, 3), True, False),
    (R(1), True, True),
    (R(5), False, False),
    (R(3), False, True),
    (R(-2), False, False),
])
def test_script_membership(rho, in_e, in_f):
    rs = resonance_sets(rho, 6)
    assert (rs.in_E, rs.in_F) == (in_e, in_f)
    assert (in_script_E(rho), in_script_F(rho)) == (in_e, in_f)


def test_regime_labels():
    assert classify_regime(R(3, 2)) == ("ii", {"n": 2})
    assert classify_regime(R(1)) == ("v", {})
    assert classify_regime(R(2, 3)) == ("vi", {"a": 2, "b": 3})
    assert classify_regime(R(5)) == ("i", {})
    with pytest.raises(ValueError):
        resonance_sets(0, 4)


def test_resonance_degrees():
    rs = resonance_sets(R(3, 2), 8)
    assert rs.F_degrees() == [4, 6]  # (d-j)/(d-2) = 3/2 forces j = (6-d)/2 >= 0
    assert rs.E_degrees() == []


@given(st.fractions(min_value=-4, max_value=4, max_denominator=12).filter(lambda q: q != 0))
def test_script_sets_match_finite_sets(rho):
    # every member of script-E / script-F shows up in some E_d / F_d with d <= 2 * denominator + 4
    top = 2 * rho.denominator + 4
    hit_e = any(rho in E_set(d) for d in range(2, top + 1))
    hit_f = any(rho in F_set(d) for d in range(3, top + 1))
    assert hit_e == in_script_E(rho)
    assert hit_f == in_script_F(rho)
    label, _ = classify_regime(rho)
    assert (label == "i") == (not in_script_E(rho) and not in_script_F(rho))


# -- shape check --------------------------------------------------------------------

def test_shape_check_examples():
    O2 = LinearMap.zero(2)
    case = CaseId("inf")
    F = FormalTransformation(O2, {2: quadratic_case(case)}, 5)
    assert shape_check(case, "zero", F)
    bad = F.with_term(u(4, 2))
    assert not shape_check(case, "zero", bad)
    G = second_order_normalize(rand_germ(random.Random(0), O2, 5, fixed={2: quadratic_case(case)})).G
    assert shape_check(case, "zero", G)
    assert not shape_check(case, "zero", G.with_term(G.term(5) + v(5, 5) * GaussianRational(0, 1)))
