from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tricycle.poly.groebner import BuchbergerStats, buchberger, is_groebner, normal_form, s_polynomial
from tricycle.poly.multipoly import Ring, VariableMismatchError
from tricycle.poly import proofs as pf

R = Ring(["x", "y", "z"])
x, y, z = R.gens()


def test_arithmetic_and_evaluation():
    p = (x + 2 * y) ** 2 - x * x
    assert p.evaluate({"x": 1, "y": 3, "z": 0}) == 48
    assert (p / 4).evaluate([1, 3, 0]) == 12
    assert p.degree() == 2


def test_grevlex_leading_monomial():
    p = x * z * z + x * x * y + y ** 3
    # grevlex ties at degree 3 are broken by the smallest power of the last variable
    assert p.leading_monomial() == (2, 1, 0)


def test_lex_order_differs():
    L = Ring(["x", "y", "z"], "lex")
    a, b, c = L.gens()
    assert (a * c ** 5 + b ** 7).leading_monomial() == (1, 0, 5)


def test_ring_mismatch():
    S = Ring(["u"])
    with pytest.raises(VariableMismatchError):
        normal_form(x, [S.var("u")])


def test_textbook_basis():
    # Cox, Little, O'Shea style example: x^2 - y, x^3 - x over grevlex
    gb = buchberger([x * x - y, x ** 3 - x])
    assert is_groebner(gb)
    lms = set(gb.leading_monomials())
    assert (2, 0, 0) in lms and (1, 1, 0) in lms and (0, 2, 0) in lms
    assert gb.contains(y * y - y)
    assert not gb.contains(y - 1)


def test_inconsistent_system_gives_one():
    gb = buchberger([x - 1, x - 2])
    assert len(gb) == 1 and gb.generators[0].is_constant()


def test_criteria_skip_pairs():
    stats = BuchbergerStats()
    buchberger([x * x - 1, y * y - 1, z * z - 1], stats)
    assert stats.product_criterion == 3


def test_s_polynomial_cancels_heads():
    f, g = x * x * y - 1, x * y * y - x
    s = s_polynomial(f, g)
    assert s.is_zero() or s.leading_monomial() != (2, 2, 0)


coeffs = st.integers(-3, 3)


@settings(max_examples=30, deadline=None)
@given(coeffs, coeffs, coeffs, coeffs)
def test_ideal_members_reduce_to_zero(a, b, c, d):
    gens = [x * x + y * z - 1, x * y - z]
    gb = buchberger(gens)
    member = (a * x + b) * gens[0] + (c * y * y + d) * gens[1]
    assert normal_form(member, gb).is_zero()


def test_normal_form_is_canonical():
    gb = buchberger([x * x + y * z - 1, x * y - z])
    p = x ** 3 * y + z
    q = p + (x + y) * (x * x + y * z - 1)
    assert normal_form(p, gb) == normal_form(q, gb)


# ---- linkage certificates ------------------------------------------------

def test_linkage_basis_size():
    assert len(pf.model(1, 1).basis()) == 14
    assert is_groebner(pf.model(1, 2).basis())


def test_derivation_matches_hamilton():
    m = pf.model(1, 2)
    assert pf.verify_constant(m.H(), m.basis(), m.derivation())


def test_variety_points_are_on_variety():
    m = pf.model(2, 3)
    for pt in pf.variety_points(m, 10):
        assert all(g.evaluate(pt) == 0 for g in m.ideal_generators())


@pytest.mark.parametrize("l1,l2", [(1, 1), (1, 2), (2, 3)])
def test_unit_speed_and_front_curvature(l1, l2):
    assert pf.prove_unit_speed(l1, l2, 20).proved
    r = pf.prove_kappa_x(l1, l2, 20)
    assert r.proved


def test_repeated_length_display_fails_only_when_lengths_differ():
    assert pf.prove_kappa_x(1, 2, 5).details["repeated_l1_variant_reduces"] is False
    assert pf.prove_kappa_x(1, 1, 5).details["repeated_l1_variant_reduces"] is True


def test_equal_length_constants():
    assert pf.prove_A_constant(1, 20).proved
    assert pf.prove_G_constant(20).proved
    assert pf.prove_elastica(1, 20).proved


def test_G_is_not_constant_for_unequal_lengths():
    m = pf.model(1, 2)
    assert not pf.verify_constant(m.G_poly(), m.basis(), m.derivation())


def test_y1_corrected_vs_printed():
    assert pf.verify_y1_curvature(1, "corrected", 20).proved
    printed = pf.verify_y1_curvature(1, "printed", 20)
    assert printed.status == "failed" and printed.remainder_terms


def test_soliton_constants_for_one_two():
    sc = pf.derive_soliton_constants(1, 2, npts=20)
    assert all(r.proved for r in sc.report)
    assert not sc.det.is_zero()


def test_equal_lengths_elimination_is_degenerate():
    with pytest.raises(pf.DegenerateEliminationError):
        pf.derive_soliton_constants(1, 1)


def test_as_fraction():
    assert pf.as_fraction("2/3") == Fraction(2, 3)
    assert pf.as_fraction(0.5) == Fraction(1, 2)
    with pytest.raises(ValueError):
        pf.as_fraction("x")
    with pytest.raises(ValueError):
        pf.model(0, 1)


def test_report_json():
    import json
    r = pf.prove_unit_speed(1, 1, 3)
    d = json.loads(r.to_json())
    assert d["status"] == "proved" and d["parameters"] == {"l1": "1", "l2": "1"}
