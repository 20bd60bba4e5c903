"""Smoke tests for the Python bindings."""

import math

import pytest

import mrl


def test_parse_and_closed_forms():
    frac = mrl.parse_model("fraclinear:c=2,d=0.5")
    assert frac.name == "fraclinear"
    assert frac.hazard(0.0) == pytest.approx(0.5)
    assert frac.mrl_closed_form(4.0) == pytest.approx(8.0)
    assert frac.spec() == "fraclinear:c=2,d=0.5"


def test_parse_errors_are_value_errors():
    with pytest.raises(ValueError, match="a>b"):
        mrl.parse_model("oscillating:a=1,b=2,c=4,d=3")
    with pytest.raises(ValueError):
        mrl.parse_model("nonsense:x=1")


def test_quadrature_matches_closed_form():
    for spec in ["exponential:rate=0.5", "fraclinear:c=2,d=0.5", "linearmrl:a=1,b=0.5",
                 "oscillating:a=2,b=1,c=4,d=3"]:
        model = mrl.parse_model(spec)
        for t in [0.0, 1.0, 10.0]:
            q = mrl.mrl_quadrature(model, t, tol=1e-9)
            m = model.mrl_closed_form(t)
            assert q.value == pytest.approx(m, rel=1e-6)
            assert q.abs_error_estimate <= 2e-9 * q.value


def test_expansion_terms():
    frac = mrl.parse_model("fraclinear:c=2,d=0.5")
    seq = mrl.theta_terms(frac, 0.0, 3)
    assert seq.terms == pytest.approx([2.0, 1.0, 0.5, 0.25])
    value, terms = mrl.mrl_expansion(frac, 0.0, 30)
    assert value == pytest.approx(4.0, rel=1e-8)
    assert terms.partial_sums[-1] == value


def test_coefficient_tables():
    assert mrl.theta_monomials(3) == {(1, 1, 1): 1, (1, 2): 4, (3,): 1}
    assert mrl.c_monomials(4) == {(1, 1): (3, 1), (3,): (-1, 1)}
    assert mrl.c_polynomial_text(4) == "3*(r')^2 - r'''"
    assert mrl.theta_via_coefficients(frac_model(), 0.0, 2) == pytest.approx(0.5)


def frac_model():
    return mrl.parse_model("fraclinear:c=2,d=0.5")


def test_jets():
    x = mrl.Jet.variable(0.0, 3)
    s, c = mrl.sin_cos(x)
    assert s.coeffs == pytest.approx([0.0, 1.0, 0.0, -1.0 / 6.0])
    assert mrl.reciprocal(mrl.Jet(0.0, [2.0, 3.0, 0.0])).coeffs == pytest.approx(
        [0.5, -0.75, 1.125])
    assert mrl.derivative(mrl.Jet(0.0, [5.0, 2.0, 3.0])).coeffs == pytest.approx([2.0, 6.0])
    with pytest.raises(ValueError):
        mrl.reciprocal(mrl.Jet(0.0, [0.0, 1.0]))


def test_limits_and_hyp1():
    lin = mrl.parse_model("linearmrl:a=1,b=0.5")
    diag = mrl.limit_diagnostics(lin, 50.0, grid_points=32)
    assert diag.sup_rm == pytest.approx(1.5, rel=1e-4)
    assert diag.sprime_limit_bound == pytest.approx(1.5)
    assert mrl.hyp1_check(lin, [10.0, 100.0, 1000.0], tol=1e-3)
    assert math.isclose(mrl.survival(lin, 0.0), 1.0)
