import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from amquad.bounds import (
    CaseId,
    active_thetas,
    bound_cor23,
    bound_cor23a,
    bound_cor25,
    bound_report,
    bound_thm22,
    bound_thm22_midpoint,
    bound_thm22_trapezoid,
    bound_thm24,
    bound_thm24_midpoint,
    bound_thm24_trapezoid,
    bound_thm26,
    bound_thm26_midpoint,
    bound_thm26_simpson,
    bound_thm26_trapezoid,
    bound_trapezoid_alpha1,
    classical_simpson_bound,
    coeffs22,
    fourth_derivative_sup,
    hadamard_upper,
    hh_check,
    select_case,
    simpson_constant,
    theta_roots,
    thetas,
    tightness,
)
from amquad.errors import DomainError
from amquad.funcmodel import ParamSet, TestFunction, get_function
from amquad.quadrature import true_error


@pytest.mark.parametrize(
    "lam, mu, case",
    [(1 / 3, 0.5, CaseId.C1), (1.0, 0.5, CaseId.C2), (0.0, 0.5, CaseId.C1), (1.0, 1.0, CaseId.C3),
     (0.5, 0.9, CaseId.C3)],
)
def test_select_case(lam, mu, case):
    assert select_case(ParamSet(0, 1, lam, mu, 1, 1)) == case


def test_coefficients_continuous_across_pivots():
    # eps/delta/beta jump formula at mu = lam*(1-mu) and mu = 1-lam*mu;
    # the integrals themselves are continuous
    for lam in (0.3, 0.6, 0.9):
        for alpha in (0.25, 1.0):
            mu_l = lam / (1 + lam)          # mu = lam (1 - mu)
            mu_r = 1 / (1 + lam)            # mu = 1 - lam mu
            for mu in (mu_l, mu_r):
                lo, hi = coeffs22(lam, mu - 1e-9, alpha), coeffs22(lam, mu + 1e-9, alpha)
                for a, b in zip(lo.left() + lo.right(), hi.left() + hi.right()):
                    assert a == pytest.approx(b, abs=1e-8)


@settings(max_examples=100, deadline=None)
@given(lam=st.floats(0, 1))
def test_reflection_symmetry_at_half(lam):
    # t -> 1-t maps the left kernel onto the right one when mu = 1/2
    c = coeffs22(lam, 0.5, 1.0)
    e_l, d_a, d_b = c.left()
    e_r, b_a, b_b = c.right()
    assert e_l == pytest.approx(e_r, abs=1e-14)
    assert d_a == pytest.approx(b_b, abs=1e-14)
    assert d_b == pytest.approx(b_a, abs=1e-14)
    th_l, th_r = active_thetas(lam, 0.5, 2.0)
    assert th_l == pytest.approx(th_r, abs=1e-14)


def test_thetas_nan_when_inactive():
    t1, t2, t3, t4 = thetas(1 / 3, 0.5, 2.0)
    assert math.isnan(t2) and math.isnan(t4)
    assert t1 == pytest.approx(1 / 24)  # (1/6)^3 + (1/3)^3


@pytest.mark.parametrize("q", [1.0000000000000002, 1.0001, 1.01])
def test_hoelder_bounds_stable_near_q_one(q):
    # p = q/(q-1) is huge here; theta**(1/p) must not underflow to 0
    f = get_function("pow2")
    p = ParamSet(0, 1, 0.0, 0.5, 1.0, 1.0, q)
    rep = bound_report(f, p)
    assert rep.violations == ()
    assert bound_thm24(f, p) > 0.45 and bound_thm26(f, p) > 0.45
    assert math.isfinite(bound_cor25(f, p.replace(lam=1 / 3)))


@settings(max_examples=200, deadline=None)
@given(lam=st.floats(0, 1), mu=st.floats(0, 1), pe=st.sampled_from([1.5, 2.0, 3.0, 5.0, 17.0]))
def test_theta_roots_match_direct_form(lam, mu, pe):
    # compare theta itself: on an empty segment both forms are rounding
    # noise around 0, which the 1/p-th root would magnify
    for direct, root in zip(active_thetas(lam, mu, pe), theta_roots(lam, mu, pe)):
        assert root**pe == pytest.approx(direct, rel=1e-11, abs=1e-15)


def test_simpson_constant_matches_thetas():
    for pe in (1.5, 2.0, 3.0):
        th_l, th_r = active_thetas(1 / 3, 0.5, pe)
        # ((1/6)^(p+1) + (1/3)^(p+1)) * 6^(p+1) = 1 + 2^(p+1)
        assert th_l * 6 ** (pe + 1) == pytest.approx(1 + 2 ** (pe + 1), rel=1e-12)
        assert simpson_constant(pe) == pytest.approx(
            (6 / (pe + 1) * th_l * 6**pe / 3) ** (1 / pe) * 1, rel=1e-12
        )


CORRESPONDENCES = [
    (bound_cor23a, bound_thm22, 1 / 3, 1.0),
    (bound_thm22_trapezoid, bound_thm22, 1.0, 1.0),
    (bound_thm22_midpoint, bound_thm22, 0.0, 1.0),
    (bound_cor25, bound_thm24, 1 / 3, 2.0),
    (bound_thm24_trapezoid, bound_thm24, 1.0, 2.0),
    (bound_thm24_midpoint, bound_thm24, 0.0, 2.0),
    (bound_thm26_simpson, bound_thm26, 1 / 3, 2.0),
    (bound_thm26_trapezoid, bound_thm26, 1.0, 2.0),
    (bound_thm26_midpoint, bound_thm26, 0.0, 2.0),
]


@pytest.mark.parametrize("special, general, lam, qmin", CORRESPONDENCES)
@pytest.mark.parametrize("alpha", [0.25, 0.5, 1.0])
@pytest.mark.parametrize("m", [0.5, 1.0])
def test_special_cases_match_general_bound(special, general, lam, qmin, alpha, m):
    f = get_function("xexp")
    for q in (qmin, 3.0):
        p = ParamSet(0.1, 1.2, lam, 0.5, alpha, m, q)
        assert special(f, p) == pytest.approx(general(f, p), rel=1e-13)


def test_special_cases_check_weights():
    with pytest.raises(ValueError):
        bound_cor23a(get_function("exp"), ParamSet(0, 1, 0.5, 0.5, 1, 1))


def test_trapezoid_alpha1_forms():
    f = get_function("exp")
    p = ParamSet(0, 1, 1.0, 0.5, 1.0, 1.0, q=2.0)
    tight = bound_trapezoid_alpha1(f, p)
    assert tight == pytest.approx(bound_thm26_trapezoid(f, p), rel=1e-13)
    assert bound_trapezoid_alpha1(f, p, relaxed=True) > tight
    with pytest.raises(ValueError):
        bound_trapezoid_alpha1(f, p.replace(alpha=0.5))


def test_q1_collapse_general_form_agrees():
    f = get_function("recip")
    for lam in (0, 1 / 3, 0.5, 1):
        for mu in (0, 0.25, 0.5, 1):
            p = ParamSet(0.0, 1.0, lam, mu, 0.5, 0.5, 1.0)
            assert bound_thm22(f, p) == bound_cor23(f, p)
            assert bound_thm22(f, p, collapse=False) == pytest.approx(bound_cor23(f, p), rel=1e-13)


def test_simpson_x4_on_zero_two():
    # the classical constant carries (hi - lo)^4 for the mean error
    f = get_function("pow4")
    p = ParamSet(0, 2, 1 / 3, 0.5, 1, 1)
    err = true_error(f, p).true_error
    assert err == pytest.approx(2 / 15, rel=1e-12)
    assert classical_simpson_bound(f, 0, 2) == pytest.approx(2 / 15, rel=1e-12)


def test_fourth_derivative_difference_fallback():
    f = TestFunction("exp_no_f4", 4.0, np.exp, np.exp)
    sup, analytic = fourth_derivative_sup(f, 0.0, 1.0)
    assert not analytic
    # differences are sampled on [2h, 1 - 2h]
    assert sup == pytest.approx(math.exp(0.98), rel=1e-4)


def test_hadamard_upper_and_domain():
    # g = x on [0, 1], alpha = m = 1: both estimates equal the endpoint average
    assert hadamard_upper(lambda x: x, 1.0, 1.0, 0.0, 1.0) == pytest.approx(0.5)
    with pytest.raises(DomainError):
        hadamard_upper(np.exp, 1.0, 0.25, 0.5, 1.0, domain_upper=2.0)


@settings(max_examples=200, deadline=None)
@given(a=st.floats(0, 1), b=st.floats(0, 3), mu=st.floats(0, 1), m=st.floats(0.01, 1))
def test_m_divided_points_stay_below_b(a, b, mu, m):
    # a < mb implies a/m < b and node/m < b, so [0, b] covers every point
    p = ParamSet(a, b, 0.5, mu, 1.0, m, q=2.0)
    if p.span > 0:
        assert p.a / m <= b * (1 + 1e-12)
        assert p.node / m <= b * (1 + 1e-12)


def test_degenerate_node_segment():
    # mu so small that node == mb in floating point
    f = get_function("pow2")
    p = ParamSet(0.0, 1.0, 0.5, 1e-300, 1.0, 1.0, q=2.0)
    assert p.node == p.mb
    assert math.isfinite(bound_thm24(f, p))


def test_hh_check_directions():
    assert hh_check(get_function("exp"), 0, 1) == (True, True)
    # sin is concave on [0, pi]: both inequalities reverse
    assert hh_check(get_function("sin"), 0, math.pi) == (False, False)


def test_tightness_conventions():
    assert tightness(0.5, 1.0) == 0.5
    assert tightness(1e-12, 0.0) == 0.0
    assert tightness(1e-3, 0.0) == math.inf


def test_report_contents():
    f = get_function("pow4")
    rep = bound_report(f, ParamSet(0, 1, 1 / 3, 0.5, 1, 1, q=2.0))
    assert {"t22", "t24", "t26", "simpson_classical", "c23a", "c25", "t26_simpson"} <= set(rep.bounds)
    assert "c23" not in rep.bounds
    assert rep.violations == ()
    assert rep.certificate.passed and rep.hadamard_certificate.passed
    d = rep.as_dict()
    assert d["case"] == "C1" and d["params"]["lambda"] == 1 / 3
    rep1 = bound_report(f, ParamSet(0, 1, 1 / 3, 0.5, 1, 1, q=1.0))
    assert "c23" in rep1.bounds and "t24" not in rep1.bounds


def test_failing_certificate_never_counts_as_violation():
    # sin on [0, pi] is outside the hypotheses; its rows may exceed bounds
    f = get_function("sin")
    rep = bound_report(f, ParamSet(0, 3.0, 0.0, 0.5, 0.25, 0.25, q=1.0))
    assert not rep.certificate.passed
    assert rep.violations == ()


@settings(max_examples=40, deadline=None)
@given(
    c=st.floats(0.1, 20),
    lam=st.sampled_from([0.0, 1 / 3, 0.5, 1.0]),
    mu=st.floats(0, 1),
    q=st.sampled_from([1.0, 1.5, 2.0, 3.0]),
)
def test_bounds_scale_linearly_with_f(c, lam, mu, q):
    base = get_function("xexp")
    scaled = TestFunction(
        "scaled", base.domain_upper, lambda x: c * base.f(x), lambda x: c * base.fprime(x)
    )
    p = ParamSet(0.0, 1.0, lam, mu, 1.0, 1.0, q)
    assert bound_thm22(scaled, p) == pytest.approx(c * bound_thm22(base, p), rel=1e-12)
    if q > 1:
        assert bound_thm26(scaled, p) == pytest.approx(c * bound_thm26(base, p), rel=1e-12)
        assert bound_thm24(scaled, p) == pytest.approx(c * bound_thm24(base, p), rel=1e-12)


@settings(max_examples=60, deadline=None)
@given(
    lam=st.floats(0, 1),
    mu=st.floats(0, 1),
    b=st.floats(0.2, 2.0),
    q=st.floats(1, 4),
    fid=st.sampled_from(["pow2", "pow3", "exp", "xexp", "recip"]),
)
def test_convex_derivative_rows_are_dominated(lam, mu, b, q, fid):
    # alpha = m = 1: |f'|^q is convex for these entries, so all bounds apply
    f = get_function(fid)
    rep = bound_report(f, ParamSet(0.0, b, lam, mu, 1.0, 1.0, q), specializations=False)
    assert rep.certificate.passed
    assert rep.violations == ()
