import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from amquad.convexity import (
    check_am_convex,
    check_convex,
    check_hadamard_hypothesis,
    check_path_hypothesis,
    classify_class,
    hadamard_pairs,
    path_violation,
)
from amquad.errors import EvaluationError
from amquad.funcmodel import ParamSet, get_function


def test_exp_is_convex():
    cert = check_am_convex(np.exp, 1.0, 1.0, 2.0)
    assert cert.passed and cert.verdict == "pass"
    assert cert.max_violation <= 1e-12
    assert cert.grid_sizes == (64, 64, 64)


def test_abs_cos_fails_with_witness():
    cert = check_am_convex(lambda x: np.abs(np.cos(x)), 1.0, 1.0, np.pi)
    assert not cert.passed and cert.verdict == "fail"
    assert cert.max_violation > 0.1
    x, y, t = cert.worst_witness
    lhs = abs(np.cos(t * x + (1 - t) * y))
    rhs = t * abs(np.cos(x)) + (1 - t) * abs(np.cos(y))
    assert lhs - rhs == pytest.approx(cert.max_violation)


@pytest.mark.parametrize("m", [0.25, 0.5, 1.0])
@pytest.mark.parametrize("k", [1.0, 2.0, 3.0])
def test_powers_are_one_m_convex(k, m):
    # x^k with k >= 1 is convex with g(0) = 0, hence (1, m)-convex for every m
    assert check_am_convex(lambda x: x**k, 1.0, m, 3.0, grid=(32, 32, 32)).passed


def test_linear_fails_for_alpha_below_one():
    cert = check_am_convex(lambda x: x, 0.5, 1.0, 1.0, grid=(16, 16, 16))
    assert not cert.passed


def test_grid_refinement_is_monotone():
    g = lambda x: np.abs(np.cos(x))  # noqa: E731
    prev = 0.0
    for n in (8, 16, 32, 64):
        v = check_am_convex(g, 0.5, 0.5, np.pi, grid=(n, n, n)).max_violation
        assert v >= prev  # nested grids only add points
        prev = v


@pytest.mark.filterwarnings("ignore::RuntimeWarning")
def test_nonfinite_values_raise():
    with pytest.raises(EvaluationError):
        check_am_convex(lambda x: 1.0 / x, 1.0, 1.0, 1.0, grid=(4, 4, 4))


def test_check_convex():
    assert check_convex(np.exp, 0, 2) <= 1e-12
    assert check_convex(np.sin, 0, np.pi) > 0.1


def test_path_certificate():
    p = ParamSet(0, 1, 1 / 3, 0.5, 1, 1, q=1)
    assert check_path_hypothesis(get_function("exp"), p).passed
    assert not check_path_hypothesis(get_function("sin"), ParamSet(0, 3, 1 / 3, 0.5, 1, 1)).passed


def test_path_violation_reports_location():
    g = lambda x: -((x - 0.5) ** 2)  # noqa: E731  concave, worst in the middle
    viol, t = path_violation(g, 0.0, 1.0, 1.0, 1.0, n_t=100)
    assert viol == pytest.approx(0.25)
    assert t == pytest.approx(0.5)


def test_hadamard_pairs_drop_empty_segments():
    p = ParamSet(0.2, 1.0, 0.5, 0.5, 1.0, 0.5, q=2)
    assert len(hadamard_pairs(p)) == 4
    assert len(hadamard_pairs(p.replace(mu=0.0))) == 2
    assert len(hadamard_pairs(p.replace(mu=1.0))) == 2


def test_hadamard_hypothesis_stricter_than_path():
    # for exp with m < 1 the path from a=0 holds but the m-divided pairs do not
    p = ParamSet(0.0, 1.0, 0.5, 0.0, 1.0, 0.25, q=2)
    f = get_function("exp")
    assert check_path_hypothesis(f, p).passed
    assert not check_hadamard_hypothesis(f, p).passed


@pytest.mark.parametrize(
    "alpha, m, name",
    [
        (0, 0, "increasing"),
        (1, 0, "starshaped"),
        (0.5, 0, "alpha-starshaped"),
        (1, 1, "convex"),
        (1, 0.5, "m-convex"),
        (0.5, 1, "alpha-convex"),
        (0.5, 0.5, "general (alpha,m)"),
    ],
)
def test_classify_class(alpha, m, name):
    assert classify_class(alpha, m) == name


def test_classify_class_rejects_out_of_range():
    with pytest.raises(ValueError):
        classify_class(1.5, 0.5)


@settings(max_examples=30, deadline=None)
@given(c=st.floats(0.1, 10), alpha=st.sampled_from([0.25, 0.5, 1.0]), m=st.sampled_from([0.25, 0.5, 1.0]))
def test_certificate_scale_invariant(c, alpha, m):
    g = lambda x: np.exp(x) - 1  # noqa: E731
    base = check_am_convex(g, alpha, m, 2.0, grid=(8, 8, 8))
    scaled = check_am_convex(lambda x: c * g(x), alpha, m, 2.0, grid=(8, 8, 8))
    assert scaled.max_violation == pytest.approx(c * base.max_violation, rel=1e-9, abs=1e-12)
