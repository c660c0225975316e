"""Truncated power-series engine: arithmetic against naive oracles,
generating-function invariants, and the error contract."""

from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from degenbell.core import LP_LAMBDA, LP_ONE, XP_X, LambdaPoly, XPoly
from degenbell.numbers import falling_deg_at, stirling2_deg
from degenbell.series import (
    DEFAULT_ORDER,
    Series,
    binomial_power_series,
    e_lambda_series,
    log_lambda_series,
    series_compose,
    series_exp,
    series_from_json,
    series_mul,
    series_pow,
    series_recip_unit,
    series_to_json,
)

from oracles import cauchy, pstrip, revert_series

rationals = st.fractions(min_value=-3, max_value=3, max_denominator=4)
scalar_series = st.lists(rationals, min_size=1, max_size=7).map(
    lambda cs: Series((XPoly.const(c) for c in cs), order=len(cs) - 1)
)
nilpotent_series = st.lists(rationals, min_size=1, max_size=6).map(
    lambda cs: Series((XPoly.const(c) for c in [0] + cs), order=len(cs))
)


def _scalars(s: Series) -> list[Fraction]:
    out = []
    for c in s.coeffs:
        assert c.degree in (None, 0)
        lp = c.coeffs[0] if c.coeffs else LambdaPoly(())
        assert lp.degree in (None, 0)
        out.append(lp.coeffs[0] if lp.coeffs else Fraction(0))
    return out


# ----------------------------------------------------------------------
# Arithmetic vs naive oracles
# ----------------------------------------------------------------------

@given(scalar_series, scalar_series)
def test_mul_matches_naive_cauchy(a, b):
    assert _scalars(series_mul(a, b)) == cauchy(_scalars(a), _scalars(b))


@given(scalar_series, scalar_series, scalar_series)
def test_mul_is_associative_and_commutative(a, b, c):
    assert series_mul(a, b) == series_mul(b, a)
    assert series_mul(series_mul(a, b), c) == series_mul(a, series_mul(b, c))


@given(scalar_series)
def test_addition_truncates_to_min_order(a):
    wide = Series.one(a.order + 3)
    assert (a + wide).order == a.order


@given(nilpotent_series, nilpotent_series)
@settings(max_examples=40)
def test_exp_is_additive(f, g):
    lhs = series_exp(f + g)
    rhs = series_mul(series_exp(f), series_exp(g))
    assert lhs == rhs.truncate(lhs.order)


@given(nilpotent_series)
@settings(max_examples=40)
def test_recip_of_exp_is_exp_of_negation(f):
    assert series_recip_unit(series_exp(f)) == series_exp(-f)


@given(nilpotent_series)
def test_exp_derivative_identity(f):
    """(e^f)' = f'·e^f, the defining property of the exp recurrence."""
    if f.order == 0:
        return
    e = series_exp(f)
    assert e.derivative() == series_mul(f.derivative(), e.truncate(f.order - 1))


@given(scalar_series, scalar_series)
def test_product_rule_for_derivative(a, b):
    if min(a.order, b.order) == 0:
        return
    lhs = series_mul(a, b).derivative()
    rhs = series_mul(a.derivative(), b.truncate(b.order - 1)) + series_mul(
        a.truncate(a.order - 1), b.derivative()
    )
    assert lhs == rhs


@given(scalar_series)
def test_mul_t_div_t_round_trip(a):
    assert a.mul_t().div_t() == a


def test_pow_matches_repeated_mul():
    s = Series.one(6) + Series.t(6) + Series.t(6).mul_t().truncate(6)
    assert series_pow(s, 3) == series_mul(series_mul(s, s), s)
    assert series_pow(s, 0) == Series.one(6)


# ----------------------------------------------------------------------
# The three named generating functions
# ----------------------------------------------------------------------

def test_e_lambda_coefficients_are_falling_factorials():
    w = LambdaPoly((0, 3))  # 3λ as a symbolic exponent
    s = e_lambda_series(w, 8)
    for k in range(9):
        assert s.egf_coeff(k) == XPoly.const(falling_deg_at(w, k))


def test_e_lambda_at_lambda_zero_is_classical_exp():
    s = e_lambda_series(1, 10).subs_lambda(0)
    assert _scalars(s) == [Fraction(1, factorial(n)) for n in range(11)]


def test_log_lambda_matches_reversion_oracle():
    """log_λ is the compositional inverse of e_λ - 1; the oracle inverts
    the series order by order without any closed form."""
    order = 8
    e_minus_1 = [
        pstrip(Fraction(1, factorial(n)) * c for c in falling_deg_at(1, n).coeffs)
        for n in range(order + 1)
    ]
    e_minus_1[0] = ()
    inverse = revert_series(e_minus_1, order)
    log = log_lambda_series(order)
    for n in range(order + 1):
        got = log.coeff(n)
        assert got.degree in (None, 0)
        lam_coeffs = got.coeffs[0].coeffs if got.coeffs else ()
        assert lam_coeffs == inverse[n], n


def test_log_lambda_at_lambda_zero_is_classical_log():
    s = log_lambda_series(9).subs_lambda(0)
    assert _scalars(s) == [Fraction(0)] + [
        Fraction((-1) ** (n - 1), n) for n in range(1, 10)
    ]


def test_compose_log_then_e_is_shift():
    order = 7
    e = e_lambda_series(1, order)
    log = log_lambda_series(order)
    assert series_compose(e, log) == Series.one(order) + Series.t(order)
    assert series_compose(log, e - Series.one(order)) == Series.t(order)


def test_stirling2_generating_function():
    """(e_λ(t)-1)^k/k! has t^n/n! coefficient S_{2,λ}(n,k)."""
    order = 9
    e1 = e_lambda_series(1, order) - Series.one(order)
    for k in range(order + 1):
        gf = series_pow(e1, k).scale(XPoly.const(Fraction(1, factorial(k))))
        for n in range(order + 1):
            assert gf.egf_coeff(n) == XPoly.const(stirling2_deg(n, k)), (n, k)


def test_bell_generating_function_satisfies_its_ode():
    """(1+λt)·d/dt e^{x(e_λ(t)-1)} = x·e_λ(t)·e^{x(e_λ(t)-1)}."""
    order = 9
    e = e_lambda_series(1, order)
    gf = series_exp((e - Series.one(order)).scale(XP_X))
    one_plus_lt = Series.one(order - 1) + Series.t(order - 1).scale(
        XPoly.const(LP_LAMBDA)
    )
    lhs = series_mul(one_plus_lt, gf.derivative())
    rhs = series_mul(e, gf).truncate(order - 1).scale(XP_X)
    assert lhs == rhs


def test_e_lambda_derivative_identity():
    """(1+λt)·e_λ'(t) = e_λ(t)."""
    order = 10
    e = e_lambda_series(1, order)
    one_plus_lt = Series.one(order - 1) + Series.t(order - 1).scale(
        XPoly.const(LP_LAMBDA)
    )
    assert series_mul(one_plus_lt, e.derivative()) == e.truncate(order - 1)


def test_binomial_power_series_against_binomials():
    s = binomial_power_series(1, -1, 8)  # plain geometric series (1+t)^{-1}
    assert _scalars(s) == [Fraction((-1) ** n) for n in range(9)]
    t = binomial_power_series(LP_LAMBDA, -2, 6)  # (1+λt)^{-2}
    for n in range(7):
        expect = LP_LAMBDA**n * ((n + 1) * (-1) ** n)
        assert t.coeff(n) == XPoly.const(expect), n


def test_symbolic_exponent_binomial_series():
    """(1-t)^{-x} is the EGF of the classical rising factorials."""
    from degenbell.numbers import rising_classical

    s = binomial_power_series(-1, -XP_X, 7)
    for n in range(8):
        assert s.egf_coeff(n) == rising_classical(n)


# ----------------------------------------------------------------------
# Error contract and structure
# ----------------------------------------------------------------------

def test_exp_rejects_nonzero_constant_term():
    with pytest.raises(ValueError, match="nilpotent"):
        series_exp(Series.one(4))


def test_recip_rejects_non_unit():
    with pytest.raises(ValueError, match="unit"):
        series_recip_unit(Series.t(4))


def test_compose_rejects_nonzero_inner_constant():
    with pytest.raises(ValueError, match="constant"):
        series_compose(Series.t(4), Series.one(4))


def test_derivative_needs_positive_order():
    with pytest.raises(ValueError):
        Series.one(0).derivative()


def test_div_t_needs_zero_constant():
    with pytest.raises(ValueError):
        Series.one(3).div_t()


def test_coeff_out_of_range_raises():
    with pytest.raises(IndexError):
        Series.one(3).coeff(4)


def test_equality_is_structural():
    assert Series.one(3) != Series.one(4)
    assert Series.one(4).truncate(3) == Series.one(3)


def test_default_order_constant():
    assert DEFAULT_ORDER == 16


@given(scalar_series)
def test_json_round_trip(s):
    assert series_from_json(series_to_json(s)) == s


def test_json_round_trip_symbolic():
    gf = series_exp(
        (e_lambda_series(1, 6) - Series.one(6)).scale(XP_X)
    )
    assert series_from_json(series_to_json(gf)) == gf
