"""Truncated formal power series in t with exact XPoly coefficients.

A :class:`Series` keeps coefficients of t^0 … t^N for a fixed truncation
order N.  Coefficients are ordinary (not factorial-scaled); use
:meth:`Series.egf_coeff` for the t^n/n! convention common in generating
functions.  Arithmetic between two series truncates to the smaller order,
and every result records its own order, so truncation error can never be
mistaken for a real coefficient.

The deformed exponential/logarithm pair lives here:

* ``e_lambda_series(w, N)`` -- Σ (w)_{k,λ} t^k / k!, the λ-deformation of
  e^{wt}; w may be a rational or a polynomial in x.
* ``log_lambda_series(N)`` -- its compositional inverse around 0, with
  t^n/n! coefficient Π_{j=1}^{n-1}(λ - j).

Both reduce to the classical exp/log at λ = 0.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import factorial
from typing import Iterable, Sequence, Union

from .core import (
    LP_LAMBDA,
    LP_ONE,
    LP_ZERO,
    XP_ONE,
    XP_ZERO,
    LambdaLike,
    LambdaPoly,
    XLike,
    XPoly,
    from_nested_lists,
    to_nested_lists,
)

DEFAULT_ORDER = 16


class Series:
    """Truncated power series Σ_{n=0}^{order} coeffs[n]·t^n."""

    __slots__ = ("order", "coeffs")

    order: int
    coeffs: tuple[XPoly, ...]

    def __init__(self, coeffs: Iterable[XLike], order: int | None = None):
        cs = [XPoly.coerce(c) for c in coeffs]
        if order is None:
            if not cs:
                raise ValueError("empty series needs an explicit order")
            order = len(cs) - 1
        if order < 0:
            raise ValueError("series order must be nonnegative")
        if len(cs) > order + 1:
            cs = cs[: order + 1]
        while len(cs) < order + 1:
            cs.append(XP_ZERO)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("Series is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, order: int) -> "Series":
        return cls((), order=order)

    @classmethod
    def one(cls, order: int) -> "Series":
        return cls((XP_ONE,), order=order)

    @classmethod
    def const(cls, value: XLike, order: int) -> "Series":
        return cls((value,), order=order)

    @classmethod
    def t(cls, order: int) -> "Series":
        if order < 1:
            raise ValueError("order must be ≥ 1 to represent t")
        return cls((XP_ZERO, XP_ONE), order=order)

    # -- structure ----------------------------------------------------

    def coeff(self, n: int) -> XPoly:
        """Coefficient of t^n; raises beyond the truncation order."""
        if not 0 <= n <= self.order:
            raise IndexError(f"coefficient t^{n} beyond truncation order {self.order}")
        return self.coeffs[n]

    def egf_coeff(self, n: int) -> XPoly:
        """n!·coefficient of t^n, i.e. the t^n/n! coefficient."""
        return self.coeff(n) * factorial(n)

    def truncate(self, order: int) -> "Series":
        if order >= self.order:
            return self
        return Series(self.coeffs[: order + 1], order=order)

    def __eq__(self, other) -> bool:
        """Structural equality: same order and identical coefficients."""
        if not isinstance(other, Series):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(("Series", self.order, self.coeffs))

    def __repr__(self) -> str:
        return f"Series(order={self.order}, coeffs={[to_nested_lists(c) for c in self.coeffs]!r})"

    # -- linear arithmetic --------------------------------------------

    def __add__(self, other: "Series") -> "Series":
        if not isinstance(other, Series):
            return NotImplemented
        n = min(self.order, other.order)
        return Series(
            tuple(self.coeffs[i] + other.coeffs[i] for i in range(n + 1)), order=n
        )

    def __sub__(self, other: "Series") -> "Series":
        if not isinstance(other, Series):
            return NotImplemented
        n = min(self.order, other.order)
        return Series(
            tuple(self.coeffs[i] - other.coeffs[i] for i in range(n + 1)), order=n
        )

    def __neg__(self) -> "Series":
        return Series(tuple(-c for c in self.coeffs), order=self.order)

    def scale(self, factor: XLike) -> "Series":
        """Multiply every coefficient by a t-free factor."""
        f = XPoly.coerce(factor)
        return Series(tuple(c * f for c in self.coeffs), order=self.order)

    def __mul__(self, other):
        if isinstance(other, Series):
            return series_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    # -- substitutions ------------------------------------------------

    def subs_x(self, x0) -> "Series":
        """Evaluate the coefficients at a rational x, keeping λ symbolic."""
        return Series(
            tuple(XPoly.const(c.eval_x(x0)) for c in self.coeffs), order=self.order
        )

    def subs_lambda(self, lam) -> "Series":
        """Evaluate λ in every coefficient, keeping x symbolic."""
        return Series(
            tuple(
                XPoly(tuple(LambdaPoly.const(lp.eval(lam)) for lp in c.coeffs))
                for c in self.coeffs
            ),
            order=self.order,
        )

    def scale_t(self, factor: LambdaLike) -> "Series":
        """Substitute t → factor·t (factor free of t and x)."""
        f = LambdaPoly.coerce(factor)
        power = LP_ONE
        out = []
        for c in self.coeffs:
            out.append(c * power)
            power = power * f
        return Series(out, order=self.order)

    # -- t-calculus ----------------------------------------------------

    def derivative(self) -> "Series":
        """d/dt by coefficient shift-and-scale; order drops by one."""
        if self.order == 0:
            raise ValueError("derivative of an order-0 series has no known coefficients")
        return Series(
            tuple(self.coeffs[n] * n for n in range(1, self.order + 1)),
            order=self.order - 1,
        )

    def mul_t(self) -> "Series":
        """Multiply by t; the order grows by one (no information is lost)."""
        return Series((XP_ZERO,) + self.coeffs, order=self.order + 1)

    def div_t(self) -> "Series":
        """Divide by t; requires zero constant term, order drops by one."""
        if not self.coeffs[0].is_zero:
            raise ValueError("cannot divide by t: nonzero constant term")
        if self.order == 0:
            raise ValueError("cannot divide an order-0 series by t")
        return Series(self.coeffs[1:], order=self.order - 1)


# ----------------------------------------------------------------------
# Core operations
# ----------------------------------------------------------------------

def series_mul(a: Series, b: Series) -> Series:
    """Cauchy product truncated to the smaller order."""
    n = min(a.order, b.order)
    out = [XP_ZERO] * (n + 1)
    for i in range(n + 1):
        ai = a.coeffs[i]
        if ai.is_zero:
            continue
        for j in range(n + 1 - i):
            bj = b.coeffs[j]
            if not bj.is_zero:
                out[i + j] = out[i + j] + ai * bj
    return Series(out, order=n)


def series_pow(a: Series, k: int) -> Series:
    """a^k by repeated multiplication (k ≥ 0)."""
    if k < 0:
        raise ValueError("negative series power; use series_recip_unit")
    result = Series.one(a.order)
    base = a
    while k:
        if k & 1:
            result = series_mul(result, base)
        base = series_mul(base, base) if k > 1 else base
        k >>= 1
    return result


def _unit_constant(a: Series) -> Fraction:
    c0 = a.coeffs[0]
    if c0.degree == 0:
        lp = c0.coeffs[0]
        if lp.degree == 0 and lp.coeffs[0] != 0:
            return lp.coeffs[0]
    raise ValueError("non-unit constant term")


def series_recip_unit(a: Series) -> Series:
    """Multiplicative inverse of a series whose constant term is an invertible rational."""
    c0 = _unit_constant(a)
    inv0 = Fraction(1) / c0
    out = [XPoly.const(inv0)]
    for n in range(1, a.order + 1):
        acc = XP_ZERO
        for k in range(1, n + 1):
            ak = a.coeffs[k]
            if not ak.is_zero:
                acc = acc + ak * out[n - k]
        out.append(acc * (-inv0))
    return Series(out, order=a.order)


def series_exp(a: Series) -> Series:
    """Σ a^k/k! for a series with zero constant term.

    Computed by the first-order recurrence n·E_n = Σ_{k=1}^{n} k·a_k·E_{n-k}
    (from E' = a'·E), which costs one Cauchy product instead of N of them.
    """
    if not a.coeffs[0].is_zero:
        raise ValueError("exp of non-nilpotent series")
    out = [XP_ONE]
    for n in range(1, a.order + 1):
        acc = XP_ZERO
        for k in range(1, n + 1):
            ak = a.coeffs[k]
            if not ak.is_zero:
                acc = acc + ak * (k * out[n - k])
        out.append(acc * Fraction(1, n))
    return Series(out, order=a.order)


def series_compose(outer: Series, inner: Series) -> Series:
    """outer ∘ inner for inner with zero constant term.

    Uses power accumulation: inner^k is built incrementally and scaled by
    the k-th outer coefficient.  When the inner series is free of x (the
    common case here: log_λ or e_λ - 1), its powers stay x-free, so the
    expensive Cauchy products never touch the large x-polynomials that
    Horner accumulation would drag through every multiplication.
    """
    if not inner.coeffs[0].is_zero:
        raise ValueError("composition requires zero constant term")
    n = min(outer.order, inner.order)
    inner = inner.truncate(n)
    acc = Series.const(outer.coeffs[0], n)
    power = Series.one(n)
    for k in range(1, n + 1):
        power = series_mul(power, inner)
        ck = outer.coeffs[k]
        if not ck.is_zero:
            acc = acc + power.scale(ck)
    return acc


# ----------------------------------------------------------------------
# The deformed exponential / logarithm pair and binomial powers
# ----------------------------------------------------------------------

def e_lambda_series(exponent: XLike, order: int) -> Series:
    """Σ_{k} (w)_{k,λ} t^k / k! where (w)_{k,λ} = w(w-λ)···(w-(k-1)λ).

    The exponent w may be a rational, a LambdaPoly (e.g. 1-λ), or a
    polynomial in x; at λ = 0 the series is e^{wt}.
    """
    if order < 0:
        raise ValueError("order must be ≥ 0")
    w = XPoly.coerce(exponent)
    out = [XP_ONE]
    fall = XP_ONE
    for k in range(1, order + 1):
        fall = fall * (w - XPoly.const(LP_LAMBDA * (k - 1)))
        out.append(fall * Fraction(1, factorial(k)))
    return Series(out, order=order)


def log_lambda_series(order: int) -> Series:
    """Compositional inverse of e_λ(t) - 1: t^n/n! coefficient is Π_{j=1}^{n-1}(λ-j)."""
    if order < 0:
        raise ValueError("order must be ≥ 0")
    out = [XP_ZERO, XP_ONE]
    prod = LP_ONE
    for n in range(2, order + 1):
        prod = prod * (LP_LAMBDA - (n - 1))
        out.append(XPoly.const(prod * Fraction(1, factorial(n))))
    return Series(out[: order + 1], order=order)


def binomial_power_series(
    base_shift: LambdaLike, exponent: Union[int, XLike], order: int
) -> Series:
    """(1 + s·t)^w = Σ_n binom(w, n)·s^n·t^n with the generalized binomial.

    The shift s may carry λ symbolically (1 + λt raised to integer powers
    is the main use) and the exponent w may be an integer or a polynomial
    in x, e.g. (1-t)^{-x} whose t^n coefficient is ⟨x⟩_n/n!.
    """
    if order < 0:
        raise ValueError("order must be ≥ 0")
    s = LambdaPoly.coerce(base_shift)
    w = XPoly.coerce(exponent)
    out = [XP_ONE]
    binom = XP_ONE
    s_pow = LP_ONE
    for n in range(1, order + 1):
        binom = binom * (w - (n - 1)) * Fraction(1, n)
        s_pow = s_pow * s
        out.append(binom * s_pow)
    return Series(out, order=order)


def xpoly_at_series(p: XPoly, s: Series) -> Series:
    """Substitute the series s for x in a polynomial: Σ_j p_j(λ)·s^j.

    Unlike composition, s may have a nonzero constant term — a polynomial
    needs no convergence.  Used to form Bel_{n,λ}(a·e_λ(t)).
    """
    order = s.order
    acc = Series.zero(order)
    power = Series.one(order)
    for j, pj in enumerate(p.coeffs):
        if j > 0:
            power = series_mul(power, s)
        if not pj.is_zero:
            acc = acc + power.scale(XPoly.const(pj))
    return acc


# ----------------------------------------------------------------------
# JSON interchange: {"order": N, "coeffs": [nested rational strings...]}
# ----------------------------------------------------------------------

def series_to_json(s: Series) -> str:
    payload = {
        "order": s.order,
        "coeffs": [to_nested_lists(c) for c in s.coeffs],
    }
    return json.dumps(payload)


def series_from_json(text: str) -> Series:
    payload = json.loads(text)
    order = payload["order"]
    coeffs: Sequence = payload["coeffs"]
    return Series((from_nested_lists(c) for c in coeffs), order=order)
