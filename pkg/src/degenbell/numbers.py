"""The deformed number and polynomial families.

Everything here is a polynomial identity in the deformation parameter λ:

* ``falling_deg`` / ``rising_deg`` -- the deformed factorials
  (x)_{n,λ} = x(x-λ)···(x-(n-1)λ) and ⟨x⟩_{n,λ} = x(x+λ)···(x+(n-1)λ).
* ``stirling2_deg`` -- S_{2,λ}(n,k), connecting (x)_{n,λ} to the classical
  falling factorials; computed by the triangular recurrence
  S(n+1,k) = S(n,k-1) + (k-nλ)S(n,k).
* ``stirling1_deg`` -- S_{1,λ}(n,k), the inverse connection, computed by
  basis elimination (an independent route, deliberately not the inverse
  of the recurrence).
* ``bracket_deg`` -- the unsigned variant [n k]_λ = (-1)^{n-k}S_{1,λ}(n,k),
  cross-checked against its own basis expansion on every call.
* ``bernoulli_deg`` -- β_{n,λ}, the coefficients of t/(e_λ(t)-1).
* ``bell_deg`` -- Bel_{n,λ}(x) = Σ_k S_{2,λ}(n,k)x^k, plus the
  Dobinski-style numeric evaluator and the e-unit values S_{n,λ}.

At λ = 0 every family collapses to its classical counterpart; the classical
values are exposed only through that evaluation, never as separate code.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .core import (
    LP_LAMBDA,
    LP_ONE,
    LP_ZERO,
    XP_ONE,
    XP_X,
    LambdaLike,
    LambdaPoly,
    ScalarLike,
    XPoly,
)
from .series import Series, e_lambda_series, series_recip_unit


def _require_nonneg(n: int, what: str) -> None:
    if n < 0:
        raise ValueError(f"{what} must be nonnegative, got {n}")


# ----------------------------------------------------------------------
# Factorial families
# ----------------------------------------------------------------------

@lru_cache(maxsize=None)
def falling_deg(n: int) -> XPoly:
    """(x)_{n,λ} = x(x-λ)(x-2λ)···(x-(n-1)λ) as an XPoly, monic of degree n."""
    _require_nonneg(n, "factorial index")
    if n == 0:
        return XP_ONE
    return falling_deg(n - 1) * (XP_X - XPoly.const(LP_LAMBDA * (n - 1)))


@lru_cache(maxsize=None)
def rising_deg(n: int) -> XPoly:
    """⟨x⟩_{n,λ} = x(x+λ)(x+2λ)···(x+(n-1)λ) as an XPoly."""
    _require_nonneg(n, "factorial index")
    if n == 0:
        return XP_ONE
    return rising_deg(n - 1) * (XP_X + XPoly.const(LP_LAMBDA * (n - 1)))


@lru_cache(maxsize=None)
def falling_classical(n: int) -> XPoly:
    """(x)_n = x(x-1)···(x-n+1)."""
    _require_nonneg(n, "factorial index")
    if n == 0:
        return XP_ONE
    return falling_classical(n - 1) * (XP_X - (n - 1))


@lru_cache(maxsize=None)
def rising_classical(n: int) -> XPoly:
    """⟨x⟩_n = x(x+1)···(x+n-1)."""
    _require_nonneg(n, "factorial index")
    if n == 0:
        return XP_ONE
    return rising_classical(n - 1) * (XP_X + (n - 1))


def falling_deg_at(w: LambdaLike, n: int) -> LambdaPoly:
    """(w)_{n,λ} = w(w-λ)···(w-(n-1)λ) for a λ-polynomial (or rational) w."""
    _require_nonneg(n, "factorial index")
    w = LambdaPoly.coerce(w)
    acc = LP_ONE
    for i in range(n):
        acc = acc * (w - LP_LAMBDA * i)
    return acc


def falling_classical_int(r: int, k: int) -> int:
    """(r)_k = r(r-1)···(r-k+1) for integer r; zero when 0 ≤ r < k."""
    _require_nonneg(k, "factorial index")
    acc = 1
    for i in range(k):
        acc *= r - i
    return acc


class FactorialBasisId(enum.Enum):
    """The four degree-graded monic bases used for coefficient extraction."""

    FALLING_CLASSICAL = "falling-classical"
    FALLING_DEGENERATE = "falling-degenerate"
    RISING_CLASSICAL = "rising-classical"
    RISING_DEGENERATE = "rising-degenerate"

    def element(self, k: int) -> XPoly:
        return _BASIS_ELEMENT[self](k)


_BASIS_ELEMENT = {
    FactorialBasisId.FALLING_CLASSICAL: falling_classical,
    FactorialBasisId.FALLING_DEGENERATE: falling_deg,
    FactorialBasisId.RISING_CLASSICAL: rising_classical,
    FactorialBasisId.RISING_DEGENERATE: rising_deg,
}


def basis_expand(p: XPoly, basis: FactorialBasisId) -> list[LambdaPoly]:
    """Coefficients c_0..c_d with p = Σ c_k·basis_k(x).

    Descending-degree elimination: every basis element is monic of its
    degree, so the top coefficient of the remainder is read off directly
    and one subtraction strictly lowers the degree.  Exact for any p.
    """
    coeffs: list[LambdaPoly] = []
    rem = p
    while not rem.is_zero:
        d = rem.degree
        while len(coeffs) <= d:
            coeffs.append(LP_ZERO)
        top = rem.coeff(d)
        coeffs[d] = top
        rem = rem - basis.element(d) * XPoly.const(top)
        if not rem.is_zero and rem.degree >= d:
            raise AssertionError("basis elimination failed to reduce degree")
    return coeffs


# ----------------------------------------------------------------------
# Stirling families
# ----------------------------------------------------------------------

@lru_cache(maxsize=None)
def _stirling2_row(n: int) -> tuple[LambdaPoly, ...]:
    if n == 0:
        return (LP_ONE,)
    prev = _stirling2_row(n - 1)  # row n-1, indices 0..n-1
    row = []
    for k in range(n + 1):
        left = prev[k - 1] if k >= 1 else LP_ZERO
        right = prev[k] * (LambdaPoly((k,)) - LP_LAMBDA * (n - 1)) if k < n else LP_ZERO
        row.append(left + right)
    return tuple(row)


def stirling2_deg(n: int, k: int) -> LambdaPoly:
    """S_{2,λ}(n,k) by the triangular recurrence; zero outside 0 ≤ k ≤ n."""
    _require_nonneg(n, "row index")
    if k < 0 or k > n:
        return LP_ZERO
    return _stirling2_row(n)[k]


@lru_cache(maxsize=None)
def _stirling1_row(n: int) -> tuple[LambdaPoly, ...]:
    coeffs = basis_expand(falling_classical(n), FactorialBasisId.FALLING_DEGENERATE)
    while len(coeffs) < n + 1:
        coeffs.append(LP_ZERO)
    return tuple(coeffs)


def stirling1_deg(n: int, k: int) -> LambdaPoly:
    """S_{1,λ}(n,k): coefficient of (x)_{k,λ} in (x)_n; zero outside 0 ≤ k ≤ n."""
    _require_nonneg(n, "row index")
    if k < 0 or k > n:
        return LP_ZERO
    return _stirling1_row(n)[k]


@lru_cache(maxsize=None)
def _bracket_row(n: int) -> tuple[LambdaPoly, ...]:
    # Route (i): sign-flipped first-kind numbers.
    signed = tuple(
        stirling1_deg(n, k) * ((-1) ** ((n - k) % 2)) for k in range(n + 1)
    )
    # Route (ii): expand ⟨x⟩_n in the deformed rising basis.
    expanded = basis_expand(rising_classical(n), FactorialBasisId.RISING_DEGENERATE)
    while len(expanded) < n + 1:
        expanded.append(LP_ZERO)
    if signed != tuple(expanded):
        raise AssertionError(f"bracket routes disagree at row {n}")
    return signed


def bracket_deg(n: int, k: int) -> LambdaPoly:
    """[n k]_λ = (-1)^{n-k}·S_{1,λ}(n,k), cross-checked against the ⟨x⟩_n expansion."""
    _require_nonneg(n, "row index")
    if k < 0 or k > n:
        return LP_ZERO
    return _bracket_row(n)[k]


def stirling2_alt_sum(n: int, k: int) -> LambdaPoly:
    """(1/k!)·Σ_{j=0}^{k} C(k,j)(-1)^{k-j}(j)_{n,λ}.

    Equals S_{2,λ}(n,k) for n ≥ k and the zero polynomial for n < k.
    Independent of the recurrence: each (j)_{n,λ} is a bare product.
    """
    _require_nonneg(n, "row index")
    _require_nonneg(k, "column index")
    acc = LP_ZERO
    for j in range(k + 1):
        term = falling_deg_at(Fraction(j), n) * comb(k, j)
        acc = acc + (term if (k - j) % 2 == 0 else -term)
    return acc * Fraction(1, factorial(k))


# ----------------------------------------------------------------------
# Bernoulli and Bell families
# ----------------------------------------------------------------------

@lru_cache(maxsize=None)
def _bernoulli_series(order: int) -> Series:
    """t/(e_λ(t)-1) as a series: reciprocal of (e_λ(t)-1)/t."""
    e = e_lambda_series(1, order + 1)
    ratio = (e - Series.one(order + 1)).div_t()
    return series_recip_unit(ratio)


def bernoulli_deg(n: int) -> LambdaPoly:
    """β_{n,λ}: the t^n/n! coefficient of t/(e_λ(t)-1)."""
    _require_nonneg(n, "index")
    coeff = _bernoulli_series(n).egf_coeff(n)
    return coeff.eval_x(0)


def bernoulli_gf(order: int) -> Series:
    """t/(e_λ(t)-1) truncated at the given order."""
    _require_nonneg(order, "order")
    return _bernoulli_series(order).truncate(order)


def bell_deg(n: int) -> XPoly:
    """Bel_{n,λ}(x) = Σ_k S_{2,λ}(n,k)·x^k."""
    _require_nonneg(n, "index")
    return XPoly(_stirling2_row(n))


def bell_poly(n: int) -> XPoly:
    """Alias of :func:`bell_deg`."""
    return bell_deg(n)


@dataclass(frozen=True)
class EUnitScalar:
    """An exact multiple of Euler's number: coeff·e, with e kept symbolic."""

    coeff: LambdaPoly

    def __add__(self, other: "EUnitScalar") -> "EUnitScalar":
        return EUnitScalar(self.coeff + other.coeff)

    def __sub__(self, other: "EUnitScalar") -> "EUnitScalar":
        return EUnitScalar(self.coeff - other.coeff)

    def scale(self, factor: LambdaLike) -> "EUnitScalar":
        return EUnitScalar(self.coeff * LambdaPoly.coerce(factor))

    def numeric(self, lam: ScalarLike) -> float:
        """Display-time float value coeff(λ)·e; exactness ends here."""
        return float(self.coeff.eval(lam)) * math.e


def s_n_lambda(n: int) -> EUnitScalar:
    """S_{n,λ} = e·Bel_{n,λ}(1), kept as an exact multiple of e."""
    _require_nonneg(n, "index")
    return EUnitScalar(bell_deg(n).eval_x(1))


def bell_dobinski_numeric(n: int, x: float, lam: float, terms: int) -> float:
    """Truncated Dobinski sum e^{-x}·Σ_{k<terms}(k)_{n,λ}x^k/k! as a float.

    The sum and the e^{-x} factor are accumulated in exact rational
    arithmetic (the float inputs are taken at their exact binary values)
    and rounded exactly once at the end — at n = 10, x = 2 the target is
    ≈ 4.4·10⁶, where 1e-9 is only a couple of ULPs, so any intermediate
    float rounding would eat the whole error budget.
    """
    _require_nonneg(n, "index")
    if terms < 1:
        raise ValueError(f"terms must be ≥ 1, got {terms}")
    if not (math.isfinite(x) and math.isfinite(lam)):
        raise ValueError("non-finite input")
    xq = Fraction(x)
    if xq <= 0:
        raise ValueError(f"x must be positive, got {x}")
    lamq = Fraction(lam)

    total = Fraction(0)
    x_pow = Fraction(1)  # x^k / k!, updated incrementally
    for k in range(terms):
        if k:
            x_pow = x_pow * xq / k
        fall = Fraction(1)  # (k)_{n,λ}
        for i in range(n):
            fall *= k - i * lamq
        total += fall * x_pow
    # e^{-x} by Maclaurin, far past the point where terms vanish at this scale
    j_max = max(terms, 40)
    exp_neg = Fraction(0)
    term = Fraction(1)
    for j in range(j_max):
        if j:
            term = term * (-xq) / j
        exp_neg += term
    return float(total * exp_neg)
