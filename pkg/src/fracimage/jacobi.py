"""Jacobi-type orthogonal polynomials M_n^(p,q) and classical Jacobi
polynomials.

M_n^(p,q) is the degree-n polynomial

    M_n^(p,q)(x) = (-1)^n n! sum_k binom(p-n-1, k) binom(q+n, n-k) (-x)^k,

orthogonal on (0, inf) with weight x^q (1+x)^(-(p+q)) when p > 2n+1 and
q > -1. Its terminating hypergeometric form is

    (-1)^n n! binom(q+n, n) 2F1(-n, n+1-p; q+1; -x),

and it connects to the classical Jacobi polynomial through
M_n^(p,q)(x) = (-1)^n n! P_n^(q, -p-q)(2x+1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DenominatorPoleError, DomainError
from .gammafns import binomial_real, is_nonpositive_integer
from .hypergeom import gauss_2f1


@dataclass(frozen=True)
class PolySpec:
    """Degree and parameters of M_n^(p,q). Evaluation needs no constraint;
    orthogonality claims need p > 2n+1 and q > -1."""

    n: int
    p: float
    q: float

    def __post_init__(self) -> None:
        if self.n < 0 or self.n != int(self.n):
            raise ValueError(f"degree must be a nonnegative integer, got {self.n!r}")

    @property
    def is_orthogonal_range(self) -> bool:
        return self.p > 2 * self.n + 1 and self.q > -1.0


@dataclass(frozen=True)
class JacobiSpec:
    """Degree and parameters of the classical Jacobi polynomial."""

    n: int
    alpha: float
    beta: float

    def __post_init__(self) -> None:
        if self.n < 0 or self.n != int(self.n):
            raise ValueError(f"degree must be a nonnegative integer, got {self.n!r}")


def _binomial_exact(top: Fraction, k: int) -> Fraction:
    out = Fraction(1)
    for j in range(k):
        out *= top - j
    return out / math.factorial(k)


def _coefficients_exact(spec: PolySpec) -> list[Fraction]:
    n = spec.n
    p = Fraction(spec.p)
    q = Fraction(spec.q)
    fact_n = math.factorial(n)
    coeffs = []
    for k in range(n + 1):
        sign = 1 if (n + k) % 2 == 0 else -1
        coeffs.append(
            sign
            * fact_n
            * _binomial_exact(p - n - 1, k)
            * _binomial_exact(q + n, n - k)
        )
    return coeffs


def m_poly_coefficients(spec: PolySpec) -> list[float]:
    """Coefficients [c_0, ..., c_n] of M_n^(p,q)(x) = sum c_k x^k.

    The alternating binomial products cancel heavily for larger n, so they
    are built in exact rational arithmetic (float parameters are exact
    rationals) and rounded once per coefficient."""
    return [float(c) for c in _coefficients_exact(spec)]


def m_poly(spec: PolySpec, x: float, method: str = "direct") -> float:
    """M_n^(p,q)(x).

    method="direct" evaluates the explicit coefficient sum exactly and
    rounds once; method="hypergeometric" evaluates the terminating 2F1
    form and raises DenominatorPoleError when q+1 is a nonpositive integer
    reached before the series terminates."""
    if method == "direct":
        acc = Fraction(0)
        xf = Fraction(x)
        for c in reversed(_coefficients_exact(spec)):
            acc = acc * xf + c
        return float(acc)
    if method == "hypergeometric":
        n, p, q = spec.n, spec.p, spec.q
        if is_nonpositive_integer(q + 1.0) and -(q + 1.0) < n:
            raise DenominatorPoleError(
                f"2F1 lower parameter q+1 = {q + 1.0!r} is a pole reached "
                f"before termination at n = {n}",
                argument=q + 1.0,
                side="denominator",
            )
        sign_n = -1.0 if n % 2 else 1.0
        front = sign_n * math.factorial(n) * binomial_real(q + n, n)
        return front * gauss_2f1(float(-n), n + 1.0 - p, q + 1.0, -x)
    raise ValueError(f"unknown method {method!r}")


def jacobi_p(spec: JacobiSpec, x: float) -> float:
    """Classical Jacobi polynomial P_n^(alpha,beta)(x) by the three-term
    recurrence. Degenerate parameter sums (2n+alpha+beta hitting zero inside
    the recurrence) are the caller's concern; the connection-formula range
    used here never triggers them."""
    n, a, b = spec.n, spec.alpha, spec.beta
    if n == 0:
        return 1.0
    prev = 1.0
    cur = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x
    for m in range(2, n + 1):
        s = 2.0 * m + a + b
        c1 = 2.0 * m * (m + a + b) * (s - 2.0)
        c2 = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b)
        c3 = 2.0 * (m + a - 1.0) * (m + b - 1.0) * s
        prev, cur = cur, (c2 * cur - c3 * prev) / c1
    return cur


def m_jacobi_connection(spec: PolySpec, x: float) -> tuple[float, float]:
    """Both sides of M_n^(p,q)(x) = (-1)^n n! P_n^(q, -p-q)(2x+1)."""
    lhs = m_poly(spec, x)
    sign_n = -1.0 if spec.n % 2 else 1.0
    jac = JacobiSpec(spec.n, spec.q, -spec.p - spec.q)
    rhs = sign_n * math.factorial(spec.n) * jacobi_p(jac, 2.0 * x + 1.0)
    return lhs, rhs


def weight(p: float, q: float, x: float) -> float:
    """Orthogonality weight x^q (1+x)^(-(p+q)) for x > 0."""
    if x <= 0.0:
        raise DomainError(
            f"weight needs x > 0, got {x!r}", conditions=(f"x > 0 (x = {x!r})",)
        )
    return x**q * (1.0 + x) ** (-(p + q))


def _poly_derivative(coeffs: list[float]) -> list[float]:
    return [k * c for k, c in enumerate(coeffs)][1:] or [0.0]


def _poly_eval(coeffs: list[float], x: float) -> float:
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def ode_residual(spec: PolySpec, x: float, printed_eigenvalue: bool = False) -> float:
    """Residual of x(1+x) y'' + [(2-p)x + (1+q)] y' - n(n+1-p) y at x,
    with y = M_n^(p,q), differentiated exactly coefficient-wise.

    printed_eigenvalue=True swaps in the eigenvalue n(n-1+p), which direct
    substitution refutes for every n >= 1; it is kept evaluable so the
    discrepancy stays demonstrable."""
    n, p, q = spec.n, spec.p, spec.q
    coeffs = m_poly_coefficients(spec)
    d1 = _poly_derivative(coeffs)
    d2 = _poly_derivative(d1)
    y = _poly_eval(coeffs, x)
    yp = _poly_eval(d1, x)
    ypp = _poly_eval(d2, x)
    lam = n * (n - 1.0 + p) if printed_eigenvalue else n * (n + 1.0 - p)
    return x * (1.0 + x) * ypp + ((2.0 - p) * x + (1.0 + q)) * yp - lam * y
