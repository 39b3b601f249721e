"""Direct numerical evaluation of the fractional integral operators.

This is the independent oracle for the closed-form images: nothing here
reuses the gamma-product formulas, only the integral definitions. Endpoint
singularities u^a (1-u)^b are absorbed into Gauss-Jacobi weights, so the
evaluated factor of the integrand is smooth and the rules converge
spectrally.

Left-sided integrals substitute t = x*u; right-sided ones t = x/u, mapping
(x, inf) onto (0, 1). The 2F1 kernels (argument 1-u) are split at u = 1/2:
the right half is evaluated by the fast-converging series directly, the
left half through the standard connection formula at 1-u, which turns the
u -> 0 behavior into two more Jacobi-weighted smooth integrals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, NamedTuple

import numpy
from scipy.special import roots_jacobi

from .errors import (
    DenominatorPoleError,
    DomainError,
    NonConvergedError,
    UnsupportedKernelError,
)
from .gammafns import GammaProduct, gamma_product_eval, is_nonpositive_integer
from .hypergeom import gauss_2f1
from .operators import Family, OperatorSpec

# |diff| <= NOISE_FLOOR * (sum of |weighted terms|) counts as converged: the
# remaining difference is rounding, not discretization. Node accuracy limits
# resolution to ~1e-12 of the L1 mass at high orders, which is what a
# cancelling (e.g. orthogonality) integral stabilizes at.
NOISE_FLOOR = 1e-12
ERROR_FLOOR = 1e-16


@dataclass(frozen=True)
class QuadConfig:
    """Gauss-Jacobi rule configuration.

    node_count is the starting rule size; refinement doubles it up to
    max_refinements times until two consecutive estimates agree within
    tol (relative). right_tail_cutoff is accepted for diagnostic use but
    verification integrals never truncate the tail (the t = x/u
    substitution maps the full tail onto (0, 1))."""

    node_count: int = 64
    tol: float = 1e-10
    max_refinements: int = 6
    right_tail_cutoff: float | None = None

    def __post_init__(self) -> None:
        if self.node_count < 8:
            raise ValueError(f"node_count must be >= 8, got {self.node_count!r}")
        if self.tol <= 0.0:
            raise ValueError(f"tol must be > 0, got {self.tol!r}")
        if self.max_refinements < 0:
            raise ValueError(
                f"max_refinements must be >= 0, got {self.max_refinements!r}"
            )


DEFAULT_CONFIG = QuadConfig()


class QuadResult(NamedTuple):
    value: float
    error: float
    nodes: int


@lru_cache(maxsize=256)
def _gj_rule(n: int, a0: float, a1: float):
    """Nodes/weights for int_0^1 u^a0 (1-u)^a1 g(u) du ~ scale*sum w g(u)."""
    # scipy computes, then discards, an invalid intermediate when a0+a1 = -1
    with numpy.errstate(invalid="ignore", divide="ignore"):
        t, w = roots_jacobi(n, a1, a0)
    nodes = tuple((1.0 + ti) / 2.0 for ti in t)
    weights = tuple(float(wi) for wi in w)
    scale = 2.0 ** (-(a0 + a1 + 1.0))
    return nodes, weights, scale


def quad_endpoint_singular(
    g: Callable[[float], float],
    exponent_at_0: float,
    exponent_at_1: float,
    cfg: QuadConfig = DEFAULT_CONFIG,
) -> QuadResult:
    """int_0^1 u^exponent_at_0 (1-u)^exponent_at_1 g(u) du for smooth g.

    Both exponents must exceed -1 (integrability). Nodes are strictly
    interior, so g is never called at 0 or 1."""
    if exponent_at_0 <= -1.0 or exponent_at_1 <= -1.0:
        raise DomainError(
            "weight exponents must be > -1, got "
            f"({exponent_at_0!r}, {exponent_at_1!r})",
            conditions=("exponent_at_0 > -1", "exponent_at_1 > -1"),
        )
    n = cfg.node_count
    prev = None
    for _ in range(cfg.max_refinements + 1):
        nodes, weights, scale = _gj_rule(n, exponent_at_0, exponent_at_1)
        terms = [w * g(u) for u, w in zip(nodes, weights)]
        est = scale * math.fsum(terms)
        l1 = scale * math.fsum(abs(t) for t in terms)
        if prev is not None:
            diff = abs(est - prev)
            if diff <= cfg.tol * max(abs(est), abs(prev)) or diff <= NOISE_FLOOR * l1:
                return QuadResult(est, max(diff, ERROR_FLOOR * l1), n)
        prev = est
        n *= 2
    raise NonConvergedError(
        f"quadrature did not stabilize within {cfg.max_refinements} "
        f"doublings from {cfg.node_count} nodes"
    )


def _connection_coefficient(num: tuple, den: tuple) -> float:
    """Gamma ratio that is zero when a denominator argument is a pole."""
    try:
        return gamma_product_eval(GammaProduct(num, den)).to_float()
    except DenominatorPoleError:
        return 0.0


def _kernel_quad(
    kernel: tuple[float, float, float],
    a0: float,
    b0: float,
    s: Callable[[float], float],
    cfg: QuadConfig,
) -> QuadResult:
    """int_0^1 u^a0 (1-u)^b0 2F1(ka, kb; kc; 1-u) s(u) du.

    Polynomial kernels (ka or kb a nonpositive integer) and near-integer
    exponent differences e = kc-ka-kb go through a single rule; otherwise
    the integral is split at 1/2 and the u -> 0 half is rewritten by the
    2F1 connection formula, so every piece has a pure Jacobi weight."""
    ka, kb, kc = kernel

    def kernel_at(u: float) -> float:
        return gauss_2f1(ka, kb, kc, 1.0 - u)

    if is_nonpositive_integer(ka) or is_nonpositive_integer(kb):
        return quad_endpoint_singular(lambda u: kernel_at(u) * s(u), a0, b0, cfg)
    e = kc - ka - kb
    if abs(e - round(e)) < 1e-9:
        # logarithmic endpoint case: no pure-power split exists; fall back
        # to the single rule and let refinement do the work
        return quad_endpoint_singular(lambda u: kernel_at(u) * s(u), a0, b0, cfg)

    coeff_a = _connection_coefficient((kc, e), (kc - ka, kc - kb))
    coeff_b = _connection_coefficient((kc, -e), (ka, kb))

    # right half, u in (1/2, 1): u = 1 - v/2, series argument v/2 < 1/2
    right = quad_endpoint_singular(
        lambda v: (1.0 - v / 2.0) ** a0 * kernel_at(1.0 - v / 2.0) * s(1.0 - v / 2.0),
        b0,
        0.0,
        cfg,
    )
    value = 0.5 ** (b0 + 1.0) * right.value
    error = 0.5 ** (b0 + 1.0) * right.error
    nodes = right.nodes

    # left half, u = v/2: K(u) = coeff_a*phi1(u) + coeff_b*u^e*phi2(u)
    if coeff_a != 0.0:
        part = quad_endpoint_singular(
            lambda v: (1.0 - v / 2.0) ** b0
            * gauss_2f1(ka, kb, 1.0 - e, v / 2.0)
            * s(v / 2.0),
            a0,
            0.0,
            cfg,
        )
        value += coeff_a * 0.5 ** (a0 + 1.0) * part.value
        error += abs(coeff_a) * 0.5 ** (a0 + 1.0) * part.error
        nodes = max(nodes, part.nodes)
    if coeff_b != 0.0:
        if a0 + e <= -1.0:
            raise DomainError(
                f"kernel split exponent {a0 + e!r} is not integrable",
                conditions=("a0 + (kc-ka-kb) > -1",),
            )
        part = quad_endpoint_singular(
            lambda v: (1.0 - v / 2.0) ** b0
            * gauss_2f1(kc - ka, kc - kb, 1.0 + e, v / 2.0)
            * s(v / 2.0),
            a0 + e,
            0.0,
            cfg,
        )
        value += coeff_b * 0.5 ** (a0 + e + 1.0) * part.value
        error += abs(coeff_b) * 0.5 ** (a0 + e + 1.0) * part.error
        nodes = max(nodes, part.nodes)
    return QuadResult(value, error, nodes)


def operator_apply(
    op: OperatorSpec,
    f: Callable[[float], float],
    x: float,
    cfg: QuadConfig = DEFAULT_CONFIG,
    power_at_zero: float = 0.0,
    power_at_inf: float = 0.0,
) -> QuadResult:
    """Numerically apply an integral-family operator to f at x.

    power_at_zero (left-sided) or power_at_inf (right-sided) declares the
    leading power behavior of f so it can be folded into the quadrature
    weight exactly: the evaluated factor f(t) t^(-power) should be smooth.
    For f(t) = t^(tau-1) pass tau-1 and the rule integrates it to machine
    accuracy.

    Derivative families and the full two-series kernel regime have no
    supported quadrature and raise UnsupportedKernelError; the exact
    finite-sum oracle covers them instead."""
    if x <= 0.0:
        raise DomainError(
            f"operator_apply needs x > 0, got {x!r}", conditions=("x > 0",)
        )
    fam = op.family
    if fam in (Family.MSM_LEFT_DERIV, Family.MSM_RIGHT_DERIV):
        raise UnsupportedKernelError(
            f"{fam.value} has no direct quadrature; use the derivative "
            "composition oracle"
        )

    if fam in (Family.RL_LEFT, Family.EK_LEFT, Family.SAIGO_LEFT, Family.MSM_LEFT_INT):
        sigma = power_at_zero

        def smooth(u: float) -> float:
            t = x * u
            return f(t) * t**-sigma

        if fam is Family.RL_LEFT:
            (alpha,) = op.params
            _require_order(alpha, "alpha")
            quad = quad_endpoint_singular(smooth, sigma, alpha - 1.0, cfg)
            return _scaled(quad, x ** (alpha + sigma) / math.gamma(alpha))
        if fam is Family.EK_LEFT:
            eta, alpha = op.params
            _require_order(alpha, "alpha")
            quad = quad_endpoint_singular(smooth, eta + sigma, alpha - 1.0, cfg)
            return _scaled(quad, x**sigma / math.gamma(alpha))
        if fam is Family.SAIGO_LEFT:
            alpha, beta, eta = op.params
            _require_order(alpha, "alpha")
            quad = _kernel_quad(
                (alpha + beta, -eta, alpha), sigma, alpha - 1.0, smooth, cfg
            )
            return _scaled(quad, x ** (sigma - beta) / math.gamma(alpha))
        a, ap, b, bp, g = op.params
        _require_order(g, "gamma")
        if ap != 0.0 and bp != 0.0:
            raise UnsupportedKernelError(
                "left integral quadrature needs alpha_prime = 0 or "
                "beta_prime = 0 (two-series kernel regime is out of scope)"
            )
        quad = _kernel_quad((a, b, g), sigma - ap, g - 1.0, smooth, cfg)
        return _scaled(quad, x ** (g - a - ap + sigma) / math.gamma(g))

    rho = power_at_inf

    def smooth_right(u: float) -> float:
        t = x / u
        return f(t) * t**-rho

    if fam is Family.RL_RIGHT:
        (alpha,) = op.params
        _require_order(alpha, "alpha")
        quad = quad_endpoint_singular(
            smooth_right, -alpha - rho - 1.0, alpha - 1.0, cfg
        )
        return _scaled(quad, x ** (alpha + rho) / math.gamma(alpha))
    if fam is Family.EK_RIGHT:
        eta, alpha = op.params
        _require_order(alpha, "alpha")
        quad = quad_endpoint_singular(
            smooth_right, eta - rho - 1.0, alpha - 1.0, cfg
        )
        return _scaled(quad, x**rho / math.gamma(alpha))
    if fam is Family.SAIGO_RIGHT:
        alpha, beta, eta = op.params
        _require_order(alpha, "alpha")
        quad = _kernel_quad(
            (alpha + beta, -eta, alpha),
            beta - rho - 1.0,
            alpha - 1.0,
            smooth_right,
            cfg,
        )
        return _scaled(quad, x ** (rho - beta) / math.gamma(alpha))
    if fam is Family.MSM_RIGHT_INT:
        a, ap, b, bp, g = op.params
        _require_order(g, "gamma")
        if a != 0.0 and b != 0.0:
            raise UnsupportedKernelError(
                "right integral quadrature needs alpha = 0 or beta = 0 "
                "(two-series kernel regime is out of scope)"
            )
        # the surviving series is in the unbounded argument 1 - t/x; the
        # Pfaff transformation maps it onto 1 - x/t and shifts the power
        # weight by alpha_prime
        quad = _kernel_quad(
            (ap, g - bp, g), a + ap - rho - g - 1.0, g - 1.0, smooth_right, cfg
        )
        return _scaled(quad, x ** (g - a - ap + rho) / math.gamma(g))
    raise UnsupportedKernelError(f"no quadrature for family {fam.value}")


def _require_order(value: float, name: str) -> None:
    if value <= 0.0:
        raise DomainError(
            f"operator order must be positive: {name} = {value!r}",
            conditions=(f"{name} > 0",),
        )


def _scaled(quad: QuadResult, factor: float) -> QuadResult:
    return QuadResult(factor * quad.value, abs(factor) * quad.error, quad.nodes)
