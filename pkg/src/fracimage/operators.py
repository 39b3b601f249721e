"""Fractional integral and derivative operator families and their exact
power-function images.

Ten families are covered: the five-parameter generalized operators with a
third-Appell-function kernel (left/right, integral/derivative), the Saigo
operators with a Gauss 2F1 kernel, and their Riemann-Liouville and
Erdelyi-Kober specializations. Each family maps a pure power of t to a
gamma-factor prefactor times a power of x; the prefactor is returned as a
symbolic GammaProduct so downstream checks can compare argument multisets
exactly instead of comparing rounded floats.

Monomial conventions (fixed per family, documented in the CLI too):
left-sided families act on t^(tau-1); the generalized right-sided families
act on t^(-tau); the Saigo/RL/EK right-sided families act on t^(tau-1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import DomainError, PoleError
from .gammafns import (
    GammaProduct,
    SignedLogValue,
    gamma_product_eval,
    is_nonpositive_integer,
)


class Family(str, Enum):
    MSM_LEFT_INT = "msm-left-int"
    MSM_RIGHT_INT = "msm-right-int"
    MSM_LEFT_DERIV = "msm-left-deriv"
    MSM_RIGHT_DERIV = "msm-right-deriv"
    SAIGO_LEFT = "saigo-left"
    SAIGO_RIGHT = "saigo-right"
    RL_LEFT = "rl-left"
    RL_RIGHT = "rl-right"
    EK_LEFT = "ek-left"
    EK_RIGHT = "ek-right"


# parameter names per family, in tuple order
PARAM_NAMES = {
    Family.MSM_LEFT_INT: ("alpha", "alpha_prime", "beta", "beta_prime", "gamma"),
    Family.MSM_RIGHT_INT: ("alpha", "alpha_prime", "beta", "beta_prime", "gamma"),
    Family.MSM_LEFT_DERIV: ("alpha", "alpha_prime", "beta", "beta_prime", "gamma"),
    Family.MSM_RIGHT_DERIV: ("alpha", "alpha_prime", "beta", "beta_prime", "gamma"),
    Family.SAIGO_LEFT: ("alpha", "beta", "eta"),
    Family.SAIGO_RIGHT: ("alpha", "beta", "eta"),
    Family.RL_LEFT: ("alpha",),
    Family.RL_RIGHT: ("alpha",),
    Family.EK_LEFT: ("eta", "alpha"),
    Family.EK_RIGHT: ("eta", "alpha"),
}

# families whose monomial convention is t^(-tau) instead of t^(tau-1)
NEGATIVE_POWER_FAMILIES = frozenset(
    {Family.MSM_RIGHT_INT, Family.MSM_RIGHT_DERIV}
)


@dataclass(frozen=True)
class OperatorSpec:
    """An operator family plus its real parameter tuple."""

    family: Family
    params: tuple[float, ...]

    def __post_init__(self) -> None:
        expected = len(PARAM_NAMES[self.family])
        if len(self.params) != expected:
            raise ValueError(
                f"{self.family.value} takes {expected} parameters, "
                f"got {len(self.params)}"
            )

    def named_params(self) -> dict[str, float]:
        return dict(zip(PARAM_NAMES[self.family], self.params))

    def describe(self) -> str:
        inner = ", ".join(
            f"{k}={v:g}" for k, v in self.named_params().items()
        )
        return f"{self.family.value}({inner})"


def msm_left_int(alpha, alpha_prime, beta, beta_prime, gamma) -> OperatorSpec:
    return OperatorSpec(
        Family.MSM_LEFT_INT,
        (float(alpha), float(alpha_prime), float(beta), float(beta_prime), float(gamma)),
    )


def msm_right_int(alpha, alpha_prime, beta, beta_prime, gamma) -> OperatorSpec:
    return OperatorSpec(
        Family.MSM_RIGHT_INT,
        (float(alpha), float(alpha_prime), float(beta), float(beta_prime), float(gamma)),
    )


def msm_left_deriv(alpha, alpha_prime, beta, beta_prime, gamma) -> OperatorSpec:
    return OperatorSpec(
        Family.MSM_LEFT_DERIV,
        (float(alpha), float(alpha_prime), float(beta), float(beta_prime), float(gamma)),
    )


def msm_right_deriv(alpha, alpha_prime, beta, beta_prime, gamma) -> OperatorSpec:
    return OperatorSpec(
        Family.MSM_RIGHT_DERIV,
        (float(alpha), float(alpha_prime), float(beta), float(beta_prime), float(gamma)),
    )


def saigo_left(alpha, beta, eta) -> OperatorSpec:
    return OperatorSpec(Family.SAIGO_LEFT, (float(alpha), float(beta), float(eta)))


def saigo_right(alpha, beta, eta) -> OperatorSpec:
    return OperatorSpec(Family.SAIGO_RIGHT, (float(alpha), float(beta), float(eta)))


def rl_left(alpha) -> OperatorSpec:
    return OperatorSpec(Family.RL_LEFT, (float(alpha),))


def rl_right(alpha) -> OperatorSpec:
    return OperatorSpec(Family.RL_RIGHT, (float(alpha),))


def ek_left(eta, alpha) -> OperatorSpec:
    return OperatorSpec(Family.EK_LEFT, (float(eta), float(alpha)))


def ek_right(eta, alpha) -> OperatorSpec:
    return OperatorSpec(Family.EK_RIGHT, (float(eta), float(alpha)))


@dataclass(frozen=True)
class ConditionResult:
    """One validity inequality, with margin > 0 iff strictly satisfied."""

    label: str
    satisfied: bool
    margin: float


def _conds(pairs) -> list[ConditionResult]:
    return [ConditionResult(label, margin > 0.0, margin) for label, margin in pairs]


def validate_domain(op: OperatorSpec, tau: float) -> list[ConditionResult]:
    """Validity inequalities for power_image(op, tau), each with its margin.

    For the five-parameter left integral the third condition exists in two
    printed variants that disagree (see the discrepancy registry); both are
    reported and both bind."""
    f = op.family
    if f is Family.MSM_LEFT_INT:
        a, ap, b, bp, g = op.params
        return _conds([
            ("gamma > 0", g),
            ("tau > 0", tau),
            ("tau > alpha - alpha_prime - beta - gamma (as printed)",
             tau - (a - ap - b - g)),
            ("tau > alpha + alpha_prime + beta - gamma (corrected)",
             tau - (a + ap + b - g)),
            ("tau > alpha_prime - beta_prime", tau - (ap - bp)),
        ])
    if f is Family.MSM_RIGHT_INT:
        a, ap, b, bp, g = op.params
        return _conds([
            ("gamma > 0", g),
            ("tau > beta", tau - b),
            ("tau > gamma - alpha - alpha_prime", tau - (g - a - ap)),
            ("tau > gamma - alpha - beta_prime", tau - (g - a - bp)),
        ])
    if f is Family.MSM_LEFT_DERIV:
        a, ap, b, bp, g = op.params
        return _conds([
            ("tau > 0", tau),
            ("tau > beta - alpha", tau - (b - a)),
            ("tau > gamma - alpha - alpha_prime - beta",
             tau - (g - a - ap - b)),
        ])
    if f is Family.MSM_RIGHT_DERIV:
        a, ap, b, bp, g = op.params
        return _conds([
            ("tau > -beta_prime", tau + bp),
            ("tau > alpha_prime + beta - gamma", tau - (ap + b - g)),
            ("tau > alpha + alpha_prime - gamma + floor(gamma) + 1",
             tau - (a + ap - g + math.floor(g) + 1.0)),
        ])
    if f is Family.SAIGO_LEFT:
        a, b, e = op.params
        return _conds([
            ("alpha > 0", a),
            ("tau > 0", tau),
            ("tau > beta - eta", tau - (b - e)),
        ])
    if f is Family.SAIGO_RIGHT:
        a, b, e = op.params
        return _conds([
            ("alpha > 0", a),
            ("tau < 1 + beta", 1.0 + b - tau),
            ("tau < 1 + eta", 1.0 + e - tau),
        ])
    if f is Family.RL_LEFT:
        (a,) = op.params
        return _conds([("alpha > 0", a), ("tau > 0", tau)])
    if f is Family.RL_RIGHT:
        (a,) = op.params
        return _conds([("alpha > 0", a), ("tau < 1 - alpha", 1.0 - a - tau)])
    if f is Family.EK_LEFT:
        e, a = op.params
        return _conds([
            ("alpha > 0", a),
            ("tau > 0", tau),
            ("tau > -eta", tau + e),
        ])
    if f is Family.EK_RIGHT:
        e, a = op.params
        return _conds([
            ("alpha > 0", a),
            ("tau < 1", 1.0 - tau),
            ("tau < 1 + eta", 1.0 + e - tau),
        ])
    raise ValueError(f"unknown family {f!r}")


def domain_ok(op: OperatorSpec, tau: float) -> bool:
    return all(c.satisfied for c in validate_domain(op, tau))


@dataclass(frozen=True)
class PowerImage:
    """Closed-form image: prefactor (symbolic gamma product) times
    x^exponent."""

    prefactor: GammaProduct
    exponent: float

    def prefactor_value(self) -> float:
        return gamma_product_eval(self.prefactor).to_float()

    def signed_log_at(self, x: float) -> SignedLogValue:
        return gamma_product_eval(self.prefactor).times_power(x, self.exponent)

    def value_at(self, x: float) -> float:
        return self.signed_log_at(x).to_float()


def _image_parts(op: OperatorSpec, tau: float):
    """(numerator args, denominator args, exponent) of the power image."""
    f = op.family
    if f is Family.MSM_LEFT_INT:
        a, ap, b, bp, g = op.params
        return (
            (tau, tau + g - a - ap - b, tau + bp - ap),
            (tau + bp, tau + g - a - ap, tau + g - ap - b),
            tau - a - ap + g - 1.0,
        )
    if f is Family.MSM_RIGHT_INT:
        a, ap, b, bp, g = op.params
        return (
            (tau - b, a + ap - g + tau, a + bp - g + tau),
            (tau, a - b + tau, a + ap + bp - g + tau),
            -a - ap + g - tau,
        )
    if f is Family.MSM_LEFT_DERIV:
        a, ap, b, bp, g = op.params
        return (
            (tau, tau + a - b, tau + a + ap + bp - g),
            (tau - b, tau + a + ap - g, tau + a + bp - g),
            a + ap - g + tau - 1.0,
        )
    if f is Family.MSM_RIGHT_DERIV:
        a, ap, b, bp, g = op.params
        return (
            (tau + bp, tau - a - ap + g, tau - ap - b + g),
            (tau, tau - ap + bp, tau - a - ap - b + g),
            a + ap - g - tau,
        )
    if f is Family.SAIGO_LEFT:
        a, b, e = op.params
        return (
            (tau, tau + e - b),
            (tau - b, tau + e + a),
            tau - b - 1.0,
        )
    if f is Family.SAIGO_RIGHT:
        a, b, e = op.params
        return (
            (b - tau + 1.0, e - tau + 1.0),
            (1.0 - tau, a + b + e - tau + 1.0),
            tau - b - 1.0,
        )
    if f is Family.RL_LEFT:
        (a,) = op.params
        return ((tau,), (tau + a,), tau + a - 1.0)
    if f is Family.RL_RIGHT:
        (a,) = op.params
        return ((1.0 - a - tau,), (1.0 - tau,), tau + a - 1.0)
    if f is Family.EK_LEFT:
        e, a = op.params
        return ((tau + e,), (tau + a + e,), tau - 1.0)
    if f is Family.EK_RIGHT:
        e, a = op.params
        return ((e - tau + 1.0,), (a + e - tau + 1.0,), tau - 1.0)
    raise ValueError(f"unknown family {f!r}")


def power_image(op: OperatorSpec, tau: float, validate: bool = True) -> PowerImage:
    """Image of the family's monomial convention under op, as an exact
    gamma-product prefactor and the output exponent.

    With validate=True (default) every validity inequality must hold
    strictly, otherwise DomainError names the violated ones. The prefactor
    is kept uncancelled so its argument schema stays visible; any pole that
    survives exact cancellation raises PoleError eagerly here."""
    if validate:
        failed = [c for c in validate_domain(op, tau) if not c.satisfied]
        if failed:
            raise DomainError(
                f"{op.describe()} at tau={tau!r} violates: "
                + "; ".join(c.label for c in failed),
                conditions=tuple(c.label for c in failed),
            )
    num, den, exponent = _image_parts(op, tau)
    gp = GammaProduct(tuple(num), tuple(den))
    reduced = gp.cancelled()
    for side, args in (
        ("numerator", reduced.numerator_args),
        ("denominator", reduced.denominator_args),
    ):
        for arg in args:
            if is_nonpositive_integer(arg):
                raise PoleError(
                    f"{op.describe()} image at tau={tau!r} has a gamma pole "
                    f"at {arg!r} in the {side}",
                    argument=arg,
                    side=side,
                )
    return PowerImage(gp, exponent)


def saigo_left_as_msm(alpha: float, beta: float, eta: float) -> OperatorSpec:
    """Five-parameter left operator equal to saigo_left(alpha, beta, eta):
    parameters (alpha+beta, 0, -eta, 0, alpha). Images agree at the same
    tau."""
    return msm_left_int(alpha + beta, 0.0, -eta, 0.0, alpha)


def saigo_right_as_msm(alpha: float, beta: float, eta: float) -> OperatorSpec:
    """Five-parameter right operator equal to saigo_right(alpha, beta, eta).

    The monomial conventions differ (t^(-tau) vs t^(tau-1)), so images
    agree after the index swap tau -> 1 - tau."""
    return msm_right_int(alpha + beta, 0.0, -eta, 0.0, alpha)
