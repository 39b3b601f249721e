"""Fractional-integral power images of Jacobi-type polynomials.

Closed-form images of power-weighted polynomials under ten families of
fractional integral and derivative operators, cross-checked three ways:
an exact finite-sum oracle, the closed-form series, and direct numerical
quadrature of the defining integrals.
"""

from .errors import (
    ConfigError,
    DenominatorPoleError,
    DivergenceError,
    DomainError,
    FracimageError,
    NonConvergedError,
    PoleError,
    UnsupportedKernelError,
)
from .gammafns import (
    GammaProduct,
    SignedLogValue,
    gamma,
    gamma_product_eval,
    log_gamma_signed,
    pochhammer,
)
from .hypergeom import appell_f3, gauss_2f1, pfq
from .identities import (
    AS_PRINTED_IDS,
    CORRECTIONS,
    IDENTITY_FAMILY,
    Correction,
    IdentityId,
    ImageEvaluation,
    corrections_for,
    deriv_composition_oracle,
    image_rhs,
    lhs_oracle,
    quadrature_value,
)
from .jacobi import (
    JacobiSpec,
    PolySpec,
    jacobi_p,
    m_jacobi_connection,
    m_poly,
    m_poly_coefficients,
    ode_residual,
    weight,
)
from .operators import (
    Family,
    OperatorSpec,
    PowerImage,
    ek_left,
    ek_right,
    msm_left_deriv,
    msm_left_int,
    msm_right_deriv,
    msm_right_int,
    power_image,
    rl_left,
    rl_right,
    saigo_left,
    saigo_left_as_msm,
    saigo_right,
    saigo_right_as_msm,
    validate_domain,
)
from .quadrature import QuadConfig, QuadResult, operator_apply, quad_endpoint_singular

__version__ = "0.1.0"

__all__ = [
    "AS_PRINTED_IDS",
    "CORRECTIONS",
    "ConfigError",
    "Correction",
    "DenominatorPoleError",
    "DivergenceError",
    "DomainError",
    "Family",
    "FracimageError",
    "GammaProduct",
    "IDENTITY_FAMILY",
    "IdentityId",
    "ImageEvaluation",
    "JacobiSpec",
    "NonConvergedError",
    "OperatorSpec",
    "PoleError",
    "PolySpec",
    "PowerImage",
    "QuadConfig",
    "QuadResult",
    "SignedLogValue",
    "UnsupportedKernelError",
    "appell_f3",
    "corrections_for",
    "deriv_composition_oracle",
    "ek_left",
    "ek_right",
    "gamma",
    "gamma_product_eval",
    "gauss_2f1",
    "image_rhs",
    "jacobi_p",
    "log_gamma_signed",
    "lhs_oracle",
    "m_jacobi_connection",
    "m_poly",
    "m_poly_coefficients",
    "msm_left_deriv",
    "msm_left_int",
    "msm_right_deriv",
    "msm_right_int",
    "ode_residual",
    "operator_apply",
    "pfq",
    "pochhammer",
    "power_image",
    "quad_endpoint_singular",
    "quadrature_value",
    "rl_left",
    "rl_right",
    "saigo_left",
    "saigo_left_as_msm",
    "saigo_right",
    "saigo_right_as_msm",
    "validate_domain",
    "weight",
    "__version__",
]
