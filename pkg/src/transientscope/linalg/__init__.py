"""Small dense linear algebra and numerical differentiation"""

from .spectral import (
    SpectralSummary, DefinitenessKind, DefinitenessVerdict, ConvergenceFailure,
    eigen, spectral_norm, spectral_radius, definiteness, nonneg_irreducible,
)
from .differentiation import (
    jacobian, gradient, delta_v_gradient, hessian_delta_v,
    FIRST_ORDER_STEP, HESSIAN_STEP,
)

__all__ = [
    'SpectralSummary', 'DefinitenessKind', 'DefinitenessVerdict',
    'ConvergenceFailure', 'eigen', 'spectral_norm', 'spectral_radius',
    'definiteness', 'nonneg_irreducible', 'jacobian', 'gradient',
    'delta_v_gradient', 'hessian_delta_v', 'FIRST_ORDER_STEP', 'HESSIAN_STEP',
]
