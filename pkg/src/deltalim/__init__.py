"""deltalim: delta-like limits of scaled half-line Schrodinger operators.

Resonant couplings of -psi'' + theta*V*psi = 0, the Robin parameter they
induce under the critical scaling lambda(eps) = theta/eps^2 + omega/eps,
exact resolvent kernels of the scaled operators, self-contained Airy
functions with the closed forms for the linear potential family, and the
3D radial corollary.
"""
from . import airy, ode, potential, quadrature, radial3d, resolvent, resonance
from .errors import (
    AiryRangeError,
    BracketScanTooCoarse,
    DegenerateProfile,
    DeltaLimError,
    NonConvergence,
    NotAResonance,
    NotResonant,
    QuadratureFailure,
    SingularWronskian,
)
from .potential import Potential
from .resonance import (
    LimitDescriptor,
    ResonanceHit,
    ScalingLaw,
    classify_scaling,
    find_resonances,
    robin_alpha,
)
from .resolvent import (
    KernelEval,
    apply_resolvent,
    convergence_study,
    estimate_alpha,
    kernel_reference,
    kernel_scaled,
)
from .radial3d import RadialCase, classify_3d, resonance_profile

__version__ = "0.1.0"

__all__ = [
    "airy", "ode", "potential", "quadrature", "radial3d", "resolvent",
    "resonance",
    "Potential", "ResonanceHit", "ScalingLaw", "LimitDescriptor",
    "KernelEval", "RadialCase",
    "find_resonances", "robin_alpha", "classify_scaling",
    "kernel_scaled", "kernel_reference", "apply_resolvent",
    "estimate_alpha", "convergence_study",
    "classify_3d", "resonance_profile",
    "DeltaLimError", "NonConvergence", "BracketScanTooCoarse",
    "DegenerateProfile", "SingularWronskian", "QuadratureFailure",
    "NotAResonance", "NotResonant", "AiryRangeError",
    "__version__",
]
