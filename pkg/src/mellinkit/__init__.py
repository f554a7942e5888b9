"""Half-plane function-space numerics.

A numerics library and CLI around a transform pair between the Bergman
space of the disk |zeta - 1| < 1 and spaces of analytic functions of
exponential growth on the right half-plane, with a decision layer that
turns sequence statistics (Carleman ratios, densities, Blaschke sums)
into completeness verdicts for power systems on the disk.
"""

from ._backend import BACKEND, available_backends, set_backend
from .disk_space import DiskFunction, bergman_kernel, disk_function, evaluate, inner_product, monomial, norm_sq, power
from .errors import DomainError, NonConvergenceError, PoleError
from .gammakit import cgamma, gamma_asymptotic, log_cgamma, power_inner, power_norm_sq
from .halfplane import HalfPlaneFunction
from .m2_space import (
    IsometryCheck,
    M2NormResult,
    OmegaMeasure,
    SpectralDensity,
    box_density,
    bump_density,
    density_from_spec,
    gamma_membership_profile,
    gauss_density,
    kernel_datum,
    lp_kernel_partial_sums,
    m2_inner,
    m2_kernel,
    m2_kernel_function,
    m2_norm_sq,
    measure_identity_check,
    mellin,
    mellin_function,
    mellin_inverse,
    mellin_isometry_check,
    pw_isometry_check,
    pw_synthesis,
)
from .mellin_bergman import (
    T_MAP_SCALE,
    T_NORM_RATIO,
    cayley_pushforward,
    factorization_check,
    h_kernel,
    mb_power,
    mb_quad,
    mb_transform,
    t_map_power,
    type_envelope,
)
from .quad import (
    QuadratureConfig,
    disk_integral,
    integrate_interval,
    line_integral,
    line_integral_complex,
    line_pairing,
    weighted_axis_integral,
)
from .sequences import (
    CARLEMAN_THRESHOLD,
    EntireProduct,
    PointSequence,
    SequenceReport,
    blaschke_sum,
    carleman_ratio,
    carleman_sides,
    convergence_exponent,
    counting_function,
    densities,
    exp_type_estimate,
    point_sequence,
    rule_sequence,
    uniqueness_verdict,
    weierstrass_product,
    zero_set_witness,
)

__version__ = "0.1.0"
