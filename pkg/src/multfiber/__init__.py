"""Exact fiber counts for fixed-point multiplier spectra of polynomial maps.

Given an unordered collection of d fixed-point multipliers (none equal
to 1, reciprocal shifts summing to zero), this package counts the
degree-d polynomial maps realizing it (with multiplicity, as distinct
monic centered polynomials, and as distinct affine conjugacy classes)
through independent exact routes, and cross-checks the results with a
floating-point polynomial-system solver.
"""

from .exactnum import GaussianRational, as_gaussian, multiplier_from_shift, reciprocal_shift
from .spectrum import (
    Spectrum,
    ValueClasses,
    from_shifts,
    generate,
    spectrum_from_obj,
    spectrum_to_obj,
    validate,
    value_classes,
)
from .lattice import (
    BlockPartition,
    Lattice,
    enumerate_lattice,
    inner_block_count,
    refines,
    zero_sum_subsets,
)
from .counting import (
    FiberReport,
    class_gcds,
    conjugacy_count,
    expansion_in_factorial_weights,
    factorial_weight,
    fiber_report,
    fiber_size,
    fiber_size_closed_form,
    monic_centered_count,
    weight_from_refinements,
    weight_from_subspectra,
)
from .polyfam import (
    IntPolynomial,
    coarsening_sum,
    coarsening_value,
    collapsed_poly,
    restriction_identity_holds,
    shape_partitions,
    vanishing_sum,
)
from .verifier import (
    RootTuple,
    SolverConfig,
    VerificationReport,
    build_system,
    forward_multipliers,
    orbit_count,
    solve_system,
    verify_spectrum,
)

__version__ = "0.1.0"

__all__ = [
    "GaussianRational",
    "as_gaussian",
    "reciprocal_shift",
    "multiplier_from_shift",
    "Spectrum",
    "ValueClasses",
    "validate",
    "from_shifts",
    "generate",
    "value_classes",
    "spectrum_to_obj",
    "spectrum_from_obj",
    "BlockPartition",
    "Lattice",
    "zero_sum_subsets",
    "enumerate_lattice",
    "refines",
    "inner_block_count",
    "FiberReport",
    "fiber_size",
    "fiber_size_closed_form",
    "fiber_report",
    "monic_centered_count",
    "conjugacy_count",
    "class_gcds",
    "factorial_weight",
    "weight_from_subspectra",
    "weight_from_refinements",
    "expansion_in_factorial_weights",
    "IntPolynomial",
    "shape_partitions",
    "coarsening_sum",
    "coarsening_value",
    "collapsed_poly",
    "vanishing_sum",
    "restriction_identity_holds",
    "SolverConfig",
    "RootTuple",
    "VerificationReport",
    "build_system",
    "solve_system",
    "forward_multipliers",
    "orbit_count",
    "verify_spectrum",
    "__version__",
]
