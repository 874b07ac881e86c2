"""Exact monomial-ideal, Hilbert-Samuel, fat-point and semidualizing-module computations."""
from .monomial import (
    MonomialIdeal,
    PolyContext,
    VariablePrime,
    associated_primes,
    combine,
    irreducible_decomposition,
    localize,
    minimal_generators,
    polarize,
    radical,
    standard_monomial_count,
)
from .hilbert import (
    HilbertData,
    additivity_check,
    canonical_multiplicity_check,
    fit_polynomial,
    hilbert_function,
    hilbert_polynomial,
    hilbert_samuel,
    multiplicity,
)
from .artinian import (
    ArtinianAlgebra,
    FiniteModule,
    algebra_from_ideal,
    external_tensor,
    hom_module,
    matlis_dual,
    regular_module,
    residue_field,
)
from .resolution import ResolutionSegment, ext, minimal_free_resolution, tensor_tor, tor
from .semidualizing import (
    beta_inequality_check,
    betti_convolution_check,
    classification_search,
    cor_betti_check,
    dagger_checks,
    is_semidualizing,
    iso_test,
)
from .fat_points import FatPointScheme, condition_matrix, multiplicity_equality_check

__version__ = "0.1.0"
