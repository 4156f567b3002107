"""Exact topology of coamoebas of simplicial real algebraic hypersurfaces.

Given a real Laurent polynomial in n variables with exactly n+1 monomials
spanning a nondegenerate simplex, this package computes the zonotope
arrangement whose complement is the coamoeba, the action of complex
conjugation on its mod-2 homology, the homology of the real part, and the
Galois-maximality defect.  Every quantity is produced by at least two
independent routes (closed formula and assembled or brute-force oracle) and
cross-checked; all arithmetic is exact.
"""

from .exactmath import (
    SingularMatrix,
    SmithDecomposition,
    Z2Matrix,
    minor_gcd,
    snf,
    z2_in_span,
    z2_rank,
)
from .geometry import (
    ConjugationAction,
    Region,
    Zonotope,
    ZonotopeArrangement,
    arrangement,
    conjugate_index,
    conjugation_action,
    fixed_indices,
    membership,
    membership_by_zonotope,
    parity_set,
    slice_count,
    standard_zonotope,
)
from .homology import (
    AnalysisReport,
    ConsistencyFailure,
    CStarPresentation,
    HomologyProfile,
    RealPartProfile,
    analyze,
    analyze_model,
    betti_coamoeba,
    cstar_presentation,
    defect_and_verdict,
    quadrant_mask,
    rank_assembled,
    rank_closed,
)
from .cubical import (
    BadResolution,
    CubicalComplex,
    SymmetryViolation,
    UnsupportedDimension,
    VerificationRecord,
    betti_z2,
    build_complex,
    collapse,
    conjugation_rank,
    verify,
)
from .model import (
    DegenerateSimplex,
    DuplicateExponent,
    IndexPartition,
    NormalizedModel,
    PolynomialSpec,
    SpecError,
    WrongTermCount,
    delta,
    model_from_matrix,
    model_to_spec,
    normalize,
    partition,
    spec_from_dict,
    spec_to_dict,
)

__version__ = "0.1.0"
