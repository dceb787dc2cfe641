"""wedgedyn: exact homological invariants of expanding wedge-of-circles maps.

The package computes Bowen-Franks groups of integer matrices, realizes free
group endomorphisms as tight maps on a wedge of b circles, and certifies
shadowing and injectivity questions for the induced semiconjugacy onto the
torus, all in exact rational arithmetic.
"""

from .bf import BFElement, BFGroup, TorusPoint, enumerate_fixed, phi_apply, psi, reduce, upsilon
from .errors import (
    AdaptedNormUnavailable,
    BudgetExceeded,
    ComplexOrSmallEigenvalue,
    DimensionMismatch,
    DuplicateRule,
    NonUniformExpansion,
    NotDivisible,
    NotEigenvectorOne,
    NotExpanding,
    NontrivialHomologyAction,
    ParseError,
    RankMismatch,
    RootOfUnitySpectrum,
    SingularMatrix,
    UndeclaredGenerator,
    WedgedynError,
)
from .dsl import MapSpec, RunConfig, format_map, parse
from .graphmap import (
    CoverPoint,
    GraphPoint,
    PeriodicPoint,
    SigmaReport,
    TightMap,
    VERTEX,
    cover_from_coords,
    cover_point,
    deck,
    graph_point,
    iota,
)
from .intmat import IntMatrix, RatMatrix, SnfDecomposition, c_matrix, rat_inverse, snf
from .polys import char_poly, has_root_of_unity_factor
from .rotation import (
    GroupRingMatrix,
    Loop,
    RotationSetReport,
    concatenate,
    eigen_rotation_number,
    hull_vertices,
    minimal_loops,
    periodic_rotation_vector,
    point_in_hull,
    rotation_set,
    transition_matrix,
)
from .semiconj import (
    BetaApproximation,
    InjectivityCertificate,
    beta_breakpoints,
    beta_mu,
    holder_bound,
    kappa,
    shadow_pairs,
    tail_bound,
)
from .spectra import Eigenvalue, LipschitzNormData, SpectralReport, rational_sqrt_upper, spectral
from .svg import beta_figure, rotset_figure
from .words import Endomorphism, Letter, Word

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
