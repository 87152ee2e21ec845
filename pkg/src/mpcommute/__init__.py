"""Moore-Penrose inverses and pseudoinverse identities of doubly commuting matrix tuples."""

from .commute import (
    Mark,
    TupleSpec,
    commutator,
    dagger_tuple_equivalence,
    is_doubly_commuting_pair,
    is_doubly_commuting_tuple,
    resolve_tuple,
)
from .errors import (
    ConvergenceFailure,
    DegenerateSample,
    DimensionMismatch,
    InvalidTuple,
    MatrixError,
    NonFiniteEntry,
    NotSquare,
    RankOutOfRange,
    SizeCap,
)
from .factor import SvdFactors, numerical_rank, svd
from .laws import (
    ClassificationResult,
    PowerSpec,
    Verdict,
    classify_tuple,
    commuting_normals_theorem,
    normal_power_law,
    remark25_identity_family,
    remark33_extended_family,
    reverse_order_law,
)
from .matcore import (
    DEFAULT_TOL,
    POWER_TOL,
    ComplexMatrix,
    ToleranceConfig,
    adjoint,
    approx_eq,
    frobenius_norm,
    is_hermitian,
    is_normal,
    multiply,
)
from .pinv import (
    PenroseReport,
    dagger_of_adjoint_identity,
    double_dagger_identity,
    moore_penrose,
    verify_penrose,
)
from .report import Check, VerdictReport

__version__ = "0.1.0"
