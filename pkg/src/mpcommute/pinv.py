"""Moore-Penrose inverse and checks of its defining equations.

The inverse is assembled from the SVD: on the span of the right singular
vectors whose singular values survive the rank cutoff, ``A`` is a bijection
onto its range and is inverted there; the orthogonal complement of the range
is sent to zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch
from .factor import numerical_rank, svd
from .matcore import (
    DEFAULT_TOL,
    ComplexMatrix,
    ToleranceConfig,
    adjoint,
    as_matrix,
    equality_check,
    frobenius_norm,
    product,
)
from .report import VerdictReport

_EPS = np.finfo(np.float64).eps
_FLOOR_PAD = 16.0


def moore_penrose(a, tol: ToleranceConfig = DEFAULT_TOL, floor: float = 0.0) -> ComplexMatrix:
    """Return ``A^+``, of shape ``cols x rows``.

    Singular values at or below ``rank_rel * sigma_1 * max(rows, cols)``, or
    at or below the absolute ``floor``, are treated as exact zeros. The zero
    matrix maps to the zero matrix of the transposed shape.
    """
    a = as_matrix(a)
    f = svd(a)
    r = numerical_rank(f, tol, floor)
    if r == 0:
        return ComplexMatrix.zeros(a.cols, a.rows)
    u = f.U.array[:, :r]
    v = f.V.array[:, :r]
    return ComplexMatrix((v / f.sigma[:r]) @ u.conj().T)


def product_noise_floor(mats: Sequence[ComplexMatrix]) -> float:
    """Roundoff bound for the computed left-to-right product of ``mats``.

    Each multiplication adds an error of at most about ``dim * eps`` times the
    product of the operand magnitudes; the bound is padded by a factor of 16.
    """
    if len(mats) < 2:
        return 0.0
    dim = max(max(m.shape) for m in mats)
    scale = float(np.prod([frobenius_norm(m) for m in mats]))
    return _FLOOR_PAD * (len(mats) - 1) * dim * _EPS * scale


def pinv_of_product(mats: Sequence[ComplexMatrix], tol: ToleranceConfig = DEFAULT_TOL, dim: int | None = None) -> ComplexMatrix:
    """Pseudoinverse of a computed product, ignoring singular values at roundoff level.

    A product that vanishes in exact arithmetic (for instance commuting
    normals with disjoint supports) comes out as pure roundoff, where the
    purely relative rank rule would invert noise.
    """
    return moore_penrose(product(mats, dim), tol, product_noise_floor(mats))


@dataclass(frozen=True)
class PenroseReport:
    """Relative residuals of the four Penrose equations for a candidate ``B``.

    r1: ``ABA = A``, r2: ``BAB = B``, r3: ``BA`` self-adjoint, r4: ``AB``
    self-adjoint. Each is ``||lhs - rhs|| / ||rhs||``; when that denominator is
    below ``eq_abs`` the bare numerator is used instead.
    """

    r1: float
    r2: float
    r3: float
    r4: float
    threshold: float

    @property
    def residuals(self) -> tuple[float, float, float, float]:
        return (self.r1, self.r2, self.r3, self.r4)

    @property
    def passed(self) -> bool:
        return all(r <= self.threshold for r in self.residuals)

    def to_dict(self) -> dict:
        return {"r1": self.r1, "r2": self.r2, "r3": self.r3, "r4": self.r4,
                "threshold": self.threshold, "pass": self.passed}


def _floored_ratio(num: float, den: float, floor: float) -> float:
    return num / den if den >= floor else num


def verify_penrose(a, b, tol: ToleranceConfig = DEFAULT_TOL) -> PenroseReport:
    a, b = as_matrix(a), as_matrix(b)
    if b.shape != (a.cols, a.rows):
        raise DimensionMismatch(f"candidate shape {b.shape} is not the transpose of {a.shape}")
    A, B = a.array, b.array
    ab, ba = A @ B, B @ A
    norm = lambda x: float(np.linalg.norm(x))
    r1 = _floored_ratio(norm(ab @ A - A), norm(A), tol.eq_abs)
    r2 = _floored_ratio(norm(ba @ B - B), norm(B), tol.eq_abs)
    r3 = _floored_ratio(norm(ba.conj().T - ba), norm(ba), tol.eq_abs)
    r4 = _floored_ratio(norm(ab.conj().T - ab), norm(ab), tol.eq_abs)
    return PenroseReport(r1, r2, r3, r4, tol.eq_rel)


def dagger_of_adjoint_identity(a, tol: ToleranceConfig = DEFAULT_TOL) -> VerdictReport:
    """Check that the inverse of the adjoint is the adjoint of the inverse."""
    a = as_matrix(a)
    lhs = moore_penrose(adjoint(a), tol)
    rhs = adjoint(moore_penrose(a, tol))
    return VerdictReport.of([equality_check("(A*)+ = (A+)*", lhs, rhs, tol)])


def double_dagger_identity(a, tol: ToleranceConfig = DEFAULT_TOL) -> VerdictReport:
    a = as_matrix(a)
    back = moore_penrose(moore_penrose(a, tol), tol)
    return VerdictReport.of([equality_check("(A+)+ = A", back, a, tol)])

