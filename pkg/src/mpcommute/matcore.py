"""Immutable dense complex matrices and tolerance-aware predicates."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatch, NonFiniteEntry, NotSquare
from .report import Check


@dataclass(frozen=True)
class ToleranceConfig:
    """Cutoffs for every approximate decision in the package.

    ``rank_rel`` scales the singular-value cutoff, ``eq_rel`` and ``eq_abs``
    define approximate equality: ``||A - B||_F <= eq_abs + eq_rel * max(||A||_F, ||B||_F)``.
    """

    rank_rel: float = 1e-10
    eq_rel: float = 1e-9
    eq_abs: float = 1e-12

    def __post_init__(self):
        for name in ("rank_rel", "eq_rel", "eq_abs"):
            value = getattr(self, name)
            if not (np.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be a positive finite number, got {value!r}")
        if self.rank_rel >= 1:
            raise ValueError(f"rank_rel must be < 1, got {self.rank_rel!r}")

    def replace(self, **changes) -> "ToleranceConfig":
        kwargs = {"rank_rel": self.rank_rel, "eq_rel": self.eq_rel, "eq_abs": self.eq_abs}
        kwargs.update({k: v for k, v in changes.items() if v is not None})
        return ToleranceConfig(**kwargs)


DEFAULT_TOL = ToleranceConfig()
# repeated multiplication in the power laws compounds roundoff
POWER_TOL = ToleranceConfig(eq_rel=1e-8)


class ComplexMatrix:
    """Dense row-major complex matrix; the stored array is read-only.

    Accepts anything ``numpy.asarray`` understands. One-dimensional input is
    rejected rather than guessed into a row or column.
    """

    __slots__ = ("_a",)

    def __init__(self, data):
        if isinstance(data, ComplexMatrix):
            self._a = data._a
            return
        a = np.array(data, dtype=np.complex128)
        if a.ndim != 2:
            raise DimensionMismatch(f"expected a 2-d array, got ndim={a.ndim}")
        if a.shape[0] < 1 or a.shape[1] < 1:
            raise DimensionMismatch(f"rows and cols must be positive, got shape {a.shape}")
        if not np.isfinite(a).all():
            raise NonFiniteEntry("matrix entries must be finite")
        a.setflags(write=False)
        self._a = a

    @classmethod
    def from_pairs(cls, rows: int, cols: int, data: Sequence[Sequence[float]]) -> "ComplexMatrix":
        """Build from a row-major list of ``[re, im]`` pairs."""
        if len(data) != rows * cols:
            raise DimensionMismatch(f"data has {len(data)} entries, expected {rows}*{cols}")
        flat = np.array([complex(re, im) for re, im in data], dtype=np.complex128)
        return cls(flat.reshape(rows, cols))

    @classmethod
    def identity(cls, n: int) -> "ComplexMatrix":
        return cls(np.eye(n, dtype=np.complex128))

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "ComplexMatrix":
        return cls(np.zeros((rows, rows if cols is None else cols), dtype=np.complex128))

    @classmethod
    def diag(cls, values: Iterable[complex]) -> "ComplexMatrix":
        return cls(np.diag(np.asarray(list(values), dtype=np.complex128)))

    @classmethod
    def unit(cls, n: int, i: int, j: int) -> "ComplexMatrix":
        """Matrix unit E_ij (1-based indices) of size n x n."""
        a = np.zeros((n, n), dtype=np.complex128)
        a[i - 1, j - 1] = 1.0
        return cls(a)

    @property
    def array(self) -> np.ndarray:
        return self._a

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def H(self) -> "ComplexMatrix":
        return adjoint(self)

    def to_pairs(self) -> list[list[float]]:
        return [[float(z.real), float(z.imag)] for z in self._a.ravel()]

    def power(self, k: int) -> "ComplexMatrix":
        """Non-negative integer power by left-to-right repeated multiplication; ``A**0 = I``."""
        _require_square(self)
        if k < 0:
            raise ValueError("exponent must be non-negative")
        out = np.eye(self.rows, dtype=np.complex128)
        for _ in range(k):
            out = out @ self._a
        return ComplexMatrix(out)

    def __matmul__(self, other):
        if not isinstance(other, ComplexMatrix):
            return NotImplemented
        return multiply(self, other)

    def __add__(self, other):
        if not isinstance(other, ComplexMatrix):
            return NotImplemented
        _require_same_shape(self, other)
        return ComplexMatrix(self._a + other._a)

    def __sub__(self, other):
        if not isinstance(other, ComplexMatrix):
            return NotImplemented
        _require_same_shape(self, other)
        return ComplexMatrix(self._a - other._a)

    def __neg__(self):
        return ComplexMatrix(-self._a)

    def __mul__(self, scalar):
        if isinstance(scalar, ComplexMatrix):
            return NotImplemented
        return ComplexMatrix(self._a * complex(scalar))

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, ComplexMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self._a, other._a))

    def __hash__(self):
        return hash((self.shape, self._a.tobytes()))

    def __array__(self, dtype=None, copy=None):
        return self._a if dtype is None else self._a.astype(dtype)

    def __repr__(self):
        return f"ComplexMatrix({np.array2string(self._a, precision=4, suppress_small=True)})"


def as_matrix(a) -> ComplexMatrix:
    return a if isinstance(a, ComplexMatrix) else ComplexMatrix(a)


def _require_same_shape(a: ComplexMatrix, b: ComplexMatrix):
    if a.shape != b.shape:
        raise DimensionMismatch(f"shape mismatch: {a.shape} vs {b.shape}")


def _require_square(a: ComplexMatrix):
    if not a.is_square:
        raise NotSquare(f"expected a square matrix, got shape {a.shape}")


def adjoint(a) -> ComplexMatrix:
    """Conjugate transpose."""
    a = as_matrix(a)
    return ComplexMatrix(a.array.conj().T)


def multiply(a, b) -> ComplexMatrix:
    a, b = as_matrix(a), as_matrix(b)
    if a.cols != b.rows:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    return ComplexMatrix(a.array @ b.array)


def product(mats: Sequence[ComplexMatrix], dim: int | None = None) -> ComplexMatrix:
    """Strict left-to-right product; the empty product is the identity of size ``dim``."""
    if not mats:
        if dim is None:
            raise ValueError("empty product needs an explicit dimension")
        return ComplexMatrix.identity(dim)
    out = as_matrix(mats[0])
    for m in mats[1:]:
        out = multiply(out, m)
    return out


def frobenius_norm(a) -> float:
    return float(np.linalg.norm(as_matrix(a).array, "fro"))


def approx_eq(a, b, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    a, b = as_matrix(a), as_matrix(b)
    _require_same_shape(a, b)
    diff = frobenius_norm(a - b)
    return diff <= tol.eq_abs + tol.eq_rel * max(frobenius_norm(a), frobenius_norm(b))


def equality_check(
    label: str,
    a: ComplexMatrix,
    b: ComplexMatrix,
    tol: ToleranceConfig = DEFAULT_TOL,
    pair: tuple[int, int] | None = None,
) -> Check:
    """Same decision as :func:`approx_eq`, expressed as a floored relative residual.

    The residual is ``||A - B|| / (max(||A||, ||B||) + eq_abs / eq_rel)`` and
    the threshold is ``eq_rel``, so the residual of a passing check never
    exceeds ``eq_rel`` even when both sides are near zero.
    """
    a, b = as_matrix(a), as_matrix(b)
    _require_same_shape(a, b)
    diff = frobenius_norm(a - b)
    scale = max(frobenius_norm(a), frobenius_norm(b))
    return Check(label, diff / (scale + tol.eq_abs / tol.eq_rel), tol.eq_rel, pair)


def is_hermitian(a, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    a = as_matrix(a)
    _require_square(a)
    return approx_eq(a, adjoint(a), tol)


def is_normal(a, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    a = as_matrix(a)
    _require_square(a)
    ah = adjoint(a)
    return approx_eq(a @ ah, ah @ a, tol)
