"""Commutators, doubly commuting predicates and tuple transforms.

A tuple ``(a_1, ..., a_n)`` is doubly commuting when ``a_i a_j = a_j a_i``
and ``a_i a_j^* = a_j^* a_i`` for every ``i != j``. :class:`TupleSpec`
describes a derived tuple ``b`` with ``b_j = mark_j(a_perm[j])`` where the
mark is one of the identity, the adjoint, the Moore-Penrose inverse or the
adjoint of the inverse.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatch, InvalidTuple, NotSquare
from .matcore import DEFAULT_TOL, ComplexMatrix, ToleranceConfig, adjoint, as_matrix, frobenius_norm
from .pinv import moore_penrose
from .report import Check, VerdictReport


class Mark(str, enum.Enum):
    PLAIN = "plain"
    ADJOINT = "adjoint"
    DAGGER = "dagger"
    DAGGER_ADJOINT = "dagger_adjoint"


@dataclass(frozen=True)
class TupleSpec:
    """Ordered square matrices with per-position marks and a permutation.

    ``perm`` is 0-based here (file formats use 1-based indices); position
    ``j`` of the resolved tuple is built from ``entries[perm[j]]``.
    """

    entries: tuple[ComplexMatrix, ...]
    marks: tuple[Mark, ...] = field(default=())
    perm: tuple[int, ...] = field(default=())

    def __post_init__(self):
        entries = tuple(as_matrix(e) for e in self.entries)
        n = len(entries)
        if n == 0:
            raise InvalidTuple("a tuple needs at least one entry")
        dim = entries[0].rows
        for k, e in enumerate(entries):
            if not e.is_square:
                raise InvalidTuple(f"entry {k + 1} is not square: {e.shape}")
            if e.rows != dim:
                raise InvalidTuple(f"entry {k + 1} has dimension {e.rows}, expected {dim}")
        marks = tuple(Mark(m) for m in self.marks) if self.marks else (Mark.PLAIN,) * n
        perm = tuple(int(i) for i in self.perm) if self.perm else tuple(range(n))
        if len(marks) != n:
            raise InvalidTuple(f"{len(marks)} marks for {n} entries")
        if sorted(perm) != list(range(n)):
            raise InvalidTuple(f"perm {perm} is not a permutation of 0..{n - 1}")
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "marks", marks)
        object.__setattr__(self, "perm", perm)

    @classmethod
    def of(cls, *entries) -> "TupleSpec":
        return cls(tuple(entries))

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def dim(self) -> int:
        return self.entries[0].rows

    def with_marks(self, marks: Iterable[Mark | str]) -> "TupleSpec":
        return TupleSpec(self.entries, tuple(marks), self.perm)

    def with_perm(self, perm: Sequence[int]) -> "TupleSpec":
        return TupleSpec(self.entries, self.marks, tuple(perm))

    def with_entries(self, entries: Iterable) -> "TupleSpec":
        return TupleSpec(tuple(entries), self.marks, self.perm)


def _apply_mark(a: ComplexMatrix, mark: Mark, dagger: ComplexMatrix | None) -> ComplexMatrix:
    if mark is Mark.PLAIN:
        return a
    if mark is Mark.ADJOINT:
        return adjoint(a)
    if mark is Mark.DAGGER:
        return dagger
    return adjoint(dagger)


def resolve_tuple(t: TupleSpec, tol: ToleranceConfig = DEFAULT_TOL) -> list[ComplexMatrix]:
    """Materialise ``b_j = mark_j(a_perm[j])``.

    Pseudoinverses are computed at most once per source entry within this
    call and never cached across calls.
    """
    daggers: dict[int, ComplexMatrix] = {}
    out = []
    for mark, src in zip(t.marks, t.perm):
        dagger = None
        if mark in (Mark.DAGGER, Mark.DAGGER_ADJOINT):
            if src not in daggers:
                daggers[src] = moore_penrose(t.entries[src], tol)
            dagger = daggers[src]
        out.append(_apply_mark(t.entries[src], mark, dagger))
    return out


def _require_square_pair(a: ComplexMatrix, b: ComplexMatrix):
    if not a.is_square or not b.is_square:
        raise NotSquare(f"expected square matrices, got {a.shape} and {b.shape}")
    if a.shape != b.shape:
        raise DimensionMismatch(f"shape mismatch: {a.shape} vs {b.shape}")


def commutator(a, b) -> ComplexMatrix:
    """``AB - BA``."""
    a, b = as_matrix(a), as_matrix(b)
    _require_square_pair(a, b)
    return ComplexMatrix(a.array @ b.array - b.array @ a.array)


def _commutation_check(label, x, y, scale, tol, pair) -> Check:
    # residual of x = y normalised by ||A||*||B||, bare norm below the floor
    num = float(np.linalg.norm(x - y))
    residual = num / scale if scale >= tol.eq_abs else num
    return Check(label, residual, tol.eq_rel, pair)


def _pair_checks(a: ComplexMatrix, b: ComplexMatrix, tol: ToleranceConfig, pair) -> list[Check]:
    A, B = a.array, b.array
    Bh = B.conj().T
    scale = frobenius_norm(a) * frobenius_norm(b)
    i, j = pair
    return [
        _commutation_check(f"a{i} a{j} = a{j} a{i}", A @ B, B @ A, scale, tol, pair),
        _commutation_check(f"a{i} a{j}* = a{j}* a{i}", A @ Bh, Bh @ A, scale, tol, pair),
    ]


def is_doubly_commuting_pair(a, b, tol: ToleranceConfig = DEFAULT_TOL) -> VerdictReport:
    """Both ``AB = BA`` and ``AB* = B*A``, scale-invariantly."""
    a, b = as_matrix(a), as_matrix(b)
    _require_square_pair(a, b)
    return VerdictReport.of(_pair_checks(a, b, tol, (1, 2)))


def doubly_commuting_report(mats: Sequence[ComplexMatrix], tol: ToleranceConfig = DEFAULT_TOL) -> VerdictReport:
    """Pairwise doubly commuting checks over already-resolved matrices (1-based pairs)."""
    checks: list[Check] = []
    n = len(mats)
    for i in range(n):
        for j in range(i + 1, n):
            checks.extend(_pair_checks(mats[i], mats[j], tol, (i + 1, j + 1)))
    return VerdictReport.of(checks, notes={"size": n})


def commuting_report(mats: Sequence[ComplexMatrix], tol: ToleranceConfig = DEFAULT_TOL) -> VerdictReport:
    """Plain commutation ``a_i a_j = a_j a_i`` only, for every unordered pair."""
    checks = []
    n = len(mats)
    for i in range(n):
        for j in range(i + 1, n):
            A, B = mats[i].array, mats[j].array
            scale = frobenius_norm(mats[i]) * frobenius_norm(mats[j])
            pair = (i + 1, j + 1)
            checks.append(_commutation_check(f"a{i + 1} a{j + 1} = a{j + 1} a{i + 1}", A @ B, B @ A, scale, tol, pair))
    return VerdictReport.of(checks)


def is_doubly_commuting_tuple(t: TupleSpec, tol: ToleranceConfig = DEFAULT_TOL) -> VerdictReport:
    """Every unordered pair of distinct resolved entries is doubly commuting.

    A singleton tuple passes vacuously. ``witness`` is the lexicographically
    first failing pair.
    """
    return doubly_commuting_report(resolve_tuple(t, tol), tol)


def dagger_tuple(t: TupleSpec, tol: ToleranceConfig = DEFAULT_TOL) -> TupleSpec:
    """The tuple of pseudoinverses of the resolved entries of ``t``."""
    return TupleSpec(tuple(moore_penrose(b, tol) for b in resolve_tuple(t, tol)))


def dagger_tuple_equivalence(t: TupleSpec, tol: ToleranceConfig = DEFAULT_TOL) -> VerdictReport:
    """A tuple is doubly commuting iff its tuple of pseudoinverses is.

    Passes when the two verdicts agree, whichever way they go; both
    underlying reports are attached under ``parts``.
    """
    resolved = resolve_tuple(t, tol)
    plain = doubly_commuting_report(resolved, tol)
    dagger = doubly_commuting_report([moore_penrose(b, tol) for b in resolved], tol)
    agree = plain.passed == dagger.passed
    return VerdictReport.of(
        [Check("verdicts agree", 0.0 if agree else 1.0, 0.0)],
        parts={"tuple": plain, "dagger": dagger},
        notes={"tuple_doubly_commuting": plain.passed, "dagger_doubly_commuting": dagger.passed},
    )
