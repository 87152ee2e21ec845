"""Verifiers for pseudoinverse identities of doubly commuting tuples.

Every verifier evaluates both sides of an identity numerically and reports
labelled residuals; none of them assumes the hypothesis it is meant to
exercise, so the same functions serve as negative controls on tuples that
do not commute.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .commute import (
    TupleSpec,
    commuting_report,
    doubly_commuting_report,
    resolve_tuple,
)
from .errors import InvalidTuple, NotSquare
from .matcore import (
    DEFAULT_TOL,
    POWER_TOL,
    ComplexMatrix,
    ToleranceConfig,
    adjoint,
    as_matrix,
    equality_check,
    product,
)
from .pinv import moore_penrose, pinv_of_product
from .report import Check, VerdictReport


class Verdict(str, enum.Enum):
    DOUBLY_COMMUTING = "DoublyCommuting"
    NOT_DOUBLY_COMMUTING = "NotDoublyCommuting"


@dataclass(frozen=True)
class ClassificationResult:
    """Verdict from the pseudoinverse identities plus the direct cross-check.

    ``discrepancy`` is set whenever the two routes disagree; the verdict
    still follows the pseudoinverse evidence.
    """

    evidence: VerdictReport
    cross_check: VerdictReport

    @property
    def verdict(self) -> Verdict:
        return Verdict.DOUBLY_COMMUTING if self.evidence.passed else Verdict.NOT_DOUBLY_COMMUTING

    @property
    def discrepancy(self) -> bool:
        return self.evidence.passed != self.cross_check.passed

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "discrepancy": self.discrepancy,
            "evidence": self.evidence.to_dict(),
            "cross_check": self.cross_check.to_dict(),
        }


@dataclass(frozen=True)
class PowerSpec:
    exponents: tuple[int, ...]

    def __post_init__(self):
        exps = tuple(self.exponents)
        for m in exps:
            if isinstance(m, bool) or int(m) != m or m < 0:
                raise ValueError(f"exponents must be non-negative integers, got {m!r}")
        object.__setattr__(self, "exponents", tuple(int(m) for m in exps))

    def __len__(self) -> int:
        return len(self.exponents)


def reverse_order_law(t: TupleSpec, tol: ToleranceConfig = DEFAULT_TOL) -> VerdictReport:
    """Compare ``(b_1 ... b_n)^+`` with ``b_n^+ ... b_1^+`` and ``b_1^+ ... b_n^+``."""
    b = resolve_tuple(t, tol)
    lhs = pinv_of_product(b, tol)
    daggers = [moore_penrose(x, tol) for x in b]
    reversed_prod = product(daggers[::-1])
    forward_prod = product(daggers)
    return VerdictReport.of(
        [
            equality_check("(prod b)+ = reversed prod b+", lhs, reversed_prod, tol),
            equality_check("(prod b)+ = forward prod b+", lhs, forward_prod, tol),
        ],
        notes={"size": len(b)},
    )


def classify_tuple(t: TupleSpec, tol: ToleranceConfig = DEFAULT_TOL) -> ClassificationResult:
    """Decide double commutativity from pseudoinverses of swapped products.

    For every ordered pair ``i != j`` the evidence compares
    ``(a_i a_j)^+`` with ``(a_j a_i)^+`` and ``(a_i^* a_j)^+`` with
    ``(a_j a_i^*)^+``. Products themselves are never compared; that is
    left to ``cross_check``, which applies the definition directly.
    """
    if len(t) < 2:
        raise InvalidTuple("classification needs at least two entries")
    a = resolve_tuple(t, tol)
    adj = [adjoint(x) for x in a]
    cache: dict[tuple, ComplexMatrix] = {}

    def dagger_of(key, left, right):
        if key not in cache:
            cache[key] = pinv_of_product([left, right], tol)
        return cache[key]

    checks: list[Check] = []
    n = len(a)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            pair = (i + 1, j + 1)
            ab = dagger_of(("p", i, j), a[i], a[j])
            ba = dagger_of(("p", j, i), a[j], a[i])
            sab = dagger_of(("sl", i, j), adj[i], a[j])
            bsa = dagger_of(("sr", j, i), a[j], adj[i])
            checks.append(equality_check(f"(a{i+1} a{j+1})+ = (a{j+1} a{i+1})+", ab, ba, tol, pair))
            checks.append(equality_check(f"(a{i+1}* a{j+1})+ = (a{j+1} a{i+1}*)+", sab, bsa, tol, pair))
    evidence = VerdictReport.of(checks, notes={"size": n})
    return ClassificationResult(evidence, doubly_commuting_report(a, tol))


def remark25_identity_family(a, b, tol: ToleranceConfig = DEFAULT_TOL) -> VerdictReport:
    """The sixteen pair identities for a doubly commuting pair ``(a, b)``.

    Four rows, one per choice of ``x in {a, a*}`` and ``y in {b, b*}``:
    ``(xy)^+ = y^+ x^+ = x^+ y^+ = (yx)^+`` with ``(a*)^+`` written as
    ``(a^+)^*``, each link checked against the row's leading term. Four more
    checks tie the rows together through adjoints:
    ``(ab)^+ = ((a*b*)^+)^* = ((b*a*)^+)^*`` and
    ``(a*b)^+ = ((ab*)^+)^* = ((b*a)^+)^*``.
    """
    a, b = as_matrix(a), as_matrix(b)
    if not (a.is_square and b.is_square and a.shape == b.shape):
        raise NotSquare(f"expected square matrices of one size, got {a.shape} and {b.shape}")
    ah, bh = adjoint(a), adjoint(b)
    ad, bd = moore_penrose(a, tol), moore_penrose(b, tol)
    adh, bdh = adjoint(ad), adjoint(bd)

    rows = [
        ("a", "b", a, b, ad, bd),
        ("a*", "b", ah, b, adh, bd),
        ("a", "b*", a, bh, ad, bdh),
        ("a*", "b*", ah, bh, adh, bdh),
    ]
    checks = []
    leading = {}
    for xs, ys, x, y, xd, yd in rows:
        head = pinv_of_product([x, y], tol)
        leading[xs + ys] = head
        lhs = f"({xs}{ys})+"
        checks.append(equality_check(f"{lhs} = {ys}+ {xs}+", head, yd @ xd, tol))
        checks.append(equality_check(f"{lhs} = {xs}+ {ys}+", head, xd @ yd, tol))
        checks.append(equality_check(f"{lhs} = ({ys}{xs})+", head, pinv_of_product([y, x], tol), tol))

    checks.append(equality_check("(ab)+ = ((a*b*)+)*", leading["ab"], adjoint(leading["a*b*"]), tol))
    checks.append(equality_check("(ab)+ = ((b*a*)+)*", leading["ab"], adjoint(pinv_of_product([bh, ah], tol)), tol))
    checks.append(equality_check("(a*b)+ = ((ab*)+)*", leading["a*b"], adjoint(leading["ab*"]), tol))
    checks.append(equality_check("(a*b)+ = ((b*a)+)*", leading["a*b"], adjoint(pinv_of_product([bh, a], tol)), tol))
    return VerdictReport.of(checks)


def normal_power_law(b, n: int, tol: ToleranceConfig = POWER_TOL) -> VerdictReport:
    """``(B^n)^+ = (B^+)^n``; whether ``B`` is normal is recorded in ``notes``.

    Normality is reported rather than enforced, so non-normal inputs can be
    used to show the identity failing.
    """
    b = as_matrix(b)
    if not b.is_square:
        raise NotSquare(f"expected a square matrix, got {b.shape}")
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise ValueError(f"power must be a positive integer, got {n!r}")
    ah = adjoint(b)
    normality = equality_check("B B* = B* B", b @ ah, ah @ b, tol)
    check = equality_check(f"(B^{n})+ = (B+)^{n}", pinv_of_product([b] * n, tol), moore_penrose(b, tol).power(n), tol)
    return VerdictReport.of([check], notes={"normal": normality.passed, "normality_residual": normality.residual})


def _normal_premise(mats, tol) -> VerdictReport:
    checks = []
    for k, x in enumerate(mats, start=1):
        xh = adjoint(x)
        checks.append(equality_check(f"a{k} normal", x @ xh, xh @ x, tol))
    return VerdictReport.of(checks + list(commuting_report(mats, tol).checks))


def commuting_normals_theorem(t: TupleSpec, p: PowerSpec, tol: ToleranceConfig = POWER_TOL) -> VerdictReport:
    """Product-of-powers law for a commuting tuple of normal matrices.

    Stages, each attached under ``parts`` and all gating the verdict:

    1. ``premise`` (entries normal, pairwise commuting) and
       ``fuglede_putnam`` (the tuple is in fact doubly commuting);
    2. ``power_tuple``: ``(a_1^m1, ..., a_n^mn)`` is doubly commuting;
    3. ``identity``: ``(prod a_i^mi)^+ = prod (a_i^+)^mi``.

    A zero exponent contributes the identity matrix.
    """
    a = resolve_tuple(t, tol)
    if len(p) != len(a):
        raise InvalidTuple(f"{len(p)} exponents for {len(a)} entries")
    dim = t.dim
    premise = _normal_premise(a, tol)
    fuglede = doubly_commuting_report(a, tol)
    powers = [x.power(m) for x, m in zip(a, p.exponents)]
    power_tuple = doubly_commuting_report(powers, tol)
    flat = [x for x, m in zip(a, p.exponents) for _ in range(m)]
    lhs = pinv_of_product(flat, tol, dim)
    rhs = product([moore_penrose(x, tol).power(m) for x, m in zip(a, p.exponents)], dim)
    identity = VerdictReport.of([equality_check("(prod a^m)+ = prod (a+)^m", lhs, rhs, tol)])

    parts = {"premise": premise, "fuglede_putnam": fuglede, "power_tuple": power_tuple, "identity": identity}
    checks = [c for name, rep in parts.items() for c in rep.prefixed(name)]
    warnings = [c.label for c in premise.failures]
    return VerdictReport.of(checks, parts=parts, notes={"exponents": list(p.exponents), "warnings": warnings})


def remark33_extended_family(t: TupleSpec, p: PowerSpec, tol: ToleranceConfig = POWER_TOL) -> VerdictReport:
    """Product-of-powers law after applying the tuple's permutation and marks.

    The resolved tuple ``b`` (adjoints and pseudoinverses of commuting
    normals are again commuting normals) is handed to
    :func:`commuting_normals_theorem` as a plain tuple.
    """
    resolved = TupleSpec(tuple(resolve_tuple(t, tol)))
    report = commuting_normals_theorem(resolved, p, tol)
    notes = dict(report.notes)
    notes.update(marks=[m.value for m in t.marks], perm=[i + 1 for i in t.perm])
    return VerdictReport(report.checks, report.parts, notes)
