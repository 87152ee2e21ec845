"""Shared oracles and fixtures.

The oracles here deliberately avoid the package's own SVD and
pseudoinverse code so they can serve as independent checks.
"""

import numpy as np
import pytest

from mpcommute import ComplexMatrix

ACCEPTANCE_LINES: list[str] = []


def schoolbook_product(a, b):
    a, b = np.asarray(a), np.asarray(b)
    rows, inner = a.shape
    cols = b.shape[1]
    out = [[0j] * cols for _ in range(rows)]
    for i in range(rows):
        for j in range(cols):
            acc = 0j
            for k in range(inner):
                acc += complex(a[i, k]) * complex(b[k, j])
            out[i][j] = acc
    return np.array(out)


def eig_pinv(a, rel_cut=1e-8):
    """``(A*A)^+ A*`` with ``(A*A)^+`` built from a Hermitian eigendecomposition."""
    a = np.asarray(a, dtype=complex)
    gram = a.conj().T @ a
    w, q = np.linalg.eigh(gram)
    top = max(w.max(initial=0.0), 0.0)
    inv = np.array([1.0 / x if x > rel_cut * top and top > 0 else 0.0 for x in w])
    return (q * inv) @ q.conj().T @ a.conj().T


def normalized_inverse(a, b):
    """``B A B``: a normalized generalized inverse whenever ``A B A = A``."""
    a, b = np.asarray(a), np.asarray(b)
    return b @ a @ b


def record_acceptance(name: str, passed: bool, detail: str = "") -> None:
    ACCEPTANCE_LINES.append(f"[{'PASS' if passed else 'FAIL'}] {name}" + (f" -- {detail}" if detail else ""))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def e12():
    return ComplexMatrix.unit(2, 1, 2)


@pytest.fixture
def e21():
    return ComplexMatrix.unit(2, 2, 1)
