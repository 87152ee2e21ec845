"""Singular value decomposition by one-sided (Hestenes) Jacobi rotations.

Columns of a working copy ``G`` of ``A`` are rotated pairwise until they are
mutually orthogonal; the accumulated rotations form ``V`` and the column
norms are the singular values. Disjoint column pairs are rotated together
following a round-robin tournament schedule, so each step is one vectorised
update of ``n/2`` pairs.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ConvergenceFailure
from .matcore import DEFAULT_TOL, ComplexMatrix, ToleranceConfig, as_matrix

MAX_SWEEPS = 60
_EPS = np.finfo(np.float64).eps


@dataclass(frozen=True)
class SvdFactors:
    """``A = U @ diag(sigma) @ V^*`` with ``U`` rows x rows and ``V`` cols x cols."""

    U: ComplexMatrix
    sigma: np.ndarray
    V: ComplexMatrix

    @property
    def rows(self) -> int:
        return self.U.rows

    @property
    def cols(self) -> int:
        return self.V.rows

    def reconstruct(self) -> ComplexMatrix:
        k = len(self.sigma)
        u = self.U.array[:, :k]
        v = self.V.array[:, :k]
        return ComplexMatrix((u * self.sigma) @ v.conj().T)


@lru_cache(maxsize=None)
def _round_robin(n: int) -> tuple[tuple[np.ndarray, np.ndarray], ...]:
    """Pairings of ``range(n)`` such that every pair meets exactly once."""
    size = n + (n % 2)
    players = list(range(size))
    rounds = []
    for _ in range(size - 1):
        p, q = [], []
        for k in range(size // 2):
            i, j = players[k], players[size - 1 - k]
            if i < n and j < n:
                p.append(min(i, j))
                q.append(max(i, j))
        rounds.append((np.array(p, dtype=np.intp), np.array(q, dtype=np.intp)))
        # circle method: keep player 0 fixed, rotate the rest
        players = [players[0], players[-1]] + players[1:-1]
    return tuple(rounds)


def _jacobi(a: np.ndarray, max_sweeps: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    m, n = a.shape
    # columns of A are stored as rows so that pair gathers are contiguous
    gt = np.array(a.T, dtype=np.complex128, order="C")
    vt = np.eye(n, dtype=np.complex128)
    ctol = max(m, 1) * _EPS

    converged = n < 2
    for _ in range(max_sweeps):
        if converged:
            break
        rotated = False
        for p, q in _round_robin(n):
            gp, gq = gt[p], gt[q]
            alpha = np.einsum("ij,ij->i", gp.conj(), gp).real
            beta = np.einsum("ij,ij->i", gq.conj(), gq).real
            gamma = np.einsum("ij,ij->i", gp.conj(), gq)
            mag = np.abs(gamma)
            active = mag > ctol * np.sqrt(alpha * beta)
            if not active.any():
                continue
            rotated = True
            if not active.all():
                p, q = p[active], q[active]
                gp, gq = gp[active], gq[active]
                alpha, beta, gamma, mag = alpha[active], beta[active], gamma[active], mag[active]
            phase = gamma / mag
            zeta = (beta - alpha) / (2.0 * mag)
            t = np.where(zeta >= 0, 1.0, -1.0) / (np.abs(zeta) + np.hypot(1.0, zeta))
            c = (1.0 / np.hypot(1.0, t))[:, None]
            sp = (c[:, 0] * t * phase)[:, None]
            # [p', q'] = [p, q] @ [[c, s*phase], [-s*conj(phase), c]]
            gt[p] = c * gp - sp.conj() * gq
            gt[q] = sp * gp + c * gq
            vp, vq = vt[p], vt[q]
            vt[p] = c * vp - sp.conj() * vq
            vt[q] = sp * vp + c * vq
        converged = not rotated
    if not converged:
        raise ConvergenceFailure(f"one-sided Jacobi did not converge in {max_sweeps} sweeps")
    g, v = gt.T, vt.T

    sigma = np.linalg.norm(g, axis=0)
    order = np.argsort(-sigma, kind="stable")
    sigma, g, v = sigma[order], g[:, order], v[:, order]

    # columns carrying no signal are replaced by an orthonormal completion
    keep = (sigma > sigma[0] * m * _EPS) & (sigma > 0)
    r = int(keep.sum())
    u_r = g[:, :r] / sigma[:r]
    if r < m:
        q_full, _ = np.linalg.qr(np.hstack([u_r, np.eye(m, dtype=np.complex128)]))
        u = np.hstack([u_r, q_full[:, r:m]])
    else:
        u = u_r
    return u, sigma, v


def svd(a, max_sweeps: int = MAX_SWEEPS) -> SvdFactors:
    """Full SVD of any-shaped complex matrix.

    Raises :class:`ConvergenceFailure` if the sweep cap is reached.
    """
    a = as_matrix(a)
    arr = a.array
    if a.rows >= a.cols:
        u, sigma, v = _jacobi(arr, max_sweeps)
    else:
        v, sigma, u = _jacobi(arr.conj().T, max_sweeps)
    sigma.setflags(write=False)
    return SvdFactors(ComplexMatrix(u), sigma, ComplexMatrix(v))


def rank_cutoff(f: SvdFactors, tol: ToleranceConfig = DEFAULT_TOL, floor: float = 0.0) -> float:
    if len(f.sigma) == 0:
        return floor
    return max(tol.rank_rel * float(f.sigma[0]) * max(f.rows, f.cols), floor)


def numerical_rank(f: SvdFactors, tol: ToleranceConfig = DEFAULT_TOL, floor: float = 0.0) -> int:
    """Number of singular values strictly above ``rank_rel * sigma_1 * max(rows, cols)``.

    ``floor`` is an optional absolute noise level (e.g. the roundoff bound of
    a computed product); singular values at or below it never count.
    """
    if len(f.sigma) == 0 or f.sigma[0] == 0.0:
        return 0
    return int(np.count_nonzero(f.sigma > rank_cutoff(f, tol, floor)))
