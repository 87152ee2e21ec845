"""Seeded generators of structured matrices and tuples.

All randomness comes from numpy's PCG64 bit generator, seeded with a 64-bit
unsigned integer, so every output is a pure function of its arguments.
"""

from __future__ import annotations

from functools import reduce
from typing import Sequence

import numpy as np

from .commute import TupleSpec
from .errors import DegenerateSample, RankOutOfRange, SizeCap
from .matcore import ComplexMatrix, as_matrix

SIGMA_RANGE = (0.1, 10.0)
MAX_FACTORS = 4
MAX_FACTOR_DIM = 4
MAX_EMBED_DIM = 256
_RETRIES = 3


def rng_for(seed: int) -> np.random.Generator:
    seed = int(seed)
    if not 0 <= seed < 2**64:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return np.random.Generator(np.random.PCG64(seed))


def _ginibre(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    return (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))) / np.sqrt(2)


def _unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    # QR of a complex Gaussian sample, with R's diagonal phases folded into Q
    # so the result is Haar distributed
    for _ in range(1 + _RETRIES):
        q, r = np.linalg.qr(_ginibre(rng, dim, dim))
        d = np.diag(r)
        if np.all(np.abs(d) > 1e-12):
            return q * (d / np.abs(d))
    raise DegenerateSample(f"singular Gaussian sample for dim={dim} after {_RETRIES} retries")


def random_unitary(dim: int, seed: int) -> ComplexMatrix:
    if dim < 1:
        raise ValueError("dim must be positive")
    return ComplexMatrix(_unitary(rng_for(seed), dim))


def _fixed_rank(rng, rows, cols, rank, sigma_range=SIGMA_RANGE) -> np.ndarray:
    if not 0 <= rank <= min(rows, cols):
        raise RankOutOfRange(f"rank {rank} outside [0, {min(rows, cols)}] for {rows}x{cols}")
    if rank == 0:
        return np.zeros((rows, cols), dtype=np.complex128)
    u = _unitary(rng, rows)[:, :rank]
    v = _unitary(rng, cols)[:, :rank]
    sigma = rng.uniform(*sigma_range, size=rank)
    return (u * sigma) @ v.conj().T


def random_fixed_rank(rows: int, cols: int, rank: int, seed: int) -> ComplexMatrix:
    """Random ``rows x cols`` matrix of exact rank ``rank``.

    Nonzero singular values are drawn uniformly from ``[0.1, 10]``, far
    from any rank cutoff.
    """
    if rows < 1 or cols < 1:
        raise ValueError("rows and cols must be positive")
    return ComplexMatrix(_fixed_rank(rng_for(seed), rows, cols, rank))


def tensor_embed(factors: Sequence) -> TupleSpec:
    """Place factor ``k`` on the k-th slot of a Kronecker product of identities.

    Entries act on different tensor slots, so they commute and
    star-commute with each other whatever the factors are.
    """
    factors = [as_matrix(f) for f in factors]
    if not 1 <= len(factors) <= MAX_FACTORS:
        raise SizeCap(f"between 1 and {MAX_FACTORS} factors allowed, got {len(factors)}")
    for f in factors:
        if not f.is_square:
            raise ValueError(f"factors must be square, got {f.shape}")
        if f.rows > MAX_FACTOR_DIM:
            raise SizeCap(f"factor dimension {f.rows} exceeds {MAX_FACTOR_DIM}")
    dims = [f.rows for f in factors]
    if int(np.prod(dims)) > MAX_EMBED_DIM:
        raise SizeCap(f"embedded dimension {int(np.prod(dims))} exceeds {MAX_EMBED_DIM}")
    entries = []
    for k, f in enumerate(factors):
        slots = [np.eye(d, dtype=np.complex128) for d in dims]
        slots[k] = f.array
        entries.append(ComplexMatrix(reduce(np.kron, slots)))
    return TupleSpec(tuple(entries))


def tensor_dc(dims: Sequence[int], seed: int) -> TupleSpec:
    """Tensor embedding of random factors with the given dimensions.

    Factor ``k`` has a random rank in ``1..dims[k]`` and singular values in
    ``[0.1, 10]``; factors are generally not normal.
    """
    rng = rng_for(seed)
    factors = []
    for d in dims:
        if d < 1:
            raise ValueError("factor dimensions must be positive")
        rank = int(rng.integers(1, d + 1))
        factors.append(_fixed_rank(rng, d, d, rank))
    return tensor_embed(factors)


def commuting_normals(
    dim: int,
    count: int,
    seed: int,
    radii: tuple[float, float] = SIGMA_RANGE,
    zero_prob: float = 0.25,
) -> TupleSpec:
    """``(U D_1 U^*, ..., U D_n U^*)`` for one random unitary ``U``.

    Each diagonal entry is zero with probability ``zero_prob``; otherwise its
    modulus is uniform on ``radii`` and its phase uniform on the circle.
    """
    if dim < 1 or count < 1:
        raise ValueError("dim and count must be positive")
    lo, hi = radii
    if not 0 < lo <= hi:
        raise ValueError(f"invalid radii {radii}")
    rng = rng_for(seed)
    u = _unitary(rng, dim)
    entries = []
    for _ in range(count):
        mod = rng.uniform(lo, hi, size=dim)
        phase = np.exp(2j * np.pi * rng.uniform(size=dim))
        mod[rng.uniform(size=dim) < zero_prob] = 0.0
        entries.append(ComplexMatrix((u * (mod * phase)) @ u.conj().T))
    return TupleSpec(tuple(entries))


def random_normal(dim: int, seed: int, radii: tuple[float, float] = SIGMA_RANGE, zero_prob: float = 0.25) -> ComplexMatrix:
    return commuting_normals(dim, 1, seed, radii, zero_prob).entries[0]


def noncommuting_witness(dim: int = 2) -> TupleSpec:
    """``(E_12, E_21)`` embedded in the top-left corner of ``dim x dim``."""
    if dim < 2:
        raise ValueError("witness needs dim >= 2")
    return TupleSpec((ComplexMatrix.unit(dim, 1, 2), ComplexMatrix.unit(dim, 2, 1)))
