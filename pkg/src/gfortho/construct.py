"""Builders for self-orthogonal, weighted orthogonal and related matrices.

All builders enumerate rows and columns in the same canonical element
order, so the skew-symmetric cores always have a zero diagonal.

Integer arguments standing for field elements (``r``, ``k``) are element
indices, matching the key-file convention.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

import numpy as np

from .errors import (
    BadExponent,
    ExponentPairTooLarge,
    FieldMismatch,
    NoAntiRoot,
    NotHadamard,
    NotPowerOfTwo,
    NotWeighted,
    ParseError,
    ZeroScale,
)
from .gf import Felt, FieldCtx, sqrt_in_field, sum_of_two_squares
from .gfmat import GfMatrix, _parse_table, identity, kronecker, scalar_mul, transpose, weight_of

__all__ = [
    "valid_exponents",
    "check_exponent",
    "self_orthogonal",
    "weighted_orthogonal",
    "anti_orthogonal",
    "block_2q",
    "block_2q_with_scalars",
    "sylvester_pm1",
    "hadamard_sylvester",
    "embed_pm1",
    "load_hadamard",
    "write_hadamard",
    "hadamard_fixture",
    "kron_weighted",
]


def valid_exponents(q: int) -> range:
    """Exponents ``t`` with ``1 <= t`` and ``2t <= q - 2``."""
    return range(1, (q - 2) // 2 + 1)


def check_exponent(ctx: FieldCtx, t: int) -> None:
    if not (t >= 1 and 2 * t <= ctx.q - 2):
        raise BadExponent(
            f"t out of range: need 1 <= t and 2t <= q-2 (q={ctx.q}, t={t})"
        )


def _element(ctx: FieldCtx, v) -> Felt:
    if isinstance(v, Felt):
        if v.ctx != ctx:
            raise FieldMismatch(f"{v.ctx.describe()} vs {ctx.describe()}")
        return v
    return ctx(int(v))


def self_orthogonal(ctx: FieldCtx, t: int) -> GfMatrix:
    """Skew-symmetric ``A`` with ``A[i, j] = a_j**t - a_i**t`` and ``A @ A.T == 0``."""
    check_exponent(ctx, t)
    z = np.array([ctx._pow(i, t) for i in range(ctx.q)], dtype=np.int64)
    return GfMatrix._wrap(ctx, ctx.vsub(z[None, :], z[:, None]))


def _shift(A: GfMatrix, r: Felt) -> GfMatrix:
    return A + scalar_mul(r, identity(A.ctx, A.rows))


def weighted_orthogonal(ctx: FieldCtx, t: int, r) -> GfMatrix:
    """``W = A + r*I``; its Gram matrix is ``r**2 * I``."""
    r = _element(ctx, r)
    if not r:
        raise ZeroScale("scale r must be nonzero")
    return _shift(self_orthogonal(ctx, t), r)


def anti_orthogonal(ctx: FieldCtx, t: int) -> GfMatrix:
    r = sqrt_in_field(-ctx.one)
    if r is None:
        raise NoAntiRoot(f"-1 is not a square in {ctx.describe()}")
    return weighted_orthogonal(ctx, t, r)


def block_2q_with_scalars(ctx: FieldCtx, t1: int, t2: int, r, s) -> GfMatrix:
    """``[[A + rI, B + sI], [-(B + sI).T, (A + rI).T]]`` with weight ``r^2 + s^2``."""
    check_exponent(ctx, t1)
    check_exponent(ctx, t2)
    if t1 + t2 > ctx.q - 2:
        raise ExponentPairTooLarge(
            f"need t1 + t2 <= q-2 for the product of the cores to vanish "
            f"(q={ctx.q}, t1={t1}, t2={t2})"
        )
    top_left = _shift(self_orthogonal(ctx, t1), _element(ctx, r))
    top_right = _shift(self_orthogonal(ctx, t2), _element(ctx, s))
    data = np.block([
        [top_left.data, top_right.data],
        [(-transpose(top_right)).data, transpose(top_left).data],
    ])
    return GfMatrix._wrap(ctx, data)


def block_2q(ctx: FieldCtx, t1: int = 1, t2: int = 1, k=1) -> GfMatrix:
    """Order-2q matrix of any weight ``k``, via ``k = r^2 + s^2``."""
    k = _element(ctx, k)
    r, s = sum_of_two_squares(k)
    return block_2q_with_scalars(ctx, t1, t2, r, s)


# ----------------------------------------------------------------------
# Hadamard sources
# ----------------------------------------------------------------------

def sylvester_pm1(m: int) -> np.ndarray:
    """Sylvester Hadamard matrix of order ``m`` as a +-1 integer array."""
    if m < 2 or m & (m - 1):
        raise NotPowerOfTwo(f"Sylvester order must be a power of two >= 2, got {m}")
    H = np.ones((1, 1), dtype=np.int64)
    while H.shape[0] < m:
        H = np.block([[H, H], [H, -H]])
    return H


def embed_pm1(H: np.ndarray, ctx: FieldCtx) -> GfMatrix:
    minus_one = (-ctx.one).index
    return GfMatrix._wrap(ctx, np.where(H == 1, 1, minus_one))


def hadamard_sylvester(m: int, ctx: FieldCtx) -> GfMatrix:
    return embed_pm1(sylvester_pm1(m), ctx)


def _check_pm1_hadamard(H: np.ndarray) -> None:
    n = H.shape[0]
    if H.shape != (n, n):
        raise NotHadamard(f"Hadamard matrix must be square, got {H.shape}")
    if not np.array_equal(H @ H.T, n * np.eye(n, dtype=np.int64)):
        raise NotHadamard(f"H @ H.T != {n} I over the integers")


def load_hadamard(path, ctx: FieldCtx) -> GfMatrix:
    """Read a +-1 matrix file, validate it over the integers and embed it."""
    H = _parse_table(Path(path).read_text(), allowed=lambda v: v in (1, -1))
    _check_pm1_hadamard(H)
    M = embed_pm1(H, ctx)
    w = weight_of(M)
    if w is None or w != ctx.from_int(H.shape[0]):
        raise NotHadamard("embedded matrix lost its Hadamard property")  # cannot happen
    return M


def write_hadamard(H, path) -> None:
    """Write a Hadamard matrix (+-1 array or embedded GfMatrix) with +-1 entries."""
    if isinstance(H, GfMatrix):
        minus_one = (-H.ctx.one).index
        if not np.isin(H.data, (1, minus_one)).all():
            raise ParseError("matrix has entries other than +1 and -1")
        arr = np.where(H.data == 1, 1, -1)
    else:
        arr = np.asarray(H, dtype=np.int64)
    rows = [" ".join(str(v) for v in row) for row in arr.tolist()]
    Path(path).write_text(f"{arr.shape[0]} {arr.shape[1]}\n" + "\n".join(rows) + "\n")


def hadamard_fixture(order: int):
    """Path to a shipped Hadamard fixture (orders 12 and 20)."""
    ref = resources.files("gfortho") / "data" / f"hadamard_{order}.txt"
    if not ref.is_file():
        raise FileNotFoundError(f"no Hadamard fixture of order {order}")
    return ref


def kron_weighted(H: GfMatrix, W: GfMatrix) -> GfMatrix:
    """``H kron W``; its weight is the product of the factor weights."""
    if H.ctx != W.ctx:
        raise FieldMismatch(f"{H.ctx.describe()} vs {W.ctx.describe()}")
    if weight_of(H) is None:
        raise NotWeighted("left factor is not weighted orthogonal")
    if weight_of(W) is None:
        raise NotWeighted("right factor is not weighted orthogonal")
    return kronecker(H, W)
