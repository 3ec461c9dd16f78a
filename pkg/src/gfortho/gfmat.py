"""Dense matrices over a :class:`~gfortho.gf.FieldCtx`.

Entries are stored as a read-only int64 numpy array of element indices.
Products are exact: for ``alpha > 1`` each operand is split into its
coefficient planes, the planes are multiplied as integer matrices mod p,
and the resulting ``x^m`` planes are folded back through the field's
reduction table.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .errors import DimMismatch, FieldMismatch, ParseError
from .gf import Felt, FieldCtx

__all__ = [
    "GfMatrix",
    "matmul",
    "transpose",
    "add",
    "sub",
    "scalar_mul",
    "identity",
    "zero",
    "kronecker",
    "gram",
    "weight_of",
    "format_matrix",
    "parse_matrix",
    "read_matrix",
    "write_matrix",
]

_FLOAT_EXACT = 2**53
_INT64_LIMIT = 2**62


class GfMatrix:
    """An immutable ``rows x cols`` matrix over ``ctx``."""

    __slots__ = ("ctx", "data")

    def __init__(self, ctx: FieldCtx, data):
        arr = np.array(data, dtype=np.int64, copy=True)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise DimMismatch(f"need a non-empty 2-d array, got shape {arr.shape}")
        if arr.size and (arr.min() < 0 or arr.max() >= ctx.q):
            raise ValueError(f"entries must be element indices in [0, {ctx.q})")
        arr.flags.writeable = False
        self.ctx = ctx
        self.data = arr

    @classmethod
    def _wrap(cls, ctx: FieldCtx, arr: np.ndarray) -> GfMatrix:
        # trusted constructor for kernel output
        obj = cls.__new__(cls)
        arr = np.ascontiguousarray(arr, dtype=np.int64)
        arr.flags.writeable = False
        obj.ctx = ctx
        obj.data = arr
        return obj

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    @property
    def T(self) -> GfMatrix:
        return transpose(self)

    def __getitem__(self, ij) -> Felt:
        i, j = ij
        return Felt(self.ctx, int(self.data[i, j]))

    def tolist(self) -> list[list[int]]:
        return self.data.tolist()

    def is_zero(self) -> bool:
        return not self.data.any()

    def __matmul__(self, other):
        return matmul(self, other)

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return sub(self, other)

    def __neg__(self):
        return GfMatrix._wrap(self.ctx, self.ctx.vneg(self.data))

    def __rmul__(self, c):
        return scalar_mul(c, self)

    def __eq__(self, other):
        if not isinstance(other, GfMatrix):
            return NotImplemented
        return (
            self.ctx == other.ctx
            and self.shape == other.shape
            and bool(np.array_equal(self.data, other.data))
        )

    __hash__ = None

    def __repr__(self):
        return f"GfMatrix({self.ctx.describe()}, {self.rows}x{self.cols})"


def _same_field(a: GfMatrix, b: GfMatrix) -> None:
    if a.ctx != b.ctx:
        raise FieldMismatch(f"{a.ctx.describe()} vs {b.ctx.describe()}")


def _int_matmul(x: np.ndarray, y: np.ndarray, p: int) -> np.ndarray:
    bound = x.shape[1] * (p - 1) ** 2
    if bound < _FLOAT_EXACT:
        # BLAS path; every partial sum is an integer below 2**53, so exact
        prod = x.astype(np.float64) @ y.astype(np.float64)
        return prod.astype(np.int64) % p
    if bound < _INT64_LIMIT:
        return (x @ y) % p
    # rare: very large p, fall back to Python ints
    return ((x.astype(object) @ y.astype(object)) % p).astype(np.int64)


def matmul(A: GfMatrix, B: GfMatrix) -> GfMatrix:
    _same_field(A, B)
    if A.cols != B.rows:
        raise DimMismatch(f"cannot multiply {A.rows}x{A.cols} by {B.rows}x{B.cols}")
    ctx = A.ctx
    if ctx.alpha == 1:
        return GfMatrix._wrap(ctx, _int_matmul(A.data, B.data, ctx.p))
    pa, pb = ctx.planes(A.data), ctx.planes(B.data)
    n = ctx.alpha
    conv = [np.zeros((A.rows, B.cols), dtype=np.int64) for _ in range(2 * n - 1)]
    for d in range(n):
        for e in range(n):
            conv[d + e] = (conv[d + e] + _int_matmul(pa[d], pb[e], ctx.p)) % ctx.p
    return GfMatrix._wrap(ctx, ctx.reduce_products(conv))


def transpose(A: GfMatrix) -> GfMatrix:
    return GfMatrix._wrap(A.ctx, A.data.T)


def add(A: GfMatrix, B: GfMatrix) -> GfMatrix:
    _same_field(A, B)
    if A.shape != B.shape:
        raise DimMismatch(f"cannot add {A.shape} and {B.shape}")
    return GfMatrix._wrap(A.ctx, A.ctx.vadd(A.data, B.data))


def sub(A: GfMatrix, B: GfMatrix) -> GfMatrix:
    _same_field(A, B)
    if A.shape != B.shape:
        raise DimMismatch(f"cannot subtract {A.shape} and {B.shape}")
    return GfMatrix._wrap(A.ctx, A.ctx.vsub(A.data, B.data))


def _as_felt(ctx: FieldCtx, c) -> Felt:
    if isinstance(c, Felt):
        if c.ctx != ctx:
            raise FieldMismatch(f"{c.ctx.describe()} vs {ctx.describe()}")
        return c
    return ctx.from_int(int(c))


def scalar_mul(c, A: GfMatrix) -> GfMatrix:
    """``c * A``; a plain int ``c`` is taken as its image in the prime subfield."""
    c = _as_felt(A.ctx, c)
    return GfMatrix._wrap(A.ctx, A.ctx.vmul(np.full(A.shape, c.index), A.data))


def identity(ctx: FieldCtx, n: int) -> GfMatrix:
    return GfMatrix._wrap(ctx, np.eye(n, dtype=np.int64))


def zero(ctx: FieldCtx, n: int, m: int | None = None) -> GfMatrix:
    return GfMatrix._wrap(ctx, np.zeros((n, n if m is None else m), dtype=np.int64))


def kronecker(A: GfMatrix, B: GfMatrix) -> GfMatrix:
    """``(A kron B)[i*rB + k, j*cB + l] = A[i, j] * B[k, l]``."""
    _same_field(A, B)
    ra, ca = A.shape
    rb, cb = B.shape
    left = np.repeat(np.repeat(A.data, rb, axis=0), cb, axis=1)
    right = np.tile(B.data, (ra, ca))
    return GfMatrix._wrap(A.ctx, A.ctx.vmul(left, right))


def gram(A: GfMatrix) -> GfMatrix:
    """``A @ A.T``."""
    if A.rows != A.cols:
        raise DimMismatch(f"gram needs a square matrix, got {A.rows}x{A.cols}")
    return matmul(A, transpose(A))


def weight_of(A: GfMatrix) -> Felt | None:
    """Return ``k`` if ``A @ A.T == k * I``, otherwise None."""
    if A.rows != A.cols:
        return None
    G = gram(A).data
    k = int(G[0, 0])
    expected = np.eye(A.rows, dtype=np.int64) * k
    if np.array_equal(G, expected):
        return Felt(A.ctx, k)
    return None


# ----------------------------------------------------------------------
# text format: "rows cols" header, then rows of space-separated indices
# ----------------------------------------------------------------------

def format_matrix(A: GfMatrix) -> str:
    lines = [f"{A.rows} {A.cols}"]
    lines.extend(" ".join(str(v) for v in row) for row in A.data.tolist())
    return "\n".join(lines) + "\n"


def _parse_table(text: str, allowed=None) -> np.ndarray:
    lines = [(n, ln) for n, ln in enumerate(text.splitlines(), 1) if ln.strip()]
    if not lines:
        raise ParseError("empty matrix file", line=1)
    n0, head = lines[0]
    parts = head.split()
    if len(parts) != 2:
        raise ParseError("header must be 'rows cols'", line=n0, column=1)
    try:
        rows, cols = int(parts[0]), int(parts[1])
    except ValueError:
        raise ParseError("header must hold two integers", line=n0, column=1) from None
    if rows < 1 or cols < 1:
        raise ParseError("dimensions must be positive", line=n0, column=1)
    body = lines[1:]
    if len(body) != rows:
        raise ParseError(f"expected {rows} rows, found {len(body)}", line=n0)
    out = np.zeros((rows, cols), dtype=np.int64)
    for i, (lineno, ln) in enumerate(body):
        col = 1
        tokens = []
        for tok in ln.split():
            col = ln.index(tok, col - 1) + 1
            try:
                v = int(tok)
            except ValueError:
                raise ParseError(f"not an integer: {tok!r}", line=lineno, column=col) from None
            if allowed is not None and not allowed(v):
                raise ParseError(f"entry {tok} out of range", line=lineno, column=col)
            tokens.append(v)
            col += len(tok)
        if len(tokens) != cols:
            raise ParseError(f"expected {cols} entries, found {len(tokens)}", line=lineno)
        out[i] = tokens
    return out


def parse_matrix(text: str, ctx: FieldCtx) -> GfMatrix:
    arr = _parse_table(text, allowed=lambda v: 0 <= v < ctx.q)
    return GfMatrix._wrap(ctx, arr)


def read_matrix(path, ctx: FieldCtx) -> GfMatrix:
    return parse_matrix(Path(path).read_text(), ctx)


def write_matrix(A: GfMatrix, path) -> None:
    Path(path).write_text(format_matrix(A))
