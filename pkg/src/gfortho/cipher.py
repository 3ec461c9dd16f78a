"""Block cipher ``C = W M`` keyed by a weighted orthogonal matrix.

The private key is the short tuple ``(p, alpha, t, r[, poly])``.  Both
sides rebuild ``W = A + rI`` from it; since ``W.T @ W == r^2 I`` the
inverse is ``l * W.T`` with ``l = (r^2)^-1``.

Messages are bytes.  Each byte is the index of a field element, so every
byte must be smaller than q.  Messages are cut into blocks of q symbols
and the final block is right-padded (space if 32 < q, else 0).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

from .construct import check_exponent, self_orthogonal
from .errors import FieldMismatch, ParseError, SymbolOutOfRange, ZeroScale
from .gf import Felt, FieldCtx, format_poly, make_field, parse_poly
from .gfmat import GfMatrix, matmul, scalar_mul, transpose

__all__ = [
    "CipherKey",
    "KeyMaterial",
    "MessageVector",
    "CipherVector",
    "pad_symbol",
    "form_key",
    "encode_message",
    "decode_message",
    "encrypt",
    "decrypt",
    "encrypt_bytes",
    "decrypt_bytes",
    "render_printable",
    "serialize_key",
    "parse_key",
    "serialize_cipher",
    "parse_cipher",
]


@dataclass(frozen=True)
class CipherKey:
    p: int
    alpha: int
    t: int
    r: int
    poly: tuple[int, ...] | None = None

    def field_ctx(self) -> FieldCtx:
        return make_field(self.p, self.alpha, self.poly)


@dataclass(frozen=True)
class KeyMaterial:
    key: CipherKey
    ctx: FieldCtx
    W: GfMatrix
    l: Felt
    # l * W.T, cached for decryption
    W_inv: GfMatrix = field(repr=False)

    @property
    def q(self) -> int:
        return self.ctx.q


@dataclass(frozen=True, eq=False)
class _Vector:
    ctx: FieldCtx
    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=np.int64).reshape(-1)
        if v.size != self.ctx.q:
            raise ValueError(f"block must hold exactly q={self.ctx.q} symbols, got {v.size}")
        if v.min() < 0 or v.max() >= self.ctx.q:
            raise ValueError(f"symbols must lie in [0, {self.ctx.q})")
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    def __len__(self):
        return self.values.size

    def __eq__(self, other):
        return (
            type(other) is type(self)
            and self.ctx == other.ctx
            and bool(np.array_equal(self.values, other.values))
        )

    def tolist(self) -> list[int]:
        return self.values.tolist()

    def felts(self) -> list[Felt]:
        return [Felt(self.ctx, v) for v in self.values.tolist()]

    def column(self) -> GfMatrix:
        return GfMatrix._wrap(self.ctx, self.values.reshape(-1, 1))

    def __add__(self, other):
        if self.ctx != other.ctx:
            raise FieldMismatch(f"{self.ctx.describe()} vs {other.ctx.describe()}")
        return type(self)(self.ctx, self.ctx.vadd(self.values, other.values))


class MessageVector(_Vector):
    """One plaintext block of q symbol codes."""


class CipherVector(_Vector):
    """One ciphertext block of q element indices."""


def pad_symbol(q: int) -> int:
    return 32 if 32 < q else 0


def form_key(key: CipherKey) -> KeyMaterial:
    """Rebuild ``W`` and ``l`` from the transmitted parameters."""
    ctx = key.field_ctx()
    check_exponent(ctx, key.t)
    if not 0 <= key.r < ctx.q:
        raise ValueError(f"r must be an element index in [0, {ctx.q})")
    r = ctx(key.r)
    if not r:
        raise ZeroScale("scale r must be nonzero")
    A = self_orthogonal(ctx, key.t)
    W = A + scalar_mul(r, GfMatrix._wrap(ctx, np.eye(ctx.q, dtype=np.int64)))
    l = (r * r).inv()
    return KeyMaterial(key=key, ctx=ctx, W=W, l=l, W_inv=scalar_mul(l, transpose(W)))


def encode_message(text: bytes, ctx: FieldCtx) -> list[MessageVector]:
    q = ctx.q
    data = bytes(text)
    for pos, b in enumerate(data):
        if b >= q:
            raise SymbolOutOfRange(b, q, pos)
    pad = pad_symbol(q)
    nblocks = max(1, -(-len(data) // q))
    codes = np.full(nblocks * q, pad, dtype=np.int64)
    codes[: len(data)] = np.frombuffer(data, dtype=np.uint8)
    return [MessageVector(ctx, codes[i * q:(i + 1) * q]) for i in range(nblocks)]


def decode_message(blocks: list[MessageVector]) -> bytes:
    """Join blocks back into bytes, dropping trailing pads of the last block."""
    if not blocks:
        return b""
    ctx = blocks[0].ctx
    if ctx.q > 256:
        for blk in blocks:
            if blk.values.max() > 255:
                raise ValueError("symbol codes above 255 cannot be decoded to bytes")
    pad = pad_symbol(ctx.q)
    head = b"".join(bytes(blk.values.astype(np.uint8)) for blk in blocks[:-1])
    last = bytes(blocks[-1].values.astype(np.uint8)).rstrip(bytes([pad]))
    return head + last


def _check(km: KeyMaterial, vec: _Vector) -> None:
    if vec.ctx != km.ctx:
        raise FieldMismatch(f"{vec.ctx.describe()} vs {km.ctx.describe()}")


def encrypt(km: KeyMaterial, M: MessageVector) -> CipherVector:
    _check(km, M)
    return CipherVector(km.ctx, matmul(km.W, M.column()).data)


def decrypt(km: KeyMaterial, C: CipherVector) -> MessageVector:
    _check(km, C)
    return MessageVector(km.ctx, matmul(km.W_inv, C.column()).data)


def _batch(km: KeyMaterial, mat: GfMatrix, blocks, out_type):
    if not blocks:
        return []
    for b in blocks:
        _check(km, b)
    cols = GfMatrix._wrap(km.ctx, np.stack([b.values for b in blocks], axis=1))
    res = matmul(mat, cols).data
    return [out_type(km.ctx, res[:, i]) for i in range(res.shape[1])]


def encrypt_bytes(km: KeyMaterial, text: bytes) -> list[CipherVector]:
    return _batch(km, km.W, encode_message(text, km.ctx), CipherVector)


def decrypt_bytes(km: KeyMaterial, blocks: list[CipherVector]) -> bytes:
    return decode_message(_batch(km, km.W_inv, blocks, MessageVector))


def render_printable(C) -> str:
    """Codes 32..126 become their ASCII character, anything else ``(n)*``."""
    values = C.tolist() if hasattr(C, "tolist") else list(C)
    return "".join(chr(v) if 32 <= v <= 126 else f"({v})*" for v in values)


# ----------------------------------------------------------------------
# wire formats
# ----------------------------------------------------------------------

_KEY_FIELDS = ("p", "alpha", "t", "r")


def serialize_key(key: CipherKey) -> str:
    text = f"p={key.p} alpha={key.alpha} t={key.t} r={key.r}"
    if key.poly is not None:
        text += f" poly={format_poly(key.poly)}"
    return text


def parse_key(text: str) -> CipherKey:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) != 1:
        raise ParseError("key file must hold exactly one non-empty line", line=1)
    line = lines[0]
    lineno = text.splitlines().index(line) + 1
    values: dict[str, str] = {}
    for m in re.finditer(r"\S+", line):
        tok, col = m.group(), m.start() + 1
        name, eq, val = tok.partition("=")
        if not eq or name not in _KEY_FIELDS + ("poly",):
            raise ParseError(f"unexpected token {tok!r}", line=lineno, column=col)
        if name in values:
            raise ParseError(f"duplicate field {name!r}", line=lineno, column=col)
        if name != "poly" and not re.fullmatch(r"-?\d+", val):
            raise ParseError(f"{name} must be an integer", line=lineno, column=col + len(name) + 1)
        values[name] = val
    missing = [f for f in _KEY_FIELDS if f not in values]
    if missing:
        raise ParseError(f"missing field(s): {', '.join(missing)}", line=lineno)
    alpha = int(values["alpha"])
    poly = None
    if "poly" in values:
        try:
            poly = parse_poly(values["poly"])
        except ValueError as exc:
            raise ParseError(str(exc), line=lineno) from None
    if (poly is None) != (alpha == 1):
        raise ParseError("poly must be present exactly when alpha > 1", line=lineno)
    return CipherKey(int(values["p"]), alpha, int(values["t"]), int(values["r"]), poly)


def serialize_cipher(blocks) -> str:
    if isinstance(blocks, CipherVector):
        blocks = [blocks]
    return "".join(" ".join(str(v) for v in b.tolist()) + "\n" for b in blocks)


def parse_cipher(text: str, ctx: FieldCtx) -> list[CipherVector]:
    blocks = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        vals = []
        for m in re.finditer(r"\S+", line):
            tok, col = m.group(), m.start() + 1
            if not tok.isdigit():
                raise ParseError(f"not a decimal index: {tok!r}", line=lineno, column=col)
            v = int(tok)
            if v >= ctx.q:
                raise ParseError(f"index {v} is not below q={ctx.q}", line=lineno, column=col)
            vals.append(v)
        if len(vals) != ctx.q:
            raise ParseError(f"block has {len(vals)} entries, expected q={ctx.q}", line=lineno)
        blocks.append(CipherVector(ctx, vals))
    if not blocks:
        raise ParseError("cipher file holds no blocks", line=1)
    return blocks
