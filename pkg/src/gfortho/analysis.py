"""Machine checks of the construction identities over small fields, plus
key-space arithmetic and an exhaustive known-plaintext parameter search."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .cipher import CipherKey, CipherVector, MessageVector, form_key
from .construct import (
    anti_orthogonal,
    block_2q,
    hadamard_sylvester,
    kron_weighted,
    self_orthogonal,
    valid_exponents,
    weighted_orthogonal,
)
from .errors import GfError, NoAntiRoot
from .gf import FieldCtx, default_poly, make_field, parse_poly, power_sum, prime_power, sqrt_in_field
from .gfmat import GfMatrix, gram, identity, matmul, transpose, weight_of

__all__ = [
    "FIXTURE_POLYS",
    "CHECKS",
    "CheckResult",
    "VerificationReport",
    "verify_field",
    "field_from_spec",
    "parse_sweep",
    "KeyspaceFigures",
    "keyspace_figures",
    "parameter_search",
]

# primitive polynomials pinned for the standard sweep
FIXTURE_POLYS: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (3, 2): (2, 1, 1),
    (5, 2): (2, 1, 1),
}


@dataclass
class CheckResult:
    name: str
    status: str  # "pass" | "fail" | "skip"
    detail: str = ""
    ms: int = 0


@dataclass
class VerificationReport:
    field: str
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def lines(self) -> list[str]:
        return [
            f"field={self.field.replace(' ', '_')} check={c.name} status={c.status} ms={c.ms}"
            for c in self.checks
        ]

    def text(self) -> str:
        out = [f"{self.field}: {'OK' if self.passed else 'FAILED'}"]
        for c in self.checks:
            extra = f"  ({c.detail})" if c.detail else ""
            out.append(f"  {c.status.upper():4}  {c.name:<22} {c.ms:>6} ms{extra}")
        return "\n".join(out)


class _Failure(Exception):
    pass


class _Skip(Exception):
    pass


def _first_nonzero(M: np.ndarray) -> str:
    i, j = (int(v) for v in np.argwhere(M)[0])
    return f"entry ({i},{j}) = {int(M[i, j])}"


def _expect_zero(M: GfMatrix, what: str) -> None:
    if not M.is_zero():
        raise _Failure(f"{what}: {_first_nonzero(M.data)}")


def _need_exponent(ctx: FieldCtx) -> None:
    if not len(valid_exponents(ctx.q)):
        raise _Skip("no valid exponent t (need 2t <= q-2)")


def _check_primitive_root(ctx: FieldCtx) -> None:
    g = ctx.primitive_root
    seen = set()
    x = ctx.one
    for e in range(1, ctx.q):
        x = x * g
        if not x or x.index in seen:
            raise _Failure(f"g^{e} = {x.index} repeats or vanishes")
        seen.add(x.index)


def _check_power_sums(ctx: FieldCtx) -> None:
    for k in range(1, ctx.q - 1):
        s = power_sum(ctx, k)
        if s:
            raise _Failure(f"power sum k={k} is {s.index}")
    top = power_sum(ctx, ctx.q - 1)
    if top != -ctx.one:
        raise _Failure(f"power sum k=q-1 is {top.index}, expected -1")


def _check_self_orthogonal(ctx: FieldCtx) -> None:
    _need_exponent(ctx)
    for t in valid_exponents(ctx.q):
        A = self_orthogonal(ctx, t)
        _expect_zero(gram(A), f"t={t} gram")
        _expect_zero(A + transpose(A), f"t={t} A + A^T")
        if np.diag(A.data).any():
            raise _Failure(f"t={t} nonzero diagonal")
        for i in range(ctx.q):
            for j in range(ctx.q):
                if A[i, j] != ctx(j) ** t - ctx(i) ** t:
                    raise _Failure(f"t={t} entry ({i},{j}) breaks a_j^t - a_i^t")


def _check_weighted(ctx: FieldCtx) -> None:
    _need_exponent(ctx)
    for t in valid_exponents(ctx.q):
        for r in range(1, ctx.q):
            w = weight_of(weighted_orthogonal(ctx, t, r))
            if w != ctx(r) * ctx(r):
                raise _Failure(f"t={t} r={r} weight {w}")


def _check_anti(ctx: FieldCtx) -> None:
    _need_exponent(ctx)
    root = sqrt_in_field(-ctx.one)
    try:
        M = anti_orthogonal(ctx, 1)
    except NoAntiRoot:
        if root is not None:
            raise _Failure("NoAntiRoot although -1 is a square") from None
        return
    if root is None:
        raise _Failure("built an anti-orthogonal matrix without a root of -1")
    if weight_of(M) != -ctx.one:
        raise _Failure("weight is not -1")
    if ctx.alpha == 1 and ctx.p > 2 and (ctx.p % 4 == 1) != (root is not None):
        raise _Failure("disagrees with the p = 1 mod 4 rule")


def _check_products(ctx: FieldCtx) -> None:
    _need_exponent(ctx)
    ts = list(valid_exponents(ctx.q))
    mats = {t: self_orthogonal(ctx, t) for t in ts}
    for t in ts:
        for s in ts:
            if t + s <= ctx.q - 2:
                _expect_zero(matmul(mats[t], mats[s]), f"A_{t} A_{s}")


def _check_block(ctx: FieldCtx) -> None:
    _need_exponent(ctx)
    for k in ctx:
        M = block_2q(ctx, 1, 1, k)
        if M.shape != (2 * ctx.q, 2 * ctx.q):
            raise _Failure(f"k={k.index} shape {M.shape}")
        w = weight_of(M)
        if w != k:
            raise _Failure(f"k={k.index} weight {w}")


def _check_kron(ctx: FieldCtx) -> None:
    _need_exponent(ctx)
    W = weighted_orthogonal(ctx, 1, 1)
    for m in (2, 4):
        H = hadamard_sylvester(m, ctx)
        w = weight_of(kron_weighted(H, W))
        if w != ctx.from_int(m):
            raise _Failure(f"H_{m} kron W weight {w}, expected {m % ctx.p}")


def _check_decryption(ctx: FieldCtx) -> None:
    _need_exponent(ctx)
    rng = np.random.default_rng(ctx.q)
    I = identity(ctx, ctx.q)
    for r in range(1, ctx.q):
        km = form_key(CipherKey(ctx.p, ctx.alpha, 1, r, ctx.poly))
        if km.l * ctx(r) * ctx(r) != ctx.one:
            raise _Failure(f"r={r}: l r^2 != 1")
        if matmul(km.W_inv, km.W) != I:
            raise _Failure(f"r={r}: l W^T W != I")
    km = form_key(CipherKey(ctx.p, ctx.alpha, 1, 1, ctx.poly))
    M = GfMatrix(ctx, rng.integers(0, ctx.q, size=(ctx.q, 4)))
    if matmul(km.W_inv, matmul(km.W, M)) != M:
        raise _Failure("random messages do not round trip")


CHECKS: tuple[tuple[str, Callable[[FieldCtx], None]], ...] = (
    ("primitive_root", _check_primitive_root),
    ("power_sum_vanishing", _check_power_sums),
    ("self_orthogonal", _check_self_orthogonal),
    ("weighted_orthogonal", _check_weighted),
    ("anti_orthogonal", _check_anti),
    ("product_vanishing", _check_products),
    ("block_2q_any_weight", _check_block),
    ("hadamard_kronecker", _check_kron),
    ("decryption_unique", _check_decryption),
)


def verify_field(ctx: FieldCtx) -> VerificationReport:
    """Run every check on ``ctx``; failures become report entries."""
    report = VerificationReport(ctx.describe())
    for name, fn in CHECKS:
        t0 = time.perf_counter()
        try:
            fn(ctx)
            status, detail = "pass", ""
        except _Skip as exc:
            status, detail = "skip", str(exc)
        except _Failure as exc:
            status, detail = "fail", str(exc)
        except GfError as exc:
            status, detail = "fail", f"{type(exc).__name__}: {exc}"
        ms = int(round((time.perf_counter() - t0) * 1000))
        report.checks.append(CheckResult(name, status, detail, ms))
    return report


def field_from_spec(entry: str) -> FieldCtx:
    """Build a field from ``"q"`` or ``"q:poly=c0,c1,..."``."""
    head, _, rest = entry.strip().partition(":")
    q = int(head)
    p, alpha = prime_power(q)
    poly = None
    if rest:
        key, eq, val = rest.partition("=")
        if key.strip() != "poly" or not eq:
            raise ValueError(f"bad field option {rest!r}; expected poly=c0,c1,...")
        poly = parse_poly(val)
    elif alpha > 1:
        poly = FIXTURE_POLYS.get((p, alpha)) or default_poly(p, alpha)
    return make_field(p, alpha, poly)


def parse_sweep(spec: str) -> list[str]:
    """Split a sweep such as ``"5,7,9:poly=2,1,1,11"`` into field entries.

    A ``q:poly=`` entry consumes exactly ``alpha + 1`` coefficients, so
    entries and coefficients can share the comma separator.
    """
    tokens = [tok.strip() for tok in spec.replace(";", ",").split(",") if tok.strip()]
    entries = []
    i = 0
    while i < len(tokens):
        tok = tokens[i]
        if ":" not in tok:
            entries.append(tok)
            i += 1
            continue
        head, _, first = tok.partition(":")
        _, alpha = prime_power(int(head))
        coeffs = [first] + tokens[i + 1:i + 1 + alpha]
        entries.append(f"{head}:{','.join(coeffs)}")
        i += 1 + alpha
    return entries


@dataclass(frozen=True)
class KeyspaceFigures:
    q: int
    matrix_space_log10: float
    parameter_space: int
    valid_t: int

    def text(self) -> str:
        return (
            f"q={self.q} matrix_space_log10={self.matrix_space_log10:.1f} "
            f"parameter_space={self.parameter_space}"
        )


def keyspace_figures(q: int) -> KeyspaceFigures:
    """Size of the space of all q x q matrices next to the (t, r) space."""
    nt = len(valid_exponents(q))
    return KeyspaceFigures(q, q * q * math.log10(q), nt * (q - 1), nt)


def parameter_search(ctx: FieldCtx, known: tuple[MessageVector, CipherVector]) -> list[tuple[int, int]]:
    """Every ``(t, r)`` whose key maps the known plaintext block to the known cipher block."""
    M, C = known
    m = M.values
    # scaled[r] = r * M for every element r
    scaled = ctx.vmul(np.arange(ctx.q)[:, None], m[None, :])
    col = GfMatrix._wrap(ctx, m.reshape(-1, 1))
    hits = []
    for t in valid_exponents(ctx.q):
        rest = ctx.vsub(C.values, matmul(self_orthogonal(ctx, t), col).data[:, 0])
        for r in np.flatnonzero((scaled == rest[None, :]).all(axis=1)).tolist():
            if r:
                hits.append((t, r))
    return hits
