"""Exact arithmetic in GF(p^alpha).

Elements are identified by a canonical index in ``range(q)``.  For
``alpha == 1`` the index is the residue itself.  For ``alpha > 1`` the
base-p digits of the index are the polynomial coefficients
``c_0, ..., c_(alpha-1)`` (least significant digit first), so index 0 is
zero, index 1 is one and index ``p`` is ``x``.

Polynomials are coefficient lists, constant term first, e.g. ``[1, 1, 1]``
is ``x^2 + x + 1``.
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from .errors import (
    FieldMismatch,
    InvalidPoly,
    MissingPoly,
    NotPrime,
    PolyNotIrreducible,
    PolyNotPrimitive,
    SpuriousPoly,
    ZeroInverse,
)

__all__ = [
    "FieldCtx",
    "Felt",
    "make_field",
    "parse_poly",
    "format_poly",
    "is_prime",
    "prime_power",
    "default_poly",
    "power_sum",
    "sqrt_in_field",
    "is_quadratic_residue",
    "sum_of_two_squares",
    "egcd",
    "inv_mod",
]


# ----------------------------------------------------------------------
# integer helpers
# ----------------------------------------------------------------------

def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Split ``q`` as ``(p, alpha)`` with ``q == p**alpha``.

    Raises NotPrime if ``q`` is not a prime power.
    """
    if q < 2:
        raise NotPrime(f"{q} is not a prime power")
    factors = _prime_factors(q)
    if len(factors) != 1:
        raise NotPrime(f"{q} is not a prime power")
    p = factors[0]
    alpha = 0
    while q > 1:
        q //= p
        alpha += 1
    return p, alpha


def egcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended Euclid: returns ``(g, x, y)`` with ``a*x + b*y == g``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        quot, rem = divmod(a, b)
        a, b = b, rem
        x0, x1 = x1, x0 - quot * x1
        y0, y1 = y1, y0 - quot * y1
    return a, x0, y0


def inv_mod(a: int, m: int) -> int:
    g, x, _ = egcd(a % m, m)
    if g != 1:
        raise ZeroInverse(f"{a} has no inverse modulo {m}")
    return x % m


# ----------------------------------------------------------------------
# polynomials over Z_p (coefficient lists, constant term first)
# ----------------------------------------------------------------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    m = _trim([c % p for c in m])
    dm = len(m) - 1
    lead_inv = inv_mod(m[-1], p)
    while len(a) - 1 >= dm and a:
        coef = a[-1] * lead_inv % p
        shift = len(a) - 1 - dm
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - coef * c) % p
        _trim(a)
    return a


def _pmulmod(a: Sequence[int], b: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    return _pmod(prod, m, p)


def _ppowmod(a: Sequence[int], e: int, m: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(a, m, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, m, p)
        base = _pmulmod(base, base, m, p)
        e >>= 1
    return result


def _pgcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    b = _trim([c % p for c in b])
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _is_irreducible(f: Sequence[int], p: int) -> bool:
    # Ben-Or: f of degree n is irreducible iff gcd(x^(p^i) - x, f) == 1 for i <= n/2
    n = len(f) - 1
    x = [0, 1]
    xp = x
    for _ in range(1, n // 2 + 1):
        xp = _ppowmod(xp, p, f, p)
        diff = list(xp) + [0] * max(0, 2 - len(xp))
        diff[1] = (diff[1] - 1) % p
        if len(_pgcd(f, diff, p)) > 1:
            return False
    return True


def _x_is_primitive(f: Sequence[int], p: int) -> bool:
    order = p ** (len(f) - 1) - 1
    for ell in _prime_factors(order):
        if _ppowmod([0, 1], order // ell, f, p) == [1]:
            return False
    return True


def parse_poly(text: str) -> tuple[int, ...]:
    """Parse ``"c0,c1,...,calpha"`` into a coefficient tuple."""
    try:
        return tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise InvalidPoly(f"bad polynomial {text!r}; expected comma-separated integers") from None


def format_poly(poly: Sequence[int]) -> str:
    return ",".join(str(c) for c in poly)


def default_poly(p: int, alpha: int) -> tuple[int, ...]:
    """Smallest monic primitive polynomial of degree ``alpha`` over Z_p.

    Candidates are ordered by the base-p index of ``c_0..c_(alpha-1)``.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if alpha < 2:
        raise InvalidPoly("default_poly needs alpha >= 2")
    for idx in range(p**alpha):
        low = [(idx // p**d) % p for d in range(alpha)]
        f = low + [1]
        if f[0] and _is_irreducible(f, p) and _x_is_primitive(f, p):
            return tuple(f)
    raise PolyNotPrimitive(f"no primitive polynomial of degree {alpha} over Z_{p}")  # unreachable


# ----------------------------------------------------------------------
# field context
# ----------------------------------------------------------------------

class FieldCtx:
    """A validated finite field GF(p^alpha).

    Build instances with :func:`make_field`.  Contexts are immutable and
    compare equal when ``(p, alpha, poly)`` agree.
    """

    def __init__(self, p: int, alpha: int, poly: tuple[int, ...] | None):
        self.p = p
        self.alpha = alpha
        self.q = p**alpha
        self.poly = poly
        # _reduce[m] holds the coefficients of x^m mod poly, for m < 2*alpha - 1
        if alpha > 1:
            self._reduce = tuple(
                tuple((_pmod([0] * m + [1], poly, p) + [0] * alpha)[:alpha])
                for m in range(2 * alpha - 1)
            )
        else:
            self._reduce = ((1,),)
        self._prim = self._find_primitive_root()

    # identity -----------------------------------------------------------
    @property
    def key(self) -> tuple:
        return (self.p, self.alpha, self.poly)

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"FieldCtx({self.describe()})"

    def describe(self) -> str:
        if self.alpha == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.alpha}) poly={format_poly(self.poly)}"

    # elements -----------------------------------------------------------
    def __call__(self, index: int) -> Felt:
        """Element ``a_index`` of the canonical enumeration."""
        return Felt(self, index)

    def from_int(self, n: int) -> Felt:
        """Image of the integer ``n`` in the prime subfield."""
        return Felt(self, n % self.p)

    def __iter__(self) -> Iterator[Felt]:
        return (Felt(self, i) for i in range(self.q))

    def __len__(self):
        return self.q

    @property
    def zero(self) -> Felt:
        return Felt(self, 0)

    @property
    def one(self) -> Felt:
        return Felt(self, 1)

    @property
    def primitive_root(self) -> Felt:
        return Felt(self, self._prim)

    def coeffs(self, index: int) -> list[int]:
        p = self.p
        return [(index // p**d) % p for d in range(self.alpha)]

    def index_of(self, coeffs: Sequence[int]) -> int:
        return sum((c % self.p) * self.p**d for d, c in enumerate(coeffs))

    # scalar kernels on indices ------------------------------------------
    def _add(self, a: int, b: int) -> int:
        if self.alpha == 1:
            return (a + b) % self.p
        p = self.p
        out, w = 0, 1
        for _ in range(self.alpha):
            out += ((a % p + b % p) % p) * w
            a //= p
            b //= p
            w *= p
        return out

    def _neg(self, a: int) -> int:
        if self.alpha == 1:
            return -a % self.p
        p = self.p
        out, w = 0, 1
        for _ in range(self.alpha):
            out += (-(a % p) % p) * w
            a //= p
            w *= p
        return out

    def _mul(self, a: int, b: int) -> int:
        if self.alpha == 1:
            return a * b % self.p
        p, n = self.p, self.alpha
        ca, cb = self.coeffs(a), self.coeffs(b)
        conv = [0] * (2 * n - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    conv[i + j] += x * y
        out = [0] * n
        for m, c in enumerate(conv):
            if c:
                for d, r in enumerate(self._reduce[m]):
                    out[d] += c * r
        return self.index_of([c % p for c in out])

    def _pow(self, a: int, k: int) -> int:
        result, base = 1, a
        while k:
            if k & 1:
                result = self._mul(result, base)
            base = self._mul(base, base)
            k >>= 1
        return result

    def _inv(self, a: int) -> int:
        if a == 0:
            raise ZeroInverse("zero has no multiplicative inverse")
        if self.alpha == 1:
            return inv_mod(a, self.p)
        return self._pow(a, self.q - 2)

    def _find_primitive_root(self) -> int:
        order = self.q - 1
        if order == 1:
            return 1
        factors = _prime_factors(order)
        for g in range(2, self.q):
            if all(self._pow(g, order // ell) != 1 for ell in factors):
                return g
        raise PolyNotPrimitive("multiplicative group has no generator")  # unreachable for a field

    # vectorised kernels on index arrays ----------------------------------
    def planes(self, arr) -> np.ndarray:
        """Coefficient planes of an index array, shape ``(alpha, *arr.shape)``."""
        arr = np.asarray(arr, dtype=np.int64)
        return np.stack([(arr // self.p**d) % self.p for d in range(self.alpha)])

    def from_planes(self, planes: np.ndarray) -> np.ndarray:
        out = np.zeros(planes.shape[1:], dtype=np.int64)
        for d in range(self.alpha):
            out += planes[d].astype(np.int64) * self.p**d
        return out

    def reduce_products(self, conv: Sequence[np.ndarray]) -> np.ndarray:
        """Fold coefficient planes of ``x^0..x^(2*alpha-2)`` back into indices."""
        p = self.p
        out = [0] * self.alpha
        for m, plane in enumerate(conv):
            plane = plane % p
            for d, r in enumerate(self._reduce[m]):
                if r:
                    out[d] = out[d] + r * plane
        return self.from_planes(np.stack([np.asarray(o) % p for o in out]))

    def vadd(self, a, b) -> np.ndarray:
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self.alpha == 1:
            return (a + b) % self.p
        return self.from_planes((self.planes(a) + self.planes(b)) % self.p)

    def vneg(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.alpha == 1:
            return -a % self.p
        return self.from_planes(-self.planes(a) % self.p)

    def vsub(self, a, b) -> np.ndarray:
        return self.vadd(a, self.vneg(b))

    def vmul(self, a, b) -> np.ndarray:
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self.alpha == 1:
            return (a * b) % self.p
        pa, pb = self.planes(a), self.planes(b)
        n = self.alpha
        conv = [0] * (2 * n - 1)
        for i in range(n):
            for j in range(n):
                conv[i + j] = conv[i + j] + pa[i] * pb[j]
        return self.reduce_products([np.asarray(c) for c in conv])

    @cached_property
    def squares(self) -> tuple[int, ...]:
        """``squares[i]`` is the index of ``a_i * a_i``."""
        return tuple(self._mul(i, i) for i in range(self.q))


def make_field(p: int, alpha: int = 1, poly: Sequence[int] | None = None) -> FieldCtx:
    """Validate parameters and build GF(p^alpha).

    ``poly`` must be given exactly when ``alpha > 1`` and must be a monic
    primitive polynomial of degree ``alpha``.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if alpha < 1:
        raise InvalidPoly(f"extension degree must be >= 1, got {alpha}")
    if alpha == 1:
        if poly is not None:
            raise SpuriousPoly("a polynomial is only meaningful for alpha > 1")
        return FieldCtx(p, 1, None)
    if poly is None:
        raise MissingPoly(f"GF({p}^{alpha}) needs a primitive polynomial of degree {alpha}")
    poly = tuple(int(c) for c in poly)
    if len(poly) != alpha + 1:
        raise InvalidPoly(f"expected {alpha + 1} coefficients, got {len(poly)}")
    if any(not 0 <= c < p for c in poly):
        raise InvalidPoly(f"coefficients must lie in [0, {p})")
    if poly[-1] != 1:
        raise InvalidPoly("polynomial must be monic (leading coefficient 1)")
    if poly[0] == 0 or not _is_irreducible(poly, p):
        raise PolyNotIrreducible(f"{format_poly(poly)} is reducible over Z_{p}")
    if not _x_is_primitive(poly, p):
        raise PolyNotPrimitive(
            f"{format_poly(poly)} is irreducible but x does not generate GF({p}^{alpha})*"
        )
    return FieldCtx(p, alpha, poly)


# ----------------------------------------------------------------------
# elements
# ----------------------------------------------------------------------

class Felt:
    """A field element: a context plus its canonical index."""

    __slots__ = ("ctx", "index")

    def __init__(self, ctx: FieldCtx, index: int):
        index = int(index)
        if not 0 <= index < ctx.q:
            raise ValueError(f"index {index} outside [0, {ctx.q})")
        self.ctx = ctx
        self.index = index

    def _other(self, other) -> int:
        if isinstance(other, Felt):
            if other.ctx != self.ctx:
                raise FieldMismatch(f"{self.ctx.describe()} vs {other.ctx.describe()}")
            return other.index
        if isinstance(other, (int, np.integer)):
            return int(other) % self.ctx.p
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return Felt(self.ctx, self.ctx._add(self.index, b))

    __radd__ = __add__

    def __neg__(self):
        return Felt(self.ctx, self.ctx._neg(self.index))

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return Felt(self.ctx, self.ctx._add(self.index, self.ctx._neg(b)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return Felt(self.ctx, self.ctx._mul(self.index, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return Felt(self.ctx, self.ctx._mul(self.index, self.ctx._inv(b)))

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        # 0**0 == 1 by convention
        return Felt(self.ctx, self.ctx._pow(self.index, k))

    def inv(self) -> Felt:
        return Felt(self.ctx, self.ctx._inv(self.index))

    def __eq__(self, other):
        if isinstance(other, Felt):
            return self.ctx == other.ctx and self.index == other.index
        if isinstance(other, (int, np.integer)):
            return self.index == int(other)
        return NotImplemented

    def __hash__(self):
        # must agree with equality against plain ints
        return hash(self.index)

    def __bool__(self):
        return self.index != 0

    def __int__(self):
        return self.index

    __index__ = __int__

    def __repr__(self):
        return f"Felt({self.index})"


# ----------------------------------------------------------------------
# field-level operations
# ----------------------------------------------------------------------

def power_sum(ctx: FieldCtx, k: int) -> Felt:
    """Sum of ``a**k`` over all q elements of the field (with ``0**0 == 1``)."""
    total = 0
    for i in range(ctx.q):
        total = ctx._add(total, ctx._pow(i, k))
    return Felt(ctx, total)


def sqrt_in_field(k: Felt) -> Felt | None:
    """Smallest-index ``r`` with ``r*r == k``, or None."""
    sq = k.ctx.squares
    for r in range(k.ctx.q):
        if sq[r] == k.index:
            return Felt(k.ctx, r)
    return None


def is_quadratic_residue(k: Felt) -> bool:
    return sqrt_in_field(k) is not None


def sum_of_two_squares(k: Felt) -> tuple[Felt, Felt]:
    """Lexicographically smallest ``(r, s)`` with ``r*r + s*s == k``."""
    ctx = k.ctx
    sq = ctx.squares
    where: dict[int, int] = {}
    for s in range(ctx.q):
        where.setdefault(sq[s], s)
    for r in range(ctx.q):
        need = ctx._add(k.index, ctx._neg(sq[r]))
        if need in where:
            return Felt(ctx, r), Felt(ctx, where[need])
    raise AssertionError("every finite field element is a sum of two squares")
