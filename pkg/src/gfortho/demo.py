"""The reference worked example: "COVID-19" under the key (89, 1, 2, 5)."""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

from .analysis import keyspace_figures
from .cipher import (
    CipherKey,
    KeyMaterial,
    decrypt,
    decode_message,
    encode_message,
    encrypt,
    render_printable,
    serialize_key,
)

DEMO_TEXT = b"COVID-19"
DEMO_KEY = CipherKey(p=89, alpha=1, t=2, r=5)


def reference_cipher() -> list[int]:
    """The 89-entry ciphertext of the reference worked example, one value per token."""
    text = (resources.files("gfortho") / "data" / "reference_cipher.txt").read_text()
    return [int(tok) for tok in text.split()]


@dataclass
class DemoResult:
    km: KeyMaterial
    message: list[int]
    cipher: list[int]
    recovered: list[int]
    plaintext: bytes
    reference: list[int] | None

    @property
    def discrepancies(self) -> list[tuple[int, int, int | None]]:
        if self.reference is None:
            return []
        out = []
        for i, c in enumerate(self.cipher):
            ref = self.reference[i] if i < len(self.reference) else None
            if ref != c:
                out.append((i, c, ref))
        return out

    @property
    def round_trip_ok(self) -> bool:
        return self.recovered == self.message and self.plaintext == DEMO_TEXT

    def text(self) -> str:
        km = self.km
        r, q = km.key.r, km.q
        weight = (km.ctx(r) * km.ctx(r)).index
        lines = [
            f"plaintext      : {DEMO_TEXT.decode()}",
            f"M ({len(self.message)} symbols): {' '.join(map(str, self.message))}",
            f"key            : {serialize_key(km.key)}",
            f"W              : A + {r}I, A[i,j] = a_j^{km.key.t} - a_i^{km.key.t} over GF({q})",
            f"weight r^2     : {weight}",
            f"l              : {km.l.index}  ({weight} * {km.l.index} mod {q} = "
            f"{(weight * km.l.index) % q})",
            f"C              : {' '.join(map(str, self.cipher))}",
            f"C printable    : {render_printable(self.cipher)}",
        ]
        if self.reference is not None:
            bad = self.discrepancies
            agree = len(self.cipher) - len(bad)
            lines.append(f"reference check: {agree}/{len(self.cipher)} entries agree")
            if bad:
                lines.append("  index  computed  reference")
                for i, c, ref in bad:
                    lines.append(f"  {i:>5}  {c:>8}  {'-' if ref is None else ref:>9}")
        lines.append(f"recovered      : {self.plaintext.decode('latin-1')}")
        lines.append(f"round trip     : {'exact' if self.round_trip_ok else 'MISMATCH'}")
        lines.append(f"key space      : {keyspace_figures(q).text()}")
        return "\n".join(lines)


def run_demo(reference: list[int] | None = ...) -> DemoResult:
    """Encrypt and decrypt the example; compare against ``reference``.

    By default the shipped reference vector is used; pass None to skip
    the comparison.
    """
    from .cipher import form_key

    if reference is ...:
        reference = reference_cipher()
    km = form_key(DEMO_KEY)
    (M,) = encode_message(DEMO_TEXT, km.ctx)
    C = encrypt(km, M)
    D = decrypt(km, C)
    return DemoResult(
        km=km,
        message=M.tolist(),
        cipher=C.tolist(),
        recovered=D.tolist(),
        plaintext=decode_message([D]),
        reference=reference,
    )
