"""Exception hierarchy shared by every module in the package."""


class GfError(ValueError):
    """Base class for all library errors."""


# field construction
class NotPrime(GfError):
    pass


class InvalidPoly(GfError):
    """Polynomial has the wrong length, is not monic, or has out-of-range coefficients."""


class PolyNotIrreducible(GfError):
    pass


class PolyNotPrimitive(GfError):
    pass


class MissingPoly(GfError):
    pass


class SpuriousPoly(GfError):
    pass


# arithmetic
class FieldMismatch(GfError):
    pass


class ZeroInverse(GfError, ZeroDivisionError):
    pass


class DimMismatch(GfError):
    pass


# constructions
class BadExponent(GfError):
    pass


class ExponentPairTooLarge(GfError):
    pass


class ZeroScale(GfError):
    pass


class NoAntiRoot(GfError):
    pass


class NotPowerOfTwo(GfError):
    pass


class NotHadamard(GfError):
    pass


class NotWeighted(GfError):
    pass


# cipher
class SymbolOutOfRange(GfError):
    def __init__(self, byte: int, q: int, position: int | None = None):
        self.byte = byte
        self.q = q
        self.position = position
        need = byte + 1
        where = f" at offset {position}" if position is not None else ""
        hint = "use p=257 for arbitrary bytes" if byte >= 89 else f"choose a prime >= {need}"
        super().__init__(
            f"symbol {byte}{where} does not fit a field of order {q}; "
            f"need q >= {need} ({hint})"
        )


class ParseError(GfError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        loc = ""
        if line is not None:
            loc = f"line {line}"
            if column is not None:
                loc += f", column {column}"
            loc += ": "
        super().__init__(loc + message)
