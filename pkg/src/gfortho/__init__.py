"""Weighted orthogonal matrices over finite fields and a matrix block cipher."""

from .errors import *  # noqa: F401,F403
from .gf import FieldCtx, Felt, make_field, power_sum, sqrt_in_field, is_quadratic_residue, sum_of_two_squares
from .gfmat import GfMatrix, matmul, transpose, add, scalar_mul, identity, zero, kronecker, gram, weight_of
from .construct import (
    self_orthogonal,
    weighted_orthogonal,
    anti_orthogonal,
    block_2q,
    hadamard_sylvester,
    load_hadamard,
    kron_weighted,
)
from .cipher import (
    CipherKey,
    KeyMaterial,
    MessageVector,
    CipherVector,
    form_key,
    encode_message,
    decode_message,
    encrypt,
    decrypt,
    render_printable,
    serialize_key,
    parse_key,
    serialize_cipher,
    parse_cipher,
)
from .analysis import verify_field, keyspace_figures, parameter_search

__version__ = "0.1.0"
