import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gfortho.cipher import (
    CipherKey,
    CipherVector,
    MessageVector,
    decode_message,
    decrypt,
    decrypt_bytes,
    encode_message,
    encrypt,
    encrypt_bytes,
    form_key,
    pad_symbol,
    parse_cipher,
    parse_key,
    render_printable,
    serialize_cipher,
    serialize_key,
)
from gfortho.construct import self_orthogonal, valid_exponents
from gfortho.demo import reference_cipher
from gfortho.errors import BadExponent, FieldMismatch, ParseError, SymbolOutOfRange, ZeroScale
from gfortho.gf import make_field
from gfortho.gfmat import identity, matmul

from oracle import NaiveField

COVID = [67, 79, 86, 73, 68, 45, 49, 57]
KEY89 = CipherKey(89, 1, 2, 5)


@pytest.fixture(scope="module")
def km89():
    return form_key(KEY89)


def test_form_key_reference(km89):
    assert km89.W.shape == (89, 89)
    assert km89.l == 57
    assert (25 * 57) % 89 == 1


def test_form_key_small():
    km = form_key(CipherKey(5, 1, 1, 1))
    assert km.l == 1
    assert km.W == self_orthogonal(km.ctx, 1) + identity(km.ctx, 5)
    with pytest.raises(BadExponent):
        form_key(CipherKey(5, 1, 2, 1))
    with pytest.raises(ZeroScale):
        form_key(CipherKey(5, 1, 1, 0))


def test_encode_reference():
    (M,) = encode_message(b"COVID-19", make_field(89))
    assert M.tolist() == COVID + [32] * 81


def test_encode_empty_small_field():
    ctx = make_field(5)
    assert pad_symbol(5) == 0
    (M,) = encode_message(b"", ctx)
    assert M.tolist() == [0] * 5


def test_encode_two_blocks():
    ctx = make_field(89)
    blocks = encode_message(bytes(range(65, 65 + 24)) * 3 + b"ABCDEFGHIJKLMNOPQR", ctx)
    assert len(blocks) == 2
    assert blocks[1].tolist()[1:] == [32] * 88


def test_symbol_out_of_range():
    with pytest.raises(SymbolOutOfRange) as info:
        encode_message(b"hello", make_field(89))
    assert info.value.byte == ord("h")
    assert "257" in str(info.value)
    with pytest.raises(SymbolOutOfRange, match="prime >= 9"):
        encode_message(b"\x08", make_field(7))


def test_encrypt_reference(km89):
    (M,) = encode_message(b"COVID-19", km89.ctx)
    C = encrypt(km89, M)
    assert C.tolist()[:10] == [56, 26, 58, 77, 45, 10, 19, 46, 84, 67]
    assert C.tolist() == reference_cipher()


def test_encrypt_zero(km89):
    assert encrypt(km89, MessageVector(km89.ctx, [0] * 89)).tolist() == [0] * 89


def test_encrypt_small_against_oracle():
    km = form_key(CipherKey(5, 1, 1, 1))
    W = [[((j - i) % 5) + (1 if i == j else 0) for j in range(5)] for i in range(5)]
    W = [[v % 5 for v in row] for row in W]
    expected = [row[0] for row in NaiveField(5).matmul(W, [[1], [2], [3], [0], [0]])]
    assert expected == [4, 4, 4, 0, 4]
    C = encrypt(km, MessageVector(km.ctx, [1, 2, 3, 0, 0]))
    assert C.tolist() == expected
    assert decrypt(km, C).tolist() == [1, 2, 3, 0, 0]


def test_decrypt_reference(km89):
    C = CipherVector(km89.ctx, reference_cipher())
    D = decrypt(km89, C)
    assert D.tolist() == COVID + [32] * 81
    assert decode_message([D]) == b"COVID-19"


def test_field_mismatch(km89):
    with pytest.raises(FieldMismatch):
        encrypt(km89, MessageVector(make_field(5), [0] * 5))


def test_random_round_trip(km89):
    rng = np.random.default_rng(7)
    for _ in range(100):
        M = MessageVector(km89.ctx, rng.integers(0, 89, size=89))
        assert decrypt(km89, encrypt(km89, M)) == M


def test_decode_examples():
    ctx = make_field(89)
    assert decode_message(encode_message(b"AB CD", ctx)) == b"AB CD"
    msg = bytes((i * 7) % 89 for i in range(90))
    blocks = encode_message(msg, ctx)
    assert len(blocks) == 2
    assert decode_message(blocks) == msg
    # inner pads survive, trailing pads of the last block do not
    assert decode_message(encode_message(b"  X  ", ctx)) == b"  X"


@pytest.mark.parametrize("spec", [(5, 1, None), (7, 1, None), (11, 1, None), (13, 1, None),
                                  (89, 1, None), (257, 1, None), (2, 2, (1, 1, 1)), (3, 2, (2, 1, 1))])
def test_key_identities(spec):
    p, alpha, poly = spec
    ctx = make_field(p, alpha, poly)
    for t in list(valid_exponents(ctx.q))[:3]:
        for r in (1, 2, ctx.q - 1):
            km = form_key(CipherKey(p, alpha, t, r, poly))
            assert km.l * ctx(r) * ctx(r) == ctx.one
            assert matmul(km.W_inv, km.W) == identity(ctx, ctx.q)


@pytest.mark.parametrize("p", [5, 7, 11, 13, 89, 257])
def test_bytes_round_trip(p):
    ctx = make_field(p)
    rng = np.random.default_rng(p)
    ts = list(valid_exponents(p))
    pad = pad_symbol(p)
    top = min(p, 256)
    for _ in range(100):
        km = form_key(CipherKey(p, 1, int(rng.choice(ts)), int(rng.integers(1, p))))
        msg = bytes(rng.integers(0, top, size=int(rng.integers(0, 3 * p))).tolist())
        assert km.ctx == ctx
        out = decrypt_bytes(km, encrypt_bytes(km, msg))
        assert out == msg.rstrip(bytes([pad]))


def test_gf4_round_trip():
    km = form_key(CipherKey(2, 2, 1, 2, (1, 1, 1)))
    msg = bytes([0, 1, 2, 3, 3, 2])
    blocks = encrypt_bytes(km, msg)
    assert len(blocks) == 2
    assert decrypt_bytes(km, blocks) == msg


def test_linearity(km89):
    rng = np.random.default_rng(1)
    a = MessageVector(km89.ctx, rng.integers(0, 89, 89))
    b = MessageVector(km89.ctx, rng.integers(0, 89, 89))
    assert encrypt(km89, a + b) == encrypt(km89, a) + encrypt(km89, b)


def test_render_printable():
    assert render_printable([56, 26, 58]) == "8(26)*:"
    assert render_printable([65]) == "A"
    assert render_printable([127]) == "(127)*"


def test_render_reference_cipher():
    expected = (
        "8(26)*:M-(10)*(19)*.TC0(27)*(4)*D)(12)*F%(2)*6(15)*?(20)*@(17)*9(6)**L"
        "(19)*1M(14)*&<P(9)*(25)*'3=EKOQQOKE=3'(25)*(9)*P<&(14)*M1(19)*L*(6)*9"
        "(17)*@(20)*?(15)*6(2)*%F(12)*)D(4)*(27)*0CT(10)*(23)*\"+27:"
    )
    assert render_printable(reference_cipher()) == expected


# -- wire formats ----------------------------------------------------------

def test_key_text_examples():
    assert serialize_key(KEY89) == "p=89 alpha=1 t=2 r=5"
    assert parse_key("p=89 alpha=1 t=2 r=5") == KEY89
    k4 = CipherKey(2, 2, 1, 2, (1, 1, 1))
    assert serialize_key(k4) == "p=2 alpha=2 t=1 r=2 poly=1,1,1"
    assert parse_key(serialize_key(k4) + "\n") == k4


@pytest.mark.parametrize(
    "text, column",
    [
        ("p=89 alpha=1 t=2", None),
        ("p=89 alpha=1 t=two r=5", 16),
        ("p=89 alpha=1 t=2 r=5 s=3", 22),
        ("p=89 p=89 alpha=1 t=2 r=5", 6),
        ("p=2 alpha=2 t=1 r=2", None),
        ("p=89 alpha=1 t=2 r=5 poly=1,1", None),
        ("", None),
    ],
)
def test_key_parse_errors(text, column):
    with pytest.raises(ParseError) as info:
        parse_key(text)
    assert info.value.column == column


key_strategy = st.builds(
    CipherKey,
    p=st.sampled_from([5, 7, 89, 257]),
    alpha=st.just(1),
    t=st.integers(1, 40),
    r=st.integers(1, 88),
)


@given(key_strategy)
def test_key_round_trip(key):
    assert parse_key(serialize_key(key)) == key


@settings(max_examples=30, deadline=None)
@given(st.binary(max_size=300).map(lambda b: bytes(x % 89 for x in b)))
def test_cipher_text_round_trip(msg):
    km = form_key(CipherKey(89, 1, 3, 7))
    blocks = encrypt_bytes(km, msg)
    text = serialize_cipher(blocks)
    assert len(text.splitlines()) == len(blocks)
    assert parse_cipher(text, km.ctx) == blocks


def test_cipher_parse_errors():
    ctx = make_field(5)
    with pytest.raises(ParseError) as info:
        parse_cipher("1 2 3 4 5\n", ctx)
    assert (info.value.line, info.value.column) == (1, 9)
    with pytest.raises(ParseError):
        parse_cipher("1 2 3 4\n", ctx)
    with pytest.raises(ParseError):
        parse_cipher("1 2 -3 4 0\n", ctx)
    with pytest.raises(ParseError):
        parse_cipher("\n", ctx)
