import re

import pytest

from gfortho.cli import main
from gfortho.gf import make_field
from gfortho.gfmat import read_matrix


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_keygen_reference(tmp_path, capsys):
    key = tmp_path / "k.txt"
    code, out, _ = run(capsys, "keygen", "--prime", "89", "--exp", "2", "--scale", "5", "--out", str(key))
    assert code == 0
    assert out.strip() == "l=57 weight=25"
    assert key.read_text() == "p=89 alpha=1 t=2 r=5\n"


def test_keygen_bad_exponent(capsys):
    code, _, err = run(capsys, "keygen", "--prime", "5", "--exp", "2", "--scale", "1")
    assert code != 0
    assert "t out of range" in err and "2t <= q-2" in err


def test_keygen_gf4(capsys):
    code, out, _ = run(capsys, "keygen", "--prime", "2", "--alpha", "2", "--poly", "1,1,1",
                       "--exp", "1", "--scale", "2")
    assert code == 0
    assert out.splitlines() == ["p=2 alpha=2 t=1 r=2 poly=1,1,1", "l=2 weight=3"]


def test_keygen_missing_flag():
    with pytest.raises(SystemExit) as info:
        main(["keygen", "--prime", "5", "--exp", "1"])
    assert info.value.code != 0


@pytest.fixture
def key89(tmp_path, capsys):
    path = tmp_path / "key.txt"
    assert main(["keygen", "--prime", "89", "--exp", "2", "--scale", "5", "--out", str(path)]) == 0
    capsys.readouterr()
    return path


def test_encrypt_decrypt_round_trip(tmp_path, capsys, key89):
    (tmp_path / "m.txt").write_bytes(b"COVID-19")
    code, out, _ = run(capsys, "encrypt", "--key", str(key89), "--in", str(tmp_path / "m.txt"),
                       "--out", str(tmp_path / "c.txt"), "--pretty")
    assert code == 0
    assert out.startswith("8(26)*:M-")
    assert (tmp_path / "c.txt").read_text().split()[:3] == ["56", "26", "58"]
    code, _, _ = run(capsys, "decrypt", "--key", str(key89), "--in", str(tmp_path / "c.txt"),
                     "--out", str(tmp_path / "d.txt"))
    assert code == 0
    assert (tmp_path / "d.txt").read_bytes() == b"COVID-19"


def test_encrypt_empty_file(tmp_path, capsys, key89):
    (tmp_path / "e.txt").write_bytes(b"")
    assert main(["encrypt", "--key", str(key89), "--in", str(tmp_path / "e.txt"),
                 "--out", str(tmp_path / "c.txt")]) == 0
    lines = (tmp_path / "c.txt").read_text().splitlines()
    assert len(lines) == 1 and len(lines[0].split()) == 89


def test_encrypt_symbol_out_of_range(tmp_path, capsys, key89):
    (tmp_path / "m.txt").write_bytes(b"lower")
    code, _, err = run(capsys, "encrypt", "--key", str(key89), "--in", str(tmp_path / "m.txt"),
                       "--out", str(tmp_path / "c.txt"))
    assert code == 2
    assert "SymbolOutOfRange" in err and "257" in err


def test_decrypt_token_too_large(tmp_path, capsys, key89):
    (tmp_path / "c.txt").write_text(" ".join(["0"] * 88 + ["89"]) + "\n")
    code, _, err = run(capsys, "decrypt", "--key", str(key89), "--in", str(tmp_path / "c.txt"),
                       "--out", str(tmp_path / "d.txt"))
    assert code == 2
    assert "ParseError" in err and "line 1" in err


def test_missing_key_file(tmp_path, capsys):
    code, _, err = run(capsys, "decrypt", "--key", str(tmp_path / "nope"), "--in", "x", "--out", "y")
    assert code == 2 and "error:" in err


def test_construct_self(tmp_path, capsys):
    out_file = tmp_path / "a.txt"
    code, out, _ = run(capsys, "construct", "--kind", "self", "--prime", "5", "--exp", "1",
                       "--out", str(out_file))
    assert code == 0
    assert out.strip() == "order=5 weight=0"
    assert read_matrix(out_file, make_field(5)).tolist()[1] == [4, 0, 1, 2, 3]


def test_construct_block2q_stdout(capsys):
    code, out, _ = run(capsys, "construct", "--kind", "block2q", "--prime", "5", "--weight", "3")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "10 10"
    assert lines[-1] == "order=10 weight=3"


def test_construct_anti_z7(capsys):
    code, _, err = run(capsys, "construct", "--kind", "anti", "--prime", "7")
    assert code == 2
    assert "NoAntiRoot" in err


@pytest.mark.parametrize(
    "argv, last",
    [
        (["--prime", "5", "--scale", "1", "--hadamard", "4"], "order=20 weight=4"),
        (["--prime", "7", "--scale", "3", "--hadamard", "8"], "order=56 weight=2"),
        (["--prime", "3", "--alpha", "2", "--poly", "2,1,1", "--hadamard", "12"], "order=108 weight=0"),
    ],
)
def test_construct_kron(tmp_path, capsys, argv, last):
    code, out, _ = run(capsys, "construct", "--kind", "kron", *argv, "--out", str(tmp_path / "k.txt"))
    assert code == 0
    assert out.strip() == last


def test_construct_figures(tmp_path, capsys):
    assert main(["construct", "--kind", "weighted", "--prime", "7", "--scale", "2",
                 "--out", str(tmp_path / "w.txt"), "--figures", str(tmp_path)]) == 0
    assert (tmp_path / "construct_weighted.png").exists()


def test_inspect(tmp_path, capsys):
    m = tmp_path / "m.txt"
    m.write_text("2 2\n1 1\n0 1\n")
    code, out, _ = run(capsys, "inspect", "--prime", "5", "--in", str(m), "--figures", str(tmp_path))
    assert code == 0
    assert out.splitlines()[-1] == "field=GF(5) shape=2x2 weight=none"
    assert (tmp_path / "m.png").exists()
    m.write_text("2 2\n1 1\n0 9\n")
    code, _, err = run(capsys, "inspect", "--prime", "5", "--in", str(m))
    assert code == 2 and "line 3, column 3" in err


def test_verify_default_sweep_passes(capsys):
    code, out, _ = run(capsys, "verify", "--fields", "5,7,11,13")
    assert code == 0
    machine = [ln for ln in out.splitlines() if ln.startswith("field=")]
    assert len(machine) == 4 * 9
    assert all("status=pass" in ln for ln in machine)


def test_verify_gf9(capsys):
    code, out, _ = run(capsys, "verify", "--fields", "9:poly=2,1,1")
    assert code == 0
    assert "field=GF(3^2)_poly=2,1,1 check=decryption_unique status=pass" in out


def test_verify_z3_skip(capsys):
    code, out, _ = run(capsys, "verify", "--fields", "3")
    assert code == 0
    assert "no valid exponent t" in out
    assert "status=skip" in out


def test_verify_bad_entry_continues(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "--fields", "6,5", "--figures", str(tmp_path))
    assert code == 1
    assert "field=6 check=construct_field status=error" in out
    assert "field=GF(5) check=primitive_root status=pass" in out
    assert (tmp_path / "verify_status.png").exists()
    assert (tmp_path / "keyspace.png").exists()


def test_demo(capsys, tmp_path):
    code, out, _ = run(capsys, "demo", "--figures", str(tmp_path))
    assert code == 0
    assert "recovered      : COVID-19" in out
    assert "l              : 57" in out
    assert "C              : 56 26 58" in out
    for name in ("demo_block.png", "demo_key_matrix.png", "keyspace.png"):
        assert (tmp_path / name).exists()


@pytest.mark.parametrize(
    "argv",
    [
        ["demo"],
        ["verify", "--fields", "4,5"],
        ["construct", "--kind", "block2q", "--prime", "7", "--weight", "5"],
        ["keygen", "--prime", "13", "--exp", "3", "--scale", "4"],
    ],
)
def test_deterministic(capsys, argv):
    def strip_ms(text):
        # timings are the only nondeterministic output
        return re.sub(r"(ms=)?\d+( ms)?(?=\s|$)", lambda m: "T" if "ms" in m.group(0) else m.group(0), text)

    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first[0] == second[0]
    assert strip_ms(first[1]) == strip_ms(second[1])


def test_deterministic_files(tmp_path, capsys, key89):
    (tmp_path / "m.txt").write_bytes(b"SOME TEXT 123")
    outs = []
    for i in range(2):
        out = tmp_path / f"c{i}.txt"
        main(["encrypt", "--key", str(key89), "--in", str(tmp_path / "m.txt"), "--out", str(out)])
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]
