"""Command-line front end: ``gfortho <subcommand> [--flags]``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import analysis, cipher, construct, plotting
from .errors import GfError
from .gf import make_field, parse_poly
from .gfmat import format_matrix, read_matrix, weight_of, write_matrix


def _add_field_args(sp: argparse.ArgumentParser, required: bool = True) -> None:
    sp.add_argument("--prime", type=int, required=required, help="characteristic p")
    sp.add_argument("--alpha", type=int, default=1, help="extension degree (default 1)")
    sp.add_argument("--poly", type=str, help="primitive polynomial c0,c1,...,calpha (alpha > 1)")


def _field(args):
    poly = parse_poly(args.poly) if args.poly else None
    return make_field(args.prime, args.alpha, poly)


def _read_key(path):
    return cipher.parse_key(Path(path).read_text())


def _weight_text(M) -> str:
    w = weight_of(M)
    return "weight=none" if w is None else f"weight={w.index}"


# ----------------------------------------------------------------------
# subcommands
# ----------------------------------------------------------------------

def cmd_keygen(args) -> int:
    poly = parse_poly(args.poly) if args.poly else None
    key = cipher.CipherKey(args.prime, args.alpha, args.exp, args.scale, poly)
    km = cipher.form_key(key)
    line = cipher.serialize_key(key) + "\n"
    if args.out:
        Path(args.out).write_text(line)
    else:
        sys.stdout.write(line)
    r = km.ctx(key.r)
    print(f"l={km.l.index} weight={(r * r).index}")
    return 0


def cmd_encrypt(args) -> int:
    km = cipher.form_key(_read_key(args.key))
    data = Path(args.infile).read_bytes()
    blocks = cipher.encrypt_bytes(km, data)
    Path(args.out).write_text(cipher.serialize_cipher(blocks))
    if args.pretty:
        for b in blocks:
            print(cipher.render_printable(b))
    return 0


def cmd_decrypt(args) -> int:
    km = cipher.form_key(_read_key(args.key))
    blocks = cipher.parse_cipher(Path(args.infile).read_text(), km.ctx)
    Path(args.out).write_bytes(cipher.decrypt_bytes(km, blocks))
    return 0


def _hadamard(spec: str, ctx):
    if spec.isdigit():
        order = int(spec)
        if order & (order - 1) == 0:
            return construct.hadamard_sylvester(order, ctx)
        return construct.load_hadamard(construct.hadamard_fixture(order), ctx)
    return construct.load_hadamard(spec, ctx)


def cmd_construct(args) -> int:
    ctx = _field(args)
    kind = args.kind
    if kind == "self":
        M = construct.self_orthogonal(ctx, args.exp)
    elif kind == "weighted":
        M = construct.weighted_orthogonal(ctx, args.exp, args.scale)
    elif kind == "anti":
        M = construct.anti_orthogonal(ctx, args.exp)
    elif kind == "block2q":
        M = construct.block_2q(ctx, args.exp, args.exp2, args.weight)
    else:  # kron
        W = construct.weighted_orthogonal(ctx, args.exp, args.scale)
        M = construct.kron_weighted(_hadamard(args.hadamard, ctx), W)
    if args.out:
        write_matrix(M, args.out)
    else:
        sys.stdout.write(format_matrix(M))
    print(f"order={M.rows} {_weight_text(M)}")
    if args.figures:
        plotting.plot_matrix(M, Path(args.figures) / f"construct_{kind}.png")
    return 0


def cmd_inspect(args) -> int:
    ctx = _field(args)
    M = read_matrix(args.infile, ctx)
    sys.stdout.write(format_matrix(M))
    print(f"field={ctx.describe()} shape={M.rows}x{M.cols} {_weight_text(M)}")
    if args.figures:
        plotting.plot_matrix(M, Path(args.figures) / f"{Path(args.infile).stem}.png")
    return 0


def cmd_verify(args) -> int:
    reports = []
    orders = []
    errors = 0
    for entry in analysis.parse_sweep(args.fields):
        try:
            ctx = analysis.field_from_spec(entry)
        except (GfError, ValueError) as exc:
            errors += 1
            print(f"field={entry} check=construct_field status=error msg={type(exc).__name__}: {exc}")
            continue
        rep = analysis.verify_field(ctx)
        reports.append(rep)
        orders.append(ctx.q)
        print(rep.text())
    for rep in reports:
        for line in rep.lines():
            print(line)
    if args.figures and reports:
        out = Path(args.figures)
        plotting.plot_verification(reports, out / "verify_status.png")
        figs = [analysis.keyspace_figures(q) for q in sorted(set(orders)) if q >= 4]
        if figs:
            plotting.plot_keyspace(figs, out / "keyspace.png")
    failed = errors or any(not r.passed for r in reports)
    return 1 if failed else 0


def cmd_demo(args) -> int:
    from .demo import run_demo

    res = run_demo()
    print(res.text())
    if args.figures:
        out = Path(args.figures)
        plotting.plot_cipher_block(res.message, res.cipher, out / "demo_block.png",
                                   reference=res.reference, title="key p=89 t=2 r=5")
        plotting.plot_matrix(res.km.W, out / "demo_key_matrix.png", title="W = A + 5I over GF(89)")
        plotting.plot_keyspace([analysis.keyspace_figures(q) for q in (5, 11, 29, 53, 89, 127, 257)],
                               out / "keyspace.png")
    return 0 if res.round_trip_ok else 1


# ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gfortho",
        description="Weighted orthogonal matrices over GF(p^alpha) and the matrix block cipher built on them.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("keygen", help="write a key file and print l and the weight")
    _add_field_args(sp)
    sp.add_argument("--exp", type=int, required=True, help="exponent t")
    sp.add_argument("--scale", type=int, required=True, help="scale r (element index)")
    sp.add_argument("--out", help="key file (default: stdout)")
    sp.set_defaults(func=cmd_keygen)

    for name, func, helptext in (
        ("encrypt", cmd_encrypt, "encrypt raw bytes into a cipher file"),
        ("decrypt", cmd_decrypt, "decrypt a cipher file into raw bytes"),
    ):
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("--key", required=True)
        sp.add_argument("--in", dest="infile", required=True)
        sp.add_argument("--out", required=True)
        if name == "encrypt":
            sp.add_argument("--pretty", action="store_true", help="also print a printable rendering")
        sp.set_defaults(func=func)

    sp = sub.add_parser("construct", help="build a matrix and print its weight")
    sp.add_argument("--kind", required=True, choices=["self", "weighted", "anti", "block2q", "kron"])
    _add_field_args(sp)
    sp.add_argument("--exp", type=int, default=1, help="exponent t (t1 for block2q)")
    sp.add_argument("--exp2", type=int, default=1, help="second exponent t2 (block2q)")
    sp.add_argument("--scale", type=int, default=1, help="scale r (weighted, kron)")
    sp.add_argument("--weight", type=int, default=1, help="target weight k (block2q)")
    sp.add_argument("--hadamard", default="4",
                    help="Hadamard factor for kron: power-of-two order, 12, 20, or a file")
    sp.add_argument("--out", help="matrix file (default: stdout)")
    sp.add_argument("--figures", help="directory for a heat-map figure")
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("inspect", help="print a matrix file with its weight")
    _add_field_args(sp)
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--figures", help="directory for a heat-map figure")
    sp.set_defaults(func=cmd_inspect)

    sp = sub.add_parser("verify", help="check every construction over a sweep of fields")
    sp.add_argument("--fields", default="4,5,7,8,9,11,13,25",
                    help="comma-separated orders, e.g. '5,7,9:poly=2,1,1'")
    sp.add_argument("--figures", help="directory for status and key-space figures")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("demo", help="run the COVID-19 example end to end")
    sp.add_argument("--figures", help="directory for demo figures")
    sp.set_defaults(func=cmd_demo)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GfError, ValueError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
