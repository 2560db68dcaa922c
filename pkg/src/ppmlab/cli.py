"""Command-line front end (``ppmlab``).

Exit codes: 0 success, 1 verification failure or unreadable code file,
2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from . import formats
from .coder import CorruptStreamError, decode, encode
from .debruijn import ResourceLimitError
from .harness import ALGOS, DEFAULT_N_MAX, SUITES, ratio_curve, records_to_csv, run_suite
from .lz78 import FIXED, GAMMA, CorruptStreamError as LZCorruptError, decode_lz, encode_lz
from .model import ModelConfig, render_table, render_tsv
from .sequence import prefix_through, zone_length

MAX_N = 16
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _config(args) -> ModelConfig:
    if args.algo == "ppm_star":
        return ModelConfig("star")
    if args.algo == "ppm_k":
        if args.k is None:
            raise UsageError("--algo ppm_k needs --k")
        if not 0 <= args.k < 1 << 16:
            raise UsageError("--k must be in [0, 65535]")
        return ModelConfig("bounded", args.k)
    raise UsageError("%s is not a PPM algorithm" % args.algo)


def _write(path: Optional[str], data: bytes) -> None:
    if path is None or path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        with open(path, "wb") as fh:
            fh.write(data)


def _read_input(args) -> str:
    try:
        return formats.read_bits(args.input, packed=args.packed, nbits=args.bits)
    except OSError as e:
        raise UsageError("cannot read %s: %s" % (args.input, e.strerror))
    except (formats.FormatError, UnicodeDecodeError) as e:
        raise UsageError("%s: %s" % (args.input, e))


def _check_n(n: int) -> None:
    if not 0 <= n <= MAX_N:
        raise UsageError("--n-max must be in [0, %d]" % MAX_N)


# -- subcommands ------------------------------------------------------------

def cmd_gen(args) -> int:
    _check_n(args.n_max)
    seq = prefix_through(args.n_max)
    data = formats.pack_bits(seq.data)[0] if args.packed else seq.data.encode("ascii")
    _write(args.out, data)
    # boundary table goes to stderr when the bits go to stdout
    report = sys.stderr if args.out in (None, "-") else sys.stdout
    print("zone\tstart\tlength", file=report)
    for n in range(1, args.n_max + 1):
        print("%d\t%d\t%d" % (n, seq.boundary_index[n], zone_length(n)), file=report)
    print("total\t%d" % len(seq.data), file=report)
    return EXIT_OK


def cmd_compress(args) -> int:
    x = _read_input(args)
    if args.algo == "lz78":
        code = encode_lz(x, args.pointer_code)
        blob = formats.dump_lz(code)
        extra = " phrases=%d" % code.phrase_count
        model = None
    else:
        cfg = _config(args)
        code = encode(cfg, x)
        blob = formats.dump_ppm(cfg, code)
        extra = ""
        model = cfg.build().feed(x) if args.dump_model else None
    out = args.out or args.input + (".lz" if args.algo == "lz78" else ".ppm")
    _write(out, blob)
    ratio = "%.6f" % (len(code.bits) / len(x)) if x else "n/a"
    print("algo=%s input_bits=%d output_bits=%d ratio=%s%s"
          % (args.algo, len(x), len(code.bits), ratio, extra),
          file=sys.stderr if out == "-" else sys.stdout)
    if args.dump_model:
        if model is None:
            raise UsageError("--dump-model applies to PPM algorithms only")
        _write(args.dump_model, render_tsv(model).encode("ascii"))
    return EXIT_OK


def cmd_decompress(args) -> int:
    try:
        with open(args.input, "rb") as fh:
            blob = fh.read()
    except OSError as e:
        raise UsageError("cannot read %s: %s" % (args.input, e.strerror))
    try:
        if blob.startswith(formats.LZ_MAGIC):
            x = decode_lz(formats.load_lz(blob))
        else:
            cfg, code = formats.load_ppm(blob)
            x = decode(code, code.declared_length, cfg)
    except (formats.FormatError, CorruptStreamError, LZCorruptError) as e:
        print("error: %s: %s" % (args.input, e), file=sys.stderr)
        return EXIT_FAIL
    data = formats.pack_bits(x)[0] if args.packed else x.encode("ascii")
    _write(args.out, data)
    return EXIT_OK


def _parse_list(text: str, cast=str) -> List:
    return [cast(t) for t in text.split(",") if t]


def cmd_ratio_curve(args) -> int:
    _check_n(args.n_max)
    algos = args.algo or list(ALGOS)
    for a in algos:
        if a not in ALGOS:
            raise UsageError("unknown algorithm %r" % a)
    try:
        ks = _parse_list(args.k_list, int) if args.k_list else [1, 2, 3, 4, 5]
        points = _parse_list(args.points, int) if args.points else None
    except ValueError:
        raise UsageError("--k and --points take comma-separated integers")
    if any(k < 0 for k in ks):
        raise UsageError("k must be non-negative")
    records = ratio_curve(algos, ks, args.n_max, points, args.ideal_length_only, args.jobs)
    _write(args.out, records_to_csv(records).encode("ascii"))
    return EXIT_OK


def cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    params = {}
    if args.n_max is not None:
        _check_n(args.n_max)
        params["n_max"] = args.n_max
    ok = True
    for name in names:
        res = run_suite(name, **params)
        for line in res.lines:
            print("%s: %s" % (name, line))
        print("%s: %s (%.1fs)" % (name, "passed" if res.passed else "FAILED", res.seconds))
        ok = ok and res.passed
    return EXIT_OK if ok else EXIT_FAIL


def cmd_trace(args) -> int:
    x = _read_input(args)
    model = _config(args).build()
    lines = ["pos\tbit\tchain"]
    for i, ch in enumerate(x):
        symbol = int(ch)
        chain = model.emit(symbol)
        parts = []
        for e in chain:
            ctx = "-1" if e.context is None else (e.context or "λ")
            parts.append("%s:%s:%s" % (ctx, e.event, e.probability))
        lines.append("%d\t%s\t%s" % (i, ch, " ".join(parts)))
        model.update(symbol)
    _write(args.out, ("\n".join(lines) + "\n").encode("utf-8"))
    return EXIT_OK


def cmd_dump_model(args) -> int:
    x = _read_input(args)
    model = _config(args).build().feed(x)
    text = render_table(model) if args.format == "table" else render_tsv(model)
    _write(args.out, text.encode("utf-8"))
    return EXIT_OK


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ppmlab",
                                description="PPM*, bounded PPM and LZ78 on an enumerative normal sequence")
    sub = p.add_subparsers(dest="command", required=True)

    def bit_input(sp):
        sp.add_argument("input", help="bit file ('0'/'1' ASCII, or packed with --packed)")
        sp.add_argument("--packed", action="store_true", help="input is 8 bits per byte, MSB first")
        sp.add_argument("--bits", type=int, help="with --packed, number of bits to keep")

    def algo(sp, choices):
        sp.add_argument("--algo", choices=choices, default=choices[0])
        sp.add_argument("--k", type=int, help="context bound for ppm_k")

    sp = sub.add_parser("gen", help="write S_1 ... S_{n-max}")
    sp.add_argument("--n-max", type=int, default=DEFAULT_N_MAX)
    sp.add_argument("--packed", action="store_true")
    sp.add_argument("--out", help="output file (default stdout)")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("compress", help="compress a bit file")
    bit_input(sp)
    algo(sp, list(ALGOS))
    sp.add_argument("--pointer-code", choices=[FIXED, GAMMA], default=FIXED)
    sp.add_argument("--out", help="code file (default INPUT.ppm or INPUT.lz)")
    sp.add_argument("--dump-model", metavar="FILE", help="also write the final PPM model as TSV")
    sp.set_defaults(func=cmd_compress)

    sp = sub.add_parser("decompress", help="decode a code file")
    sp.add_argument("input")
    sp.add_argument("--packed", action="store_true", help="write packed bits")
    sp.add_argument("--out", help="output file (default stdout)")
    sp.set_defaults(func=cmd_decompress)

    sp = sub.add_parser("ratio-curve", help="compression ratios along S as CSV")
    sp.add_argument("--algo", action="append", choices=list(ALGOS),
                    help="repeatable; default all")
    sp.add_argument("--k", dest="k_list", help="comma-separated k values for ppm_k (default 1,2,3,4,5)")
    sp.add_argument("--n-max", type=int, default=DEFAULT_N_MAX)
    sp.add_argument("--points", help="comma-separated prefix lengths (default zone and bad-zone ends)")
    sp.add_argument("--ideal-length-only", action="store_true",
                    help="sum -log2 p in floating point instead of exact intervals")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--out", help="CSV file (default stdout)")
    sp.set_defaults(func=cmd_ratio_curve)

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument("suite", choices=list(SUITES) + ["all"])
    sp.add_argument("--n-max", type=int, help="override the suite's largest zone where it has one")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("trace", help="per-bit emission chains")
    bit_input(sp)
    algo(sp, ["ppm_star", "ppm_k"])
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_trace)

    sp = sub.add_parser("dump-model", help="print the model after reading a bit file")
    bit_input(sp)
    algo(sp, ["ppm_star", "ppm_k"])
    sp.add_argument("--format", choices=["table", "tsv"], default="table")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_dump_model)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        parser.error(str(e))
    except ResourceLimitError as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
