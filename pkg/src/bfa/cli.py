"""``bfa``: command-line front end.

Every subcommand builds a JSON-ready payload first; table and CSV output are
rendered from that payload. Exit codes: 0 ok, 1 verification failure or
expectation mismatch, 2 usage or parse error.
"""

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path

from . import boolfun as bf
from . import constructions as cons
from . import vbf
from . import verify as verify_mod
from .errors import BfaError, ParseError
from .gf2n import compile_poly, field, parse_field, parse_poly

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read_source(value):
    """Inline text, or the contents of a file when written as @path."""
    if value.startswith("@"):
        path = Path(value[1:])
        try:
            return path.read_text().strip()
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return value


def _threads():
    raw = os.environ.get("BFA_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise UsageError(f"BFA_THREADS must be an integer, got {raw!r}") from None


def _catalog_dir(arg):
    if arg:
        return Path(arg)
    local = Path("catalog")
    return local if local.is_dir() and any(local.glob("*.txt")) else cons.CATALOG_DIR


# ---------------------------------------------------------------- rendering

def _csv(rows, cols):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for r in rows:
        w.writerow(["" if r.get(c) is None else r[c] for c in cols])
    return buf.getvalue()


def _table(rows, cols):
    cells = [[str(c) for c in cols]] + [["-" if r.get(c) is None else str(r[c]) for c in cols]
                                        for r in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(cols))]
    lines = ["  ".join(v.rjust(w) for v, w in zip(row, widths)) for row in cells]
    return "\n".join(lines) + "\n"


def _fmt_value(v):
    if isinstance(v, list):
        return "{" + ", ".join(str(x) for x in v) + "}"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return "-" if v is None else str(v)


def _kv(payload, skip=()):
    keys = [k for k in payload if k not in skip]
    width = max(len(k) for k in keys)
    return "".join(f"{k.ljust(width)}  {_fmt_value(payload[k])}\n" for k in keys)


def _emit(text):
    sys.stdout.write(text)


# ---------------------------------------------------------------- analyze

def _load_boolfunc(args):
    if args.anf is not None:
        return bf.from_anf(_read_source(args.anf), args.n)
    return bf.from_hex(_read_source(args.tt), args.n)


def analyze_payload(f, spectrum=False):
    vs = bf.linear_space(f)
    out = {
        "n": f.n,
        "hex": bf.to_hex(f),
        "anf": str(bf.anf(f)),
        "weight": bf.weight(f),
        "balanced": bf.is_balanced(f),
        "degree": bf.degree(f),
        "nonlinearity": bf.nonlinearity(f),
        "dimV": vs.dim,
        "linear_space_basis": list(vs.basis),
        "gamma_size": len(bf.gamma_set(f)),
        "class": str(bf.classify(f)),
    }
    if spectrum:
        out["spectrum"] = [int(v) for v in bf.walsh(f).values]
    return out


def cmd_analyze(args):
    f = _load_boolfunc(args)
    payload = analyze_payload(f, args.spectrum)
    if args.format == "json":
        _emit(json.dumps(payload) + "\n")
    elif args.format == "csv":
        flat = dict(payload)
        for key in ("linear_space_basis", "spectrum"):
            if key in flat:
                flat[key] = " ".join(str(v) for v in flat[key])
        _emit(_csv([flat], list(flat)))
    else:
        _emit(_kv(payload, skip=("spectrum",)))
        if args.spectrum:
            _emit("spectrum\n" + _table([{"a": a, "W": w} for a, w in enumerate(payload["spectrum"])],
                                        ["a", "W"]))
    return EXIT_OK


# ---------------------------------------------------------------- census

def _parse_outputs(text):
    parts = text.replace(",", " ").split()
    try:
        words = [int(p, 0) for p in parts]
    except ValueError as exc:
        raise UsageError(f"bad output word: {exc}") from None
    n = len(words).bit_length() - 1
    if not words or len(words) != 1 << n:
        raise UsageError(f"{len(words)} output words is not a power of two")
    return n, words


def _load_vectorial(args):
    if args.catalog is not None:
        if args.field is not None:
            raise UsageError("catalog entries pin their own field; drop --field")
        return cons.catalog(args.catalog, _catalog_dir(args.catalog_dir))
    spec = parse_field(args.field) if args.field else None
    if args.poly is not None:
        if spec is None:
            if args.n is None:
                raise UsageError("--poly needs --field or --n")
            spec = field(args.n)
        return compile_poly(parse_poly(_read_source(args.poly), spec), spec)
    n, words = _parse_outputs(_read_source(args.outputs))
    if spec is not None and spec.n != n:
        raise UsageError(f"field has n={spec.n} but the table has 2^{n} entries")
    return vbf.from_outputs(n, words, field=spec)


def census_table(payload):
    head = {k: v for k, v in payload.items() if k != "per_component"}
    rows = payload["per_component"]
    cols = ["lambda", "dimV", "class", "maxAbsW"] + (["alpha"] if rows and "alpha" in rows[0] else [])
    return _kv(head) + "\n" + _table(rows, cols)


def cmd_census(args):
    F = _load_vectorial(args)
    if args.components == "trace" and F.field is None:
        raise UsageError("--components trace needs a field (use --poly, --catalog or --field)")
    report = vbf.census(F, components=args.components)
    if args.format == "json":
        _emit(report.to_json() + "\n")
    elif args.format == "csv":
        _emit(report.to_csv())
    else:
        _emit(census_table(report.to_dict()))
    if args.expect_B is not None and report.B != args.expect_B:
        sys.stderr.write(f"bfa: expected B={args.expect_B}, measured B={report.B}\n")
        return EXIT_FAIL
    return EXIT_OK


# ---------------------------------------------------------------- power-scan

POWER_COLS = ["n", "k", "d", "e", "s", "image_size", "B_predicted", "B_measured",
              "is_apn", "is_permutation", "ok"]


def cmd_power_scan(args):
    if args.n_max > 12:
        raise UsageError("--n-max is limited to 12")
    rows = [r.to_dict() for r in vbf.power_scan(args.n_max, threads=_threads())]
    if args.format == "json":
        _emit(json.dumps(rows) + "\n")
    elif args.format == "csv":
        _emit(_csv(rows, POWER_COLS))
    else:
        _emit(_table(rows, POWER_COLS))
    bad = [r for r in rows if not r["ok"]]
    for r in bad:
        sys.stderr.write(f"bfa: prediction mismatch at n={r['n']} k={r['k']}\n")
    return EXIT_FAIL if bad else EXIT_OK


# ---------------------------------------------------------------- verify

def cmd_verify(args):
    if args.suite not in verify_mod.SUITE_NAMES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(verify_mod.SUITE_NAMES)}")
    rows = [r.to_dict() for r in verify_mod.run(args.suite, args.seed)]
    cols = ["suite", "check", "passed", "total", "ok"]
    if args.format == "json":
        _emit(json.dumps({"seed": args.seed, "results": rows}) + "\n")
    elif args.format == "csv":
        _emit(_csv(rows, cols))
    else:
        _emit(_table(rows, cols))
        failed = sum(not r["ok"] for r in rows)
        _emit(f"seed {args.seed}: {len(rows) - failed}/{len(rows)} checks passed\n")
    return EXIT_OK if all(r["ok"] for r in rows) else EXIT_FAIL


# ---------------------------------------------------------------- wiring

def build_parser():
    p = _Parser(prog="bfa", description="Exact analysis of Boolean and vectorial Boolean functions.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--format", choices=("table", "json", "csv"), default="table")

    a = sub.add_parser("analyze", help="analyze one Boolean function")
    src = a.add_mutually_exclusive_group(required=True)
    src.add_argument("--anf", help="ANF such as 'x1*x2 + x3 + 1' (or @file)")
    src.add_argument("--tt", help="hex truth table, MSB = highest index (or @file)")
    a.add_argument("--n", type=int, help="number of variables")
    a.add_argument("--spectrum", action="store_true", help="include the full Walsh spectrum")
    common(a)
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("census", help="bent-component census of a vectorial function")
    src = c.add_mutually_exclusive_group(required=True)
    src.add_argument("--poly", help="univariate polynomial, e.g. 'x^3 + z^11*x^5' (or @file)")
    src.add_argument("--catalog", help="named catalog entry")
    src.add_argument("--outputs", help="2^n output words, comma or space separated (or @file)")
    c.add_argument("--field", help="field spec n=<deg>,mod=conway|<bits> (default: Conway for --n)")
    c.add_argument("--n", type=int, help="field degree when --field is omitted")
    c.add_argument("--components", choices=("dot", "trace"), default="dot")
    c.add_argument("--expect-B", dest="expect_B", type=int, help="exit 1 unless B matches")
    c.add_argument("--catalog-dir", help="catalog directory (default ./catalog, else the bundled one)")
    common(c)
    c.set_defaults(func=cmd_census)

    s = sub.add_parser("power-scan", help="check x^(2^k+1) predictions for even n <= n_max")
    s.add_argument("--n-max", dest="n_max", type=int, required=True)
    common(s)
    s.set_defaults(func=cmd_power_scan)

    v = sub.add_parser("verify", help="run a seeded invariant suite")
    v.add_argument("--suite", default="all", help=f"one of {', '.join(verify_mod.SUITE_NAMES)}")
    v.add_argument("--seed", type=int, default=0)
    common(v)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"bfa: {exc}\n")
        return EXIT_USAGE
    except ParseError as exc:
        sys.stderr.write(f"bfa: parse error: {exc}\n{exc.caret()}\n")
        return EXIT_USAGE
    except BfaError as exc:
        sys.stderr.write(f"bfa: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
