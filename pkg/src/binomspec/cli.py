"""Command-line entry point: ``binomspec {field-info,analyze,scan,charsums}``."""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from . import boom, charsum, diff, verify
from .field import make_field
from .funcs import build_binomial, is_permutation

SCHEMA_VERSION = 1
JOBS_ENV = "BINOMSPEC_JOBS"
# opt-in large limits for --long-run
LONG_RUN_Q_MAX = {"DS": 100_000}
LONG_RUN_DEFAULT = 10_000


def _default_jobs() -> int:
    env = os.environ.get(JOBS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


# -- output -------------------------------------------------------------------


def _doc(command: str, rows: list[dict]) -> dict:
    return {"schema_version": SCHEMA_VERSION, "command": command, "rows": rows}


def _cell(v) -> str:
    if isinstance(v, bool):
        return str(v).lower()
    if v is None:
        return ""
    if isinstance(v, (dict, list, tuple)):
        return json.dumps(v, sort_keys=True, ensure_ascii=False)
    return str(v)


def _generic_csv(rows: list[dict]) -> str:
    keys = list(dict.fromkeys(k for row in rows for k in row))
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(keys)
    for row in rows:
        w.writerow([_cell(row.get(k)) for k in keys])
    return buf.getvalue()


def _generic_markdown(rows: list[dict]) -> str:
    if not rows:
        return "_no rows_\n"
    keys = list(dict.fromkeys(k for row in rows for k in row))
    lines = ["| " + " | ".join(keys) + " |", "|" + "---|" * len(keys)]
    for row in rows:
        lines.append("| " + " | ".join(_cell(row.get(k)).replace("|", "\\|") for k in keys) + " |")
    return "\n".join(lines) + "\n"


def render(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    if fmt == "csv":
        return _generic_csv(doc["rows"])
    return _generic_markdown(doc["rows"])


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- commands -----------------------------------------------------------------


def _field(args, parser):
    try:
        return make_field(args.p, args.n)
    except ValueError as exc:
        parser.error(str(exc))


def cmd_field_info(args, parser) -> int:
    f = _field(args, parser)
    row = {
        "p": f.p,
        "n": f.n,
        "q": f.q,
        "modulus": list(f.modulus),
        "r": f.r,
        "generator": f.generator,
        "quadrant_sizes": list(f.quadrant_sizes()),
    }
    _emit(render(_doc("field-info", [row]), args.format), args.out)
    return 0


def _quadrant_rows(f, u, bs):
    rows = []
    can_predict = u == f.one or u not in (f.one, f.minus_one)
    for b in bs:
        qc = diff.quadrant_counts(f, b, u)
        row = {"b": b, "d00": qc.d00, "d01": qc.d01, "d10": qc.d10, "d11": qc.d11,
               "sol_at_0": qc.sol_at_0, "sol_at_neg1": qc.sol_at_neg1}
        if can_predict:
            pred = diff.predict_quadrants_u1(f, b) if u == f.one else diff.predict_quadrants_general(f, u, b)
            row["predicted_match"] = pred.as_tuple() == qc.as_tuple()
        rows.append(row)
    return rows


def cmd_analyze(args, parser) -> int:
    f = _field(args, parser)
    if f.r is None and args.r is None:
        parser.error("q must be 3 (mod 4) unless --r is given")
    try:
        u = f.from_int(args.u) if args.u < 0 else f.coerce(args.u)
        table = build_binomial(f, u, args.r)
    except ValueError as exc:
        parser.error(str(exc))
    want_all = not (args.diff or args.boom or args.quadrants)
    rows = []
    base = {"q": f.q, "r": table.params["r"], "u": u}
    if args.diff or want_all:
        spec = diff.diff_spectrum(table)
        rows.append({
            **base,
            "analysis": "diff",
            "spectrum": {str(k): v for k, v in sorted(spec.counts.items())},
            "uniformity": diff.differential_uniformity(table),
            "locality_strict": diff.classify_locality(table, "strict"),
            "locality_punctured": diff.classify_locality(table, "punctured"),
            "permutation": is_permutation(table),
        })
    if args.boom or want_all:
        spec = boom.boom_spectrum(table)
        row = {
            **base,
            "analysis": "boom",
            "spectrum": {str(k): v for k, v in sorted(spec.counts.items())},
            "uniformity": spec.uniformity,
        }
        if f.q % 8 == 7:
            row["gamma"] = charsum.gamma(f)
        rows.append(row)
    if args.quadrants:
        if table.params["r"] != f.r:
            parser.error("quadrant analysis uses r = (q+1)/4")
        bs = [f.coerce(b) for b in args.b] if args.b else list(range(1, f.q))
        if 0 in bs:
            parser.error("b must be nonzero")
        for row in _quadrant_rows(f, u, bs):
            rows.append({**base, "analysis": "quadrants", **row})
    _emit(render(_doc("analyze", rows), args.format), args.out)
    return 0


def cmd_scan(args, parser) -> int:
    theorem = args.theorem.upper()
    q_max = args.q_max
    if args.long_run and q_max is None:
        q_max = LONG_RUN_Q_MAX.get(theorem, LONG_RUN_DEFAULT)
    if q_max is None:
        q_max = 200
    try:
        cfg = verify.ScanConfig(
            q_max=q_max,
            theorem=theorem,
            residue=args.filter,
            u_policy=args.u_policy,
            jobs=args.jobs,
            bct_cap=args.bct_cap,
            seed=args.seed,
        )
    except ValueError as exc:
        parser.error(str(exc))
    reports = verify.scan(cfg)
    if not reports:
        print(f"no applicable fields for {theorem} with q <= {q_max}", file=sys.stderr)
    if args.format == "json":
        doc = _doc("scan", [r.as_dict() for r in reports])
        text = render(doc, "json")
    elif args.format == "csv":
        text = verify.to_csv(reports)
    else:
        text = verify.to_markdown(reports)
    _emit(text, args.out)
    for r in reports:
        for note in r.informational:
            print(f"q={r.q}: {note}", file=sys.stderr)
    return 0 if all(r.match for r in reports) else 1


def _parse_poly(text: str, f):
    try:
        values = [int(t.strip().replace("−", "-")) for t in text.split(",") if t.strip()]
    except ValueError:
        raise ValueError(f"cannot parse polynomial {text!r}") from None
    return charsum.Poly.from_ints(f, values)


def cmd_charsums(args, parser) -> int:
    f = _field(args, parser)
    rows = []
    status = 0
    if args.gamma:
        try:
            s1, s2, g = charsum.gamma_decomposition(f)
        except ValueError as exc:
            parser.error(str(exc))
        direct = charsum.gamma(f)
        ok = direct == g and charsum.gamma_bound_holds(f, g)
        status |= not ok
        rows.append({"q": f.q, "name": "gamma", "value": direct, "S1": s1, "S2": s2, "match": ok})
    if args.poly is not None:
        try:
            poly = _parse_poly(args.poly, f)
        except ValueError as exc:
            parser.error(str(exc))
        rows.append({"q": f.q, "name": "poly", "coeffs": list(poly.coeffs), "value": charsum.char_sum(f, poly)})
    if args.identity_suite:
        for res in charsum.identity_suite(f, seed=args.seed):
            if res.applicable and not res.match:
                status = 1
            rows.append(res.as_dict())
    _emit(render(_doc("charsums", rows), args.format), args.out)
    return status


# -- parser -------------------------------------------------------------------


def _common(sp):
    sp.add_argument("--format", choices=("json", "csv", "markdown"), default="markdown")
    sp.add_argument("--out", default=None, help="write to this file instead of stdout")
    sp.add_argument("--seed", type=int, default=verify.DEFAULT_SEED)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="binomspec", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("field-info", help="modulus, r, generator and quadrant sizes of F_{p^n}")
    sp.add_argument("p", type=int)
    sp.add_argument("n", type=int, nargs="?", default=1)
    _common(sp)
    sp.set_defaults(func=cmd_field_info)

    sp = sub.add_parser("analyze", help="spectra and quadrant counts for one binomial")
    sp.add_argument("p", type=int)
    sp.add_argument("n", type=int, nargs="?", default=1)
    sp.add_argument("--u", type=int, default=1, help="index of u; negative values are read mod p")
    sp.add_argument("--r", type=int, default=None)
    sp.add_argument("--diff", action="store_true")
    sp.add_argument("--boom", action="store_true")
    sp.add_argument("--quadrants", action="store_true")
    sp.add_argument("-b", type=int, action="append", help="b value for --quadrants (repeatable)")
    _common(sp)
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("scan", help="check one theorem over a range of q")
    sp.add_argument("--q-max", type=int, default=None, help="largest q (default 200)")
    sp.add_argument("--filter", choices=tuple(verify.RESIDUES), default=None)
    sp.add_argument("--theorem", type=str.upper, choices=tuple(verify.THEOREMS), default="DS")
    sp.add_argument("--u-policy", choices=("u1", "pm1", "all", "special", "sample"), default=None)
    sp.add_argument("--jobs", type=int, default=_default_jobs())
    sp.add_argument("--bct-cap", type=int, default=1024, help="largest q for full-BCT checks")
    sp.add_argument("--long-run", action="store_true", help="scan up to q = 100000 (DS) or 10000 (others); slow")
    _common(sp)
    sp.set_defaults(func=cmd_scan)

    sp = sub.add_parser("charsums", help="character sums and the identity suite")
    sp.add_argument("p", type=int)
    sp.add_argument("n", type=int, nargs="?", default=1)
    sp.add_argument("--identity-suite", action="store_true")
    sp.add_argument("--gamma", action="store_true")
    sp.add_argument("--poly", default=None, help="coefficients, constant first, comma separated")
    _common(sp)
    sp.set_defaults(func=cmd_charsums)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "charsums" and not (args.identity_suite or args.gamma or args.poly is not None):
        args.identity_suite = True
    return args.func(args, parser)


if __name__ == "__main__":
    sys.exit(main())
