"""Command line front end: ``sasakicone <subcommand> [flags]``.

Exit codes: 0 success, 2 invalid input, 1 internal consistency failure.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .csc import CscUniquenessError, csc_ray
from .curvature import null_scalar_solutions, sasaki_scalar, scalar_coefficients, transverse_homothety
from .exact import fraction_str, parse_fraction
from .extremal import (
    classify_ray,
    exhaustion_bound,
    extremal_profile,
    extremal_region,
    format_number,
    regular_ray_extremal,
)
from .topology import (
    NONTRIVIAL_BOUQUET_NOTE,
    Bundle,
    JoinParams,
    ProductRayError,
    WeightVector,
    bouquet_table,
    contact_invariants,
    format_bouquet_table,
    is_product_ray,
    params_from_km,
    quotient_orbifold,
)

SCHEMA = "sasakicone/1"

SCAN_COLUMNS = ("g", "k", "m", "bundle", "l", "w1", "w2", "verdict", "csc_root", "A", "B")


class UsageError(ValueError):
    """Flag combination that no subcommand accepts."""


def _pair(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected an integer pair like 12,1, got {text!r}")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer pair like 12,1, got {text!r}") from None


def _rational(text: str) -> Fraction:
    try:
        return parse_fraction(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _bundle(text: str) -> Bundle:
    try:
        return Bundle.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _join(args) -> JoinParams:
    if args.l is None or args.w is None:
        raise UsageError("--l and --w are required")
    return JoinParams(args.g, args.l, *args.w)


def _ray(args) -> WeightVector | None:
    if args.v is not None and args.c is not None:
        raise UsageError("give either --v or --c, not both")
    if args.v is not None:
        return WeightVector(*args.v)
    if args.c is not None:
        return WeightVector.from_slope(args.c)
    return None


def _kv_table(rows) -> str:
    rows = [(k, "" if v is None else str(v)) for k, v in rows]
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k.ljust(width)}  {v}".rstrip() for k, v in rows)


def _root_text(root) -> str:
    if isinstance(root, Fraction):
        return fraction_str(root)
    return f"({fraction_str(root.lo)}, {fraction_str(root.hi)}) {format_number(root)}"


# ---------------------------------------------------------------------------
# subcommands: each returns (json payload, table text)


def cmd_classify(args):
    params = _join(args)
    inv = contact_invariants(params)
    exh = exhaustion_bound(params)
    payload = {"params": params.to_json(), "invariants": inv.to_json(), "exhaustion": exh.to_json()}
    rows = [
        ("g", params.g), ("l", params.l), ("w", f"({params.w1},{params.w2})"),
        ("c1", f"{inv.c1_coefficient}γ"), ("bundle", inv.bundle.label),
        ("k", inv.k), ("m", inv.m), ("n", inv.n),
        ("exhausted", exh.exhausted), ("genus threshold", exh.genus_threshold),
    ]
    v = _ray(args)
    if v is not None:
        verdict = classify_ray(params, v)
        payload["ray"] = {"v": v.to_json(), **verdict.to_json()}
        rows += [("v", f"({v.v1},{v.v2})"), ("verdict", verdict.strength.value)]
        if not is_product_ray(params, v):
            orb = quotient_orbifold(params, v)
            payload["ray"]["orbifold"] = orb.to_json()
            rows += [("r", fraction_str(orb.r)), ("s_sigma", fraction_str(orb.s_sigma))]
    return payload, _kv_table(rows)


def cmd_bouquet(args):
    rows = bouquet_table(args.g, args.k, args.bundle)
    payload = {
        "g": args.g, "k": args.k, "bundle": args.bundle.label, "c1": rows[0].c1_coefficient,
        "rows": [{"m": r.m, "l": r.l, "w": list(r.w)} for r in rows],
    }
    text = format_bouquet_table(rows)
    if args.bundle is Bundle.NONTRIVIAL:
        payload["note"] = NONTRIVIAL_BOUQUET_NOTE
        text += f"\nnote: {NONTRIVIAL_BOUQUET_NOTE}"
    return payload, text


def cmd_csc(args):
    params = _join(args)
    ray = csc_ray(params)
    payload = {"params": params.to_json(), **ray.to_json()}
    rows = [
        ("cubic", ray.cubic.pretty("c")),
        ("root", _root_text(ray.root)),
        ("regularity", ray.regularity.value),
        ("v", f"({ray.v.v1},{ray.v.v2})" if ray.v else "irrational"),
    ]
    return payload, _kv_table(rows)


def cmd_extremal(args):
    if args.k is not None or args.m is not None:
        if args.k is None or args.m is None or args.bundle is None:
            raise UsageError("the regular ray needs --k, --m and --bundle")
        rep = regular_ray_extremal(args.g, args.k, args.m, args.bundle)
        rows = [("g", rep.g), ("k", rep.k), ("m", rep.m), ("bundle", rep.bundle.label),
                ("l", rep.l), ("w", f"({rep.w[0]},{rep.w[1]})"),
                ("verdict", rep.verdict.strength.value)]
        if rep.h is not None:
            rows += [("h", rep.h.pretty("z")), ("M", fraction_str(rep.M)),
                     ("min at", fraction_str(rep.minimum_location))]
        return rep.to_json(), _kv_table(rows)
    params = _join(args)
    v = _ray(args)
    if v is None:
        raise UsageError("give --v or --c, or --k/--m/--bundle for the regular ray")
    verdict = classify_ray(params, v)
    payload = {"params": params.to_json(), "v": v.to_json(), **verdict.to_json()}
    rows = [("v", f"({v.v1},{v.v2})"), ("verdict", verdict.strength.value)]
    if not is_product_ray(params, v):
        prof = extremal_profile(params, v)
        payload["profile"] = prof.to_json()
        rows += [("positivity", verdict.positivity.value), ("h", prof.h.pretty("z"))]
        if verdict.witness:
            rows += [("min at", fraction_str(verdict.witness.location)),
                     ("min value", fraction_str(verdict.witness.value))]
    return payload, _kv_table(rows)


def cmd_region(args):
    region = extremal_region(_join(args))
    lines = []
    for seg in region.segments:
        line = f"{seg.notation():<40} {seg.verdict.value}"
        if seg.is_point and seg.boundary_polys:
            line += "  [" + "; ".join(p.pretty("c") + " = 0" for p in seg.boundary_polys) + "]"
        lines.append(line.rstrip())
    return region.to_json(), "\n".join(lines)


def cmd_curvature(args):
    if args.homothety is not None and args.homothety <= 0:
        raise UsageError("homothety parameter a must be positive")
    params = _join(args)
    v = _ray(args)
    if v is None:
        ray = csc_ray(params)
        if ray.v is None:
            raise UsageError("the CSC ray is irrational: give --v or --c explicitly")
        v = ray.v
    if is_product_ray(params, v):
        raise ProductRayError("v = w is the product ray: the admissible scalar curvature is undefined")
    rep = sasaki_scalar(params, v)
    payload = {"params": params.to_json(), "v": v.to_json(), **rep.to_json()}
    rows = [("v", f"({v.v1},{v.v2})"), ("A", rep.A), ("B", rep.B),
            ("transverse", f"{rep.A} + ({rep.B}) z" if not rep.is_csc else str(rep.A))]
    if rep.sasaki_const is not None:
        rows += [("sasaki", f"{rep.sasaki_const} ≈ {rep.sasaki_const.decimal()}"),
                 ("type", rep.type3.value)]
        if args.homothety is not None:
            s_a = transverse_homothety(rep.sasaki_const, args.homothety)
            payload["homothety"] = {"a": fraction_str(args.homothety), "sasaki": s_a.to_json()}
            rows.append((f"sasaki (a={fraction_str(args.homothety)})", s_a))
    return payload, _kv_table(rows)


def cmd_null_scalar(args):
    res = null_scalar_solutions(args.g, args.bound)
    body = [(str(s.l), f"({s.w1},{s.w2})", f"({s.v1},{s.v2})", s.bundle.label) for s in res.solutions]
    header = ("l", "w", "v", "bundle")
    widths = [max(len(x) for x in col) for col in zip(header, *body)]
    lines = ["  ".join(x.ljust(wd) for x, wd in zip(row, widths)).rstrip() for row in [header, *body]]
    if res.note:
        lines.append(f"note: {res.note}")
    return res.to_json(), "\n".join(lines)


# ---------------------------------------------------------------------------
# scan


def scan_row(task: tuple[int, int, int, Bundle]) -> list[str]:
    """One CSV row: regular-ray verdict, CSC root and ``A, B`` at ``v = (1, 1)``."""
    g, k, m, bundle = task
    l, w = params_from_km(k, m, bundle)
    params = JoinParams(g, l, *w)
    rep = regular_ray_extremal(g, k, m, bundle)
    root = csc_ray(params).root
    root_text = fraction_str(root) if isinstance(root, Fraction) else f"({fraction_str(root.lo)},{fraction_str(root.hi)})"
    regular = WeightVector(1, 1)
    if is_product_ray(params, regular):
        a_text = b_text = ""
    else:
        A, B = scalar_coefficients(params, regular)
        a_text, b_text = str(A), str(B)
    return [str(g), str(k), str(m), bundle.label, str(l), str(w[0]), str(w[1]),
            rep.verdict.strength.value, root_text, a_text, b_text]


def scan_tasks(g_min, g_max, k_min, k_max, bundles) -> list[tuple[int, int, int, Bundle]]:
    return [(g, k, m, b) for g in range(g_min, g_max + 1) for k in range(k_min, k_max + 1)
            for m in range(k) for b in bundles]


def run_scan(tasks, jobs: int = 1) -> str:
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(scan_row, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        rows = [scan_row(t) for t in tasks]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SCAN_COLUMNS)
    writer.writerows(rows)
    return buf.getvalue()


def cmd_scan(args):
    if args.g_min > args.g_max or args.k_min > args.k_max:
        raise UsageError("empty scan range")
    if args.jobs < 1:
        raise UsageError("--jobs must be at least 1")
    bundles = [Bundle.TRIVIAL, Bundle.NONTRIVIAL] if args.bundle is None else [args.bundle]
    tasks = scan_tasks(args.g_min, args.g_max, args.k_min, args.k_max, bundles)
    text = run_scan(tasks, args.jobs)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        return {"rows": len(tasks), "output": args.output}, f"wrote {len(tasks)} rows to {args.output}"
    return None, text


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sasakicone",
                                     description="Extremal and CSC Sasaki rays on S^3-bundles over Riemann surfaces.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, join=False, ray=False):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument("--format", choices=("json", "table"), default="table")
        p.add_argument("--g", type=int, required=True, help="genus of the base surface")
        if join:
            p.add_argument("--l", type=int, help="join parameter l")
            p.add_argument("--w", type=_pair, help="weights w1,w2")
        if ray:
            p.add_argument("--v", type=_pair, help="Reeb weights v1,v2")
            p.add_argument("--c", type=_rational, help="ray slope v2/v1 as p/q")
        return p

    add("classify", cmd_classify, "contact invariants, diffeotype and (optionally) a ray verdict", True, True)
    p = add("bouquet", cmd_bouquet, "Sasaki cones sharing the contact structure D_k")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--bundle", type=_bundle, required=True)
    add("csc", cmd_csc, "the unique CSC ray", True)
    p = add("extremal", cmd_extremal, "admissible extremality of one ray", True, True)
    p.add_argument("--k", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--bundle", type=_bundle)
    add("region", cmd_region, "extremal set of the whole cone in c = v2/v1", True)
    p = add("curvature", cmd_curvature, "scalar curvature of a ray (default: the CSC ray)", True, True)
    p.add_argument("--homothety", type=_rational, help="also apply a transverse homothety a > 0")
    p = sub.add_parser("null-scalar", help="admissible CSC rays with Sasaki scalar curvature -4")
    p.set_defaults(func=cmd_null_scalar)
    p.add_argument("--format", choices=("json", "table"), default="table")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--bound", type=int, default=50, help="search bound on l and w1")
    p = sub.add_parser("scan", help="CSV grid over (g, k, m, bundle)")
    p.set_defaults(func=cmd_scan, format="csv")
    p.add_argument("--g-min", type=int, default=1)
    p.add_argument("--g-max", type=int, required=True)
    p.add_argument("--k-min", type=int, default=1)
    p.add_argument("--k-max", type=int, required=True)
    p.add_argument("--bundle", type=_bundle, help="restrict to one bundle (default both)")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--output", "-o", help="CSV file (default stdout)")
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        payload, text = args.func(args)
    except (CscUniquenessError, AssertionError, ArithmeticError) as exc:
        print(f"internal error: {exc}", file=stderr)
        return 1
    except (ValueError, TypeError) as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    if args.format == "json" and payload is not None:
        doc = {"schema": SCHEMA, "command": args.command, **payload}
        stdout.write(json.dumps(doc, indent=2, ensure_ascii=False) + "\n")
    else:
        stdout.write(text if text.endswith("\n") else text + "\n")
    return 0


def main() -> None:
    sys.exit(run())
