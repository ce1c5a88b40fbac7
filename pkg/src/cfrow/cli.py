"""Command-line surface.

Subcommands: expand, contract, cfe, orbit, entropy, region-info,
sweep-alpha.  Structured results are JSON (sorted keys), orbit and
sweep tracks are CSV.  Stochastic runs read their default seed from
CFROW_SEED and always record seed and sample count in the output.
Exit codes: 0 success, 2 domain/usage errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from fractions import Fraction

from . import contraction, measure
from .cfe import cfe_convergents_report, cfe_direct
from .errors import CfrowError
from .exact import INF
from .farey_maps import alpha_orbit_digits, farey_expansion, lehner_expansion
from .gcf import Gcf, convergents
from .natural_ext import OmegaPoint, orbit_csv_rows
from .reals import parse_real, rcf_digits
from .regions import region_from_spec
from .shift_space import tau_orbit

DEFAULT_SEED = int(os.environ.get("CFROW_SEED", "0"))


def _enc_digit(v):
    if v is INF:
        return "inf"
    if isinstance(v, Fraction):
        return str(v)
    return v


def _gcf_json(g: Gcf, n: int, extra=None):
    ps = g.pairs(n)
    obj = {
        "alpha": [_enc_digit(a) for a, _ in ps],
        "beta": [_enc_digit(b) for _, b in ps],
    }
    if extra:
        obj.update(extra)
    return obj


def _emit(obj):
    print(json.dumps(obj, sort_keys=True))


def cmd_expand(args) -> int:
    x = parse_real(args.x)
    n = args.n
    if args.kind == "rcf":
        digits = rcf_digits(x).prefix(n)
        _emit({"kind": "rcf", "x": args.x, "digits": [_enc_digit(d) for d in digits]})
        return 0
    if args.kind == "farey":
        g = farey_expansion(x, n)
        _emit(_gcf_json(g, n + 1, {"kind": "farey", "x": args.x}))
        return 0
    if args.kind == "lehner":
        g = lehner_expansion(x, n)
        _emit(_gcf_json(g, n + 1, {"kind": "lehner", "x": args.x}))
        return 0
    if args.kind == "alpha":
        if args.alpha is None:
            raise CfrowError("--alpha is required for kind=alpha")
        alpha = parse_real(args.alpha)
        from .reals import as_real, floor_of

        x0 = as_real(x - floor_of(x + 1 - alpha))  # reduce into [alpha-1, alpha)
        pairs = alpha_orbit_digits(alpha, x0, n)
        _emit(
            {
                "kind": "alpha",
                "alpha": args.alpha,
                "x": args.x,
                "signs": [s for s, _ in pairs],
                "digits": [d for _, d in pairs],
            }
        )
        return 0
    raise CfrowError(f"unknown expansion kind {args.kind}")


def _load_gcf(text: str) -> Gcf:
    if text == "-":
        text = sys.stdin.read()
    elif os.path.exists(text):
        with open(text) as fh:
            text = fh.read()
    return Gcf.from_json(text)


def cmd_contract(args) -> int:
    g = _load_gcf(args.gcf)
    idxs = [int(s) for s in args.plan.split(",") if s]
    plan = contraction.ContractionPlan(idxs)
    out = contraction.contract(g, plan)
    k_max = len(idxs) - 1
    pairs_n = k_max + 1
    scalars = contraction.seidel_scalars(g, plan, k_max)
    conv = convergents(out, k_max)[2:]
    _emit(
        _gcf_json(
            out,
            pairs_n,
            {
                "plan": idxs,
                "scalars": scalars,
                "convergents": [[c.P, c.Q] for c in conv],
            },
        )
    )
    return 0


def cmd_cfe(args) -> int:
    region = region_from_spec(args.region)
    x = parse_real(args.x)
    z = OmegaPoint.from_values(x, Fraction(1))
    res = cfe_direct(region, z, args.digits - 1, args.cap)
    report = cfe_convergents_report(res)
    conv = res.convergents()
    _emit(
        _gcf_json(
            res.digits,
            args.digits,
            {
                "region": region.describe(),
                "x": args.x,
                "convergents": [[c.P, c.Q] for c in conv],
                "verified": report["ok"],
            },
        )
    )
    return 0


def _write_csv(path, header, rows):
    fh = sys.stdout if path in (None, "-") else open(path, "w", newline="")
    try:
        w = csv.writer(fh)
        w.writerow(header)
        w.writerows(rows)
    finally:
        if fh is not sys.stdout:
            fh.close()


def cmd_orbit(args) -> int:
    x = parse_real(args.x)
    y = parse_real(args.y)
    z = OmegaPoint.from_values(x, y)
    if args.space == "shift":
        region = region_from_spec(args.region)
        pts = tau_orbit(region, z, args.n - 1, args.cap)
        rows = [
            (k, float(p.X), float(p.X), float(p.Y), float(p.Y)) for k, p in enumerate(pts)
        ]
        _write_csv(args.csv, ["n", "X_lo", "X_hi", "Y_lo", "Y_hi"], rows)
        return 0
    if args.region:
        from .induced import induced_step

        region = region_from_spec(args.region)
        rows = []
        cur = z
        for k in range(args.n):
            xe, ye = cur.x_enclosure(), cur.y_enclosure()
            c = cur.cell()
            rows.append(
                (
                    k,
                    float(xe.lo),
                    float(xe.hi),
                    float(ye.lo),
                    float(ye.hi),
                    "inf" if c.a is INF else c.a,
                    "inf" if c.b is INF else c.b,
                )
            )
            cur = induced_step(region, cur, args.cap).z_next
        _write_csv(args.csv, ["n", "x_lo", "x_hi", "y_lo", "y_hi", "cell_a", "cell_b"], rows)
        return 0
    rows = orbit_csv_rows(z, args.n)
    _write_csv(args.csv, ["n", "x_lo", "x_hi", "y_lo", "y_hi", "cell_a", "cell_b"], rows)
    return 0


def cmd_entropy(args) -> int:
    region = region_from_spec(args.region)
    ent, est = measure.entropy_of(
        region,
        tol=args.tol,
        method=args.method,
        seed=args.seed,
        samples=args.samples,
    )
    out = {"measure": est.value, "entropy": ent}
    out.update({k: v for k, v in est.as_dict().items() if k not in ("value",)})
    _emit(out)
    return 0


def cmd_region_info(args) -> int:
    region = region_from_spec(args.region)
    _emit(region.describe())
    return 0


def cmd_sweep_alpha(args) -> int:
    from .regions import build_alpha_region

    alphas = [s for s in args.alphas.split(",") if s]
    rows = []
    for i, atext in enumerate(alphas):
        alpha = parse_real(atext)
        region = build_alpha_region(alpha)
        est = measure.measure_of(region, seed=args.seed + i, samples=args.samples)
        ent = math.pi**2 / (6 * est.value)
        ent_err = ent * est.error_bound / est.value
        rows.append(
            (atext, est.value, est.error_bound, ent, ent_err, args.seed + i)
        )
    _write_csv(
        args.csv,
        ["alpha", "measure", "measure_err", "entropy", "entropy_err", "seed"],
        rows,
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cfrow", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    pe = sub.add_parser("expand", help="digit expansions of a real input")
    pe.add_argument("--kind", choices=["rcf", "farey", "lehner", "alpha"], required=True)
    pe.add_argument("--x", required=True)
    pe.add_argument("--alpha", default=None)
    pe.add_argument("--n", type=int, default=10)
    pe.set_defaults(func=cmd_expand)

    pc = sub.add_parser("contract", help="contract a GCF along an index plan")
    pc.add_argument("--gcf", required=True, help="JSON digits, a path, or - for stdin")
    pc.add_argument("--plan", required=True, help="comma-separated indices")
    pc.set_defaults(func=cmd_contract)

    pf = sub.add_parser("cfe", help="contracted Farey expansion over a region")
    pf.add_argument("--region", required=True)
    pf.add_argument("--x", required=True)
    pf.add_argument("--digits", type=int, default=10)
    pf.add_argument("--cap", type=int, default=10**6)
    pf.set_defaults(func=cmd_cfe)

    po = sub.add_parser("orbit", help="orbit track as CSV")
    po.add_argument("--region", default=None)
    po.add_argument("--x", required=True)
    po.add_argument("--y", default="1")
    po.add_argument("--n", type=int, default=50)
    po.add_argument("--cap", type=int, default=10**6)
    po.add_argument("--csv", default="-")
    po.add_argument("--space", choices=["plane", "shift"], default="plane")
    po.set_defaults(func=cmd_orbit)

    pn = sub.add_parser("entropy", help="measure and entropy of a region")
    pn.add_argument("--region", required=True)
    pn.add_argument("--tol", type=float, default=1e-8)
    pn.add_argument("--method", default="auto")
    pn.add_argument("--seed", type=int, default=DEFAULT_SEED)
    pn.add_argument("--samples", type=int, default=200_000)
    pn.set_defaults(func=cmd_entropy)

    pr = sub.add_parser("region-info", help="describe a region spec")
    pr.add_argument("--region", required=True)
    pr.set_defaults(func=cmd_region_info)

    ps = sub.add_parser("sweep-alpha", help="measure/entropy sweep over alphas")
    ps.add_argument("--alphas", required=True)
    ps.add_argument("--samples", type=int, default=100_000)
    ps.add_argument("--seed", type=int, default=DEFAULT_SEED)
    ps.add_argument("--csv", default="-")
    ps.set_defaults(func=cmd_sweep_alpha)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CfrowError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
