"""Command-line interface.

Verbs: cusps, order, eta, group, verify, batch.  Exit codes: 0 success,
1 usage/parse error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from concurrent.futures import ProcessPoolExecutor

from .cusps import enumerate_cusps, width
from .divisors import CuspDivisor, from_dict
from .etalinalg import eta_qexpansion, format_qexpansion
from .intarith import divisors
from .orderengine import eta_certificate, profile, profile_to_json
from .structure import compute_group, crosscheck, group_to_json

MAX_LEVEL = 10 ** 6

_TERM = re.compile(r"([+-]?\d+)\*\((\d+)\)")


def parse_divisor_spec(text: str, n: int) -> CuspDivisor:
    """Parse "c*(d)" terms joined by commas or +/-, or the JSON object form
    {"N": ..., "coeffs": {"d": c, ...}}."""
    text = text.strip()
    if text.startswith("{"):
        obj = json.loads(text)
        if obj.get("N", n) != n:
            raise ValueError(f"divisor level {obj.get('N')} does not match N={n}")
        coeffs = {int(d): int(c) for d, c in obj["coeffs"].items()}
    else:
        compact = text.replace(",", "+").replace(" ", "")
        coeffs: dict = {}
        pos = 0
        for m in _TERM.finditer(compact):
            gap = compact[pos: m.start()]
            if gap not in ("", "+"):
                raise ValueError(f"parse error at position {pos}: {gap!r}")
            c, d = int(m.group(1)), int(m.group(2))
            coeffs[d] = coeffs.get(d, 0) + c
            pos = m.end()
        if pos != len(compact) or not compact:
            raise ValueError(f"parse error at position {pos}: {compact[pos:]!r}")
    for d in coeffs:
        if d <= 0 or n % d:
            raise ValueError(f"{d} does not divide {n}")
    return from_dict(n, coeffs)


def _divisor_to_json(D: CuspDivisor) -> dict:
    return {"N": D.n, "coeffs": {str(d): c for d, c in D.as_dict().items()}}


def cmd_cusps(args) -> int:
    cs = enumerate_cusps(args.N)
    if args.json:
        out = [{"cusp": str(c), "x": c.x, "d": c.d, "width": width(c)} for c in cs]
        print(json.dumps({"N": args.N, "count": len(cs), "cusps": out}))
    else:
        print(f"X0({args.N}): {len(cs)} cusps")
        for c in cs:
            print(f"  {c}  width {width(c)}")
    return 0


def cmd_order(args) -> int:
    D = parse_divisor_spec(args.divisor, args.N)
    prof = profile(D)
    if args.json:
        print(json.dumps({"N": args.N, "divisor": _divisor_to_json(D),
                          **profile_to_json(prof)}))
    else:
        print(f"degree {prof.degree}")
        print(f"V    = {list(prof.V)}")
        print(f"GCD  = {prof.gcd_value}")
        print(f"Vbar = {list(prof.Vbar) if prof.Vbar else None}")
        print(f"Pw   = {prof.pw}")
        print(f"h    = {prof.h}")
        print(f"order = {prof.order}")
    return 0


def cmd_eta(args) -> int:
    D = parse_divisor_spec(args.divisor, args.N)
    prof = profile(D)
    if prof.degree != 0:
        print("eta certificates require a degree-0 divisor", file=sys.stderr)
        return 1
    r = eta_certificate(D)
    lead, series = eta_qexpansion(args.N, r, args.qexp)
    if args.json:
        print(json.dumps({"N": args.N, "order": str(prof.order),
                          "exponents": {str(d): e for d, e in zip(divisors(args.N), r) if e},
                          "qexp": format_qexpansion(lead, series)}))
    else:
        print(f"order = {prof.order}")
        print("exponents:", {d: e for d, e in zip(divisors(args.N), r) if e})
        print("q-expansion:", format_qexpansion(lead, series))
    return 0


def cmd_group(args) -> int:
    G = compute_group(args.N)
    if args.json:
        print(json.dumps(group_to_json(G)))
        return 0
    if not G.cyclic_factors:
        print(f"C({args.N}) is trivial")
        return 0
    desc = " x ".join(f"Z/{d}" for d in G.invariant_factors)
    print(f"C({args.N}) = {desc}  (order {G.group_order})")
    for lab, vec, o in G.cyclic_factors:
        print(f"  {lab}: order {o}, divisor {vec}")
    return 0


def cmd_verify(args) -> int:
    report = crosscheck(args.N)
    if args.json:
        print(json.dumps(report))
    else:
        status = "pass" if report["pass"] else "FAIL"
        invs = " x ".join(f"Z/{d}" for d in report["invariant_factors"]) or "trivial"
        print(f"N={args.N}: {status}, C = {invs}")
        for m in report["mismatches"]:
            print(f"  mismatch: {m}")
    return 0 if report["pass"] else 2


def _cache_path(out):
    if out:
        return out
    base = os.environ.get("CUSPIDAL_CACHE_DIR", os.path.join(os.path.expanduser("~"),
                                                             ".cache", "cuspidal"))
    os.makedirs(base, exist_ok=True)
    return os.path.join(base, "batch.jsonl")


def cmd_batch(args) -> int:
    path = _cache_path(args.out)
    cached = {}
    if os.path.exists(path) and not args.force:
        with open(path) as fh:
            for line in fh:
                line = line.strip()
                if line:
                    rec = json.loads(line)
                    cached[rec["N"]] = rec
    todo = [n for n in range(1, args.max + 1) if n not in cached]
    if todo:
        if args.jobs > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as ex:
                for rec in ex.map(crosscheck, todo):
                    cached[rec["N"]] = rec
        else:
            for n in todo:
                cached[n] = crosscheck(n)
    records = [cached[n] for n in sorted(cached) if n <= args.max]
    with open(path, "w") as fh:
        for rec in records:
            fh.write(json.dumps(rec, sort_keys=True) + "\n")
    npass = sum(1 for rec in records if rec["pass"])
    print(f"{npass}/{len(records)} pass (results in {path})")
    if npass != len(records):
        for rec in records:
            if not rec["pass"]:
                print(f"  FAIL N={rec['N']}")
        return 2
    return 0


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="cuspidal",
                                 description="Rational cuspidal divisor class groups of X0(N)")
    sub = ap.add_subparsers(dest="verb", required=True)

    def add(name, func, needs_n=True):
        p = sub.add_parser(name)
        if needs_n:
            p.add_argument("N", type=int)
        p.add_argument("--json", action="store_true")
        p.set_defaults(func=func)
        return p

    add("cusps", cmd_cusps)
    p = add("order", cmd_order)
    p.add_argument("--divisor", required=True)
    p = add("eta", cmd_eta)
    p.add_argument("--divisor", required=True)
    p.add_argument("--qexp", type=int, default=20)
    add("group", cmd_group)
    add("verify", cmd_verify)
    p = add("batch", cmd_batch, needs_n=False)
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", default=None)
    p.add_argument("--force", action="store_true")

    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 1 if e.code else 0
    if getattr(args, "N", 1) < 1 or getattr(args, "N", 1) > MAX_LEVEL:
        print(f"N must be in [1, {MAX_LEVEL}]", file=sys.stderr)
        return 1
    try:
        return args.func(args)
    except (ValueError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
