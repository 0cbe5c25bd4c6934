"""Command-line front end.

Subcommands: zeta, power-sum, hpoly, omega, period-matrix, verify,
find-relations, reconstruct.  Exit codes: 0 success/holds, 1 identity or
comparison failure (certificate printed), 2 usage or side-condition error,
3 insufficient precision/lattice capacity.

Output is deterministic for a given configuration; --fixture compares the
canonical JSON output against a stored file (writing it on first use).
"""

import argparse
import os
import sys

from .errors import (InsufficientPrecisionError, LatticeCapError,
                     NonconvergentEvaluationError, SideConditionError,
                     BudgetExceededError)
from .fq import make_field_context
from .carlitz import CarlitzCache
from .series import series_eq
from . import jsonio, mzv, motive, relations
from .mzv import LinearPreorder
from .powersums import (power_sum_auto, power_sum_brute, power_sum_formula,
                        power_sum_interp, power_sum_delayed)
from .reconstruct import rational_reconstruct
from .series import embed_ratfunc


def _parse_ints(text):
    return tuple(int(x) for x in text.split(",") if x.strip() != "")


def _build_parser():
    ap = argparse.ArgumentParser(
        prog="carlitz-mzv",
        description="Exact multizeta arithmetic over F_q[t].")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--p", type=int, required=True,
                        help="characteristic (prime)")
        sp.add_argument("--m", type=int, default=1,
                        help="extension degree, q = p^m")
        sp.add_argument("--prec", type=int, default=100,
                        help="series precision N (u-adic digits)")
        sp.add_argument("--json", action="store_true",
                        help="emit canonical JSON instead of text")
        sp.add_argument("--fixture", help="golden-file path: compare the "
                        "canonical JSON output (written on first use)")
        sp.add_argument("--jobs", type=int, default=1,
                        help="accepted for compatibility; evaluation is "
                        "serial and deterministic")

    sp = sub.add_parser("zeta", help="multizeta / degenerate / preorder value")
    common(sp)
    sp.add_argument("--s", required=True, help="composition, e.g. 2,2")
    sp.add_argument("--blocks", help='preorder blocks, e.g. "3|1,2" '
                    "(smallest degree block first)")
    sp.add_argument("--jumps", help='jump positions, e.g. "1,2" '
                    '(use "" for the totally degenerate value)')

    sp = sub.add_parser("power-sum", help="S_d(s) by a selectable method")
    common(sp)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--method", default="auto",
                    choices=["auto", "brute", "interp", "formula", "delayed",
                             "cross-check"])
    sp.add_argument("--w", type=int, default=1,
                    help="delay for --method delayed")

    sp = sub.add_parser("hpoly", help="interpolation polynomial H_s")
    common(sp)
    sp.add_argument("--s", type=int, required=True)

    sp = sub.add_parser("omega", help="the function Omega as a T-series")
    common(sp)
    sp.add_argument("--order", type=int, default=8, help="T-truncation order")

    sp = sub.add_parser("period-matrix",
                        help="normalized period matrix and Z-expressions")
    common(sp)
    sp.add_argument("--s", required=True, help="composition, e.g. 2,1")

    sp = sub.add_parser("verify", help="check an identity instance")
    common(sp)
    sp.add_argument("--id", required=True,
                    help="one of: " + ", ".join(relations.CATALOG_IDS)
                    + ", sum-shuffle, shuffle-product")
    sp.add_argument("--s", help="composition / factor list (see below); for "
                    'shuffle-product use "s0;s1", e.g. "2;1,1"')
    sp.add_argument("--blocks", help='for shuffle-product: "blocks0;blocks1"')
    sp.add_argument("--i", type=int, help="collapse position")
    sp.add_argument("--b", type=int, help="digit-identity parameter b")
    sp.add_argument("--k", type=int, help="digit-identity parameter k")
    sp.add_argument("--d", type=int, help="power-sum level range bound")

    sp = sub.add_parser("find-relations",
                        help="F_p-linear relations in one weight")
    common(sp)
    sp.add_argument("--weight", type=int, required=True)
    sp.add_argument("--max-depth", type=int, default=2)

    sp = sub.add_parser("reconstruct",
                        help="rational reconstruction of a stored series")
    common(sp)
    sp.add_argument("--num-deg", type=int, default=None)
    sp.add_argument("--den-deg", type=int, default=None)
    return ap


def _emit(args, payload_obj, text):
    """Print text or JSON; with --fixture, compare/store the JSON form.
    Returns the exit code."""
    blob = jsonio.dumps(payload_obj)
    if args.fixture:
        if os.path.exists(args.fixture):
            with open(args.fixture) as fh:
                stored = fh.read()
            if stored != blob:
                print("fixture mismatch:", args.fixture, file=sys.stderr)
                return 1
            print("fixture match:", args.fixture)
            return 0
        with open(args.fixture, "w") as fh:
            fh.write(blob)
        print("fixture written:", args.fixture)
        return 0
    sys.stdout.write(blob if args.json else text + "\n")
    return 0


def _series_payload(args, x):
    return _emit(args, jsonio.series_to_obj(x), jsonio.format_series(x))


def run(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        ctx = make_field_context(args.p, args.m)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    cache = CarlitzCache(ctx)
    N = args.prec
    try:
        return _dispatch(args, cache, N)
    except (SideConditionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (InsufficientPrecisionError, LatticeCapError,
            NonconvergentEvaluationError) as exc:
        print(f"insufficient precision: {exc}", file=sys.stderr)
        return 3
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _dispatch(args, cache, N):
    cmd = args.command

    if cmd == "zeta":
        s = _parse_ints(args.s)
        if args.blocks is not None:
            val = mzv.zeta_rho(cache, s, LinearPreorder.parse(args.blocks), N)
        elif args.jumps is not None:
            val = mzv.zeta_I(cache, s, set(_parse_ints(args.jumps)), N)
        else:
            val = mzv.zeta(cache, s, N)
        return _series_payload(args, val)

    if cmd == "power-sum":
        d, s = args.d, args.s
        if args.method == "cross-check":
            a = power_sum_brute(cache, d, s, N)
            b = power_sum_interp(cache, d, s, N)
            if not series_eq(a, b, prec=min(a.prec, b.prec)):
                print("method mismatch: brute vs interp", file=sys.stderr)
                return 1
            return _series_payload(args, a)
        if args.method == "brute":
            val = power_sum_brute(cache, d, s, N)
        elif args.method == "interp":
            val = power_sum_interp(cache, d, s, N)
        elif args.method == "formula":
            rf = power_sum_formula(cache, d, s)
            if rf is None:
                print("error: no closed form applies to this (d, s)",
                      file=sys.stderr)
                return 2
            val = embed_ratfunc(rf, N)
        elif args.method == "delayed":
            val = power_sum_delayed(cache, d, s, args.w, N)
        else:
            val = power_sum_auto(cache, d, s, N)
        return _series_payload(args, val)

    if cmd == "hpoly":
        H = cache.H(args.s)
        obj = {"s": args.s,
               "coefficients": [{"Tdeg": j, "poly": [list(c)
                                                     for c in h.coeffs()]}
                                for j, h in enumerate(H)]}
        text = " + ".join(
            (f"({h.format()})" if h.degree > 0 else h.format())
            + (f"*T^{j}" if j > 1 else "*T" if j == 1 else "")
            for j, h in enumerate(H) if not h.is_zero())
        return _emit(args, obj, f"H_{args.s} = {text}")

    if cmd == "omega":
        om = cache.omega(args.order, N)
        obj = {"order": args.order,
               "coefficients": [jsonio.series_to_obj(c) for c in om.coeffs]}
        text = "\n".join(f"T^{k}: {jsonio.format_series(c, max_terms=6)}"
                         for k, c in enumerate(om.coeffs))
        return _emit(args, obj, text)

    if cmd == "period-matrix":
        s = _parse_ints(args.s)
        np_ = motive.period_matrix(cache, s, N)
        r = np_.r
        col = np_.z_column
        obj = {"s": list(s),
               "psiNormalized": [[jsonio.series_to_obj(np_.psi_norm[i][j])
                                  for j in range(i + 1)]
                                 for i in range(r + 1)],
               "periodNormalized": [[jsonio.series_to_obj(np_.p_norm[i][j])
                                     for j in range(i + 1)]
                                    for i in range(r + 1)],
               "zExpression": [[motive.z_format(
                   motive.z_shift(col[i - j + 1], j))
                   for j in range(i + 1)] for i in range(r + 1)]}
        text = "\n".join(
            f"p'[{i+1}][{j+1}] = {obj['zExpression'][i][j]}"
            for i in range(r + 1) for j in range(i + 1))
        return _emit(args, obj, text)

    if cmd == "verify":
        return _run_verify(args, cache, N)

    if cmd == "find-relations":
        rels = relations.find_relations(cache, args.weight, args.max_depth, N)
        basis = relations.enumerate_monomials(args.weight, args.max_depth)
        obj = {"weight": args.weight,
               "basis": [[{"blocks": [list(b) for b in a[2]],
                           "s": list(a[1])} for a in mono]
                         for mono in basis],
               "relations": [list(r.coeffs) for r in rels],
               "verifiedAtPrecision": 2 * N}
        text = "\n".join(r.format() for r in rels) or "no relations"
        return _emit(args, obj, text)

    if cmd == "reconstruct":
        if not args.fixture:
            print("error: reconstruct needs --fixture with a stored series",
                  file=sys.stderr)
            return 2
        x = jsonio.series_from_obj(jsonio.load_path(args.fixture))
        rf = rational_reconstruct(x, args.num_deg, args.den_deg)
        if rf is None:
            print("not found")
            return 1
        print(f"({rf.num.format()}) / ({rf.den.format()})")
        return 0

    raise ValueError(f"unknown command {cmd!r}")


def _run_verify(args, cache, N):
    id = args.id
    if id == "sum-shuffle":
        inst = relations.verify_sum_shuffle(cache, _parse_ints(args.s), N)
    elif id == "shuffle-product":
        try:
            s0, s1 = args.s.split(";")
            b0, b1 = args.blocks.split(";")
        except (AttributeError, ValueError):
            raise ValueError(
                'shuffle-product needs --s "s0;s1" and --blocks "b0;b1"')
        inst = relations.verify_shuffle_product(
            cache, _parse_ints(s0), LinearPreorder.parse(b0),
            _parse_ints(s1), LinearPreorder.parse(b1), N)
    elif id in relations.CATALOG_IDS:
        params = {}
        if args.s is not None:
            params["s"] = (_parse_ints(args.s) if "," in args.s or
                           id not in ("even-rational",) else int(args.s))
        if args.i is not None:
            params["i"] = args.i
        if args.b is not None:
            params["b"] = args.b
        if args.k is not None:
            params["k"] = args.k
        if args.d is not None:
            params["dmax"] = args.d
        inst = relations.verify_catalog(cache, id, params, N)
    else:
        raise ValueError(f"unknown identity id {id!r}")
    if inst.holds:
        print(f"{inst.id}: holds to precision {inst.N}"
              + (f" ({inst.detail})" if isinstance(inst.detail, str)
                 and inst.detail else ""))
        return 0
    print(f"{inst.id}: FAILS; first nonzero residual at scaled exponent "
          f"{inst.certificate}", file=sys.stderr)
    return 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
