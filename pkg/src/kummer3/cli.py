"""Command line: classify | layer | tk | capitulate | batch."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict

from .class_imag import BoundExceeded, class_group_object
from .class_real import SizeLimit, real_field
from .capitulation import reduce_cubic
from .quadfield import make_pair
from .radicals import poly_str
from .records import (
    FixtureError,
    ResultRecord,
    compare,
    ingest_fixture,
    parse_cubic,
    report_to_dict,
)

log = logging.getLogger("kummer3")

# exit codes (stable; listed in the README)
EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2
EXIT_AMBIGUOUS = 3
EXIT_BOUND = 4
EXIT_INCONSISTENT = 5
EXIT_FIXTURE_MISMATCH = 6
EXIT_FIXTURE_PARSE = 7

TAG_NAMES = {
    "NonSplit": "non-split",
    "NormalSplit": "normal-split",
    "SpecialSplit": "special-split",
    "Trivial": "trivial",
}
CACHE_ENV = "KUMMER3_CACHE"


class UsageError(Exception):
    pass


def admissible(m: int) -> int:
    from .quadfield import is_squarefree

    if m < 2 or not is_squarefree(m) or m == 3:
        raise UsageError(f"m={m} must be squarefree, at least 2 and not 3")
    return m


def _cache_path(m: int, q_max: int, shortcut: bool, capitulate: bool):
    root = os.environ.get(CACHE_ENV)
    if not root:
        return None
    os.makedirs(root, exist_ok=True)
    tag = f"{m}-{q_max}-{int(shortcut)}-{int(capitulate)}"
    return os.path.join(root, f"layer-{tag}.json")


def layer_record(m: int, q_max: int = 10**5, shortcut: bool = True, capitulate: bool = False,
                 strict: bool = False) -> ResultRecord:
    """The full pipeline for one m, as a record (errors are recorded, not raised)."""
    from .layersearch import find_first_layer
    from .radicals import classify

    cache = _cache_path(m, q_max, shortcut, capitulate) if not strict else None
    if cache and os.path.exists(cache):
        with open(cache) as fh:
            return ResultRecord.from_json(fh.read())
    rec = ResultRecord(m=m)
    t0 = time.perf_counter()
    try:
        case = classify(m)
        rec.case, rec.program = case.tag, case.program
        k, kstar = make_pair(m)
        rec.H_k = class_group_object(k).group.invariants
        rec.H_kstar = real_field(kstar).class_group()[0].invariants
        t1 = time.perf_counter()
        res = find_first_layer(m, q_max=q_max, shortcut=shortcut)
        rec.timings["layer"] = round(time.perf_counter() - t1, 4)
        rec.val, rec.ram_status = res.val, res.ram_status
        rec.T_k, rec.otbp = list(res.torsion.T_k), res.torsion.otbp
        rec.delta, rec.sigma_flag, rec.method = res.delta, res.sigma_flag, res.method
        rec.q_interval = list(res.q_interval)
        rec.eliminated_by = [[J, q] for J, q in sorted(res.eliminated_by.items())]
        rec.accepted_primes = res.accepted_primes
        rec.one_root_events = [list(e) for e in res.one_root_events]
        rec.soundness_ok = res.soundness_ok
        if res.winner is not None:
            rec.Q_acyc = list(res.Q.coeffs)
            rec.Q_red = poly_str(reduce_cubic(res.Q.coeffs))
            rec.winner_index = res.winner.index
            rec.winner = res.winner.w.pari_str()
            if capitulate:
                from .capitulation import capitulate as run_cap

                t2 = time.perf_counter()
                rep = run_cap(m, Q=res.Q.coeffs, strict=strict, layer=res)
                rec.timings["capitulation"] = round(time.perf_counter() - t2, 4)
                rec.capitulation = report_to_dict(rep)
                rec.conditional = rep.conditional
    except (BoundExceeded, SizeLimit) as exc:
        rec.error = f"bound: {exc}"
    except Exception as exc:  # recorded per item
        rec.error = f"{type(exc).__name__}: {exc}"
    rec.timings["total"] = round(time.perf_counter() - t0, 4)
    if cache and rec.error is None:
        with open(cache, "w") as fh:
            fh.write(rec.to_json())
    return rec


# checks that failed inside the pipeline, as opposed to plain errors
INCONSISTENCIES = ("CaseInconsistency", "RayClassInconsistency", "NoSolution", "SigmaNotFound")


def _exit_code(rec: ResultRecord) -> int:
    if rec.error:
        if rec.error.startswith("bound"):
            return EXIT_BOUND
        if rec.error.split(":")[0] in INCONSISTENCIES:
            return EXIT_INCONSISTENT
        return EXIT_ERROR
    if rec.sigma_flag:
        return EXIT_AMBIGUOUS
    return EXIT_OK


# -- subcommands --------------------------------------------------------------------


def cmd_classify(args) -> int:
    from .radicals import classify

    c = classify(args.m)
    print(f"{TAG_NAMES[c.tag]}\t{c.program}")
    return EXIT_OK


def _fixture_for(path, m):
    recs = [r for r in ingest_fixture(path) if r.m == m]
    if not recs:
        raise UsageError(f"no fixture record for m={m} in {path}")
    return recs[0]


def cmd_layer(args) -> int:
    rec = layer_record(args.m, q_max=args.qmax, shortcut=not args.no_shortcut,
                       capitulate=args.capitulate, strict=args.strict_minkowski)
    out = rec.to_dict()
    code = _exit_code(rec)
    if args.fixture:
        diffs = compare(rec, _fixture_for(args.fixture, args.m))
        out["fixture_diff"] = diffs
        if diffs and code == EXIT_OK:
            code = EXIT_FIXTURE_MISMATCH
    print(json.dumps(out, sort_keys=True))
    if code == EXIT_AMBIGUOUS:
        print(f"m={args.m}: {rec.delta} radicals survive q <= {args.qmax}; retry with a larger --qmax",
              file=sys.stderr)
    return code


def cmd_tk(args) -> int:
    from .quadfield import QuadField
    from .rayclass import ray_class_group, t_k

    F = QuadField(args.m)
    T = t_k(F)
    top = args.nu or T.nu
    for nu in range(1, top + 1):
        print(f"nu={nu}  H_k(3^nu)={ray_class_group(F, nu).invariants}")
    print(f"H_k={class_group_object(F).group.invariants}  T_k={T.T_k}  #T_k^bp={T.otbp}  "
          f"Val={T.Val}  k_1^ac={T.ram_status}")
    return EXIT_OK


def cmd_capitulate(args) -> int:
    from .capitulation import capitulate, capitulation_verdict, full_kernel_from_rows, verdict_from
    from .rayclass import t_k
    from .quadfield import QuadField

    if args.fixture and args.use_fixture_rows:
        # fields beyond the class-group bound: verdict from the replayed rows
        fx = _fixture_for(args.fixture, args.m)
        if fx.H_K is None or fx.norm_rows is None:
            raise UsageError("fixture needs H_(k_1^acyc) and norm_rows")
        T = t_k(QuadField(args.m))
        image, ref, kern, nverdict = capitulation_verdict(fx.norm_rows, fx.H_K, T.h3, T.ram_status)
        kfull = full_kernel_from_rows(image, T.h3, T.ram_status)
        print(json.dumps({"m": args.m, "source": "fixture", "image_order3": image,
                          "reference_order": ref, "norm_kernel_order": kern,
                          "norm_verdict": nverdict, "kernel_order": kfull,
                          "verdict": verdict_from(T.h3 // kfull, kfull),
                          "k_1^ac": T.ram_status}, sort_keys=True))
        return EXIT_OK
    Q = parse_cubic(args.Q) if args.Q else None
    rep = capitulate(args.m, Q=Q, strict=args.strict_minkowski)
    print(json.dumps(asdict(rep), sort_keys=True))
    return EXIT_OK


def _parse_ms(args) -> list[int]:
    ms = []
    if args.range:
        a, b = args.range
        ms.extend(range(a, b + 1))
    if args.list:
        for tok in args.list.replace(",", " ").split():
            ms.append(int(tok))
    if args.list_file:
        with open(args.list_file) as fh:
            for tok in fh.read().replace(",", " ").split():
                ms.append(int(tok))
    from .quadfield import is_squarefree
    return [m for m in ms if m >= 2 and m != 3 and is_squarefree(m)]


def _batch_one(job):
    m, q_max, shortcut, capitulate, strict, case_filter = job
    if case_filter:
        from .radicals import classify
        try:
            if classify(m).tag not in case_filter:
                return None
        except Exception as exc:
            return ResultRecord(m=m, error=f"{type(exc).__name__}: {exc}")
    return layer_record(m, q_max, shortcut, capitulate, strict)


def cmd_batch(args) -> int:
    ms = _parse_ms(args)
    cases = None
    if args.case:
        inv = {v: k for k, v in TAG_NAMES.items()}
        cases = {inv.get(c, c) for c in args.case}
    jobs = [(m, args.qmax, not args.no_shortcut, args.capitulate, args.strict_minkowski, cases)
            for m in ms]
    sigma, errors, n = [], [], 0
    out = open(args.out, "w") if args.out else sys.stdout
    try:
        if args.jobs > 1:
            pool = ProcessPoolExecutor(max_workers=args.jobs)
            results = pool.map(_batch_one, jobs, chunksize=8)
        else:
            pool = None
            results = map(_batch_one, jobs)
        for rec in results:  # single writer
            if rec is None:
                continue
            out.write(rec.to_json() + "\n")
            n += 1
            if rec.error:
                errors.append(rec.m)
            elif rec.sigma_flag:
                sigma.append(rec.m)
        if pool:
            pool.shutdown()
    finally:
        if args.out:
            out.close()
    print(f"records={n} ListSigma={sigma} errors={errors}", file=sys.stderr)
    return EXIT_OK


# -- entry point -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kummer3", description=__doc__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="cmd", required=True)

    def with_m(sp):
        sp.add_argument("-m", type=int, required=True)

    def with_pipeline(sp):
        sp.add_argument("--qmax", type=int, default=10**5)
        sp.add_argument("--no-shortcut", action="store_true")
        sp.add_argument("--capitulate", action="store_true")
        sp.add_argument("--strict-minkowski", action="store_true",
                        help="certify the class groups of K (slow)")

    sp = sub.add_parser("classify", help="case tag of k = Q(sqrt(-m))")
    with_m(sp)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("layer", help="first layer of the anti-cyclotomic Z_3-extension")
    with_m(sp)
    with_pipeline(sp)
    sp.add_argument("--fixture", help="JSONL fixture to compare against")
    sp.set_defaults(func=cmd_layer)

    sp = sub.add_parser("tk", help="ray class groups mod 3^nu and T_k")
    with_m(sp)
    sp.add_argument("--nu", type=int)
    sp.set_defaults(func=cmd_tk)

    sp = sub.add_parser("capitulate", help="capitulation of H_k in the first layer")
    with_m(sp)
    sp.add_argument("--Q", help="the cubic, e.g. 'x^3-93*x-458' (default: search it)")
    sp.add_argument("--fixture")
    sp.add_argument("--use-fixture-rows", action="store_true",
                    help="take H_K and the norm rows from the fixture")
    sp.add_argument("--strict-minkowski", action="store_true")
    sp.set_defaults(func=cmd_capitulate)

    sp = sub.add_parser("batch", help="run the pipeline on many m, JSONL output")
    sp.add_argument("--range", type=int, nargs=2, metavar=("A", "B"))
    sp.add_argument("--list", help="comma or space separated m values")
    sp.add_argument("--list-file")
    sp.add_argument("--case", action="append",
                    help="keep only this case (non-split, normal-split, special-split, trivial)")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--out")
    with_pipeline(sp)
    sp.set_defaults(func=cmd_batch)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if hasattr(args, "m") and args.m is not None:
            admissible(args.m)
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FixtureError as exc:
        print(f"fixture error: {exc}", file=sys.stderr)
        return EXIT_FIXTURE_PARSE
    except (BoundExceeded, SizeLimit) as exc:
        print(f"bound exceeded: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except Exception as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT if type(exc).__name__ in INCONSISTENCIES else EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
