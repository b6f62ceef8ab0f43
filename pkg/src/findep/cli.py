"""Command-line front end: exact law dumps, samplers, verification suites.

Conventions: data goes to stdout (or ``--out``), logs to stderr. Exit codes
are stable: 0 success, 1 verification/GoF failure, 2 usage error, 3 resource
budget exceeded. Flags take precedence over FINDEP_* environment variables,
which take precedence over built-in defaults.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Optional

from . import __version__
from .analysis import chi_square_gof
from .dist import ExactDist
from .errors import BudgetExceeded
from .growth import RngStream, eden_sample, necklace_sample
from .recurrence import DEFAULT_BUDGET, cycle_law, is_theorem_grade, line_window_law
from .suites import SUITES, run_all, run_suite

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

_SCHEMA_DIST = "findep.dist/1"
_SCHEMA_SAMPLES = "findep.samples/1"
_SCHEMA_GOF = "findep.gof/1"
_SCHEMA_REPORT = "findep.report/1"


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        print(f"warning: ignoring non-integer {name}={raw!r}", file=sys.stderr)
        return default


def _env_float(name: str, default: float) -> float:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return float(raw)
    except ValueError:
        print(f"warning: ignoring non-numeric {name}={raw!r}", file=sys.stderr)
        return default


def _default_threads() -> int:
    return _env_int("FINDEP_THREADS", os.cpu_count() or 1)


def _write(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_dist(d: ExactDist, meta: dict, fmt: str, out: Optional[str]) -> None:
    entries = d.to_json_entries()
    if fmt == "csv":
        lines = ["state,num,den"]
        lines += [f"{e['state']},{e['num']},{e['den']}" for e in entries]
        _write("\n".join(lines) + "\n", out)
    else:
        doc = {"schema": _SCHEMA_DIST, **meta, "total_states": len(entries), "states": entries}
        _write(json.dumps(doc, indent=2) + "\n", out)


def _cmd_exact(args: argparse.Namespace) -> int:
    budget = args.budget if args.budget is not None else _env_int("FINDEP_BUDGET", DEFAULT_BUDGET)
    if args.law == "cycle":
        d = cycle_law(args.n, args.q, budget=budget)
        meta = {"kind": "cycle", "n": args.n, "q": args.q}
    else:
        d = line_window_law(args.n, args.k, args.q, budget=budget)
        meta = {
            "kind": "line-window",
            "n": args.n,
            "k": args.k,
            "q": args.q,
            "theorem_grade": is_theorem_grade(args.k, args.q),
        }
    _emit_dist(d, meta, args.format, args.out)
    return EXIT_OK


def _sample_words(sampler, n, q, reps, seed, threads):
    """Replicate r always uses stream r, so output is independent of threads."""

    def one(rep: int):
        return sampler(n, q, RngStream(seed, rep))

    if threads <= 1 or reps < 2:
        return [one(r) for r in range(reps)]
    chunk = (reps + threads - 1) // threads
    ranges = [range(i, min(i + chunk, reps)) for i in range(0, reps, chunk)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = pool.map(lambda rr: [one(r) for r in rr], ranges)
        return [w for part in parts for w in part]


def _cmd_sample(args: argparse.Namespace) -> int:
    seed = args.seed if args.seed is not None else _env_int("FINDEP_SEED", 0)
    alpha = args.alpha if args.alpha is not None else _env_float("FINDEP_ALPHA", 0.001)
    budget = args.budget if args.budget is not None else _env_int("FINDEP_BUDGET", DEFAULT_BUDGET)
    threads = args.threads if args.threads is not None else _default_threads()
    sampler = necklace_sample if args.sampler == "necklace" else eden_sample
    words = _sample_words(sampler, args.n, args.q, args.reps, seed, threads)

    sample_meta = {
        "schema": _SCHEMA_SAMPLES,
        "sampler": args.sampler,
        "n": args.n,
        "q": args.q,
        "reps": args.reps,
        "seed": seed,
    }
    if not args.gof:
        if args.format == "json":
            doc = {**sample_meta, "words": [w.text() for w in words]}
            _write(json.dumps(doc, indent=2) + "\n", args.out)
        elif args.format == "csv":
            _write("word\n" + "".join(w.text() + "\n" for w in words), args.out)
        else:
            _write("".join(w.text() + "\n" for w in words), args.out)
        return EXIT_OK

    # With --gof the report is the data product; samples are only persisted
    # if --out was given.
    if args.out:
        _write("".join(w.text() + "\n" for w in words), args.out)
    counts: dict = {}
    for w in words:
        counts[w] = counts.get(w, 0) + 1
    exact = cycle_law(args.n, args.q, budget=budget)
    report = chi_square_gof(counts, exact, alpha=alpha)
    doc = {"schema": _SCHEMA_GOF, **{k: v for k, v in sample_meta.items() if k != "schema"},
           **report.to_json_obj()}
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    return EXIT_OK if report.passed else EXIT_VERIFY_FAIL


def _case_params(case: dict) -> str:
    skip = {"passed", "counterexample"}
    parts = [
        f"{k}={v}" for k, v in case.items()
        if k not in skip and isinstance(v, (int, str, bool))
    ]
    return ";".join(parts)


def _report_csv(report: dict) -> str:
    lines = ["suite,case,passed"]
    subs = report.get("reports", [report])
    for sub in subs:
        for case in sub.get("cases", []):
            lines.append(f"{sub['suite']},{_case_params(case)},{case['passed']}")
    return "\n".join(lines) + "\n"


def _suite_kwargs(args: argparse.Namespace) -> dict:
    name = args.suite
    kw: dict = {}
    if name == "kdep":
        if args.n is not None or args.q is not None or args.k is not None:
            # explicit single-case mode: verify (or refute) the requested range
            n = args.n if args.n is not None else 6
            q = args.q if args.q is not None else 3
            k = args.k if args.k is not None else (2 if q == 3 else 1)
            return {"_single": (n, q, k)}
        if args.max_n is not None:
            kw["ns"] = range(5, args.max_n + 1)
    elif name == "partition":
        if args.max_n is not None:
            kw["max_n"] = args.max_n
    elif name in ("mobius", "shift", "restriction", "kernels"):
        if args.max_n is not None:
            kw["max_n"] = args.max_n
    elif name == "symmetry":
        if args.max_n is not None:
            kw["ns"] = range(3, args.max_n + 1)
    elif name == "window":
        if args.max_n is not None:
            kw["max_m"] = args.max_n
    elif name == "coupling":
        if args.max_n is not None:
            kw["ns"] = range(3, args.max_n + 1)
    elif name == "marginals":
        if args.max_n is not None:
            kw["max_n"] = min(args.max_n, 8)
            kw["max_n_bits"] = min(args.max_n, 9)
            kw["max_window"] = min(args.max_n, 6)
    return kw


def _cmd_verify(args: argparse.Namespace) -> int:
    if args.suite == "all":
        report = run_all(max_n=args.max_n)
    else:
        kw = _suite_kwargs(args)
        single = kw.pop("_single", None)
        if single is not None:
            from .analysis import k_dependence_counterexample

            n, q, k = single
            cex = k_dependence_counterexample(cycle_law(n, q), k)
            report = {
                "suite": "kdep",
                "passed": cex is None,
                "cases": [
                    {
                        "n": n,
                        "q": q,
                        "k": k,
                        "passed": cex is None,
                        "counterexample": None
                        if cex is None
                        else {"s1": cex[0], "s2": cex[1]},
                    }
                ],
                "counterexample": None if cex is None else {"s1": cex[0], "s2": cex[1]},
            }
        else:
            report = run_suite(args.suite, **kw)
    if args.format == "csv":
        _write(_report_csv(report), args.out)
    else:
        doc = {"schema": _SCHEMA_REPORT, **report}
        _write(json.dumps(doc, indent=2) + "\n", args.out)
    if not report["passed"]:
        cex = report.get("counterexample")
        if cex is None and "reports" in report:
            for sub in report["reports"]:
                if not sub["passed"]:
                    cex = {"suite": sub["suite"], "counterexample": sub["counterexample"]}
                    break
        print(f"verification failed; minimal counterexample: {cex}", file=sys.stderr)
        return EXIT_VERIFY_FAIL
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="findep",
        description="Exact laws, samplers, and verification for finitely "
        "dependent proper colorings of cycles and lines.",
        epilog="Environment: FINDEP_BUDGET, FINDEP_THREADS, FINDEP_SEED, "
        "FINDEP_ALPHA supply defaults; flags override. Exit codes: 0 ok, "
        "1 verification failure, 2 usage error, 3 budget exceeded.",
    )
    parser.add_argument("--version", action="version", version=f"findep {__version__}")
    parser.add_argument(
        "--threads",
        type=int,
        default=None,
        help="bound worker concurrency (default: available parallelism); "
        "results are independent of this value",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_exact = sub.add_parser("exact", help="dump an exact law")
    sub_exact = p_exact.add_subparsers(dest="law", required=True)
    for law in ("cycle", "line"):
        p = sub_exact.add_parser(law)
        p.add_argument("--n", type=int, required=True, help="word length")
        p.add_argument("--q", type=int, required=True, help="number of colors")
        if law == "line":
            p.add_argument("--k", type=int, required=True, help="dependence range")
        p.add_argument("--budget", type=int, default=None,
                       help=f"max states to enumerate (default {DEFAULT_BUDGET})")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", default=None, help="write to file instead of stdout")
        p.set_defaults(func=_cmd_exact)

    p_sample = sub.add_parser("sample", help="draw sampler replicates")
    p_sample.add_argument("sampler", choices=("necklace", "eden"))
    p_sample.add_argument("--n", type=int, required=True)
    p_sample.add_argument("--q", type=int, required=True)
    p_sample.add_argument("--reps", type=int, required=True)
    p_sample.add_argument("--seed", type=int, default=None)
    p_sample.add_argument("--gof", action="store_true",
                          help="chi-square the samples against the exact law; "
                          "exit 0 on pass, 1 on fail")
    p_sample.add_argument("--alpha", type=float, default=None,
                          help="GoF significance level (default 0.001)")
    p_sample.add_argument("--budget", type=int, default=None)
    p_sample.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p_sample.add_argument("--out", default=None)
    p_sample.set_defaults(func=_cmd_sample)

    p_verify = sub.add_parser("verify", help="run exact verification suites")
    p_verify.add_argument("suite", choices=sorted(SUITES) + ["all"])
    p_verify.add_argument("--max-n", type=int, default=None, dest="max_n")
    p_verify.add_argument("--n", type=int, default=None)
    p_verify.add_argument("--q", type=int, default=None)
    p_verify.add_argument("--k", type=int, default=None)
    p_verify.add_argument("--format", choices=("json", "csv"), default="json")
    p_verify.add_argument("--out", default=None)
    p_verify.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
