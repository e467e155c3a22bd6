"""Command-line entry point: ``selberg eval|phi|j|jack|validate|errata``.

Exit codes: 0 ok, 1 usage or domain error, 2 disagreement between methods
(or a failed check), 3 a brute-force resource guard was hit.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import errata as errata_mod
from .errors import ConsistencyError, DomainError, ResourceLimitError, UnsupportedParameterError
from .jackeval import check_lemma33, closed_form, degree_bound, theorem2_eval
from .oracle import oracle_I, oracle_J
from .perm import check_lemma21, phi_det_d2, phi_eq21, theorem1_eval
from .recursion import eval_I_via_recursion, recursion_eval
from .report import EvaluationReport, MethodResult
from .symfunc import DEFAULT_CACHE, Partition, jack, monomial

log = logging.getLogger("selberg")

EXIT_OK, EXIT_USAGE, EXIT_DISAGREE, EXIT_RESOURCE = 0, 1, 2, 3
CACHE_FILE = "jack-cache.txt"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def cache_path() -> Path | None:
    env = os.environ.get("SELBERG_CACHE_DIR")
    if env is not None:
        return Path(env) / CACHE_FILE if env else None
    base = os.environ.get("XDG_CACHE_HOME") or Path.home() / ".cache"
    return Path(base) / "selberg" / CACHE_FILE


def _load_cache(path: Path | None) -> int:
    if path is None or not path.exists():
        return 0
    try:
        DEFAULT_CACHE.load(path)
    except (OSError, ValueError) as exc:
        log.warning("ignoring unreadable Jack cache %s: %s", path, exc)
    return len(DEFAULT_CACHE)


def _save_cache(path: Path | None, before: int) -> None:
    if path is None or len(DEFAULT_CACHE) == before:
        return
    try:
        DEFAULT_CACHE.save(path)
    except OSError as exc:
        log.warning("could not write Jack cache %s: %s", path, exc)


def _timed(method: str, fn) -> MethodResult:
    start = time.perf_counter()
    value = fn()
    ms = int(round((time.perf_counter() - start) * 1000))
    if isinstance(value, tuple):
        return MethodResult(method, value[0], ms, value[1])
    return MethodResult(method, value, ms)


def evaluate(n: int, d: int, p: int, method: str = "all", workers: int = 1) -> EvaluationReport:
    if n < 1 or d < 1 or p < 0:
        raise DomainError("need n >= 1, d >= 1, p >= 0")
    report = EvaluationReport("I", n, d, p)
    wanted = ["perm", "jack", "rec", "oracle"] if method == "all" else [method]
    for m in wanted:
        if m == "perm":
            if d % 2:
                if method == "perm":
                    raise UnsupportedParameterError("method perm needs even d")
                report.results.append(MethodResult("perm", None, note="not applicable (odd d)"))
                continue
            report.results.append(_timed("perm", lambda: theorem1_eval(n, d, p, workers)))
        elif m == "jack":
            report.results.append(_timed("jack", lambda: theorem2_eval(n, d, p)))
        elif m == "rec":
            report.results.append(_timed("rec", lambda: eval_I_via_recursion(n, d, p)))
        elif m == "oracle":
            report.results.append(_timed("oracle", lambda: oracle_I(n, d, p)))
        else:
            raise UsageError(f"unknown method {m!r}")
    return report


def evaluate_j(n: int, kappa: int, lam: Partition, method: str = "all") -> EvaluationReport:
    if n < 1 or kappa < 0:
        raise DomainError("need n >= 1, kappa >= 0")
    f = monomial(lam, n)
    report = EvaluationReport("J", n, kappa, None, str(lam))
    if method in ("rec", "all"):
        report.results.append(_timed("rec", lambda: recursion_eval(n, kappa, f)))
    if method in ("oracle", "all"):
        report.results.append(_timed("oracle", lambda: oracle_J(n, kappa, f)))
    return report


# --- subcommands ---------------------------------------------------------------------------

def cmd_eval(args) -> int:
    report = evaluate(args.n, args.d, args.p, args.method, args.workers)
    if args.json:
        print(report.dumps())
    else:
        print(report.render())
    if args.latex:
        cf = next((r.closed_form for r in report.results if r.closed_form is not None), None)
        print((cf or closed_form(args.n, args.d)).to_latex())
    return EXIT_OK if report.agreement else EXIT_DISAGREE


def phi_of(n: int, d: int, method: str):
    """Return (Phi, degree bound, description of the bound)."""
    if method == "det":
        if d != 2:
            raise UnsupportedParameterError("the determinant formula needs d = 2")
        return phi_det_d2(n), d * n * (n - 1) // 2, "permutation-sum bound d n(n-1)/2"
    if method == "perm":
        return phi_eq21(n, d), d * n * (n - 1) // 2, "permutation-sum bound d n(n-1)/2"
    if method == "jack":
        return closed_form(n, d).phi, degree_bound(n, d), "Jack bound"
    raise UsageError(f"unknown method {method!r}")


def cmd_phi(args) -> int:
    if args.n < 1 or args.d < 1:
        raise DomainError("need n >= 1 and d >= 1")
    phi, bound, what = phi_of(args.n, args.d, args.method)
    print(f"Phi_{{{args.n},{args.d}}}(p) = {phi}")
    print("coefficients (ascending): [" + ", ".join(str(c) for c in phi.coefficients) + "]")
    print(f"latex: {phi.format(latex=True)}")
    print(f"degree: {phi.degree}")
    print(f"bound: {bound} ({what})")
    if args.method != "jack":
        print(f"sharp bound: {degree_bound(args.n, args.d)}")
    return EXIT_OK


def cmd_j(args) -> int:
    report = evaluate_j(args.n, args.kappa, Partition.parse(args.partition), args.method)
    print(report.dumps() if args.json else report.render())
    return EXIT_OK if report.agreement else EXIT_DISAGREE


def cmd_jack(args) -> int:
    alpha = Fraction(args.alpha)
    lam = Partition.parse(args.partition)
    poly = jack(lam, alpha, args.nvars)
    print(f"P_[{lam}]^({alpha}) in {args.nvars} variables:")
    for mu in poly.support():
        print(f"  {poly.coefficient(mu)} * m_[{mu}]")
    return EXIT_OK


GOLDEN = {
    ("I", 2, 1, 0): Fraction(1, 16),
    ("I", 2, 1, 1): Fraction(1, 192),
    ("I", 2, 2, 0): Fraction(1, 36),
    ("J", 2, 1, ()): Fraction(1, 12),
    ("J", 2, 2, ()): Fraction(1, 24),
    ("J", 2, 2, (1, 1)): Fraction(1, 360),
}


def validate(max_n: int, max_d: int, max_p: int, corrupt: bool = False, out=print) -> int:
    rows: list[tuple[str, int, str]] = []
    status = EXIT_OK

    def record(name, cases, failures):
        nonlocal status
        rows.append((name, cases, "pass" if not failures else f"FAIL ({failures[0]})"))
        if failures:
            status = EXIT_DISAGREE

    golden = dict(GOLDEN)
    if corrupt:
        golden[("I", 2, 1, 0)] = Fraction(1, 17)
    fails = []
    for key, want in golden.items():
        kind, n, d, x = key
        got = oracle_I(n, d, x) if kind == "I" else oracle_J(n, d, monomial(x, n))
        if got != want:
            fails.append(f"{kind}{key[1:]} = {got}, fixture says {want}")
    record("golden fixtures", len(golden), fails)

    cases, fails = 0, []
    for n in range(1, max_n + 1):
        for d in range(1, max_d + 1):
            for p in range(max_p + 1):
                report = evaluate(n, d, p, "all")
                cases += 1
                if not report.agreement:
                    a, b = report.first_disagreement
                    fails.append(f"n={n} d={d} p={p}: {a} vs {b}")
    record("cross-pipeline grid", cases, fails)

    cases, fails = 0, []
    for n in range(1, max_n + 1):
        for d in range(1, max_d + 1):
            try:
                cases += check_lemma21(n, d)
            except ConsistencyError as exc:
                fails.append(str(exc))
    record("column-sum lower bound", cases, fails)

    cases, fails = 0, []
    for n in range(1, max_n + 1):
        for d in range(1, max_d + 1):
            try:
                cases += check_lemma33(n, d)
            except ConsistencyError as exc:
                fails.append(str(exc))
    record("minimal-part lower bound", cases, fails)

    cases, fails = 0, []
    for n in range(1, max_n + 1):
        for d in range(1, max_d + 1):
            cases += 1
            deg = closed_form(n, d).phi.degree
            if deg != degree_bound(n, d):
                fails.append(f"n={n} d={d}: degree {deg}, bound {degree_bound(n, d)}")
    record("Phi degree = bound", cases, fails)

    width = max(len(r[0]) for r in rows)
    out(f"{'check':<{width}}  {'cases':>8}  status")
    for name, cases, st in rows:
        out(f"{name:<{width}}  {cases:>8}  {st}")
    out("all checks passed" if status == EXIT_OK else "some checks FAILED")
    return status


def cmd_validate(args) -> int:
    return validate(args.max_n, args.max_d, args.max_p, corrupt=args.corrupt_fixture)


def errata_rows(empty: bool = False) -> list[dict]:
    rows = []
    for e in ([] if empty else errata_mod.ledger()):
        v = e.values()
        rows.append({
            "key": e.key,
            "location": e.location,
            "printed_form": e.printed_form,
            "implemented_form": e.implemented_form,
            "arbitration": e.arbitration,
            "printed_value": errata_mod.render(v["printed"]),
            "implemented_value": errata_mod.render(v["implemented"]),
            "oracle_value": errata_mod.render(v["oracle"]),
            "arbitrated": v["printed"] != v["oracle"] and v["implemented"] == v["oracle"],
        })
    return rows


def cmd_errata(args) -> int:
    rows = errata_rows(args.empty)
    if args.json:
        print(json.dumps(rows, indent=2))
        return EXIT_OK
    print(f"errata ledger: {len(rows)} entries (printed / implemented / oracle at the fixture)")
    for r in rows:
        print(f"- [{r['key']}] {r['location']}")
        print(f"    printed:     {r['printed_form']}")
        print(f"    implemented: {r['implemented_form']}")
        print(f"    fixture {r['arbitration']}: printed {r['printed_value']}, "
              f"implemented {r['implemented_value']}, oracle {r['oracle_value']}"
              + ("" if r["arbitrated"] else "  [NOT ARBITRATED]"))
    return EXIT_OK if all(r["arbitrated"] for r in rows) else EXIT_DISAGREE


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="selberg", description="Exact evaluation of Selberg-like integrals "
                     "with quadratic difference factors over the ordered simplex.")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", help="evaluate I_{n,d,p}")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--method", choices=["perm", "jack", "rec", "oracle", "all"], default="all")
    p.add_argument("--json", action="store_true")
    p.add_argument("--latex", action="store_true", help="also print the closed form in LaTeX")
    p.add_argument("--workers", type=int, default=1, help="processes for the permutation sum")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("phi", help="polynomial factor Phi_{n,d}(p)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--method", choices=["perm", "det", "jack"], required=True)
    p.set_defaults(func=cmd_phi)

    p = sub.add_parser("j", help="J_{n,kappa}(m_lambda) = int_{S_n} m_lambda Delta^kappa")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--kappa", type=int, required=True)
    p.add_argument("--partition", default="0")
    p.add_argument("--method", choices=["rec", "oracle", "all"], default="all")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_j)

    p = sub.add_parser("jack", help="Jack polynomial P_lambda^(alpha) in the monomial basis")
    p.add_argument("--alpha", required=True, help="positive rational, e.g. 2/3")
    p.add_argument("--nvars", type=int, required=True)
    p.add_argument("--partition", required=True)
    p.set_defaults(func=cmd_jack)

    p = sub.add_parser("validate", help="cross-validation grid and exhaustive bound checks")
    p.add_argument("--max-n", type=int, default=3)
    p.add_argument("--max-d", type=int, default=3)
    p.add_argument("--max-p", type=int, default=3)
    p.add_argument("--corrupt-fixture", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("errata", help="printed formulas corrected here, with oracle arbitration")
    p.add_argument("--json", action="store_true")
    p.add_argument("--empty", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_errata)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # --help, or a usage error already reported by argparse
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    path = cache_path()
    before = _load_cache(path)
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        print(f"selberg: resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except ConsistencyError as exc:
        print(f"selberg: consistency failure: {exc}", file=sys.stderr)
        return EXIT_DISAGREE
    except (DomainError, UsageError, ValueError, ZeroDivisionError) as exc:
        print(f"selberg: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        _save_cache(path, before)


if __name__ == "__main__":
    sys.exit(main())
