"""Command-line interface.

Exit status: 0 on success or a clean verification, 1 when a verification
finds violations, 2 on operational errors (bad input, budget, cache I/O).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable

from . import cache
from .algebra import Laurent
from .basis import ChExpansion, EvaluableFunction, as_function, product_of_characters
from .characters import ch_classical
from .combinatorics import Partition, partitions_of
from .jack import SIZE_BUDGET, jack_in_p_basis, warm
from .reports import Report

EXIT_OK, EXIT_VIOLATIONS, EXIT_ERROR = 0, 1, 2


class UsageError(ValueError):
    pass


def parse_partition(text: str) -> Partition:
    try:
        return Partition.parse(text)
    except ValueError as exc:
        raise UsageError(f"cannot parse partition {text!r}; write it as [3,2] or []") from exc


def _check_budget(size: int, args) -> None:
    limit = min(args.budget_size, SIZE_BUDGET)
    if size > limit:
        raise UsageError(f"diagram size {size} exceeds the size budget {limit}")


def _csv(rows: Iterable[Iterable]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for r in rows:
        w.writerow(r)
    return buf.getvalue().rstrip("\n")


def _laurent_json(v: Laurent) -> dict:
    return {"text": v.text(), "coefficients": {str(k): str(c) for k, c in sorted(v.items())}}


def _render_expansion(e: ChExpansion, fmt: str, extra: dict) -> str:
    if fmt == "pretty":
        return e.text()
    if fmt == "csv":
        polys = e.delta_polys()
        return _csv([["mu", "delta_polynomial"]] + [[mu.text(), polys[mu].text()] for mu in e._ordered()])
    polys = e.delta_polys()
    payload = dict(extra)
    payload["coefficients"] = [
        {"mu": list(mu), "delta": [str(c) for c in polys[mu].dense()]} for mu in e._ordered()
    ]
    payload["expansion"] = e.to_json()
    payload["text"] = e.text()
    return json.dumps(payload, sort_keys=True)


# --- value commands ---------------------------------------------------------


def cmd_jack(args) -> str:
    lam = parse_partition(args.lam)
    _check_budget(lam.size(), args)
    e = jack_in_p_basis(lam)
    if args.format == "pretty":
        return e.text()
    if args.format == "csv":
        return _csv([["pi", "theta"]] + [[pi.text(), c.text()] for pi, c in sorted(e.terms.items())])
    return json.dumps({"lambda": lam.text(), **e.to_json()}, sort_keys=True)


def cmd_char(args) -> str:
    pi, lam = parse_partition(args.pi), parse_partition(args.lam)
    _check_budget(lam.size(), args)
    v = ch_classical(pi, lam)
    if args.format == "pretty":
        return v.text()
    if args.format == "csv":
        return _csv([["exponent", "coeff"]] + [[k, str(c)] for k, c in sorted(v.items())])
    return json.dumps({"pi": pi.text(), "lambda": lam.text(), **_laurent_json(v)}, sort_keys=True)


def cmd_structure(args) -> str:
    pi, sigma = parse_partition(args.pi), parse_partition(args.sigma)
    _check_budget(pi.size() + sigma.size() + 2, args)
    e = product_of_characters(pi, sigma)
    return _render_expansion(e, args.format, {"pi": pi.text(), "sigma": sigma.text()})


def cmd_cumulant(args) -> str:
    from .cumulants import kappa_dot, kappa_dot_reverse

    pis = [parse_partition(p) for p in args.pis]
    _check_budget(sum(p.size() for p in pis) + 2, args)
    e = kappa_dot_reverse(*pis) if args.reverse else kappa_dot(*pis)
    return _render_expansion(e, args.format, {"tuple": [p.text() for p in pis], "reverse": args.reverse})


def cmd_kl(args) -> str:
    from .cumulants import kappa_dot
    from .free import kerov_lassalle_solve

    pis = [parse_partition(p) for p in args.pis]
    if len(pis) == 1:
        pi = pis[0]
        _check_budget(pi.size() + pi.length() + 1, args)
        F = EvaluableFunction(lambda lam: ch_classical(pi, lam), pi.size() + pi.length())
    else:
        e = kappa_dot(*pis)
        _check_budget(e.degree() + 1, args)
        F = as_function(e)
    poly = kerov_lassalle_solve(F)
    if args.format == "pretty":
        return poly.text()
    if args.format == "csv":
        rows = [["gamma_power", "cumulant_indices", "coeff"]]
        rows += [[d["gamma_power"], " ".join(map(str, d["cumulant_indices"])), d["coeff"]] for d in poly.to_json()]
        return _csv(rows)
    return json.dumps({"target": [p.text() for p in pis], "terms": poly.to_json(), "text": poly.text()}, sort_keys=True)


def cmd_warm(args) -> str:
    _check_budget(args.max_size, args)
    warm(args.max_size)
    return f"jack tables cached up to size {args.max_size}"


# --- verification suites ----------------------------------------------------
# Each suite is a list of work items; a work item is a picklable tuple run by
# ``_run_item`` in this process or in a worker.


def _items(suite: str, args) -> list[tuple]:
    from .cumulants import tuples_up_to

    def ps(pis):
        return tuple(tuple(p) for p in pis)

    if suite in ("main-theorem", "steroids"):
        return [(suite, ps(t)) for t in tuples_up_to(args.max_size, args.max_parts)]
    if suite == "kconditions":
        items = [("K3K4", tuple(pi), args.diagram_size) for n in range(args.max_size + 1) for pi in partitions_of(n)]
        items += [
            ("K2", tuple(pi), m)
            for n in range(1, min(args.max_size, 4) + 1)
            for pi in partitions_of(n)
            for m in range(1, args.rows + 1)
        ]
        items += [("content", tuple(pi), args.diagram_size) for pi in [(), (1,), (2,), (3,), (1, 1)]]
        return items
    if suite == "brillinger":
        items = [("brillinger", ps(t)) for t in tuples_up_to(args.max_size, min(args.max_parts, 3))]
        items += [("concretely", orders) for orders in [(1,), (1, 1), (1, 2), (2, 2), (1, 1, 1), (1, 2, 1)]]
        items.append(("components",))
        return items
    if suite == "delta-zero":
        items = []
        for s in range(args.max + 1):
            for a in range(s + 1):
                for pi in partitions_of(a):
                    for sigma in partitions_of(s - a):
                        for n in range(max(s, 1), args.rank + 1):
                            items.append(("delta-zero", tuple(pi), tuple(sigma), n))
        return items
    if suite == "z3":
        items = [("z3", ps(t)) for t in tuples_up_to(args.max_size, args.max_parts, 2)]
        items += [("killed", d, seed) for d in range(2, 7) for seed in range(3)]
        return items
    if suite == "vanishing":
        items = [("vanishing", ps(t)) for t in tuples_up_to(args.max_size, args.max_parts)]
        pool = [tuple(p) for n in range(1, 4) for p in partitions_of(n)]
        items += [("cool", a, b) for a in pool for b in pool if sum(a) + sum(b) <= args.max_size]
        items += [("reconstruction", tuple(p), args.diagram_size) for n in range(1, 5) for p in partitions_of(n)]
        return items
    if suite == "kl-positivity":
        return [("kl-positivity", args.max)]
    raise UsageError(f"unknown suite {suite!r}")


def _synthetic_kernels(orders):
    from .rows import FixedOrderKernel

    def g(X, order):
        # symmetric, with a Laurent spread so cross terms cannot cancel by accident
        s = sum(X)
        return Laurent({0: s, -order: s * s})

    return [FixedOrderKernel(o, lambda X, o=o: g(X, o)) for o in orders]


def _run_item(item: tuple) -> dict:
    from . import cumulants, free, rows, symgroup
    from .characters import (
        ch_content_formula,
        verify_K2_top_degree,
        verify_K3_vanishing,
        verify_K4_laurent_degree,
    )

    kind, *rest = item
    if kind == "main-theorem":
        rep = cumulants.verify_main_theorem(*rest[0])
    elif kind == "steroids":
        pis = [Partition(p) for p in rest[0]]
        rep = Report("cumulant-positivity", {"tuple": cumulants.tuple_text(pis)}, probes=1)
        rep.violations = cumulants.cumulant_sign_violations(pis)
    elif kind == "K3K4":
        rep = verify_K3_vanishing(rest[0], rest[1])
        rep.merge(verify_K4_laurent_degree(rest[0], rest[1]))
        rep.check = "K3K4"
    elif kind == "K2":
        rep = verify_K2_top_degree(rest[0], rest[1])
    elif kind == "content":
        pi, limit = Partition(rest[0]), rest[1]
        rep = Report("content-formula", {"pi": pi.text(), "size_limit": limit})
        for n in range(limit + 1):
            for lam in partitions_of(n):
                rep.probes += 1
                if ch_classical(pi, lam) != ch_content_formula(pi, lam):
                    rep.violation(lam=lam.text())
    elif kind == "brillinger":
        rep = cumulants.verify_brillinger(*rest[0])
    elif kind == "concretely":
        rep = rows.verify_kernel_cumulant_formula(_synthetic_kernels(rest[0]), 6)
    elif kind == "components":
        rep = rows.verify_connected_components()
    elif kind == "delta-zero":
        rep = symgroup.verify_delta_zero(*rest)
    elif kind == "z3":
        rep = rows.verify_main_theorem_conditions(*rest[0])
    elif kind == "killed":
        d, seed = rest
        rep = rows.verify_small_degree_killed(rows.random_kernel(d - 1, seed=seed), d)
    elif kind == "vanishing":
        rep = rows.verify_vanishing_kappa_row(*rest[0])
    elif kind == "cool":
        rep = rows.verify_cool_vanishing(*rest)
    elif kind == "reconstruction":
        rep = rows.verify_reconstruction(*rest)
    elif kind == "kl-positivity":
        rep = free.scan_kerov_lassalle_positivity(rest[0])
    else:  # pragma: no cover
        raise UsageError(f"unknown work item {kind}")
    return rep.to_json()


def _init_worker(cache_dir):
    if cache_dir:
        cache.configure(cache_dir)


def cmd_verify(args, out: Callable[[str], None]) -> int:
    items = _items(args.suite, args)
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs, initializer=_init_worker, initargs=(args.cache_dir,)) as ex:
            results = ex.map(_run_item, items, chunksize=4)
            results = list(results)
    else:
        results = map(_run_item, items)
    violations = probes = count = 0
    for r in results:
        count += 1
        probes += r["probes"]
        violations += len(r["violations"])
        if args.format == "pretty":
            status = "PASS" if r["passed"] else "FAIL"
            params = " ".join(f"{k}={v}" for k, v in sorted(r["parameters"].items()))
            out(f"{status} {r['check']} {params}")
            for v in r["violations"]:
                out("    " + json.dumps(v, sort_keys=True, default=str))
        elif args.format == "csv":
            if count == 1:
                out(_csv([["check", "parameters", "probes", "violations"]]))
            out(_csv([[r["check"], json.dumps(r["parameters"], sort_keys=True), r["probes"], len(r["violations"])]]))
        else:
            out(json.dumps(r, sort_keys=True, default=str))
    summary = {"suite": args.suite, "reports": count, "probes": probes, "violations": violations}
    if args.format == "json":
        out(json.dumps({"summary": summary}, sort_keys=True))
    elif args.format == "pretty":
        out(f"{args.suite}: {count} reports, {probes} probes, {violations} violations")
    return EXIT_VIOLATIONS if violations else EXIT_OK


SUITES = ("main-theorem", "kconditions", "brillinger", "delta-zero", "z3", "vanishing", "kl-positivity", "steroids")

SUITE_DEFAULTS = {
    "main-theorem": {"max_size": 7, "max_parts": 3},
    "steroids": {"max_size": 6, "max_parts": 3},
    "kconditions": {"max_size": 5, "max_parts": 1},
    "brillinger": {"max_size": 6, "max_parts": 3},
    "z3": {"max_size": 6, "max_parts": 6},
    "vanishing": {"max_size": 6, "max_parts": 6},
    "delta-zero": {},
    "kl-positivity": {},
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("pretty", "json", "csv"), default="pretty")
    common.add_argument("--cache-dir", help=f"persistent cache directory (env {cache.ENV_VAR})")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for verify suites")
    common.add_argument("--budget-size", type=int, default=SIZE_BUDGET, help="largest diagram size to evaluate")

    p = argparse.ArgumentParser(prog="jackfactor", description="Jack characters, their cumulants and checks.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("jack", parents=[common], help="J_λ in the power-sum basis")
    s.add_argument("lam")
    s = sub.add_parser("char", parents=[common], help="Ch_π(λ)")
    s.add_argument("pi")
    s.add_argument("lam")
    s = sub.add_parser("structure", parents=[common], help="structure coefficients of Ch_π Ch_σ")
    s.add_argument("pi")
    s.add_argument("sigma")
    s = sub.add_parser("cumulant", parents=[common], help="κ_•(Ch_π1, …) in the Ch basis")
    s.add_argument("pis", nargs="+")
    s.add_argument("--reverse", action="store_true", help="compute κ^• instead")
    s = sub.add_parser("kl", parents=[common], help="Kerov–Lassalle polynomial of Ch_π, or of κ_• for several π")
    s.add_argument("pis", nargs="+")
    s = sub.add_parser("warm", parents=[common], help="precompute Jack tables into the cache")
    s.add_argument("--max-size", type=int, default=8)
    s = sub.add_parser("verify", parents=[common], help="run a verification suite")
    s.add_argument("suite", choices=SUITES)
    s.add_argument("--max-size", type=int, help="largest Σ|π_i| (or |π| for kconditions)")
    s.add_argument("--max-parts", type=int, help="largest number of arguments ℓ")
    s.add_argument("--max", type=int, default=None, help="delta-zero: largest |π|+|σ|; kl-positivity: largest k")
    s.add_argument("--rank", type=int, default=7, help="delta-zero: largest rank n")
    s.add_argument("--rows", type=int, default=2, help="kconditions: rows for the top-degree fit")
    s.add_argument("--diagram-size", type=int, default=8, help="largest |λ| probed by kconditions/vanishing")
    return p


def _fill_defaults(args) -> None:
    defaults = SUITE_DEFAULTS[args.suite]
    if args.max_size is None:
        args.max_size = defaults.get("max_size", 6)
    if args.max_parts is None:
        args.max_parts = defaults.get("max_parts", 3)
    if args.max is None:
        args.max = 5 if args.suite == "kl-positivity" else 6
    if args.suite == "delta-zero" and args.rank > 8:
        raise UsageError("rank budget is 8")
    _check_budget(max(args.max_size, args.diagram_size), args)


def main(argv: list[str] | None = None, out: Callable[[str], None] | None = None) -> int:
    out = out or (lambda s: print(s, flush=True))
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.cache_dir:
            cache.configure(args.cache_dir)
        if args.jobs < 1:
            raise UsageError("--jobs must be positive")
        if args.command == "verify":
            _fill_defaults(args)
            return cmd_verify(args, out)
        handler = {
            "jack": cmd_jack,
            "char": cmd_char,
            "structure": cmd_structure,
            "cumulant": cmd_cumulant,
            "kl": cmd_kl,
            "warm": cmd_warm,
        }[args.command]
        out(handler(args))
        return EXIT_OK
    except (ValueError, ArithmeticError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
