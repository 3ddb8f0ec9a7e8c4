"""Command-line front end.

Exit codes are stable across commands: 0 when the requested object was
found (or the check passed), 2 when it provably does not exist, 3 when an
enumeration cap was exceeded, and 1 on any error.  Reports are JSON on
standard output; diagnostics go to standard error.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from . import envy, generator, oracle, special
from .errors import CapExceeded, ModeMismatch, WefHouseError
from .model import (
    Allocation,
    Instance,
    format_rational,
    parse_allocation,
    parse_instance,
    parse_rational,
    serialize_instance,
)
from .solver import solve_wef_traced

EXIT_FOUND = 0
EXIT_ERROR = 1
EXIT_NOT_FOUND = 2
EXIT_CAP = 3


def _read_instance(path: str) -> Instance:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_instance(fh.read())


def _read_allocation(path: str) -> Allocation:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_allocation(fh.read())


def _emit(report: dict) -> None:
    print(json.dumps(report, indent=2))


def _subsidy_strings(payments) -> list[str]:
    return [format_rational(p) for p in payments]


def _cmd_solve(args) -> int:
    inst = _read_instance(args.input)
    started = time.perf_counter()
    allocation, stats = solve_wef_traced(inst)
    elapsed = time.perf_counter() - started
    report = {
        "command": "solve",
        "decision": "found" if allocation is not None else "not-found",
        "timing_seconds": elapsed,
        "counters": {
            "prune_steps": stats.prune_steps,
            "violators_removed": stats.violators_removed,
        },
    }
    if allocation is not None:
        report["allocation"] = {"assignment": list(allocation.assignment)}
    _emit(report)
    return EXIT_FOUND if allocation is not None else EXIT_NOT_FOUND


def _wefable_report(command: str, inst: Instance, allocation: Allocation) -> tuple[dict, int]:
    started = time.perf_counter()
    result = envy.max_path_weights(envy.build_envy_graph(inst, allocation))
    elapsed = time.perf_counter() - started
    report = {
        "command": command,
        "allocation": {"assignment": list(allocation.assignment)},
        "timing_seconds": elapsed,
    }
    if isinstance(result, envy.PositiveCycle):
        report["decision"] = "not-found"
        report["wefable"] = False
        report["witness_cycle"] = {
            "nodes": list(result.nodes),
            "weight": format_rational(result.weight),
        }
        return report, EXIT_NOT_FOUND
    payments = tuple(
        inst.weights[i] * result.per_agent[i] for i in range(inst.n)
    )
    report["decision"] = "found"
    report["wefable"] = True
    report["subsidy"] = _subsidy_strings(payments)
    return report, EXIT_FOUND


def _cmd_check_wefable(args) -> int:
    inst = _read_instance(args.input)
    allocation = _read_allocation(args.allocation)
    report, code = _wefable_report("check-wefable", inst, allocation)
    _emit(report)
    return code


def _cmd_subsidy(args) -> int:
    inst = _read_instance(args.input)
    allocation = _read_allocation(args.allocation)
    report, code = _wefable_report("subsidy", inst, allocation)
    _emit(report)
    return code


def _identical_applicable(inst: Instance) -> bool:
    return all(row == inst.utilities[0] for row in inst.utilities)


def _bivalued_applicable(inst: Instance) -> bool:
    try:
        special.representing_graph(inst)
        return True
    except WefHouseError:
        return False


def _normalized_applicable(inst: Instance) -> bool:
    return inst.n == 2 and all(sum(row) == 1 for row in inst.utilities)


def _cmd_special(args) -> int:
    inst = _read_instance(args.input)
    mode = args.mode
    if mode == "auto":
        if _identical_applicable(inst):
            mode = "identical"
        elif special.detect_two_types(inst) is not None:
            mode = "two-type"
        elif _bivalued_applicable(inst):
            mode = "bivalued"
        elif _normalized_applicable(inst):
            mode = "normalized"
        else:
            raise ModeMismatch("instance fits no special family (identical, two-type, bivalued, normalized)")
    report = {"command": "special", "mode": mode}
    started = time.perf_counter()

    if mode == "identical":
        if not _identical_applicable(inst):
            raise ModeMismatch("agents do not share one utility function")
        outcome = special.solve_identical(inst)
        report["decision"] = "found"
        report["allocation"] = {"assignment": list(outcome.allocation.assignment)}
        report["subsidy"] = _subsidy_strings(outcome.subsidy.payments)
        code = EXIT_FOUND
    elif mode == "two-type":
        partition = special.detect_two_types(inst)
        if partition is None:
            raise ModeMismatch("instance does not have exactly two agent types")
        allocation = special.solve_two_types(inst, partition)
        if allocation is None:
            report["decision"] = "not-found"
            code = EXIT_NOT_FOUND
        else:
            report["decision"] = "found"
            report["allocation"] = {"assignment": list(allocation.assignment)}
            code = EXIT_FOUND
    elif mode == "bivalued":
        if not _bivalued_applicable(inst):
            raise ModeMismatch("instance is not bi-valued with one house per agent")
        result = special.solve_bivalued(inst, candidate_cap=args.cap)
        report["decision"] = result.status
        report["counters"] = {
            "candidates_checked": result.candidates_checked,
            "matchings_checked": result.matchings_checked,
        }
        if result.allocation is not None:
            report["allocation"] = {"assignment": list(result.allocation.assignment)}
        code = {
            "found": EXIT_FOUND,
            "not-found": EXIT_NOT_FOUND,
            "inconclusive": EXIT_CAP,
        }[result.status]
    elif mode == "normalized":
        if not _normalized_applicable(inst):
            raise ModeMismatch("needs two agents with utilities summing to one")
        allocation = special.solve_normalized_pair(inst)
        report["decision"] = "found"
        report["allocation"] = {"assignment": list(allocation.assignment)}
        code = EXIT_FOUND
    else:
        raise ModeMismatch(f"unknown mode {mode!r}")

    report["timing_seconds"] = time.perf_counter() - started
    _emit(report)
    return code


def _cmd_oracle(args) -> int:
    inst = _read_instance(args.input)
    started = time.perf_counter()
    if args.query == "wef":
        found = oracle.oracle_wef_exists(inst, cap=args.cap)
    else:
        found = oracle.oracle_wefable_exists(inst, allocation_cap=args.cap)
    report = {
        "command": "oracle",
        "query": args.query,
        "decision": "found" if found is not None else "not-found",
        "timing_seconds": time.perf_counter() - started,
    }
    if found is not None:
        report["allocation"] = {"assignment": list(found.assignment)}
    _emit(report)
    return EXIT_FOUND if found is not None else EXIT_NOT_FOUND


def _cmd_generate(args) -> int:
    config = generator.GeneratorConfig(
        n=args.n,
        m=args.m if args.m is not None else args.n,
        seed=args.seed,
        weights=args.weights,
        utilities=args.utilities,
        structure=args.structure,
        epsilon=parse_rational(args.epsilon),
    )
    inst = generator.generate_instance(config)
    text = serialize_instance(inst)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        _emit(
            {
                "command": "generate",
                "output": args.output,
                "structure": config.structure,
                "seed": config.seed,
                "n": inst.n,
                "m": inst.m,
                "prng": generator.PRNG_ID,
            }
        )
    else:
        sys.stdout.write(text)
    return EXIT_FOUND


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wefhouse",
        description="Weighted envy-free house allocation: solvers, checks, subsidies.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="decide and compute a weighted envy-free allocation")
    solve.add_argument("--input", required=True, help="instance JSON file")
    solve.add_argument("--format", choices=["json"], default="json")
    solve.set_defaults(func=_cmd_solve)

    check = sub.add_parser("check-wefable", help="check whether an allocation can be subsidised into envy-freeness")
    check.add_argument("--input", required=True)
    check.add_argument("--allocation", required=True, help="allocation JSON file")
    check.add_argument("--format", choices=["json"], default="json")
    check.set_defaults(func=_cmd_check_wefable)

    subsidy = sub.add_parser("subsidy", help="minimum envy-eliminating payments for an allocation")
    subsidy.add_argument("--input", required=True)
    subsidy.add_argument("--allocation", required=True)
    subsidy.add_argument("--format", choices=["json"], default="json")
    subsidy.set_defaults(func=_cmd_subsidy)

    spec = sub.add_parser("special", help="special-case solvers (identical, two-type, bivalued, normalized)")
    spec.add_argument("--input", required=True)
    spec.add_argument(
        "--mode",
        choices=["auto", "identical", "two-type", "bivalued", "normalized"],
        default="auto",
    )
    spec.add_argument("--cap", type=int, default=100_000, help="bivalued candidate cap")
    spec.add_argument("--format", choices=["json"], default="json")
    spec.set_defaults(func=_cmd_special)

    orc = sub.add_parser("oracle", help="brute-force reference queries for small instances")
    orc.add_argument("--input", required=True)
    orc.add_argument("--query", choices=["wef", "wefable"], required=True)
    orc.add_argument("--cap", type=int, default=oracle.DEFAULT_ALLOCATION_CAP)
    orc.add_argument("--format", choices=["json"], default="json")
    orc.set_defaults(func=_cmd_oracle)

    gen = sub.add_parser("generate", help="write a deterministic random instance")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--m", type=int, default=None, help="defaults to n")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--weights", default="uniform:1:5")
    gen.add_argument("--utilities", default="uniform:0:10")
    gen.add_argument("--structure", choices=list(generator.STRUCTURES), default="general")
    gen.add_argument("--epsilon", default="0", help="low value for bivalued instances")
    gen.add_argument("--output", default=None, help="instance file path; stdout when omitted")
    gen.set_defaults(func=_cmd_generate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (WefHouseError, OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
