"""Command-line surface: solvers, oracle, schedulers, corpus tools.

Exit codes: 0 success, 1 usage error, 2 input/parse error, 3 internal
solver invariant violated, 4 oracle limit exceeded.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from fractions import Fraction
from typing import List, Optional, Sequence

from .errors import InputError, OracleLimitError, SolverInvariantError
from .fixtures import builtin_fixtures
from .generator import GeneratorConfig, generate
from .greedy import check_amms
from .instances import (
    Allocation,
    Instance,
    allocation_to_json,
    instance_to_json,
    load_allocation,
    load_instance,
)
from .oracle import MmsProfile, OracleLimits, mms_profile
from .scheduling import schedule_119, schedule_lpt
from .solvers import solve_existence_119, solve_poly_54

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_INVARIANT = 3
EXIT_ORACLE = 4


def _limits(args: argparse.Namespace) -> OracleLimits:
    return OracleLimits(max_chores=args.max_chores, node_budget=args.node_budget)


def _add_limit_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--max-chores",
        type=int,
        default=OracleLimits().max_chores,
        help="largest chore count the exact oracle accepts",
    )
    parser.add_argument(
        "--node-budget",
        type=int,
        default=OracleLimits().node_budget,
        help="search node budget for the exact oracle",
    )


def _dump_json(obj: object, path: Optional[str]) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True)
    if path is None:
        print(text)
    else:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")


def _load_jobs(path: str) -> List[int]:
    with open(path, "r", encoding="utf-8") as handle:
        try:
            obj = json.load(handle)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: invalid JSON ({exc})") from exc
    if isinstance(obj, dict):
        obj = obj.get("jobs")
    if not isinstance(obj, list):
        raise InputError(f"{path}: expected a job list or an object with 'jobs'")
    return list(obj)


def _write_trace(trace, path: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        for entry in trace:
            handle.write(json.dumps(entry.to_json(), sort_keys=True) + "\n")


def _max_ratio(inst: Instance, alloc: Allocation, profile: MmsProfile) -> Fraction:
    worst = Fraction(0)
    for i in range(inst.num_agents):
        load = inst.value(i, alloc.bundles[i])
        mu = profile.values[i]
        ratio = Fraction(load, mu) if mu else Fraction(0)
        worst = max(worst, ratio)
    return worst


def cmd_solve(args: argparse.Namespace) -> int:
    inst = load_instance(args.input)
    report_lines: List[str] = []
    if args.algo == "exact-119":
        result = solve_existence_119(inst, _limits(args))
        alloc = result.allocation
        for i, ratio in enumerate(result.ratios):
            report_lines.append(
                f"agent {i}: load {inst.value(i, alloc.bundles[i])}, "
                f"share {result.profile.values[i]}, ratio {ratio}"
            )
        report_lines.append(f"max ratio {max(result.ratios, default=Fraction(0))}")
        trace = result.trace
    else:
        result = solve_poly_54(inst)
        alloc = result.allocation
        for cert in result.certificates:
            report_lines.append(
                f"agent {cert.agent}: load {cert.load}, cap {cert.cap}, "
                f"certified {str(cert.satisfied).lower()}"
            )
        trace = result.trace
    report_lines.append(f"complete {str(alloc.complete).lower()}")

    if args.trace:
        _write_trace(trace, args.trace)
    if args.output:
        _dump_json(allocation_to_json(alloc), args.output)
        for line in report_lines:
            print(line)
    else:
        _dump_json(allocation_to_json(alloc), None)
        for line in report_lines:
            print(line, file=sys.stderr)
    return EXIT_OK


def cmd_mms(args: argparse.Namespace) -> int:
    inst = load_instance(args.input)
    profile = mms_profile(inst, _limits(args))
    for i, value in enumerate(profile.values):
        print(f"agent {i}: mms {value}")
    if args.witness and profile.witnesses is not None:
        for i, witness in enumerate(profile.witnesses):
            bundles = [sorted(b) for b in witness.bundles]
            print(f"agent {i}: witness {json.dumps(bundles)}")
    return EXIT_OK


def cmd_schedule(args: argparse.Namespace) -> int:
    jobs = _load_jobs(args.input)
    if args.algo == "greedy-119":
        result = schedule_119(jobs, args.machines)
        payload = {
            "bundles": [sorted(b) for b in result.allocation.bundles],
            "loads": list(result.loads),
            "makespan": result.makespan,
            "threshold": result.threshold,
        }
    else:
        result = schedule_lpt(jobs, args.machines)
        payload = {
            "bundles": [sorted(b) for b in result.allocation.bundles],
            "loads": list(result.loads),
            "makespan": result.makespan,
        }
    _dump_json(payload, args.output)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    inst = load_instance(args.instance)
    alloc = load_allocation(args.allocation)
    if len(alloc.bundles) != inst.num_agents:
        raise InputError("allocation bundle count does not match agent count")
    if alloc.num_chores != inst.num_chores:
        raise InputError("allocation chore universe does not match the instance")
    loads = [inst.value(i, alloc.bundles[i]) for i in range(inst.num_agents)]
    for i, load in enumerate(loads):
        print(f"agent {i}: load {load}")
    print(f"complete {str(alloc.complete).lower()}")
    if args.alpha is None:
        return EXIT_OK

    try:
        num, den = args.alpha.split("/") if "/" in args.alpha else (args.alpha, "1")
        alpha = Fraction(int(num), int(den))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"invalid --alpha value {args.alpha!r}") from exc
    if not alloc.complete:
        print(f"alpha check at {alpha}: fail (incomplete allocation)")
        return EXIT_INPUT
    profile = mms_profile(inst, _limits(args))
    report = check_amms(inst, alloc, profile, alpha)
    for i, ratio in enumerate(report.ratios):
        shown = "undefined" if ratio is None else str(ratio)
        verdict = "ok" if report.within[i] else "exceeded"
        print(f"agent {i}: ratio {shown} ({verdict})")
    print(f"alpha check at {alpha}: {'pass' if report.passed else 'fail'}")
    return EXIT_OK if report.passed else EXIT_INPUT


def cmd_gen(args: argparse.Namespace) -> int:
    config = GeneratorConfig(
        seed=args.seed,
        agents=(args.agents[0], args.agents[1]),
        chores=(args.chores[0], args.chores[1]),
        value_max=args.value_max,
        ido_only=args.ido_only,
    )
    instances = list(generate(config, args.count))
    if args.output_dir:
        os.makedirs(args.output_dir, exist_ok=True)
        for idx, inst in enumerate(instances):
            path = os.path.join(args.output_dir, f"instance_{idx:03d}.json")
            _dump_json(instance_to_json(inst), path)
        print(f"wrote {len(instances)} instances to {args.output_dir}")
    else:
        for inst in instances:
            print(json.dumps(instance_to_json(inst), sort_keys=True))
    return EXIT_OK


def cmd_fixtures(args: argparse.Namespace) -> int:
    fixtures = builtin_fixtures()
    if args.name:
        chosen = [f for f in fixtures if f.name == args.name]
        if not chosen:
            raise InputError(f"no fixture named {args.name!r}")
        fixtures = tuple(chosen)
    if args.export:
        os.makedirs(args.export, exist_ok=True)
        for fixture in fixtures:
            path = os.path.join(args.export, f"{fixture.name}.json")
            _dump_json(instance_to_json(fixture.instance), path)
        print(f"wrote {len(fixtures)} fixtures to {args.export}")
        return EXIT_OK
    for fixture in fixtures:
        inst = fixture.instance
        print(
            f"{fixture.name}: agents {inst.num_agents}, chores {inst.num_chores}, "
            f"scale {fixture.scale}"
        )
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    limits = OracleLimits(max_chores=args.max_chores, node_budget=args.node_budget)
    corpus = [(f.name, f.instance) for f in builtin_fixtures()]
    config = GeneratorConfig(seed=args.seed, chores=(2, min(14, args.max_chores)))
    for idx, inst in enumerate(generate(config, args.count)):
        corpus.append((f"rand-{args.seed}-{idx:03d}", inst))

    rows = []
    for name, inst in corpus:
        if inst.num_chores > args.max_chores:
            continue  # oracle-backed columns would exceed the limit
        started = time.perf_counter()
        profile = mms_profile(inst, limits)
        oracle_ms = (time.perf_counter() - started) * 1000.0

        for algo in ("exact-119", "poly-54"):
            started = time.perf_counter()
            if algo == "exact-119":
                alloc = solve_existence_119(inst, limits, profile=profile).allocation
            else:
                alloc = solve_poly_54(inst).allocation
            solver_ms = (time.perf_counter() - started) * 1000.0
            ratio = _max_ratio(inst, alloc, profile)
            rows.append(
                {
                    "instance_id": name,
                    "n": inst.num_agents,
                    "m": inst.num_chores,
                    "algo": algo,
                    "max_ratio_num": ratio.numerator,
                    "max_ratio_den": ratio.denominator,
                    "mms_oracle_ms": f"{oracle_ms:.3f}",
                    "solver_ms": f"{solver_ms:.3f}",
                    "complete": str(alloc.complete).lower(),
                }
            )

    fieldnames = [
        "instance_id",
        "n",
        "m",
        "algo",
        "max_ratio_num",
        "max_ratio_den",
        "mms_oracle_ms",
        "solver_ms",
        "complete",
    ]
    handle = open(args.output, "w", newline="", encoding="utf-8") if args.output else sys.stdout
    try:
        writer = csv.DictWriter(handle, fieldnames=fieldnames)
        writer.writeheader()
        writer.writerows(rows)
    finally:
        if args.output:
            handle.close()
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fairchores",
        description="Approximately fair division of indivisible chores "
        "under the maximin-share criterion.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="allocate an instance")
    p_solve.add_argument("--input", required=True, help="instance JSON file")
    p_solve.add_argument(
        "--algo", choices=("exact-119", "poly-54"), default="poly-54"
    )
    p_solve.add_argument("--output", help="write allocation JSON here")
    p_solve.add_argument("--trace", help="write greedy trace JSON lines here")
    _add_limit_flags(p_solve)
    p_solve.set_defaults(func=cmd_solve)

    p_mms = sub.add_parser("mms", help="exact per-agent maximin shares")
    p_mms.add_argument("--input", required=True, help="instance JSON file")
    p_mms.add_argument("--witness", action="store_true", help="print witnesses")
    _add_limit_flags(p_mms)
    p_mms.set_defaults(func=cmd_mms)

    p_sched = sub.add_parser("schedule", help="identical-machines scheduling")
    p_sched.add_argument("--input", required=True, help="jobs JSON file")
    p_sched.add_argument("--machines", type=int, required=True)
    p_sched.add_argument(
        "--algo", choices=("greedy-119", "lpt"), default="greedy-119"
    )
    p_sched.add_argument("--output", help="write schedule JSON here")
    p_sched.set_defaults(func=cmd_schedule)

    p_verify = sub.add_parser("verify", help="check an allocation file")
    p_verify.add_argument("--instance", required=True)
    p_verify.add_argument("--allocation", required=True)
    p_verify.add_argument(
        "--alpha", help="bound as NUM/DEN; checks load <= alpha * share"
    )
    _add_limit_flags(p_verify)
    p_verify.set_defaults(func=cmd_verify)

    p_gen = sub.add_parser("gen", help="emit seeded random instances")
    p_gen.add_argument("--seed", type=int, required=True)
    p_gen.add_argument("--count", type=int, default=10)
    p_gen.add_argument("--agents", type=int, nargs=2, default=(2, 5), metavar=("LO", "HI"))
    p_gen.add_argument("--chores", type=int, nargs=2, default=(2, 14), metavar=("LO", "HI"))
    p_gen.add_argument("--value-max", type=int, default=50)
    p_gen.add_argument("--ido-only", action="store_true")
    p_gen.add_argument("--output-dir")
    p_gen.set_defaults(func=cmd_gen)

    p_fix = sub.add_parser("fixtures", help="list or export builtin fixtures")
    p_fix.add_argument("--name", help="restrict to one fixture")
    p_fix.add_argument("--export", help="write instance JSON files here")
    p_fix.set_defaults(func=cmd_fixtures)

    p_bench = sub.add_parser("bench", help="ratio/timing CSV over a corpus")
    p_bench.add_argument("--seed", type=int, default=2024)
    p_bench.add_argument("--count", type=int, default=25)
    p_bench.add_argument("--output", help="CSV path (default stdout)")
    _add_limit_flags(p_bench)
    # Oracle-backed rows stay cheap by default; raise to include the
    # larger builtin fixtures.
    p_bench.set_defaults(func=cmd_bench, max_chores=14)
    return parser


def run_cli(argv: Sequence[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OracleLimitError as exc:
        print(f"oracle limit: {exc}", file=sys.stderr)
        return EXIT_ORACLE
    except SolverInvariantError as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
