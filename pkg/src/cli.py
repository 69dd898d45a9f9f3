"""Command-line interface: scenario checks, set constructions, the suite and the probe."""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import ValidationError

from . import __version__
from .cfla import LevelSpec, fuzzy_sum
from .cfuzzy import are_mutually_homogeneous, intersect_family, to_fraction
from .checks import OPS, describe_levels, run_check, run_scenario
from .config import settings
from .generators import DEFAULT_CATALOG, GenConfig
from .homs import image_cfs, preimage_cfs
from .models import CflaError, CheckResult, NotHomogeneousError
from .scenario import CheckEntry, Scenario, dump_fuzzy_set, element_from_text, load_scenario, save_scenario
from .suite import DROPPABLE, THEOREMS, find_hypothesis_counterexample, run_suite

logger = logging.getLogger(__name__)


def resolve_scenario(path: str) -> Path:
    """Paths that do not exist are also looked up in the configured scenario directory."""
    candidate = Path(path)
    if candidate.exists() or candidate.is_absolute():
        return candidate
    fallback = Path(settings.scenario_dir) / candidate
    return fallback if fallback.exists() else candidate


def format_result(result: CheckResult) -> str:
    if result.ok:
        return "OK"
    w = result.witness
    parts = [f"{result.verdict.value} at {w.condition.value}"]
    if w.scalar is not None:
        parts.append(f"alpha={w.scalar}")
    parts += [f"{name}={tuple(e)}" for name, e in zip(("x", "y", "z"), w.elements)]
    if "result" in w.detail:
        parts.append(f"-> {tuple(w.detail['result'])}")
    if "hypothesis" in result.details:
        parts.append(f"(hypothesis '{result.details['hypothesis']}')")
    return " ".join(parts)


def _emit(args, payload: Dict[str, Any], lines: List[str]):
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(lines))


def _set_lines(data: Dict[str, Any]) -> List[str]:
    lines = [f"{data['name']} on {data['algebra']}: default {data['default']['r']}, {data['default']['w_over_pi']}pi"]
    lines += [f"  {tuple(e['element'])}: {e['r']}, {e['w_over_pi']}pi" for e in data["entries"]]
    return lines


def _write_set(args, A):
    if not args.out:
        return
    save_scenario(Scenario.of(fuzzy_sets=[A], source=args.out), args.out)


def cmd_validate(args) -> int:
    scenario = load_scenario(resolve_scenario(args.scenario))
    payload = {
        "scenario": scenario.source,
        "algebras": {name: {"field": L.p, "dim": L.dim, "size": L.size} for name, L in scenario.algebras.items()},
        "fuzzy_sets": sorted(scenario.fuzzy_sets),
        "homs": sorted(scenario.homs),
        "checks": len(scenario.checks),
    }
    lines = [f"{scenario.source}: valid"]
    lines += [f"  algebra {n}: F_{a['field']}^{a['dim']} ({a['size']} elements)" for n, a in payload["algebras"].items()]
    lines.append(f"  {len(payload['fuzzy_sets'])} fuzzy sets, {len(payload['homs'])} homs, {payload['checks']} checks")
    _emit(args, payload, lines)
    return 0


def cmd_run(args) -> int:
    run = run_scenario(load_scenario(resolve_scenario(args.scenario)))
    lines = [f"{run.source}: {'all checks as expected' if run.ok else 'unexpected verdicts'}"]
    for r in run.results:
        mark = "ok " if r["matched"] else "BAD"
        lines.append(f"  [{mark}] {r['op']} {','.join(r['sets'])}: {r['verdict']} (expected {r['expect']})")
    _emit(args, run.to_dict(), lines)
    return 0 if run.ok else 1


def cmd_check(args) -> int:
    scenario = load_scenario(resolve_scenario(args.scenario))
    entry = CheckEntry(
        op=args.op,
        sets=args.set or [],
        hom=args.hom,
        algebra=args.algebra,
        at=[list(element_from_text(t)) for t in args.at] if args.at else None,
        alpha=args.alpha,
        beta_over_pi=args.beta_over_pi,
        strict_r=args.strict_r,
        strict_w=args.strict_w,
        drop=args.drop or [],
    )
    result = run_check(scenario, entry)
    _emit(args, {"op": args.op, "sets": entry.sets, **result.to_dict()}, [f"{args.op}: {format_result(result)}"])
    return 0 if result.ok else 1


def cmd_sum(args) -> int:
    scenario = load_scenario(resolve_scenario(args.scenario))
    A, B = scenario.fuzzy_set(args.a), scenario.fuzzy_set(args.b)
    S = fuzzy_sum(A.algebra, A, B)
    data = dump_fuzzy_set(S)
    _emit(args, data, _set_lines(data))
    _write_set(args, S)
    return 0


def cmd_intersect(args) -> int:
    scenario = load_scenario(resolve_scenario(args.scenario))
    sets = [scenario.fuzzy_set(name) for name in args.set]
    I = intersect_family(sets)
    mutual = are_mutually_homogeneous(sets)
    data = {**dump_fuzzy_set(I), "mutually_homogeneous": mutual.ok}
    lines = _set_lines(data)
    if not mutual.ok:
        lines.append(f"note: family is not mutually homogeneous ({format_result(mutual)})")
    _emit(args, data, lines)
    _write_set(args, I)
    return 0


def cmd_hom(args) -> int:
    scenario = load_scenario(resolve_scenario(args.scenario))
    phi, A = scenario.hom(args.hom), scenario.fuzzy_set(args.set)
    mapped = image_cfs(phi, A) if args.direction == "image" else preimage_cfs(phi, A)
    data = dump_fuzzy_set(mapped)
    _emit(args, data, _set_lines(data))
    _write_set(args, mapped)
    return 0


def cmd_levels(args) -> int:
    scenario = load_scenario(resolve_scenario(args.scenario))
    A = scenario.fuzzy_set(args.set)
    spec = None
    if args.alpha is not None or args.beta_over_pi is not None:
        spec = LevelSpec(
            to_fraction(args.alpha or "0"), to_fraction(args.beta_over_pi or "0"), args.strict_r, args.strict_w
        )
    try:
        data = describe_levels(A, spec)
    except NotHomogeneousError as e:
        _emit(args, {"set": A.name, **e.result.to_dict()}, [f"{A.name}: {format_result(e.result)}"])
        return 1

    if spec is not None:
        lines = [f"{A.name} cut {spec.to_dict()}: {data['size']} elements"]
        lines += [f"  {tuple(x)}" for x in data["elements"]]
    else:
        lines = [f"{A.name}: {len(data['levels'])} values in Im(mu)"]
        for level in data["levels"]:
            t = level["t"]
            lines.append(
                f"  t = {t['r']}, {t['w_over_pi']}pi: upper {level['upper']['size']}, strong {level['strong']['size']}"
            )
    _emit(args, data, lines)
    return 0


def _gen_config(args) -> GenConfig:
    fields: Dict[str, Any] = {}
    if args.seed is not None:
        fields["seed"] = args.seed
    if getattr(args, "trials", None) is not None:
        fields["trials"] = args.trials
    if args.catalog:
        fields["catalog"] = args.catalog
    if getattr(args, "theorem_ids", None):
        fields["theorems"] = args.theorem_ids
    return GenConfig(**fields)


def cmd_verify(args) -> int:
    report = run_suite(_gen_config(args), timings=args.timings)
    lines = [f"verify seed={report.config.seed} trials={report.config.trials}: {report.verdict}"]
    for t in report.theorems:
        extra = f", {t.skipped} skipped" if t.skipped else ""
        lines.append(f"  {t.status:8} {t.id} ({t.passes}/{t.trials}{extra})")
        for failure in t.failures[:3]:
            lines.append(f"           trial {failure['trial']}: {failure['verdict']}")
        for error in t.errors[:3]:
            lines.append(f"           trial {error['trial']}: error: {error['error']}")
    if args.json:
        print(report.to_json())
    else:
        print("\n".join(lines))
    return 0 if report.ok else 1


def cmd_probe(args) -> int:
    probe = find_hypothesis_counterexample(args.theorem, args.drop, args.budget, _gen_config(args))
    if probe.found:
        lines = [
            f"{args.theorem} without '{args.drop}': counterexample after {probe.tried} instances",
            f"  {format_result(probe.result)}",
        ]
        if args.out:
            save_scenario(probe.instance, args.out)
            lines.append(f"  replay with: run --scenario {args.out}")
    else:
        lines = [f"{args.theorem} without '{args.drop}': nothing found in {probe.tried} instances"]
    _emit(args, probe.to_dict(), lines)
    return 0


def _add_scenario(p: argparse.ArgumentParser):
    p.add_argument("--scenario", required=True, help="scenario JSON file")


def _add_cut(p: argparse.ArgumentParser):
    p.add_argument("--alpha", help="amplitude threshold, e.g. 3/5")
    p.add_argument("--beta-over-pi", dest="beta_over_pi", help="phase threshold in units of pi, e.g. 1/2")
    p.add_argument("--strict-r", action="store_true", help="require r > alpha")
    p.add_argument("--strict-w", action="store_true", help="require w > beta")


def _add_out(p: argparse.ArgumentParser):
    p.add_argument("--out", help="write the resulting set as a scenario file")


def _add_generation(p: argparse.ArgumentParser):
    p.add_argument("--seed", type=int, default=None, help=f"default {settings.default_seed}")
    p.add_argument("--catalog", action="append", help=f"name/p entries (default {', '.join(DEFAULT_CATALOG)})")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cfla", description="Complex fuzzy Lie subalgebras and ideals over finite fields"
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument("--log-level", help=f"default {settings.log_level}")

    # Subcommands also accept --json after their own arguments
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="parse and validate a scenario file")
    _add_scenario(p)
    p.set_defaults(handler=cmd_validate)

    p = sub.add_parser("run", parents=[common], help="run the checks listed in a scenario file")
    _add_scenario(p)
    p.set_defaults(handler=cmd_run)

    p = sub.add_parser("check", parents=[common], help="run one named check")
    _add_scenario(p)
    p.add_argument("--op", required=True, choices=sorted(OPS))
    p.add_argument("--set", action="append", help="fuzzy set name (repeat for several)")
    p.add_argument("--hom")
    p.add_argument("--algebra")
    p.add_argument("--at", action="append", help="element such as 1,0,0; give twice to check one pair")
    p.add_argument("--drop", action="append", help="hypothesis to drop")
    _add_cut(p)
    p.set_defaults(handler=cmd_check)

    p = sub.add_parser("sum", parents=[common], help="fuzzy sum A + B")
    _add_scenario(p)
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    _add_out(p)
    p.set_defaults(handler=cmd_sum)

    p = sub.add_parser("intersect", parents=[common], help="pointwise meet of a family")
    _add_scenario(p)
    p.add_argument("--set", action="append", required=True)
    _add_out(p)
    p.set_defaults(handler=cmd_intersect)

    p = sub.add_parser("hom", parents=[common], help="image or preimage along a homomorphism")
    p.add_argument("direction", choices=["image", "preimage"])
    _add_scenario(p)
    p.add_argument("--hom", required=True)
    p.add_argument("--set", required=True)
    _add_out(p)
    p.set_defaults(handler=cmd_hom)

    p = sub.add_parser("levels", parents=[common], help="Im(mu) with its level subsets, or one cut")
    _add_scenario(p)
    p.add_argument("--set", required=True)
    _add_cut(p)
    p.set_defaults(handler=cmd_levels)

    p = sub.add_parser("verify", parents=[common], help="run the theorem verification suite")
    _add_generation(p)
    p.add_argument("--trials", type=int, default=None, help=f"default {settings.default_trials}")
    p.add_argument("--theorem", dest="theorem_ids", action="append", choices=sorted(THEOREMS))
    p.add_argument("--timings", action="store_true", help="include wall times (breaks byte-identical reports)")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("probe", parents=[common], help="search for a counterexample with a hypothesis dropped")
    _add_generation(p)
    p.add_argument("--theorem", required=True, choices=sorted(DROPPABLE))
    p.add_argument("--drop", required=True, help="hypothesis name, e.g. mutual-homogeneity or surjectivity")
    p.add_argument("--budget", type=int, default=None, help=f"default {settings.probe_budget}")
    _add_out(p)
    p.set_defaults(handler=cmd_probe)

    return parser


def configure_logging(level: Optional[str] = None):
    level = (level or settings.clean_log_level).upper()
    logging.basicConfig(
        level=getattr(logging, level, logging.INFO),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
        force=True,
    )


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors and 0 for --help/--version
        return e.code if isinstance(e.code, int) else 2

    configure_logging(args.log_level)
    try:
        return args.handler(args)
    except ValidationError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except CflaError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
