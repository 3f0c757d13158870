"""Command-line interface.

::

    committee-lab run <preset|config.json> [--seed U64] [--jobs N] [-o DIR]
    committee-lab show <generator> --rule ID --k K [--seed U64] [--solver S] [--dump FILE]
    committee-lab list
"""

from __future__ import annotations

import argparse
import csv
import logging
import sys
from pathlib import Path

from committee_lab import rules as rules_mod
from committee_lab.errors import CommitteeLabError, ConfigError
from committee_lab.experiments import (
    COMMITTEES_HEADER,
    CommitteeRow,
    ExperimentConfig,
    GeneratorSpec,
    builtin_configs,
    fmt_float,
    get_preset,
    run_experiment,
    write_outputs,
)
from committee_lab.metrics import avg_misrepresentation, member_parties
from committee_lab.rng import default_seed, substream
from committee_lab.spatial import derive_profile

EXIT_CONFIG = 2
EXIT_RULE = 3

SHOW_GENERATORS = ("uniform", "desk-uniform", "polarized-uniform", "polarized-citizen")


def _u64(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError(f"seed must be an unsigned 64-bit integer: {text}")
    return value


def _load_config(target: str) -> ExperimentConfig:
    path = Path(target)
    if path.suffix == ".json" or path.is_file():
        if not path.is_file():
            raise ConfigError(f"config file not found: {target}")
        return ExperimentConfig.load(path)
    return get_preset(target)


def cmd_run(args) -> int:
    try:
        config = _load_config(args.target).with_seed(args.seed)
    except (ConfigError, OSError) as err:
        print(f"committee-lab: {err}", file=sys.stderr)
        return EXIT_CONFIG
    outdir = Path(args.output or config.output or Path("out") / config.name)
    try:
        outdir.mkdir(parents=True, exist_ok=True)
    except OSError as err:
        print(f"committee-lab: cannot create output directory {outdir}: {err}", file=sys.stderr)
        return EXIT_CONFIG

    result = run_experiment(config, jobs=args.jobs)
    try:
        paths = write_outputs(result, outdir)
    except OSError as err:
        print(f"committee-lab: cannot write outputs to {outdir}: {err}", file=sys.stderr)
        return EXIT_CONFIG

    agg = [row for row in result.aggregate() if row.metric == "misrepresentation"]
    for rule in config.rules:
        mine = [row for row in agg if row.rule == rule.id]
        ok = [row for row in mine if row.count]
        errors = sum(row.errors for row in mine)
        if ok:
            means = ", ".join(f"k={row.k}: {row.mean:.4f}" for row in ok)
        else:
            means = "no feasible k"
        suffix = f" ({errors} error rows)" if errors else ""
        print(f"{rule.id:<15} [{rule.solver}] misrepresentation {means}{suffix}")
    print(f"wrote {', '.join(str(p) for p in paths.values())}")
    return 0


def cmd_show(args) -> int:
    try:
        generator = GeneratorSpec.named(args.generator)
        if args.rule not in rules_mod.RULE_IDS:
            raise ConfigError(f"unknown rule {args.rule!r}; known rules: {', '.join(rules_mod.RULE_IDS)}")
    except ConfigError as err:
        print(f"committee-lab: {err}", file=sys.stderr)
        return EXIT_CONFIG
    seed = default_seed() if args.seed is None else args.seed
    election = generator.sample(substream(seed, "show", args.generator))
    profile = derive_profile(election)
    rng = substream(seed, "show", args.generator, args.rule, args.k)
    try:
        committee = rules_mod.elect(args.rule, profile, args.k, rng, solver=args.solver)
    except ConfigError as err:
        print(f"committee-lab: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except CommitteeLabError as err:
        print(f"committee-lab: error:{err.code}: {err}", file=sys.stderr)
        return EXIT_RULE

    parties = member_parties(election, committee) if len(election.party_centers) else None
    print(f"{args.generator}: m={election.m} n={election.n} rule={args.rule} k={args.k} seed={seed}")
    rows = []
    for i, c in enumerate(committee.members):
        x, y = election.candidates[c]
        party = None if parties is None else int(parties[i])
        rows.append(CommitteeRow("show", 0, args.rule, args.k, c, float(x), float(y), party))
        label = "" if party is None else f"  party={party}"
        print(f"  {c:>4}  ({x: .4f}, {y: .4f}){label}")
    print(f"misrepresentation {fmt_float(avg_misrepresentation(election, committee))}")
    if args.dump:
        with open(args.dump, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(COMMITTEES_HEADER)
            writer.writerows(row.csv_fields() for row in rows)
    return 0


def cmd_list(args) -> int:
    print("presets:")
    for config in builtin_configs():
        g = config.generator
        print(f"  {config.name:<30} reps={config.replications:<4} m={g.m:<4} n={g.n:<4} "
              f"k={list(config.k_sweep) if len(config.k_sweep) < 6 else '1..97 step 3'}")
    print("generators (for show):")
    for name in SHOW_GENERATORS:
        print(f"  {name}")
    print("rules:")
    for rule_id in rules_mod.RULE_IDS:
        print(f"  {rule_id:<15} {rules_mod.RULE_NAMES[rule_id]}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="committee-lab",
                                     description="Spatial multiwinner election experiments.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a preset or JSON config")
    run.add_argument("target", help="preset name or path to a JSON config")
    run.add_argument("--seed", type=_u64, default=None,
                     help="master seed (default: config seed, then $COMMITTEE_LAB_SEED, then 0)")
    run.add_argument("--jobs", type=int, default=1, help="parallel worker processes")
    run.add_argument("-o", "--output", default=None, help="output directory")
    run.set_defaults(func=cmd_run)

    show = sub.add_parser("show", help="inspect one election under one rule")
    show.add_argument("generator", nargs="?", default="uniform", choices=SHOW_GENERATORS)
    show.add_argument("--rule", required=True)
    show.add_argument("--k", type=int, required=True)
    show.add_argument("--seed", type=_u64, default=None)
    show.add_argument("--solver", choices=rules_mod.SOLVERS, default=None)
    show.add_argument("--dump", default=None, help="write the committee as committees.csv rows")
    show.set_defaults(func=cmd_show)

    lst = sub.add_parser("list", help="list presets and rule ids")
    lst.set_defaults(func=cmd_list)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
