"""Experiment harness: generate elections, sweep rules over k, evaluate, persist.

Randomness is split into labelled substreams: the election of replication
``r`` comes from ``(seed, name, r)`` and the tie-breaking of each rule from
``(seed, name, r, rule, k)``.  Adding or removing a rule therefore leaves the
other rules' results untouched, and results are identical whatever the
degree of parallelism.
"""

from __future__ import annotations

import csv
import json
import logging
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import NamedTuple

from committee_lab import rules as rules_mod
from committee_lab.errors import CommitteeLabError, ConfigError
from committee_lab.generators import (
    POLARIZED_VARIANTS,
    PopulationSpec,
    generate_points,
    polarized_election,
    uniform_election,
)
from committee_lab.metrics import evaluate, member_parties
from committee_lab.rng import default_seed, substream
from committee_lab.spatial import Election, derive_profile

log = logging.getLogger(__name__)

RESULTS_HEADER = ("experiment", "replication", "rule", "solver", "k", "metric", "value", "status")
COMMITTEES_HEADER = ("experiment", "replication", "rule", "k", "member_index", "x", "y", "party")
AGGREGATE_HEADER = ("experiment", "rule", "k", "metric", "mean", "sd", "count", "errors")

FULL_K_SWEEP = tuple(range(1, 98, 3))


def fmt_float(value: float) -> str:
    return format(float(value), ".17g")


@dataclass(frozen=True)
class GeneratorSpec:
    """Election generator description, as it appears in config files.

    ``kind`` is ``"uniform"`` (candidates and voters from one rectangle),
    ``"polarized"`` (the three-group designs, selected by ``variant``) or
    ``"custom"`` (arbitrary candidate and voter populations).
    """

    kind: str
    candidates: int = 0
    voters: int = 0
    width: float = 6.0
    height: float = 6.0
    variant: str = ""
    candidate_population: PopulationSpec | None = None
    voter_population: PopulationSpec | None = None
    party_centers: tuple = ()

    def __post_init__(self):
        if self.kind == "uniform":
            if self.candidates < 1 or self.voters < 1:
                raise ConfigError("uniform generator needs candidates >= 1 and voters >= 1")
            PopulationSpec.rectangle(self.width, self.height)
        elif self.kind == "polarized":
            if self.variant not in POLARIZED_VARIANTS:
                raise ConfigError(
                    f"unknown polarized variant {self.variant!r}; expected one of {POLARIZED_VARIANTS}"
                )
        elif self.kind == "custom":
            if self.candidate_population is None or self.voter_population is None:
                raise ConfigError("custom generator needs candidate_population and voter_population")
        else:
            raise ConfigError(f"unknown generator kind {self.kind!r}")

    @property
    def m(self) -> int:
        if self.kind == "polarized":
            return 600 if self.variant == "uniform_candidates" else 250
        if self.kind == "custom":
            return _population_size(self.candidate_population, self.candidates)
        return self.candidates

    @property
    def n(self) -> int:
        if self.kind == "polarized":
            return 250 if self.variant == "uniform_candidates" else 500
        if self.kind == "custom":
            return _population_size(self.voter_population, self.voters)
        return self.voters

    def sample(self, rng) -> Election:
        if self.kind == "uniform":
            rect = PopulationSpec.rectangle(self.width, self.height)
            return uniform_election(self.candidates, self.voters, rect, rng)
        if self.kind == "polarized":
            return polarized_election(self.variant, rng)
        cands = generate_points(self.candidate_population, self.candidates or None, rng)
        voters = generate_points(self.voter_population, self.voters or None, rng)
        return Election(cands, voters, self.party_centers)

    def to_dict(self) -> dict:
        if self.kind == "uniform":
            return {"kind": "uniform", "candidates": self.candidates, "voters": self.voters,
                    "width": self.width, "height": self.height}
        if self.kind == "polarized":
            return {"kind": "polarized", "variant": self.variant}
        doc = {"kind": "custom",
               "candidate_population": self.candidate_population.to_dict(),
               "voter_population": self.voter_population.to_dict()}
        if self.candidates:
            doc["candidates"] = self.candidates
        if self.voters:
            doc["voters"] = self.voters
        if self.party_centers:
            doc["party_centers"] = [list(c) for c in self.party_centers]
        return doc

    @classmethod
    def from_dict(cls, doc: dict) -> "GeneratorSpec":
        doc = dict(doc)
        kind = doc.pop("kind", None)
        if kind == "custom":
            return cls(
                "custom",
                candidates=int(doc.get("candidates", 0)),
                voters=int(doc.get("voters", 0)),
                candidate_population=PopulationSpec.from_dict(doc["candidate_population"]),
                voter_population=PopulationSpec.from_dict(doc["voter_population"]),
                party_centers=tuple(tuple(map(float, c)) for c in doc.get("party_centers", ())),
            )
        allowed = {"candidates", "voters", "width", "height", "variant"}
        unknown = set(doc) - allowed
        if unknown:
            raise ConfigError(f"unknown generator fields: {sorted(unknown)}")
        return cls(kind, **doc)

    @classmethod
    def named(cls, name: str) -> "GeneratorSpec":
        """Short generator names used by ``committee-lab show``."""
        presets = {
            "uniform": cls("uniform", candidates=300, voters=600),
            "desk-uniform": cls("uniform", candidates=150, voters=300),
            "polarized-uniform": cls("polarized", variant="uniform_candidates"),
            "polarized-citizen": cls("polarized", variant="citizen_candidates"),
        }
        if name not in presets:
            raise ConfigError(f"unknown generator {name!r}; known: {', '.join(presets)}")
        return presets[name]


def _population_size(pop: PopulationSpec, count: int) -> int:
    return pop.total_count if pop.kind == "gaussian_mixture" else count


@dataclass(frozen=True)
class RuleSpec:
    id: str
    solver: str

    @classmethod
    def parse(cls, item) -> "RuleSpec":
        if isinstance(item, RuleSpec):
            return item
        if isinstance(item, str):
            rule_id, solver = item, None
        elif isinstance(item, dict):
            rule_id, solver = item.get("id"), item.get("solver")
        else:
            raise ConfigError(f"cannot parse rule entry {item!r}")
        if rule_id not in rules_mod.RULE_IDS:
            raise ConfigError(f"unknown rule {rule_id!r}; known rules: {', '.join(rules_mod.RULE_IDS)}")
        solver = solver or rules_mod.default_solver(rule_id)
        if solver not in rules_mod.SOLVERS:
            raise ConfigError(f"unknown solver {solver!r}")
        if rule_id != "cc" and solver != rules_mod.default_solver(rule_id):
            raise ConfigError(f"rule {rule_id} does not support solver {solver!r}")
        return cls(rule_id, solver)

    def to_json(self):
        return {"id": self.id, "solver": self.solver}


@dataclass(frozen=True)
class ExperimentConfig:
    name: str
    generator: GeneratorSpec
    replications: int
    k_sweep: tuple
    rules: tuple = field(default_factory=lambda: tuple(RuleSpec.parse(r) for r in rules_mod.RULE_IDS))
    seed: int | None = None
    output: str | None = None

    def __post_init__(self):
        if not self.name:
            raise ConfigError("experiment needs a name")
        if self.replications < 1:
            raise ConfigError(f"replications must be >= 1, got {self.replications}")
        if not self.k_sweep:
            raise ConfigError("k_sweep must not be empty")
        m = self.generator.m
        for k in self.k_sweep:
            if not 1 <= k <= m:
                raise ConfigError(f"committee size {k} outside 1..{m} for this generator")
        if not self.rules:
            raise ConfigError("at least one rule is required")
        if self.seed is not None and not 0 <= self.seed < 2**64:
            raise ConfigError(f"seed must be an unsigned 64-bit integer, got {self.seed}")

    @property
    def resolved_seed(self) -> int:
        return default_seed() if self.seed is None else self.seed

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "generator": self.generator.to_dict(),
            "replications": self.replications,
            "k_sweep": list(self.k_sweep),
            "rules": [r.to_json() for r in self.rules],
            "seed": self.seed,
            "output": self.output,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "ExperimentConfig":
        known = {"name", "generator", "replications", "k_sweep", "rules", "seed", "output"}
        unknown = set(doc) - known
        if unknown:
            raise ConfigError(f"unknown config fields: {sorted(unknown)}")
        try:
            kwargs = dict(
                name=str(doc["name"]),
                generator=GeneratorSpec.from_dict(doc["generator"]),
                replications=int(doc["replications"]),
                k_sweep=tuple(int(k) for k in doc["k_sweep"]),
                seed=None if doc.get("seed") is None else int(doc["seed"]),
                output=doc.get("output"),
            )
        except KeyError as err:
            raise ConfigError(f"config lacks field {err}") from None
        except (TypeError, ValueError) as err:
            if isinstance(err, ConfigError):
                raise
            raise ConfigError(f"malformed config: {err}") from None
        if "rules" in doc:
            kwargs["rules"] = tuple(RuleSpec.parse(r) for r in doc["rules"])
        return cls(**kwargs)

    @classmethod
    def load(cls, path) -> "ExperimentConfig":
        try:
            doc = json.loads(Path(path).read_text())
        except json.JSONDecodeError as err:
            raise ConfigError(f"{path}: invalid JSON ({err})") from None
        if not isinstance(doc, dict):
            raise ConfigError(f"{path}: top level must be a JSON object")
        return cls.from_dict(doc)

    def with_seed(self, seed: int | None) -> "ExperimentConfig":
        return self if seed is None else replace(self, seed=seed)


class ResultRow(NamedTuple):
    experiment: str
    replication: int
    rule: str
    solver: str
    k: int
    metric: str
    value: float | None
    status: str

    def csv_fields(self) -> tuple:
        value = "" if self.value is None else fmt_float(self.value)
        return (self.experiment, self.replication, self.rule, self.solver, self.k,
                self.metric, value, self.status)


class CommitteeRow(NamedTuple):
    experiment: str
    replication: int
    rule: str
    k: int
    member_index: int
    x: float
    y: float
    party: int | None

    def csv_fields(self) -> tuple:
        party = "" if self.party is None else self.party
        return (self.experiment, self.replication, self.rule, self.k, self.member_index,
                fmt_float(self.x), fmt_float(self.y), party)


class AggregateRow(NamedTuple):
    experiment: str
    rule: str
    k: int
    metric: str
    mean: float | None
    sd: float | None
    count: int
    errors: int

    def csv_fields(self) -> tuple:
        mean = "" if self.mean is None else fmt_float(self.mean)
        sd = "" if self.sd is None else fmt_float(self.sd)
        return (self.experiment, self.rule, self.k, self.metric, mean, sd, self.count, self.errors)


@dataclass
class ExperimentResult:
    experiment: str
    rows: list
    committee_rows: list

    def values(self, rule: str, k: int, metric: str) -> list:
        return [r.value for r in self.rows
                if r.rule == rule and r.k == k and r.metric == metric and r.status == "ok"]

    def aggregate(self) -> list:
        return aggregate(self)

    def write(self, outdir) -> dict:
        return write_outputs(self, outdir)


def metric_names(election: Election) -> list:
    names = ["misrepresentation"]
    parties = len(election.party_centers)
    names += [f"party_{p}_count" for p in range(parties)]
    if parties == 3:
        names.append("centrist_fraction")
    return names


def run_replication(config: ExperimentConfig, replication: int):
    """All rows for one replication (one election, every rule and k)."""
    seed = config.resolved_seed
    election = config.generator.sample(substream(seed, config.name, replication))
    profile = derive_profile(election)
    names = metric_names(election)
    rows, committee_rows = [], []
    for rule in config.rules:
        for k in config.k_sweep:
            rng = substream(seed, config.name, replication, rule.id, k)
            try:
                committee = rules_mod.elect(rule.id, profile, k, rng, solver=rule.solver)
            except CommitteeLabError as err:
                log.debug("%s r=%d %s k=%d: %s", config.name, replication, rule.id, k, err)
                rows += [ResultRow(config.name, replication, rule.id, rule.solver, k, name,
                                   None, f"error:{err.code}") for name in names]
                continue
            metrics = evaluate(election, committee, rule.id, k).metrics()
            rows += [ResultRow(config.name, replication, rule.id, rule.solver, k, name,
                               float(metrics[name]), "ok") for name in names]
            parties = (member_parties(election, committee) if len(election.party_centers)
                       else [None] * k)
            for c, party in zip(committee.members, parties):
                x, y = election.candidates[c]
                committee_rows.append(CommitteeRow(
                    config.name, replication, rule.id, k, c, float(x), float(y),
                    None if party is None else int(party)))
    return rows, committee_rows


def run_experiment(config: ExperimentConfig, jobs: int = 1) -> ExperimentResult:
    reps = range(config.replications)
    if jobs > 1 and config.replications > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(run_replication, [config] * len(reps), reps))
    else:
        parts = [run_replication(config, r) for r in reps]
    rows = [row for part in parts for row in part[0]]
    committee_rows = [row for part in parts for row in part[1]]
    return ExperimentResult(config.name, rows, committee_rows)


def aggregate(result: ExperimentResult) -> list:
    """Mean, sample sd (n-1) and counts per (rule, k, metric); error rows only counted."""
    if not result.rows:
        raise ValueError("nothing to aggregate")
    groups: dict = {}
    for row in result.rows:
        values, errors = groups.setdefault((row.rule, row.k, row.metric), ([], [0]))
        if row.status == "ok":
            values.append(row.value)
        else:
            errors[0] += 1
    out = []
    for (rule, k, metric), (values, errors) in groups.items():
        if values:
            mean = statistics.fmean(values)
            sd = statistics.stdev(values) if len(values) > 1 else 0.0
        else:
            mean = sd = None
        out.append(AggregateRow(result.experiment, rule, k, metric, mean, sd, len(values), errors[0]))
    return out


def _write_csv(path: Path, header, rows):
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(row.csv_fields() for row in rows)


def write_outputs(result: ExperimentResult, outdir) -> dict:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    paths = {
        "results": outdir / "results.csv",
        "committees": outdir / "committees.csv",
        "aggregate": outdir / "aggregate.csv",
    }
    _write_csv(paths["results"], RESULTS_HEADER, result.rows)
    _write_csv(paths["committees"], COMMITTEES_HEADER, result.committee_rows)
    _write_csv(paths["aggregate"], AGGREGATE_HEADER, aggregate(result))
    return paths


def read_results(path) -> list:
    with open(path, newline="", encoding="utf-8") as fh:
        return [
            ResultRow(r["experiment"], int(r["replication"]), r["rule"], r["solver"], int(r["k"]),
                      r["metric"], float(r["value"]) if r["value"] else None, r["status"])
            for r in csv.DictReader(fh)
        ]


def _all_rules() -> tuple:
    return tuple(RuleSpec.parse(r) for r in rules_mod.RULE_IDS)


def builtin_configs() -> list:
    uniform = GeneratorSpec("uniform", candidates=300, voters=600, width=6.0, height=6.0)
    pol_uniform = GeneratorSpec("polarized", variant="uniform_candidates")
    pol_citizen = GeneratorSpec("polarized", variant="citizen_candidates")
    return [
        ExperimentConfig("uniform-representativity", uniform, 60, FULL_K_SWEEP, _all_rules()),
        ExperimentConfig("polarized-uniform-candidates", pol_uniform, 65, FULL_K_SWEEP, _all_rules()),
        ExperimentConfig("polarized-citizen-candidates", pol_citizen, 100, FULL_K_SWEEP, _all_rules()),
        ExperimentConfig("desk-uniform",
                         GeneratorSpec("uniform", candidates=150, voters=300, width=6.0, height=6.0),
                         20, (10, 25, 40), _all_rules()),
        ExperimentConfig("desk-polarized-uniform", pol_uniform, 20, (10, 22, 34), _all_rules()),
        ExperimentConfig("desk-polarized-citizen", pol_citizen, 30, (15, 30), _all_rules()),
    ]


def get_preset(name: str) -> ExperimentConfig:
    for config in builtin_configs():
        if config.name == name:
            return config
    known = ", ".join(c.name for c in builtin_configs())
    raise ConfigError(f"unknown preset {name!r}; known presets: {known}")


__all__ = [
    "AGGREGATE_HEADER",
    "COMMITTEES_HEADER",
    "RESULTS_HEADER",
    "AggregateRow",
    "CommitteeRow",
    "ExperimentConfig",
    "ExperimentResult",
    "GeneratorSpec",
    "ResultRow",
    "RuleSpec",
    "aggregate",
    "builtin_configs",
    "get_preset",
    "read_results",
    "run_experiment",
    "run_replication",
    "write_outputs",
]
