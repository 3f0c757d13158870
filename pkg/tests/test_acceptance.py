"""Acceptance criteria C1-C8.

Each test prints one ``[PASS]``/``[FAIL]`` line and adds it to the summary
section shown at the end of the pytest run.
"""
import time
from dataclasses import replace

import numpy as np

from committee_lab.errors import QuotaExhaustedError
from committee_lab.experiments import RuleSpec, aggregate, get_preset, run_experiment, write_outputs
from committee_lab.generators import PopulationSpec, polarized_election, uniform_election
from committee_lab.metrics import avg_misrepresentation, party_counts
from committee_lab.rng import substream
from committee_lab.rules import (
    cc_exact,
    cc_greedy,
    cc_score,
    droop_quota,
    greedy_monroe,
    monroe_exact,
    monroe_score,
    optimal_monroe_assignment,
    run_stv,
)
from committee_lab.spatial import Committee, derive_profile

from conftest import ACCEPTANCE_LINES
from oracles import cc_brute_force, monroe_brute_force, monroe_value_brute_force

SQUARE = PopulationSpec.rectangle(6, 6)
SEED = 42


def record(cid, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] {cid} {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def instance(seed, m, n, tag):
    election = uniform_election(m, n, SQUARE, substream(seed, tag))
    return election, derive_profile(election)


def cc_suite():
    rng = np.random.default_rng(1001)
    for i in range(200):
        m = int(rng.integers(1, 13))
        n = int(rng.integers(1, 13))
        k = int(rng.integers(1, min(m, 4) + 1))
        yield instance(i, m, n, "cc-oracle")[1], k


def mean_of(agg, rule, k, metric):
    row = agg.get((rule, k, metric))
    return None if row is None or row.count == 0 else row.mean


def aggregate_table(config):
    result = run_experiment(config)
    return {(a.rule, a.k, a.metric): a for a in aggregate(result)}


def test_c1_exact_solvers_match_brute_force():
    start = time.perf_counter()
    cc_bad = 0
    for profile, k in cc_suite():
        best, lex_first = cc_brute_force(profile, k)
        found = cc_exact(profile, k)
        if cc_score(profile, found) != best or found.members != lex_first:
            cc_bad += 1

    rng = np.random.default_rng(2002)
    monroe_bad = 0
    for i in range(50):
        m = int(rng.integers(1, 9))
        n = int(rng.integers(1, 9))
        k = int(rng.integers(1, min(m, n, 2) + 1))
        _, profile = instance(i, m, n, "monroe-oracle")
        best, _ = monroe_brute_force(profile, k)
        found = monroe_exact(profile, k)
        if monroe_score(profile, found) != best or monroe_value_brute_force(profile, found.members) != best:
            monroe_bad += 1
    elapsed = time.perf_counter() - start
    ok = cc_bad == 0 and monroe_bad == 0 and elapsed < 120
    assert record("C1", ok, f"exact solvers vs brute force: cc mismatches {cc_bad}/200, "
                            f"monroe mismatches {monroe_bad}/50, {elapsed:.1f}s (< 120s)")


def test_c2_greedy_cc_approximation_bound():
    # 0.6321205589 > 1 - 1/e, so passing this integer check implies the real bound
    violations, worst = 0, 1.0
    for profile, k in cc_suite():
        exact = cc_score(profile, cc_exact(profile, k))
        greedy = cc_score(profile, cc_greedy(profile, k))
        if greedy * 10**10 < 6321205589 * exact:
            violations += 1
        if exact:
            worst = min(worst, greedy / exact)
    assert record("C2", violations == 0,
                  f"greedy CC >= (1-1/e) exact: violations {violations}/200, worst ratio {worst:.4f}")


def test_c3_monroe_balance():
    rng = np.random.default_rng(3003)
    violations = 0
    for i in range(1000):
        n = int(rng.integers(1, 81))
        m = int(rng.integers(1, 25))
        k = int(rng.integers(1, min(m, n) + 1))
        _, profile = instance(i, m, n, "balance")
        lo, hi = n // k, -(-n // k)
        committee, assignment = greedy_monroe(profile, k, substream(i, "gm"))
        loads = assignment.loads(committee)
        if committee.k != k or set(loads) != set(committee.members) or \
                not all(lo <= x <= hi for x in loads.values()):
            violations += 1
        fixed = Committee.of(rng.choice(m, k, replace=False))
        optimal, _ = optimal_monroe_assignment(profile, fixed)
        loads = optimal.loads(fixed)
        if set(loads) != set(fixed.members) or not all(lo <= x <= hi for x in loads.values()):
            violations += 1
    assert record("C3", violations == 0,
                  f"Monroe loads within [floor(n/k), ceil(n/k)]: violations {violations} over 1000 (n,k)")


def test_c4_stv_accounting():
    rng = np.random.default_rng(4004)
    bad, feasible, i = 0, 0, 0
    while feasible < 500:
        i += 1
        n = int(rng.integers(2, 120))
        m = int(rng.integers(1, 30))
        k = int(rng.integers(1, m + 1))
        if k * droop_quota(n, k) > n:
            continue
        feasible += 1
        _, profile = instance(i, m, n, "stv-accounting")
        outcome = run_stv(profile, k, substream(i, "stv"))
        removed = sum(len(batch) for batch in outcome.removed_voters)
        if outcome.committee.k != k or removed != k * droop_quota(n, k):
            bad += 1

    _, big = instance(0, 300, 600, "stv-600")
    try:
        run_stv(big, 52, substream(0, "stv-600"))
        exhausted = False
    except QuotaExhaustedError as exc:
        exhausted = (exc.n, exc.k, exc.quota) == (600, 52, 12)
    ok = bad == 0 and exhausted
    assert record("C4", ok, f"STV |W|=k and removed=k*q: failures {bad}/500; "
                            f"(n=600,k=52) quota exhaustion raised: {exhausted}")


def test_c5_desk_uniform_ordering():
    start = time.perf_counter()
    config = get_preset("desk-uniform").with_seed(SEED)
    agg = aggregate_table(config)
    elapsed = time.perf_counter() - start
    problems = []
    for k in config.k_sweep:
        d = {rule.id: mean_of(agg, rule.id, k, "misrepresentation") for rule in config.rules}
        missing = sorted(r for r, v in d.items() if v is None)
        if missing:
            problems.append(f"k={k}: no successful runs for {', '.join(missing)}")
        if None in (d["k_borda"], d["bloc"], d["fpp"], d["sntv"]):
            continue
        if not d["k_borda"] > d["bloc"] > d["fpp"] > d["sntv"]:
            problems.append(f"k={k}: k_borda>bloc>fpp>sntv broken")
        proportional = [d[r] for r in ("stv", "greedy_monroe", "cc") if d[r] is not None]
        if proportional:
            if d["sntv"] < 0.95 * min(proportional):
                problems.append(f"k={k}: sntv below 0.95*min(proportional)")
            if max(proportional) > 1.10 * min(proportional):
                problems.append(f"k={k}: proportional rules spread over 10%")
    if elapsed >= 600:
        problems.append(f"runtime {elapsed:.0f}s")
    detail = "; ".join(problems) if problems else "all orderings and the 10% band hold"
    assert record("C5", not problems, f"desk-uniform orderings at k={config.k_sweep}, "
                                      f"{elapsed:.1f}s: {detail}")


def test_c6_centrist_proportionality():
    config = get_preset("desk-polarized-citizen").with_seed(SEED)
    agg = aggregate_table(config)
    problems, values = [], []
    for rule in ("greedy_monroe", "stv"):
        for k in (15, 30):
            frac = mean_of(agg, rule, k, "centrist_fraction")
            values.append(f"{rule}@{k}=" + ("undefined" if frac is None else f"{frac:.3f}"))
            if frac is None:
                problems.append(f"{rule} k={k}: no successful runs")
            elif abs(frac - 0.20) > 0.075:
                problems.append(f"{rule} k={k}: {frac:.3f} outside 0.20+-0.075")

    base = get_preset("desk-polarized-uniform").with_seed(SEED)
    bloc_only = replace(base, k_sweep=(34,), rules=(RuleSpec.parse("bloc"),))
    bloc = mean_of(aggregate_table(bloc_only), "bloc", 34, "centrist_fraction")
    values.append(f"bloc@34={bloc:.3f}")
    if not bloc < 0.05:
        problems.append(f"bloc k=34: {bloc:.3f} not below 0.05")
    detail = ", ".join(values) + ("; " + "; ".join(problems) if problems else "")
    assert record("C6", not problems, f"centrist fractions: {detail}")


def test_c7_monotonicity_and_conservation():
    rng = np.random.default_rng(7007)
    mono = parties = 0
    for i in range(1000):
        m = int(rng.integers(2, 40))
        n = int(rng.integers(1, 60))
        election = uniform_election(m, n, SQUARE, substream(i, "mono"))
        size = int(rng.integers(1, m))
        chosen = rng.choice(m, size + 1, replace=False)
        w, c = chosen[:-1], chosen[-1]
        if avg_misrepresentation(election, np.append(w, c)) > avg_misrepresentation(election, w):
            mono += 1

    for i in range(100):
        e = polarized_election("citizen_candidates", substream(i, "parties"))
        k = int(rng.integers(1, e.m + 1))
        if sum(party_counts(e, rng.choice(e.m, k, replace=False))) != k:
            parties += 1

    conservation = 0
    for i in range(100):
        m = int(rng.integers(1, 50))
        n = int(rng.integers(1, 80))
        _, profile = instance(i, m, n, "borda")
        if int(profile.borda.sum()) != n * m * (m - 1) // 2:
            conservation += 1
    ok = mono == conservation == parties == 0
    assert record("C7", ok, f"invariants: monotonicity violations {mono}/1000, "
                            f"party_counts sum violations {parties}/100, "
                            f"Borda conservation violations {conservation}/100")


def test_c8_determinism(tmp_path):
    config = get_preset("desk-uniform").with_seed(SEED)
    first = write_outputs(run_experiment(config), tmp_path / "first")
    second = write_outputs(run_experiment(config), tmp_path / "second")
    differing = [name for name in first if first[name].read_bytes() != second[name].read_bytes()]
    assert record("C8", not differing, "desk-uniform seed 42 twice: "
                  + (f"differing files {differing}" if differing else "byte-identical CSVs"))
