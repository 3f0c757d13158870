"""Multiwinner rules and the registry used by the experiment harness.

Every registered rule is called as ``rule(profile, k, rng)`` and returns a
:class:`~committee_lab.spatial.Committee`.
"""

from __future__ import annotations

from committee_lab.errors import ConfigError
from committee_lab.rules.district import district_borda, district_elect, fpp, random_partition
from committee_lab.rules.optimization import (
    MonroeAssignment,
    cc_exact,
    cc_greedy,
    cc_score,
    greedy_monroe,
    monroe_exact,
    monroe_score,
    optimal_monroe_assignment,
)
from committee_lab.rules.scoring import ScoredCandidate, bloc, k_borda, sntv, top_k_by_score
from committee_lab.rules.stv import droop_quota, run_stv, stv

RULE_IDS = ("sntv", "bloc", "k_borda", "cc", "greedy_monroe", "stv", "fpp", "district_borda")
SOLVERS = ("exact", "greedy")

RULE_NAMES = {
    "sntv": "SNTV",
    "bloc": "Bloc",
    "k_borda": "k-Borda",
    "cc": "Chamberlin-Courant",
    "greedy_monroe": "Greedy-Monroe",
    "stv": "STV",
    "fpp": "Random-district FPP",
    "district_borda": "Random-district Borda",
}


def default_solver(rule_id: str) -> str:
    return "greedy" if rule_id in ("cc", "greedy_monroe") else "exact"


def elect(rule_id: str, profile, k: int, rng, solver: str | None = None):
    """Run a registered rule by id."""
    if rule_id not in RULE_IDS:
        raise ConfigError(f"unknown rule {rule_id!r}; known rules: {', '.join(RULE_IDS)}")
    solver = solver or default_solver(rule_id)
    if rule_id == "cc":
        if solver == "greedy":
            return cc_greedy(profile, k)
        if solver == "exact":
            return cc_exact(profile, k)
        raise ConfigError(f"unknown solver {solver!r} for cc; expected exact or greedy")
    if solver != default_solver(rule_id):
        raise ConfigError(f"rule {rule_id} only supports solver {default_solver(rule_id)!r}")
    if rule_id == "greedy_monroe":
        return greedy_monroe(profile, k, rng)[0]
    return {
        "sntv": sntv,
        "bloc": bloc,
        "k_borda": k_borda,
        "stv": stv,
        "fpp": fpp,
        "district_borda": district_borda,
    }[rule_id](profile, k, rng)


__all__ = [
    "MonroeAssignment",
    "RULE_IDS",
    "RULE_NAMES",
    "SOLVERS",
    "ScoredCandidate",
    "bloc",
    "cc_exact",
    "cc_greedy",
    "cc_score",
    "default_solver",
    "district_borda",
    "district_elect",
    "droop_quota",
    "elect",
    "fpp",
    "greedy_monroe",
    "k_borda",
    "monroe_exact",
    "monroe_score",
    "optimal_monroe_assignment",
    "random_partition",
    "run_stv",
    "sntv",
    "stv",
    "top_k_by_score",
]
