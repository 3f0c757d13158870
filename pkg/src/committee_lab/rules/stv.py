"""Single Transferable Vote with whole-voter removal.

When a candidate reaches the quota, exactly ``q`` of their current
supporters (a uniformly random subset) leave the election; there are no
fractional surplus transfers.  If nobody reaches the quota, the candidate
with the fewest first preferences among active candidates is eliminated.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from committee_lab.errors import ConfigError, QuotaExhaustedError
from committee_lab.spatial import Committee, PreferenceProfile


def droop_quota(n: int, k: int) -> int:
    if n < 1 or k < 1:
        raise ConfigError(f"quota needs n, k >= 1, got n={n}, k={k}")
    return n // (k + 1) + 1


@dataclass(frozen=True)
class StvOutcome:
    committee: Committee
    quota: int
    elected_order: tuple
    eliminated_order: tuple
    # removed_voters[i] are the q voters retired when elected_order[i] won
    removed_voters: tuple


def run_stv(profile: PreferenceProfile, k: int, rng: np.random.Generator) -> StvOutcome:
    n, m = profile.n, profile.m
    if not 1 <= k <= m:
        raise ConfigError(f"committee size k={k} must lie in 1..{m}")
    q = droop_quota(n, k)
    if k * q > n:
        raise QuotaExhaustedError(n, k, q)

    rankings = profile.rankings
    voter_active = np.ones(n, dtype=bool)
    cand_active = np.ones(m, dtype=bool)
    # cursor[v] indexes voter v's highest-ranked candidate still in contention
    cursor = np.zeros(n, dtype=np.int64)
    rows = np.arange(n)
    elected, eliminated, removed = [], [], []

    while len(elected) < k:
        assert cand_active.any(), "STV ran out of candidates"
        tops = rankings[rows, cursor]
        stale = voter_active & ~cand_active[tops]
        while stale.any():
            cursor[stale] += 1
            tops = rankings[rows, cursor]
            stale = voter_active & ~cand_active[tops]
        tallies = np.bincount(tops[voter_active], minlength=m)

        reached = np.flatnonzero(cand_active & (tallies >= q))
        if reached.size:
            c = int(rng.choice(reached))
            supporters = np.flatnonzero(voter_active & (tops == c))
            gone = np.sort(rng.choice(supporters, size=q, replace=False))
            voter_active[gone] = False
            cand_active[c] = False
            elected.append(c)
            removed.append(tuple(int(v) for v in gone))
        else:
            live = np.flatnonzero(cand_active)
            weakest = live[tallies[live] == tallies[live].min()]
            c = int(rng.choice(weakest))
            cand_active[c] = False
            eliminated.append(c)

    return StvOutcome(Committee.of(elected), q, tuple(elected), tuple(eliminated), tuple(removed))


def stv(profile: PreferenceProfile, k: int, rng: np.random.Generator) -> Committee:
    return run_stv(profile, k, rng).committee
