"""Chamberlin-Courant and Monroe.

Both rules score a committee by the Borda satisfaction each voter gets from
their representative.  Under Chamberlin-Courant the representative is the
voter's favourite member; under Monroe every member must represent between
floor(n/k) and ceil(n/k) voters.

Exact solvers enumerate every committee and are meant for small instances
(tests, oracle comparisons).  At experiment scale use :func:`cc_greedy` and
:func:`greedy_monroe`.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from committee_lab.errors import ConfigError, InstanceTooLargeError
from committee_lab.spatial import Committee, PreferenceProfile

CC_EXACT_BUDGET = 2_000_000
MONROE_EXACT_BUDGET = 100_000
MONROE_EXACT_MAX_VOTERS = 16

# cap on the (voters x committees x k) block scored at once by cc_exact
_CHUNK_ELEMENTS = 4_000_000


@dataclass(frozen=True)
class MonroeAssignment:
    """``rep[v]`` is the committee member representing voter ``v``."""

    rep: tuple

    @property
    def n(self) -> int:
        return len(self.rep)

    def loads(self, committee: Committee) -> dict:
        counts = dict.fromkeys(committee.members, 0)
        for c in self.rep:
            counts[c] = counts.get(c, 0) + 1
        return counts

    def is_valid(self, committee: Committee) -> bool:
        """True iff every voter maps into the committee with balanced loads."""
        lo, hi = self.n // committee.k, -(-self.n // committee.k)
        loads = self.loads(committee)
        if set(loads) != set(committee.members):
            return False
        return all(lo <= load <= hi for load in loads.values())

    def score(self, profile: PreferenceProfile) -> int:
        return int(profile.borda[np.arange(profile.n), np.asarray(self.rep)].sum())


def _check_k(k: int, m: int):
    if not 1 <= k <= m:
        raise ConfigError(f"committee size k={k} must lie in 1..{m}")


def cc_score(profile: PreferenceProfile, committee) -> int:
    members = np.asarray(list(committee), dtype=np.int64)
    if members.size == 0:
        return 0
    return int(profile.borda[:, members].max(axis=1).sum())


def cc_exact(profile: PreferenceProfile, k: int, budget: int = CC_EXACT_BUDGET) -> Committee:
    """Optimal Chamberlin-Courant committee by exhaustive search.

    Committees are scanned in lexicographic order and only a strictly better
    score replaces the incumbent, so among co-optimal committees the
    lexicographically smallest one is returned.

    Raises
    ------
    InstanceTooLargeError
        If ``C(m, k)`` exceeds ``budget``.
    """
    _check_k(k, profile.m)
    total = math.comb(profile.m, k)
    if total > budget:
        raise InstanceTooLargeError(
            f"instance too large for exact solver: C({profile.m},{k}) = {total} > budget {budget}"
        )
    borda = profile.borda
    chunk = max(1, _CHUNK_ELEMENTS // (profile.n * k))
    combos = itertools.combinations(range(profile.m), k)
    best_score, best = -1, None
    while True:
        block = np.array(list(itertools.islice(combos, chunk)), dtype=np.int64)
        if block.size == 0:
            break
        scores = borda[:, block].max(axis=2).sum(axis=0)
        i = int(np.argmax(scores))  # first maximum within the block
        if scores[i] > best_score:
            best_score, best = int(scores[i]), block[i]
    return Committee.of(best)


def cc_greedy_sequence(profile: PreferenceProfile, k: int) -> tuple[list, list]:
    """Run greedy CC and return the members in pick order with their marginal gains."""
    _check_k(k, profile.m)
    borda = profile.borda
    best = np.zeros(profile.n, dtype=np.int64)
    chosen = np.zeros(profile.m, dtype=bool)
    order, gains = [], []
    for _ in range(k):
        gain = np.maximum(borda - best[:, None], 0).sum(axis=0)
        gain[chosen] = -1
        c = int(np.argmax(gain))  # lowest index among equal gains
        chosen[c] = True
        best = np.maximum(best, borda[:, c])
        order.append(c)
        gains.append(int(gain[c]))
    return order, gains


def cc_greedy(profile: PreferenceProfile, k: int) -> Committee:
    order, _ = cc_greedy_sequence(profile, k)
    return Committee.of(order)


def optimal_monroe_assignment(profile: PreferenceProfile, committee: Committee):
    """Best balanced assignment of voters to a fixed committee.

    Each member gets ``floor(n/k)`` mandatory slots plus one optional slot
    when ``k`` does not divide ``n``.  Mandatory slots carry a bonus larger
    than any achievable Borda total, so a maximum-weight matching fills all
    of them first and the ``n mod k`` leftover voters take distinct
    optional slots.

    Returns
    -------
    (MonroeAssignment, int)
        A witness assignment and its total Borda satisfaction.
    """
    n, k = profile.n, committee.k
    if k > n:
        raise ConfigError(f"Monroe needs k <= n, got k={k}, n={n}")
    members = committee.as_array()
    base, extra = divmod(n, k)
    slot_member = np.repeat(np.arange(k), base)
    mandatory = np.ones(len(slot_member), dtype=bool)
    if extra:
        slot_member = np.concatenate([slot_member, np.arange(k)])
        mandatory = np.concatenate([mandatory, np.zeros(k, dtype=bool)])
    bonus = n * profile.m + 1
    weights = profile.borda[:, members][:, slot_member] + bonus * mandatory
    rows, cols = linear_sum_assignment(weights, maximize=True)
    rep = np.empty(n, dtype=np.int64)
    rep[rows] = members[slot_member[cols]]
    assignment = MonroeAssignment(tuple(int(c) for c in rep))
    return assignment, assignment.score(profile)


def monroe_score(profile: PreferenceProfile, committee: Committee) -> int:
    return optimal_monroe_assignment(profile, committee)[1]


def greedy_monroe(profile: PreferenceProfile, k: int, rng: np.random.Generator):
    """Greedy-Monroe: fill seats one at a time with fixed-size voter groups.

    Round ``i`` serves ``ceil(remaining voters / remaining seats)`` voters,
    which works out to ceil(n/k) for the first ``n mod k`` rounds and
    floor(n/k) afterwards.  Every unelected candidate is offered the
    remaining voters who like it most; the candidate whose group has the
    highest Borda total wins the seat and keeps that group.

    Ties between candidates are broken uniformly at random; ties between
    voters at the group boundary follow a random voter order (they do not
    change the group's total).
    """
    n, m = profile.n, profile.m
    if not 1 <= k <= m or k > n:
        raise ConfigError(f"Greedy-Monroe needs 1 <= k <= min(m, n), got k={k}, m={m}, n={n}")
    borda = profile.borda
    remaining = np.arange(n)
    open_cands = np.arange(m)
    rep = np.full(n, -1, dtype=np.int64)
    elected = []
    for seat in range(k):
        size = -(-len(remaining) // (k - seat))
        voters = rng.permutation(remaining)
        sub = borda[np.ix_(voters, open_cands)]
        top = np.argsort(-sub, axis=0, kind="stable")[:size]
        totals = np.take_along_axis(sub, top, axis=0).sum(axis=0)
        ties = np.flatnonzero(totals == totals.max())
        j = int(rng.choice(ties))
        c = int(open_cands[j])
        group = voters[top[:, j]]
        rep[group] = c
        elected.append(c)
        remaining = np.setdiff1d(remaining, group, assume_unique=True)
        open_cands = np.delete(open_cands, j)
    return Committee.of(elected), MonroeAssignment(tuple(int(c) for c in rep))


def monroe_exact(profile: PreferenceProfile, k: int, budget: int = MONROE_EXACT_BUDGET,
                 max_voters: int = MONROE_EXACT_MAX_VOTERS) -> Committee:
    """Optimal Monroe committee by scanning all committees (lexicographic tie-break)."""
    _check_k(k, profile.m)
    if k > profile.n:
        raise ConfigError(f"Monroe needs k <= n, got k={k}, n={profile.n}")
    total = math.comb(profile.m, k)
    if total > budget or profile.n > max_voters:
        raise InstanceTooLargeError(
            f"instance too large for exact solver: C({profile.m},{k}) = {total} committees "
            f"(budget {budget}), n = {profile.n} voters (limit {max_voters})"
        )
    best_score, best = -1, None
    for combo in itertools.combinations(range(profile.m), k):
        committee = Committee(combo, k)
        score = monroe_score(profile, committee)
        if score > best_score:
            best_score, best = score, committee
    return best
