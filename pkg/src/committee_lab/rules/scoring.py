"""SNTV, Bloc and k-Borda: elect the k candidates with the highest totals."""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from committee_lab.errors import ConfigError
from committee_lab.spatial import Committee, PreferenceProfile, score_totals


class ScoredCandidate(NamedTuple):
    candidate: int
    score: int


def top_k_by_score(scores, k: int, rng: np.random.Generator) -> Committee:
    """Pick ``k`` candidates with maximal scores.

    ``scores`` is either a plain sequence indexed by candidate or a sequence
    of :class:`ScoredCandidate`.  Everyone strictly above the k-th highest
    score is elected; the remaining seats go to a uniformly random subset of
    the candidates tied at that score.
    """
    if len(scores) and isinstance(scores[0], ScoredCandidate):
        ids = np.array([s.candidate for s in scores], dtype=np.int64)
        values = np.array([s.score for s in scores])
    else:
        values = np.asarray(scores)
        ids = np.arange(len(values))
    m = len(values)
    if not 1 <= k <= m:
        raise ConfigError(f"committee size k={k} must lie in 1..{m}")

    threshold = np.sort(values)[::-1][k - 1]
    above = ids[values > threshold]
    tied = ids[values == threshold]
    picked = rng.choice(tied, size=k - len(above), replace=False)
    return Committee.of(np.concatenate([above, picked]))


def sntv(profile: PreferenceProfile, k: int, rng: np.random.Generator) -> Committee:
    return top_k_by_score(score_totals(profile, "plurality"), k, rng)


def bloc(profile: PreferenceProfile, k: int, rng: np.random.Generator) -> Committee:
    if not 1 <= k <= profile.m:
        raise ConfigError(f"committee size k={k} must lie in 1..{profile.m}")
    # approval threshold equals the committee size
    return top_k_by_score(score_totals(profile, "t_approval", t=k), k, rng)


def k_borda(profile: PreferenceProfile, k: int, rng: np.random.Generator) -> Committee:
    return top_k_by_score(score_totals(profile, "borda"), k, rng)
