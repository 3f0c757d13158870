"""Random-district benchmarks: First-Past-the-Post and District-Based Borda.

Voters are split into ``k`` districts of near-equal size by a uniformly
random shuffle.  Each district elects one representative by Plurality (FPP)
or Borda.  Districts are decided in index order; a candidate who already
holds a seat cannot win a later district, so the committee always has ``k``
distinct members.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from committee_lab.errors import ConfigError
from committee_lab.spatial import Committee, PreferenceProfile, score_totals


@dataclass(frozen=True)
class Districting:
    district_of: tuple

    @property
    def k(self) -> int:
        return max(self.district_of) + 1

    def members(self, district: int) -> np.ndarray:
        return np.flatnonzero(np.asarray(self.district_of) == district)

    def sizes(self) -> list:
        return np.bincount(np.asarray(self.district_of), minlength=self.k).tolist()


def random_partition(n: int, k: int, rng: np.random.Generator) -> Districting:
    if not 1 <= k <= n:
        raise ConfigError(f"cannot split {n} voters into {k} nonempty districts")
    order = rng.permutation(n)
    base, extra = divmod(n, k)
    # first n mod k districts take one extra voter
    sizes = np.full(k, base)
    sizes[:extra] += 1
    district_of = np.empty(n, dtype=np.int64)
    district_of[order] = np.repeat(np.arange(k), sizes)
    return Districting(tuple(int(d) for d in district_of))


def district_elect(profile: PreferenceProfile, districting: Districting, score_kind: str,
                   rng: np.random.Generator) -> Committee:
    if score_kind not in ("plurality", "borda"):
        raise ConfigError(f"district rules use plurality or borda, got {score_kind!r}")
    k = districting.k
    if k > profile.m:
        raise ConfigError(f"committee size k={k} exceeds m={profile.m}")
    if len(districting.district_of) != profile.n:
        raise ConfigError("districting does not cover the profile's voters")
    eligible = np.ones(profile.m, dtype=bool)
    winners = []
    for d in range(k):
        totals = score_totals(profile, score_kind, voters=districting.members(d))
        pool = np.flatnonzero(eligible)
        best = pool[totals[pool] == totals[pool].max()]
        c = int(rng.choice(best))
        eligible[c] = False
        winners.append(c)
    return Committee.of(winners)


def fpp(profile: PreferenceProfile, k: int, rng: np.random.Generator) -> Committee:
    return district_elect(profile, random_partition(profile.n, k, rng), "plurality", rng)


def district_borda(profile: PreferenceProfile, k: int, rng: np.random.Generator) -> Committee:
    return district_elect(profile, random_partition(profile.n, k, rng), "borda", rng)
