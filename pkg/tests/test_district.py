import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from committee_lab.errors import ConfigError
from committee_lab.rng import substream
from committee_lab.rules import district_borda, district_elect, fpp, random_partition, sntv
from committee_lab.rules.district import Districting
from committee_lab.spatial import PreferenceProfile, score_totals

from oracles import borda_tally


def test_partition_sizes():
    assert random_partition(6, 3, substream(0)).sizes() == [2, 2, 2]
    assert random_partition(7, 3, substream(0)).sizes() == [3, 2, 2]
    assert random_partition(5, 5, substream(0)).sizes() == [1] * 5
    with pytest.raises(ConfigError):
        random_partition(3, 4, substream(0))


def test_partition_is_deterministic_per_seed():
    assert random_partition(50, 7, substream(3, "d")) == random_partition(50, 7, substream(3, "d"))
    assert random_partition(50, 7, substream(3, "d")) != random_partition(50, 7, substream(4, "d"))


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 200), st.data())
def test_partition_balance(n, data):
    k = data.draw(st.integers(1, n))
    sizes = random_partition(n, k, substream(data.draw(st.integers(0, 2**32)))).sizes()
    assert len(sizes) == k and sum(sizes) == n
    assert set(sizes) <= {n // k, -(-n // k)}
    assert min(sizes) >= 1


def test_partition_marginals():
    n, k, draws = 9, 3, 10_000
    hits = np.zeros(n)
    for i in range(draws):
        hits += np.asarray(random_partition(n, k, substream(11, "marg", i)).district_of) == 0
    p = 1 / k
    sigma = np.sqrt(p * (1 - p) / draws)
    assert np.all(np.abs(hits / draws - p) <= 3 * sigma)


def test_single_district_is_whole_electorate(make_instance):
    _, profile = make_instance(2, 6, 15)
    borda = score_totals(profile, "borda")
    plural = score_totals(profile, "plurality")
    for seed in range(10):
        assert plural[fpp(profile, 1, substream(seed)).members[0]] == plural.max()
        assert borda[district_borda(profile, 1, substream(seed)).members[0]] == borda.max()


def test_unanimous_districts():
    profile = PreferenceProfile([[0, 1, 2]] * 2 + [[2, 1, 0]] * 2)
    districting = Districting((0, 0, 1, 1))
    assert district_elect(profile, districting, "plurality", substream(0)).members == (0, 2)


def test_repeat_winner_becomes_ineligible():
    profile = PreferenceProfile([[0, 1, 2]] * 4)
    committee = district_elect(profile, Districting((0, 0, 1, 1)), "plurality", substream(0))
    assert committee.members == (0, 1)
    committee = district_elect(profile, Districting((0, 1, 0, 1)), "borda", substream(0))
    assert committee.members == (0, 1)


def _consistent_with_recount(profile, districting, members):
    """Some order of the members wins the districts one by one, each a tally maximum."""
    tallies = [borda_tally(profile, voters=districting.members(d).tolist())
               for d in range(districting.k)]
    for order in itertools.permutations(members):
        eligible = set(range(profile.m))
        ok = True
        for tally, winner in zip(tallies, order):
            if tally[winner] != max(tally[c] for c in eligible):
                ok = False
                break
            eligible.discard(winner)
        if ok:
            return True
    return False


def test_district_borda_matches_recount(make_instance):
    for seed in range(30):
        _, profile = make_instance(seed, 5, 8)
        districting = random_partition(8, 2, substream(seed, "part"))
        committee = district_elect(profile, districting, "borda", substream(seed, "tie"))
        assert committee.k == 2
        assert _consistent_with_recount(profile, districting, committee.members)


def test_district_rules_return_k_distinct(make_instance):
    _, profile = make_instance(9, 12, 40)
    for k in (1, 3, 7, 12):
        assert fpp(profile, k, substream(k)).k == k
        assert district_borda(profile, k, substream(k)).k == k
    assert sntv(profile, 3, substream(0)).k == 3


def test_district_elect_rejects_unknown_score(make_instance):
    _, profile = make_instance(0, 3, 4)
    with pytest.raises(ConfigError):
        district_elect(profile, Districting((0, 0, 1, 1)), "copeland", substream(0))
