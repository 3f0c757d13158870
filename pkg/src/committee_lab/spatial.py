"""Spatial elections, preference profiles and elementary scores.

Voters and candidates are points in the plane; each voter ranks the
candidates by increasing Euclidean distance.  Exact distance ties are broken
by candidate index, so deriving a profile involves no randomness.

Positions follow the usual 1-based convention (``pos == 1`` is the top
choice).  Internally the profile keeps 0-based arrays for speed.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from committee_lab.errors import ConfigError

SCORE_KINDS = ("plurality", "t_approval", "borda")


@dataclass(frozen=True)
class Point2D:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite coordinates: ({self.x}, {self.y})")

    def __iter__(self):
        yield self.x
        yield self.y


def euclidean_distance(p, q) -> float:
    px, py = p
    qx, qy = q
    # np.hypot avoids under/overflow and is the same routine distance_matrix
    # uses, so scalar and batch distances agree bit for bit.
    return float(np.hypot(float(px) - float(qx), float(py) - float(qy)))


def distance_matrix(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Pairwise distances, shape ``(len(a), len(b))``."""
    return np.hypot(a[:, None, 0] - b[None, :, 0], a[:, None, 1] - b[None, :, 1])


def _as_points(points, name: str, allow_empty: bool = False) -> np.ndarray:
    arr = np.array([tuple(p) for p in points], dtype=float).reshape(-1, 2)
    if len(arr) == 0 and not allow_empty:
        raise ConfigError(f"{name} must contain at least one point")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contain non-finite coordinates")
    arr.setflags(write=False)
    return arr


class Election:
    """Candidate and voter positions, optionally with party (group) centers.

    Parameters
    ----------
    candidates, voters : sequence of points
        Anything indexable as ``(x, y)``: :class:`Point2D`, tuples, or an
        ``(N, 2)`` array.
    party_centers : sequence of points, optional
        Group means; candidates and voters belong to the nearest one.
    """

    def __init__(self, candidates, voters, party_centers=()):
        self.candidates = _as_points(candidates, "candidates")
        self.voters = _as_points(voters, "voters")
        self.party_centers = _as_points(party_centers, "party_centers", allow_empty=True)

    @property
    def m(self) -> int:
        return len(self.candidates)

    @property
    def n(self) -> int:
        return len(self.voters)

    def candidate(self, i: int) -> Point2D:
        return Point2D(*map(float, self.candidates[i]))

    def voter(self, j: int) -> Point2D:
        return Point2D(*map(float, self.voters[j]))

    def __eq__(self, other):
        if not isinstance(other, Election):
            return NotImplemented
        return (
            np.array_equal(self.candidates, other.candidates)
            and np.array_equal(self.voters, other.voters)
            and np.array_equal(self.party_centers, other.party_centers)
        )

    def __repr__(self):
        return f"Election(m={self.m}, n={self.n}, parties={len(self.party_centers)})"

    def to_dict(self) -> dict:
        doc = {
            "candidates": self.candidates.tolist(),
            "voters": self.voters.tolist(),
        }
        if len(self.party_centers):
            doc["party_centers"] = self.party_centers.tolist()
        return doc

    @classmethod
    def from_dict(cls, doc: dict) -> "Election":
        try:
            return cls(doc["candidates"], doc["voters"], doc.get("party_centers") or ())
        except KeyError as err:
            raise ConfigError(f"election document lacks field {err}") from None

    def to_json(self) -> str:
        # json writes floats with repr(), which round-trips doubles exactly.
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "Election":
        return cls.from_dict(json.loads(text))


class PreferenceProfile:
    """Complete rankings, one row per voter, most preferred candidate first."""

    def __init__(self, rankings):
        rankings = np.array(rankings, dtype=np.int64)
        if rankings.ndim != 2 or rankings.shape[0] < 1 or rankings.shape[1] < 1:
            raise ValueError("rankings must be a non-empty (n, m) array")
        m = rankings.shape[1]
        if not np.array_equal(np.sort(rankings, axis=1), np.broadcast_to(np.arange(m), rankings.shape)):
            raise ValueError("every ranking must be a permutation of 0..m-1")
        rankings.setflags(write=False)
        self.rankings = rankings

    @property
    def n(self) -> int:
        return self.rankings.shape[0]

    @property
    def m(self) -> int:
        return self.rankings.shape[1]

    @cached_property
    def positions(self) -> np.ndarray:
        """0-based position of candidate ``c`` for voter ``v`` at ``[v, c]``."""
        pos = np.empty_like(self.rankings)
        rows = np.arange(self.n)[:, None]
        pos[rows, self.rankings] = np.arange(self.m)
        pos.setflags(write=False)
        return pos

    @cached_property
    def borda(self) -> np.ndarray:
        """Borda score matrix, ``borda[v, c] = m - pos_v(c)``."""
        b = (self.m - 1) - self.positions
        b.setflags(write=False)
        return b

    def pos(self, voter: int, candidate: int) -> int:
        self._check(voter, candidate)
        return int(self.positions[voter, candidate]) + 1

    def _check(self, voter: int, candidate: int):
        if not 0 <= voter < self.n:
            raise IndexError(f"voter index {voter} out of range 0..{self.n - 1}")
        if not 0 <= candidate < self.m:
            raise IndexError(f"candidate index {candidate} out of range 0..{self.m - 1}")

    def __eq__(self, other):
        if not isinstance(other, PreferenceProfile):
            return NotImplemented
        return np.array_equal(self.rankings, other.rankings)

    def __repr__(self):
        return f"PreferenceProfile(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class Committee:
    """A size-``k`` set of candidate indices, stored sorted."""

    members: tuple
    k: int

    def __post_init__(self):
        if len(self.members) != self.k:
            raise ValueError(f"committee has {len(self.members)} members, expected {self.k}")
        if len(set(self.members)) != self.k:
            raise ValueError("committee members must be distinct")
        if any(c < 0 for c in self.members):
            raise ValueError("candidate indices must be nonnegative")

    @classmethod
    def of(cls, members: Iterable[int], m: int | None = None) -> "Committee":
        members = tuple(sorted(int(c) for c in members))
        if m is not None and members and members[-1] >= m:
            raise ValueError(f"candidate index {members[-1]} out of range for m={m}")
        return cls(members, len(members))

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return self.k

    def __contains__(self, c):
        return c in self.members

    def as_array(self) -> np.ndarray:
        return np.asarray(self.members, dtype=np.int64)


def derive_profile(election: Election) -> PreferenceProfile:
    d = distance_matrix(election.voters, election.candidates)
    # stable sort => equal distances keep ascending candidate index
    return PreferenceProfile(np.argsort(d, axis=1, kind="stable"))


def borda_score(profile: PreferenceProfile, voter: int, candidate: int) -> int:
    return profile.m - profile.pos(voter, candidate)


def t_approval_score(profile: PreferenceProfile, voter: int, candidate: int, t: int) -> int:
    if not 1 <= t <= profile.m:
        raise ValueError(f"t must lie in 1..{profile.m}, got {t}")
    return int(profile.pos(voter, candidate) <= t)


def _validate_kind(profile: PreferenceProfile, kind: str, t: int | None) -> int | None:
    if kind not in SCORE_KINDS:
        raise ValueError(f"unknown score kind {kind!r}; expected one of {SCORE_KINDS}")
    if kind == "plurality":
        return 1
    if kind == "t_approval":
        if t is None or not 1 <= t <= profile.m:
            raise ValueError(f"t-approval needs 1 <= t <= {profile.m}, got {t}")
    return t


def score_totals(profile: PreferenceProfile, kind: str = "borda", t: int | None = None,
                 voters: Sequence[int] | np.ndarray | None = None) -> np.ndarray:
    """Total score of every candidate, optionally over a subset of voters."""
    t = _validate_kind(profile, kind, t)
    rows = slice(None) if voters is None else np.asarray(voters, dtype=np.int64)
    if kind == "borda":
        return profile.borda[rows].sum(axis=0)
    return (profile.positions[rows] < t).sum(axis=0)


def total_score(profile: PreferenceProfile, candidate: int, kind: str = "borda",
                t: int | None = None) -> int:
    if not 0 <= candidate < profile.m:
        raise IndexError(f"candidate index {candidate} out of range")
    return int(score_totals(profile, kind, t)[candidate])
