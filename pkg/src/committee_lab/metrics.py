"""How well a committee represents the electorate.

Misrepresentation is measured on raw positions: a voter's misrepresentation
is the distance to the nearest committee member.  Party statistics label
each member by the nearest group center.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from committee_lab.generators import assign_parties
from committee_lab.spatial import Committee, Election, distance_matrix


@dataclass(frozen=True)
class EvaluationRecord:
    rule: str
    k: int
    misrepresentation: float
    party_counts: tuple = field(default_factory=tuple)
    centrist_fraction: float | None = None

    def metrics(self) -> dict:
        """Flat ``metric name -> value`` mapping, in a fixed order."""
        out = {"misrepresentation": self.misrepresentation}
        for party, count in enumerate(self.party_counts):
            out[f"party_{party}_count"] = count
        if self.centrist_fraction is not None:
            out["centrist_fraction"] = self.centrist_fraction
        return out


def _members(committee) -> np.ndarray:
    members = np.asarray(list(committee), dtype=np.int64)
    if members.size == 0:
        raise ValueError("committee must be nonempty")
    return members


def misrepresentation_per_voter(election: Election, committee) -> np.ndarray:
    members = _members(committee)
    return distance_matrix(election.voters, election.candidates[members]).min(axis=1)


def voter_misrepresentation(election: Election, committee, voter: int) -> float:
    if not 0 <= voter < election.n:
        raise IndexError(f"voter index {voter} out of range")
    members = _members(committee)
    return float(distance_matrix(election.voters[voter:voter + 1],
                                 election.candidates[members]).min())


def avg_misrepresentation(election: Election, committee) -> float:
    return float(misrepresentation_per_voter(election, committee).mean())


def member_parties(election: Election, committee) -> np.ndarray:
    if len(election.party_centers) == 0:
        raise ValueError("election has no party centers")
    return assign_parties(election.candidates[_members(committee)], election.party_centers)


def party_counts(election: Election, committee) -> tuple:
    parties = member_parties(election, committee)
    return tuple(int(c) for c in np.bincount(parties, minlength=len(election.party_centers)))


def centrist_fraction(election: Election, committee) -> float:
    if len(election.party_centers) != 3:
        raise ValueError(
            f"centrist fraction needs exactly 3 party centers, got {len(election.party_centers)}"
        )
    counts = party_counts(election, committee)
    return counts[1] / sum(counts)


def evaluate(election: Election, committee: Committee, rule: str = "", k: int | None = None) -> EvaluationRecord:
    counts, centrist = (), None
    if len(election.party_centers):
        counts = party_counts(election, committee)
        if len(counts) == 3:
            centrist = counts[1] / sum(counts)
    return EvaluationRecord(
        rule=rule,
        k=len(committee) if k is None else k,
        misrepresentation=avg_misrepresentation(election, committee),
        party_counts=counts,
        centrist_fraction=centrist,
    )
