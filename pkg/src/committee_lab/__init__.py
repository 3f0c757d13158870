"""Spatial multiwinner elections: rules, representation metrics, experiments."""

from committee_lab.errors import (
    CommitteeLabError,
    ConfigError,
    InstanceTooLargeError,
    QuotaExhaustedError,
)
from committee_lab.spatial import (
    Committee,
    Election,
    Point2D,
    PreferenceProfile,
    borda_score,
    derive_profile,
    euclidean_distance,
    t_approval_score,
    total_score,
)

__version__ = "0.1.0"

__all__ = [
    "Committee",
    "CommitteeLabError",
    "ConfigError",
    "Election",
    "InstanceTooLargeError",
    "Point2D",
    "PreferenceProfile",
    "QuotaExhaustedError",
    "borda_score",
    "derive_profile",
    "euclidean_distance",
    "t_approval_score",
    "total_score",
]
