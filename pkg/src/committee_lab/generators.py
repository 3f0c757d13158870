"""Random election generators.

Two population shapes are supported: uniform rectangles and mixtures of
isotropic Gaussians.  The polarized designs use three groups centered at
(-2, 0), (0, 0) and (2, 0), sigma 0.25, with the centrist group half the
size of each outer one.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from committee_lab.errors import ConfigError
from committee_lab.spatial import Election, distance_matrix

POLARIZED_CENTERS = ((-2.0, 0.0), (0.0, 0.0), (2.0, 0.0))
POLARIZED_SIGMA = 0.25
POLARIZED_VARIANTS = ("uniform_candidates", "citizen_candidates")


@dataclass(frozen=True)
class GaussianComponent:
    mean: tuple
    sigma: float
    count: int


@dataclass(frozen=True)
class PopulationSpec:
    """Where points come from.

    ``kind="uniform_rect"`` uses ``center``, ``width`` and ``height``;
    ``kind="gaussian_mixture"`` uses ``components``.
    """

    kind: str
    center: tuple = (0.0, 0.0)
    width: float = 0.0
    height: float = 0.0
    components: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if self.kind == "uniform_rect":
            if not (self.width > 0 and self.height > 0):
                raise ConfigError("rectangle width and height must be positive")
        elif self.kind == "gaussian_mixture":
            if not self.components:
                raise ConfigError("gaussian mixture needs at least one component")
            for comp in self.components:
                if not comp.sigma > 0:
                    raise ConfigError(f"sigma must be positive, got {comp.sigma}")
                if comp.count < 1:
                    raise ConfigError(f"component count must be >= 1, got {comp.count}")
        else:
            raise ConfigError(f"unknown population kind {self.kind!r}")

    @classmethod
    def rectangle(cls, width, height, center=(0.0, 0.0)):
        return cls("uniform_rect", center=tuple(map(float, center)),
                   width=float(width), height=float(height))

    @classmethod
    def mixture(cls, components):
        comps = tuple(
            c if isinstance(c, GaussianComponent)
            else GaussianComponent(tuple(map(float, c[0])), float(c[1]), int(c[2]))
            for c in components
        )
        return cls("gaussian_mixture", components=comps)

    @property
    def total_count(self) -> int:
        return sum(c.count for c in self.components)

    def to_dict(self) -> dict:
        if self.kind == "uniform_rect":
            return {"kind": self.kind, "center": list(self.center),
                    "width": self.width, "height": self.height}
        return {"kind": self.kind,
                "components": [{"mean": list(c.mean), "sigma": c.sigma, "count": c.count}
                               for c in self.components]}

    @classmethod
    def from_dict(cls, doc: dict) -> "PopulationSpec":
        kind = doc.get("kind")
        if kind == "uniform_rect":
            return cls.rectangle(doc["width"], doc["height"], doc.get("center", (0.0, 0.0)))
        if kind == "gaussian_mixture":
            return cls.mixture((c["mean"], c["sigma"], c["count"]) for c in doc["components"])
        raise ConfigError(f"unknown population kind {kind!r}")


def generate_points(spec: PopulationSpec, count: int | None, rng: np.random.Generator) -> np.ndarray:
    """Sample points as an ``(N, 2)`` array.

    For mixtures ``count`` is ignored; each component contributes its own
    count, component after component.
    """
    if spec.kind == "uniform_rect":
        if count is None or count < 1:
            raise ConfigError(f"point count must be >= 1, got {count}")
        cx, cy = spec.center
        lo = np.array([cx - spec.width / 2, cy - spec.height / 2])
        hi = np.array([cx + spec.width / 2, cy + spec.height / 2])
        return rng.uniform(lo, hi, size=(count, 2))
    blocks = [rng.normal(loc=comp.mean, scale=comp.sigma, size=(comp.count, 2))
              for comp in spec.components]
    return np.concatenate(blocks, axis=0)


def uniform_election(m: int, n: int, rect: PopulationSpec, rng: np.random.Generator) -> Election:
    if m < 1 or n < 1:
        raise ConfigError(f"need m, n >= 1, got m={m}, n={n}")
    if rect.kind != "uniform_rect":
        raise ConfigError("uniform_election needs a uniform_rect population")
    candidates = generate_points(rect, m, rng)
    voters = generate_points(rect, n, rng)
    return Election(candidates, voters)


def polarized_mixture(outer: int, centrist: int) -> PopulationSpec:
    left, mid, right = POLARIZED_CENTERS
    return PopulationSpec.mixture([
        (left, POLARIZED_SIGMA, outer),
        (mid, POLARIZED_SIGMA, centrist),
        (right, POLARIZED_SIGMA, outer),
    ])


def polarized_election(variant: str, rng: np.random.Generator) -> Election:
    """Three-group electorate; ``variant`` picks how candidates are drawn."""
    if variant == "uniform_candidates":
        candidates = generate_points(PopulationSpec.rectangle(6.0, 3.0), 600, rng)
        voters = generate_points(polarized_mixture(100, 50), None, rng)
    elif variant == "citizen_candidates":
        candidates = generate_points(polarized_mixture(100, 50), None, rng)
        voters = generate_points(polarized_mixture(200, 100), None, rng)
    else:
        raise ConfigError(f"unknown polarized variant {variant!r}; expected one of {POLARIZED_VARIANTS}")
    return Election(candidates, voters, POLARIZED_CENTERS)


def assign_party(point, centers) -> int:
    """Index of the nearest center, lowest index on ties."""
    centers = np.asarray([tuple(c) for c in centers], dtype=float).reshape(-1, 2)
    if len(centers) == 0:
        raise ValueError("assign_party needs at least one center")
    return int(assign_parties(np.asarray([tuple(point)], dtype=float), centers)[0])


def assign_parties(points: np.ndarray, centers: np.ndarray) -> np.ndarray:
    # argmin returns the first minimum, i.e. the lowest center index on ties
    return np.argmin(distance_matrix(np.asarray(points, dtype=float),
                                     np.asarray(centers, dtype=float)), axis=1)


__all__ = [
    "GaussianComponent",
    "POLARIZED_CENTERS",
    "POLARIZED_SIGMA",
    "POLARIZED_VARIANTS",
    "PopulationSpec",
    "assign_party",
    "assign_parties",
    "generate_points",
    "polarized_election",
    "polarized_mixture",
    "uniform_election",
]
