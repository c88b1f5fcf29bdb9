"""Poisson point process sampling, fading draws, and network scenarios.

A scenario fixes one realization of legitimate node, jammer and eavesdropper
positions inside a rectangular window, reproducible from a 64-bit seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .params import ParameterError, SystemParams
from .rng import (
    PURPOSE_EAVES,
    PURPOSE_JAMMER,
    PURPOSE_LEGIT,
    Stream,
    fill_uniform_points,
    poisson_draw,
)

__all__ = [
    "Region",
    "PointSet",
    "Scenario",
    "sample_ppp",
    "sample_rayleigh_power",
    "generate_scenario",
    "save_scenario",
    "load_scenario",
    "scenario_to_text",
    "scenario_from_text",
]


@dataclass(frozen=True)
class Region:
    """Axis-aligned rectangle with its lower-left corner at the origin."""

    width: float
    height: float

    def __post_init__(self):
        if not (self.width > 0 and self.height > 0):
            raise ParameterError(f"region sides must be positive, got {self.width} x {self.height}")

    @property
    def area(self) -> float:
        return self.width * self.height

    def contains(self, x: float, y: float) -> bool:
        return 0.0 <= x <= self.width and 0.0 <= y <= self.height


class PointSet:
    """An immutable set of 2-D points inside a region."""

    __slots__ = ("coords",)

    def __init__(self, coords):
        arr = np.asarray(coords, dtype=np.float64).reshape(-1, 2).copy()
        arr.setflags(write=False)
        object.__setattr__(self, "coords", arr)

    def __setattr__(self, name, value):
        raise AttributeError("PointSet is immutable")

    def __len__(self) -> int:
        return self.coords.shape[0]

    def __iter__(self):
        return iter(map(tuple, self.coords))

    def __eq__(self, other) -> bool:
        return isinstance(other, PointSet) and np.array_equal(self.coords, other.coords)

    def within(self, region: Region) -> bool:
        if len(self) == 0:
            return True
        x, y = self.coords[:, 0], self.coords[:, 1]
        return bool(
            (x >= 0).all() and (x <= region.width).all() and (y >= 0).all() and (y <= region.height).all()
        )

    @classmethod
    def empty(cls) -> "PointSet":
        return cls(np.empty((0, 2)))


def sample_ppp(density: float, region: Region, stream: Stream) -> PointSet:
    """Sample a homogeneous PPP: Poisson(density * area) points, i.i.d. uniform.

    Deterministic in (stream.seed, stream.purpose, stream.round_index, stream.lane).
    """
    if density < 0:
        raise ParameterError(f"density must be nonnegative, got {density}")
    key = np.uint64(stream.key)
    n, idx = poisson_draw(key, np.uint64(0), density * region.area)
    if n == 0:
        return PointSet.empty()
    out = np.empty((n, 2))
    fill_uniform_points(key, idx, out, region.width, region.height)
    return PointSet(out)


def sample_rayleigh_power(stream: Stream, index: int = 0) -> float:
    """One Rayleigh-fading power gain: Exponential with mean 1."""
    return stream.exponential(index)


@dataclass(frozen=True)
class Scenario:
    """One sampled network realization."""

    region: Region
    legit_nodes: PointSet
    jammers: PointSet
    eavesdroppers: PointSet
    seed: int

    def __post_init__(self):
        for name in ("legit_nodes", "jammers", "eavesdroppers"):
            if not getattr(self, name).within(self.region):
                raise ParameterError(f"{name} contains points outside the region")


def generate_scenario(
    params: SystemParams, region: Region, n_legit: int, seed: int
) -> Scenario:
    """Sample legitimate nodes (uniform), jammers and eavesdroppers (PPP).

    Requires at least two legitimate nodes so a source/destination pair exists.
    """
    if n_legit < 2:
        raise ParameterError(f"n_legit must be at least 2, got {n_legit}")
    legit_stream = Stream(seed, PURPOSE_LEGIT)
    out = np.empty((n_legit, 2))
    fill_uniform_points(np.uint64(legit_stream.key), np.uint64(0), out, region.width, region.height)
    return Scenario(
        region=region,
        legit_nodes=PointSet(out),
        jammers=sample_ppp(params.lambda_j, region, Stream(seed, PURPOSE_JAMMER)),
        eavesdroppers=sample_ppp(params.lambda_e, region, Stream(seed, PURPOSE_EAVES)),
        seed=seed,
    )


def scenario_to_text(sc: Scenario) -> str:
    lines = [
        f"region {sc.region.width:.17g} {sc.region.height:.17g}",
        f"seed {sc.seed}",
    ]
    for label, points in (
        ("legit", sc.legit_nodes),
        ("jammer", sc.jammers),
        ("eaves", sc.eavesdroppers),
    ):
        for x, y in points:
            lines.append(f"{label} {x:.17g} {y:.17g}")
    return "\n".join(lines) + "\n"


def scenario_from_text(text: str) -> Scenario:
    region = None
    seed = None
    points = {"legit": [], "jammer": [], "eaves": []}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        tag = fields[0]
        try:
            if tag == "region":
                region = Region(float(fields[1]), float(fields[2]))
            elif tag == "seed":
                seed = int(fields[1])
            elif tag in points:
                points[tag].append((float(fields[1]), float(fields[2])))
            else:
                raise ParameterError(f"unknown scenario line tag {tag!r} at line {lineno}")
        except (IndexError, ValueError) as exc:
            if isinstance(exc, ParameterError):
                raise
            raise ParameterError(f"malformed scenario line {lineno}: {raw!r}") from exc
    if region is None:
        raise ParameterError("scenario file is missing the region line")
    if seed is None:
        raise ParameterError("scenario file is missing the seed line")
    return Scenario(
        region=region,
        legit_nodes=PointSet(np.array(points["legit"]).reshape(-1, 2)),
        jammers=PointSet(np.array(points["jammer"]).reshape(-1, 2)),
        eavesdroppers=PointSet(np.array(points["eaves"]).reshape(-1, 2)),
        seed=seed,
    )


def save_scenario(sc: Scenario, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(scenario_to_text(sc))


def load_scenario(path) -> Scenario:
    with open(path, "r", encoding="ascii") as fh:
        return scenario_from_text(fh.read())
