"""Shannon entropy, between-group decomposition and transmission values (bits)."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .cooccur import CoocCube, ProbDist, marginal, to_distribution
from .exceptions import DegenerateDataError

# round-off below this is reported as an exact zero
_ZERO_TOL = 1e-12


def _clip_zero(value: float) -> float:
    return 0.0 if -_ZERO_TOL < value < 0.0 else value


def entropy_of(probs) -> float:
    """Entropy in bits of a probability vector; zero cells contribute nothing."""
    p = np.asarray(probs, dtype=np.float64).ravel()
    p = p[p > 0]
    # fsum makes the result independent of cell order
    return _clip_zero(-math.fsum(p * np.log2(p)))


def shannon_entropy(dist: ProbDist) -> float:
    return entropy_of(dist.probs)


@dataclass(frozen=True)
class GroupEntropy:
    label: str
    weight: float
    entropy: float


@dataclass(frozen=True)
class EntropyDecomposition:
    """Total entropy split into between-group (``h0``) and within-group parts."""

    h_total: float
    groups: tuple[GroupEntropy, ...]
    sigma_h: float
    h0: float
    pct_h0: float

    @property
    def group_count(self) -> int:
        return len(self.groups)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["groups"] = [asdict(g) for g in self.groups]
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "EntropyDecomposition":
        groups = tuple(GroupEntropy(**g) for g in d["groups"])
        return cls(d["h_total"], groups, d["sigma_h"], d["h0"], d["pct_h0"])


def decompose(cube: CoocCube) -> EntropyDecomposition:
    """Decompose the cube's total entropy over its z-axis groups.

    ``h_total`` is the entropy of the full (x, y, z) distribution, each group
    contributes the entropy of its own normalized (x, y) matrix weighted by its
    share of all co-occurrences, and ``h0`` is the remainder.
    """
    total = cube.total
    if total <= 0:
        raise DegenerateDataError("cannot decompose a cube with zero total")
    if not cube.z_labels:
        raise DegenerateDataError("cube has no groups")
    h_total = shannon_entropy(to_distribution(cube))

    z = cube.coords[:, 2]
    order = np.argsort(z, kind="stable")
    bounds = np.searchsorted(z[order], np.arange(len(cube.z_labels) + 1))
    groups, weighted = [], []
    for g, label in enumerate(cube.z_labels):
        counts = cube.counts[order[bounds[g] : bounds[g + 1]]]
        mass = int(counts.sum())
        if mass == 0:
            groups.append(GroupEntropy(label, 0.0, 0.0))
            continue
        h_g = entropy_of(counts / mass)
        groups.append(GroupEntropy(label, mass / total, h_g))
        weighted.append((mass / total) * h_g)
    sigma_h = math.fsum(weighted)
    h0 = _clip_zero(h_total - sigma_h)
    pct = 100.0 * h0 / h_total if h_total > 0 else 0.0
    return EntropyDecomposition(h_total, tuple(groups), sigma_h, h0, pct)


@dataclass(frozen=True)
class TransmissionReport:
    h_x: float
    h_y: float
    h_z: float
    h_xy: float
    h_xz: float
    h_yz: float
    h_xyz: float
    t_xy: float
    t_xz: float
    t_yz: float
    t_xyz: float

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "TransmissionReport":
        return cls(**d)

    @classmethod
    def from_entropies(cls, h_x, h_y, h_z, h_xy, h_xz, h_yz, h_xyz) -> "TransmissionReport":
        return cls(
            h_x, h_y, h_z, h_xy, h_xz, h_yz, h_xyz,
            t_xy=_clip_zero(h_x + h_y - h_xy),
            t_xz=_clip_zero(h_x + h_z - h_xz),
            t_yz=_clip_zero(h_y + h_z - h_yz),
            t_xyz=_clip_zero(h_x + h_y + h_z - h_xyz),
        )


def transmissions(cube: CoocCube) -> TransmissionReport:
    """Pairwise mutual information and three-way total correlation of the cube."""
    dist = to_distribution(cube)
    h = {axes: shannon_entropy(marginal(dist, axes)) for axes in ("x", "y", "z", "xy", "xz", "yz")}
    return TransmissionReport.from_entropies(
        h["x"], h["y"], h["z"], h["xy"], h["xz"], h["yz"], shannon_entropy(dist)
    )
