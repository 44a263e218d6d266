"""The reference x title-word x group co-occurrence cube and its distributions.

A cube is stored sparsely as canonical (ascending) integer coordinates plus
counts. Axis ``x`` holds cited references, ``y`` title words, ``z`` groups.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from ._validation import check_positive_int
from .corpus import Document, GroupingScheme, assign_groups
from .exceptions import DegenerateDataError, InputError
from .textprep import (
    FrequencyList,
    default_stopwords,
    document_frequencies,
    normalize_reference,
    tokenize_title,
    top_n,
)

AXES = ("x", "y", "z")


def _frozen(a, dtype):
    a = np.array(a, dtype=dtype)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class CubeSpec:
    scheme: GroupingScheme
    top_words: int = 250
    top_refs: int = 250
    stopwords: frozenset = field(default=None, repr=False)
    min_len: int = 2

    def __post_init__(self):
        check_positive_int(self.top_words, "top_words")
        check_positive_int(self.top_refs, "top_refs")
        check_positive_int(self.min_len, "min_len")
        if self.stopwords is None:
            object.__setattr__(self, "stopwords", default_stopwords())
        else:
            object.__setattr__(self, "stopwords", frozenset(self.stopwords))


class CoocCube:
    """Sparse 3-way count tensor with labeled axes.

    ``coords`` is an ``(n_cells, 3)`` integer array in ascending lexicographic
    order with no duplicate rows and ``counts`` the matching positive counts.
    Instances are read-only.
    """

    def __init__(self, x_labels, y_labels, z_labels, coords, counts):
        self.x_labels = tuple(x_labels)
        self.y_labels = tuple(y_labels)
        self.z_labels = tuple(z_labels)
        coords = np.asarray(coords, dtype=np.int64).reshape(-1, 3)
        counts = np.asarray(counts, dtype=np.int64).reshape(-1)
        if coords.shape[0] != counts.shape[0]:
            raise InputError("coords and counts differ in length")
        if (counts < 0).any():
            raise InputError("cube counts must be non-negative")
        shape = np.array(self.shape)
        if coords.size and ((coords < 0).any() or (coords >= shape).any()):
            raise InputError("cube coordinate outside label bounds")
        # canonicalize: merge duplicates, drop zeros, sort ascending
        keep = counts > 0
        coords, counts = coords[keep], counts[keep]
        if counts.size:
            lin = np.ravel_multi_index(coords.T, self.shape)
            order = np.argsort(lin, kind="stable")
            lin, counts = lin[order], counts[order]
            starts = np.flatnonzero(np.r_[True, lin[1:] != lin[:-1]])
            counts = np.add.reduceat(counts, starts)
            coords = np.column_stack(np.unravel_index(lin[starts], self.shape))
        else:
            coords = np.zeros((0, 3), dtype=np.int64)
        self.coords = _frozen(coords, np.int64)
        self.counts = _frozen(counts, np.int64)

    @property
    def shape(self) -> tuple[int, int, int]:
        return (len(self.x_labels), len(self.y_labels), len(self.z_labels))

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    @property
    def nnz(self) -> int:
        return int(self.counts.shape[0])

    def labels(self, axis: str) -> tuple[str, ...]:
        return {"x": self.x_labels, "y": self.y_labels, "z": self.z_labels}[axis]

    def group_masses(self) -> dict[str, int]:
        mass = np.bincount(self.coords[:, 2], weights=self.counts, minlength=len(self.z_labels))
        return {g: int(m) for g, m in zip(self.z_labels, mass)}

    def scaled(self, k: int) -> "CoocCube":
        return CoocCube(self.x_labels, self.y_labels, self.z_labels, self.coords, self.counts * int(k))

    def toarray(self) -> np.ndarray:
        dense = np.zeros(self.shape, dtype=np.int64)
        dense[tuple(self.coords.T)] = self.counts
        return dense

    @classmethod
    def from_dense(cls, array, x_labels=None, y_labels=None, z_labels=None) -> "CoocCube":
        array = np.asarray(array)
        if array.ndim != 3:
            raise InputError(f"expected a 3-d array, got {array.ndim}-d")
        nx, ny, nz = array.shape
        coords = np.argwhere(array > 0)
        return cls(
            x_labels or [f"x{i}" for i in range(nx)],
            y_labels or [f"y{i}" for i in range(ny)],
            z_labels or [f"z{i}" for i in range(nz)],
            coords,
            array[tuple(coords.T)],
        )

    def __eq__(self, other):
        if not isinstance(other, CoocCube):
            return NotImplemented
        return (
            self.x_labels == other.x_labels
            and self.y_labels == other.y_labels
            and self.z_labels == other.z_labels
            and np.array_equal(self.coords, other.coords)
            and np.array_equal(self.counts, other.counts)
        )

    __hash__ = None

    def __repr__(self):
        return f"CoocCube(shape={self.shape}, nnz={self.nnz}, total={self.total})"

    # serialization

    def to_dict(self) -> dict:
        return {
            "x_labels": list(self.x_labels),
            "y_labels": list(self.y_labels),
            "z_labels": list(self.z_labels),
            "cells": [[int(a), int(b), int(c), int(n)] for (a, b, c), n in zip(self.coords, self.counts)],
            "total": self.total,
        }

    def to_json(self) -> str:
        """Canonical JSON text: one cell per line, ascending indices."""
        d = self.to_dict()
        head = ",\n".join(
            f"  {json.dumps(k)}: {json.dumps(d[k], ensure_ascii=False)}" for k in ("x_labels", "y_labels", "z_labels")
        )
        cells = ",\n".join(f"    [{a}, {b}, {c}, {n}]" for a, b, c, n in d["cells"])
        body = f"[\n{cells}\n  ]" if cells else "[]"
        return "{\n" + head + ",\n  \"cells\": " + body + ",\n  \"total\": " + str(d["total"]) + "\n}\n"

    @classmethod
    def from_dict(cls, d: dict) -> "CoocCube":
        try:
            cells = np.asarray(d["cells"], dtype=np.int64).reshape(-1, 4)
            cube = cls(d["x_labels"], d["y_labels"], d["z_labels"], cells[:, :3], cells[:, 3])
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"invalid cube document: {exc}") from None
        if "total" in d and int(d["total"]) != cube.total:
            raise InputError(f"cube total {d['total']} does not match cell sum {cube.total}")
        return cube

    @classmethod
    def from_json(cls, text: str) -> "CoocCube":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class Vocabularies:
    references: FrequencyList
    words: FrequencyList


def _prepare(docs: Sequence[Document], spec: CubeSpec):
    z_index = {g: i for i, g in enumerate(spec.scheme.groups)}
    rows = []
    for doc in docs:
        groups = assign_groups(doc, spec.scheme)
        if not groups:
            continue
        refs = {normalize_reference(r) for r in doc.references if r.strip(" .,;:!?")}
        words = set(tokenize_title(doc.title, spec.stopwords, spec.min_len))
        rows.append((sorted(z_index[g] for g in groups), refs, words))
    return rows


def build_vocabularies(rows, spec: CubeSpec) -> Vocabularies:
    return Vocabularies(
        references=top_n(document_frequencies(r for _, r, _ in rows), spec.top_refs),
        words=top_n(document_frequencies(w for _, _, w in rows), spec.top_words),
    )


def build_cube(docs: Sequence[Document], spec: CubeSpec, vocabularies: Vocabularies | None = None) -> CoocCube:
    """Count (reference, word, group) events, one per document and distinct pair.

    Vocabularies are the top-N references and title words over all grouped
    documents of the corpus (document frequency, pooled across groups) unless
    given explicitly.
    """
    if not docs:
        raise DegenerateDataError("corpus is empty")
    rows = _prepare(docs, spec)
    if not rows:
        raise DegenerateDataError(f"no document has an address in scheme {spec.scheme.name!r}")
    vocab = vocabularies or build_vocabularies(rows, spec)
    x_labels, y_labels = vocab.references.labels, vocab.words.labels
    if not x_labels or not y_labels:
        raise DegenerateDataError("empty reference or title-word vocabulary")
    x_index = {r: i for i, r in enumerate(x_labels)}
    y_index = {w: i for i, w in enumerate(y_labels)}
    ny, nz = len(y_labels), len(spec.scheme.groups)

    keys = []
    for groups, refs, words in rows:
        xi = np.fromiter((x_index[r] for r in refs if r in x_index), dtype=np.int64)
        yi = np.fromiter((y_index[w] for w in words if w in y_index), dtype=np.int64)
        if not xi.size or not yi.size:
            continue
        zi = np.asarray(groups, dtype=np.int64)
        keys.append(((xi[:, None, None] * ny + yi[None, :, None]) * nz + zi[None, None, :]).ravel())
    if not keys:
        raise DegenerateDataError("no document contributes an in-vocabulary (reference, word) pair")
    lin, counts = np.unique(np.concatenate(keys), return_counts=True)
    shape = (len(x_labels), ny, nz)
    coords = np.column_stack(np.unravel_index(lin, shape))
    return CoocCube(x_labels, y_labels, spec.scheme.groups, coords, counts)


class ProbDist:
    """Sparse probability table over named axes."""

    def __init__(self, axes, labels, coords, probs):
        self.axes = tuple(axes)
        self.labels = tuple(tuple(lab) for lab in labels)
        self.coords = np.asarray(coords, dtype=np.int64).reshape(-1, len(self.axes))
        self.probs = np.asarray(probs, dtype=np.float64).reshape(-1)
        if (self.probs < 0).any():
            raise InputError("probabilities must be non-negative")
        if abs(self.probs.sum() - 1.0) > 1e-12:
            raise InputError(f"probabilities sum to {self.probs.sum()!r}, not 1")

    @property
    def shape(self):
        return tuple(len(lab) for lab in self.labels)

    def toarray(self) -> np.ndarray:
        dense = np.zeros(self.shape)
        dense[tuple(self.coords.T)] = self.probs
        return dense

    def as_dict(self) -> dict:
        return {
            tuple(self.labels[a][i] for a, i in enumerate(c)): float(p) for c, p in zip(self.coords, self.probs)
        }

    @classmethod
    def from_array(cls, array, axes=None, labels=None) -> "ProbDist":
        array = np.asarray(array, dtype=np.float64)
        axes = axes or AXES[: array.ndim]
        labels = labels or [[str(i) for i in range(n)] for n in array.shape]
        coords = np.argwhere(array > 0)
        return cls(axes, labels, coords, array[tuple(coords.T)])


def to_distribution(cube: CoocCube) -> ProbDist:
    total = cube.total
    if total <= 0:
        raise DegenerateDataError("cube has zero total count")
    labels = (cube.x_labels, cube.y_labels, cube.z_labels)
    return ProbDist(AXES, labels, cube.coords, cube.counts / total)


def marginal(dist: ProbDist, keep: Iterable[str]) -> ProbDist:
    """Sum out every axis not in ``keep``; kept axes retain their order."""
    keep = set(keep)
    if not keep:
        raise InputError("marginal needs at least one axis to keep")
    unknown = keep - set(dist.axes)
    if unknown:
        raise InputError(f"unknown axes {sorted(unknown)}; distribution has {dist.axes}")
    pos = [i for i, a in enumerate(dist.axes) if a in keep]
    if len(pos) == len(dist.axes):
        return dist
    shape = tuple(dist.shape[i] for i in pos)
    lin = np.ravel_multi_index(dist.coords[:, pos].T, shape)
    uniq, inv = np.unique(lin, return_inverse=True)
    probs = np.bincount(inv.reshape(-1), weights=dist.probs, minlength=len(uniq))
    coords = np.column_stack(np.unravel_index(uniq, shape))
    return ProbDist([dist.axes[i] for i in pos], [dist.labels[i] for i in pos], coords, probs)
