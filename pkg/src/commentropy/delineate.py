"""Journal citation environments and their factor structure.

Starting from aggregated journal-to-journal citation counts, a seed journal's
environment is every journal exchanging at least a threshold share of the
seed's citations with it. The environment's citing profiles are compared
(cosine by default, Pearson on request), factored by a Jacobi
eigendecomposition, optionally varimax-rotated, and each journal is assigned
to the factor it loads on most.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from ._validation import check_counts_matrix, check_fraction, check_symmetric_matrix
from .exceptions import DegenerateDataError, InputError


@dataclass(frozen=True)
class JournalCitationMatrix:
    """``counts[i, j]`` is the number of citations journal ``i`` gives to ``j``."""

    journals: tuple[str, ...]
    counts: np.ndarray = field(repr=False)

    def __post_init__(self):
        journals = tuple(self.journals)
        counts = check_counts_matrix(self.counts).astype(np.int64)
        if counts.shape[0] != len(journals):
            raise InputError(f"{len(journals)} journal names for a {counts.shape[0]}x{counts.shape[0]} matrix")
        if len(set(journals)) != len(journals):
            raise InputError("journal names must be unique")
        counts.setflags(write=False)
        object.__setattr__(self, "journals", journals)
        object.__setattr__(self, "counts", counts)

    def index(self, journal: str) -> int:
        try:
            return self.journals.index(journal)
        except ValueError:
            raise InputError(f"journal {journal!r} not in citation matrix") from None

    def subset(self, journals: Iterable[str]) -> "JournalCitationMatrix":
        wanted = set(journals)
        idx = [i for i, j in enumerate(self.journals) if j in wanted]
        return JournalCitationMatrix(tuple(self.journals[i] for i in idx), self.counts[np.ix_(idx, idx)])


def read_matrix_csv(path: str | Path) -> JournalCitationMatrix:
    """Read a citing (rows) x cited (columns) CSV with journal-name headers."""
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            rows = [r for r in csv.reader(fh) if any(cell.strip() for cell in r)]
    except OSError as exc:
        raise InputError(f"cannot read citation matrix {path}: {exc}") from None
    if len(rows) < 2:
        raise InputError(f"{path}: citation matrix needs a header and at least one row")
    header = [h.strip() for h in rows[0][1:]]
    body = {}
    for lineno, row in enumerate(rows[1:], 2):
        name = row[0].strip()
        if len(row) - 1 != len(header):
            raise InputError(f"{path}:{lineno}: expected {len(header)} counts, got {len(row) - 1}")
        try:
            body[name] = [int(cell) for cell in row[1:]]
        except ValueError:
            raise InputError(f"{path}:{lineno}: non-integer count in row {name!r}") from None
    if set(body) != set(header) or len(body) != len(header):
        raise InputError(f"{path}: row journals must match the header journals")
    return JournalCitationMatrix(tuple(header), np.array([body[j] for j in header]))


def write_matrix_csv(m: JournalCitationMatrix, path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow([""] + list(m.journals))
        for name, row in zip(m.journals, m.counts):
            writer.writerow([name] + [int(v) for v in row])


def environment(m: JournalCitationMatrix, seed: str, threshold: float = 0.01) -> set[str]:
    """Journals citing the seed, or cited by it, at >= ``threshold`` of its totals.

    The comparison is exact: the threshold is taken at its decimal value, so a
    count of exactly ``threshold * total`` is included.
    """
    s = m.index(seed)
    threshold = check_fraction(threshold, "threshold")
    frac = Fraction(repr(threshold))
    c_out = int(m.counts[s, :].sum())
    c_in = int(m.counts[:, s].sum())
    if c_out == 0 and c_in == 0:
        raise DegenerateDataError(f"seed journal {seed!r} neither gives nor receives citations")
    env = {seed}
    for j, name in enumerate(m.journals):
        cites_seed = c_in > 0 and m.counts[j, s] > 0 and m.counts[j, s] >= frac * c_in
        cited_by_seed = c_out > 0 and m.counts[s, j] > 0 and m.counts[s, j] >= frac * c_out
        if cites_seed or cited_by_seed:
            env.add(name)
    return env


def correlation_matrix(m: JournalCitationMatrix, env: Iterable[str]) -> np.ndarray:
    """Pearson correlations between citing profiles restricted to the environment.

    Rows and columns follow the order of ``m.journals``. Constant profiles
    correlate 0 with every other journal and 1 with themselves.
    """
    env = set(env)
    missing = env - set(m.journals)
    if missing:
        raise InputError(f"environment journals not in matrix: {sorted(missing)}")
    if len(env) < 2:
        raise InputError("correlation needs at least two journals in the environment")
    idx = [i for i, j in enumerate(m.journals) if j in env]
    X = m.counts[np.ix_(idx, idx)].astype(np.float64)
    X = X - X.mean(axis=1, keepdims=True)
    norms = np.sqrt((X * X).sum(axis=1))
    flat = norms == 0
    norms[flat] = 1.0
    Z = X / norms[:, None]
    C = Z @ Z.T
    C[flat, :] = 0.0
    C[:, flat] = 0.0
    C = np.clip((C + C.T) / 2.0, -1.0, 1.0)
    np.fill_diagonal(C, 1.0)
    return C


def cosine_matrix(m: JournalCitationMatrix, env: Iterable[str]) -> np.ndarray:
    """Cosine similarities (uncentered correlations) between citing profiles.

    Unlike Pearson correlation this does not subtract each profile's mean, so
    K disjoint citation blocks stay K-dimensional instead of collapsing to K-1.
    All-zero profiles get similarity 0 with others and 1 with themselves.
    """
    env = set(env)
    missing = env - set(m.journals)
    if missing:
        raise InputError(f"environment journals not in matrix: {sorted(missing)}")
    if len(env) < 2:
        raise InputError("similarity needs at least two journals in the environment")
    idx = [i for i, j in enumerate(m.journals) if j in env]
    X = m.counts[np.ix_(idx, idx)].astype(np.float64)
    norms = np.sqrt((X * X).sum(axis=1))
    empty = norms == 0
    norms[empty] = 1.0
    Z = X / norms[:, None]
    S = np.clip(Z @ Z.T, 0.0, 1.0)
    S = (S + S.T) / 2.0
    np.fill_diagonal(S, 1.0)
    return S


SIMILARITIES = {"cosine": cosine_matrix, "pearson": correlation_matrix}


def similarity_matrix(m: JournalCitationMatrix, env: Iterable[str], kind: str = "cosine") -> np.ndarray:
    try:
        func = SIMILARITIES[kind]
    except KeyError:
        raise InputError(f"similarity must be one of {sorted(SIMILARITIES)}, got {kind!r}") from None
    return func(m, env)


def jacobi_eigh(A, tol: float = 1e-10, max_sweeps: int = 100) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.

    Sweeps until every off-diagonal magnitude is below ``tol``. Returns
    ``(eigenvalues, eigenvectors)`` sorted by descending eigenvalue, vectors in
    columns.
    """
    A = check_symmetric_matrix(A).copy()
    A = (A + A.T) / 2.0
    n = A.shape[0]
    V = np.eye(n)
    for _ in range(max_sweeps):
        off = np.abs(A - np.diag(np.diag(A)))
        if n < 2 or off.max() < tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if abs(apq) < 1e-300:
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                ap, aq = A[:, p].copy(), A[:, q].copy()
                A[:, p], A[:, q] = c * ap - s * aq, s * ap + c * aq
                ap, aq = A[p, :].copy(), A[q, :].copy()
                A[p, :], A[q, :] = c * ap - s * aq, s * ap + c * aq
                A[p, q] = A[q, p] = 0.0
                vp, vq = V[:, p].copy(), V[:, q].copy()
                V[:, p], V[:, q] = c * vp - s * vq, s * vp + c * vq
    else:
        off = np.abs(A - np.diag(np.diag(A)))
        if off.max() >= tol:
            raise DegenerateDataError(f"Jacobi iteration did not converge in {max_sweeps} sweeps")
    vals = np.diag(A).copy()
    order = np.argsort(-vals, kind="stable")
    return vals[order], V[:, order]


def _orient(loadings: np.ndarray) -> np.ndarray:
    """Flip factor signs so each factor's largest-magnitude loading is positive."""
    L = loadings.copy()
    for k in range(L.shape[1]):
        i = int(np.argmax(np.abs(L[:, k])))
        if L[i, k] < 0:
            L[:, k] = -L[:, k]
    return L


@dataclass(frozen=True)
class FactorModel:
    journals: tuple[str, ...]
    loadings: np.ndarray = field(repr=False)
    eigenvalues: np.ndarray
    explained_variance: np.ndarray
    all_eigenvalues: np.ndarray = field(repr=False)
    rotated: bool = False

    @property
    def n_factors(self) -> int:
        return self.loadings.shape[1]

    @property
    def labels(self) -> np.ndarray:
        """Factor index per journal, by maximal absolute loading."""
        return np.argmax(np.abs(self.loadings), axis=1)

    @property
    def assignment(self) -> dict[str, int]:
        return {j: int(k) for j, k in zip(self.journals, self.labels)}

    def clusters(self) -> list[list[str]]:
        groups: list[list[str]] = [[] for _ in range(self.n_factors)]
        for j, k in zip(self.journals, self.labels):
            groups[k].append(j)
        return groups

    def to_dict(self) -> dict:
        return {
            "journals": list(self.journals),
            "eigenvalues": [float(v) for v in self.eigenvalues],
            "explained_variance": [float(v) for v in self.explained_variance],
            "loadings": {j: [float(v) for v in row] for j, row in zip(self.journals, self.loadings)},
            "assignment": self.assignment,
            "rotated": self.rotated,
        }


def principal_factors(corr, criterion: float = 1.0, labels: Sequence[str] | None = None) -> FactorModel:
    """Principal-component factor extraction keeping eigenvalues >= ``criterion``."""
    C = check_symmetric_matrix(corr)
    n = C.shape[0]
    labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(n))
    if len(labels) != n:
        raise InputError(f"{len(labels)} labels for a {n}x{n} matrix")
    vals, vecs = jacobi_eigh(C)
    # tolerance absorbs round-off on eigenvalues that are exactly at the floor
    keep = vals >= criterion - 1e-10
    if not keep.any():
        raise DegenerateDataError(
            f"no eigenvalue reaches the criterion {criterion} (largest is {vals[0]:.4g}); try a lower criterion"
        )
    kept = np.clip(vals[keep], 0.0, None)
    loadings = _orient(vecs[:, keep] * np.sqrt(kept))
    trace = float(np.trace(C)) or float(n)
    return FactorModel(labels, loadings, vals[keep], kept / trace, vals)


def varimax_criterion(loadings) -> float:
    """Sum over factors of the variance of squared loadings."""
    L2 = np.asarray(loadings, dtype=np.float64) ** 2
    return float(np.sum(np.mean(L2**2, axis=0) - np.mean(L2, axis=0) ** 2))


def varimax(loadings, tol: float = 1e-8, max_sweeps: int = 100) -> np.ndarray:
    """Raw varimax rotation by successive optimal planar rotations.

    Each sweep rotates every factor pair by the angle that maximizes the
    criterion for that pair, so the criterion never decreases. Stops when a
    sweep improves it by less than ``tol``.
    """
    L = np.array(loadings, dtype=np.float64)
    if L.ndim != 2:
        raise InputError("loadings must be a 2-d array")
    p, k = L.shape
    if k < 2:
        return L
    current = varimax_criterion(L)
    for _ in range(max_sweeps):
        for a in range(k - 1):
            for b in range(a + 1, k):
                x, y = L[:, a], L[:, b]
                u = x * x - y * y
                v = 2.0 * x * y
                A, B = u.sum(), v.sum()
                num = 2.0 * (np.dot(u, v) - A * B / p)
                den = np.dot(u, u) - np.dot(v, v) - (A * A - B * B) / p
                phi = math.atan2(num, den) / 4.0
                if phi == 0.0:
                    continue
                c, s = math.cos(phi), math.sin(phi)
                L[:, a], L[:, b] = c * x + s * y, -s * x + c * y
        updated = varimax_criterion(L)
        improved = updated - current
        current = updated
        if improved < tol:
            break
    return L


def rotate(model: FactorModel, tol: float = 1e-8, max_sweeps: int = 100) -> FactorModel:
    """Varimax-rotated copy of ``model`` with re-oriented signs."""
    if model.n_factors < 2:
        return model
    L = _orient(varimax(model.loadings, tol, max_sweeps))
    n = len(model.journals)
    explained = (L**2).sum(axis=0) / n
    return FactorModel(model.journals, L, model.eigenvalues, explained, model.all_eigenvalues, rotated=True)


def central_tendency(model: FactorModel, factor: int, impacts: Mapping[str, float] | None = None) -> str:
    """Journal with the highest absolute loading on ``factor``.

    Ties go to the higher impact value when ``impacts`` is given, then to the
    lexicographically first journal.
    """
    if not 0 <= factor < model.n_factors:
        raise InputError(f"factor {factor} out of range (model has {model.n_factors})")
    col = np.abs(model.loadings[:, factor])
    best = col.max()
    tied = [j for j, v in zip(model.journals, col) if best - v <= 1e-12]
    impacts = impacts or {}
    return min(tied, key=lambda j: (-impacts.get(j, -math.inf), j))


@dataclass(frozen=True)
class Delineation:
    """Result of :func:`delineate`; ``model`` is None for a one-journal environment."""

    seed: str
    threshold: float
    similarity: str
    environment: tuple[str, ...]
    model: FactorModel | None
    central_journals: tuple[str, ...]

    def to_dict(self) -> dict:
        d = {
            "seed": self.seed,
            "threshold": self.threshold,
            "similarity": self.similarity,
            "environment": list(self.environment),
        }
        if self.model is None:
            d.update(journals=list(self.environment), eigenvalues=[], explained_variance=[], loadings={},
                     assignment={}, rotated=False, clusters=[], central_journals=[], seed_factor=None)
            return d
        d.update(self.model.to_dict())
        d["clusters"] = self.model.clusters()
        d["central_journals"] = list(self.central_journals)
        d["seed_factor"] = self.model.assignment[self.seed]
        return d


def delineate(
    m: JournalCitationMatrix,
    seed: str,
    threshold: float = 0.01,
    criterion: float = 1.0,
    rotation: bool = False,
    impacts: Mapping[str, float] | None = None,
    similarity: str = "cosine",
) -> Delineation:
    """Environment, factor model and central tendency journal per factor."""
    env = environment(m, seed, threshold)
    ordered = tuple(j for j in m.journals if j in env)
    if len(ordered) < 2:
        return Delineation(seed, threshold, similarity, ordered, None, ())
    corr = similarity_matrix(m, env, similarity)
    model = principal_factors(corr, criterion, labels=ordered)
    if rotation:
        model = rotate(model)
    centers = tuple(central_tendency(model, k, impacts) for k in range(model.n_factors))
    return Delineation(seed, threshold, similarity, ordered, model, centers)
