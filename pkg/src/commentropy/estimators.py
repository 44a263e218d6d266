"""scikit-learn compatible wrappers.

``CooccurrenceVectorizer`` learns the reference and title-word vocabularies
from a corpus and turns corpora into co-occurrence cubes. ``EntropyAnalyzer``
fits the decomposition and transmission values. ``JournalFactorAnalysis``
clusters a journal citation matrix by factor loadings.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_fraction
from .cooccur import CoocCube, CubeSpec, _prepare, build_cube, build_vocabularies
from .corpus import Document, GroupingScheme, load_scheme
from .delineate import (
    JournalCitationMatrix,
    central_tendency,
    environment,
    principal_factors,
    rotate,
    similarity_matrix,
)
from .entropy import decompose, transmissions
from .exceptions import DegenerateDataError, InputError


def _as_documents(X) -> list[Document]:
    docs = []
    for item in X:
        if isinstance(item, Document):
            docs.append(item)
        elif isinstance(item, dict):
            docs.append(Document(**item))
        else:
            raise InputError(f"expected Document or dict records, got {type(item).__name__}")
    return docs


class CooccurrenceVectorizer(TransformerMixin, BaseEstimator):
    """Corpus -> :class:`CoocCube` with vocabularies learned in ``fit``.

    Parameters
    ----------
    scheme : str, path or GroupingScheme, default="blocs"
        Grouping of countries into the cube's z axis.
    top_words, top_refs : int, default=250
        Vocabulary sizes.
    stopwords : iterable of str, optional
        Defaults to the bundled English list.
    min_len : int, default=2
    unmatched : {"drop", "error", "other"}, default="drop"

    Attributes
    ----------
    scheme_ : GroupingScheme
    vocabularies_ : Vocabularies
    """

    def __init__(self, scheme="blocs", top_words=250, top_refs=250, stopwords=None, min_len=2, unmatched="drop"):
        self.scheme = scheme
        self.top_words = top_words
        self.top_refs = top_refs
        self.stopwords = stopwords
        self.min_len = min_len
        self.unmatched = unmatched

    def _spec(self) -> CubeSpec:
        scheme = self.scheme if isinstance(self.scheme, GroupingScheme) else load_scheme(self.scheme, self.unmatched)
        return CubeSpec(scheme, self.top_words, self.top_refs, self.stopwords, self.min_len)

    def fit(self, X, y=None):
        spec = self._spec()
        docs = _as_documents(X)
        if not docs:
            raise DegenerateDataError("corpus is empty")
        rows = _prepare(docs, spec)
        if not rows:
            raise DegenerateDataError(f"no document has an address in scheme {spec.scheme.name!r}")
        self.spec_ = spec
        self.scheme_ = spec.scheme
        self.vocabularies_ = build_vocabularies(rows, spec)
        return self

    def transform(self, X) -> CoocCube:
        check_is_fitted(self, "vocabularies_")
        return build_cube(_as_documents(X), self.spec_, self.vocabularies_)

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "vocabularies_")
        return np.array(self.vocabularies_.references.labels, dtype=object)


class EntropyAnalyzer(BaseEstimator):
    """Between-group decomposition and transmissions of a corpus or cube.

    ``fit`` accepts either a ready :class:`CoocCube` or a corpus, which is
    vectorized with the estimator's own parameters.

    Attributes
    ----------
    cube_ : CoocCube
    decomposition_ : EntropyDecomposition
    transmission_ : TransmissionReport
    """

    def __init__(self, scheme="blocs", top_words=250, top_refs=250, stopwords=None, min_len=2, unmatched="drop"):
        self.scheme = scheme
        self.top_words = top_words
        self.top_refs = top_refs
        self.stopwords = stopwords
        self.min_len = min_len
        self.unmatched = unmatched

    def fit(self, X, y=None):
        if isinstance(X, CoocCube):
            cube = X
        else:
            vec = CooccurrenceVectorizer(**self.get_params())
            cube = vec.fit_transform(X)
        self.cube_ = cube
        self.decomposition_ = decompose(cube)
        self.transmission_ = transmissions(cube)
        return self

    def summary(self) -> dict:
        check_is_fitted(self, "decomposition_")
        d = self.decomposition_
        out = {"Htot": d.h_total, "SigmaH": d.sigma_h, "H0": d.h0, "pctH0": d.pct_h0}
        out.update(self.transmission_.to_dict())
        return out


class JournalFactorAnalysis(ClusterMixin, BaseEstimator):
    """Factor-analytic clustering of a journal-to-journal citation matrix.

    Parameters
    ----------
    seed : str, optional
        Restrict the analysis to this journal's citation environment.
    threshold : float, default=0.01
        Environment threshold as a fraction of the seed's citations.
    criterion : float, default=1.0
        Eigenvalue floor for retained factors.
    rotation : {None, "varimax"}, default=None
        Varimax makes block recovery robust when factors have similar size.
    similarity : {"cosine", "pearson"}, default="cosine"
    impacts : dict, optional
        Journal impact values, used to break central-tendency ties.

    Attributes
    ----------
    journals_ : tuple of str
        Journals analysed (the environment when ``seed`` is set).
    similarity_ : ndarray of shape (n_journals, n_journals)
    eigenvalues_ : ndarray of shape (n_factors,)
    loadings_ : ndarray of shape (n_journals, n_factors)
    explained_variance_ratio_ : ndarray of shape (n_factors,)
    labels_ : ndarray of shape (n_journals,)
        Factor index each journal loads on most.
    central_journals_ : list of str
    """

    def __init__(self, seed=None, threshold=0.01, criterion=1.0, rotation=None, similarity="cosine", impacts=None):
        self.seed = seed
        self.threshold = threshold
        self.criterion = criterion
        self.rotation = rotation
        self.similarity = similarity
        self.impacts = impacts

    def fit(self, X, y=None, journals=None):
        if isinstance(X, JournalCitationMatrix):
            m = X
        else:
            if journals is None:
                journals = getattr(X, "columns", None)
            X = np.asarray(X)
            names = [str(j) for j in journals] if journals is not None else [f"J{i}" for i in range(X.shape[0])]
            m = JournalCitationMatrix(tuple(names), X)
        if self.rotation not in (None, "varimax"):
            raise InputError(f"rotation must be None or 'varimax', got {self.rotation!r}")
        if self.seed is not None:
            check_fraction(self.threshold, "threshold")
            env = environment(m, self.seed, self.threshold)
        else:
            env = set(m.journals)
        self.journals_ = tuple(j for j in m.journals if j in env)
        self.similarity_ = similarity_matrix(m, env, self.similarity)
        model = principal_factors(self.similarity_, self.criterion, labels=self.journals_)
        if self.rotation == "varimax":
            model = rotate(model)
        self.model_ = model
        self.eigenvalues_ = model.eigenvalues
        self.loadings_ = model.loadings
        self.explained_variance_ratio_ = model.explained_variance
        self.labels_ = model.labels
        self.n_factors_ = model.n_factors
        self.central_journals_ = [central_tendency(model, k, self.impacts) for k in range(model.n_factors)]
        return self

    def fit_predict(self, X, y=None, journals=None):
        return self.fit(X, journals=journals).labels_


__all__ = ["CooccurrenceVectorizer", "EntropyAnalyzer", "JournalFactorAnalysis"]
