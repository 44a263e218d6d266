import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from commentropy import CoocCube, CooccurrenceVectorizer, EntropyAnalyzer, JournalFactorAnalysis, parse_corpus
from commentropy.corpus import load_scheme
from commentropy.entropy import decompose, transmissions

from synth import planted_blocks, same_partition


@pytest.fixture
def toy_docs(toy_path):
    return parse_corpus(toy_path.read_bytes())


def test_vectorizer_params_and_clone():
    vec = CooccurrenceVectorizer(scheme="eu15", top_words=10)
    params = vec.get_params()
    assert params["scheme"] == "eu15" and params["top_words"] == 10
    other = clone(vec).set_params(top_refs=3)
    assert other.top_refs == 3 and vec.top_refs == 250


def test_vectorizer_matches_build_cube(toy_docs):
    cube = CooccurrenceVectorizer().fit_transform(toy_docs)
    assert isinstance(cube, CoocCube) and cube.total == 16
    assert list(CooccurrenceVectorizer().fit(toy_docs).get_feature_names_out())[0] == "DOE A, 1985, NATURE, V2, P3"


def test_vectorizer_reuses_fitted_vocabulary(toy_docs):
    vec = CooccurrenceVectorizer(top_words=2, top_refs=1).fit(toy_docs)
    cube = vec.transform(toy_docs[2:])
    assert cube.x_labels == ("DOE A, 1985, NATURE, V2, P3",)
    assert cube.total == 1


def test_vectorizer_accepts_dicts(toy_docs):
    cube = CooccurrenceVectorizer().fit_transform([d.to_dict() for d in toy_docs])
    assert cube.total == 16


def test_not_fitted():
    with pytest.raises(NotFittedError):
        CooccurrenceVectorizer().transform([])
    with pytest.raises(NotFittedError):
        EntropyAnalyzer().summary()


def test_entropy_analyzer(toy_docs):
    est = EntropyAnalyzer(scheme=load_scheme("blocs")).fit(toy_docs)
    assert est.decomposition_ == decompose(est.cube_)
    assert est.transmission_ == transmissions(est.cube_)
    summary = est.summary()
    assert summary["Htot"] == pytest.approx(3.875)
    assert summary["H0"] == pytest.approx(summary["h_z"], abs=1e-12)


def test_entropy_analyzer_on_cube():
    cube = CoocCube.from_dense(np.ones((2, 2, 2), dtype=int))
    assert EntropyAnalyzer().fit(cube).summary()["H0"] == pytest.approx(1.0)


@pytest.mark.parametrize("rotation", [None, "varimax"])
def test_factor_analysis_three_blocks(rotation):
    counts, truth = planted_blocks([5, 4, 6], np.random.default_rng(2))
    est = JournalFactorAnalysis(rotation=rotation)
    labels = est.fit_predict(counts)
    assert est.n_factors_ == 3
    if rotation == "varimax":
        assert same_partition(labels, truth)
    assert est.loadings_.shape == (15, 3)
    assert len(est.central_journals_) == 3


def test_factor_analysis_seeded_dataframe():
    pd = pytest.importorskip("pandas")
    counts, truth = planted_blocks([4, 4, 4], np.random.default_rng(4))
    names = [f"J{i}" for i in range(12)]
    frame = pd.DataFrame(counts, index=names, columns=names)
    est = JournalFactorAnalysis(seed="J0", threshold=0.1).fit(frame)
    # in-block partners carry ~25% of the seed's citations, noise partners < 1%
    assert est.journals_ == ("J0", "J1", "J2", "J3")
    assert est.n_factors_ == 1
    assert est.central_journals_[0] in est.journals_


def test_factor_analysis_validation():
    with pytest.raises(ValueError):
        JournalFactorAnalysis(rotation="promax").fit(np.eye(3, dtype=int))
    with pytest.raises(ValueError):
        JournalFactorAnalysis().fit(np.ones((2, 3), dtype=int))
    with pytest.raises(ValueError):
        JournalFactorAnalysis(similarity="jaccard").fit(np.eye(3, dtype=int) + 1)
