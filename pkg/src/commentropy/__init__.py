"""Entropy and transmission analysis of citation / title-word co-occurrences."""

__version__ = "0.1.0"

from .cooccur import CoocCube, CubeSpec, ProbDist, build_cube, marginal, to_distribution
from .corpus import Document, GroupingScheme, assign_groups, extract_countries, load_scheme, parse_corpus, read_corpus
from .delineate import (
    FactorModel,
    JournalCitationMatrix,
    central_tendency,
    correlation_matrix,
    delineate,
    environment,
    principal_factors,
    read_matrix_csv,
    varimax,
)
from .entropy import EntropyDecomposition, TransmissionReport, decompose, shannon_entropy, transmissions
from .estimators import CooccurrenceVectorizer, EntropyAnalyzer, JournalFactorAnalysis
from .exceptions import DegenerateDataError, InputError
from .textprep import normalize_reference, tokenize_title, top_n

__all__ = [
    "CoocCube", "CubeSpec", "ProbDist", "build_cube", "marginal", "to_distribution",
    "Document", "GroupingScheme", "assign_groups", "extract_countries", "load_scheme", "parse_corpus", "read_corpus",
    "FactorModel", "JournalCitationMatrix", "central_tendency", "correlation_matrix", "delineate", "environment",
    "principal_factors", "read_matrix_csv", "varimax",
    "EntropyDecomposition", "TransmissionReport", "decompose", "shannon_entropy", "transmissions",
    "CooccurrenceVectorizer", "EntropyAnalyzer", "JournalFactorAnalysis",
    "DegenerateDataError", "InputError",
    "normalize_reference", "tokenize_title", "top_n",
]
