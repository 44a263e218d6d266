"""End-to-end commands: analyze a corpus, emit a cube, delineate a journal set."""
from __future__ import annotations

import csv
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path

from .cooccur import CoocCube, CubeSpec, build_cube
from .corpus import GroupingScheme, load_scheme, read_corpus
from .delineate import Delineation, delineate, read_matrix_csv
from .entropy import decompose, transmissions
from .exceptions import CommentropyError, DegenerateDataError, InputError
from .report import AnalysisReport, LevelResult
from .textprep import load_stopwords

EXIT_OK, EXIT_INPUT, EXIT_DEGENERATE = 0, 1, 2


class StageError(Exception):
    """A library error tagged with the pipeline stage that raised it."""

    def __init__(self, stage: str, cause: Exception):
        self.stage = stage
        self.cause = cause
        self.exit_code = EXIT_DEGENERATE if isinstance(cause, DegenerateDataError) else EXIT_INPUT
        super().__init__(f"{stage}: {cause}")


@contextmanager
def stage(name: str):
    try:
        yield
    except StageError:
        raise
    except (CommentropyError, OSError, ValueError) as exc:
        raise StageError(name, exc) from exc


@dataclass
class RunConfig:
    input: str | Path | None = None
    schemes: list = field(default_factory=list)
    stopwords: str | Path | None = None
    top_words: int = 250
    top_refs: int = 250
    format: str = "table"
    unmatched: str = "drop"
    min_len: int = 2
    # delineate
    matrix: str | Path | None = None
    seed: str | None = None
    threshold: float = 0.01
    criterion: float = 1.0
    varimax: bool = False
    similarity: str = "cosine"
    impacts: str | Path | None = None


def _schemes(config: RunConfig) -> list[GroupingScheme]:
    if not config.schemes:
        raise InputError("at least one grouping scheme is required")
    out = []
    for s in config.schemes:
        out.append(s if isinstance(s, GroupingScheme) else load_scheme(s, config.unmatched))
    names = [s.name for s in out]
    if len(set(names)) != len(names):
        raise InputError(f"grouping schemes must have distinct names, got {names}")
    return out


def _spec(config: RunConfig, scheme: GroupingScheme, stopwords) -> CubeSpec:
    return CubeSpec(scheme, config.top_words, config.top_refs, stopwords, config.min_len)


def analyze_level(docs, spec: CubeSpec) -> LevelResult:
    with stage(f"cube[{spec.scheme.name}]"):
        cube = build_cube(docs, spec)
    with stage(f"entropy[{spec.scheme.name}]"):
        decomposition = decompose(cube)
        transmission = transmissions(cube)
    metadata = {
        "references": len(cube.x_labels),
        "words": len(cube.y_labels),
        "cells": cube.nnz,
        "cooccurrences": cube.total,
        "group_masses": cube.group_masses(),
    }
    return LevelResult(spec.scheme.name, decomposition, transmission, metadata)


def cmd_analyze(config: RunConfig) -> AnalysisReport:
    with stage("config"):
        schemes = _schemes(config)
        stopwords = load_stopwords(config.stopwords)
        specs = [_spec(config, s, stopwords) for s in schemes]
    with stage("parse"):
        if config.input is None:
            raise InputError("no input corpus given")
        docs = read_corpus(config.input)
        if not docs:
            raise DegenerateDataError("corpus is empty")
    levels = tuple(analyze_level(docs, spec) for spec in specs)
    return AnalysisReport(levels, {"documents": len(docs)})


def cmd_cube(config: RunConfig) -> CoocCube:
    with stage("config"):
        schemes = _schemes(config)
        if len(schemes) != 1:
            raise InputError("the cube command takes exactly one grouping scheme")
        spec = _spec(config, schemes[0], load_stopwords(config.stopwords))
    with stage("parse"):
        docs = read_corpus(config.input)
    with stage(f"cube[{spec.scheme.name}]"):
        return build_cube(docs, spec)


def read_impacts(path) -> dict[str, float]:
    """``journal,impact`` CSV, header optional."""
    impacts = {}
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.reader(fh):
            if len(row) < 2 or not row[0].strip():
                continue
            try:
                impacts[row[0].strip()] = float(row[1])
            except ValueError:
                if impacts:
                    raise InputError(f"{path}: bad impact value {row[1]!r} for {row[0]!r}") from None
    return impacts


def cmd_delineate(config: RunConfig) -> Delineation:
    with stage("parse"):
        if config.matrix is None or config.seed is None:
            raise InputError("delineate needs a citation matrix and a seed journal")
        m = read_matrix_csv(config.matrix)
        impacts = read_impacts(config.impacts) if config.impacts else None
    with stage("delineate"):
        return delineate(
            m, config.seed, config.threshold, config.criterion, config.varimax, impacts, config.similarity
        )
