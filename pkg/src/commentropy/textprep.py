"""Title tokenization, reference keys and top-N frequency lists."""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping

from .exceptions import InputError

# letters and digits (no underscore) plus the hyphen
_TOKEN_RE = re.compile(r"(?:[^\W_]|-)+")
_TRAILING_PUNCT = ".,;:!?"


def parse_stopwords(lines: Iterable[str]) -> frozenset[str]:
    words = set()
    for line in lines:
        line = line.strip()
        if line and not line.startswith("#"):
            words.add(line.lower())
    return frozenset(words)


@lru_cache(maxsize=1)
def default_stopwords() -> frozenset[str]:
    text = resources.files("commentropy").joinpath("data", "stopwords_en.txt").read_text(encoding="utf-8")
    return parse_stopwords(text.splitlines())


def load_stopwords(path: str | Path | None) -> frozenset[str]:
    if path is None:
        return default_stopwords()
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_stopwords(fh)
    except OSError as exc:
        raise InputError(f"cannot read stopword file {path}: {exc}") from None


def tokenize_title(title: str, stopwords: Iterable[str] = frozenset(), min_len: int = 2) -> list[str]:
    """Lowercased title tokens, in order, duplicates kept.

    Hyphens stay inside tokens (``self-organization``) but are trimmed from
    token edges.
    """
    if min_len < 1:
        raise InputError(f"min_len must be >= 1, got {min_len}")
    tokens = []
    for match in _TOKEN_RE.finditer(title.lower()):
        token = match.group().strip("-")
        if len(token) >= min_len and token not in stopwords:
            tokens.append(token)
    return tokens


def normalize_reference(raw: str) -> str:
    key = " ".join(raw.upper().split())
    key = key.rstrip(_TRAILING_PUNCT + " ")
    if not key:
        raise InputError(f"empty cited reference {raw!r}")
    return key


@dataclass(frozen=True)
class FrequencyList:
    """Top-``n`` labels by count, ties broken by ascending label."""

    items: tuple[tuple[str, int], ...]
    n: int

    @property
    def labels(self) -> list[str]:
        return [label for label, _ in self.items]

    def as_counts(self) -> dict[str, int]:
        return dict(self.items)

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return iter(self.items)


def top_n(counts: Mapping[str, int], n: int) -> FrequencyList:
    if n < 0:
        raise InputError(f"n must be >= 0, got {n}")
    if any(c < 0 for c in counts.values()):
        raise InputError("counts must be non-negative")
    ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    return FrequencyList(tuple(ranked[:n]), n)


def document_frequencies(label_sets: Iterable[Iterable[str]]) -> Counter:
    """Count each label once per document."""
    freq: Counter = Counter()
    for labels in label_sets:
        freq.update(set(labels))
    return freq
