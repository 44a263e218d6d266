#!/usr/bin/env python3
"""Brute-force reference computation for the ``analyze`` pipeline.

Deliberately shares no code with ``commentropy``: it re-reads the corpus,
re-tokenizes, rebuilds the co-occurrence events as plain dict keys and
evaluates every entropy straight from ``-sum(p * log2(p))``. Slow but obvious.

Usage::

    python tests/bruteforce_oracle.py CORPUS.jsonl SCHEME.tsv [SCHEME.tsv ...]
        [--stopwords FILE] [--top-words N] [--top-refs N]

Prints a JSON object keyed by scheme name.
"""
import argparse
import json
import math
import os
import sys

DATA = os.path.join(os.path.dirname(__file__), "..", "src", "commentropy", "data")


def read_table(path):
    out = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            key, value = line.split("\t")
            out[key.strip()] = value.strip()
    return out


def read_words(path):
    words = set()
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line and not line.startswith("#"):
                words.add(line.lower())
    return words


def title_words(title, stopwords, min_len=2):
    words, cur = [], ""
    for ch in title.lower() + " ":
        if ch.isalnum() or ch == "-":
            cur += ch
        else:
            if cur:
                words.append(cur)
            cur = ""
    words = [w.strip("-") for w in words]
    return {w for w in words if len(w) >= min_len and w not in stopwords}


def ref_key(raw):
    key = " ".join(raw.upper().split())
    while key and key[-1] in ".,;:!?":
        key = key[:-1].rstrip()
    return key


def country_of(address, countries):
    last = address.split(",")[-1].upper().strip().rstrip(".").strip()
    parts = last.split()
    for start in range(len(parts)):
        name = " ".join(parts[start:])
        if name in countries:
            return countries[name]
    return None


def top(freq, n):
    ranked = sorted(freq.items(), key=lambda kv: (-kv[1], kv[0]))
    return [label for label, _ in ranked[:n]]


def entropy(counter):
    total = sum(counter.values())
    h = 0.0
    for c in counter.values():
        if c > 0:
            p = c / total
            h -= p * math.log2(p)
    return h


def project(events, axes):
    out = {}
    for key, c in events.items():
        sub = tuple(key[a] for a in axes)
        out[sub] = out.get(sub, 0) + c
    return out


def analyze(docs, scheme, stopwords, countries, top_words, top_refs):
    prepared = []
    for doc in docs:
        groups = set()
        for addr in doc.get("addresses", []):
            code = country_of(addr, countries)
            if code is not None and code in scheme:
                groups.add(scheme[code])
        if not groups:
            continue
        refs = {ref_key(r) for r in doc.get("references", []) if ref_key(r)}
        words = title_words(doc.get("title", ""), stopwords)
        prepared.append((groups, refs, words))

    ref_freq, word_freq = {}, {}
    for _, refs, words in prepared:
        for r in refs:
            ref_freq[r] = ref_freq.get(r, 0) + 1
        for w in words:
            word_freq[w] = word_freq.get(w, 0) + 1
    ref_vocab = set(top(ref_freq, top_refs))
    word_vocab = set(top(word_freq, top_words))

    events = {}
    for groups, refs, words in prepared:
        for g in groups:
            for r in refs & ref_vocab:
                for w in words & word_vocab:
                    events[(r, w, g)] = events.get((r, w, g), 0) + 1

    total = sum(events.values())
    h = {
        "Hx": entropy(project(events, (0,))),
        "Hy": entropy(project(events, (1,))),
        "Hz": entropy(project(events, (2,))),
        "Hxy": entropy(project(events, (0, 1))),
        "Hxz": entropy(project(events, (0, 2))),
        "Hyz": entropy(project(events, (1, 2))),
        "Hxyz": entropy(events),
    }
    h["Txy"] = h["Hx"] + h["Hy"] - h["Hxy"]
    h["Txz"] = h["Hx"] + h["Hz"] - h["Hxz"]
    h["Tyz"] = h["Hy"] + h["Hz"] - h["Hyz"]
    h["Txyz"] = h["Hx"] + h["Hy"] + h["Hz"] - h["Hxyz"]

    sigma = 0.0
    for g in set(scheme.values()):
        sub = {k: c for k, c in events.items() if k[2] == g}
        mass = sum(sub.values())
        if mass:
            sigma += (mass / total) * entropy(project(sub, (0, 1)))
    h["Htot"] = h["Hxyz"]
    h["SigmaH"] = sigma
    h["H0"] = h["Htot"] - sigma
    h["pctH0"] = 100.0 * h["H0"] / h["Htot"] if h["Htot"] else 0.0
    h["total"] = total
    return h


def run(corpus, schemes, stopwords_path=None, top_words=250, top_refs=250):
    with open(corpus, encoding="utf-8") as fh:
        docs = [json.loads(line) for line in fh if line.strip()]
    stopwords = read_words(stopwords_path or os.path.join(DATA, "stopwords_en.txt"))
    countries = read_table(os.path.join(DATA, "countries.tsv"))
    result = {}
    for path in schemes:
        name = os.path.splitext(os.path.basename(path))[0]
        result[name] = analyze(docs, read_table(path), stopwords, countries, top_words, top_refs)
    return result


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("corpus")
    ap.add_argument("schemes", nargs="+")
    ap.add_argument("--stopwords")
    ap.add_argument("--top-words", type=int, default=250)
    ap.add_argument("--top-refs", type=int, default=250)
    args = ap.parse_args(argv)
    out = run(args.corpus, args.schemes, args.stopwords, args.top_words, args.top_refs)
    json.dump(out, sys.stdout, indent=2, sort_keys=True)
    print()


if __name__ == "__main__":
    main()
