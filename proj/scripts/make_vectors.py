#!/usr/bin/env python3
"""Generate the fixture word-vector file from the fixture statutes.

These are NOT trained word2vec vectors: they come from a seeded PPMI
co-occurrence factorization over the tiny fixture corpus and exist only so
the pipeline has a deterministic vector file to load.
"""
import re
import sys
from collections import Counter

import numpy as np

STOPWORDS = set(
    """a an the this that these those each every some any no such both all other
    and or but nor so yet for because although if unless until when whether as
    of in on at by to from with without within into onto upon under over above
    below between among through during against toward towards about is are was
    were be been being shall may must will would should can do does did have
    has had it its he she they them their his her who which what not
    """.split()
)

SUFFIXES = [("ies", "y"), ("sses", "ss"), ("s", ""), ("ing", ""), ("ed", "")]


def lemma(word):
    w = word.lower()
    for suf, rep in SUFFIXES:
        if w.endswith(suf) and len(w) > len(suf) + 2:
            return w[: len(w) - len(suf)] + rep
    return w


def tokens(text):
    return [
        lemma(t)
        for t in re.findall(r"[A-Za-z][A-Za-z-]*", text)
        if t.lower() not in STOPWORDS
    ]


def main():
    src = sys.argv[1] if len(sys.argv) > 1 else "data/statutes_fixture.txt"
    out = sys.argv[2] if len(sys.argv) > 2 else "data/vectors_fixture.txt"
    dim = 16
    window = 4

    toks = tokens(open(src, encoding="utf-8").read())
    vocab = sorted(set(toks))
    index = {w: i for i, w in enumerate(vocab)}

    cooc = np.zeros((len(vocab), len(vocab)))
    for i, w in enumerate(toks):
        for j in range(max(0, i - window), min(len(toks), i + window + 1)):
            if i != j:
                cooc[index[w], index[toks[j]]] += 1.0

    total = cooc.sum()
    row = cooc.sum(axis=1, keepdims=True)
    col = cooc.sum(axis=0, keepdims=True)
    with np.errstate(divide="ignore", invalid="ignore"):
        pmi = np.log(cooc * total / (row * col))
    ppmi = np.where(np.isfinite(pmi) & (pmi > 0), pmi, 0.0)

    rng = np.random.default_rng(1)
    u, s, _ = np.linalg.svd(ppmi + rng.normal(0, 1e-9, ppmi.shape))
    vecs = u[:, :dim] * np.sqrt(s[:dim])

    with open(out, "w", encoding="utf-8") as f:
        f.write(f"{len(vocab)} {dim}\n")
        for w in vocab:
            comps = " ".join(f"{v:.6f}" for v in vecs[index[w]])
            f.write(f"{w} {comps}\n")
    print(f"wrote {len(vocab)} vectors of dim {dim} to {out}")


if __name__ == "__main__":
    main()
