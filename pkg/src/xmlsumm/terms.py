"""Term normalization: case folding, punctuation stripping, stopwords, Porter stems."""

from __future__ import annotations

import re
from collections import Counter
from functools import lru_cache
from importlib import resources
from typing import Iterable, Optional

import snowballstemmer

_WORD = re.compile(r"[^\W_]+")

# A multiset of normalized terms.
TermVector = Counter


def default_stopwords() -> frozenset:
    text = resources.files("xmlsumm").joinpath("data/stopwords.txt").read_text("utf-8")
    return parse_stopwords(text)


def parse_stopwords(text: str) -> frozenset:
    words = (line.strip().casefold() for line in text.splitlines())
    return frozenset(w for w in words if w and not w.startswith("#"))


def load_stopwords(path) -> frozenset:
    with open(path, encoding="utf-8") as fh:
        return parse_stopwords(fh.read())


class Tokenizer:
    """Turns a text value into a :data:`TermVector`.

    Stems are iterated to a fixed point and stopwords are filtered both
    before and after stemming, so tokenizing the joined output of a
    tokenization returns the same multiset.
    """

    def __init__(self, stopwords: Optional[Iterable[str]] = None):
        self.stopwords = frozenset(stopwords) if stopwords is not None else default_stopwords()
        self._stemmer = snowballstemmer.stemmer("porter")
        self.stem = lru_cache(maxsize=65536)(self._stem)

    def _stem(self, word: str) -> str:
        for _ in range(8):
            stemmed = self._stemmer.stemWord(word)
            if stemmed == word:
                break
            word = stemmed
        return word

    def terms(self, value: str) -> list[str]:
        out = []
        for word in _WORD.findall(value.casefold()):
            if word in self.stopwords:
                continue
            stem = self.stem(word)
            if stem and stem not in self.stopwords:
                out.append(stem)
        return out

    def __call__(self, value: str) -> TermVector:
        return Counter(self.terms(value))


_default: Optional[Tokenizer] = None


def default_tokenizer() -> Tokenizer:
    global _default
    if _default is None:
        _default = Tokenizer()
    return _default


def tokenize(value: str, tokenizer: Optional[Tokenizer] = None) -> TermVector:
    return (tokenizer or default_tokenizer())(value)
