"""Finite words over {a, b} and the cylinder sets they define in {a, b}^N.

Words are plain strings over ``"ab"``; the empty word is written ``-`` in
files and on the command line.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Iterable

from .algebra import Element, LeavittAlgebra
from .graph import two_loop
from .rings import ZZ, RingSpec


def check_word(w: str) -> str:
    if any(ch not in "ab" for ch in w):
        raise ValueError(f"{w!r} is not a word over {{a, b}}")
    return w


def parse_word(text: str) -> str:
    text = text.strip()
    return "" if text == "-" else check_word(text)


def format_word(w: str) -> str:
    return w or "-"


def disjoint(w1: str, w2: str) -> bool:
    """Z(w1) and Z(w2) are disjoint iff neither word is a prefix of the other."""
    return not (w1.startswith(w2) or w2.startswith(w1))


def is_partition_of(family: Iterable[str], base: str = "") -> bool:
    """True iff the cylinders of ``family`` partition Z(base).

    Walks the prefix tree below ``base``: every member must extend ``base``,
    no member may lie below another, and every internal node needs both
    children covered.
    """
    words = [check_word(w) for w in family]
    if not words or len(set(words)) != len(words):
        return False
    if not all(w.startswith(base) for w in words):
        return False
    tails = [w[len(base):] for w in words]

    def covers(node: list[str]) -> bool:
        if "" in node:
            return len(node) == 1
        if not node:
            return False
        return (covers([t[1:] for t in node if t[0] == "a"])
                and covers([t[1:] for t in node if t[0] == "b"]))

    return covers(tails)


def offending_words(family: Iterable[str], base: str = "") -> list[str]:
    """Members that break disjointness or leave ``base``, for error reports."""
    words = list(family)
    bad = [w for w in words if not w.startswith(base)]
    for i, w in enumerate(words):
        for x in words[i + 1:]:
            if not disjoint(w, x):
                bad += [w, x]
    return sorted(set(bad), key=lambda w: (len(w), w))


def standard_partition(n: int) -> list[str]:
    """``b, ab, aab, ..., a^(n-2) b, a^(n-1)``; ``n = 1`` gives the empty word."""
    if n < 1:
        raise ValueError("standard_partition needs n >= 1")
    return ["a" * (i - 1) + "b" for i in range(1, n)] + ["a" * (n - 1)]


@lru_cache(maxsize=None)
def l2(ring: RingSpec = ZZ) -> LeavittAlgebra:
    """L_{2,R}: the algebra of the two-loop graph on edges ``a`` and ``b``."""
    return LeavittAlgebra(two_loop(), ring)


def word_elem(w: str, algebra: LeavittAlgebra | None = None) -> Element:
    A = algebra or l2()
    check_word(w)
    return A.path(tuple(w)) if w else A.one()
