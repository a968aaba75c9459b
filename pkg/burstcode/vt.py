"""
Single-deletion primitives: VT syndrome, the q-ary signature and the
Tenengolts tag with its candidate-filtering decoder.
"""

import logging
from dataclasses import dataclass
from typing import Sequence, Set, Tuple

from .core import Word
from .exceptions import (
    AlphabetError,
    AmbiguousDecodingError,
    NoCandidateError,
    OutOfRangeError,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TenengoltsTag:
    """VT value of the signature tail (mod n + 1) and symbol sum (mod q) of a word of length n."""
    vt_value: int
    sum_value: int
    n: int


def vt_syndrome(c: Word) -> int:
    """
    VT syndrome sum_i i * c_i mod (|c| + 1) of a binary word.

    Raises:
        AlphabetError: If c contains a symbol other than 0 or 1
    """
    if any(s > 1 for s in c.symbols):
        raise AlphabetError("VT syndrome needs a binary word")
    return sum(i * s for i, s in enumerate(c.symbols, start=1)) % (len(c) + 1)


def signature(x: Word) -> Word:
    """
    Ascent indicator phi(x): phi_1 = 0, phi_i = 1 iff x_i >= x_{i-1}.

    Raises:
        OutOfRangeError: If x is empty
    """
    if not len(x):
        raise OutOfRangeError("Signature of the empty word is undefined")
    s = x.symbols
    return Word((0,) + tuple(int(s[i] >= s[i - 1]) for i in range(1, len(s))), 2)


def tag_values(symbols: Sequence[int], q: int) -> Tuple[int, int]:
    """
    (vt, sum) of a raw symbol sequence.

    The VT value is taken over phi_[2, n] modulo n + 1. Sequences shorter
    than two symbols have an empty signature tail and a VT value of 0.
    """
    n = len(symbols)
    vt = 0
    for k in range(1, n):
        if symbols[k] >= symbols[k - 1]:
            vt += k
    return vt % (n + 1), sum(symbols) % q


def tenengolts_tag(x: Word) -> TenengoltsTag:
    if len(x) < 2:
        raise OutOfRangeError(f"Tenengolts tag needs a word of length >= 2, got {len(x)}")
    vt_value, sum_value = tag_values(x.symbols, x.q)
    return TenengoltsTag(vt_value=vt_value, sum_value=sum_value, n=len(x))


def tenengolts_decode(y: Word, tag: TenengoltsTag) -> Word:
    """
    Recover x from one of its single deletions and its tag.

    Tries every symbol at every position and keeps the distinct candidates
    whose tag matches.

    Raises:
        OutOfRangeError: If |y| != tag.n - 1
        NoCandidateError: If no insertion matches the tag
        AmbiguousDecodingError: If several distinct words match
    """
    if len(y) != tag.n - 1:
        raise OutOfRangeError(f"Received length {len(y)} does not match tag length {tag.n} - 1")
    survivors: Set[Tuple[int, ...]] = set()
    for p in range(len(y) + 1):
        for a in range(y.q):
            candidate = y.symbols[:p] + (a,) + y.symbols[p:]
            if tag_values(candidate, y.q) == (tag.vt_value, tag.sum_value):
                survivors.add(candidate)
    if not survivors:
        raise NoCandidateError(f"No single insertion into a word of length {len(y)} matches the tag")
    if len(survivors) > 1:
        raise AmbiguousDecodingError(f"{len(survivors)} distinct words match the tag")
    return Word(survivors.pop(), y.q)
