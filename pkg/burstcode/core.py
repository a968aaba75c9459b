"""
Word arithmetic over the alphabet {0, ..., q-1}.

Holds the ``Word`` value type with its text format, burst deletions and
insertions, burst-deletion balls, confusable sets and the mixed-radix and
fixed-width digit conversions that the sketch and compressor build on.
"""

import logging
from dataclasses import dataclass
from itertools import product
from typing import IO, Iterable, Iterator, List, Sequence, Set, Tuple

import numpy as np

from .exceptions import AlphabetError, CapacityError, OutOfRangeError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Word:
    """
    A finite sequence over {0, ..., q-1}.

    Positions are 1-based in every public helper that takes a position, the
    way the code construction is stated; ``symbols`` itself is a plain tuple.
    """
    symbols: Tuple[int, ...]
    q: int

    def __post_init__(self):
        if self.q < 2:
            raise AlphabetError(f"Alphabet size must be at least 2, got {self.q}")
        if self.symbols and (min(self.symbols) < 0 or max(self.symbols) >= self.q):
            bad = next(s for s in self.symbols if not 0 <= s < self.q)
            raise AlphabetError(f"Symbol {bad} outside alphabet of size {self.q}")

    @classmethod
    def of(cls, symbols: Iterable[int], q: int) -> 'Word':
        """Build a word from any iterable of integers (lists, numpy arrays)."""
        return cls(tuple(int(s) for s in symbols), q)

    @classmethod
    def zeros(cls, length: int, q: int) -> 'Word':
        return cls((0,) * length, q)

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[int]:
        return iter(self.symbols)

    def __add__(self, other: 'Word') -> 'Word':
        if not isinstance(other, Word):
            return NotImplemented
        if other.q != self.q:
            raise AlphabetError(f"Cannot concatenate words over alphabets {self.q} and {other.q}")
        return Word(self.symbols + other.symbols, self.q)

    def __str__(self) -> str:
        return format_word(self)

    def at(self, i: int) -> int:
        """Symbol at 1-based position i."""
        if not 1 <= i <= len(self.symbols):
            raise OutOfRangeError(f"Position {i} outside word of length {len(self.symbols)}")
        return self.symbols[i - 1]

    def segment(self, lo: int, hi: int) -> 'Word':
        """The 1-based inclusive segment x_[lo, hi]; empty when hi < lo."""
        if lo < 1 or hi > len(self.symbols) or hi < lo - 1:
            raise OutOfRangeError(
                f"Segment [{lo}, {hi}] outside word of length {len(self.symbols)}"
            )
        return Word(self.symbols[lo - 1:hi], self.q)

    def array(self) -> np.ndarray:
        return np.asarray(self.symbols, dtype=np.int64)

    def same_alphabet(self, other: 'Word') -> None:
        if other.q != self.q:
            raise AlphabetError(f"Alphabet mismatch: {self.q} vs {other.q}")


def format_word(x: Word) -> str:
    """Text form of a word: symbols as space-separated decimal integers."""
    return ' '.join(str(s) for s in x.symbols)


def parse_word(line: str, q: int) -> Word:
    """
    Parse one line of the word text format.

    Raises:
        AlphabetError: If a token is not an integer in [0, q-1]
    """
    try:
        symbols = tuple(int(token) for token in line.split())
    except ValueError as e:
        raise AlphabetError(f"Word line contains a non-integer token: {line.strip()!r}") from e
    return Word(symbols, q)


def read_words(stream: IO[str], q: int) -> List[Word]:
    """Read one word per non-blank line."""
    return [parse_word(line, q) for line in stream if line.strip()]


def write_words(stream: IO[str], words: Iterable[Word]) -> None:
    for word in words:
        stream.write(format_word(word) + '\n')


def delete_burst(x: Word, i: int, length: int) -> Word:
    """
    Remove positions [i, i + length - 1] from x.

    Args:
        x: Source word
        i: 1-based start of the burst
        length: Number of consecutive symbols to delete

    Returns:
        Word of length |x| - length

    Raises:
        OutOfRangeError: If the interval exceeds the word
    """
    if i < 1 or length < 0 or i + length - 1 > len(x):
        raise OutOfRangeError(
            f"Burst [{i}, {i + length - 1}] outside word of length {len(x)}"
        )
    return Word(x.symbols[:i - 1] + x.symbols[i - 1 + length:], x.q)


def insert_burst(x: Word, i: int, symbols: Sequence[int]) -> Word:
    """Insert ``symbols`` so that they start at 1-based position i."""
    if not 1 <= i <= len(x) + 1:
        raise OutOfRangeError(f"Insertion position {i} outside [1, {len(x) + 1}]")
    return Word(x.symbols[:i - 1] + tuple(symbols) + x.symbols[i - 1:], x.q)


def distinct_burst_starts(x: Word, length: int) -> List[int]:
    """
    1-based burst starts giving pairwise distinct deletion results.

    Deleting at i and at i + 1 gives the same word exactly when
    x_i == x_{i + length}, so one start per maximal chain is kept.
    """
    if length == 0:
        return [1]
    starts = []
    s = x.symbols
    for i in range(1, len(s) - length + 2):
        if i == 1 or s[i - 2] != s[i - 2 + length]:
            starts.append(i)
    return starts


def burst_ball_exact(x: Word, length: int) -> Set[Word]:
    """B_length(x): words reachable by deleting exactly one burst of ``length``."""
    if not 0 <= length <= len(x):
        raise OutOfRangeError(f"Burst length {length} outside [0, {len(x)}]")
    return {delete_burst(x, i, length) for i in distinct_burst_starts(x, length)}


def burst_ball(x: Word, t: int) -> Set[Word]:
    """B_{<=t}(x), including x itself."""
    if not 0 <= t <= len(x):
        raise OutOfRangeError(f"Burst bound {t} outside [0, {len(x)}]")
    ball: Set[Word] = set()
    for length in range(t + 1):
        ball |= burst_ball_exact(x, length)
    return ball


def confusable_set(x: Word, t: int) -> Set[Word]:
    """
    All x' != x with |x'| = |x| whose burst balls meet that of x.

    Enumerates every y in B_{t'}(x) for t' in [1, t] and every way of
    inserting a burst of t' symbols back into y.
    """
    if t > len(x):
        raise OutOfRangeError(f"Burst bound {t} exceeds word length {len(x)}")
    found: Set[Word] = set()
    for length in range(1, t + 1):
        contents = list(product(range(x.q), repeat=length))
        for y in burst_ball_exact(x, length):
            for i in range(1, len(y) + 2):
                for content in contents:
                    found.add(insert_burst(y, i, content))
    found.discard(x)
    return found


def mixed_radix_pack(values: Sequence[int], radices: Sequence[int]) -> int:
    """
    Pack values into sum_k values[k] * prod_{j<k} radices[j].

    Raises:
        OutOfRangeError: If lengths differ or a value is outside [0, radix)
    """
    if len(values) != len(radices):
        raise OutOfRangeError(f"{len(values)} values for {len(radices)} radices")
    packed = 0
    weight = 1
    for value, radix in zip(values, radices):
        if radix < 1 or not 0 <= value < radix:
            raise OutOfRangeError(f"Value {value} outside radix {radix}")
        packed += value * weight
        weight *= radix
    return packed


def mixed_radix_unpack(packed: int, radices: Sequence[int]) -> List[int]:
    """Inverse of mixed_radix_pack for the same radices."""
    total = 1
    for radix in radices:
        total *= radix
    if not 0 <= packed < total:
        raise OutOfRangeError(f"Packed value {packed} outside [0, {total})")
    values = []
    for radix in radices:
        packed, value = divmod(packed, radix)
        values.append(value)
    return values


def digits_needed(bound: int, q: int) -> int:
    """Smallest k with q**k >= bound, i.e. the width holding every value below bound."""
    width = 0
    capacity = 1
    while capacity < bound:
        capacity *= q
        width += 1
    return width


def to_digits(value: int, width: int, q: int) -> Tuple[int, ...]:
    """
    Fixed-width base-q digits of value, most significant first.

    Raises:
        CapacityError: If value needs more than ``width`` digits
    """
    if value < 0:
        raise OutOfRangeError(f"Cannot write negative value {value} in base {q}")
    digits = [0] * width
    for k in range(width - 1, -1, -1):
        value, digits[k] = divmod(value, q)
    if value:
        raise CapacityError(f"Value needs more than {width} base-{q} digits")
    return tuple(digits)


def from_digits(digits: Iterable[int], q: int) -> int:
    value = 0
    for d in digits:
        value = value * q + d
    return value
