"""
Occurrences of the pattern p = 0^t 1^t.

The indicator profile (occurrence starts, a0, a1 and the segment bounds
u_i / v_i between occurrences) feeds the locator and the sketch; the
density predicate is implemented twice, by sliding windows and by segment
lengths, and the two are cross-checked.
"""

import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .core import Word
from .exceptions import OutOfRangeError
from .params import Params

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IndicatorProfile:
    """
    Pattern-occurrence structure of a word.

    u_bounds[i] and v_bounds[i] delimit the i-th pattern-free segment
    x_[u_i + 1, v_i]; segment 0 precedes the first occurrence.
    """
    indicator: Word
    occurrences: Tuple[int, ...]
    a0: int
    a1: int
    u_bounds: Tuple[int, ...]
    v_bounds: Tuple[int, ...]

    @property
    def m(self) -> int:
        return self.a0

    def segment_lengths(self) -> Tuple[int, ...]:
        return tuple(v - u for u, v in zip(self.u_bounds, self.v_bounds))


def occurrence_mask(symbols: np.ndarray, t: int) -> np.ndarray:
    """Boolean array, True at each 0-based start of 0^t 1^t."""
    width = 2 * t
    if len(symbols) < width:
        return np.zeros(len(symbols), dtype=bool)
    pattern = np.array([0] * t + [1] * t, dtype=symbols.dtype)
    hits = (sliding_window_view(symbols, width) == pattern).all(axis=1)
    return np.concatenate([hits, np.zeros(width - 1, dtype=bool)])


def profile(x: Word, params: Params) -> IndicatorProfile:
    """
    Indicator vector, a0, a1 and segment bounds of x.

    Raises:
        OutOfRangeError: If |x| < 2t
    """
    t = params.t
    if len(x) < 2 * t:
        raise OutOfRangeError(f"Profile needs a word of length >= {2 * t}, got {len(x)}")
    mask = occurrence_mask(x.array(), t)
    occurrences = tuple(int(i) + 1 for i in np.flatnonzero(mask))
    u_bounds = (0,) + tuple(o + 2 * t - 1 for o in occurrences)
    v_bounds = tuple(o - 1 for o in occurrences) + (len(x),)
    return IndicatorProfile(
        indicator=Word.of(mask.astype(np.int64), 2),
        occurrences=occurrences,
        a0=len(occurrences),
        a1=sum(occurrences),
        u_bounds=u_bounds,
        v_bounds=v_bounds,
    )


def dense_by_windows(x: Word, params: Params) -> bool:
    """Every window x_[i, i + delta - 1] contains a full occurrence."""
    t, delta = params.t, params.delta
    mask = occurrence_mask(x.array(), t)
    starts = np.concatenate([[0], np.cumsum(mask)])
    last = len(x) - delta + 1
    if last < 1:
        return True
    # occurrence starts inside [i, i + delta - 2t] for every 1-based i in [1, last]
    i = np.arange(1, last + 1)
    counts = starts[i + delta - 2 * t] - starts[i - 1]
    return bool((counts > 0).all())


def dense_by_segments(x: Word, params: Params) -> bool:
    """Head and tail segments <= delta - 2t, interior segments <= delta + 1 - 4t."""
    t, delta = params.t, params.delta
    prof = profile(x, params)
    lengths = prof.segment_lengths()
    if prof.m == 0:
        return len(x) < delta
    if lengths[0] > delta - 2 * t or lengths[-1] > delta - 2 * t:
        return False
    return all(length <= delta + 1 - 4 * t for length in lengths[1:-1])


def is_dense(x: Word, params: Params) -> bool:
    """
    Whether x is (p, delta)-dense.

    Raises:
        OutOfRangeError: If |x| < delta
    """
    if len(x) < params.delta:
        raise OutOfRangeError(f"Density needs a word of length >= {params.delta}, got {len(x)}")
    by_windows = dense_by_windows(x, params)
    assert by_windows == dense_by_segments(x, params), "density characterizations disagree"
    return by_windows
