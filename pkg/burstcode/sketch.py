"""
Window sketches and the composed sketch of a dense word.

A window's packed interleaved syndrome h is the mixed-radix packing of the
Tenengolts tags of its subsequences x[c::s] for every stride s <= t. The
compressed window sketch keeps only (alpha, h mod alpha) for the smallest
prime alpha that divides no difference between h(x) and the syndrome of a
confusable word. The composed sketch adds the window sketches of the even
and of the odd sketch intervals modulo N, next to a0 mod 4 and a1 mod 2n.

Syndromes of whole insertion neighbourhoods are computed with numpy: for a
fixed word y and burst content, prefix and suffix sums give the syndrome of
every y[:p] + content + y[p:] at once.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np
from sympy import primerange

from .core import Word, delete_burst, distinct_burst_starts, from_digits, mixed_radix_pack, to_digits
from .exceptions import (
    AlphaSearchExhaustedError,
    AmbiguousDecodingError,
    NoCandidateError,
    OutOfRangeError,
    SketchFormatError,
)
from .params import Params, require_intervals, window_radices
from .pattern import profile
from .vt import tag_values

logger = logging.getLogger(__name__)

INT64_SAFE = 1 << 62
DEFAULT_WINDOW_CACHE_SIZE = 4096

Content = Tuple[int, ...]


@dataclass(frozen=True)
class WindowSketch:
    """
    Sketch of one window.

    Compressed mode packs value = (alpha - 2) * alpha_max + (h mod alpha);
    raw mode stores h itself.
    """
    value: int

    @classmethod
    def from_pair(cls, alpha: int, remainder: int, params: Params) -> 'WindowSketch':
        return cls((alpha - 2) * params.alpha_max + remainder)

    def pair(self, params: Params) -> Tuple[int, int]:
        """
        (alpha, remainder) of a compressed window sketch.

        Raises:
            SketchFormatError: If the remainder is not below alpha
        """
        quotient, remainder = divmod(self.value, params.alpha_max)
        alpha = quotient + 2
        if remainder >= alpha or alpha > params.alpha_max:
            raise SketchFormatError(f"Window sketch {self.value} does not unpack to a valid pair")
        return alpha, remainder


@dataclass(frozen=True)
class Sketch:
    """Composed sketch (a0 mod 4, a1 mod 2n, h0, h1)."""
    a0mod4: int
    a1mod2n: int
    h0: int
    h1: int

    def parity_sum(self, parity: int) -> int:
        return self.h0 if parity == 0 else self.h1


def interleaved_syndromes(x: Word, params: Params) -> int:
    """
    Packed interleaved syndrome of x.

    Pairs are packed in the order (1,1), (2,1), (2,2), ..., (t,t), each as
    (vt, sum) with radices (class size + 1, q), vt first.

    Raises:
        OutOfRangeError: If |x| < 2
    """
    if len(x) < 2:
        raise OutOfRangeError(f"Interleaved syndromes need a word of length >= 2, got {len(x)}")
    values: List[int] = []
    for stride in range(1, params.t + 1):
        for residue in range(stride):
            values.extend(tag_values(x.symbols[residue::stride], x.q))
    return mixed_radix_pack(values, window_radices(len(x), x.q, params.t))


def _prefix(values: np.ndarray) -> np.ndarray:
    """P[k] = sum of values[:k] for k in [0, len(values)]."""
    return np.concatenate([np.zeros(1, dtype=np.int64), np.cumsum(values, dtype=np.int64)])


def _pack(fields: List[np.ndarray], radices: List[int]) -> np.ndarray:
    space = 1
    for radix in radices:
        space *= radix
    dtype = np.int64 if space < INT64_SAFE else object
    packed = np.zeros(len(fields[0]), dtype=dtype)
    weight = 1
    for values, radix in zip(fields, radices):
        packed = packed + values.astype(dtype) * weight
        weight *= radix
    return packed


def _insertion_table(y: np.ndarray, burst: int, q: int, t: int) -> Dict[Content, np.ndarray]:
    length = len(y)
    full = length + burst
    p = np.arange(length + 1)
    index = np.arange(length)
    radices = window_radices(full, q, t)

    # content-independent parts: pairs and symbols wholly before or wholly after the insertion
    base = []
    for stride in range(1, t + 1):
        vt = [np.zeros(length + 1, dtype=np.int64) for _ in range(stride)]
        sums = [np.zeros(length + 1, dtype=np.int64) for _ in range(stride)]
        ascent = np.zeros(length, dtype=np.int64)
        if length > stride:
            ascent[stride:] = y[stride:] >= y[:-stride]
        weighted = (index // stride) * ascent
        for residue in range(stride):
            in_class = index % stride == residue
            pre_w = _prefix(np.where(in_class, weighted, 0))
            pre_a = _prefix(np.where(in_class, ascent, 0))
            pre_y = _prefix(np.where(in_class, y, 0))
            vt[residue] += pre_w
            sums[residue] += pre_y
            # after the insertion a symbol at y-index Q sits at Q + burst
            target = (residue + burst) % stride
            carry = (residue + burst) // stride
            tail = np.zeros(stride, dtype=np.int64)
            suf_w = np.concatenate([pre_w[-1] - pre_w, tail])
            suf_a = np.concatenate([pre_a[-1] - pre_a, tail])
            vt[target] += suf_w[p + stride] + carry * suf_a[p + stride]
            sums[target] += pre_y[-1] - pre_y
        base.append((vt, sums))

    table: Dict[Content, np.ndarray] = {}
    last = max(length - 1, 0)
    for content in product(range(q), repeat=burst):
        fields: List[np.ndarray] = []
        for stride, (vt_base, sum_base) in zip(range(1, t + 1), base):
            vt = [v.copy() for v in vt_base]
            sums = [s.copy() for s in sum_base]
            # pairs (P - stride, P) touching the inserted burst
            for offset in range(burst + stride):
                pos = p + offset
                valid = (pos >= stride) & (pos < full)
                if offset < burst:
                    cur = np.full(length + 1, content[offset], dtype=np.int64)
                else:
                    cur = y[np.clip(pos - burst, 0, last)]
                back = offset - stride
                if back < 0:
                    prev = y[np.clip(pos - stride, 0, last)]
                elif back < burst:
                    prev = np.full(length + 1, content[back], dtype=np.int64)
                else:
                    prev = y[np.clip(pos - stride - burst, 0, last)]
                hit = valid & (cur >= prev)
                weight = pos // stride
                cls = pos % stride
                for residue in range(stride):
                    vt[residue] += np.where(hit & (cls == residue), weight, 0)
            for k, symbol in enumerate(content):
                cls = (p + k) % stride
                for residue in range(stride):
                    sums[residue] += np.where(cls == residue, symbol, 0)
            for residue in range(stride):
                size = max(0, (full - residue + stride - 1) // stride)
                fields.append(vt[residue] % (size + 1))
                fields.append(sums[residue] % q)
        table[content] = _pack(fields, radices)
    return table


def insertion_syndromes(y: Word, burst: int, params: Params) -> Dict[Content, np.ndarray]:
    """
    Interleaved syndromes of every burst insertion into y.

    Args:
        y: Word receiving the burst
        burst: Number of inserted symbols
        params: Code parameters (only t is used)

    Returns:
        Mapping from burst content to an array whose entry p is the packed
        syndrome of y[:p] + content + y[p:], for p in [0, |y|]

    Raises:
        OutOfRangeError: If y is empty or burst is negative
    """
    if not len(y) or burst < 0:
        raise OutOfRangeError(f"Cannot insert a burst of {burst} into a word of length {len(y)}")
    return _insertion_table(y.array(), burst, y.q, params.t)


def neighbourhood_syndromes(x: Word, params: Params) -> np.ndarray:
    """Sorted distinct syndromes over x and every word confusable with it."""
    chunks = []
    for burst in range(1, min(params.t, len(x) - 1) + 1):
        for start in distinct_burst_starts(x, burst):
            y = delete_burst(x, start, burst)
            for values in insertion_syndromes(y, burst, params).values():
                chunks.append(np.unique(values))
    if not chunks:
        return np.asarray([interleaved_syndromes(x, params)], dtype=object)
    if any(chunk.dtype == object for chunk in chunks):
        chunks = [chunk.astype(object) for chunk in chunks]
    return np.unique(np.concatenate(chunks))


def confusable_syndromes(x: Word, params: Params) -> set:
    """Syndromes of the words confusable with x; h(x) itself is never among them."""
    own = interleaved_syndromes(x, params)
    return {int(h) for h in neighbourhood_syndromes(x, params) if int(h) != own}


def separating_prime(differences: Iterable[int], alpha_max: int) -> int:
    """
    Smallest prime <= alpha_max dividing no nonzero difference.

    Raises:
        AlphaSearchExhaustedError: If every prime up to alpha_max divides one
    """
    if isinstance(differences, np.ndarray):
        diffs = np.abs(differences)
    else:
        values = [abs(int(d)) for d in differences]
        dtype = np.int64 if all(v < INT64_SAFE for v in values) else object
        diffs = np.asarray(values, dtype=dtype)
    diffs = np.unique(diffs[diffs != 0])
    for prime in primerange(2, alpha_max + 1):
        if not len(diffs) or not np.any(diffs % int(prime) == 0):
            return int(prime)
    raise AlphaSearchExhaustedError(f"No prime up to {alpha_max} separates the window")


def alpha_search(x: Word, params: Params) -> int:
    """
    Smallest prime separating h(x) from every confusable syndrome.

    Raises:
        OutOfRangeError: If |x| > window_max
        AlphaSearchExhaustedError: If no prime up to alpha_max works
    """
    if len(x) > params.window_max:
        raise OutOfRangeError(f"Window length {len(x)} exceeds window_max {params.window_max}")
    own = interleaved_syndromes(x, params)
    syndromes = neighbourhood_syndromes(x, params)
    if syndromes.dtype == object or own >= INT64_SAFE:
        differences = syndromes.astype(object) - own
    else:
        differences = syndromes - np.int64(own)
    alpha = separating_prime(differences, params.alpha_max)
    logger.debug(f"Separating prime {alpha} for window of length {len(x)} over {len(syndromes)} syndromes")
    return alpha


def _compute_window_sketch(x: Word, params: Params) -> WindowSketch:
    if len(x) > params.window_max:
        raise OutOfRangeError(f"Window length {len(x)} exceeds window_max {params.window_max}")
    h = interleaved_syndromes(x, params)
    if params.sketch_mode == 'raw':
        return WindowSketch(h)
    alpha = alpha_search(x, params)
    return WindowSketch.from_pair(alpha, h % alpha, params)


_cached_window_sketch = lru_cache(maxsize=DEFAULT_WINDOW_CACHE_SIZE)(_compute_window_sketch)


def configure_window_cache(maxsize: int) -> None:
    """Replace the window sketch cache with one of the given size (0 disables it)."""
    global _cached_window_sketch
    if maxsize:
        _cached_window_sketch = lru_cache(maxsize=maxsize)(_compute_window_sketch)
    else:
        _cached_window_sketch = _compute_window_sketch
    logger.info(f"Window sketch cache size set to {maxsize}")


def window_sketch(x: Word, params: Params) -> WindowSketch:
    """
    Sketch of a window of length <= window_max.

    Memoized per (window, params) so that windows a burst left untouched are
    computed once per process.
    """
    return _cached_window_sketch(x, params)


def recover_window(y_win: Word, target: WindowSketch, t_prime: int, params: Params,
                   window_length: Optional[int] = None) -> Word:
    """
    Restore a window from a burst-deleted copy and its sketch.

    Args:
        y_win: Window after a burst of t_prime deletions
        target: Sketch of the original window
        t_prime: Burst length, in [1, t]
        params: Code parameters
        window_length: Original window length, checked against |y_win| + t_prime

    Returns:
        The unique insertion of t_prime symbols consistent with the sketch

    Raises:
        OutOfRangeError: If a precondition on the lengths fails
        NoCandidateError: If no insertion matches
        AmbiguousDecodingError: If several distinct words match
    """
    if not 1 <= t_prime <= params.t:
        raise OutOfRangeError(f"Burst length {t_prime} outside [1, {params.t}]")
    if len(y_win) + t_prime > params.window_max:
        raise OutOfRangeError(f"Window length {len(y_win) + t_prime} exceeds {params.window_max}")
    if window_length is not None and len(y_win) + t_prime != window_length:
        raise OutOfRangeError(
            f"Received window of {len(y_win)} plus burst {t_prime} != window length {window_length}"
        )
    if params.sketch_mode == 'raw':
        alpha, remainder = None, target.value
    else:
        alpha, remainder = target.pair(params)
    survivors = set()
    symbols = y_win.symbols
    for content, values in insertion_syndromes(y_win, t_prime, params).items():
        matches = values == remainder if alpha is None else values % alpha == remainder
        for p in np.flatnonzero(matches):
            survivors.add(symbols[:p] + content + symbols[p:])
    if not survivors:
        raise NoCandidateError(f"No burst insertion of length {t_prime} matches the window sketch")
    if len(survivors) > 1:
        raise AmbiguousDecodingError(f"{len(survivors)} distinct windows match the window sketch")
    return Word(survivors.pop(), y_win.q)


def sketch_intervals(params: Params) -> List[Tuple[int, int]]:
    """
    Sketch intervals L_j = [(j-1) rho + 1, (j+1) rho], the last one ending at n.

    Raises:
        InfeasibleParametersError: If n <= rho
    """
    require_intervals(params)
    rho, count = params.rho, params.interval_count
    intervals = [((j - 1) * rho + 1, (j + 1) * rho) for j in range(1, count)]
    intervals.append(((count - 1) * rho + 1, params.n))
    return intervals


def covering_interval(lo: int, hi: int, params: Params) -> int:
    """
    Smallest 1-based j with [lo, hi] inside L_j.

    Raises:
        OutOfRangeError: If no interval contains [lo, hi]
    """
    for j, (start, end) in enumerate(sketch_intervals(params), start=1):
        if start <= lo and hi <= end:
            return j
    raise OutOfRangeError(f"No sketch interval contains [{lo}, {hi}]")


def window_values(x: Word, params: Params) -> List[int]:
    """Window sketch value of every sketch interval of x."""
    return [window_sketch(x.segment(lo, hi), params).value for lo, hi in sketch_intervals(params)]


def f_sketch(x: Word, params: Params) -> Sketch:
    """
    Composed sketch of a word of length n.

    Raises:
        OutOfRangeError: If |x| != n
        InfeasibleParametersError: If n <= rho
    """
    if len(x) != params.n:
        raise OutOfRangeError(f"Sketch input length {len(x)} != n = {params.n}")
    prof = profile(x, params)
    sums = [0, 0]
    for j, value in enumerate(window_values(x, params), start=1):
        sums[j % 2] = (sums[j % 2] + value) % params.n_bar
    return Sketch(
        a0mod4=prof.a0 % 4,
        a1mod2n=prof.a1 % (2 * params.n),
        h0=sums[0],
        h1=sums[1],
    )


def serialize_sketch(sk: Sketch, params: Params) -> Word:
    """Fixed-width base-q fields (a0mod4, a1mod2n, h0, h1), most significant digit first."""
    q = params.q
    digits = (
        to_digits(sk.a0mod4, params.a0_width, q)
        + to_digits(sk.a1mod2n, params.a1_width, q)
        + to_digits(sk.h0, params.h_width, q)
        + to_digits(sk.h1, params.h_width, q)
    )
    return Word(digits, q)


def deserialize_sketch(d: Word, params: Params) -> Sketch:
    """
    Parse and range-check a serialized sketch.

    Raises:
        SketchFormatError: If the width or any field range is wrong
    """
    if len(d) != params.sketch_width:
        raise SketchFormatError(f"Sketch field has {len(d)} digits, expected {params.sketch_width}")
    q = params.q
    bounds = (
        ('a0mod4', params.a0_width, 4),
        ('a1mod2n', params.a1_width, 2 * params.n),
        ('h0', params.h_width, params.n_bar),
        ('h1', params.h_width, params.n_bar),
    )
    values = {}
    offset = 0
    for name, width, bound in bounds:
        value = from_digits(d.symbols[offset:offset + width], q)
        if value >= bound:
            raise SketchFormatError(f"Sketch field {name}={value} outside [0, {bound})")
        values[name] = value
        offset += width
    return Sketch(**values)
