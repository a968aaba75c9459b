"""
One-symbol-redundancy encoder onto (p, delta)-dense strings, and its inverse.

The encoder appends a flag symbol 1 and then repeatedly cuts out the
leftmost pattern-free window, appending a replacement block

    (p, p, i, g(w), 0, 1^m, 0)

at the end of the word. Interior windows have length delta and use m = 2t;
windows that run into the block chain are shorter by l and use m = 2t - l,
so every block is exactly as long as the symbols it replaces. Blocks parse
right to left (terminal 0, run of 1s, 0), and the word ends in 1 exactly
when no block is left.
"""

import logging
from typing import List

import numpy as np

from .compressor import g_compress, g_decompress
from .core import Word, from_digits, to_digits
from .exceptions import AlphabetError, MalformedBlockError, OutOfRangeError
from .params import Params
from .pattern import occurrence_mask

logger = logging.getLogger(__name__)


def _first_bad_window(symbols: List[int], params: Params, last_start: int) -> int:
    """Smallest 1-based i <= last_start whose delta-window has no occurrence, else 0."""
    if last_start < 1:
        return 0
    t, delta = params.t, params.delta
    mask = occurrence_mask(np.asarray(symbols, dtype=np.int64), t)
    starts = np.concatenate([[0], np.cumsum(mask)])
    i = np.arange(1, last_start + 1)
    empty = np.flatnonzero(starts[i + delta - 2 * t] - starts[i - 1] == 0)
    return int(empty[0]) + 1 if len(empty) else 0


def _block(i: int, window: Word, ones: int, params: Params) -> List[int]:
    pattern = list(params.pattern)
    return (
        pattern + pattern
        + list(to_digits(i, params.i_field_len, params.q))
        + list(g_compress(window, params.g_image_len, params).symbols)
        + [0] + [1] * ones + [0]
    )


def enc_den(u: Word, params: Params) -> Word:
    """
    Map a message of length n - 1 to a dense word of length n.

    Args:
        u: Message word of length n - 1
        params: Code parameters

    Returns:
        (p, delta)-dense word of length n; it ends in 1 iff no block was added

    Raises:
        OutOfRangeError: If |u| != n - 1
    """
    n, t, delta = params.n, params.t, params.delta
    if len(u) != n - 1:
        raise OutOfRangeError(f"Message length {len(u)} != n - 1 = {n - 1}")
    if u.q != params.q:
        raise AlphabetError(f"Message alphabet {u.q} != q = {params.q}")
    x = list(u.symbols) + [1]
    s = n
    rounds = 0
    while True:
        chained = s < n
        last_start = s + 2 * t - delta if chained else n - delta + 1
        i = _first_bad_window(x, params, last_start)
        if not i:
            break
        if i <= s - delta + 1:
            window = Word(tuple(x[i - 1:i - 1 + delta]), params.q)
            block = _block(i, window, 2 * t, params)
            del x[i - 1:i - 1 + delta]
            s -= delta
        else:
            pad = delta - (s - i + 1)
            window = Word(tuple(x[i - 1:s]) + (0,) * pad, params.q)
            block = _block(i, window, 2 * t - pad, params)
            del x[i - 1:s]
            s = i - 1
        x.extend(block)
        rounds += 1
        assert len(x) == n, "replacement changed the word length"
    logger.debug(f"Dense encoding finished after {rounds} replacement rounds")
    return Word(tuple(x), params.q)


def dec_den(x: Word, params: Params) -> Word:
    """
    Invert enc_den.

    Raises:
        OutOfRangeError: If |x| != n
        MalformedBlockError: If a terminal block cannot be parsed or the word
            holds more blocks than the encoder can produce
    """
    n, t, delta, q = params.n, params.t, params.delta, params.q
    if len(x) != n:
        raise OutOfRangeError(f"Dense word length {len(x)} != n = {n}")
    y = list(x.symbols)
    pattern = list(params.pattern)
    # each encoder round shortens the unblocked prefix by at least delta - 2t + 1
    max_rounds = -(-n // (delta - 2 * t + 1))
    rounds = 0
    while y[-1] == 0:
        if rounds == max_rounds:
            raise MalformedBlockError(f"More than {max_rounds} replacement blocks")
        rounds += 1
        end = len(y) - 1
        ones = 0
        while end - 1 - ones >= 0 and y[end - 1 - ones] == 1:
            ones += 1
        if not 1 <= ones <= 2 * t:
            raise MalformedBlockError(f"Trailing run of {ones} ones outside [1, {2 * t}]")
        block_len = delta - (2 * t - ones)
        start = len(y) - block_len
        if start < 0:
            raise MalformedBlockError("Replacement block longer than the word")
        block = y[start:]
        if block[:4 * t] != pattern + pattern:
            raise MalformedBlockError(f"Missing p,p anchor at position {start + 1}")
        if block[block_len - ones - 2] != 0:
            raise MalformedBlockError("Missing separator before the run of ones")
        field = block[4 * t:4 * t + params.i_field_len]
        payload = block[4 * t + params.i_field_len:4 * t + params.i_field_len + params.g_image_len]
        i = from_digits(field, q)
        del y[start:]
        if not 1 <= i <= len(y) + 1:
            raise MalformedBlockError(f"Block position {i} outside [1, {len(y) + 1}]")
        try:
            window = g_decompress(Word(tuple(payload), q), params)
        except OutOfRangeError as e:
            raise MalformedBlockError(f"Corrupted payload in block at position {start + 1}") from e
        y[i - 1:i - 1] = list(window.symbols[:block_len])
    return Word(tuple(y[:-1]), q)
