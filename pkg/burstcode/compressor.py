"""
Invertible compressor for pattern-free windows.

A window of length delta without 0^t 1^t splits into delta / 2t blocks,
none equal to the pattern; each block gets its rank among the q^2t - 1
non-pattern blocks and the ranks are read as one mixed-radix integer, first
block least significant, written as fixed-width base-q digits.
"""

import logging
from typing import Optional

from .core import Word, from_digits, mixed_radix_pack, mixed_radix_unpack, to_digits
from .exceptions import OutOfRangeError, PatternFoundError
from .params import Params

logger = logging.getLogger(__name__)


def _lex_index(block, q: int) -> int:
    return from_digits(block, q)


def block_rank(b: Word, params: Params) -> int:
    """
    Rank of a 2t-block in lexicographic order with the pattern removed.

    Raises:
        PatternFoundError: If b is the pattern
        OutOfRangeError: If b does not have length 2t
    """
    if len(b) != 2 * params.t:
        raise OutOfRangeError(f"Block length {len(b)} != 2t = {2 * params.t}")
    if b.symbols == params.pattern:
        raise PatternFoundError("Block equals the pattern and has no rank")
    index = _lex_index(b.symbols, params.q)
    return index - 1 if index > _lex_index(params.pattern, params.q) else index


def block_unrank(rank: int, params: Params) -> Word:
    """Inverse of block_rank."""
    q, width = params.q, 2 * params.t
    if not 0 <= rank < q ** width - 1:
        raise OutOfRangeError(f"Block rank {rank} outside [0, {q ** width - 2}]")
    index = rank + 1 if rank >= _lex_index(params.pattern, q) else rank
    return Word(to_digits(index, width, q), q)


def _contains_pattern(symbols, pattern) -> bool:
    d = len(pattern)
    return any(symbols[i:i + d] == pattern for i in range(len(symbols) - d + 1))


def g_compress(s: Word, width: int, params: Params) -> Word:
    """
    Compress a pattern-free window of length delta into ``width`` digits.

    Args:
        s: Window of length params.delta containing no occurrence of p
        width: Output width; params.g_image_len always suffices
        params: Code parameters

    Returns:
        Word of exactly ``width`` base-q digits, most significant first

    Raises:
        PatternFoundError: If s contains the pattern
        CapacityError: If the packed value needs more than ``width`` digits
    """
    block_len = 2 * params.t
    if len(s) != params.delta:
        raise OutOfRangeError(f"Window length {len(s)} != delta = {params.delta}")
    if _contains_pattern(s.symbols, params.pattern):
        raise PatternFoundError("Window handed to the compressor contains the pattern")
    blocks = len(s) // block_len
    ranks = [block_rank(s.segment(k * block_len + 1, (k + 1) * block_len), params) for k in range(blocks)]
    value = mixed_radix_pack(ranks, [params.q ** block_len - 1] * blocks)
    return Word(to_digits(value, width, params.q), params.q)


def g_decompress(d: Word, params: Params, width: Optional[int] = None) -> Word:
    """
    Inverse of g_compress.

    Raises:
        OutOfRangeError: If d has the wrong width or encodes a value beyond
            the block-rank space
    """
    expected = params.g_image_len if width is None else width
    if len(d) != expected:
        raise OutOfRangeError(f"Compressed field has {len(d)} digits, expected {expected}")
    block_len = 2 * params.t
    blocks = params.delta // block_len
    try:
        ranks = mixed_radix_unpack(from_digits(d.symbols, params.q), [params.q ** block_len - 1] * blocks)
    except OutOfRangeError as e:
        raise OutOfRangeError("Compressed value exceeds the block-rank space") from e
    symbols = []
    for rank in ranks:
        symbols.extend(block_unrank(rank, params).symbols)
    return Word(tuple(symbols), params.q)
