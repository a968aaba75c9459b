"""
The burst-deletion correcting code.

A message u of length n - 1 is encoded as (x, 0^t 1, f(x)) with
x = enc_den(u) and f the serialized composed sketch. The decoder reads the
symbol at n + t + 1 - t' to tell whether the burst reached the sketch field,
routes on the marker, restores the body from the sketch when the burst hit
it, and dense-decodes.
"""

import logging
from dataclasses import dataclass
from typing import List

from .core import Word
from .dense_encoder import dec_den, enc_den
from .exceptions import AlphabetError, BurstCodeError, DecodeError, LocatorError, OutOfRangeError
from .locator import locate
from .params import Params, require_intervals
from .sketch import (
    Sketch,
    WindowSketch,
    covering_interval,
    deserialize_sketch,
    f_sketch,
    recover_window,
    serialize_sketch,
    sketch_intervals,
    window_sketch,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Codeword:
    """A codeword split into its dense body, the marker 0^t 1 and the sketch field."""
    body: Word
    marker: Word
    sketch_field: Word

    def word(self) -> Word:
        return self.body + self.marker + self.sketch_field


@dataclass(frozen=True)
class Route:
    """
    How a received word is decoded.

    case is one of 'intact', '1.1', '1.2', '1.3', '2'; the body is
    yz_[1, body_len] and lost body_deletions symbols to the burst.
    """
    case: str
    t_prime: int
    body_len: int
    body_deletions: int


def marker(params: Params) -> Word:
    return Word((0,) * params.t + (1,), params.q)


def encode(u: Word, params: Params) -> Word:
    """
    Encode a message of length n - 1 into a codeword of length n + r.

    Raises:
        OutOfRangeError: If |u| != n - 1
        AlphabetError: If u is not over the code alphabet
        InfeasibleParametersError: If n <= rho
    """
    require_intervals(params)
    if u.q != params.q:
        raise AlphabetError(f"Message alphabet {u.q} != q = {params.q}")
    if len(u) != params.n - 1:
        raise OutOfRangeError(f"Message length {len(u)} != n - 1 = {params.n - 1}")
    x = enc_den(u, params)
    return x + marker(params) + serialize_sketch(f_sketch(x, params), params)


def split_codeword(z: Word, params: Params) -> Codeword:
    """Split an undamaged codeword into its three fields."""
    if len(z) != params.codeword_length:
        raise OutOfRangeError(f"Codeword length {len(z)} != n + r = {params.codeword_length}")
    n, t = params.n, params.t
    return Codeword(
        body=z.segment(1, n),
        marker=z.segment(n + 1, n + t + 1),
        sketch_field=z.segment(n + t + 2, params.codeword_length),
    )


def recover_body(y_body: Word, sk: Sketch, params: Params) -> Word:
    """
    Restore a dense body of length n from a burst-deleted copy and its sketch.

    Raises:
        DecodeError: With stage 'locate' or 'window' when the copy is not a
            burst deletion of a body with this sketch
    """
    n = params.n
    t_prime = n - len(y_body)
    if not 0 <= t_prime <= params.t:
        raise DecodeError(f"Body length {len(y_body)} implies burst {t_prime} outside [0, {params.t}]",
                          stage='locate')
    if t_prime == 0:
        return y_body
    try:
        located = locate(sk.a0mod4, sk.a1mod2n, y_body, params)
        j0 = covering_interval(located.lo, located.hi, params)
    except (LocatorError, OutOfRangeError) as e:
        raise DecodeError(f"Burst location failed: {e}", stage='locate') from e

    intervals = sketch_intervals(params)
    start, end = intervals[j0 - 1]
    others = 0
    for j, (lo, hi) in enumerate(intervals, start=1):
        if j == j0 or j % 2 != j0 % 2:
            continue
        # same-parity intervals lie wholly before start or wholly after end
        window = y_body.segment(lo, hi) if hi < start else y_body.segment(lo - t_prime, hi - t_prime)
        others += window_sketch(window, params).value
    target = WindowSketch((sk.parity_sum(j0 % 2) - others) % params.n_bar)
    try:
        restored = recover_window(y_body.segment(start, end - t_prime), target, t_prime, params,
                                  window_length=end - start + 1)
    except BurstCodeError as e:
        raise DecodeError(f"Window {j0} recovery failed: {e}", stage='window') from e
    logger.debug(f"Restored window {j0} [{start}, {end}] after locating [{located.lo}, {located.hi}]")
    return y_body.segment(1, start - 1) + restored + y_body.segment(end + 1 - t_prime, n - t_prime)


def _matches(yz: Word, lo: int, expected) -> bool:
    return yz.symbols[lo - 1:lo - 1 + len(expected)] == tuple(expected)


def matching_cases(yz: Word, params: Params) -> List[str]:
    """Every marker case whose guard holds for yz; honest corruptions match exactly one."""
    n, t = params.n, params.t
    t_prime = params.codeword_length - len(yz)
    if not 1 <= t_prime <= t:
        return ['intact'] if t_prime == 0 else []
    flag = yz.at(n + t + 1 - t_prime)
    if flag == 0:
        return ['2']
    cases: List[str] = []
    if _matches(yz, n + 1 - t_prime, (0,) * t + (1,)):
        cases.append('1.1')
    for t_double in range(1, t_prime):
        body_len = n - t_prime + t_double
        if _matches(yz, body_len + 1, (0,) * (t - t_double) + (1,)) and yz.at(body_len) != 0:
            cases.append(f'1.2:{t_double}')
    if _matches(yz, n + 1, (0,) * (t - t_prime) + (1,)) and yz.at(n) != 0:
        cases.append('1.3')
    return cases


def route(yz: Word, params: Params) -> Route:
    """
    Decide where the burst fell from the marker region of a received word.

    Raises:
        DecodeError: With stage 'routing' if no case applies
    """
    n, t = params.n, params.t
    t_prime = params.codeword_length - len(yz)
    if yz.q != params.q:
        raise DecodeError(f"Received alphabet {yz.q} != q = {params.q}", stage='routing')
    if not 0 <= t_prime <= t:
        raise DecodeError(f"Received length {len(yz)} implies burst {t_prime} outside [0, {t}]",
                          stage='routing')
    if t_prime == 0:
        return Route('intact', 0, n, 0)
    flag = yz.at(n + t + 1 - t_prime)
    if flag == 0:
        return Route('2', t_prime, n, 0)
    if flag != 1:
        raise DecodeError(f"Marker position holds {flag}, expected 0 or 1", stage='routing')
    if _matches(yz, n + 1 - t_prime, (0,) * t + (1,)):
        return Route('1.1', t_prime, n - t_prime, t_prime)
    for t_double in range(1, t_prime):
        body_len = n - t_prime + t_double
        if _matches(yz, body_len + 1, (0,) * (t - t_double) + (1,)) and yz.at(body_len) != 0:
            return Route('1.2', t_prime, body_len, t_prime - t_double)
    if _matches(yz, n + 1, (0,) * (t - t_prime) + (1,)) and yz.at(n) != 0:
        return Route('1.3', t_prime, n, 0)
    raise DecodeError("No marker case matches the received word", stage='routing')


def decode(yz: Word, params: Params) -> Word:
    """
    Decode a codeword that lost at most one burst of up to t symbols.

    Args:
        yz: Received word of length n + r - t', t' in [0, t]
        params: Code parameters

    Returns:
        The message of length n - 1

    Raises:
        DecodeError: With the failing stage when yz is not a burst
            corruption of any codeword
    """
    path = route(yz, params)
    n, t = params.n, params.t
    if path.body_deletions:
        try:
            sk = deserialize_sketch(
                yz.segment(n + t + 2 - path.t_prime, params.codeword_length - path.t_prime), params
            )
        except BurstCodeError as e:
            raise DecodeError(f"Sketch field unreadable: {e}", stage='sketch') from e
        body = recover_body(yz.segment(1, path.body_len), sk, params)
    else:
        body = yz.segment(1, n)
    logger.debug(f"Decoding via case {path.case} with burst {path.t_prime}")
    try:
        return dec_den(body, params)
    except BurstCodeError as e:
        raise DecodeError(f"Dense decoding failed: {e}", stage='dense') from e
