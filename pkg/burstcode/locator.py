"""
Burst locator for dense words.

Given a0 mod 4 and a1 mod 2n of a dense word x and a copy y with one burst
of t' deletions, the change in the number of pattern occurrences (-1, 0, 1
or 2) selects a case, and the a1 offset picks the segment of y the burst
hit. The result is an interval of at most 3 delta positions of x containing
some burst that turns x into y.
"""

import logging
from dataclasses import dataclass
from typing import List, Tuple

from .core import Word
from .exceptions import LocatorError, OutOfRangeError
from .params import Params
from .pattern import profile

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LocatorResult:
    """Case tag, segment index and the 1-based interval [lo, hi] of x holding the burst."""
    delta0: int
    i_d: int
    lo: int
    hi: int
    t_prime: int

    @property
    def length(self) -> int:
        return self.hi - self.lo + 1


def _rising_segment(offsets: List[int], mu: int) -> int:
    for i in range(len(offsets) - 1):
        if offsets[i] <= mu < offsets[i + 1]:
            return i
    return -1


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _swap_interval(i_d: int, u, v, m_y: int, n: int, t: int) -> Tuple[int, int]:
    """
    Interval for a burst of exactly t that leaves the occurrence count unchanged.

    Besides the plain shift, the burst can destroy one occurrence and create
    another one shifted against it: deleting the 1s of 0^t 1^t 0 1^t, or the
    0s of 0^t 1^(t-d) 0^t 1^t. The a1 offset then puts the matched segment
    one before or one after the burst, so the interval spans segments
    i_d - 1 to i_d + 1.
    """
    if not -1 <= i_d <= m_y:
        raise LocatorError(f"Segment {i_d} outside [-1, {m_y}] for occurrence change 0")
    lo = u[i_d - 1] + 1 if i_d >= 1 else 1
    hi = v[i_d + 1] + 3 * t if i_d + 1 < m_y else n
    return lo, hi


def locate(a0mod4: int, a1mod2n: int, y: Word, params: Params) -> LocatorResult:
    """
    Find an interval of x containing the deletion burst.

    Args:
        a0mod4: Occurrence count of x modulo 4
        a1mod2n: Occurrence position sum of x modulo 2n
        y: x after one burst of t' in [1, t] deletions
        params: Code parameters

    Returns:
        LocatorResult with lo <= hi clipped to [1, n]

    Raises:
        OutOfRangeError: If |y| does not correspond to a burst in [1, t]
        LocatorError: If no segment satisfies the case condition
    """
    n, t = params.n, params.t
    t_prime = n - len(y)
    if not 1 <= t_prime <= t:
        raise OutOfRangeError(f"Received length {len(y)} implies burst {t_prime} outside [1, {t}]")
    prof = profile(y, params)
    m_y, u, v = prof.a0, prof.u_bounds, prof.v_bounds
    delta0 = (a0mod4 - m_y) % 4
    if delta0 == 3:
        delta0 = -1
    modulus = 2 * n
    mu = (a1mod2n - prof.a1) % modulus

    if delta0 in (1, 2):
        # a1 offset of x from y when the burst destroys delta0 occurrences in segment i
        offsets = [(delta0 * (u[i] + 1) + (m_y - i) * t_prime) % modulus for i in range(m_y + 1)]
        if any(a >= b for a, b in zip(offsets, offsets[1:])):
            raise LocatorError(f"Offsets for occurrence change {delta0} wrap past 2n")
        i_d = _rising_segment(offsets + [modulus], mu)
        if i_d < 0:
            raise LocatorError(f"No segment matches a1 offset {mu} (occurrence change {delta0})")
        lo, hi = u[i_d] + 1, v[i_d] + t_prime
    elif delta0 == 0:
        top = m_y * t_prime + 2 * t
        if top + 2 * t >= modulus:
            raise LocatorError("Offsets for occurrence change 0 wrap past 2n")
        if mu > top:
            mu -= modulus
        # offset (m_y - i) t' >= mu > (m_y - i - 1) t'
        i_d = m_y - _ceil_div(mu, t_prime)
        if t_prime == t > 1:
            lo, hi = _swap_interval(i_d, u, v, m_y, n, t)
        elif 0 <= i_d < m_y:
            lo, hi = u[i_d] + 1, v[i_d] + 2 * t + t_prime
        elif i_d == m_y:
            lo, hi = u[m_y] + 1, n
        else:
            raise LocatorError(f"No segment matches a1 offset {mu} (occurrence change 0)")
    else:
        i_d = -1
        for i in range(m_y):
            if (prof.a1 - (v[i] + 1) + (m_y - 1 - i) * t_prime) % modulus == a1mod2n:
                i_d = i
                break
        if i_d < 0:
            raise LocatorError("No segment matches a created occurrence")
        lo, hi = v[i_d] + 1, v[i_d] + 2 * t + t_prime

    lo, hi = max(lo, 1), min(hi, n)
    if lo > hi:
        raise LocatorError(f"Empty interval [{lo}, {hi}] for segment {i_d}")
    logger.debug(f"Located burst of {t_prime}: case {delta0}, segment {i_d}, interval [{lo}, {hi}]")
    return LocatorResult(delta0=delta0, i_d=i_d, lo=lo, hi=hi, t_prime=t_prime)


def burst_starts(x: Word, y: Word) -> range:
    """
    1-based starts s such that deleting x_[s, s + k - 1] gives y, k = |x| - |y|.

    The valid starts are contiguous: s - 1 may not exceed the common prefix of
    x and y and the symbols after the burst must match the common suffix.
    """
    k = len(x) - len(y)
    if k < 0:
        return range(0)
    xs, ys = x.symbols, y.symbols
    prefix = 0
    while prefix < len(ys) and xs[prefix] == ys[prefix]:
        prefix += 1
    suffix = 0
    while suffix < len(ys) and xs[-1 - suffix] == ys[-1 - suffix]:
        suffix += 1
    return range(len(ys) - suffix + 1, prefix + 2)


def locator_sound(x: Word, y: Word, result: LocatorResult) -> bool:
    """Some burst of result.t_prime deletions inside [lo, hi] turns x into y."""
    starts = burst_starts(x, y)
    return max(starts.start, result.lo) <= min(starts.stop - 1, result.hi - result.t_prime + 1)
