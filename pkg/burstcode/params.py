"""
Code-instance parameters.

``derive_params`` picks the density window length and derives every other
quantity (field widths, sketch intervals, the alpha search bound and the
sketch modulus) so the encoder and the decoder share one configuration.
"""

import logging
import math
from dataclasses import asdict, dataclass
from typing import Dict, Iterable, List, Tuple

from .core import digits_needed
from .exceptions import InfeasibleParametersError

logger = logging.getLogger(__name__)

MODES = ('compact', 'paper')
SKETCH_MODES = ('compressed', 'raw')


@dataclass(frozen=True)
class Params:
    """
    Every numeric parameter of a code instance (q, t, n).

    Immutable and hashable; safe to share between processes and to use as a
    cache key.
    """
    q: int
    t: int
    n: int
    mode: str
    sketch_mode: str
    pattern: Tuple[int, ...]
    delta: int
    rho: int
    i_field_len: int
    g_image_len: int
    window_max: int
    syndrome_bound: int
    alpha_max: int
    n_bar: int
    a0_width: int
    a1_width: int
    h_width: int
    sketch_width: int
    r: int

    @property
    def interval_count(self) -> int:
        """Number of sketch intervals, ceil(n / rho) - 1."""
        return -(-self.n // self.rho) - 1

    @property
    def block_count(self) -> int:
        """Pattern-length blocks in one density window."""
        return self.delta // (2 * self.t)

    @property
    def codeword_length(self) -> int:
        return self.n + self.r

    def to_dict(self) -> Dict[str, object]:
        data = asdict(self)
        data['pattern'] = ''.join(str(s) for s in self.pattern)
        data['interval_count'] = self.interval_count
        return data

    def to_text(self) -> str:
        """Human-readable key=value block, one field per line."""
        return '\n'.join(f"{key}={value}" for key, value in self.to_dict().items()) + '\n'


def window_radices(length: int, q: int, t: int) -> List[int]:
    """
    Packing radices of the interleaved syndrome of a window of ``length``.

    Classes are ordered (1,1), (2,1), (2,2), ..., (t,t); each contributes
    (n_class + 1, q) for its VT value and its symbol sum.
    """
    radices = []
    for stride in range(1, t + 1):
        for residue in range(stride):
            size = max(0, (length - residue + stride - 1) // stride)
            radices.extend((size + 1, q))
    return radices


def syndrome_bound(length: int, q: int, t: int) -> int:
    """Bit length bound R of packed interleaved syndromes at ``length``."""
    space = 1
    for radix in window_radices(length, q, t):
        space *= radix
    return (space - 1).bit_length()


def alpha_bound(window_max: int, q: int, t: int, bound_bits: int) -> int:
    """
    Upper bound on the separating prime of any window.

    Every bad prime divides one of at most t * m^2 * q^t nonzero differences,
    each below 2^R with fewer than R prime factors, so the K-th prime with
    K = t * m^2 * q^t * R + 1 is always good; p_K < K (ln K + ln ln K).
    """
    k = t * window_max * window_max * q ** t * bound_bits + 1
    k = max(k, 6)
    return math.floor(k * (math.log(k) + math.log(math.log(k)))) + 1


def position_field_len(n: int, q: int) -> int:
    """Base-q digits needed to write any position in [1, n]."""
    return digits_needed(n + 1, q)


def capacity_holds(q: int, t: int, delta: int, g_image_len: int) -> bool:
    """(q^{2t} - 1)^{delta / 2t} <= q^{g_image_len}, in exact integers."""
    if g_image_len < 0:
        return False
    return (q ** (2 * t) - 1) ** (delta // (2 * t)) <= q ** g_image_len


def build_params(q: int, t: int, n: int, delta: int,
                 mode: str = 'compact', sketch_mode: str = 'compressed') -> Params:
    """
    Assemble Params around an explicit density window length.

    Performs no feasibility checks; ``derive_params`` is the validated entry
    point. Analyses that only need the pattern geometry at a small delta
    (density, locator) use this directly.
    """
    i_field_len = position_field_len(n, q)
    g_image_len = delta - i_field_len - 6 * t - 2
    rho = 3 * delta
    window_max = 2 * rho
    bound_bits = syndrome_bound(window_max, q, t)
    alpha_max = alpha_bound(window_max, q, t, bound_bits)
    n_bar = alpha_max * alpha_max if sketch_mode == 'compressed' else 1 << bound_bits
    a0_width = digits_needed(4, q)
    a1_width = digits_needed(2 * n, q)
    h_width = digits_needed(n_bar, q)
    sketch_width = a0_width + a1_width + 2 * h_width
    return Params(
        q=q,
        t=t,
        n=n,
        mode=mode,
        sketch_mode=sketch_mode,
        pattern=(0,) * t + (1,) * t,
        delta=delta,
        rho=rho,
        i_field_len=i_field_len,
        g_image_len=g_image_len,
        window_max=window_max,
        syndrome_bound=bound_bits,
        alpha_max=alpha_max,
        n_bar=n_bar,
        a0_width=a0_width,
        a1_width=a1_width,
        h_width=h_width,
        sketch_width=sketch_width,
        r=t + 1 + sketch_width,
    )


def _compact_delta(q: int, t: int, n: int) -> int:
    i_field_len = position_field_len(n, q)
    delta = 4 * t
    while delta < n:
        if capacity_holds(q, t, delta, delta - i_field_len - 6 * t - 2):
            return delta
        delta += 2 * t
    raise InfeasibleParametersError(
        f"No delta < n={n} satisfies (q^2t - 1)^(delta/2t) <= q^(delta - {i_field_len} - {6 * t + 2}) "
        f"for q={q}, t={t}"
    )


def _paper_delta(q: int, t: int, n: int) -> int:
    delta = 2 * t * q ** (2 * t) * (n - 1).bit_length()
    # n >= q^((6t + 3 - log_q e) / 0.4), rearranged to natural logs
    if 0.4 * math.log(n) + 1 < (6 * t + 3) * math.log(q):
        raise InfeasibleParametersError(
            f"Size condition n >= q^((6t+3-log_q e)/0.4) fails for q={q}, t={t}, n={n}"
        )
    if delta >= n:
        raise InfeasibleParametersError(
            f"n > delta fails: delta = 2t*q^2t*ceil(log2 n) = {delta} >= n = {n}"
        )
    g_image_len = delta - position_field_len(n, q) - 6 * t - 2
    if not capacity_holds(q, t, delta, g_image_len):
        raise InfeasibleParametersError(
            f"Capacity inequality (q^2t - 1)^(delta/2t) <= q^{g_image_len} fails for delta={delta}"
        )
    return delta


def derive_params(q: int, t: int, n: int, mode: str = 'compact',
                  sketch_mode: str = 'compressed', permissive: bool = False) -> Params:
    """
    Derive and validate the parameters of a code instance.

    Args:
        q: Alphabet size (>= 3, or >= 2 when permissive)
        t: Maximum burst length
        n: Dense-string length; messages have n - 1 symbols
        mode: 'compact' scans for the smallest feasible delta, 'paper' uses
            delta = 2t * q^2t * ceil(log2 n) and its size condition
        sketch_mode: 'compressed' stores (alpha, h mod alpha) per window,
            'raw' stores the packed syndrome itself
        permissive: Accept binary alphabets

    Returns:
        Fully populated Params

    Raises:
        InfeasibleParametersError: If an input is out of range or the named
            inequality cannot be met
    """
    if mode not in MODES:
        raise InfeasibleParametersError(f"Unknown mode '{mode}'; expected one of {', '.join(MODES)}")
    if sketch_mode not in SKETCH_MODES:
        raise InfeasibleParametersError(
            f"Unknown sketch mode '{sketch_mode}'; expected one of {', '.join(SKETCH_MODES)}"
        )
    if q < (2 if permissive else 3):
        raise InfeasibleParametersError(f"Alphabet size q={q} too small")
    if t < 1:
        raise InfeasibleParametersError(f"Burst bound t={t} must be at least 1")
    if n < 2:
        raise InfeasibleParametersError(f"Length n={n} must be at least 2")

    delta = _compact_delta(q, t, n) if mode == 'compact' else _paper_delta(q, t, n)
    params = build_params(q, t, n, delta, mode=mode, sketch_mode=sketch_mode)
    logger.info(
        f"Derived params q={q} t={t} n={n} mode={mode}: delta={params.delta} "
        f"rho={params.rho} r={params.r} intervals={params.interval_count}"
    )
    return params


def require_intervals(params: Params) -> None:
    """
    Check that the sketch has at least one interval.

    Raises:
        InfeasibleParametersError: If n <= rho
    """
    if params.interval_count < 1:
        raise InfeasibleParametersError(
            f"n > rho fails: n={params.n}, rho={params.rho}; the sketch needs ceil(n/rho) >= 2"
        )


def _capacity_delta(q: int, t: int, i_field_len: int) -> int:
    """Smallest delta >= 4t meeting the capacity inequality for a fixed position width."""
    delta = 4 * t
    while not capacity_holds(q, t, delta, delta - i_field_len - 6 * t - 2):
        delta += 2 * t
    return delta


def smallest_codec_length(q: int, t: int, sketch_mode: str = 'compressed',
                          max_field_len: int = 40) -> Params:
    """
    Compact-mode Params at the smallest n that supports the full codec (n > rho).

    Within one position width F (q^(F-1) <= n < q^F) the compact delta is
    fixed, so the first qualifying n of each width is max(q^(F-1), 3 delta + 1).

    Raises:
        InfeasibleParametersError: If no width up to ``max_field_len`` qualifies
    """
    for field_len in range(1, max_field_len + 1):
        delta = _capacity_delta(q, t, field_len)
        n = max(q ** (field_len - 1), 3 * delta + 1, 2)
        if n < q ** field_len:
            return derive_params(q, t, n, mode='compact', sketch_mode=sketch_mode,
                                 permissive=q == 2)
    raise InfeasibleParametersError(
        f"No codec length with position width up to {max_field_len} for q={q}, t={t}"
    )


def params_from_text(text: str) -> Params:
    """Rebuild Params from the key=value block written by Params.to_text."""
    fields: Dict[str, str] = {}
    for line in text.splitlines():
        if '=' in line:
            key, value = line.split('=', 1)
            fields[key.strip()] = value.strip()
    try:
        return derive_params(
            int(fields['q']), int(fields['t']), int(fields['n']),
            mode=fields.get('mode', 'compact'),
            sketch_mode=fields.get('sketch_mode', 'compressed'),
            permissive=int(fields['q']) == 2,
        )
    except KeyError as e:
        raise InfeasibleParametersError(f"Params text is missing field {e}") from e


def redundancy_breakdown(params: Params) -> Dict[str, float]:
    """
    Redundancy of a code instance in symbols and bits.

    ``slack_bits`` is the sketch cost minus log2 n + 8 log2 log2 n.
    """
    bits_per_symbol = math.log2(params.q)
    reference = math.log2(params.n) + 8 * math.log2(math.log2(params.n))
    sketch_bits = params.sketch_width * bits_per_symbol
    return {
        'r': params.r,
        'marker_symbols': params.t + 1,
        'sketch_width': params.sketch_width,
        'a0_bits': params.a0_width * bits_per_symbol,
        'a1_bits': params.a1_width * bits_per_symbol,
        'h0_bits': params.h_width * bits_per_symbol,
        'h1_bits': params.h_width * bits_per_symbol,
        'sketch_bits': sketch_bits,
        # one more symbol goes to the dense encoding of the n - 1 message symbols
        'redundancy_symbols': params.r + 1,
        'redundancy_bits': (params.r + 1) * bits_per_symbol,
        'reference_bits': reference,
        'slack_bits': sketch_bits - reference,
    }


def redundancy_profile(q: int, t: int, ns: Iterable[int], mode: str = 'compact',
                       sketch_mode: str = 'compressed') -> List[Dict[str, float]]:
    """redundancy_breakdown over a grid of lengths, skipping infeasible ones."""
    rows = []
    for n in ns:
        try:
            params = derive_params(q, t, n, mode=mode, sketch_mode=sketch_mode)
        except InfeasibleParametersError as e:
            logger.debug(f"Skipping n={n} in redundancy profile: {e}")
            continue
        row = {'n': n, 'delta': params.delta}
        row.update(redundancy_breakdown(params))
        rows.append(row)
    return rows


def slack_summary(rows: List[Dict[str, float]]) -> Dict[str, object]:
    """
    Spread of ``slack_bits`` over a redundancy profile.

    Digit widths are whole symbols, so the slack moves by up to log2 q per
    field between lengths and need not fall monotonically; ``spread`` is the
    quantity that stays bounded.
    """
    slacks = [row['slack_bits'] for row in rows]
    if not slacks:
        return {'lengths': 0, 'min': None, 'max': None, 'spread': None, 'non_increasing': True}
    return {
        'lengths': len(slacks),
        'min': min(slacks),
        'max': max(slacks),
        'spread': max(slacks) - min(slacks),
        'non_increasing': all(b <= a for a, b in zip(slacks, slacks[1:])),
    }
