"""
Burst-deletion channel campaigns and brute-force oracles.

A campaign runs one suite over a deterministic list of units (usually one
seeded message each), in a process pool when workers > 1, and collects the
failures with stage attribution into a CampaignReport. Failures are
recorded, never raised.

Suites:
    codec       encode, delete a burst, decode, compare
    locator     every burst of a dense word lies in the located interval
    separation  the separating prime splits a window from its confusable set
    dense       dense encoding round trip and density
    tenengolts  exhaustive single-deletion decoding
"""

import json
import logging
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import product
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from .codec import decode, encode, matching_cases, route
from .core import Word, burst_ball, confusable_set, delete_burst, to_digits
from .dense_encoder import dec_den, enc_den
from .exceptions import BurstCodeError, ConfigurationError, DecodeError
from .locator import locate, locator_sound
from .params import Params, derive_params, redundancy_breakdown
from .pattern import is_dense, profile
from .sketch import alpha_search, interleaved_syndromes
from .vt import tenengolts_decode, tenengolts_tag

logger = logging.getLogger(__name__)

SUITES = ('codec', 'locator', 'separation', 'dense', 'tenengolts')
MESSAGE_SOURCES = ('random', 'pattern_free', 'exhaustive')
DEFAULT_WINDOWS = {'separation': 24, 'tenengolts': 8}

Decoder = Callable[[Word, Params], Word]


@dataclass(frozen=True)
class CampaignSpec:
    """What a campaign runs: code instance, message source, burst coverage and suite."""
    q: int
    t: int
    n: int
    mode: str = 'compact'
    sketch_mode: str = 'compressed'
    seed: int = 0
    messages: int = 1
    message_source: str = 'random'
    bursts: str = 'exhaustive'
    suite: str = 'codec'
    workers: int = 1
    window: Optional[int] = None

    def validate(self) -> None:
        """
        Raises:
            ConfigurationError: If a field is out of range
        """
        if self.suite not in SUITES:
            raise ConfigurationError(f"Unknown suite '{self.suite}'; expected one of {', '.join(SUITES)}")
        if self.message_source not in MESSAGE_SOURCES:
            raise ConfigurationError(
                f"Unknown message source '{self.message_source}'; expected one of {', '.join(MESSAGE_SOURCES)}"
            )
        if self.messages < 0:
            raise ConfigurationError(f"Message count must be non-negative, got {self.messages}")
        if self.workers < 1:
            raise ConfigurationError(f"Worker count must be positive, got {self.workers}")
        parse_bursts(self.bursts)

    @property
    def window_length(self) -> int:
        return self.window if self.window is not None else DEFAULT_WINDOWS.get(self.suite, 24)


@dataclass(frozen=True)
class Failure:
    """One failed trial: message index and seed, burst position and length, failing stage."""
    message_index: int
    message_seed: int
    position: int
    length: int
    stage: str
    detail: str = ''


@dataclass
class UnitResult:
    trials: int = 0
    failures: List[Failure] = field(default_factory=list)
    cases: Counter = field(default_factory=Counter)
    timings: Dict[str, float] = field(default_factory=dict)

    def add_time(self, stage: str, seconds: float) -> None:
        self.timings[stage] = self.timings.get(stage, 0.0) + seconds


@dataclass
class CampaignReport:
    """
    Outcome of a campaign.

    ``passed`` is true exactly when ``failures`` is empty. JSON output keeps
    the field order below; timings are the only nondeterministic field.
    """
    suite: str
    params: Dict[str, object]
    spec: Dict[str, object]
    trials: int
    failures: List[Failure]
    cases: Dict[str, int]
    redundancy: Dict[str, float]
    timings: Dict[str, float]

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self, include_timings: bool = True) -> Dict[str, object]:
        data = {
            'suite': self.suite,
            'passed': self.passed,
            'trials': self.trials,
            'failure_count': len(self.failures),
            'failures': [asdict(f) for f in self.failures],
            'cases': dict(sorted(self.cases.items())),
            'params': self.params,
            'spec': self.spec,
            'redundancy': self.redundancy,
        }
        if include_timings:
            data['timings'] = {k: round(v, 6) for k, v in sorted(self.timings.items())}
        return data

    def to_json(self, include_timings: bool = True) -> str:
        return json.dumps(self.to_dict(include_timings=include_timings), indent=2)


def parse_bursts(text: str) -> Tuple[str, int]:
    """
    Parse 'exhaustive' or 'sample:<k>'.

    Raises:
        ConfigurationError: If the text is neither form
    """
    if text == 'exhaustive':
        return 'exhaustive', 0
    if text.startswith('sample:'):
        try:
            k = int(text.split(':', 1)[1])
        except ValueError as e:
            raise ConfigurationError(f"Bad burst sample count in '{text}'") from e
        if k < 0:
            raise ConfigurationError(f"Burst sample count must be non-negative, got {k}")
        return 'sample', k
    raise ConfigurationError(f"Burst coverage must be 'exhaustive' or 'sample:<k>', got '{text}'")


def message_seed(seed: int, index: int) -> int:
    """Scalar seed recorded in failure reports for message ``index``."""
    return int(np.random.SeedSequence([seed, index]).generate_state(1)[0])


def random_pattern_free_word(rng: np.random.Generator, length: int, q: int, t: int) -> Word:
    """Uniform symbols, resampling any symbol that would complete 0^t 1^t."""
    pattern = [0] * t + [1] * t
    symbols: List[int] = []
    while len(symbols) < length:
        symbol = int(rng.integers(0, q))
        if symbols[len(symbols) - 2 * t + 1:] + [symbol] == pattern:
            continue
        symbols.append(symbol)
    return Word(tuple(symbols), q)


def make_message(spec: CampaignSpec, index: int, length: int) -> Word:
    """Message ``index`` of the campaign, of the given length."""
    if spec.message_source == 'exhaustive':
        return Word(to_digits(index, length, spec.q), spec.q)
    rng = np.random.default_rng([spec.seed, index])
    if spec.message_source == 'pattern_free':
        return random_pattern_free_word(rng, length, spec.q, spec.t)
    return Word.of(rng.integers(0, spec.q, size=length), spec.q)


def burst_plan(spec: CampaignSpec, index: int, total: int, include_intact: bool) -> List[Tuple[int, int]]:
    """(1-based start, length) of every burst to apply to a word of length ``total``."""
    kind, k = parse_bursts(spec.bursts)
    plan = [(1, 0)] if include_intact else []
    if kind == 'exhaustive':
        for length in range(1, spec.t + 1):
            plan.extend((start, length) for start in range(1, total - length + 2))
        return plan
    rng = np.random.default_rng([spec.seed, index, 1])
    for _ in range(k):
        length = int(rng.integers(1, spec.t + 1))
        plan.append((int(rng.integers(1, total - length + 2)), length))
    return plan


def oracle_ball_intersect(x: Word, x2: Word, t: int) -> bool:
    """Brute-force test of B_{<=t}(x) and B_{<=t}(x2) sharing a word."""
    if len(x) != len(x2):
        raise ConfigurationError("Ball intersection oracle needs equal lengths")
    return not burst_ball(x, t).isdisjoint(burst_ball(x2, t))


def _codec_unit(spec: CampaignSpec, params: Params, index: int, decoder: Decoder) -> UnitResult:
    result = UnitResult()
    seed = message_seed(spec.seed, index)
    u = make_message(spec, index, params.n - 1)
    started = time.perf_counter()
    z = encode(u, params)
    result.add_time('encode', time.perf_counter() - started)
    for start, length in burst_plan(spec, index, len(z), include_intact=True):
        yz = delete_burst(z, start, length)
        result.trials += 1
        cases = matching_cases(yz, params)
        if len(cases) != 1:
            result.failures.append(Failure(index, seed, start, length, 'routing',
                                           f"guards matched {cases}"))
            continue
        result.cases[route(yz, params).case] += 1
        started = time.perf_counter()
        try:
            decoded = decoder(yz, params)
        except DecodeError as e:
            result.failures.append(Failure(index, seed, start, length, e.stage, str(e)))
            logger.warning(f"Decode failed for message {index} burst ({start}, {length}): {e}")
            continue
        finally:
            result.add_time('decode', time.perf_counter() - started)
        if decoded != u:
            result.failures.append(Failure(index, seed, start, length, 'compare',
                                           'decoded message differs'))
    return result


def _locator_unit(spec: CampaignSpec, params: Params, index: int, decoder: Decoder) -> UnitResult:
    result = UnitResult()
    seed = message_seed(spec.seed, index)
    x = enc_den(make_message(spec, index, params.n - 1), params)
    prof = profile(x, params)
    started = time.perf_counter()
    for start, length in burst_plan(spec, index, len(x), include_intact=False):
        y = delete_burst(x, start, length)
        result.trials += 1
        try:
            located = locate(prof.a0 % 4, prof.a1 % (2 * params.n), y, params)
        except BurstCodeError as e:
            result.failures.append(Failure(index, seed, start, length, 'locate', str(e)))
            continue
        result.cases[str(located.delta0)] += 1
        if located.delta0 != prof.a0 - profile(y, params).a0:
            result.failures.append(Failure(index, seed, start, length, 'case', f"case {located.delta0}"))
        elif located.length > 3 * params.delta or not locator_sound(x, y, located):
            result.failures.append(Failure(index, seed, start, length, 'interval',
                                           f"[{located.lo}, {located.hi}]"))
    result.add_time('locate', time.perf_counter() - started)
    return result


def _separation_unit(spec: CampaignSpec, params: Params, index: int, decoder: Decoder) -> UnitResult:
    result = UnitResult(trials=1)
    seed = message_seed(spec.seed, index)
    length = spec.window_length
    x = make_message(spec, index, length)
    started = time.perf_counter()
    neighbours = confusable_set(x, params.t)
    result.add_time('enumerate', time.perf_counter() - started)
    if len(neighbours) > params.t * length * length * params.q ** params.t:
        result.failures.append(Failure(index, seed, 0, params.t, 'bound', f"{len(neighbours)} confusable words"))
    started = time.perf_counter()
    try:
        alpha = alpha_search(x, params)
    except BurstCodeError as e:
        result.failures.append(Failure(index, seed, 0, params.t, 'separation', str(e)))
        return result
    finally:
        result.add_time('alpha', time.perf_counter() - started)
    own = interleaved_syndromes(x, params) % alpha
    clashes = sum(1 for other in neighbours if interleaved_syndromes(other, params) % alpha == own)
    result.cases[str(alpha)] += 1
    if clashes:
        result.failures.append(Failure(index, seed, 0, params.t, 'separation',
                                       f"{clashes} confusable words share the residue mod {alpha}"))
    return result


def _dense_unit(spec: CampaignSpec, params: Params, index: int, decoder: Decoder) -> UnitResult:
    result = UnitResult(trials=1)
    seed = message_seed(spec.seed, index)
    u = make_message(spec, index, params.n - 1)
    started = time.perf_counter()
    x = enc_den(u, params)
    result.add_time('encode', time.perf_counter() - started)
    result.cases['blocks' if x.symbols[-1] == 0 else 'flag'] += 1
    if len(x) != params.n or not is_dense(x, params):
        result.failures.append(Failure(index, seed, 0, 0, 'density', 'encoder output is not dense'))
        return result
    started = time.perf_counter()
    try:
        restored = dec_den(x, params)
    except BurstCodeError as e:
        result.failures.append(Failure(index, seed, 0, 0, 'dense', str(e)))
        return result
    finally:
        result.add_time('decode', time.perf_counter() - started)
    if restored != u:
        result.failures.append(Failure(index, seed, 0, 0, 'compare', 'dense round trip differs'))
    return result


def _tenengolts_unit(spec: CampaignSpec, params: Params, index: int, decoder: Decoder) -> UnitResult:
    # unit index selects the word length, starting at 2
    result = UnitResult()
    length = index + 2
    started = time.perf_counter()
    for symbols in product(range(spec.q), repeat=length):
        x = Word(symbols, spec.q)
        tag = tenengolts_tag(x)
        for position in range(1, length + 1):
            result.trials += 1
            try:
                restored = tenengolts_decode(delete_burst(x, position, 1), tag)
            except BurstCodeError as e:
                result.failures.append(Failure(index, 0, position, 1, 'tenengolts', f"{symbols}: {e}"))
                continue
            if restored != x:
                result.failures.append(Failure(index, 0, position, 1, 'compare', str(symbols)))
    result.add_time('tenengolts', time.perf_counter() - started)
    return result


_UNIT_RUNNERS = {
    'codec': _codec_unit,
    'locator': _locator_unit,
    'separation': _separation_unit,
    'dense': _dense_unit,
    'tenengolts': _tenengolts_unit,
}


def campaign_units(spec: CampaignSpec, params: Params) -> List[int]:
    """Unit indices a campaign runs, in report order."""
    if spec.suite == 'tenengolts':
        return list(range(max(0, spec.window_length - 1)))
    count = spec.messages
    if spec.message_source == 'exhaustive':
        length = spec.window_length if spec.suite == 'separation' else params.n - 1
        count = min(count, spec.q ** length)
    return list(range(count))


def _run_unit(spec: CampaignSpec, index: int, decoder: Decoder) -> UnitResult:
    params = campaign_params(spec)
    return _UNIT_RUNNERS[spec.suite](spec, params, index, decoder)


def campaign_params(spec: CampaignSpec) -> Params:
    return derive_params(spec.q, spec.t, spec.n, mode=spec.mode, sketch_mode=spec.sketch_mode,
                         permissive=spec.q == 2)


def run_campaign(spec: CampaignSpec, decoder: Optional[Decoder] = None) -> CampaignReport:
    """
    Run a campaign and collect its report.

    Args:
        spec: Campaign description
        decoder: Replacement for codec.decode (codec suite only); must be a
            module-level function when spec.workers > 1

    Returns:
        CampaignReport; deterministic in everything but timings

    Raises:
        ConfigurationError: If the spec is invalid
        InfeasibleParametersError: If the code instance does not exist
    """
    spec.validate()
    params = campaign_params(spec)
    decoder = decoder or decode
    units = campaign_units(spec, params)
    logger.info(f"Starting {spec.suite} campaign: {len(units)} units, q={spec.q} t={spec.t} n={spec.n}")
    started = time.perf_counter()
    if spec.workers > 1 and len(units) > 1:
        with ProcessPoolExecutor(max_workers=spec.workers) as pool:
            results = list(pool.map(_run_unit, [spec] * len(units), units, [decoder] * len(units)))
    else:
        results = [_UNIT_RUNNERS[spec.suite](spec, params, index, decoder) for index in units]

    trials = 0
    failures: List[Failure] = []
    cases: Counter = Counter()
    timings: Dict[str, float] = {}
    for unit in results:
        trials += unit.trials
        failures.extend(unit.failures)
        cases.update(unit.cases)
        for stage, seconds in unit.timings.items():
            timings[stage] = timings.get(stage, 0.0) + seconds
    timings['wall'] = time.perf_counter() - started

    report = CampaignReport(
        suite=spec.suite,
        params=params.to_dict(),
        spec=asdict(spec),
        trials=trials,
        failures=failures,
        cases=dict(cases),
        redundancy=redundancy_breakdown(params),
        timings=timings,
    )
    logger.info(
        f"Finished {spec.suite} campaign: {trials} trials, {len(failures)} failures "
        f"in {timings['wall']:.2f}s"
    )
    return report
