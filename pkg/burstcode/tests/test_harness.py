import json
from dataclasses import replace

import numpy as np
from django.test import SimpleTestCase

from burstcode.codec import decode
from burstcode.core import Word
from burstcode.exceptions import ConfigurationError, InfeasibleParametersError
from burstcode.harness import (
    CampaignSpec,
    burst_plan,
    make_message,
    oracle_ball_intersect,
    parse_bursts,
    random_pattern_free_word,
    run_campaign,
)


def corrupted_decode(yz, params):
    """Decoder that flips the last sketch digit before decoding."""
    symbols = list(yz.symbols)
    symbols[-1] = (symbols[-1] + 1) % params.q
    return decode(Word(tuple(symbols), params.q), params)


def w(text, q=3):
    return Word(tuple(int(c) for c in text), q)


class OracleTest(SimpleTestCase):
    """Tests for the ball intersection oracle"""

    def test_examples(self):
        """Test intersecting and disjoint balls"""
        self.assertTrue(oracle_ball_intersect(w('00'), w('01'), 1))
        self.assertTrue(oracle_ball_intersect(w('0120'), w('0120'), 2))
        self.assertFalse(oracle_ball_intersect(w('02'), w('11'), 0))

    def test_length_mismatch(self):
        """Test that the oracle needs equal lengths"""
        with self.assertRaises(ConfigurationError):
            oracle_ball_intersect(w('01'), w('011'), 1)


class CampaignSpecTest(SimpleTestCase):
    """Tests for campaign configuration"""

    def test_parse_bursts(self):
        """Test burst coverage strings"""
        self.assertEqual(parse_bursts('exhaustive'), ('exhaustive', 0))
        self.assertEqual(parse_bursts('sample:25'), ('sample', 25))
        for bad in ('all', 'sample:x', 'sample:-1'):
            with self.assertRaises(ConfigurationError):
                parse_bursts(bad)

    def test_invalid_specs(self):
        """Test that bad suites, sources and worker counts are refused"""
        for kwargs in ({'suite': 'speed'}, {'message_source': 'file'}, {'workers': 0},
                       {'messages': -1}, {'bursts': 'some'}):
            spec = CampaignSpec(q=3, t=1, n=841, **kwargs)
            with self.assertRaises(ConfigurationError):
                run_campaign(spec)

    def test_infeasible_instance(self):
        """Test that an infeasible instance raises before any trial"""
        with self.assertRaises(InfeasibleParametersError):
            run_campaign(CampaignSpec(q=3, t=1, n=50))

    def test_exhaustive_burst_plan(self):
        """Test that the plan covers the intact word and every (start, length)"""
        spec = CampaignSpec(q=3, t=2, n=20000)
        plan = burst_plan(spec, 0, 10, include_intact=True)
        self.assertEqual(plan[0], (1, 0))
        self.assertEqual(len(plan), 1 + 10 + 9)
        self.assertEqual(len(set(plan)), len(plan))

    def test_sampled_burst_plan_is_seeded(self):
        """Test that sampled plans depend on the seed and the message index only"""
        spec = CampaignSpec(q=3, t=2, n=20000, bursts='sample:30', seed=4)
        first = burst_plan(spec, 1, 100, include_intact=False)
        self.assertEqual(first, burst_plan(spec, 1, 100, include_intact=False))
        self.assertNotEqual(first, burst_plan(spec, 2, 100, include_intact=False))
        self.assertTrue(all(1 <= s and s + k - 1 <= 100 and 1 <= k <= 2 for s, k in first))

    def test_messages(self):
        """Test seeded, exhaustive and pattern-free message sources"""
        spec = CampaignSpec(q=3, t=1, n=841, seed=8)
        self.assertEqual(make_message(spec, 3, 50), make_message(spec, 3, 50))
        exhaustive = CampaignSpec(q=3, t=1, n=841, message_source='exhaustive')
        self.assertEqual(make_message(exhaustive, 5, 4), w('0012'))
        word = random_pattern_free_word(np.random.default_rng(0), 500, 3, 1)
        self.assertNotIn('0 1', str(word))
        self.assertEqual(len(word), 500)


class CampaignTest(SimpleTestCase):
    """Tests for campaign runs and reports"""

    def test_zero_trials(self):
        """Test that an empty campaign passes"""
        report = run_campaign(CampaignSpec(q=3, t=1, n=841, messages=0))
        self.assertEqual(report.trials, 0)
        self.assertTrue(report.passed)

    def test_codec_campaign(self):
        """Test sampled bursts on the smallest compressed instance"""
        spec = CampaignSpec(q=3, t=1, n=841, messages=2, bursts='sample:12', seed=5)
        report = run_campaign(spec)
        self.assertEqual(report.trials, 2 * 13)
        self.assertTrue(report.passed, msg=report.to_json())
        self.assertEqual(report.cases.get('intact'), 2)
        self.assertEqual(sum(report.cases.values()), report.trials)

    def test_codec_campaign_is_deterministic(self):
        """Test that equal seeds give equal reports apart from timings"""
        spec = CampaignSpec(q=3, t=1, n=2000, sketch_mode='raw', messages=2, bursts='sample:8', seed=6)
        first = run_campaign(spec).to_dict(include_timings=False)
        second = run_campaign(spec).to_dict(include_timings=False)
        self.assertEqual(first, second)

    def test_parallel_campaign_matches_inline(self):
        """Test that a process pool gives the same report"""
        spec = CampaignSpec(q=3, t=1, n=2000, sketch_mode='raw', messages=3, bursts='sample:5', seed=2)
        inline = run_campaign(spec).to_dict(include_timings=False)
        parallel = run_campaign(replace(spec, workers=2))
        data = parallel.to_dict(include_timings=False)
        self.assertEqual(data['failures'], inline['failures'])
        self.assertEqual(data['cases'], inline['cases'])
        self.assertEqual(data['trials'], inline['trials'])

    def test_corrupted_decoder_fails_with_stages(self):
        """Test fault injection: a flipped sketch digit breaks body recovery"""
        spec = CampaignSpec(q=3, t=1, n=841, messages=1, bursts='sample:10', seed=1)
        report = run_campaign(spec, decoder=corrupted_decode)
        self.assertFalse(report.passed)
        for failure in report.failures:
            # only bursts routed through the sketch can fail
            self.assertLessEqual(failure.position, 842)
            self.assertIn(failure.stage, ('sketch', 'locate', 'window', 'dense', 'compare'))

    def test_json_report(self):
        """Test the field order and contents of the JSON report"""
        report = run_campaign(CampaignSpec(q=3, t=1, n=841, messages=0))
        data = json.loads(report.to_json())
        self.assertEqual(list(data)[:4], ['suite', 'passed', 'trials', 'failure_count'])
        self.assertIn('timings', data)
        self.assertEqual(data['params']['delta'], 280)
        self.assertEqual(data['redundancy']['r'], report.params['r'])


class SuiteTest(SimpleTestCase):
    """Tests for the non-codec suites"""

    def test_locator_suite(self):
        """Test sampled bursts on dense encoder outputs"""
        spec = CampaignSpec(q=3, t=1, n=841, suite='locator', messages=1, message_source='pattern_free',
                            bursts='sample:40', seed=3)
        report = run_campaign(spec)
        self.assertEqual(report.trials, 40)
        self.assertTrue(report.passed, msg=report.to_json())

    def test_dense_suite(self):
        """Test dense round trips on pattern-free messages"""
        spec = CampaignSpec(q=3, t=1, n=841, suite='dense', messages=4, message_source='pattern_free')
        report = run_campaign(spec)
        self.assertEqual(report.trials, 4)
        self.assertTrue(report.passed, msg=report.to_json())

    def test_separation_suite(self):
        """Test separating primes on random windows of 16"""
        spec = CampaignSpec(q=3, t=1, n=841, suite='separation', messages=3, window=16, seed=9)
        report = run_campaign(spec)
        self.assertEqual(report.trials, 3)
        self.assertTrue(report.passed, msg=report.to_json())

    def test_tenengolts_suite(self):
        """Test exhaustive single-deletion decoding up to length 5"""
        spec = CampaignSpec(q=3, t=1, n=841, suite='tenengolts', window=5)
        report = run_campaign(spec)
        self.assertEqual(report.trials, sum(3 ** k * k for k in range(2, 6)))
        self.assertTrue(report.passed)
