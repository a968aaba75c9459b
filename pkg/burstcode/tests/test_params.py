import math

from django.test import SimpleTestCase

from burstcode.exceptions import InfeasibleParametersError
from burstcode.params import (
    build_params,
    capacity_holds,
    derive_params,
    params_from_text,
    redundancy_breakdown,
    redundancy_profile,
    require_intervals,
    slack_summary,
    smallest_codec_length,
    syndrome_bound,
    window_radices,
)


class DeriveParamsTest(SimpleTestCase):
    """Tests for parameter derivation in both modes"""

    def test_compact_instance(self):
        """Test the q=3, t=1, n=6561 compact instance"""
        params = derive_params(3, 1, 6561)
        self.assertEqual(params.pattern, (0, 1))
        self.assertEqual(params.i_field_len, 9)
        self.assertEqual(params.delta, 318)
        self.assertEqual(params.rho, 3 * params.delta)
        self.assertEqual(params.window_max, 1908)
        self.assertEqual(params.interval_count, 6)
        self.assertEqual(params.g_image_len, 318 - 9 - 8)
        self.assertEqual(params.n_bar, params.alpha_max ** 2)
        self.assertEqual(params.r, params.t + 1 + params.sketch_width)

    def test_compact_delta_is_smallest(self):
        """Test that the compact scan stops at the first feasible delta"""
        params = derive_params(3, 1, 2000)
        self.assertEqual(params.delta, 280)
        self.assertTrue(capacity_holds(3, 1, 280, params.g_image_len))
        self.assertFalse(capacity_holds(3, 1, 278, 278 - params.i_field_len - 8))

    def test_paper_mode_size_condition(self):
        """Test that paper mode refuses small n and names the inequality"""
        with self.assertRaises(InfeasibleParametersError) as ctx:
            derive_params(3, 1, 8, mode='paper')
        self.assertIn('Size condition', str(ctx.exception))

    def test_compact_infeasible_for_small_n(self):
        """Test that no delta below n exists for tiny lengths"""
        with self.assertRaises(InfeasibleParametersError):
            derive_params(3, 1, 50)

    def test_rejects_bad_inputs(self):
        """Test alphabet, burst bound, length and mode validation"""
        with self.assertRaises(InfeasibleParametersError):
            derive_params(2, 1, 2000)
        with self.assertRaises(InfeasibleParametersError):
            derive_params(3, 0, 2000)
        with self.assertRaises(InfeasibleParametersError):
            derive_params(3, 1, 1)
        with self.assertRaises(InfeasibleParametersError):
            derive_params(3, 1, 2000, mode='fast')
        with self.assertRaises(InfeasibleParametersError):
            derive_params(3, 1, 2000, sketch_mode='tiny')

    def test_binary_alphabet_when_permissive(self):
        """Test that q = 2 is accepted in permissive mode"""
        params = derive_params(2, 1, 2000, permissive=True)
        self.assertEqual(params.q, 2)

    def test_deterministic(self):
        """Test that re-deriving gives identical params"""
        self.assertEqual(derive_params(3, 1, 2000), derive_params(3, 1, 2000))

    def test_text_form_rebuilds_params(self):
        """Test to_text and params_from_text"""
        params = derive_params(3, 1, 2000, sketch_mode='raw')
        text = params.to_text()
        self.assertIn('delta=280\n', text)
        self.assertEqual(params_from_text(text), params)

    def test_text_form_missing_field(self):
        """Test that incomplete text is refused"""
        with self.assertRaises(InfeasibleParametersError):
            params_from_text('q=3\nt=1\n')


class IntervalTest(SimpleTestCase):
    """Tests for the sketch interval requirement"""

    def test_requires_n_above_rho(self):
        """Test that n <= rho leaves no interval"""
        params = derive_params(3, 1, 800)
        self.assertEqual(params.interval_count, 0)
        with self.assertRaises(InfeasibleParametersError):
            require_intervals(params)

    def test_smallest_codec_length(self):
        """Test the smallest compact length with a sketch interval"""
        params = smallest_codec_length(3, 1)
        self.assertEqual(params.n, 841)
        self.assertEqual(params.delta, 280)
        self.assertEqual(params.interval_count, 1)
        require_intervals(params)


class SyndromeBoundTest(SimpleTestCase):
    """Tests for packing radices and the syndrome bit bound"""

    def test_window_radices(self):
        """Test class order and sizes for t = 2"""
        self.assertEqual(window_radices(5, 3, 2), [6, 3, 4, 3, 3, 3])

    def test_syndrome_bound(self):
        """Test R as the bit length of the largest packed value"""
        self.assertEqual(syndrome_bound(5, 3, 2), 11)
        self.assertEqual(syndrome_bound(4, 3, 1), (5 * 3 - 1).bit_length())

    def test_toy_geometry(self):
        """Test build_params for a hand-sized window"""
        params = build_params(3, 1, 20, 6)
        self.assertEqual(params.block_count, 3)
        self.assertEqual(params.rho, 18)
        self.assertEqual(params.interval_count, 1)


class RedundancyTest(SimpleTestCase):
    """Tests for the redundancy report"""

    def test_breakdown(self):
        """Test symbol and bit accounting"""
        params = derive_params(3, 1, 2000)
        report = redundancy_breakdown(params)
        self.assertEqual(report['r'], params.r)
        self.assertEqual(report['redundancy_symbols'], params.r + 1)
        self.assertAlmostEqual(report['sketch_bits'], params.sketch_width * math.log2(3))
        self.assertAlmostEqual(
            report['sketch_bits'],
            report['a0_bits'] + report['a1_bits'] + report['h0_bits'] + report['h1_bits'],
        )

    def test_profile_skips_infeasible(self):
        """Test that infeasible lengths are left out of the profile"""
        rows = redundancy_profile(3, 1, [50, 2000])
        self.assertEqual([row['n'] for row in rows], [2000])
        self.assertEqual(rows[0]['delta'], 280)

    def test_slack_stays_bounded(self):
        """Test that compressed-mode slack over n = 3^7 .. 3^12 moves within a few symbols"""
        rows = redundancy_profile(3, 1, [3 ** k for k in range(7, 13)])
        self.assertEqual(len(rows), 6)
        for row in rows:
            self.assertEqual(row['r'], 1 + 1 + row['sketch_width'])
        summary = slack_summary(rows)
        self.assertEqual(summary['lengths'], 6)
        # whole-symbol widths for a1, h0 and h1, plus slowly growing log terms
        self.assertLessEqual(summary['spread'], 4 * math.log2(3) + 4)

    def test_slack_summary(self):
        """Test the monotonicity flag on a rising grid and on an empty one"""
        rows = [{'slack_bits': 3.0}, {'slack_bits': 2.0}, {'slack_bits': 2.5}]
        summary = slack_summary(rows)
        self.assertFalse(summary['non_increasing'])
        self.assertAlmostEqual(summary['spread'], 1.0)
        self.assertTrue(slack_summary(rows[:2])['non_increasing'])
        self.assertEqual(slack_summary([])['lengths'], 0)
