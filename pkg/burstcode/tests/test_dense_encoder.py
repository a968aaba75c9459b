from unittest.mock import patch

import numpy as np
from django.test import SimpleTestCase

from burstcode.core import Word, to_digits
from burstcode.dense_encoder import dec_den, enc_den
from burstcode.exceptions import MalformedBlockError, OutOfRangeError
from burstcode.harness import random_pattern_free_word
from burstcode.params import derive_params, smallest_codec_length
from burstcode.pattern import is_dense


class DenseEncoderTest(SimpleTestCase):
    """Tests for the one-symbol dense encoder and its inverse"""

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.params = derive_params(3, 1, 841)

    def test_dense_message_gets_flag_only(self):
        """Test that an already dense message only gains the trailing 1"""
        u = Word.of([0, 1] * 420, 3)
        x = enc_den(u, self.params)
        self.assertEqual(x, u + Word((1,), 3))
        self.assertEqual(dec_den(x, self.params), u)

    def test_constant_message(self):
        """Test a message with no occurrence at all"""
        u = Word((2,) * 840, 3)
        x = enc_den(u, self.params)
        self.assertEqual(len(x), self.params.n)
        self.assertEqual(x.symbols[-1], 0)
        self.assertTrue(is_dense(x, self.params))
        self.assertEqual(dec_den(x, self.params), u)

    def test_short_gap_at_the_end(self):
        """Test a pattern-free tail that runs into the block chain"""
        u = Word.of([0, 1] * 250 + [2] * 340, 3)
        x = enc_den(u, self.params)
        self.assertTrue(is_dense(x, self.params))
        self.assertEqual(dec_den(x, self.params), u)

    def test_random_messages(self):
        """Test length, density and round trip on seeded random messages"""
        rng = np.random.default_rng(5)
        for _ in range(10):
            # long zero-free stretches force replacements
            u = Word.of(rng.choice([0, 1, 2, 2, 2, 2], size=840), 3)
            x = enc_den(u, self.params)
            self.assertEqual(len(x), self.params.n)
            self.assertTrue(is_dense(x, self.params))
            self.assertEqual(dec_den(x, self.params), u)

    def test_wrong_length(self):
        """Test that messages need n - 1 symbols and dense words n"""
        with self.assertRaises(OutOfRangeError):
            enc_den(Word((0,) * 10, 3), self.params)
        with self.assertRaises(OutOfRangeError):
            dec_den(Word((1,) * 10, 3), self.params)

    def test_all_zero_word_is_malformed(self):
        """Test that a trailing 0 without a block is refused"""
        with self.assertRaises(MalformedBlockError):
            dec_den(Word((0,) * 841, 3), self.params)

    def test_missing_anchor(self):
        """Test a block shape without the p,p anchor"""
        with self.assertRaises(MalformedBlockError):
            dec_den(Word((2,) * 839 + (1, 0), 3), self.params)

    @patch('burstcode.dense_encoder.g_decompress')
    def test_block_that_restores_itself(self, mock_decompress):
        """Test that a block whose window rebuilds the same word stops after the round limit"""
        params = self.params
        prefix = params.n - params.delta
        block = (
            (0, 1, 0, 1)
            + to_digits(prefix + 1, params.i_field_len, 3)
            + (0,) * params.g_image_len
            + (0, 1, 1, 0)
        )
        self.assertEqual(len(block), params.delta)
        mock_decompress.return_value = Word(block, 3)
        with self.assertRaises(MalformedBlockError):
            dec_den(Word((2,) * prefix + block, 3), params)
        max_rounds = -(-params.n // (params.delta - 1))
        self.assertEqual(mock_decompress.call_count, max_rounds)


class DenseEncoderT2Test(SimpleTestCase):
    """Tests for the dense encoder with bursts of up to two deletions"""

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.params = derive_params(3, 2, 9000)

    def test_round_trip(self):
        """Test density and round trip for messages with and without occurrences"""
        rng = np.random.default_rng(11)
        messages = [
            Word((2,) * 8999, 3),
            random_pattern_free_word(rng, 8999, 3, 2),
            Word.of(rng.integers(0, 3, size=8999), 3),
        ]
        for u in messages:
            x = enc_den(u, self.params)
            self.assertEqual(len(x), self.params.n)
            self.assertTrue(is_dense(x, self.params))
            self.assertEqual(dec_den(x, self.params), u)


class DenseEncoderQ4Test(SimpleTestCase):
    """Tests for the dense encoder over a four-letter alphabet"""

    def test_round_trip(self):
        """Test density and round trip on q = 4 messages"""
        params = smallest_codec_length(4, 1, 'raw')
        rng = np.random.default_rng(13)
        for _ in range(5):
            # symbols 2 and 3 dominate so long windows miss the pattern
            u = Word.of(rng.choice([0, 1, 2, 3, 3, 2, 3, 2], size=params.n - 1), 4)
            x = enc_den(u, params)
            self.assertEqual(len(x), params.n)
            self.assertTrue(is_dense(x, params))
            self.assertEqual(dec_den(x, params), u)
