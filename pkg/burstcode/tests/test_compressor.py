from itertools import product

import numpy as np
from django.test import SimpleTestCase

from burstcode.compressor import block_rank, block_unrank, g_compress, g_decompress
from burstcode.core import Word, from_digits, mixed_radix_pack, mixed_radix_unpack
from burstcode.exceptions import OutOfRangeError, PatternFoundError
from burstcode.harness import random_pattern_free_word
from burstcode.params import build_params, derive_params


def w(text, q=3):
    return Word(tuple(int(c) for c in text), q)


class BlockRankTest(SimpleTestCase):
    """Tests for ranking 2t-blocks with the pattern removed"""

    def setUp(self):
        self.params = build_params(3, 1, 20, 4)

    def test_examples(self):
        """Test ranks of blocks before and after the pattern"""
        self.assertEqual(block_rank(w('00'), self.params), 0)
        self.assertEqual(block_rank(w('02'), self.params), 1)
        self.assertEqual(block_rank(w('22'), self.params), 7)

    def test_pattern_has_no_rank(self):
        """Test that the pattern block is refused"""
        with self.assertRaises(PatternFoundError):
            block_rank(w('01'), self.params)

    def test_ranks_are_a_bijection(self):
        """Test that the eight non-pattern blocks get ranks 0..7 and unrank back"""
        blocks = [Word(s, 3) for s in product(range(3), repeat=2) if s != (0, 1)]
        ranks = [block_rank(b, self.params) for b in blocks]
        self.assertEqual(sorted(ranks), list(range(8)))
        for block, rank in zip(blocks, ranks):
            self.assertEqual(block_unrank(rank, self.params), block)

    def test_unrank_out_of_range(self):
        """Test that ranks stop at q^2t - 2"""
        with self.assertRaises(OutOfRangeError):
            block_unrank(8, self.params)


class CompressorTest(SimpleTestCase):
    """Tests for the pattern-free window compressor"""

    def setUp(self):
        self.toy = build_params(3, 1, 20, 4)

    def test_toy_example(self):
        """Test 0210 -> ranks (1, 2) -> 17 -> 122"""
        self.assertEqual(g_compress(w('0210'), 3, self.toy), w('122'))
        self.assertEqual(g_decompress(w('122'), self.toy, width=3), w('0210'))

    def test_zero_window(self):
        """Test that the all-zero window compresses to zero"""
        self.assertEqual(g_compress(w('0000'), 3, self.toy), w('000'))

    def test_injective_on_toy_windows(self):
        """Test that every pattern-free toy window gets its own image"""
        images = {}
        for symbols in product(range(3), repeat=4):
            window = Word(symbols, 3)
            if symbols[:2] == (0, 1) or symbols[2:] == (0, 1) or symbols[1:3] == (0, 1):
                continue
            image = g_compress(window, 4, self.toy)
            self.assertNotIn(image, images)
            images[image] = window
            self.assertEqual(g_decompress(image, self.toy, width=4), window)

    def test_rejects_pattern(self):
        """Test that a window holding the pattern across blocks is refused"""
        with self.assertRaises(PatternFoundError):
            g_compress(w('2012'), 3, self.toy)

    def test_decompress_beyond_rank_space(self):
        """Test that images above (q^2t - 1)^blocks are refused"""
        with self.assertRaises(OutOfRangeError):
            g_decompress(w('2222'), self.toy, width=4)

    def test_real_window_round_trip(self):
        """Test compact-mode windows of length delta"""
        params = derive_params(3, 1, 841)
        rng = np.random.default_rng(11)
        for _ in range(20):
            window = random_pattern_free_word(rng, params.delta, 3, 1)
            image = g_compress(window, params.g_image_len, params)
            self.assertEqual(len(image), params.g_image_len)
            self.assertEqual(g_decompress(image, params), window)

    def test_image_is_the_packed_block_ranks(self):
        """Test that the image reads back as the mixed-radix packing of the block ranks, first block lowest"""
        params = build_params(3, 2, 40, 12)
        window = w('221020021122')
        ranks = [block_rank(window.segment(k, k + 3), params) for k in (1, 5, 9)]
        image = g_compress(window, 12, params)
        self.assertEqual(from_digits(image.symbols, 3), mixed_radix_pack(ranks, [80, 80, 80]))
        self.assertEqual(mixed_radix_unpack(from_digits(image.symbols, 3), [80] * 3), ranks)
        self.assertEqual(g_decompress(image, params, width=12), window)
