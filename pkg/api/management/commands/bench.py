"""
Management command that tabulates redundancy over a range of lengths and times the codec.
"""
import json
import time

import numpy as np
from django.core.management.base import BaseCommand, CommandError

from burstcode.codec import decode, encode
from burstcode.core import Word, delete_burst
from burstcode.exceptions import BurstCodeError, InfeasibleParametersError
from burstcode.params import redundancy_profile, require_intervals, slack_summary

from ._options import add_params_arguments, params_from_options


class Command(BaseCommand):
    help = 'Prints redundancy against n and times encode/decode at --n'

    def add_arguments(self, parser):
        add_params_arguments(parser)
        parser.add_argument('--ns', type=int, nargs='*',
                            help='Lengths for the redundancy table (default: powers of q up to n)')
        parser.add_argument('--messages', type=int, default=3, help='Messages to time')
        parser.add_argument('--seed', type=int, default=0)

    def handle(self, *args, **options):
        params = params_from_options(options)
        ns = options['ns'] or [params.q ** k for k in range(2, 40) if params.q ** k <= params.n]
        rows = redundancy_profile(params.q, params.t, ns, mode=params.mode,
                                  sketch_mode=params.sketch_mode)
        for row in rows:
            self.stdout.write(json.dumps(row))
        summary = slack_summary(rows)
        self.stdout.write(json.dumps({'slack': summary}))
        if not summary['non_increasing']:
            self.stdout.write(self.style.WARNING(
                f"Slack is not non-increasing over the grid; spread {summary['spread']:.2f} bits"
            ))

        if options['messages'] > 0:
            try:
                require_intervals(params)
            except InfeasibleParametersError as e:
                raise CommandError(f"Cannot time the codec: {e}", returncode=1) from e

        rng = np.random.default_rng(options['seed'])
        encode_seconds = decode_seconds = 0.0
        for _ in range(options['messages']):
            u = Word.of(rng.integers(0, params.q, size=params.n - 1), params.q)
            started = time.perf_counter()
            z = encode(u, params)
            encode_seconds += time.perf_counter() - started
            start = int(rng.integers(1, len(z) - params.t + 2))
            started = time.perf_counter()
            try:
                decode(delete_burst(z, start, params.t), params)
            except BurstCodeError as e:
                raise CommandError(f"Decode failed at burst start {start}: {e}", returncode=3) from e
            decode_seconds += time.perf_counter() - started

        count = max(options['messages'], 1)
        self.stdout.write(self.style.SUCCESS(
            f"n={params.n} r={params.r}: encode {encode_seconds / count:.3f}s, "
            f"decode {decode_seconds / count:.3f}s per message"
        ))
