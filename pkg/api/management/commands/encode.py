"""
Management command that encodes messages, one word per line.
"""
import logging

from django.core.management.base import BaseCommand, CommandError

from burstcode.codec import encode
from burstcode.core import read_words, write_words
from burstcode.exceptions import BurstCodeError

from ._options import add_params_arguments, open_input, open_output, params_from_options

logger = logging.getLogger(__name__)


class Command(BaseCommand):
    help = 'Encodes messages of n - 1 symbols read one per line (space-separated symbols)'

    def add_arguments(self, parser):
        add_params_arguments(parser)
        parser.add_argument('--input', default='-', help='Message file, - for stdin')
        parser.add_argument('--output', default='-', help='Codeword file, - for stdout')

    def handle(self, *args, **options):
        params = params_from_options(options)
        with open_input(options['input']) as stream:
            try:
                messages = read_words(stream, params.q)
            except BurstCodeError as e:
                raise CommandError(f"Malformed message: {e}", returncode=1) from e

        codewords = []
        for index, u in enumerate(messages, start=1):
            try:
                codewords.append(encode(u, params))
            except BurstCodeError as e:
                raise CommandError(f"Message {index} cannot be encoded: {e}", returncode=1) from e

        with open_output(options['output'], self.stdout) as out:
            write_words(out, codewords)
        logger.info(f"Encoded {len(codewords)} messages with n={params.n}")
