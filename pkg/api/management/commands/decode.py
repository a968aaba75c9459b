"""
Management command that decodes received words, one word per line.

Exits with status 3 on the first word that cannot be decoded.
"""
import logging

from django.core.management.base import BaseCommand, CommandError

from burstcode.codec import decode
from burstcode.core import read_words, write_words
from burstcode.exceptions import BurstCodeError, DecodeError

from ._options import add_params_arguments, open_input, open_output, params_from_options

logger = logging.getLogger(__name__)


class Command(BaseCommand):
    help = 'Decodes words that lost at most one burst of up to t symbols'

    def add_arguments(self, parser):
        add_params_arguments(parser)
        parser.add_argument('--input', default='-', help='Received-word file, - for stdin')
        parser.add_argument('--output', default='-', help='Message file, - for stdout')

    def handle(self, *args, **options):
        params = params_from_options(options)
        with open_input(options['input']) as stream:
            try:
                received = read_words(stream, params.q)
            except BurstCodeError as e:
                raise CommandError(f"Malformed word: {e}", returncode=1) from e

        messages = []
        for index, yz in enumerate(received, start=1):
            try:
                messages.append(decode(yz, params))
            except DecodeError as e:
                logger.warning(f"Word {index} failed at stage {e.stage}: {e}")
                raise CommandError(
                    f"Word {index} could not be decoded (stage {e.stage}): {e}", returncode=3
                ) from e

        with open_output(options['output'], self.stdout) as out:
            write_words(out, messages)
