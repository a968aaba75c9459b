"""
Flags and helpers shared by the burst-code management commands.
"""
import sys
from contextlib import contextmanager

from django.conf import settings
from django.core.management.base import CommandError

from burstcode.exceptions import BurstCodeError
from burstcode.params import MODES, SKETCH_MODES, derive_params, params_from_text


def add_params_arguments(parser):
    """Add --q --t --n --mode --sketch-mode --params; defaults come from BURST_CODE."""
    defaults = settings.BURST_CODE
    parser.add_argument('--q', type=int, default=defaults['Q'], help='Alphabet size')
    parser.add_argument('--t', type=int, default=defaults['T'], help='Maximum burst length')
    parser.add_argument('--n', type=int, default=defaults['N'], help='Dense body length')
    parser.add_argument('--mode', choices=MODES, default=defaults['MODE'])
    parser.add_argument('--sketch-mode', choices=SKETCH_MODES, default=defaults['SKETCH_MODE'])
    parser.add_argument(
        '--params',
        help='Path to a key=value block written by the params command; overrides the other flags'
    )


def params_from_options(options):
    """
    Build Params from parsed command options.

    Raises:
        CommandError: With exit status 1 if the parameters are infeasible
    """
    try:
        if options.get('params'):
            with open(options['params']) as handle:
                return params_from_text(handle.read())
        return derive_params(
            options['q'], options['t'], options['n'],
            mode=options['mode'],
            sketch_mode=options['sketch_mode'],
            permissive=options['q'] == 2
        )
    except OSError as e:
        raise CommandError(f"Cannot read params file: {e}", returncode=1) from e
    except BurstCodeError as e:
        raise CommandError(f"Invalid parameters: {e}", returncode=1) from e


@contextmanager
def open_input(path):
    if path in (None, '-'):
        yield sys.stdin
        return
    try:
        handle = open(path)
    except OSError as e:
        raise CommandError(f"Cannot read {path}: {e}", returncode=1) from e
    with handle:
        yield handle


@contextmanager
def open_output(path, stdout):
    if path in (None, '-'):
        yield stdout
        return
    with open(path, 'w') as handle:
        yield handle
