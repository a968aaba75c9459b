"""
Management command that derives a code instance and prints its parameters.
"""
import json

from django.core.management.base import BaseCommand

from burstcode.params import redundancy_breakdown

from ._options import add_params_arguments, open_output, params_from_options


class Command(BaseCommand):
    help = 'Derives the parameters of a burst-deletion code and prints them as key=value lines'

    def add_arguments(self, parser):
        add_params_arguments(parser)
        parser.add_argument('--output', help='Write the block to this path instead of stdout')
        parser.add_argument('--redundancy', action='store_true',
                            help='Also print the redundancy breakdown as JSON')

    def handle(self, *args, **options):
        params = params_from_options(options)
        with open_output(options['output'], self.stdout) as out:
            out.write(params.to_text())
        if options['redundancy']:
            self.stdout.write(json.dumps(redundancy_breakdown(params), indent=2))
        if options['output']:
            self.stdout.write(self.style.SUCCESS(f"Wrote params to {options['output']}"))
