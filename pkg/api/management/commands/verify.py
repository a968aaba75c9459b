"""
Management command that runs a verification campaign and reports the outcome.
"""
from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from api.models import CampaignRun
from burstcode.exceptions import BurstCodeError
from burstcode.harness import MESSAGE_SOURCES, SUITES, CampaignSpec, run_campaign
from burstcode.params import smallest_codec_length

from ._options import add_params_arguments


class Command(BaseCommand):
    help = 'Runs a seeded campaign (codec, locator, separation, dense or tenengolts) and reports failures'

    def add_arguments(self, parser):
        defaults = settings.BURST_CODE
        add_params_arguments(parser)
        parser.add_argument('--suite', choices=SUITES, default='codec')
        parser.add_argument('--smallest', action='store_true',
                            help='Ignore --n and use the smallest compact length that supports the codec')
        parser.add_argument('--seed', type=int, default=defaults['SEED'])
        parser.add_argument('--messages', type=int, default=1, help='Number of messages or windows')
        parser.add_argument('--message-source', choices=MESSAGE_SOURCES, default='random')
        parser.add_argument('--bursts', default='exhaustive', help='exhaustive or sample:<k>')
        parser.add_argument('--workers', type=int, default=defaults['WORKERS'])
        parser.add_argument('--window', type=int,
                            help='Window length (separation) or maximum word length (tenengolts)')
        parser.add_argument('--report', help='Write the JSON report to this path')
        parser.add_argument('--save', action='store_true', help='Store the report as a CampaignRun')

    def handle(self, *args, **options):
        if options.get('params'):
            raise CommandError("--params is not supported by verify; pass --q --t --n", returncode=1)
        n, mode = options['n'], options['mode']
        if options['smallest']:
            try:
                n = smallest_codec_length(options['q'], options['t'], options['sketch_mode']).n
            except BurstCodeError as e:
                raise CommandError(f"No codec length for these parameters: {e}", returncode=1) from e
            mode = 'compact'
            self.stdout.write(f"Using smallest codec length n={n}")
        spec = CampaignSpec(
            q=options['q'],
            t=options['t'],
            n=n,
            mode=mode,
            sketch_mode=options['sketch_mode'],
            seed=options['seed'],
            messages=options['messages'],
            message_source=options['message_source'],
            bursts=options['bursts'],
            suite=options['suite'],
            workers=options['workers'],
            window=options['window'],
        )
        try:
            report = run_campaign(spec)
        except BurstCodeError as e:
            raise CommandError(f"Campaign cannot run: {e}", returncode=1) from e

        if options['report']:
            with open(options['report'], 'w') as handle:
                handle.write(report.to_json())
            self.stdout.write(f"Report written to {options['report']}")
        if options['save']:
            run = CampaignRun.from_report(report)
            run.save()
            self.stdout.write(f"Stored campaign run {run.pk}")

        summary = f"{report.suite}: {report.trials} trials, {len(report.failures)} failures"
        if not report.passed:
            for failure in report.failures[:10]:
                self.stdout.write(self.style.ERROR(
                    f"message {failure.message_index} burst ({failure.position}, {failure.length}) "
                    f"stage {failure.stage}: {failure.detail}"
                ))
            raise CommandError(summary, returncode=3)
        self.stdout.write(self.style.SUCCESS(summary))
