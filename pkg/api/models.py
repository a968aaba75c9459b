from django.db import models


class CampaignRun(models.Model):
    """
    A stored verification campaign: the code instance, the outcome and the full JSON report.
    """
    SUITE_CHOICES = [
        ('codec', 'Codec'),
        ('locator', 'Locator'),
        ('separation', 'Separation'),
        ('dense', 'Dense encoding'),
        ('tenengolts', 'Tenengolts'),
    ]

    suite = models.CharField(max_length=16, choices=SUITE_CHOICES, default='codec')
    q = models.PositiveIntegerField()
    t = models.PositiveIntegerField()
    n = models.PositiveIntegerField()
    mode = models.CharField(max_length=16, default='compact')
    sketch_mode = models.CharField(max_length=16, default='compressed')
    seed = models.BigIntegerField(default=0)
    trials = models.PositiveIntegerField(default=0)
    failure_count = models.PositiveIntegerField(default=0)
    passed = models.BooleanField(default=True)
    report = models.JSONField(default=dict)
    created_at = models.DateTimeField(auto_now_add=True)

    class Meta:
        db_table = 'campaign_runs'
        ordering = ['-created_at', '-id']

    def __str__(self):
        status = 'passed' if self.passed else f"{self.failure_count} failures"
        return f"{self.suite} q={self.q} t={self.t} n={self.n} ({status})"

    @classmethod
    def from_report(cls, report):
        """Build an unsaved run from a harness CampaignReport."""
        spec = report.spec
        return cls(
            suite=report.suite,
            q=spec['q'],
            t=spec['t'],
            n=spec['n'],
            mode=spec['mode'],
            sketch_mode=spec['sketch_mode'],
            seed=spec['seed'],
            trials=report.trials,
            failure_count=len(report.failures),
            passed=report.passed,
            report=report.to_dict(),
        )
