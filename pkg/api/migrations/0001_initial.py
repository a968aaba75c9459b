# Generated migration for CampaignRun model

from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='CampaignRun',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('suite', models.CharField(
                    choices=[
                        ('codec', 'Codec'),
                        ('locator', 'Locator'),
                        ('separation', 'Separation'),
                        ('dense', 'Dense encoding'),
                        ('tenengolts', 'Tenengolts'),
                    ],
                    default='codec',
                    max_length=16
                )),
                ('q', models.PositiveIntegerField()),
                ('t', models.PositiveIntegerField()),
                ('n', models.PositiveIntegerField()),
                ('mode', models.CharField(default='compact', max_length=16)),
                ('sketch_mode', models.CharField(default='compressed', max_length=16)),
                ('seed', models.BigIntegerField(default=0)),
                ('trials', models.PositiveIntegerField(default=0)),
                ('failure_count', models.PositiveIntegerField(default=0)),
                ('passed', models.BooleanField(default=True)),
                ('report', models.JSONField(default=dict)),
                ('created_at', models.DateTimeField(auto_now_add=True)),
            ],
            options={
                'db_table': 'campaign_runs',
                'ordering': ['-created_at', '-id'],
            },
        ),
    ]
