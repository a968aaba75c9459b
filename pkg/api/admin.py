from django.contrib import admin

from .models import CampaignRun


@admin.register(CampaignRun)
class CampaignRunAdmin(admin.ModelAdmin):
    list_display = ('suite', 'q', 't', 'n', 'mode', 'sketch_mode', 'trials', 'failure_count', 'passed', 'created_at')
    list_filter = ('suite', 'passed', 'mode', 'sketch_mode')
    readonly_fields = ('report', 'created_at')
