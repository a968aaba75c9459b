from django.apps import AppConfig
from django.conf import settings


class ApiConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'api'

    def ready(self):
        from burstcode.sketch import configure_window_cache

        configure_window_cache(settings.BURST_CODE['WINDOW_CACHE_SIZE'])
