from django.conf import settings
from rest_framework import serializers

from burstcode.harness import SUITES
from burstcode.params import MODES, SKETCH_MODES

from .models import CampaignRun


def _defaults():
    return settings.BURST_CODE


class ParamsSerializer(serializers.Serializer):
    """
    Serializer for a code instance (q, t, n, mode, sketch mode).

    Missing fields fall back to the BURST_CODE settings; n is capped by
    API_MAX_N so a request cannot ask for an arbitrarily long code.
    """
    q = serializers.IntegerField(
        required=False,
        min_value=2,
        help_text="Alphabet size"
    )
    t = serializers.IntegerField(
        required=False,
        min_value=1,
        help_text="Maximum burst length"
    )
    n = serializers.IntegerField(
        required=False,
        min_value=2,
        help_text="Dense body length; messages have n - 1 symbols"
    )
    mode = serializers.ChoiceField(
        choices=list(MODES),
        required=False,
        help_text="compact or paper parameter derivation"
    )
    sketch_mode = serializers.ChoiceField(
        choices=list(SKETCH_MODES),
        required=False,
        help_text="compressed or raw window sketches"
    )

    def validate(self, attrs):
        """Fill defaults from settings and bound n."""
        defaults = _defaults()
        attrs.setdefault('q', defaults['Q'])
        attrs.setdefault('t', defaults['T'])
        attrs.setdefault('n', defaults['N'])
        attrs.setdefault('mode', defaults['MODE'])
        attrs.setdefault('sketch_mode', defaults['SKETCH_MODE'])
        if attrs['n'] > defaults['API_MAX_N']:
            raise serializers.ValidationError(
                {'n': f"n may not exceed {defaults['API_MAX_N']} on this endpoint"}
            )
        return attrs


class SymbolsField(serializers.ListField):
    child = serializers.IntegerField(min_value=0)


class EncodeSerializer(ParamsSerializer):
    """Serializer for encode requests: params plus the message symbols."""
    message = SymbolsField(
        required=True,
        allow_empty=False,
        help_text="Message of n - 1 symbols in [0, q - 1]"
    )


class DecodeSerializer(ParamsSerializer):
    """Serializer for decode requests: params plus the received word."""
    received = SymbolsField(
        required=True,
        allow_empty=False,
        help_text="Received word after at most one burst of up to t deletions"
    )


class CampaignRequestSerializer(ParamsSerializer):
    """
    Serializer for a bounded campaign run over HTTP.

    Message count is capped by API_MAX_CAMPAIGN_MESSAGES; bursts default to
    a small sample so the request finishes quickly.
    """
    suite = serializers.ChoiceField(
        choices=list(SUITES),
        required=False,
        default='codec'
    )
    seed = serializers.IntegerField(
        required=False,
        min_value=0
    )
    messages = serializers.IntegerField(
        required=False,
        default=1,
        min_value=0
    )
    bursts = serializers.RegexField(
        r'^(exhaustive|sample:\d+)$',
        required=False,
        default='sample:20',
        help_text="exhaustive or sample:<k>"
    )
    window = serializers.IntegerField(
        required=False,
        min_value=2,
        max_value=32
    )

    def validate_messages(self, value):
        limit = _defaults()['API_MAX_CAMPAIGN_MESSAGES']
        if value > limit:
            raise serializers.ValidationError(f"At most {limit} messages per request")
        return value

    def validate(self, attrs):
        attrs = super().validate(attrs)
        attrs.setdefault('seed', _defaults()['SEED'])
        if attrs['suite'] == 'tenengolts' and attrs.get('window', 8) > 8:
            raise serializers.ValidationError({'window': "Tenengolts sweeps are limited to length 8"})
        return attrs


class CampaignRunSerializer(serializers.ModelSerializer):
    class Meta:
        model = CampaignRun
        fields = [
            'id', 'suite', 'q', 't', 'n', 'mode', 'sketch_mode', 'seed',
            'trials', 'failure_count', 'passed', 'created_at',
        ]


class CampaignRunDetailSerializer(CampaignRunSerializer):
    class Meta(CampaignRunSerializer.Meta):
        fields = CampaignRunSerializer.Meta.fields + ['report']
