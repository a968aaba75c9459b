import logging

from django.conf import settings
from django.db import connection
from rest_framework import status
from rest_framework.decorators import api_view
from rest_framework.response import Response

from burstcode.codec import decode, encode, route
from burstcode.core import Word
from burstcode.exceptions import BurstCodeError, DecodeError
from burstcode.harness import CampaignSpec, run_campaign
from burstcode.params import derive_params, redundancy_breakdown

from .models import CampaignRun
from .serializers import (
    CampaignRequestSerializer,
    CampaignRunDetailSerializer,
    CampaignRunSerializer,
    DecodeSerializer,
    EncodeSerializer,
    ParamsSerializer,
)

logger = logging.getLogger(__name__)


def _error(code, message, details, http_status):
    return Response(
        {
            "error": {
                "code": code,
                "message": message,
                "details": details
            }
        },
        status=http_status
    )


def _validation_error(serializer, name):
    logger.warning(f"{name} validation failed: {serializer.errors}")
    return _error("VALIDATION_ERROR", "Invalid request data", serializer.errors,
                  status.HTTP_400_BAD_REQUEST)


def _internal_error(action, e):
    logger.error(f"Unexpected error during {action}: {e}", exc_info=True)
    return _error("INTERNAL_ERROR", "An unexpected error occurred", str(e),
                  status.HTTP_500_INTERNAL_SERVER_ERROR)


def _params_from(data):
    return derive_params(
        data['q'], data['t'], data['n'],
        mode=data['mode'],
        sketch_mode=data['sketch_mode']
    )


@api_view(['GET'])
def health_check(request):
    """
    Health check endpoint that verifies the database and the default code instance.

    Returns:
        200 OK: All services are healthy
        503 Service Unavailable: One or more services are unhealthy
    """
    health_status = {
        'status': 'healthy',
        'services': {}
    }
    all_healthy = True

    try:
        with connection.cursor() as cursor:
            cursor.execute("SELECT 1")
            cursor.fetchone()
        health_status['services']['database'] = {
            'status': 'healthy',
            'message': 'Database connection successful'
        }
        logger.debug("Database health check: OK")
    except Exception as e:
        health_status['services']['database'] = {
            'status': 'unhealthy',
            'message': f'Database connection failed: {str(e)}'
        }
        all_healthy = False
        logger.error(f"Database health check failed: {e}")

    config = settings.BURST_CODE
    try:
        params = derive_params(config['Q'], config['T'], config['N'],
                               mode=config['MODE'], sketch_mode=config['SKETCH_MODE'])
        health_status['services']['codec'] = {
            'status': 'healthy',
            'message': f"Default instance q={params.q} t={params.t} n={params.n} has r={params.r}"
        }
        logger.debug("Codec health check: OK")
    except BurstCodeError as e:
        health_status['services']['codec'] = {
            'status': 'unhealthy',
            'message': f'Default parameters are not usable: {str(e)}'
        }
        all_healthy = False
        logger.error(f"Codec health check failed: {e}")

    if not all_healthy:
        health_status['status'] = 'unhealthy'
        return Response(health_status, status=status.HTTP_503_SERVICE_UNAVAILABLE)

    return Response(health_status, status=status.HTTP_200_OK)


@api_view(['POST'])
def params_view(request):
    """
    Derive the parameters of a code instance.

    Request:
        POST /api/params/
        Body: {"q": 3, "t": 1, "n": 6561, "mode": "compact", "sketch_mode": "compressed"}

    Response:
        200 OK: {"params": {...}, "redundancy": {...}}
        400 Bad Request: Invalid fields or infeasible parameters
    """
    serializer = ParamsSerializer(data=request.data)
    if not serializer.is_valid():
        return _validation_error(serializer, "Params")

    try:
        params = _params_from(serializer.validated_data)
    except BurstCodeError as e:
        logger.warning(f"Infeasible parameters requested: {e}")
        return _error("INFEASIBLE_PARAMETERS", "Parameters cannot be satisfied", str(e),
                      status.HTTP_400_BAD_REQUEST)
    except Exception as e:
        return _internal_error("parameter derivation", e)

    return Response(
        {
            'params': params.to_dict(),
            'redundancy': redundancy_breakdown(params)
        },
        status=status.HTTP_200_OK
    )


@api_view(['POST'])
def encode_view(request):
    """
    Encode a message of n - 1 symbols.

    Response:
        200 OK: {"codeword": [...], "length": N}
        400 Bad Request: Invalid fields, infeasible parameters or a bad message
    """
    serializer = EncodeSerializer(data=request.data)
    if not serializer.is_valid():
        return _validation_error(serializer, "Encode")

    data = serializer.validated_data
    try:
        params = _params_from(data)
        z = encode(Word.of(data['message'], params.q), params)
    except BurstCodeError as e:
        logger.warning(f"Encode rejected: {e}")
        return _error("ENCODE_FAILED", "Message cannot be encoded", str(e),
                      status.HTTP_400_BAD_REQUEST)
    except Exception as e:
        return _internal_error("encoding", e)

    logger.info(f"Encoded {len(data['message'])} symbols into {len(z)} (q={params.q} t={params.t} n={params.n})")
    return Response({'codeword': list(z.symbols), 'length': len(z)}, status=status.HTTP_200_OK)


@api_view(['POST'])
def decode_view(request):
    """
    Decode a received word that suffered at most one burst of up to t deletions.

    Response:
        200 OK: {"message": [...], "case": "..."}
        400 Bad Request: Invalid fields or infeasible parameters
        422 Unprocessable Entity: The word could not be decoded; details name the stage
    """
    serializer = DecodeSerializer(data=request.data)
    if not serializer.is_valid():
        return _validation_error(serializer, "Decode")

    data = serializer.validated_data
    try:
        params = _params_from(data)
        yz = Word.of(data['received'], params.q)
    except BurstCodeError as e:
        logger.warning(f"Decode request rejected: {e}")
        return _error("VALIDATION_ERROR", "Invalid request data", str(e),
                      status.HTTP_400_BAD_REQUEST)

    try:
        case = route(yz, params).case
        u = decode(yz, params)
    except DecodeError as e:
        logger.warning(f"Decoding failed at stage {e.stage}: {e}")
        return _error("DECODE_FAILED", "Received word could not be decoded",
                      {'stage': e.stage, 'reason': str(e)},
                      status.HTTP_422_UNPROCESSABLE_ENTITY)
    except Exception as e:
        return _internal_error("decoding", e)

    return Response({'message': list(u.symbols), 'case': case}, status=status.HTTP_200_OK)


@api_view(['GET', 'POST'])
def campaigns(request):
    """
    List stored campaign runs, or run and store a bounded campaign.

    Response:
        GET 200 OK: {"campaigns": [...]}
        POST 201 Created: stored run with its full report
        POST 400 Bad Request: Invalid fields or infeasible parameters
    """
    if request.method == 'GET':
        runs = CampaignRun.objects.all()
        return Response({'campaigns': CampaignRunSerializer(runs, many=True).data},
                        status=status.HTTP_200_OK)

    serializer = CampaignRequestSerializer(data=request.data)
    if not serializer.is_valid():
        return _validation_error(serializer, "Campaign")

    data = serializer.validated_data
    spec = CampaignSpec(
        q=data['q'], t=data['t'], n=data['n'],
        mode=data['mode'], sketch_mode=data['sketch_mode'],
        seed=data['seed'], messages=data['messages'], bursts=data['bursts'],
        suite=data['suite'], window=data.get('window')
    )
    try:
        report = run_campaign(spec)
    except BurstCodeError as e:
        logger.warning(f"Campaign rejected: {e}")
        return _error("INFEASIBLE_PARAMETERS", "Campaign cannot be run", str(e),
                      status.HTTP_400_BAD_REQUEST)
    except Exception as e:
        return _internal_error("campaign", e)

    run = CampaignRun.from_report(report)
    run.save()
    logger.info(f"Stored campaign run {run.pk}: suite={run.suite} passed={run.passed}")
    return Response(CampaignRunDetailSerializer(run).data, status=status.HTTP_201_CREATED)


@api_view(['GET'])
def campaign_detail(request, pk):
    """Return one stored campaign run with its report."""
    try:
        run = CampaignRun.objects.get(pk=pk)
    except CampaignRun.DoesNotExist:
        return _error("NOT_FOUND", "Campaign run not found", {'id': pk},
                      status.HTTP_404_NOT_FOUND)
    return Response(CampaignRunDetailSerializer(run).data, status=status.HTTP_200_OK)
