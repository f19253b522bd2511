import logging

from rest_framework import status
from rest_framework.decorators import api_view, permission_classes
from rest_framework.permissions import AllowAny
from rest_framework.response import Response

from symbolic.exceptions import NonHomogeneousIdealError, RetryBudgetExceeded
from symbolic.liestab import affine_stabilizer_lie_algebra, cartan_decomposition, stabilizer_lie_algebra
from symbolic.serializers import (
    IdealSubmissionSerializer,
    LieAlgebraReportSerializer,
    ToricVerdictSerializer,
)
from symbolic.toric import ToricOptions, decide

logger = logging.getLogger(__name__)


@api_view(["POST"])
@permission_classes([AllowAny])
def check_toric(request):
    """Decide toricity of a submitted ideal file"""
    serializer = IdealSubmissionSerializer(data=request.data)
    if not serializer.is_valid():
        return Response(serializer.errors, status=status.HTTP_400_BAD_REQUEST)

    data = serializer.validated_data
    options = ToricOptions(
        seed=data.get("seed"),
        max_retries=data.get("max_retries"),
        assume_prime=data["assume_prime"],
    )
    try:
        verdict = decide(data["ideal"].to_ideal(), options, affine=data["affine"])
        logger.info(f"[TORIC-API] {verdict.status.value} in {data['ideal'].ring}")
        return Response(ToricVerdictSerializer(verdict).data, status=status.HTTP_200_OK)

    except NonHomogeneousIdealError as e:
        return Response({"ideal": [str(e)]}, status=status.HTTP_400_BAD_REQUEST)

    except Exception as e:
        logger.error(f"[TORIC-API-ERROR] {str(e)}", exc_info=True)
        return Response(
            {"error": "Failed to decide toricity"},
            status=status.HTTP_500_INTERNAL_SERVER_ERROR,
        )


@api_view(["POST"])
@permission_classes([AllowAny])
def lie_algebra(request):
    """Stabilizer Lie algebra and maximal torus data of a submitted ideal"""
    serializer = IdealSubmissionSerializer(data=request.data)
    if not serializer.is_valid():
        return Response(serializer.errors, status=status.HTTP_400_BAD_REQUEST)

    data = serializer.validated_data
    try:
        ideal = data["ideal"].to_ideal()
        if data["affine"]:
            algebra = affine_stabilizer_lie_algebra(ideal)
        else:
            algebra = stabilizer_lie_algebra(ideal)
        decomposition = cartan_decomposition(
            algebra, seed=data.get("seed"), max_retries=data.get("max_retries")
        )
        report = {"algebra": algebra, "decomposition": decomposition}
        return Response(LieAlgebraReportSerializer(report).data, status=status.HTTP_200_OK)

    except NonHomogeneousIdealError as e:
        return Response({"ideal": [str(e)]}, status=status.HTTP_400_BAD_REQUEST)

    except RetryBudgetExceeded as e:
        logger.warning(f"[LIE-API] {str(e)}")
        return Response({"error": str(e)}, status=status.HTTP_422_UNPROCESSABLE_ENTITY)

    except Exception as e:
        logger.error(f"[LIE-API-ERROR] {str(e)}", exc_info=True)
        return Response(
            {"error": "Failed to compute the stabilizer algebra"},
            status=status.HTTP_500_INTERNAL_SERVER_ERROR,
        )
