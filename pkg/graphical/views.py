import logging

from rest_framework import status
from rest_framework.decorators import api_view, permission_classes
from rest_framework.pagination import PageNumberPagination
from rest_framework.permissions import AllowAny
from rest_framework.response import Response

from graphical.models import ScreeningRecord
from graphical.serializers import ScreeningRecordSerializer

logger = logging.getLogger(__name__)


@api_view(["GET"])
@permission_classes([AllowAny])
def screening_list(request):
    """Persisted screening rows, newest first; filter with ?graph= and ?toric="""
    try:
        records = ScreeningRecord.objects.all()
        graph = request.query_params.get("graph")
        if graph:
            records = records.filter(graph_label=graph)
        toric = request.query_params.get("toric")
        if toric in ("true", "false"):
            records = records.filter(is_toric=toric == "true")

        paginator = PageNumberPagination()
        page = paginator.paginate_queryset(records, request)
        serializer = ScreeningRecordSerializer(page, many=True)
        return paginator.get_paginated_response(serializer.data)

    except Exception as e:
        logger.error(f"[SCREENINGS-ERROR] {str(e)}", exc_info=True)
        return Response(
            {"error": "Failed to list screenings"},
            status=status.HTTP_500_INTERNAL_SERVER_ERROR,
        )
