from rest_framework import serializers

from graphical.models import ScreeningRecord


class ScreeningRecordSerializer(serializers.ModelSerializer):
    """Serializer for ScreeningRecord model"""

    complexity = serializers.IntegerField(read_only=True, allow_null=True)

    class Meta:
        model = ScreeningRecord
        fields = [
            "id",
            "graph_label",
            "vertex_count",
            "edges",
            "saturated",
            "seed",
            "dim_ci",
            "dim_model",
            "lie_dim",
            "cartan_dim",
            "toral_dim",
            "nilpotent_dim",
            "complexity",
            "status",
            "is_toric",
            "diagnostics",
            "created_at",
        ]
        read_only_fields = fields
