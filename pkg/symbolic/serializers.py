from rest_framework import serializers

from symbolic.exactnum import format_scalar
from symbolic.exceptions import IdealFileError
from symbolic.utils.ideal_file import IdealFile


def matrix_payload(matrix):
    if matrix is None:
        return None
    return [[format_scalar(x) for x in matrix.row(i)] for i in range(matrix.rows)]


class ToricVerdictSerializer(serializers.Serializer):
    """Read-only serialization of a ``ToricVerdict``; field names are fixed."""

    status = serializers.SerializerMethodField()
    torus_dim = serializers.IntegerField(read_only=True)
    variety_dim = serializers.IntegerField(read_only=True)
    complexity = serializers.IntegerField(read_only=True)
    transform = serializers.SerializerMethodField()
    affine_part = serializers.SerializerMethodField()
    diagnostics = serializers.ListField(child=serializers.CharField(), read_only=True)
    lie_dim = serializers.IntegerField(read_only=True)
    cartan_dim = serializers.IntegerField(read_only=True)
    toral_dim = serializers.IntegerField(read_only=True)
    nilpotent_dim = serializers.IntegerField(read_only=True)
    unital_excluded = serializers.BooleanField(read_only=True, allow_null=True)
    witness = serializers.CharField(read_only=True, allow_null=True)
    towers = serializers.ListField(child=serializers.CharField(), read_only=True)

    def get_status(self, verdict):
        return verdict.status.value if verdict.status else None

    def get_transform(self, verdict):
        return matrix_payload(verdict.transform)

    def get_affine_part(self, verdict):
        if verdict.affine_part is None:
            return None
        return {
            "translation": [format_scalar(x) for x in verdict.affine_part.translation],
            "linear": matrix_payload(verdict.affine_part.linear),
        }


class IdealSubmissionSerializer(serializers.Serializer):
    ideal = serializers.CharField(trim_whitespace=False)
    affine = serializers.BooleanField(default=False)
    assume_prime = serializers.BooleanField(default=False)
    seed = serializers.IntegerField(required=False, allow_null=True, min_value=0)
    max_retries = serializers.IntegerField(required=False, allow_null=True, min_value=1)

    def validate_ideal(self, value):
        """Parse the ideal file text; the validated value is an ``IdealFile``."""
        try:
            return IdealFile.parse(value)
        except IdealFileError as exc:
            raise serializers.ValidationError(str(exc))


class LieAlgebraReportSerializer(serializers.Serializer):
    """Stabilizer algebra with its Cartan data."""

    dim_g = serializers.SerializerMethodField()
    basis = serializers.SerializerMethodField()
    cartan_dim = serializers.SerializerMethodField()
    toral_dim = serializers.SerializerMethodField()
    nilpotent_dim = serializers.SerializerMethodField()

    def get_dim_g(self, report):
        return report["algebra"].dim

    def get_basis(self, report):
        return [matrix_payload(member) for member in report["algebra"].basis]

    def get_cartan_dim(self, report):
        return report["decomposition"].cartan_dim

    def get_toral_dim(self, report):
        return report["decomposition"].toral_dim

    def get_nilpotent_dim(self, report):
        return report["decomposition"].nilpotent_dim
