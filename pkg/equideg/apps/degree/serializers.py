from rest_framework import serializers

from equideg.apps.spectral.serializers import MatrixSerializer, SpectrumEntrySerializer, matrix_rows, parse_spectrum
from equideg.apps.spectral.spectrum import real_spectrum
from equideg.serializers import ExactFloatField, SchemaVersionField, StrictSerializer


class ToleranceMixin(serializers.Serializer):
    """Optional numeric overrides shared by the existence and bifurcation inputs"""
    tol = ExactFloatField(min_value=0, required=False)
    guard = ExactFloatField(min_value=0, required=False)
    assert_hypotheses = serializers.BooleanField(default=False)

    def validate_tol(self, value):
        if not value > 0:
            raise serializers.ValidationError('Must be positive.')
        return value

    validate_guard = validate_tol


class ExistenceInputSerializer(ToleranceMixin, StrictSerializer):
    """
    Existence job input: an explicit spectrum or a matrix, not both

      {"schema": 1, "spectrum": [{"mu": 15, "mult": 1}]}
      {"schema": 1, "matrix": {"n": 1, "rows": [[15]]}}
    """
    schema = SchemaVersionField()
    spectrum = SpectrumEntrySerializer(many=True, required=False)
    matrix = MatrixSerializer(required=False)

    def validate(self, attrs):
        if ('spectrum' in attrs) == ('matrix' in attrs):
            raise serializers.ValidationError('Provide exactly one of "spectrum" or "matrix".')
        return attrs

    def create(self, validated_data):
        """Return the spectrum to analyse."""
        if 'spectrum' in validated_data:
            return parse_spectrum(validated_data['spectrum'])
        return real_spectrum(matrix_rows(validated_data['matrix']), validated_data.get('tol'))
