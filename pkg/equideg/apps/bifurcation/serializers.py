from rest_framework import serializers

from equideg.apps.degree.serializers import ToleranceMixin
from equideg.apps.spectral.serializers import FamilySerializer
from equideg.serializers import ExactFloatField, IntervalField, SchemaVersionField, StrictSerializer


class BifurcationInputSerializer(ToleranceMixin, StrictSerializer):
    """
    Bifurcation job input

      {"schema": 1, "family": {...}, "range": [a, b], "grid_step": h}

    ``range`` supplies the domain of a family given without one and restricts
    any other family to [a, b].
    """
    schema = SchemaVersionField()
    family = FamilySerializer()
    range = IntervalField(required=False)
    grid_step = ExactFloatField(required=False)

    def validate_grid_step(self, value):
        if not value > 0:
            raise serializers.ValidationError('Must be positive.')
        return value

    def create(self, validated_data):
        """Return the MatrixFamily to analyse."""
        family_data = dict(validated_data['family'])
        window = validated_data.get('range')
        if window is not None and family_data['kind'] != 'table':
            family_data.setdefault('domain', window)
        family = self.fields['family'].create(family_data)
        if window is not None and family.domain != tuple(window):
            family = family.restricted(*window)
        return family

    def analysis_options(self):
        data = self.validated_data
        return {key: data[key] for key in ('grid_step', 'tol', 'guard') if key in data}
