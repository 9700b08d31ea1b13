from rest_framework import serializers

from equideg.serializers import StrictSerializer


class ProductQuerySerializer(StrictSerializer):
    """
    Product of basic degrees over a multiset of modes, with an optional (H_m0) query
    """
    modes = serializers.ListField(child=serializers.IntegerField(min_value=1), allow_empty=True)
    coeff = serializers.IntegerField(min_value=1, required=False)


class BurnsideElementSerializer(serializers.BaseSerializer):
    """Render a BurnsideElement as {"unit", "radial", "dihedral", "untracked"}"""

    def to_representation(self, instance):
        return instance.to_dict()


class CoefficientCheckSerializer(serializers.Serializer):
    m0 = serializers.IntegerField()
    value = serializers.IntegerField()
    closed_form = serializers.IntegerField()
    agree = serializers.BooleanField()


class ProductReportSerializer(serializers.Serializer):
    modes = serializers.ListField(child=serializers.IntegerField())
    reduced = serializers.ListField(child=serializers.IntegerField())
    element = serializers.DictField()
    coeff = CoefficientCheckSerializer(required=False)
