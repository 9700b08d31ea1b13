from rest_framework import serializers

from equideg.serializers import ExactFloatField, StrictSerializer


class BesselZeroSerializer(serializers.Serializer):
    """
    One (m, n, j_{m,n}, s_{m,n}) record of the zero table
    """
    m = serializers.IntegerField(min_value=0)
    n = serializers.IntegerField(min_value=1)
    zero = serializers.FloatField()
    eigenvalue = serializers.FloatField()


class ZeroQuerySerializer(StrictSerializer):
    m = serializers.IntegerField(min_value=0)
    n = serializers.IntegerField(min_value=1)


class BelowQuerySerializer(StrictSerializer):
    m = serializers.IntegerField(min_value=0, required=False)
    bound = ExactFloatField()
