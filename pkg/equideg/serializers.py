from collections.abc import Mapping

from rest_framework import serializers


class StrictSerializer(serializers.Serializer):
    """
    Serializer that rejects fields it does not declare, nested ones included
    """

    def to_internal_value(self, data):
        if isinstance(data, Mapping):
            unknown = sorted(set(data) - set(self.fields))
            if unknown:
                raise serializers.ValidationError(
                    {field: ['Unknown field.'] for field in unknown}
                )
        return super().to_internal_value(data)


class ExactFloatField(serializers.FloatField):
    """FloatField that rejects NaN and infinities"""

    def to_internal_value(self, data):
        value = super().to_internal_value(data)
        if value != value or value in (float('inf'), float('-inf')):
            raise serializers.ValidationError('A finite number is required.')
        return value


class IntervalField(serializers.ListField):
    """Closed interval written as [lo, hi]"""
    child = ExactFloatField()

    def __init__(self, **kwargs):
        kwargs.setdefault('min_length', 2)
        kwargs.setdefault('max_length', 2)
        super().__init__(**kwargs)

    def to_internal_value(self, data):
        lo, hi = super().to_internal_value(data)
        if lo > hi:
            raise serializers.ValidationError('Interval must satisfy lo <= hi.')
        return (lo, hi)


SCHEMA_VERSION = 1


class SchemaVersionField(serializers.IntegerField):
    """The "schema" field of every input and report; only version 1 exists"""

    def __init__(self, **kwargs):
        kwargs.setdefault('default', SCHEMA_VERSION)
        kwargs.setdefault('min_value', SCHEMA_VERSION)
        kwargs.setdefault('max_value', SCHEMA_VERSION)
        super().__init__(**kwargs)


class ReportSerializer(serializers.BaseSerializer):
    """Render any report object exposing ``as_dict()``, stamped with the schema version"""

    def to_representation(self, instance):
        return {'schema': SCHEMA_VERSION, **instance.as_dict()}
