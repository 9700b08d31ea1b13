from rest_framework import serializers

from equideg.serializers import ExactFloatField, IntervalField, StrictSerializer

from .families import AffineFamily, ConstantFamily, CurvesFamily, SpectrumCurve, TableFamily
from .spectrum import Spectrum, SpectrumEntry


class MatrixSerializer(StrictSerializer):
    """
    Square matrix written as {"n": N, "rows": [[...], ...]}
    """
    n = serializers.IntegerField(min_value=1)
    rows = serializers.ListField(child=serializers.ListField(child=ExactFloatField()))

    def validate(self, attrs):
        n, rows = attrs['n'], attrs['rows']
        if len(rows) != n or any(len(row) != n for row in rows):
            raise serializers.ValidationError({'rows': [f'Expected {n} rows of length {n}.']})
        return attrs

    def to_representation(self, instance):
        rows = [[float(x) for x in row] for row in instance]
        return {'n': len(rows), 'rows': rows}


class SpectrumEntrySerializer(StrictSerializer):
    mu = ExactFloatField()
    mult = serializers.IntegerField(min_value=1, source='geom_mult')


class SpectrumSerializer(serializers.Serializer):
    """
    Read-only rendering of a Spectrum with its complex-pair count
    """
    entries = SpectrumEntrySerializer(many=True)
    complex_pairs = serializers.IntegerField()


def parse_spectrum(items):
    """Build a Spectrum from validated SpectrumEntrySerializer data."""
    return Spectrum(tuple(SpectrumEntry(item['mu'], item['geom_mult']) for item in items))


def matrix_rows(data):
    return data['rows']


class TableSampleSerializer(StrictSerializer):
    alpha = ExactFloatField()
    matrix = MatrixSerializer()


class CurveSerializer(StrictSerializer):
    mult = serializers.IntegerField(min_value=1, default=1)
    points = serializers.ListField(
        child=serializers.ListField(child=ExactFloatField(), min_length=2, max_length=2),
        min_length=1,
    )

    def validate_points(self, value):
        alphas = [alpha for alpha, _ in value]
        if any(b <= a for a, b in zip(alphas, alphas[1:])):
            raise serializers.ValidationError('Curve alpha values must be strictly increasing.')
        return value


class FamilySerializer(StrictSerializer):
    """
    Matrix family input:

      {"kind": "constant", "matrix": M, "domain": [lo, hi]}
      {"kind": "affine", "a0": M, "a1": M, "domain": [lo, hi]}
      {"kind": "table", "samples": [{"alpha": a, "matrix": M}, ...]}
      {"kind": "curves", "curves": [{"mult": k, "points": [[a, mu], ...]}], "domain": [lo, hi]}

    ``domain`` may be omitted when the caller supplies one to ``save(domain=...)``.
    """
    KIND_FIELDS = {
        'constant': {'matrix'},
        'affine': {'a0', 'a1'},
        'table': {'samples'},
        'curves': {'curves'},
    }

    kind = serializers.ChoiceField(choices=sorted(KIND_FIELDS))
    domain = IntervalField(required=False)
    matrix = MatrixSerializer(required=False)
    a0 = MatrixSerializer(required=False)
    a1 = MatrixSerializer(required=False)
    samples = TableSampleSerializer(many=True, required=False)
    curves = CurveSerializer(many=True, required=False)

    def validate(self, attrs):
        kind = attrs['kind']
        required = self.KIND_FIELDS[kind]
        payload = set(attrs) - {'kind', 'domain'}
        missing = sorted(required - payload)
        if missing:
            raise serializers.ValidationError({field: [f'Required for kind "{kind}".'] for field in missing})
        extra = sorted(payload - required)
        if extra:
            raise serializers.ValidationError({field: [f'Not allowed for kind "{kind}".'] for field in extra})
        if kind == 'table' and len(attrs['samples']) < 2:
            raise serializers.ValidationError({'samples': ['At least two samples are required.']})
        if kind == 'table' and 'domain' in attrs:
            raise serializers.ValidationError({'domain': ['A sampled family takes its domain from the samples.']})
        if kind == 'affine' and attrs['a0']['n'] != attrs['a1']['n']:
            raise serializers.ValidationError({'a1': ['Must have the same size as a0.']})
        return attrs

    def create(self, validated_data):
        kind = validated_data['kind']
        if kind == 'table':
            return TableFamily((s['alpha'], matrix_rows(s['matrix'])) for s in validated_data['samples'])
        domain = validated_data.get('domain')
        if domain is None:
            raise serializers.ValidationError({'domain': ['A domain is required for this family.']})
        if kind == 'constant':
            return ConstantFamily(matrix_rows(validated_data['matrix']), domain)
        if kind == 'affine':
            return AffineFamily(matrix_rows(validated_data['a0']), matrix_rows(validated_data['a1']), domain)
        return CurvesFamily(
            [SpectrumCurve.piecewise_linear(curve['points'], curve['mult']) for curve in validated_data['curves']],
            domain,
        )
