from rest_framework import serializers

from equideg.serializers import ExactFloatField, IntervalField, StrictSerializer

COMMAND_OPTIONS = {
    'bessel': {'m', 'n', 'below'},
    'burnside': {'modes', 'coeff'},
    'exist': {'tol', 'guard', 'assert_hypotheses'},
    'bifurcate': {'range', 'grid_step', 'tol', 'guard', 'assert_hypotheses'},
}
NEEDS_INPUT = {'exist', 'bifurcate'}


class JobOptionsSerializer(StrictSerializer):
    """
    Command-line options of every command; which ones a command accepts is
    checked by JobSpecSerializer
    """
    m = serializers.IntegerField(min_value=0, required=False)
    n = serializers.IntegerField(min_value=1, required=False)
    below = ExactFloatField(required=False)
    modes = serializers.ListField(child=serializers.IntegerField(min_value=1), required=False)
    coeff = serializers.IntegerField(min_value=1, required=False)
    tol = ExactFloatField(min_value=0, required=False)
    guard = ExactFloatField(min_value=0, required=False)
    grid_step = ExactFloatField(min_value=0, required=False)
    range = IntervalField(required=False)
    assert_hypotheses = serializers.BooleanField(required=False)


class JobSpecSerializer(StrictSerializer):
    command = serializers.ChoiceField(choices=sorted(COMMAND_OPTIONS))
    input = serializers.CharField(required=False, trim_whitespace=False)
    format = serializers.ChoiceField(choices=['json', 'table'], default='json')
    options = JobOptionsSerializer(default=dict)

    def validate(self, attrs):
        command = attrs['command']
        options = {key: value for key, value in attrs['options'].items() if value is not None}
        unsupported = sorted(set(options) - COMMAND_OPTIONS[command])
        if unsupported:
            raise serializers.ValidationError(
                {'options': {key: [f'Not accepted by the {command} command.'] for key in unsupported}}
            )
        for key in ('tol', 'guard', 'grid_step'):
            if key in options and not options[key] > 0:
                raise serializers.ValidationError({'options': {key: ['Must be positive.']}})
        if command in NEEDS_INPUT and not attrs.get('input'):
            raise serializers.ValidationError({'input': [f'The {command} command needs an input.']})
        if command == 'bessel' and 'below' not in options and not {'m', 'n'} <= set(options):
            raise serializers.ValidationError({'options': ['Give both m and n, or a bound with below.']})
        if command == 'bessel' and 'below' in options and 'n' in options:
            raise serializers.ValidationError({'options': {'n': ['Not accepted together with below.']}})
        attrs['options'] = options
        return attrs
