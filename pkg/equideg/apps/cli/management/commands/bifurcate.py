from equideg.apps.cli.base import JobCommand, comma_floats


class Command(JobCommand):
    help = 'Locate critical points of a family A(alpha) and certify bifurcating branches'
    job = 'bifurcate'
    takes_input = True

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--range', type=comma_floats, help='Parameter range lo,hi')
        parser.add_argument('--grid-step', type=float, help='Spacing of the detection grid')
        parser.add_argument('--tol', type=float, help='Crossing tolerance')
        parser.add_argument('--guard', type=float, help='Nondegeneracy guard')
        parser.add_argument(
            '--assert-hypotheses', action='store_true', default=None,
            help='Record that the caller has checked the analytic hypotheses',
        )

    def job_options(self, options):
        return {key: options[key] for key in ('range', 'grid_step', 'tol', 'guard', 'assert_hypotheses')}
