from equideg.apps.cli.base import JobCommand


class Command(JobCommand):
    help = 'Certify non-radial solutions from the spectrum of A'
    job = 'exist'
    takes_input = True

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--tol', type=float, help='Spectral tolerance used when the input is a matrix')
        parser.add_argument('--guard', type=float, help='Nondegeneracy guard')
        parser.add_argument(
            '--assert-hypotheses', action='store_true', default=None,
            help='Record that the caller has checked the analytic hypotheses',
        )

    def job_options(self, options):
        return {key: options[key] for key in ('tol', 'guard', 'assert_hypotheses')}
