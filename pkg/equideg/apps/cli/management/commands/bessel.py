from equideg.apps.cli.base import JobCommand


class Command(JobCommand):
    help = 'Print j_{m,n} and s_{m,n}, or every Dirichlet eigenvalue of the disc below a bound'
    job = 'bessel'

    def add_arguments(self, parser):
        parser.add_argument('--m', type=int, help='Mode (order of J_m)')
        parser.add_argument('--n', type=int, help='Zero index, counted from 1')
        parser.add_argument('--below', type=float, help='List s_{m,n} below this bound; all modes unless --m is given')
        super().add_arguments(parser)

    def job_options(self, options):
        return {key: options[key] for key in ('m', 'n', 'below')}
