from equideg.apps.cli.base import JobCommand, comma_ints


class Command(JobCommand):
    help = 'Expand a product of basic degrees in the Burnside ring'
    job = 'burnside'

    def add_arguments(self, parser):
        parser.add_argument('--modes', type=comma_ints, default=[], help='Modes, e.g. 1,2,3')
        parser.add_argument('--coeff', type=int, help='Also report the (H_m0) coefficient and its closed form')
        super().add_arguments(parser)

    def job_options(self, options):
        return {'modes': options['modes'], 'coeff': options['coeff']}
