from django.core.management.base import BaseCommand, CommandError

from api.management.commands._lab import dump
from services.diagonal_service import DiagonalLab
from utils.exceptions import LabError
from utils.helpers import parse_angle_set


class Command(BaseCommand):
    help = 'Decide J_n-stability of diagonal unitaries given by angle sets'

    def add_arguments(self, parser):
        parser.add_argument('--angles', action='append', required=True,
                            help='angle set such as "class:0@2" or "single:1/3 class:0@2+1/3"')
        parser.add_argument('--n', dest='n', type=int, default=2)
        parser.add_argument('--depth', type=int, default=4)
        parser.add_argument('--all-n', dest='all_n', action='store_true',
                            help='decide stability for every n at once')

    def handle(self, *args, **options):
        lab = DiagonalLab()
        decisions = []
        try:
            for text in options['angles']:
                spectrum = parse_angle_set(text)
                if options['all_n']:
                    decisions.append(lab.diag_stability_all_n(spectrum, options['depth']))
                else:
                    decisions.append(lab.diag_stability_decide(spectrum, options['n'], options['depth']))
        except LabError as exc:
            raise CommandError(str(exc), returncode=1)
        dump(self, {'decisions': decisions})
