from pathlib import Path

from django.core.management.base import BaseCommand, CommandError

from api.management.commands._lab import add_config_arguments, dump, run_families
from services.operator_service import OperatorLab
from utils.exact import ExactMatrix
from utils.exceptions import LabError


class Command(BaseCommand):
    help = 'Operator checks on matrix files; without --a, run the operator certificate family'

    def add_arguments(self, parser):
        add_config_arguments(parser)
        parser.add_argument('--a', help='matrix JSON file A')
        parser.add_argument('--b', help='matrix JSON file B')
        parser.add_argument('--length', type=int, help='word length bound of the trace test')

    def _matrix(self, path):
        try:
            return ExactMatrix.from_json(Path(path).read_text())
        except OSError as exc:
            raise CommandError(f"cannot read {path}: {exc}", returncode=1)

    def handle(self, *args, **options):
        if not options.get('a'):
            run_families(self, options, ['operator'])
            return
        lab = OperatorLab(seed=options.get('seed') or 42, float_mode=not options.get('exact_only'))
        a = self._matrix(options['a'])
        n = options.get('n') or 2
        try:
            result = {
                'invariant_factors': lab.invariant_factors(a),
                'root_identity': lab.root_identity_certificate(a, n),
            }
            if options.get('b'):
                b = self._matrix(options['b'])
                similar = lab.similar_decide(a, b)
                result['similar'] = similar
                if similar:
                    result['witness'] = lab.similarity_witness(a, b)
                result['specht'] = lab.specht_equiv(a, b, options.get('length'))
            elif a.rows % 2 == 0:
                try:
                    result['halved'] = lab.kaplansky_halve(a)
                except LabError as exc:
                    result['halved'] = exc.to_dict()
        except LabError as exc:
            raise CommandError(str(exc), returncode=1)
        dump(self, result)
