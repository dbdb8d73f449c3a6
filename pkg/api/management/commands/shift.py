from django.core.management.base import BaseCommand, CommandError

from api.management.commands._lab import add_config_arguments, dump, run_families
from services.shift_service import ShiftLab
from utils.exceptions import LabError
from utils.helpers import parse_descriptor, parse_weight_seq


class Command(BaseCommand):
    help = ('Weighted-shift and descriptor decisions; without --weights or --descriptor, '
            'run the shift certificate family')

    def add_arguments(self, parser):
        add_config_arguments(parser)
        parser.add_argument('--weights', action='append',
                            help='weight sequence such as "bilateral;0:2,5:3" or "unilateral;"')
        parser.add_argument('--k', type=int, help='also print the k-spectrum')
        parser.add_argument('--compare',
                            help='weight sequence whose k-spectra up to --k (default 4) are compared')
        parser.add_argument('--descriptor', action='append',
                            help='"normal:circle", "isometry:omega" or "isometry:1+single:1/3"')

    def handle(self, *args, **options):
        if not options.get('weights') and not options.get('descriptor'):
            run_families(self, options, ['shift'])
            return
        lab = ShiftLab()
        n = options.get('n') or 2
        results = []
        try:
            compare = parse_weight_seq(options['compare']) if options.get('compare') else None
            for text in options.get('weights') or []:
                w = parse_weight_seq(text)
                entry = {'weights': str(w), 'decision': lab.weight_stability_decide(w, n),
                         'interleaved': str(lab.shift_jn_weights(w, n))}
                if options.get('k'):
                    entry['k_spectrum'] = sorted(lab.k_spectrum(w, options['k']))
                if compare is not None:
                    same, first = lab.k_spectrum_equivalent(w, compare, options.get('k') or 4)
                    entry['k_spectra_agree'] = same
                    entry['first_differing_k'] = first
                results.append(entry)
            for text in options.get('descriptor') or []:
                results.append({'descriptor': text, 'decision': lab.descriptor_stability(parse_descriptor(text), n)})
        except LabError as exc:
            raise CommandError(str(exc), returncode=1)
        dump(self, {'results': results})
