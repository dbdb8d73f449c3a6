"""
API views over the laboratory services
"""
from rest_framework.views import APIView
from rest_framework.response import Response
from rest_framework import status
from django.conf import settings
from django.views.decorators.csrf import csrf_exempt
from django.utils.decorators import method_decorator
import logging
from datetime import datetime

from utils.constants import LAB_DEFAULTS, TOOL_VERSION
from utils.data_classes import MeasureSpec, Word
from utils.exceptions import LabError
from utils.helpers import parse_angle_set, parse_descriptor, parse_forbidden, parse_weight_seq, serialize
from services.bell_service import BellRingVerifier
from services.certificate_service import CertificateService
from services.diagonal_service import DiagonalLab
from services.measure_service import MeasureService
from services.shift_service import ShiftLab
from services.suite_service import SuiteRunner, parse_config

logger = logging.getLogger(__name__)

# Certificates reachable through the measure endpoint
MEASURE_CERTIFICATES = {
    'weights': lambda svc, b, d, m: svc.weights_certificate(b, d),
    'w1_cauchy': lambda svc, b, d, m: svc.w1_cauchy_certificate(b, d, m),
    'translation': lambda svc, b, d, m: svc.translation_certificate(b, d, m),
    'continuity': lambda svc, b, d, m: svc.continuity_certificate(b, d),
    'circle_stability': lambda svc, b, d, m: svc.circle_stability_certificate(b, b.base, d),
    'non_atomicity': lambda svc, b, d, m: svc.non_atomicity_certificate(b, d),
    'support': lambda svc, b, d, m: svc.support_certificate(b, d),
}


def _required(data, *fields):
    for field in fields:
        if field not in data:
            raise ValueError(f'Missing required field: {field}')


def _lab_error(exc: LabError) -> Response:
    logger.error(f"Laboratory error: {exc}")
    return Response(exc.to_dict(), status=status.HTTP_400_BAD_REQUEST)


class LabView(APIView):
    """Shared error mapping: laboratory and validation errors are 400, the rest 500"""

    def handle(self, request, compute):
        try:
            return Response(serialize(compute(request.data)), status=status.HTTP_200_OK)
        except LabError as e:
            return _lab_error(e)
        except (ValueError, TypeError, KeyError) as e:
            logger.error(f"Validation error: {str(e)}")
            return Response({'error': 'invalid-parameter', 'detail': str(e)}, status=status.HTTP_400_BAD_REQUEST)
        except Exception as e:
            logger.exception(f"{type(self).__name__} failed: {str(e)}")
            return Response({'error': 'Internal server error'}, status=status.HTTP_500_INTERNAL_SERVER_ERROR)


@method_decorator(csrf_exempt, name='dispatch')
class WeightsView(LabView):
    """
    Exact weights p and p-tilde

    Expected input:
    {"N": 3, "forbidden": "1", "word": "0102"} or {"N": 3, "forbidden": "1", "depth": 3}
    """

    def post(self, request):
        return self.handle(request, self.compute)

    def compute(self, data):
        base = int(data.get('N', LAB_DEFAULTS['BASE']))
        forbidden = parse_forbidden(str(data.get('forbidden', '1')), base)
        table = MeasureService().table(forbidden)
        if 'word' in data:
            word = Word.parse(str(data['word']), base)
            return {'word': str(word), 'p': table.p(word), 'p_tilde': table.p_tilde(word),
                    'pending': table.is_pending(word)}
        depth = int(data.get('depth', 2))
        rows = [dict(zip(('word', 'p_num', 'p_den', 'ptilde_num', 'ptilde_den'), row))
                for row in table.rows(depth)]
        return {'B': forbidden.label, 'depth': depth, 'rows': rows}


@method_decorator(csrf_exempt, name='dispatch')
class MeasureView(LabView):
    """
    CDF approximants and measure certificates

    Expected input:
    {"N": 3, "forbidden": "1", "kind": "nu", "depth": 3, "base_depth": 1}
    with optional "word" (cylinder mass) or "certificate" (one of MEASURE_CERTIFICATES)
    """

    def post(self, request):
        return self.handle(request, self.compute)

    def compute(self, data):
        base = int(data.get('N', LAB_DEFAULTS['BASE']))
        forbidden = parse_forbidden(str(data.get('forbidden', '1')), base)
        depth = int(data.get('depth', 3))
        base_depth = int(data.get('base_depth', 1))
        measures = MeasureService(workers=settings.JNLAB_WORKERS)
        if 'certificate' in data:
            name = data['certificate']
            if name not in MEASURE_CERTIFICATES:
                raise ValueError(f"unknown certificate {name!r}")
            return MEASURE_CERTIFICATES[name](CertificateService(measures), forbidden, depth, base_depth)
        spec = MeasureSpec(forbidden, str(data.get('kind', 'nu')), depth, base_depth)
        cdf = measures.build_cdf(spec)
        result = {'kind': spec.kind, 'B': forbidden.label, 'breakpoints': len(cdf), 'total': cdf.total,
                  'points': [[x, f] for x, f in cdf.points]}
        if 'word' in data:
            result['cylinder_mass'] = measures.cylinder_mass(cdf, Word.parse(str(data['word']), base))
        return result


@method_decorator(csrf_exempt, name='dispatch')
class DiagonalView(LabView):
    """
    J_n-stability of a diagonal unitary

    Expected input:
    {"angles": "single:1/3 class:0@2+1/3", "n": 2, "depth": 4, "all_n": false}
    """

    def post(self, request):
        return self.handle(request, self.compute)

    def compute(self, data):
        _required(data, 'angles')
        spectrum = parse_angle_set(str(data['angles']))
        depth = int(data.get('depth', 4))
        lab = DiagonalLab()
        if data.get('all_n'):
            return lab.diag_stability_all_n(spectrum, depth)
        return lab.diag_stability_decide(spectrum, int(data.get('n', 2)), depth)


@method_decorator(csrf_exempt, name='dispatch')
class ShiftView(LabView):
    """
    J_n-stability of a weighted shift

    Expected input:
    {"weights": "bilateral;0:2,5:3", "n": 2, "k": 2, "compare": "bilateral;3:2"}
    or {"descriptor": "isometry:1+single:0", "n": 2}
    """

    def post(self, request):
        return self.handle(request, self.compute)

    def compute(self, data):
        n = int(data.get('n', 2))
        lab = ShiftLab()
        if 'descriptor' in data and 'weights' not in data:
            return {'decision': lab.descriptor_stability(parse_descriptor(str(data['descriptor'])), n)}
        _required(data, 'weights')
        w = parse_weight_seq(str(data['weights']))
        interleaved = lab.shift_jn_weights(w, n)
        result = {'decision': lab.weight_stability_decide(w, n), 'interleaved': str(interleaved),
                  'gap': w.gap, 'interleaved_gap': interleaved.gap}
        if 'k' in data:
            k = int(data['k'])
            result['k_spectrum'] = sorted(lab.k_spectrum(w, k))
        if 'compare' in data:
            same, first = lab.k_spectrum_equivalent(w, parse_weight_seq(str(data['compare'])),
                                                    int(data.get('k', 4)))
            result.update({'k_spectra_agree': same, 'first_differing_k': first})
        return result


@method_decorator(csrf_exempt, name='dispatch')
class BellView(LabView):
    """The three Bell-ring certificates"""

    def get(self, request):
        return self.handle(request, lambda data: {'certificates': BellRingVerifier().verify_all()})


@method_decorator(csrf_exempt, name='dispatch')
class SuiteView(LabView):
    """
    Run a suite and return the report without writing files

    Expected input: the config keys, e.g. {"N": 3, "families": "bell,shift", "seed": 7}
    """

    def post(self, request):
        return self.handle(request, self.compute)

    def compute(self, data):
        config = parse_config(flags=dict(data))
        return SuiteRunner(workers=settings.JNLAB_WORKERS).run_suite(config)


@method_decorator(csrf_exempt, name='dispatch')
class HealthCheckView(APIView):
    """
    Health check endpoint for monitoring
    """

    def get(self, request):
        """
        Return health status and basic info
        """
        try:
            return Response({
                'status': 'healthy',
                'timestamp': datetime.now().isoformat(),
                'version': TOOL_VERSION,
                'service': 'J_n stability laboratory',
                'workers': settings.JNLAB_WORKERS,
                'endpoints': {
                    'weights': '/api/weights/',
                    'measure': '/api/measure/',
                    'diagonal': '/api/diagonal/',
                    'shift': '/api/shift/',
                    'bell': '/api/bell/',
                    'suite': '/api/suite/',
                    'health': '/api/health/',
                }
            }, status=status.HTTP_200_OK)

        except Exception as e:
            return Response({
                'status': 'unhealthy',
                'error': str(e),
                'timestamp': datetime.now().isoformat()
            }, status=status.HTTP_500_INTERNAL_SERVER_ERROR)
