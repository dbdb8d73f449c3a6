"""
Weighted shifts with eventually-1 weights, and descriptor rules for
isometries and normal operators
"""
import logging
from fractions import Fraction
from typing import List, Optional, Set, Tuple, Union

from services.diagonal_service import DiagonalLab
from utils.constants import LAB_DEFAULTS
from utils.data_classes import AngleSet, Decision, IsometryDescriptor, NormalDescriptor, WeightSeq
from utils.exceptions import InvalidParameter, UnsupportedConfiguration

logger = logging.getLogger(__name__)

Window = Tuple[Fraction, ...]


class ShiftLab:
    """
    Service for J_n of weighted shifts. J_n(W) is again a weighted shift
    whose weights interleave n - 1 ones before each original weight, so the
    weight at position i moves to n i + n - 1.
    """

    def __init__(self, diagonal: Optional[DiagonalLab] = None, depth: int = LAB_DEFAULTS['DEPTH']):
        self.diagonal = diagonal or DiagonalLab()
        self.depth = depth

    def shift_jn_weights(self, w: WeightSeq, n: int) -> WeightSeq:
        if n < 1:
            raise InvalidParameter(f"root order must be at least 1, got {n}")
        return WeightSeq(w.kind, tuple((n * p + n - 1, weight) for p, weight in w.exceptional))

    def k_spectrum(self, w: WeightSeq, k: int) -> Set[Window]:
        """All length-k windows; the all-ones window always occurs"""
        if k < 1:
            raise InvalidParameter("window length must be positive")
        windows: Set[Window] = {tuple([Fraction(1)] * k)}
        support = w.support
        if not support:
            return windows
        first = support[0] - k + 1
        if w.kind == 'unilateral':
            first = max(first, 0)
        for start in range(first, support[-1] + 1):
            windows.add(tuple(w.weight(start + offset) for offset in range(k)))
        return windows

    def k_spectrum_equivalent(self, v: WeightSeq, w: WeightSeq, k_max: int) -> Tuple[bool, Optional[int]]:
        """(True, None) when every k-spectrum up to k_max agrees, else (False, first k)"""
        for k in range(1, k_max + 1):
            if self.k_spectrum(v, k) != self.k_spectrum(w, k):
                return False, k
        return True, None

    def _refutation(self, w: WeightSeq, n: int) -> dict:
        support = w.support
        d = w.gap
        s = next(p for p, q in zip(support, support[1:]) if q - p == d)
        t = s + d
        window = tuple(w.weight(s + offset) for offset in range(d + 1))
        interleaved = self.shift_jn_weights(w, n)
        delta = min(abs(w.weight(s) - 1), abs(w.weight(t) - 1))
        return {
            'window': list(window),
            'k': d + 1,
            'delta': delta,
            'gap': d,
            'interleaved_gap': interleaved.gap,
            'window_in_interleaved': window in self.k_spectrum(interleaved, d + 1),
        }

    def bilateral_stability_decide(self, w: WeightSeq, n: int) -> Decision:
        """Stable in both senses iff at most one weight differs from 1"""
        if w.kind != 'bilateral':
            raise InvalidParameter("expected a bilateral weight sequence")
        subject = str(w)
        if len(w.support) <= 1:
            data = {'n': n}
            if w.support:
                position = w.support[0]
                data['translation'] = (n * position + n - 1) - position
            return Decision(subject, True, mode='unitary+approximate',
                            reason='at most one weight differs from 1', data=data)
        refutation = self._refutation(w, n)
        logger.info(f"{subject} not J_{n}-stable, gap {refutation['gap']} -> {refutation['interleaved_gap']}")
        return Decision(subject, False, mode='unitary+approximate',
                        witness=refutation['window'],
                        reason=f"window of length {refutation['k']} is missing from J_{n}(W)",
                        data={'n': n, **refutation})

    def unilateral_stability_decide(self, w: WeightSeq, n: int) -> Decision:
        """Stable iff (w0, w1, ...) equals its interleave, i.e. every weight is 1"""
        if w.kind != 'unilateral':
            raise InvalidParameter("expected a unilateral weight sequence")
        subject = str(w)
        interleaved = self.shift_jn_weights(w, n)
        horizon = max(interleaved.support + w.support, default=-1) + 1
        differing = next((i for i in range(horizon) if w.weight(i) != interleaved.weight(i)), None)
        if differing is None:
            return Decision(subject, True, reason='all weights equal 1', data={'n': n})
        return Decision(subject, False, witness=differing,
                        reason=f"weight {w.weight(differing)} at {differing} differs from the interleave",
                        data={'n': n, 'interleaved': str(interleaved)})

    def weight_stability_decide(self, w: WeightSeq, n: int) -> Decision:
        if w.kind == 'bilateral':
            return self.bilateral_stability_decide(w, n)
        return self.unilateral_stability_decide(w, n)

    def descriptor_stability(self, descriptor: Union[IsometryDescriptor, NormalDescriptor], n: int) -> Decision:
        """Wold rule for isometries and the circle-spectrum rule for normal operators"""
        if isinstance(descriptor, NormalDescriptor):
            subject = f"normal:{descriptor.spectrum}"
            if descriptor.spectrum == 'circle':
                return Decision(subject, True, mode='approximate', reason='spectrum is the circle; holds for all n')
            return Decision(subject, False, mode='approximate',
                            reason='approximate stability for some n forces spectrum equal to the circle')
        if not isinstance(descriptor, IsometryDescriptor):
            raise UnsupportedConfiguration(f"no descriptor rule for {type(descriptor).__name__}")
        alpha = 'omega' if descriptor.shift_multiplicity is None else descriptor.shift_multiplicity
        unitary = descriptor.unitary
        if unitary is None:
            return Decision(f"isometry:S^({alpha})", True, reason='pure shift', data={'n': n})
        if unitary == 'circle-spectrum':
            return Decision(f"isometry:S^({alpha})+U", True, mode='approximate',
                            reason='unitary part has circle spectrum', data={'n': n})
        if isinstance(unitary, AngleSet):
            inner = self.diagonal.diag_stability_decide(unitary, n, self.depth)
            return Decision(f"isometry:S^({alpha})+{inner.subject}", inner.stable, witness=inner.witness,
                            reason=f"unitary part: {inner.reason}", partition=inner.partition, data=inner.data)
        raise UnsupportedConfiguration("unitary part must be symbolic")

    def random_weight_seq(self, rng, kind: str = 'bilateral', max_support: int = 3, span: int = 8) -> WeightSeq:
        size = int(rng.integers(0, max_support + 1))
        positions = rng.choice(span, size=size, replace=False) if size else []
        low = 0 if kind == 'unilateral' else -span // 2
        weights = {int(p) + low: Fraction(int(rng.integers(2, 6)), int(rng.integers(1, 4))) for p in positions}
        return WeightSeq.from_map(kind, weights)

    def gap_scaling_holds(self, w: WeightSeq, n: int) -> bool:
        interleaved = self.shift_jn_weights(w, n)
        return w.gap is None or interleaved.gap == n * w.gap

    def isolating_windows(self, w: WeightSeq, n: int) -> List[Window]:
        """For each exceptional weight, the window with n - 1 ones on each side"""
        ones = [Fraction(1)] * (n - 1)
        return [tuple(ones + [weight] + ones) for _, weight in w.exceptional]
