"""
Decision procedures for diagonal unitaries with rational point spectrum
"""
import logging
from typing import Iterator, List, Optional, Set

from utils.constants import RESOURCE_CAPS
from utils.data_classes import Angle, AngleGenerator, AngleSet, Decision
from utils.exceptions import EnumerationTooLarge, InvalidParameter, Undecided

logger = logging.getLogger(__name__)


class DiagonalLab:
    """
    Service for S_n(a) = {t : n^j t = n^k a mod 1 for some j, k >= 0}.

    Multiplication by n is eventually periodic on Q/Z, so forward orbits
    close and class equality is decided exactly.
    """

    def __init__(self, orbit_cap: Optional[int] = None, enumeration_cap: Optional[int] = None):
        self.orbit_cap = orbit_cap or RESOURCE_CAPS['ORBIT_STEPS']
        self.enumeration_cap = enumeration_cap or RESOURCE_CAPS['WORDS']

    @staticmethod
    def _order(n: int) -> None:
        if n < 2:
            raise InvalidParameter(f"orbit order must be at least 2, got {n}")

    def forward_orbit(self, a: Angle, n: int) -> List[Angle]:
        """a, n a, n^2 a, ... up to the first repeat"""
        self._order(n)
        seen: Set[Angle] = set()
        orbit = []
        current = a
        for _ in range(self.orbit_cap):
            if current in seen:
                return orbit
            seen.add(current)
            orbit.append(current)
            current = current.times(n)
        raise Undecided(f"orbit of {a} under x{n} did not close", {'cap': self.orbit_cap})

    def roots(self, a: Angle, n: int, j: int) -> List[Angle]:
        """All t with n^j t = a, ascending"""
        scale = n ** j
        return sorted(Angle((a.value + t) / scale) for t in range(scale))

    def orbit_expand(self, a: Angle, n: int, depth: int) -> Set[Angle]:
        """Angles t with n^j t = n^k a for j, k <= depth"""
        self._order(n)
        if depth < 0:
            raise InvalidParameter("depth must be non-negative")
        forward = {a.times(n ** k) for k in range(depth + 1)}
        count = len(forward) * sum(n ** j for j in range(depth + 1))
        if count > self.enumeration_cap:
            raise EnumerationTooLarge(f"{count} orbit points", {'count': count, 'cap': self.enumeration_cap})
        result: Set[Angle] = set()
        for point in forward:
            for j in range(depth + 1):
                result.update(self.roots(point, n, j))
        return result

    def s_class_equal(self, a: Angle, b: Angle, n: int) -> bool:
        """S_n(a) = S_n(b) iff the forward orbits meet"""
        if a == b:
            return True
        return not set(self.forward_orbit(a, n)).isdisjoint(self.forward_orbit(b, n))

    def canonical_representative(self, a: Angle, n: int) -> Angle:
        """Forward-orbit member with smallest denominator, then numerator"""
        return min(self.forward_orbit(a, n), key=Angle.sort_key)

    def contains(self, spectrum: AngleSet, theta: Angle) -> bool:
        for generator in spectrum.generators:
            if generator.kind == 'all':
                return True
            if generator.kind == 'single' and generator.angle == theta:
                return True
            if generator.kind == 'class' and self.s_class_equal(theta - generator.rotation,
                                                                generator.angle, generator.order):
                return True
        return False

    def closure_candidates(self, generator: AngleGenerator, n: int, depth: int) -> Iterator[Angle]:
        """n^j-th roots (j = 1..depth, ascending), then powers n^k"""
        rep = generator.representative
        for j in range(1, depth + 1):
            yield from self.roots(rep, n, j)
        for k in range(1, depth + 1):
            yield rep.times(n ** k)

    def _partition(self, spectrum: AngleSet, n: int) -> List[str]:
        classes: List[Angle] = []
        for generator in spectrum.generators:
            rep = generator.representative
            if not any(self.s_class_equal(rep, known, n) for known in classes):
                classes.append(rep)
        return [f"S_{n}({self.canonical_representative(rep, n)})" for rep in classes]

    def diag_stability_decide(self, spectrum: AngleSet, n: int, depth: int) -> Decision:
        """J_n-stability of the diagonal unitary with point spectrum `spectrum`"""
        self._order(n)
        subject = str(spectrum)
        finite = next((g for g in spectrum.generators if not g.infinite), None)
        if finite is not None:
            return Decision(subject, False, witness=finite.representative,
                            reason='finite multiplicity can never be J_n-stable', data={'n': n})
        full = next((g for g in spectrum.generators if g.kind == 'all'), None)
        if full is not None:
            return Decision(subject, True, reason='S-class generator covers every rational angle',
                            partition=[f"S({full.angle})"], data={'n': n})
        for generator in spectrum.generators:
            for theta in self.closure_candidates(generator, n, depth):
                if not self.contains(spectrum, theta):
                    logger.info(f"{subject} not J_{n}-stable: {theta} missing")
                    return Decision(subject, False, witness=theta,
                                    reason=f"{theta} is a root or power of {generator.representative} outside the spectrum",
                                    data={'n': n, 'depth': depth, 'generator': str(generator)})
        return Decision(subject, True, reason=f"closed under {n}-th roots and powers to depth {depth}",
                        partition=self._partition(spectrum, n), data={'n': n, 'depth': depth})

    def diag_stability_all_n(self, spectrum: AngleSet, depth: int, max_order: int = 4) -> Decision:
        """Stable for every n iff S-class generators with infinite multiplicity"""
        subject = str(spectrum)
        per_n = {n: self.diag_stability_decide(spectrum, n, depth) for n in range(2, max_order + 1)}
        stable = all(g.infinite for g in spectrum.generators) and any(g.kind == 'all' for g in spectrum.generators)
        data = {'per_n': {str(n): d.stable for n, d in per_n.items()}, 'depth': depth}
        if stable:
            return Decision(subject, True, reason='union of S-classes with uniform infinite multiplicity',
                            partition=per_n[2].partition, data=data)
        failing = next((d for d in per_n.values() if not d.stable), None)
        return Decision(subject, False, witness=failing.witness if failing else None,
                        reason='no S-class generator' if failing is None else failing.reason, data=data)

