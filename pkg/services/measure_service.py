"""
Cylinder masses and exact CDF approximants of nu, nu-tilde, mu0 and mu
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from services.coding_service import CodingService
from services.piecewise_cdf import PiecewiseCDF, Point, concatenate
from services.weight_service import WeightTable
from utils.constants import RESOURCE_CAPS
from utils.data_classes import ForbiddenSet, MeasureSpec, Word
from utils.exceptions import EnumerationTooLarge, InvalidParameter

logger = logging.getLogger(__name__)


class MeasureService:
    """
    Service for the measures of the forbidden-word construction.

    nu_K puts mass p(i) on each depth-K cylinder, spread inside the cylinder
    by the affine image F_i of the depth-M nu-tilde approximant; nu-tilde_K
    spreads p-tilde(i) uniformly. mu0 = f*nu with f(x) = x/N and
    mu = sum over i of (g_i o f)*nu with g_i(x) = x + i/N.
    """

    def __init__(self, cap: Optional[int] = None, workers: int = 1):
        self.cap = cap if cap is not None else RESOURCE_CAPS['BREAKPOINTS']
        self.coding = CodingService(cap=self.cap)
        self.workers = max(1, workers)
        self._tables: Dict[ForbiddenSet, WeightTable] = {}

    def table(self, forbidden: ForbiddenSet) -> WeightTable:
        table = self._tables.get(forbidden)
        if table is None:
            table = self._tables.setdefault(forbidden, WeightTable(forbidden, self.coding))
        return table

    def nu_mass(self, word: Word, forbidden: ForbiddenSet) -> Fraction:
        """nu(pi([i])) = p(i)"""
        return self.table(forbidden).p(word)

    def nu_tilde_mass(self, word: Word, forbidden: ForbiddenSet) -> Fraction:
        return self.table(forbidden).p_tilde(word)

    def mu_mass(self, word: Word, forbidden: ForbiddenSet, normalized: bool = False) -> Fraction:
        """mu(pi([w1 w2 .. wK])) = p(w2 .. wK), divided by N when normalized"""
        if len(word) == 0:
            raise InvalidParameter("mu_mass needs a non-empty word; the total mass is N")
        mass = self.table(forbidden).p(word.shift())
        return mass / word.base if normalized else mass

    def cylinder_mass(self, cdf: PiecewiseCDF, word: Word) -> Fraction:
        interval = self.coding.cylinder_interval(word)
        return cdf.mass(interval.left, interval.right)

    def _guard(self, spec: MeasureSpec) -> None:
        exponent = spec.depth + (0 if spec.kind == 'nu_tilde' else spec.base_depth)
        count = spec.base ** exponent
        if count + 1 > self.cap:
            logger.warning(f"Approximant {spec.kind} at depth {spec.depth}+{spec.base_depth} exceeds the cap")
            raise EnumerationTooLarge(f"{count + 1} breakpoints exceed cap {self.cap}",
                                      {'count': count + 1, 'cap': self.cap})

    def _uniform_pieces(self, forbidden: ForbiddenSet, depth: int, tilde: bool) -> List[Point]:
        table = self.table(forbidden)
        base = forbidden.base
        width = Fraction(1, base ** depth)
        points: List[Point] = [(Fraction(0), Fraction(0))]
        total = Fraction(0)
        for index, word in enumerate(self.coding.enumerate_words(depth, base), start=1):
            total += table.weight(word, tilde)
            points.append((index * width, total))
        return points

    def _cylinders(self, forbidden: ForbiddenSet, depth: int, part: int, parts: int) -> List[Tuple[Fraction, Fraction]]:
        """(pi(i), p(i)) for the words of one enumeration slice"""
        table = self.table(forbidden)
        return [(self.coding.project_pi(word), table.p(word))
                for word in self.coding.enumerate_partition(depth, forbidden.base, part, parts)]

    def _nu_points(self, forbidden: ForbiddenSet, depth: int, base_depth: int) -> List[Point]:
        inner = PiecewiseCDF(self._uniform_pieces(forbidden, base_depth, tilde=True))
        parts = self.workers
        if parts > 1:
            with ThreadPoolExecutor(max_workers=parts) as executor:
                chunks = list(executor.map(
                    lambda part: self._cylinders(forbidden, depth, part, parts), range(parts)))
        else:
            chunks = [self._cylinders(forbidden, depth, 0, 1)]
        width = Fraction(1, forbidden.base ** depth)
        points: List[Point] = []
        below = Fraction(0)
        for chunk in chunks:
            for left, mass in chunk:
                for x, f in inner.points:
                    point = (left + width * x, below + mass * f)
                    if points and points[-1] == point:
                        continue
                    points.append(point)
                below += mass
        return points

    def build_cdf(self, spec: MeasureSpec) -> PiecewiseCDF:
        """Exact CDF of the approximant described by spec"""
        self._guard(spec)
        logger.info(f"Building {spec.kind} for {spec.forbidden.label} at depth {spec.depth}, base depth {spec.base_depth}")
        if spec.kind == 'nu_tilde':
            return PiecewiseCDF(self._uniform_pieces(spec.forbidden, spec.depth, tilde=True))

        nu = PiecewiseCDF(self._nu_points(spec.forbidden, spec.depth, spec.base_depth))
        if spec.kind == 'nu':
            return nu

        base = spec.base
        scale = Fraction(1, base)
        if spec.kind == 'mu0':
            return concatenate([nu.affine(scale, Fraction(0)), [(Fraction(1), nu.total)]])

        mu = concatenate([nu.affine(scale, Fraction(i, base), offset=i * nu.total) for i in range(base)])
        if spec.kind == 'mu_normalized':
            return mu.scaled(scale)
        return mu
