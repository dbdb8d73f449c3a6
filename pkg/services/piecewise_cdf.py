"""
Exact piecewise-linear distribution functions on [0, 1]
"""
from bisect import bisect_left, bisect_right
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

from utils.exceptions import InvalidParameter, MassMismatch
from utils.helpers import rational_rows_to_csv

Point = Tuple[Fraction, Fraction]

CDF_CSV_HEADER = ('x_num', 'x_den', 'F_num', 'F_den')


class PiecewiseCDF:
    """
    Breakpoints (x, F) with linear interpolation between them.

    x is nondecreasing; a repeated x encodes a jump (left value first), which
    only the degenerate point-mass distributions use. Evaluation is
    right-continuous.
    """

    __slots__ = ('points', '_xs')

    def __init__(self, points: Iterable[Point]):
        self.points: Tuple[Point, ...] = tuple((Fraction(x), Fraction(f)) for x, f in points)
        if len(self.points) < 2:
            raise InvalidParameter("a CDF needs at least two breakpoints")
        for (x0, f0), (x1, f1) in zip(self.points, self.points[1:]):
            if x1 < x0 or f1 < f0:
                raise InvalidParameter(f"breakpoints out of order near x={x1}")
        if self.points[0][0] < 0 or self.points[-1][0] > 1 or self.points[0][1] != 0:
            raise InvalidParameter("CDF must start at F(0)=0 and stay inside [0, 1]")
        self._xs = [x for x, _ in self.points]

    @classmethod
    def identity(cls) -> 'PiecewiseCDF':
        return cls([(Fraction(0), Fraction(0)), (Fraction(1), Fraction(1))])

    @classmethod
    def point_mass(cls, at: Fraction, mass: Fraction = Fraction(1)) -> 'PiecewiseCDF':
        at = Fraction(at)
        points: List[Point] = [(Fraction(0), Fraction(0))]
        if at > 0:
            points.append((at, Fraction(0)))
        points.append((at, Fraction(mass)))
        if at < 1:
            points.append((Fraction(1), Fraction(mass)))
        return cls(points)

    def __len__(self) -> int:
        return len(self.points)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PiecewiseCDF) and self.points == other.points

    @property
    def total(self) -> Fraction:
        return self.points[-1][1]

    def __call__(self, t: Fraction) -> Fraction:
        """Right-continuous value F(t)"""
        i = bisect_right(self._xs, t)
        if i == 0:
            return Fraction(0)
        if i == len(self.points):
            return self.total
        (x0, f0), (x1, f1) = self.points[i - 1], self.points[i]
        if x0 == t:
            return f0
        return f0 + (f1 - f0) * (t - x0) / (x1 - x0)

    def left(self, t: Fraction) -> Fraction:
        """Left limit F(t-)"""
        i = bisect_left(self._xs, t)
        if i == 0:
            return Fraction(0)
        if i == len(self.points):
            return self.total
        (x0, f0), (x1, f1) = self.points[i - 1], self.points[i]
        return f0 + (f1 - f0) * (t - x0) / (x1 - x0)

    def mass(self, lo: Fraction, hi: Fraction) -> Fraction:
        """Mass of (lo, hi]"""
        return self(hi) - self(lo)

    def is_monotone(self) -> bool:
        return all(x0 <= x1 and f0 <= f1 for (x0, f0), (x1, f1) in zip(self.points, self.points[1:]))

    def affine(self, scale: Fraction, shift: Fraction, offset: Fraction = Fraction(0)) -> List[Point]:
        """Breakpoints of the pushforward under x -> scale x + shift, raised by offset"""
        return [(scale * x + shift, offset + f) for x, f in self.points]

    def scaled(self, factor: Fraction) -> 'PiecewiseCDF':
        return PiecewiseCDF((x, f * factor) for x, f in self.points)

    def rows(self) -> List[List[str]]:
        return [[str(x.numerator), str(x.denominator), str(f.numerator), str(f.denominator)]
                for x, f in self.points]

    def to_csv(self) -> str:
        return rational_rows_to_csv(CDF_CSV_HEADER, self.rows())


def concatenate(pieces: Sequence[List[Point]]) -> PiecewiseCDF:
    """Join breakpoint runs left to right, dropping repeated shared endpoints"""
    points: List[Point] = []
    for piece in pieces:
        for point in piece:
            if points and points[-1] == point:
                continue
            points.append(point)
    return PiecewiseCDF(points)


def w1_distance(a: PiecewiseCDF, b: PiecewiseCDF) -> Fraction:
    """
    Integral of |F_a - F_b| over [0, 1]. On each piece both functions are
    linear; where the difference changes sign the two triangles are summed
    """
    if a.total != b.total:
        raise MassMismatch(f"{a.total} != {b.total}", {'left': a.total, 'right': b.total})
    xs = sorted(set(a._xs) | set(b._xs) | {Fraction(0), Fraction(1)})
    area = Fraction(0)
    for u, v in zip(xs, xs[1:]):
        d0 = a(u) - b(u)
        d1 = a.left(v) - b.left(v)
        h = v - u
        if d0 * d1 >= 0:
            area += h * (abs(d0) + abs(d1)) / 2
        else:
            area += h * (d0 * d0 + d1 * d1) / (2 * (abs(d0) + abs(d1)))
    return area
