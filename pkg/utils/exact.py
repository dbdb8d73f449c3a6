"""
Exact matrices and polynomials over the Gaussian rationals
"""
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from sympy import QQ, QQ_I
from sympy.polys.matrices import DomainMatrix
from sympy.polys.rings import PolyElement, ring

from utils.exceptions import InvalidParameter

GaussianRational = type(QQ_I.one)
Scalar = Union[int, Fraction, GaussianRational, Tuple[Any, Any]]

POLY_RING, X = ring('x', QQ_I)


def qq(value: Union[int, Fraction]) -> Any:
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def to_fraction(element: Any) -> Fraction:
    return Fraction(int(element.numerator), int(element.denominator))


def gaussian(value: Scalar) -> GaussianRational:
    """Exact Gaussian rational from int, Fraction, (re, im) or a QQ_I element"""
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, tuple):
        re, im = value
        return QQ_I(qq(re), qq(im))
    if isinstance(value, (int, Fraction)):
        return QQ_I(qq(value), QQ.zero)
    raise InvalidParameter(f"not an exact Gaussian rational: {value!r}")


def parts(z: GaussianRational) -> Tuple[Fraction, Fraction]:
    return to_fraction(z.x), to_fraction(z.y)


def conjugate(z: GaussianRational) -> GaussianRational:
    return QQ_I(z.x, -z.y)


def gaussian_to_dict(z: GaussianRational) -> Dict[str, List[str]]:
    re, im = parts(z)
    return {'re': [str(re.numerator), str(re.denominator)],
            'im': [str(im.numerator), str(im.denominator)]}


def gaussian_from_dict(data: Dict[str, Sequence[str]]) -> GaussianRational:
    try:
        re = Fraction(int(data['re'][0]), int(data['re'][1]))
        im = Fraction(int(data['im'][0]), int(data['im'][1]))
    except (KeyError, IndexError, ValueError, ZeroDivisionError):
        raise InvalidParameter(f"malformed matrix entry {data!r}")
    return gaussian((re, im))


def gaussian_to_complex(z: GaussianRational) -> complex:
    re, im = parts(z)
    return complex(float(re), float(im))


class ExactMatrix:
    """Immutable dense matrix over QQ_I"""

    __slots__ = ('dm',)

    def __init__(self, dm: DomainMatrix):
        if dm.domain != QQ_I:
            dm = dm.convert_to(QQ_I)
        self.dm = dm.to_dense()

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[Scalar]]) -> 'ExactMatrix':
        grid = [[gaussian(value) for value in row] for row in rows]
        if not grid or not grid[0]:
            raise InvalidParameter("matrices need at least one row and one column")
        width = len(grid[0])
        if any(len(row) != width for row in grid):
            raise InvalidParameter("matrix rows have different lengths")
        return cls(DomainMatrix(grid, (len(grid), width), QQ_I))

    @classmethod
    def zeros(cls, rows: int, cols: Optional[int] = None) -> 'ExactMatrix':
        cols = rows if cols is None else cols
        return cls.from_rows([[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, size: int) -> 'ExactMatrix':
        return cls.from_rows([[1 if i == j else 0 for j in range(size)] for i in range(size)])

    @classmethod
    def diagonal(cls, values: Sequence[Scalar]) -> 'ExactMatrix':
        size = len(values)
        return cls.from_rows([[values[i] if i == j else 0 for j in range(size)] for i in range(size)])

    @classmethod
    def block(cls, grid: Sequence[Sequence['ExactMatrix']]) -> 'ExactMatrix':
        rows = [row[0].dm.hstack(*[m.dm for m in row[1:]]) for row in grid]
        return cls(rows[0].vstack(*rows[1:]))

    @classmethod
    def direct_sum(cls, *blocks: 'ExactMatrix') -> 'ExactMatrix':
        size_r = sum(m.rows for m in blocks)
        size_c = sum(m.cols for m in blocks)
        grid = [[QQ_I.zero] * size_c for _ in range(size_r)]
        r0 = c0 = 0
        for m in blocks:
            for i, row in enumerate(m.entries()):
                grid[r0 + i][c0:c0 + m.cols] = row
            r0, c0 = r0 + m.rows, c0 + m.cols
        return cls(DomainMatrix(grid, (size_r, size_c), QQ_I))

    @classmethod
    def permutation(cls, targets: Sequence[int]) -> 'ExactMatrix':
        """P with P[targets[t], t] = 1"""
        size = len(targets)
        grid = [[0] * size for _ in range(size)]
        for t, s in enumerate(targets):
            grid[s][t] = 1
        return cls.from_rows(grid)

    @classmethod
    def from_json(cls, text: str) -> 'ExactMatrix':
        try:
            data = json.loads(text)
            rows, cols = int(data['rows']), int(data['cols'])
            entries = data['entries']
        except (ValueError, KeyError, TypeError):
            raise InvalidParameter("matrix JSON needs rows, cols and entries")
        matrix = cls.from_rows([[gaussian_from_dict(e) for e in row] for row in entries])
        if matrix.shape != (rows, cols):
            raise InvalidParameter(f"declared shape {(rows, cols)} but entries give {matrix.shape}")
        return matrix

    @property
    def shape(self) -> Tuple[int, int]:
        return self.dm.shape

    @property
    def rows(self) -> int:
        return self.dm.shape[0]

    @property
    def cols(self) -> int:
        return self.dm.shape[1]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def entries(self) -> List[List[GaussianRational]]:
        return self.dm.to_list()

    def __getitem__(self, key: Tuple[int, int]) -> GaussianRational:
        i, j = key
        return self.dm.rep.getitem(i, j)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries() == other.entries()

    __hash__ = None

    def __add__(self, other: 'ExactMatrix') -> 'ExactMatrix':
        self._same_shape(other)
        return ExactMatrix(self.dm + other.dm)

    def __sub__(self, other: 'ExactMatrix') -> 'ExactMatrix':
        self._same_shape(other)
        return ExactMatrix(self.dm - other.dm)

    def __neg__(self) -> 'ExactMatrix':
        return ExactMatrix(-self.dm)

    def __mul__(self, other: 'ExactMatrix') -> 'ExactMatrix':
        if isinstance(other, ExactMatrix):
            if self.cols != other.rows:
                raise InvalidParameter(f"cannot multiply {self.shape} by {other.shape}")
            return ExactMatrix(self.dm * other.dm)
        return self.scale(other)

    __matmul__ = __mul__

    def __rmul__(self, other: Scalar) -> 'ExactMatrix':
        return self.scale(other)

    def _same_shape(self, other: 'ExactMatrix') -> None:
        if self.shape != other.shape:
            raise InvalidParameter(f"shapes differ: {self.shape} vs {other.shape}")

    def _need_square(self) -> None:
        if not self.is_square:
            raise InvalidParameter(f"square matrix required, got {self.shape}")

    def scale(self, value: Scalar) -> 'ExactMatrix':
        return ExactMatrix(self.dm * gaussian(value))

    def transpose(self) -> 'ExactMatrix':
        return ExactMatrix(self.dm.transpose())

    def adjoint(self) -> 'ExactMatrix':
        return ExactMatrix(self.dm.transpose().applyfunc(conjugate))

    def trace(self) -> GaussianRational:
        self._need_square()
        total = QQ_I.zero
        for i in range(self.rows):
            total += self[i, i]
        return total

    def det(self) -> GaussianRational:
        self._need_square()
        return self.dm.det()

    def is_invertible(self) -> bool:
        return self.is_square and bool(self.det())

    def inverse(self) -> 'ExactMatrix':
        if not self.is_invertible():
            raise InvalidParameter("matrix is singular")
        return ExactMatrix(self.dm.inv())

    def power(self, k: int) -> 'ExactMatrix':
        self._need_square()
        if k < 0:
            return self.inverse().power(-k)
        return ExactMatrix(self.dm ** k)

    def rank(self) -> int:
        return self.dm.rank()

    def nullspace(self) -> List['ExactMatrix']:
        """Basis of the right kernel as column vectors"""
        basis = self.dm.nullspace()
        if basis.shape[0] == 0:
            return []
        return [ExactMatrix(basis.extract([i], list(range(self.cols))).transpose())
                for i in range(basis.shape[0])]

    def is_zero(self) -> bool:
        return self.dm.is_zero_matrix

    def sub_block(self, row: int, col: int, height: int, width: int) -> 'ExactMatrix':
        return ExactMatrix(self.dm.extract(list(range(row, row + height)), list(range(col, col + width))))

    def kron(self, other: 'ExactMatrix') -> 'ExactMatrix':
        left, right = self.entries(), other.entries()
        grid = [[a * b for a in left_row for b in right_row]
                for left_row in left for right_row in right]
        return ExactMatrix(DomainMatrix(grid, (self.rows * other.rows, self.cols * other.cols), QQ_I))

    def vec(self) -> 'ExactMatrix':
        """Column-stacking vectorisation"""
        entries = self.entries()
        column = [[entries[i][j]] for j in range(self.cols) for i in range(self.rows)]
        return ExactMatrix(DomainMatrix(column, (self.rows * self.cols, 1), QQ_I))

    @classmethod
    def unvec(cls, vector: 'ExactMatrix', rows: int, cols: int) -> 'ExactMatrix':
        flat = [row[0] for row in vector.entries()]
        grid = [[flat[j * rows + i] for j in range(cols)] for i in range(rows)]
        return cls(DomainMatrix(grid, (rows, cols), QQ_I))

    def charpoly(self) -> PolyElement:
        """det(xI - A) as an element of QQ_I[x]"""
        self._need_square()
        return POLY_RING.from_list(self.dm.charpoly())

    def char_matrix(self) -> List[List[PolyElement]]:
        """Entries of xI - A"""
        entries = self.entries()
        return [[(X if i == j else POLY_RING.zero) - POLY_RING.ground_new(entries[i][j])
                 for j in range(self.cols)] for i in range(self.rows)]

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.to_numpy()))) if self.rows and self.cols else 0.0

    def to_numpy(self) -> np.ndarray:
        return np.array([[gaussian_to_complex(z) for z in row] for row in self.entries()], dtype=complex)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'rows': self.rows,
            'cols': self.cols,
            'entries': [[gaussian_to_dict(z) for z in row] for row in self.entries()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def __repr__(self) -> str:
        return f"ExactMatrix({[[str(z) for z in row] for row in self.entries()]})"


def poly_coefficients(poly: PolyElement) -> List[GaussianRational]:
    """Dense coefficient list, leading coefficient first"""
    return list(poly.to_dense()) if poly else []


def sylvester_resultant(f: PolyElement, g: PolyElement) -> GaussianRational:
    """Res(f, g) as the determinant of the Sylvester matrix"""
    a, b = poly_coefficients(f), poly_coefficients(g)
    if not a or not b:
        return QQ_I.zero
    m, n = len(a) - 1, len(b) - 1
    if m == 0 and n == 0:
        return QQ_I.one
    size = m + n
    rows = [[QQ_I.zero] * i + a + [QQ_I.zero] * (size - m - 1 - i) for i in range(n)]
    rows += [[QQ_I.zero] * i + b + [QQ_I.zero] * (size - n - 1 - i) for i in range(m)]
    return ExactMatrix(DomainMatrix(rows, (size, size), QQ_I)).det()


def poly_to_list(poly: PolyElement) -> List[Dict[str, List[str]]]:
    """Coefficients from the leading one down"""
    return [gaussian_to_dict(c) for c in poly_coefficients(poly)]


def poly_str(poly: PolyElement) -> str:
    return str(poly.as_expr())


@dataclass(frozen=True)
class InvariantFactors:
    """Monic chain f1 | f2 | ... | fk of nonconstant invariant factors"""
    factors: Tuple[PolyElement, ...]

    def __post_init__(self):
        object.__setattr__(self, 'factors', tuple(self.factors))
        for f in self.factors:
            if f.LC != QQ_I.one or f.degree() < 1:
                raise InvalidParameter(f"invariant factor {poly_str(f)} must be monic and nonconstant")
        for f, g in zip(self.factors, self.factors[1:]):
            if divmod(g, f)[1]:
                raise InvalidParameter(f"{poly_str(f)} does not divide {poly_str(g)}")

    def __len__(self) -> int:
        return len(self.factors)

    def product(self) -> PolyElement:
        result = POLY_RING.one
        for f in self.factors:
            result *= f
        return result

    @property
    def degree(self) -> int:
        return sum(f.degree() for f in self.factors)

    def doubled(self) -> 'InvariantFactors':
        return InvariantFactors(tuple(f for f in self.factors for _ in range(2)))

    def to_dict(self) -> Dict[str, Any]:
        return {'factors': [poly_str(f) for f in self.factors],
                'coefficients': [poly_to_list(f) for f in self.factors]}


def smith_invariant_factors(entries: List[List[PolyElement]]) -> InvariantFactors:
    """
    Smith normal form of a square matrix over QQ_I[x] by Euclidean row and
    column elimination; the nonconstant monic diagonal entries are returned
    """
    m = [row[:] for row in entries]
    size = len(m)
    diagonal: List[PolyElement] = []
    for t in range(size):
        while True:
            pivot = _min_degree_entry(m, t)
            if pivot is None:
                diagonal.extend([POLY_RING.zero] * (size - t))
                return _chain(diagonal)
            i, j = pivot
            m[t], m[i] = m[i], m[t]
            for row in m:
                row[t], row[j] = row[j], row[t]
            p = m[t][t]
            clean = True
            for i in range(t + 1, size):
                if m[i][t]:
                    q, r = divmod(m[i][t], p)
                    m[i] = [a - q * b for a, b in zip(m[i], m[t])]
                    clean = clean and not r
            for j in range(t + 1, size):
                if m[t][j]:
                    q, r = divmod(m[t][j], p)
                    for row in m:
                        row[j] = row[j] - q * row[t]
                    clean = clean and not r
            if not clean:
                continue
            offender = next(((i, j) for i in range(t + 1, size) for j in range(t + 1, size)
                             if divmod(m[i][j], p)[1]), None)
            if offender is None:
                diagonal.append(p.monic())
                break
            i, _ = offender
            m[t] = [a + b for a, b in zip(m[t], m[i])]
    return _chain(diagonal)


def _min_degree_entry(m: List[List[PolyElement]], t: int) -> Optional[Tuple[int, int]]:
    best = None
    best_degree = None
    size = len(m)
    for i in range(t, size):
        for j in range(t, size):
            if m[i][j]:
                degree = m[i][j].degree()
                if best_degree is None or degree < best_degree:
                    best, best_degree = (i, j), degree
    return best


def _chain(diagonal: List[PolyElement]) -> InvariantFactors:
    if any(not f for f in diagonal):
        raise InvalidParameter("characteristic matrix is singular over QQ_I[x]")
    return InvariantFactors(tuple(f for f in diagonal if f.degree() >= 1))
