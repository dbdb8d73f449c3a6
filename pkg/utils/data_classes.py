"""
Data classes for structured data handling
"""
import operator
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, Iterator, List, Optional, Tuple, Union

from utils.constants import RESOURCE_CAPS
from utils.exceptions import InvalidParameter

_RELATIONS: Dict[str, Callable[[Any, Any], bool]] = {
    '<=': operator.le,
    '<': operator.lt,
    '==': operator.eq,
    '!=': operator.ne,
    '>': operator.gt,
    '>=': operator.ge,
}


@dataclass(frozen=True)
class Word:
    """Finite digit string over {0..N-1}"""
    digits: Tuple[int, ...]
    base: int

    def __post_init__(self):
        if self.base < 3:
            raise InvalidParameter(f"base must be at least 3, got {self.base}")
        object.__setattr__(self, 'digits', tuple(self.digits))
        for digit in self.digits:
            if not (0 <= digit < self.base):
                raise InvalidParameter(f"digit {digit} outside [0, {self.base - 1}]")

    @classmethod
    def empty(cls, base: int) -> 'Word':
        return cls((), base)

    @classmethod
    def parse(cls, text: str, base: int) -> 'Word':
        """Read "102" or, for bases above 10, "1.0.12" """
        text = text.strip()
        if not text:
            return cls.empty(base)
        try:
            if '.' in text or base > 10:
                digits = tuple(int(part) for part in text.split('.'))
            else:
                digits = tuple(int(char) for char in text)
        except ValueError:
            raise InvalidParameter(f"cannot read word {text!r}")
        return cls(digits, base)

    def __len__(self) -> int:
        return len(self.digits)

    def __iter__(self) -> Iterator[int]:
        return iter(self.digits)

    def __str__(self) -> str:
        separator = '.' if self.base > 10 else ''
        return separator.join(str(d) for d in self.digits)

    def append(self, digit: int) -> 'Word':
        return Word(self.digits + (digit,), self.base)

    def concat(self, other: 'Word') -> 'Word':
        if other.base != self.base:
            raise InvalidParameter("cannot concatenate words of different bases")
        return Word(self.digits + other.digits, self.base)

    def prefix(self, k: int) -> 'Word':
        return Word(self.digits[:k], self.base)

    @property
    def parent(self) -> 'Word':
        """The word with its last digit removed"""
        if not self.digits:
            raise InvalidParameter("the empty word has no parent")
        return Word(self.digits[:-1], self.base)

    def shift(self) -> 'Word':
        """Drop the first digit"""
        return Word(self.digits[1:], self.base)

    def ends_with(self, other: 'Word') -> bool:
        return len(other) <= len(self) and self.digits[len(self) - len(other):] == other.digits

    def contains(self, other: 'Word') -> bool:
        m = len(other)
        return any(self.digits[i:i + m] == other.digits for i in range(len(self) - m + 1))


@dataclass(frozen=True)
class ForbiddenSet:
    """Finite set of forbidden words b^i = 1 0^i 2, stored by index"""
    indices: Tuple[int, ...]
    base: int

    def __post_init__(self):
        if self.base < 3:
            raise InvalidParameter(f"base must be at least 3, got {self.base}")
        indices = tuple(sorted(set(self.indices)))
        for index in indices:
            if index < 1:
                raise InvalidParameter(f"forbidden index must be positive, got {index}")
            if index > RESOURCE_CAPS['FORBIDDEN_INDEX']:
                raise InvalidParameter(f"forbidden index {index} above cap")
        object.__setattr__(self, 'indices', indices)

    def __len__(self) -> int:
        return len(self.indices)

    def __contains__(self, index: int) -> bool:
        return index in self.indices

    @property
    def is_empty(self) -> bool:
        return not self.indices

    @property
    def label(self) -> str:
        if not self.indices:
            return 'B-empty'
        return 'B-' + '_'.join(str(i) for i in self.indices)

    def words(self) -> List[Word]:
        return [Word((1,) + (0,) * i + (2,), self.base) for i in self.indices]

    def without(self, other: 'ForbiddenSet') -> 'ForbiddenSet':
        return ForbiddenSet(tuple(i for i in self.indices if i not in other.indices), self.base)

    def to_dict(self) -> Dict[str, Any]:
        return {'base': self.base, 'indices': list(self.indices), 'label': self.label}


@dataclass(frozen=True)
class CylinderInterval:
    """N-adic interval pi([i])"""
    left: Fraction
    width: Fraction

    def __post_init__(self):
        if self.left < 0 or self.left + self.width > 1:
            raise InvalidParameter("cylinder interval must lie in [0, 1]")

    @property
    def right(self) -> Fraction:
        return self.left + self.width

    def to_dict(self) -> Dict[str, Any]:
        from utils.helpers import serialize
        return {'left': serialize(self.left), 'width': serialize(self.width)}


MEASURE_KINDS = ('nu', 'nu_tilde', 'mu0', 'mu', 'mu_normalized')


@dataclass(frozen=True)
class MeasureSpec:
    """Which approximant to build"""
    forbidden: ForbiddenSet
    kind: str
    depth: int
    base_depth: int = 0

    def __post_init__(self):
        if self.kind not in MEASURE_KINDS:
            raise InvalidParameter(f"unknown measure kind {self.kind!r}")
        if self.depth < 0 or self.base_depth < 0:
            raise InvalidParameter("depths must be non-negative")

    @property
    def base(self) -> int:
        return self.forbidden.base

    @property
    def nominal_mass(self) -> Fraction:
        return Fraction(self.base) if self.kind == 'mu' else Fraction(1)


@dataclass
class Check:
    """One recomputable comparison inside a certificate"""
    label: str
    lhs: Any
    relation: str
    rhs: Any
    required: bool = True

    def __post_init__(self):
        if self.relation not in _RELATIONS:
            raise InvalidParameter(f"unknown relation {self.relation!r}")

    @property
    def holds(self) -> bool:
        return bool(_RELATIONS[self.relation](self.lhs, self.rhs))

    def to_dict(self) -> Dict[str, Any]:
        from utils.helpers import serialize
        return {
            'label': self.label,
            'lhs': serialize(self.lhs),
            'relation': self.relation,
            'rhs': serialize(self.rhs),
            'required': self.required,
            'holds': self.holds,
        }


@dataclass
class Certificate:
    """Finite-resolution evidence for one statement"""
    name: str
    params: Dict[str, Any] = field(default_factory=dict)
    checks: List[Check] = field(default_factory=list)
    quantities: Dict[str, Any] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)

    def check(self, label: str, lhs: Any, relation: str, rhs: Any, required: bool = True) -> bool:
        entry = Check(label, lhs, relation, rhs, required)
        self.checks.append(entry)
        return entry.holds

    @property
    def passed(self) -> bool:
        return all(c.holds for c in self.checks if c.required)

    @property
    def failures(self) -> List[Check]:
        return [c for c in self.checks if c.required and not c.holds]

    def to_dict(self) -> Dict[str, Any]:
        from utils.helpers import serialize
        return {
            'name': self.name,
            'params': serialize(self.params),
            'passed': self.passed,
            'checks': [c.to_dict() for c in self.checks],
            'quantities': serialize(self.quantities),
            'notes': list(self.notes),
        }


@dataclass
class SuiteEntry:
    """A certificate slot of a report: run, failed with an error, or skipped"""
    family: str
    name: str
    certificate: Optional[Certificate] = None
    skipped: Optional[str] = None
    error: Optional[Dict[str, Any]] = None

    @property
    def passed(self) -> bool:
        return self.certificate is not None and self.certificate.passed

    @property
    def executed(self) -> bool:
        return self.skipped is None

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {'family': self.family, 'name': self.name, 'passed': self.passed}
        if self.certificate is not None:
            data['certificate'] = self.certificate.to_dict()
        if self.skipped is not None:
            data['skipped'] = self.skipped
        if self.error is not None:
            data['error'] = self.error
        return data


@dataclass
class SuiteConfig:
    """Validated configuration of a suite run"""
    base: int = 3
    forbidden: List[str] = field(default_factory=lambda: ['1'])
    depth: int = 6
    base_depth: int = 2
    resolution: int = 5
    n: int = 2
    seed: int = 42
    cap: int = 2 ** 22
    families: List[str] = field(default_factory=lambda: ['measure', 'operator', 'shift', 'bell'])
    operator_samples: int = 10
    shift_samples: int = 20
    angles: List[str] = field(default_factory=list)
    weights: List[str] = field(default_factory=list)
    emit: List[str] = field(default_factory=lambda: ['json'])
    report: str = 'reports'
    float_mode: bool = True

    def __post_init__(self):
        if self.base < 3:
            raise InvalidParameter(f"N must be at least 3, got {self.base}")
        if self.n < 1:
            raise InvalidParameter(f"n must be positive, got {self.n}")
        for name in ('depth', 'base_depth', 'resolution', 'operator_samples', 'shift_samples'):
            if getattr(self, name) < 0:
                raise InvalidParameter(f"{name} must be non-negative")
        if self.cap < 1:
            raise InvalidParameter("cap must be positive")

    def forbidden_sets(self) -> List[ForbiddenSet]:
        from utils.helpers import parse_forbidden
        return [parse_forbidden(text, self.base) for text in self.forbidden]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'N': self.base,
            'forbidden': list(self.forbidden),
            'depth': self.depth,
            'base_depth': self.base_depth,
            'resolution': self.resolution,
            'n': self.n,
            'seed': self.seed,
            'cap': self.cap,
            'families': list(self.families),
            'operator_samples': self.operator_samples,
            'shift_samples': self.shift_samples,
            'angles': list(self.angles),
            'weights': list(self.weights),
            'emit': list(self.emit),
            'float_mode': self.float_mode,
        }


@dataclass
class Report:
    """Outcome of a suite run"""
    version: str
    config: SuiteConfig
    entries: List[SuiteEntry] = field(default_factory=list)
    timings: Dict[str, float] = field(default_factory=dict)
    tables: Dict[str, str] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries if e.executed)

    def to_dict(self) -> Dict[str, Any]:
        executed = [e for e in self.entries if e.executed]
        return {
            'version': self.version,
            'config': self.config.to_dict(),
            'certificates': [e.to_dict() for e in self.entries],
            'summary': {
                'executed': len(executed),
                'passed': sum(1 for e in executed if e.passed),
                'skipped': len(self.entries) - len(executed),
                'all_passed': self.passed,
            },
        }


@dataclass(frozen=True)
class Angle:
    """Rational angle mod 1 standing for e^(2 pi i value)"""
    value: Fraction

    def __post_init__(self):
        value = Fraction(self.value)
        object.__setattr__(self, 'value', value - (value.numerator // value.denominator))

    def __add__(self, other: 'Angle') -> 'Angle':
        return Angle(self.value + other.value)

    def __sub__(self, other: 'Angle') -> 'Angle':
        return Angle(self.value - other.value)

    def times(self, n: int) -> 'Angle':
        return Angle(self.value * n)

    def sort_key(self) -> Tuple[int, int]:
        return (self.value.denominator, self.value.numerator)

    def __lt__(self, other: 'Angle') -> bool:
        return self.value < other.value

    def __str__(self) -> str:
        return f"{self.value.numerator}/{self.value.denominator}"


GENERATOR_KINDS = ('single', 'class', 'all')


@dataclass(frozen=True)
class AngleGenerator:
    """single(a), the class S_n(a) shifted by a rotation, or S(a)"""
    angle: Angle
    kind: str = 'single'
    order: int = 0
    rotation: Angle = Angle(Fraction(0))
    infinite: bool = True

    def __post_init__(self):
        if self.kind not in GENERATOR_KINDS:
            raise InvalidParameter(f"unknown angle generator kind {self.kind!r}")
        if self.kind == 'class' and self.order < 2:
            raise InvalidParameter("class generators need an order n >= 2")

    @property
    def representative(self) -> Angle:
        return self.angle + self.rotation

    def rotate(self, theta: Angle) -> 'AngleGenerator':
        if self.kind == 'single':
            return AngleGenerator(self.angle + theta, 'single', 0, self.rotation, self.infinite)
        return AngleGenerator(self.angle, self.kind, self.order, self.rotation + theta, self.infinite)

    def __str__(self) -> str:
        flag = '' if self.infinite else '!'
        if self.kind == 'single':
            return f"single:{self.angle}{flag}"
        if self.kind == 'all':
            return f"all:{self.angle}{flag}"
        rotation = f"+{self.rotation}" if self.rotation.value else ''
        return f"class:{self.angle}@{self.order}{rotation}{flag}"


@dataclass(frozen=True)
class AngleSet:
    """Point spectrum of a diagonal unitary given by generators"""
    generators: Tuple[AngleGenerator, ...]

    def __post_init__(self):
        object.__setattr__(self, 'generators', tuple(self.generators))

    def rotate(self, theta: Angle) -> 'AngleSet':
        return AngleSet(tuple(g.rotate(theta) for g in self.generators))

    def __str__(self) -> str:
        return ' '.join(str(g) for g in self.generators)


@dataclass(frozen=True)
class WeightSeq:
    """Eventually-1 weight sequence of a weighted shift"""
    kind: str
    exceptional: Tuple[Tuple[int, Fraction], ...] = ()

    def __post_init__(self):
        if self.kind not in ('bilateral', 'unilateral'):
            raise InvalidParameter(f"unknown weight sequence kind {self.kind!r}")
        cleaned = {}
        for position, weight in self.exceptional:
            weight = Fraction(weight)
            if weight <= 0:
                raise InvalidParameter(f"weights must be positive, got {weight} at {position}")
            if self.kind == 'unilateral' and position < 0:
                raise InvalidParameter("unilateral positions start at 0")
            if weight != 1:
                cleaned[int(position)] = weight
        object.__setattr__(self, 'exceptional', tuple(sorted(cleaned.items())))

    @classmethod
    def from_map(cls, kind: str, weights: Dict[int, Union[int, Fraction]]) -> 'WeightSeq':
        return cls(kind, tuple((p, Fraction(w)) for p, w in weights.items()))

    @property
    def support(self) -> List[int]:
        return [p for p, _ in self.exceptional]

    def weight(self, position: int) -> Fraction:
        return dict(self.exceptional).get(position, Fraction(1))

    @property
    def gap(self) -> Optional[int]:
        """d(W): smallest distance between exceptional positions"""
        support = self.support
        if len(support) < 2:
            return None
        return min(b - a for a, b in zip(support, support[1:]))

    def __str__(self) -> str:
        body = ','.join(f"{p}:{w}" for p, w in self.exceptional)
        return f"{self.kind};{body}"


@dataclass(frozen=True)
class IsometryDescriptor:
    """Wold form S^(alpha) + U; shift_multiplicity None stands for omega"""
    shift_multiplicity: Optional[int]
    unitary: Union[AngleSet, str, None] = None

    def __post_init__(self):
        if self.shift_multiplicity is not None and self.shift_multiplicity < 0:
            raise InvalidParameter("shift multiplicity must be non-negative")
        if isinstance(self.unitary, str) and self.unitary != 'circle-spectrum':
            raise InvalidParameter(f"unknown unitary token {self.unitary!r}")
        if self.shift_multiplicity == 0 and self.unitary is None:
            raise InvalidParameter("an isometry needs a shift part or a unitary part")


@dataclass(frozen=True)
class NormalDescriptor:
    """Normal operator known only through a spectrum token"""
    spectrum: str

    def __post_init__(self):
        if self.spectrum not in ('circle', 'disk', 'other'):
            raise InvalidParameter(f"unknown spectrum token {self.spectrum!r}")


@dataclass
class Decision:
    """Outcome of a stability decision procedure"""
    subject: str
    stable: bool
    mode: str = 'unitary'
    witness: Optional[Any] = None
    reason: str = ''
    partition: List[Any] = field(default_factory=list)
    data: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        from utils.helpers import serialize
        return {
            'subject': self.subject,
            'stable': self.stable,
            'mode': self.mode,
            'witness': serialize(self.witness),
            'reason': self.reason,
            'partition': serialize(self.partition),
            'data': serialize(self.data),
        }


@dataclass(frozen=True)
class SpechtResult:
    """Outcome of the two-letter trace-word comparison"""
    equivalent: bool
    word: Optional[str]
    trace_a: Optional[str]
    trace_b: Optional[str]
    length: int
    words_checked: int
    bound_met: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            'equivalent': self.equivalent,
            'word': self.word,
            'traces': [self.trace_a, self.trace_b] if self.word else None,
            'length': self.length,
            'words_checked': self.words_checked,
            'bound_met': self.bound_met,
        }
