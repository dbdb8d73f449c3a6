"""
Helper utility functions
"""
import csv
import io
import re
from fractions import Fraction
from typing import Any, Iterable, Sequence, Union

from utils.data_classes import (
    Angle,
    AngleGenerator,
    AngleSet,
    ForbiddenSet,
    IsometryDescriptor,
    NormalDescriptor,
    WeightSeq,
)
from utils.exceptions import InvalidParameter

_GENERATOR = re.compile(
    r'^(?P<kind>single|class|all):(?P<angle>-?\d+(?:/\d+)?)'
    r'(?:@(?P<order>\d+))?(?:\+(?P<rotation>\d+(?:/\d+)?))?(?P<finite>!)?$'
)


def parse_rational(text: str) -> Fraction:
    """Read "3", "-2/5" or "0.25" exactly"""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise InvalidParameter(f"not a rational number: {text!r}")


def parse_forbidden(text: str, base: int) -> ForbiddenSet:
    """Comma-separated indices, "1,3" means {b^1, b^3}; empty means B is empty"""
    text = text.strip()
    if not text:
        return ForbiddenSet((), base)
    try:
        indices = tuple(int(part) for part in text.split(','))
    except ValueError:
        raise InvalidParameter(f"forbidden set must list integers: {text!r}")
    return ForbiddenSet(indices, base)


def parse_angle_set(text: str) -> AngleSet:
    """
    Generators separated by spaces or semicolons:
    "single:1/3", "class:0/1@2", "class:0/1@2+1/3" (rotated class),
    "all:0/1" (S-class); a trailing "!" marks finite multiplicity
    """
    generators = []
    for token in re.split(r'[;\s]+', text.strip()):
        if not token:
            continue
        match = _GENERATOR.match(token)
        if not match:
            raise InvalidParameter(f"cannot read angle generator {token!r}")
        kind = match.group('kind')
        order = int(match.group('order') or 0)
        if kind == 'class' and not order:
            raise InvalidParameter(f"class generator {token!r} needs @n")
        rotation = Angle(parse_rational(match.group('rotation') or '0'))
        generators.append(AngleGenerator(
            angle=Angle(parse_rational(match.group('angle'))),
            kind=kind,
            order=order,
            rotation=rotation,
            infinite=match.group('finite') is None,
        ))
    if not generators:
        raise InvalidParameter("angle set needs at least one generator")
    return AngleSet(tuple(generators))


def parse_weight_seq(text: str) -> WeightSeq:
    """ "bilateral;0:2,5:3" or "unilateral;" (all ones) """
    kind, _, body = text.strip().partition(';')
    kind = kind.strip()
    weights = {}
    for item in filter(None, (part.strip() for part in body.split(','))):
        position, sep, weight = item.partition(':')
        if not sep:
            raise InvalidParameter(f"weight entry {item!r} must read position:weight")
        try:
            weights[int(position)] = parse_rational(weight)
        except ValueError:
            raise InvalidParameter(f"bad position in {item!r}")
    return WeightSeq.from_map(kind, weights)


def parse_descriptor(text: str) -> Union[IsometryDescriptor, NormalDescriptor]:
    """
    "normal:circle", "normal:disk", "normal:other", or an isometry
    "isometry:omega", "isometry:1+circle-spectrum", "isometry:0+single:1/3"
    """
    kind, _, body = text.strip().partition(':')
    if kind == 'normal':
        return NormalDescriptor(body.strip())
    if kind != 'isometry':
        raise InvalidParameter(f"cannot read descriptor {text!r}")
    multiplicity, _, unitary = body.partition('+')
    multiplicity = multiplicity.strip()
    if multiplicity == 'omega':
        shift = None
    elif multiplicity.isdigit():
        shift = int(multiplicity)
    else:
        raise InvalidParameter(f"shift multiplicity must be a count or omega, got {multiplicity!r}")
    unitary = unitary.strip()
    if not unitary:
        return IsometryDescriptor(shift)
    if unitary == 'circle-spectrum':
        return IsometryDescriptor(shift, unitary)
    return IsometryDescriptor(shift, parse_angle_set(unitary))


def serialize(value: Any) -> Any:
    """JSON-safe form; rationals become {num, den} strings"""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, Fraction):
        return {'num': str(value.numerator), 'den': str(value.denominator)}
    if isinstance(value, (int, float, str)):
        return value
    if isinstance(value, dict):
        return {str(key): serialize(item) for key, item in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = [serialize(item) for item in value]
        return sorted(items, key=repr) if isinstance(value, (set, frozenset)) else items
    if hasattr(value, 'to_dict'):
        return value.to_dict()
    return str(value)


def rational_rows_to_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)
    return buffer.getvalue()
