"""
Exact checks of the Bell-ring counterexample: T = S * Q{x, y} with
S = Q[a, b, c]/(a^2 - bc - 1)
"""
import logging
from fractions import Fraction
from typing import Dict, Iterable, List, Tuple

import sympy

from utils.data_classes import Certificate
from utils.exact import ExactMatrix
from utils.exceptions import InvalidParameter

logger = logging.getLogger(__name__)

COMMUTING_LETTERS = ('a', 'b', 'c')
FREE_LETTERS = ('x', 'y')
LETTERS = COMMUTING_LETTERS + FREE_LETTERS

# Images of the generators under Phi
PHI_IMAGES = {
    'a': ((0, 1), (1, 0)),
    'b': ((0, 0), (0, 0)),
    'c': ((0, 0), (0, 0)),
    'x': ((1, 0), (0, -1)),
    'y': ((-1, 0), (0, 1)),
}

Monomial = Tuple[str, ...]


def normalize_word(word: Iterable[str]) -> Monomial:
    """Sort each maximal run of a, b, c; x and y stay where they are"""
    result: List[str] = []
    run: List[str] = []
    for letter in word:
        if letter not in LETTERS:
            raise InvalidParameter(f"unknown letter {letter!r}")
        if letter in COMMUTING_LETTERS:
            run.append(letter)
            continue
        result.extend(sorted(run))
        run = []
        result.append(letter)
    result.extend(sorted(run))
    return tuple(result)


class FreeExpr:
    """Rational combination of words in T, kept in canonical form"""

    __slots__ = ('terms',)

    def __init__(self, terms: Dict[Monomial, Fraction] = None):
        merged: Dict[Monomial, Fraction] = {}
        for word, coeff in (terms or {}).items():
            key = normalize_word(word)
            merged[key] = merged.get(key, Fraction(0)) + Fraction(coeff)
        self.terms = {w: c for w, c in sorted(merged.items()) if c}

    @classmethod
    def letter(cls, name: str) -> 'FreeExpr':
        return cls({(name,): Fraction(1)})

    @classmethod
    def word(cls, text: str, coeff: Fraction = Fraction(1)) -> 'FreeExpr':
        return cls({tuple(text): coeff})

    @classmethod
    def one(cls) -> 'FreeExpr':
        return cls({(): Fraction(1)})

    @classmethod
    def zero(cls) -> 'FreeExpr':
        return cls()

    def __add__(self, other: 'FreeExpr') -> 'FreeExpr':
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms.get(w, Fraction(0)) + c
        return FreeExpr(terms)

    def __neg__(self) -> 'FreeExpr':
        return FreeExpr({w: -c for w, c in self.terms.items()})

    def __sub__(self, other: 'FreeExpr') -> 'FreeExpr':
        return self + (-other)

    def __mul__(self, other: 'FreeExpr') -> 'FreeExpr':
        terms: Dict[Monomial, Fraction] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                key = normalize_word(w1 + w2)
                terms[key] = terms.get(key, Fraction(0)) + c1 * c2
        return FreeExpr(terms)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FreeExpr) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(tuple(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def __str__(self) -> str:
        if not self.terms:
            return '0'
        parts = []
        for word, coeff in self.terms.items():
            body = ''.join(word) or '1'
            parts.append(body if coeff == 1 else f"-{body}" if coeff == -1 else f"{coeff}*{body}")
        return ' + '.join(parts).replace('+ -', '- ')


def ideal_generators() -> Dict[str, FreeExpr]:
    """s x - y s for s in a, b, c"""
    return {f"{s}x-y{s}": FreeExpr.word(f"{s}x") - FreeExpr.word(f"y{s}") for s in COMMUTING_LETTERS}


class BellRingVerifier:
    """
    Service verifying that M = [[a, b], [c, a]] intertwines x (+) x and
    y (+) y in R = T/I, that det M = 1 in S, and that Phi is a homomorphism
    separating x from y
    """

    def __init__(self):
        self.phi_letters = {name: ExactMatrix.from_rows(rows) for name, rows in PHI_IMAGES.items()}

    def phi_word(self, word: Iterable[str]) -> ExactMatrix:
        result = ExactMatrix.identity(2)
        for letter in word:
            result = result * self.phi_letters[letter]
        return result

    def phi(self, expr: FreeExpr) -> ExactMatrix:
        total = ExactMatrix.zeros(2)
        for word, coeff in expr.terms.items():
            total = total + self.phi_word(word).scale(coeff)
        return total

    def verify_phi_homomorphism(self) -> Certificate:
        cert = Certificate('bell_phi_homomorphism')
        for label, generator in ideal_generators().items():
            cert.check(f"Phi({label}) = 0", self.phi(generator).is_zero(), '==', True)
        relation = FreeExpr.word('aa') - FreeExpr.word('bc') - FreeExpr.one()
        cert.check('Phi(a^2 - bc - 1) = 0', self.phi(relation).is_zero(), '==', True)
        cert.check('Phi(x) != Phi(y)', self.phi_letters['x'] != self.phi_letters['y'], '==', True)
        cert.quantities['images'] = {name: m for name, m in self.phi_letters.items()}
        return cert

    def conjugation_entries(self) -> List[List[FreeExpr]]:
        """Entries of M (x (+) x) - (y (+) y) M"""
        a, b, c = (FreeExpr.letter(s) for s in COMMUTING_LETTERS)
        x, y = FreeExpr.letter('x'), FreeExpr.letter('y')
        m = [[a, b], [c, a]]
        return [[m[i][j] * x - y * m[i][j] for j in range(2)] for i in range(2)]

    def verify_conjugation_identity(self) -> Certificate:
        cert = Certificate('bell_conjugation_identity')
        generators = ideal_generators()
        matches = {}
        for i, row in enumerate(self.conjugation_entries()):
            for j, entry in enumerate(row):
                name = next((label for label, g in generators.items() if entry == g or entry == -g), None)
                matches[f"({i + 1},{j + 1})"] = name or str(entry)
                cert.check(f"entry ({i + 1},{j + 1}) is an ideal generator", name is not None, '==', True)
        cert.quantities['entries'] = matches
        return cert

    def verify_determinant_unit(self) -> Certificate:
        cert = Certificate('bell_determinant_unit')
        a, b, c = sympy.symbols('a b c')
        relation = a ** 2 - b * c - 1

        def modulo(poly):
            return sympy.reduced(sympy.expand(poly), [relation], a, b, c, order='lex')[1]

        m = sympy.Matrix([[a, b], [c, a]])
        adjugate = sympy.Matrix([[a, -b], [-c, a]])
        det = m.det()
        cert.check('det M reduces to 1', modulo(det) == 1, '==', True)
        product = (m * adjugate).applyfunc(modulo)
        cert.check('M [[a, -b], [-c, a]] reduces to I', product == sympy.eye(2), '==', True)
        cert.check('relation reduces to 0', modulo(relation) == 0, '==', True)
        cert.quantities.update({'det': str(det), 'inverse': str(adjugate.tolist())})
        return cert

    def verify_all(self) -> List[Certificate]:
        logger.info("Verifying the Bell-ring identities")
        return [self.verify_phi_homomorphism(), self.verify_conjugation_identity(), self.verify_determinant_unit()]
