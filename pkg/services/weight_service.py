"""
Exact weight recursions p and p-tilde for a forbidden set
"""
import logging
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import sympy

from services.coding_service import CodingService, RunState
from utils.constants import TOLERANCES
from utils.data_classes import ForbiddenSet, Word
from utils.exceptions import InvalidParameter
from utils.helpers import rational_rows_to_csv

logger = logging.getLogger(__name__)

WEIGHT_CSV_HEADER = ('word', 'p_num', 'p_den', 'ptilde_num', 'ptilde_den')

_ONE = Fraction(1)
_ZERO = Fraction(0)


def decay_constant(base: int, bits: int = TOLERANCES['C_N_BITS']) -> Fraction:
    """
    Rational upper bound ceil(C_N 2^bits) / 2^bits of
    C_N = ((N-1)/2)^(log2(N-1))
    """
    exact = sympy.Rational(base - 1, 2) ** sympy.log(base - 1, 2)
    scaled = sympy.ceiling(exact * 2 ** bits)
    return Fraction(int(scaled), 2 ** bits)


class WeightTable:
    """
    Memoized weights of one (N, B) pair.

    A word's weight is the product of its step factors p_k. When the prefix
    before position k ends in "1 0^j" with j in B, the completing digit 2 gets
    2^-k (p) or 0 (p-tilde) and every other digit gets (1 - 2^-k)/(N-1)
    (p) or 1/(N-1) (p-tilde); otherwise each digit gets 1/N.
    """

    def __init__(self, forbidden: ForbiddenSet, coding: Optional[CodingService] = None):
        self.forbidden = forbidden
        self.base = forbidden.base
        self.coding = coding or CodingService()
        # word digits -> (p, p_tilde, run state)
        self._cache: Dict[Tuple[int, ...], Tuple[Fraction, Fraction, RunState]] = {(): (_ONE, _ONE, None)}
        self._c_n: Optional[Fraction] = None

    def step_factor(self, state: RunState, position: int, digit: int, tilde: bool = False) -> Fraction:
        """p_k for the digit placed at 1-based `position` after a prefix in `state`"""
        if self.coding.is_pending(state, self.forbidden):
            if digit == 2:
                return _ZERO if tilde else Fraction(1, 2 ** position)
            if tilde:
                return Fraction(1, self.base - 1)
            return (1 - Fraction(1, 2 ** position)) / (self.base - 1)
        return Fraction(1, self.base)

    def _entry(self, word: Word) -> Tuple[Fraction, Fraction, RunState]:
        if word.base != self.base:
            raise InvalidParameter("word and weight table use different bases")
        digits = word.digits
        cached = self._cache.get(digits)
        if cached is not None:
            return cached
        k = len(digits)
        while digits[:k] not in self._cache:
            k -= 1
        p, p_tilde, state = self._cache[digits[:k]]
        for position in range(k + 1, len(digits) + 1):
            digit = digits[position - 1]
            p = p * self.step_factor(state, position, digit)
            p_tilde = p_tilde * self.step_factor(state, position, digit, tilde=True)
            state = self.coding.advance(state, digit)
            self._cache[digits[:position]] = (p, p_tilde, state)
        return p, p_tilde, state

    def p(self, word: Word) -> Fraction:
        return self._entry(word)[0]

    def p_tilde(self, word: Word) -> Fraction:
        return self._entry(word)[1]

    def weight(self, word: Word, tilde: bool = False) -> Fraction:
        return self.p_tilde(word) if tilde else self.p(word)

    def state(self, word: Word) -> RunState:
        return self._entry(word)[2]

    def is_pending(self, word: Word) -> bool:
        return self.coding.is_pending(self.state(word), self.forbidden)

    def factors(self, word: Word, tilde: bool = False) -> List[Fraction]:
        """[p_1(i|1), ..., p_K(i|K)]"""
        result = []
        state: RunState = None
        for position, digit in enumerate(word, start=1):
            result.append(self.step_factor(state, position, digit, tilde))
            state = self.coding.advance(state, digit)
        return result

    def check_consistency(self, word: Word, tilde: bool = False) -> Tuple[Fraction, Fraction, bool]:
        """Mass of i splits exactly among its successors"""
        lhs = sum((self.weight(word.append(j), tilde) for j in range(self.base)), _ZERO)
        rhs = self.weight(word, tilde)
        return lhs, rhs, lhs == rhs

    @property
    def c_n(self) -> Fraction:
        if self._c_n is None:
            self._c_n = decay_constant(self.base)
        return self._c_n

    def decay_bounds(self, length: int) -> Tuple[Fraction, Fraction]:
        """(C_N (N-1)^-K, (N-1)^-K)"""
        scale = Fraction(1, (self.base - 1) ** length)
        return self.c_n * scale, scale

    def check_decay(self, word: Word) -> bool:
        bound, tilde_bound = self.decay_bounds(len(word))
        return self.p(word) <= bound and self.p_tilde(word) <= tilde_bound

    def rows(self, depth: int) -> List[List[str]]:
        rows = []
        for word in self.coding.enumerate_upto(depth, self.base):
            p, p_tilde, _ = self._entry(word)
            rows.append([str(word), str(p.numerator), str(p.denominator),
                         str(p_tilde.numerator), str(p_tilde.denominator)])
        return rows

    def to_csv(self, depth: int) -> str:
        logger.info(f"Dumping weights of {self.forbidden.label} to depth {depth}")
        return rational_rows_to_csv(WEIGHT_CSV_HEADER, self.rows(depth))
