"""
Symbolic coding: forbidden words, pending completions and N-adic projection
"""
import itertools
import logging
from fractions import Fraction
from typing import Iterator, List, Optional

from utils.constants import RESOURCE_CAPS
from utils.data_classes import CylinderInterval, ForbiddenSet, Word
from utils.exceptions import EnumerationTooLarge, InvalidParameter

logger = logging.getLogger(__name__)

# Run state of the suffix automaton: None, or the number of zeros after the last 1
RunState = Optional[int]


class CodingService:
    """
    Service for words over {0..N-1} and the forbidden set B inside
    B0 = {1 0^i 2 : i >= 1}
    """

    def __init__(self, cap: Optional[int] = None):
        self.cap = cap if cap is not None else RESOURCE_CAPS['WORDS']

    def b_word(self, i: int, base: int) -> Word:
        """b^i = 1 0^i 2"""
        if i < 1:
            raise InvalidParameter(f"forbidden index must be at least 1, got {i}")
        if base < 3:
            raise InvalidParameter(f"base must be at least 3, got {base}")
        return Word((1,) + (0,) * i + (2,), base)

    def pending_completion(self, word: Word, forbidden: ForbiddenSet) -> Optional[Word]:
        """
        The word completed by a trailing 2 when some b in B becomes its suffix.

        B(i) holds at most one element: b^j ends in "1 0^j 2" and the run of
        zeros before the final 2 fixes j.
        """
        if word.base != forbidden.base:
            raise InvalidParameter("word and forbidden set use different bases")
        candidate = word.append(2)
        matches = [b for b in forbidden.words() if candidate.ends_with(b)]
        assert len(matches) <= 1, "members of B0 cannot share a suffix"
        return candidate if matches else None

    def advance(self, state: RunState, digit: int) -> RunState:
        """Step the suffix automaton tracking the trailing "1 0^j" run"""
        if digit == 1:
            return 0
        if digit == 0 and state is not None:
            return state + 1
        return None

    def run_state(self, word: Word) -> RunState:
        state: RunState = None
        for digit in word:
            state = self.advance(state, digit)
        return state

    def is_pending(self, state: RunState, forbidden: ForbiddenSet) -> bool:
        """Whether appending a 2 in this state completes a member of B"""
        return state is not None and state in forbidden

    def project_pi(self, word: Word) -> Fraction:
        """pi(i) = sum of i_k N^-k"""
        value = Fraction(0)
        scale = Fraction(1)
        for digit in word:
            scale /= word.base
            value += digit * scale
        return value

    def cylinder_interval(self, word: Word) -> CylinderInterval:
        return CylinderInterval(self.project_pi(word), Fraction(1, word.base ** len(word)))

    def guard(self, count: int, what: str = 'words') -> None:
        if count > self.cap:
            logger.warning(f"Refusing to enumerate {count} {what} (cap {self.cap})")
            raise EnumerationTooLarge(f"{count} {what} exceed cap {self.cap}",
                                      {'count': count, 'cap': self.cap})

    def enumerate_words(self, depth: int, base: int) -> Iterator[Word]:
        """All words of length `depth` in lexicographic order"""
        if depth < 0:
            raise InvalidParameter(f"depth must be non-negative, got {depth}")
        self.guard(base ** depth)
        for digits in itertools.product(range(base), repeat=depth):
            yield Word(digits, base)

    def enumerate_partition(self, depth: int, base: int, part: int, parts: int) -> Iterator[Word]:
        """
        The words whose first-digit block falls in slice `part` of `parts`;
        concatenating the slices in order gives enumerate_words
        """
        if not (0 <= part < parts):
            raise InvalidParameter(f"part {part} outside 0..{parts - 1}")
        self.guard(base ** depth)
        total = base ** depth
        start = part * total // parts
        stop = (part + 1) * total // parts
        for index in range(start, stop):
            digits = []
            for _ in range(depth):
                index, digit = divmod(index, base)
                digits.append(digit)
            yield Word(tuple(reversed(digits)), base)

    def enumerate_upto(self, depth: int, base: int) -> Iterator[Word]:
        """Words of length 0..depth, shorter first"""
        self.guard(sum(base ** k for k in range(depth + 1)))
        for length in range(depth + 1):
            yield from self.enumerate_words(length, base)

    def check_b0_structure(self, max_index: int, base: int) -> List[str]:
        """
        Violations of the B0 overlap rules among b^1..b^max_index:
        no nontrivial prefix of a member is a suffix of a member and no member
        is a subword of another
        """
        words = [self.b_word(i, base) for i in range(1, max_index + 1)]
        violations = []
        for u in words:
            for v in words:
                for k in range(1, len(u)):
                    if v.ends_with(u.prefix(k)):
                        violations.append(f"prefix {u.prefix(k)} of {u} is a suffix of {v}")
                if u is not v and v.contains(u):
                    violations.append(f"{u} is a subword of {v}")
        return violations
