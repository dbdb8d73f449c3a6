from fractions import Fraction

from django.test import SimpleTestCase
from hypothesis import given, settings, strategies as st

from services.coding_service import CodingService
from utils.data_classes import ForbiddenSet, Word
from utils.exceptions import EnumerationTooLarge, InvalidParameter
from utils.helpers import parse_forbidden


class WordTests(SimpleTestCase):

    def test_parse_and_print(self):
        word = Word.parse('0102', 3)
        self.assertEqual(word.digits, (0, 1, 0, 2))
        self.assertEqual(str(word), '0102')
        self.assertEqual(Word.parse('1.0.12', 13).digits, (1, 0, 12))

    def test_digit_outside_base(self):
        with self.assertRaises(InvalidParameter):
            Word((0, 3), 3)
        with self.assertRaises(InvalidParameter):
            Word.parse('1x', 3)

    def test_base_below_three(self):
        with self.assertRaises(InvalidParameter):
            Word((0, 1), 2)

    def test_suffix_and_subword(self):
        word = Word.parse('20102', 3)
        self.assertTrue(word.ends_with(Word.parse('102', 3)))
        self.assertTrue(word.contains(Word.parse('010', 3)))
        self.assertFalse(word.contains(Word.parse('11', 3)))
        self.assertEqual(word.shift(), Word.parse('0102', 3))
        self.assertEqual(word.parent, Word.parse('2010', 3))


class ForbiddenSetTests(SimpleTestCase):

    def test_parse(self):
        forbidden = parse_forbidden('3,1', 3)
        self.assertEqual(forbidden.indices, (1, 3))
        self.assertEqual(forbidden.label, 'B-1_3')
        self.assertEqual([str(b) for b in forbidden.words()], ['102', '10002'])

    def test_empty(self):
        forbidden = parse_forbidden('', 4)
        self.assertTrue(forbidden.is_empty)
        self.assertEqual(forbidden.label, 'B-empty')

    def test_rejects_bad_indices(self):
        with self.assertRaises(InvalidParameter):
            parse_forbidden('0', 3)
        with self.assertRaises(InvalidParameter):
            parse_forbidden('a,b', 3)


class CodingServiceTests(SimpleTestCase):

    def setUp(self):
        self.coding = CodingService()
        self.forbidden = ForbiddenSet((1,), 3)

    def test_b_word(self):
        self.assertEqual(str(self.coding.b_word(2, 3)), '1002')
        with self.assertRaises(InvalidParameter):
            self.coding.b_word(0, 3)

    def test_pending_completion(self):
        self.assertEqual(self.coding.pending_completion(Word.parse('210', 3), self.forbidden),
                         Word.parse('2102', 3))
        self.assertIsNone(self.coding.pending_completion(Word.parse('1', 3), self.forbidden))
        self.assertIsNone(self.coding.pending_completion(Word.parse('100', 3), self.forbidden))

    def test_run_state(self):
        self.assertEqual(self.coding.run_state(Word.parse('1000', 3)), 3)
        self.assertIsNone(self.coding.run_state(Word.parse('102', 3)))
        self.assertIsNone(self.coding.run_state(Word.parse('00', 3)))

    def test_projection(self):
        self.assertEqual(self.coding.project_pi(Word.parse('102', 3)), Fraction(11, 27))
        self.assertEqual(self.coding.project_pi(Word.parse('22', 3)), Fraction(8, 9))
        interval = self.coding.cylinder_interval(Word.parse('22', 3))
        self.assertEqual(interval.right, Fraction(1))

    def test_b0_structure_has_no_overlaps(self):
        self.assertEqual(self.coding.check_b0_structure(6, 3), [])
        self.assertEqual(self.coding.check_b0_structure(4, 5), [])

    def test_enumeration_cap(self):
        coding = CodingService(cap=20)
        with self.assertRaises(EnumerationTooLarge):
            list(coding.enumerate_words(3, 3))

    @given(st.integers(min_value=0, max_value=4), st.integers(min_value=1, max_value=7))
    @settings(max_examples=25, deadline=None)
    def test_partition_slices_concatenate_to_enumeration(self, depth, parts):
        joined = [w for part in range(parts) for w in self.coding.enumerate_partition(depth, 3, part, parts)]
        self.assertEqual(joined, list(self.coding.enumerate_words(depth, 3)))
