from fractions import Fraction

from django.test import SimpleTestCase
from hypothesis import given, settings, strategies as st

from services.coding_service import CodingService
from services.weight_service import WeightTable, decay_constant
from utils.data_classes import ForbiddenSet, Word


def word(text):
    return Word.parse(text, 3)


class WeightValueTests(SimpleTestCase):

    def setUp(self):
        self.table = WeightTable(ForbiddenSet((1,), 3))

    def test_forbidden_word_weight(self):
        self.assertEqual(self.table.p(word('102')), Fraction(1, 72))
        self.assertEqual(self.table.p_tilde(word('102')), 0)

    def test_sibling_of_forbidden_word(self):
        self.assertEqual(self.table.p(word('100')), Fraction(7, 144))
        self.assertEqual(self.table.p_tilde(word('100')), Fraction(1, 18))

    def test_unconstrained_words_are_uniform(self):
        self.assertEqual(self.table.p(word('010')), Fraction(1, 27))
        self.assertEqual(self.table.p(word('')), 1)

    def test_later_completion_is_smaller(self):
        self.assertEqual(self.table.p(word('0102')), Fraction(1, 432))
        self.assertEqual(self.table.p(word('102')) / self.table.p(word('0102')), 6)

    def test_factors_multiply_to_weight(self):
        factors = self.table.factors(word('0102'))
        self.assertEqual(factors, [Fraction(1, 3)] * 3 + [Fraction(1, 16)])

    def test_pending(self):
        self.assertTrue(self.table.is_pending(word('10')))
        self.assertFalse(self.table.is_pending(word('100')))

    def test_csv_lists_every_word_to_depth(self):
        lines = self.table.to_csv(2).splitlines()
        self.assertEqual(lines[0], 'word,p_num,p_den,ptilde_num,ptilde_den')
        self.assertEqual(len(lines), 1 + 1 + 3 + 9)


class DecayConstantTests(SimpleTestCase):

    def test_base_three(self):
        self.assertEqual(decay_constant(3), 1)

    def test_base_four_upper_bound(self):
        c = decay_constant(4)
        self.assertEqual(c.denominator & (c.denominator - 1), 0)
        self.assertGreater(c, Fraction(190, 100))
        self.assertLess(c, Fraction(191, 100))


forbidden_sets = st.builds(
    ForbiddenSet,
    st.lists(st.integers(min_value=1, max_value=3), max_size=3).map(tuple),
    st.integers(min_value=3, max_value=5),
)


class WeightPropertyTests(SimpleTestCase):

    @given(forbidden_sets, st.integers(min_value=0, max_value=3))
    @settings(max_examples=30, deadline=None)
    def test_weights_are_probabilities_at_every_depth(self, forbidden, depth):
        table = WeightTable(forbidden)
        words = list(CodingService().enumerate_words(depth, forbidden.base))
        self.assertEqual(sum(table.p(w) for w in words), 1)
        self.assertEqual(sum(table.p_tilde(w) for w in words), 1)
        for w in words:
            self.assertTrue(table.check_consistency(w)[2])
            self.assertTrue(table.check_consistency(w, tilde=True)[2])
            self.assertTrue(table.check_decay(w))
            self.assertGreater(table.p(w), 0)
