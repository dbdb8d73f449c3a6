from fractions import Fraction

from django.test import SimpleTestCase
from hypothesis import given, settings, strategies as st

from services.diagonal_service import DiagonalLab
from utils.data_classes import Angle
from utils.exceptions import EnumerationTooLarge, InvalidParameter, Undecided
from utils.helpers import parse_angle_set


def angle(num, den=1):
    return Angle(Fraction(num, den))


angles = st.builds(angle, st.integers(min_value=0, max_value=30), st.integers(min_value=1, max_value=30))


class AngleTests(SimpleTestCase):

    def test_reduced_mod_one(self):
        self.assertEqual(angle(7, 4), angle(3, 4))
        self.assertEqual(angle(-1, 3), angle(2, 3))
        self.assertEqual(str(angle(1, 2).times(2)), '0/1')

    def test_parse_generators(self):
        spectrum = parse_angle_set('single:1/3; class:0@2+1/3 all:1/5!')
        kinds = [g.kind for g in spectrum.generators]
        self.assertEqual(kinds, ['single', 'class', 'all'])
        self.assertEqual(spectrum.generators[1].representative, angle(1, 3))
        self.assertFalse(spectrum.generators[2].infinite)

    def test_parse_errors(self):
        with self.assertRaises(InvalidParameter):
            parse_angle_set('class:0')
        with self.assertRaises(InvalidParameter):
            parse_angle_set('circle:1/2')
        with self.assertRaises(InvalidParameter):
            parse_angle_set('  ')


class OrbitTests(SimpleTestCase):

    def setUp(self):
        self.lab = DiagonalLab()

    def test_forward_orbit_closes(self):
        self.assertEqual(self.lab.forward_orbit(angle(1, 6), 2), [angle(1, 6), angle(1, 3), angle(2, 3)])

    def test_orbit_cap(self):
        with self.assertRaises(Undecided):
            DiagonalLab(orbit_cap=2).forward_orbit(angle(1, 7), 2)

    def test_orbit_expand(self):
        self.assertEqual(self.lab.orbit_expand(angle(0), 2, 2), {angle(0), angle(1, 4), angle(1, 2), angle(3, 4)})

    def test_orbit_expand_cap(self):
        with self.assertRaises(EnumerationTooLarge):
            DiagonalLab(enumeration_cap=5).orbit_expand(angle(0), 2, 2)

    def test_class_equality(self):
        self.assertTrue(self.lab.s_class_equal(angle(1, 6), angle(1, 3), 2))
        self.assertFalse(self.lab.s_class_equal(angle(0), angle(1, 3), 2))

    def test_canonical_representative(self):
        self.assertEqual(self.lab.canonical_representative(angle(1, 6), 2), angle(1, 3))
        self.assertEqual(self.lab.canonical_representative(angle(5, 8), 2), angle(0))

    def test_order_below_two(self):
        with self.assertRaises(InvalidParameter):
            self.lab.forward_orbit(angle(1, 3), 1)

    @given(angles, angles, angles, st.integers(min_value=2, max_value=4))
    @settings(max_examples=40, deadline=None)
    def test_class_equality_is_an_equivalence(self, a, b, c, n):
        equal = self.lab.s_class_equal
        self.assertTrue(equal(a, a, n))
        self.assertEqual(equal(a, b, n), equal(b, a, n))
        if equal(a, b, n) and equal(b, c, n):
            self.assertTrue(equal(a, c, n))

    @given(angles, st.integers(min_value=2, max_value=3), st.integers(min_value=0, max_value=2))
    @settings(max_examples=30, deadline=None)
    def test_expansion_is_nested_and_in_class(self, a, n, depth):
        small = self.lab.orbit_expand(a, n, depth)
        large = self.lab.orbit_expand(a, n, depth + 1)
        self.assertLessEqual(small, large)
        for t in large:
            self.assertTrue(self.lab.s_class_equal(t, a, n))


class DiagonalDecisionTests(SimpleTestCase):

    def setUp(self):
        self.lab = DiagonalLab()

    def test_dyadic_class_is_stable(self):
        decision = self.lab.diag_stability_decide(parse_angle_set('class:0@2'), 2, 4)
        self.assertTrue(decision.stable)
        self.assertEqual(decision.partition, ['S_2(0/1)'])

    def test_identity_is_not_stable(self):
        decision = self.lab.diag_stability_decide(parse_angle_set('single:0'), 2, 4)
        self.assertFalse(decision.stable)
        self.assertEqual(decision.witness, angle(1, 2))

    def test_rotated_class_misses_a_root(self):
        decision = self.lab.diag_stability_decide(parse_angle_set('single:1/3 class:0@2+1/3'), 2, 4)
        self.assertFalse(decision.stable)
        self.assertEqual(decision.witness, angle(1, 6))

    def test_finite_multiplicity(self):
        decision = self.lab.diag_stability_decide(parse_angle_set('class:0@2!'), 2, 4)
        self.assertFalse(decision.stable)
        self.assertEqual(decision.witness, angle(0))

    def test_two_classes_partition(self):
        decision = self.lab.diag_stability_decide(parse_angle_set('class:0@2 class:1/6@2'), 2, 3)
        self.assertTrue(decision.stable)
        self.assertEqual(decision.partition, ['S_2(0/1)', 'S_2(1/3)'])

    def test_witness_lies_outside_spectrum(self):
        spectrum = parse_angle_set('class:1/3@3')
        decision = self.lab.diag_stability_decide(spectrum, 2, 3)
        self.assertFalse(decision.stable)
        self.assertFalse(self.lab.contains(spectrum, decision.witness))

    def test_every_order(self):
        self.assertTrue(self.lab.diag_stability_all_n(parse_angle_set('all:0'), 3).stable)
        decision = self.lab.diag_stability_all_n(parse_angle_set('class:0@2'), 3)
        self.assertFalse(decision.stable)
        self.assertTrue(decision.data['per_n']['2'])
        self.assertFalse(decision.data['per_n']['3'])
