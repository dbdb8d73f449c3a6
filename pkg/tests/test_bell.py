from django.test import SimpleTestCase
from hypothesis import given, settings, strategies as st

from services.bell_service import BellRingVerifier, FreeExpr, ideal_generators, normalize_word
from utils.exceptions import InvalidParameter

words = st.text(alphabet='abcxy', max_size=6)


class FreeExprTests(SimpleTestCase):

    def test_normalize_sorts_commuting_runs(self):
        self.assertEqual(normalize_word('cabxba'), ('a', 'b', 'c', 'x', 'a', 'b'))
        self.assertEqual(FreeExpr.word('ba'), FreeExpr.word('ab'))
        self.assertNotEqual(FreeExpr.word('xy'), FreeExpr.word('yx'))

    def test_unknown_letter(self):
        with self.assertRaises(InvalidParameter):
            normalize_word('az')

    def test_arithmetic(self):
        a, x = FreeExpr.letter('a'), FreeExpr.letter('x')
        self.assertTrue((a * x - a * x).is_zero())
        self.assertEqual(str(a * x - x * a), 'ax - xa')
        self.assertEqual(FreeExpr.one() * a, a)
        self.assertEqual(str(FreeExpr.zero()), '0')

    @given(words)
    @settings(max_examples=50)
    def test_normalize_is_idempotent(self, word):
        self.assertEqual(normalize_word(normalize_word(word)), normalize_word(word))


class BellRingTests(SimpleTestCase):

    def setUp(self):
        self.verifier = BellRingVerifier()

    def test_all_certificates_pass(self):
        certificates = self.verifier.verify_all()
        self.assertEqual([c.name for c in certificates],
                         ['bell_phi_homomorphism', 'bell_conjugation_identity', 'bell_determinant_unit'])
        for cert in certificates:
            self.assertTrue(cert.passed, cert.name)

    def test_conjugation_entries_are_generators(self):
        cert = self.verifier.verify_conjugation_identity()
        self.assertEqual(cert.quantities['entries'], {
            '(1,1)': 'ax-ya', '(1,2)': 'bx-yb', '(2,1)': 'cx-yc', '(2,2)': 'ax-ya',
        })

    def test_generators_vanish_under_phi(self):
        for label, generator in ideal_generators().items():
            self.assertTrue(self.verifier.phi(generator).is_zero(), label)

    @given(words, words)
    @settings(max_examples=40, deadline=None)
    def test_phi_is_multiplicative(self, u, v):
        product = FreeExpr.word(u) * FreeExpr.word(v)
        self.assertEqual(self.verifier.phi(product), self.verifier.phi_word(u) * self.verifier.phi_word(v))
