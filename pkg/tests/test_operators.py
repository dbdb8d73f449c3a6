from django.test import SimpleTestCase
from hypothesis import given, settings, strategies as st

from services.operator_service import OperatorLab, gaussian_sqrt
from utils.exact import ExactMatrix, InvariantFactors, X, gaussian
from utils.exceptions import InvalidParameter, NotADouble, NoWitness, SpectraNotDisjoint, UnsupportedConfiguration


class RootConstructionTests(SimpleTestCase):

    def setUp(self):
        self.lab = OperatorLab(seed=7)

    def test_build_jn_scalar(self):
        self.assertEqual(self.lab.build_jn(ExactMatrix.from_rows([[5]]), 2),
                         ExactMatrix.from_rows([[0, 1], [5, 0]]))

    def test_build_jn_three_blocks(self):
        jn = self.lab.build_jn(ExactMatrix.from_rows([[2]]), 3)
        self.assertEqual(jn, ExactMatrix.from_rows([[0, 1, 0], [0, 0, 1], [2, 0, 0]]))
        self.assertEqual(jn.power(3), ExactMatrix.diagonal([2, 2, 2]))

    def test_build_jn_rejects_rectangular(self):
        with self.assertRaises(InvalidParameter):
            self.lab.build_jn(ExactMatrix.zeros(2, 3), 2)

    @given(st.integers(min_value=0, max_value=10 ** 6), st.integers(min_value=1, max_value=3),
           st.integers(min_value=1, max_value=3))
    @settings(max_examples=15, deadline=None)
    def test_root_identities(self, seed, d, n):
        lab = OperatorLab(seed=seed)
        self.assertEqual(lab.root_identity_check(lab.random_matrix(d), n), (True, True))


class SymmetryWitnessTests(SimpleTestCase):

    def setUp(self):
        self.lab = OperatorLab(seed=3)

    def test_exact_orders(self):
        for n in (2, 4):
            cert = self.lab.symmetry_witnesses(self.lab.random_matrix(2), n, 4, self.lab.random_matrix(1))
            self.assertTrue(cert.passed)
            self.assertEqual(cert.quantities['rotation']['mode'], 'exact')
            self.assertEqual(cert.quantities['scaling']['mode'], 'exact')

    def test_float_rotation(self):
        cert = self.lab.symmetry_witnesses(self.lab.random_matrix(2), 3, 4)
        self.assertTrue(cert.passed)
        self.assertEqual(cert.quantities['rotation']['mode'], 'float')

    def test_exact_only_refuses_irrational_witnesses(self):
        lab = OperatorLab(seed=3, float_mode=False)
        with self.assertRaises(UnsupportedConfiguration):
            lab.symmetry_witnesses(lab.random_matrix(2), 3, 4)
        with self.assertRaises(UnsupportedConfiguration):
            lab.symmetry_witnesses(lab.random_matrix(2), 2, 2)

    def test_gaussian_square_roots(self):
        self.assertEqual(gaussian_sqrt(gaussian((0, 2))), gaussian((1, 1)))
        self.assertEqual(gaussian_sqrt(gaussian(-4)), gaussian((0, 2)))
        self.assertIsNone(gaussian_sqrt(gaussian(2)))

    def test_root_decomposition(self):
        for n in (2, 3):
            self.assertTrue(self.lab.root_decomposition_check(self.lab.random_invertible(2), n).passed)


class SimilarityTests(SimpleTestCase):

    def setUp(self):
        self.lab = OperatorLab(seed=11)

    def test_invariant_factors(self):
        zero = ExactMatrix.zeros(2)
        nilpotent = self.lab.jordan_block(2, 0)
        self.assertEqual(self.lab.invariant_factors(zero).factors, (X, X))
        self.assertEqual(self.lab.invariant_factors(nilpotent).factors, (X ** 2,))
        self.assertEqual(self.lab.invariant_factors(ExactMatrix.direct_sum(nilpotent, ExactMatrix.zeros(1))).factors,
                         (X, X ** 2))
        self.assertEqual(self.lab.invariant_factors(ExactMatrix.identity(2)).factors, (X - 1, X - 1))

    def test_similar_decide(self):
        self.assertFalse(self.lab.similar_decide(ExactMatrix.from_rows([[1, 1], [0, 1]]), ExactMatrix.identity(2)))
        self.assertTrue(self.lab.similar_decide(ExactMatrix.diagonal([1, 2]), ExactMatrix.from_rows([[1, 1], [0, 2]])))

    def test_witness_is_verified(self):
        a, b = ExactMatrix.diagonal([1, 2]), ExactMatrix.from_rows([[1, 1], [0, 2]])
        r = self.lab.similarity_witness(a, b)
        self.assertTrue(r.is_invertible())
        self.assertEqual(b * r, r * a)

    def test_no_witness_for_dissimilar(self):
        with self.assertRaises(NoWitness):
            self.lab.similarity_witness(ExactMatrix.from_rows([[1, 1], [0, 1]]), ExactMatrix.identity(2))

    @given(st.integers(min_value=0, max_value=10 ** 6))
    @settings(max_examples=10, deadline=None)
    def test_conjugates_are_similar(self, seed):
        lab = OperatorLab(seed=seed)
        a = lab.random_jordan_type(3)
        b = lab.conjugate_by_random(a)
        self.assertTrue(lab.similar_decide(a, b))
        self.assertTrue(lab.similar_decide(ExactMatrix.direct_sum(a, a), ExactMatrix.direct_sum(b, b)))

    def test_halving(self):
        self.assertEqual(self.lab.kaplansky_halve(ExactMatrix.zeros(2)), InvariantFactors((X,)))
        nilpotent = self.lab.jordan_block(2, 0)
        self.assertEqual(self.lab.kaplansky_halve(ExactMatrix.direct_sum(nilpotent, nilpotent)),
                         InvariantFactors((X ** 2,)))
        with self.assertRaises(NotADouble):
            self.lab.kaplansky_halve(ExactMatrix.diagonal([1, 2]))
        with self.assertRaises(InvalidParameter):
            self.lab.kaplansky_halve(ExactMatrix.zeros(3))

    def test_similarity_certificate(self):
        self.assertTrue(self.lab.similarity_certificate(4).passed)


class BlockStructureTests(SimpleTestCase):

    def setUp(self):
        self.lab = OperatorLab(seed=5)

    def test_rosenblum_split(self):
        cert = self.lab.rosenblum_certificate()
        self.assertTrue(cert.passed)

    def test_shared_eigenvalue(self):
        one = ExactMatrix.from_rows([[1]])
        with self.assertRaises(SpectraNotDisjoint):
            self.lab.rosenblum_split_check(one, one, one, one, ExactMatrix.identity(2))

    def test_sylvester_kernel(self):
        self.assertEqual(self.lab.sylvester_kernel_dimension(ExactMatrix.diagonal([1, 2]), ExactMatrix.diagonal([3, 4])), 0)
        self.assertEqual(self.lab.sylvester_kernel_dimension(ExactMatrix.identity(2), ExactMatrix.identity(2)), 4)

    def test_commutant_of_nilpotent_root(self):
        a = self.lab.jordan_block(2, 0)
        cert = self.lab.commutant_structure_check(a, self.lab.build_jn(a, 2))
        self.assertTrue(cert.passed)
        self.assertEqual(cert.quantities['commutant_dimension'], 4)

    def test_non_commuting_z(self):
        a = self.lab.jordan_block(2, 0)
        with self.assertRaises(InvalidParameter):
            self.lab.commutant_structure_check(a, ExactMatrix.diagonal([1, 2, 3, 4]))

    def test_j2_identity_intertwiner(self):
        a = self.lab.jordan_block(2, 0)
        cert = self.lab.j2_intertwiner_analysis(a, a, ExactMatrix.identity(4))
        self.assertTrue(cert.passed)
        self.assertEqual(cert.quantities['recovery_trial'], 0)
        self.assertEqual(cert.quantities['W1'], ExactMatrix.identity(2))

    def test_j2_checks_carry_their_values(self):
        a = self.lab.jordan_block(2, 0)
        cert = self.lab.j2_intertwiner_analysis(a, a, ExactMatrix.identity(4).scale(gaussian(2)))
        checks = {c.label: c for c in cert.checks}
        self.assertEqual(checks['det W1'].lhs, gaussian(4))
        self.assertEqual(checks['W1 A - B W1'].lhs, ExactMatrix.zeros(2))
        self.assertEqual(checks['S1 = S4'].lhs, ExactMatrix.identity(2).scale(gaussian(2)))
        self.assertFalse(any(isinstance(c.lhs, bool) for c in cert.checks))
        data = cert.to_dict()
        self.assertTrue(all(check['holds'] for check in data['checks']))

    def test_j2_rejects_non_intertwiner(self):
        a = self.lab.jordan_block(2, 0)
        with self.assertRaises(InvalidParameter):
            self.lab.j2_intertwiner_analysis(a, a, ExactMatrix.diagonal([1, 2, 3, 4]))

    def test_recovery_rate(self):
        self.assertTrue(self.lab.intertwiner_certificate(3).passed)


class TraceWordTests(SimpleTestCase):

    def setUp(self):
        self.lab = OperatorLab(seed=13)

    def test_nilpotent_pair_differs_at_xy(self):
        result = self.lab.specht_equiv(ExactMatrix.from_rows([[0, 1], [0, 0]]),
                                       ExactMatrix.from_rows([[0, 2], [0, 0]]), 2)
        self.assertFalse(result.equivalent)
        self.assertEqual(result.word, 'xy')
        self.assertEqual(result.words_checked, 4)

    def test_unitary_conjugates_agree(self):
        a = self.lab.random_matrix(2)
        u = self.lab.cayley_unitary(2)
        self.assertEqual(u.adjoint() * u, ExactMatrix.identity(2))
        result = self.lab.specht_equiv(a, u.adjoint() * a * u)
        self.assertTrue(result.equivalent)
        self.assertTrue(result.bound_met)
        self.assertEqual(result.length, 8)

    def test_rejects_bad_length(self):
        with self.assertRaises(InvalidParameter):
            self.lab.specht_equiv(ExactMatrix.identity(2), ExactMatrix.identity(2), 0)


class FamilyTests(SimpleTestCase):

    def test_family_tasks_pass(self):
        lab = OperatorLab(seed=42)
        for name, task in lab.family_tasks(2, 2):
            with self.subTest(name=name):
                self.assertTrue(task().passed)
