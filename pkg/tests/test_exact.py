from fractions import Fraction

from django.test import SimpleTestCase

from utils.exact import (
    ExactMatrix,
    InvariantFactors,
    X,
    gaussian,
    gaussian_from_dict,
    gaussian_to_dict,
    parts,
    smith_invariant_factors,
    sylvester_resultant,
)
from utils.exceptions import InvalidParameter


class GaussianTests(SimpleTestCase):

    def test_parts(self):
        self.assertEqual(parts(gaussian((Fraction(1, 2), -3))), (Fraction(1, 2), Fraction(-3)))

    def test_dict_form(self):
        z = gaussian((Fraction(-2, 3), Fraction(5, 7)))
        self.assertEqual(gaussian_to_dict(z), {'re': ['-2', '3'], 'im': ['5', '7']})
        self.assertEqual(gaussian_from_dict(gaussian_to_dict(z)), z)

    def test_rejects_floats(self):
        with self.assertRaises(InvalidParameter):
            gaussian(0.5)


class ExactMatrixTests(SimpleTestCase):

    def test_arithmetic(self):
        a = ExactMatrix.from_rows([[1, 2], [3, 4]])
        self.assertEqual(a.det(), gaussian(-2))
        self.assertEqual(a * a.inverse(), ExactMatrix.identity(2))
        self.assertEqual(a.trace(), gaussian(5))
        self.assertEqual(a.power(2), a * a)
        self.assertEqual(a - a, ExactMatrix.zeros(2))

    def test_adjoint_conjugates(self):
        a = ExactMatrix.from_rows([[(0, 1), 2], [0, (1, -1)]])
        self.assertEqual(a.adjoint(), ExactMatrix.from_rows([[(0, -1), 0], [2, (1, 1)]]))

    def test_singular_inverse(self):
        with self.assertRaises(InvalidParameter):
            ExactMatrix.from_rows([[1, 2], [2, 4]]).inverse()

    def test_block_structure(self):
        a = ExactMatrix.from_rows([[1, 2], [3, 4]])
        s = ExactMatrix.direct_sum(a, ExactMatrix.identity(1))
        self.assertEqual(s.shape, (3, 3))
        self.assertEqual(s.sub_block(0, 0, 2, 2), a)
        self.assertTrue(s.sub_block(0, 2, 2, 1).is_zero())
        self.assertEqual(a.kron(ExactMatrix.identity(2)).shape, (4, 4))

    def test_vec_stacks_columns(self):
        a = ExactMatrix.from_rows([[1, 2], [3, 4]])
        self.assertEqual(a.vec(), ExactMatrix.from_rows([[1], [3], [2], [4]]))
        self.assertEqual(ExactMatrix.unvec(a.vec(), 2, 2), a)

    def test_kron_vec_identity(self):
        a = ExactMatrix.from_rows([[1, (0, 1)], [2, 0]])
        x = ExactMatrix.from_rows([[0, 1], [1, 1]])
        b = ExactMatrix.from_rows([[3, 0], [1, -1]])
        lhs = (ExactMatrix.identity(2).kron(b) - a.transpose().kron(ExactMatrix.identity(2))) * x.vec()
        self.assertEqual(lhs, (b * x - x * a).vec())

    def test_nullspace(self):
        kernel = ExactMatrix.from_rows([[1, 1], [1, 1]]).nullspace()
        self.assertEqual(len(kernel), 1)
        self.assertTrue((ExactMatrix.from_rows([[1, 1], [1, 1]]) * kernel[0]).is_zero())

    def test_permutation(self):
        p = ExactMatrix.permutation([1, 2, 0])
        self.assertEqual(p[1, 0], gaussian(1))
        self.assertEqual(p.transpose() * p, ExactMatrix.identity(3))

    def test_json(self):
        a = ExactMatrix.from_rows([[Fraction(1, 2), (0, 1)], [0, -3]])
        self.assertEqual(ExactMatrix.from_json(a.to_json()), a)
        with self.assertRaises(InvalidParameter):
            ExactMatrix.from_json('{"rows": 2}')

    def test_charpoly(self):
        self.assertEqual(ExactMatrix.from_rows([[0, 1], [-1, 0]]).charpoly(), X ** 2 + 1)


class PolynomialTests(SimpleTestCase):

    def test_resultant(self):
        self.assertTrue(sylvester_resultant(X - 1, X - 2))
        self.assertFalse(sylvester_resultant(X - 1, X ** 2 - 1))

    def test_invariant_factor_chain(self):
        with self.assertRaises(InvalidParameter):
            InvariantFactors((X ** 2, X))
        with self.assertRaises(InvalidParameter):
            InvariantFactors((2 * X,))
        self.assertEqual(InvariantFactors((X,)).doubled().factors, (X, X))

    def test_smith_form(self):
        m = ExactMatrix.from_rows([[0, 1, 0], [0, 0, 0], [0, 0, 0]])
        factors = smith_invariant_factors(m.char_matrix())
        self.assertEqual(factors.factors, (X, X ** 2))
        self.assertEqual(factors.degree, 3)
