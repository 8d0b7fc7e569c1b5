import itertools

from django.test import SimpleTestCase

from symmul.errors import UsageError
from symmul.gf import ExtensionField, Poly, galois_field
from symmul.rfield import (
    LocalValue, Place, enumerate_places, evaluate, evaluate_with_derivative, local_coordinates,
    places_of_degree,
)


class PlaceCountTest(SimpleTestCase):
    def test_counts(self):
        for q in (2, 3, 4, 5, 7, 8, 9):
            F = galois_field(q)
            self.assertEqual(len(places_of_degree(F, 1)), q + 1)
            self.assertEqual(len(places_of_degree(F, 2)), (q * q - q) // 2)
            self.assertEqual(len(enumerate_places(F, 2)), q + 1 + (q * q - q) // 2)

    def test_order(self):
        F = galois_field(3)
        places = enumerate_places(F, 2)
        self.assertEqual(sorted(places), places)
        inf = places[F.q]
        self.assertTrue(inf.is_infinity)
        self.assertEqual(inf.degree, 1)
        self.assertEqual(str(inf), 'inf')
        self.assertEqual(len(set(places)), len(places))

    def test_unsupported_degrees(self):
        F = galois_field(5)
        with self.assertRaises(UsageError):
            places_of_degree(F, 3)
        with self.assertRaises(UsageError):
            enumerate_places(F, 3)

    def test_rejects_bad_polynomials(self):
        F = galois_field(5)
        with self.assertRaises(UsageError):
            Place(F, Poly(F, (4, 0, 1)))  # x^2 - 1
        with self.assertRaises(UsageError):
            Place(F, Poly(F, (2, 0, 2)))
        with self.assertRaises(UsageError):
            Place(F, Poly(galois_field(7), (1, 1)))


class EvaluateTest(SimpleTestCase):
    def setUp(self):
        self.F = galois_field(5)
        # x^2 + 1
        self.f = Poly(self.F, (1, 0, 1))

    def test_degree_one_place(self):
        place = Place.finite(Poly(self.F, (3, 1)))  # x - 2
        self.assertEqual(evaluate(self.f, place, 2), LocalValue((0,)))
        value = evaluate_with_derivative(self.f, place, 2)
        self.assertEqual(value.value, (0,))
        self.assertEqual(value.derivative, (4,))
        self.assertEqual(local_coordinates(self.f, place, 2, 2), (0, 4))

    def test_infinity(self):
        inf = Place.infinity(self.F)
        self.assertEqual(evaluate(self.f, inf, 2).coordinates, (1,))
        self.assertEqual(evaluate(self.f, inf, 3).coordinates, (0,))
        self.assertEqual(evaluate_with_derivative(self.f, inf, 3).coordinates, (0, 1))

    def test_degree_two_place(self):
        place = Place.finite(Poly(self.F, (2, 0, 1)))  # x^2 + 2
        self.assertEqual(evaluate(self.f, place, 4).coordinates, (4, 0))
        self.assertEqual(len(local_coordinates(self.f, place, 2, 4)), 4)

    def test_degree_bound(self):
        with self.assertRaises(UsageError):
            evaluate(self.f, Place.infinity(self.F), 1)
        with self.assertRaises(UsageError):
            local_coordinates(self.f, Place.infinity(self.F), 3, 2)


class LeibnizRuleTest(SimpleTestCase):
    """The derivative coordinate satisfies D(fg) = f·D(g) + g·D(f) in the residue field."""

    def test_leibniz(self):
        for q in (2, 3, 4):
            F = galois_field(q)
            for place in places_of_degree(F, 2)[:2]:
                residue = ExtensionField(F, place.poly)
                for fc, gc in itertools.product(itertools.product(range(q), repeat=2), repeat=2):
                    f, g = Poly(F, fc + (1,)), Poly(F, gc)
                    vf = evaluate_with_derivative(f, place, 4)
                    vg = evaluate_with_derivative(g, place, 4)
                    vfg = evaluate_with_derivative(f * g, place, 4)
                    self.assertEqual(vfg.value, residue.mul(vf.value, vg.value))
                    expected = residue.add(
                        residue.mul(vf.value, vg.derivative), residue.mul(vg.value, vf.derivative),
                    )
                    self.assertEqual(vfg.derivative, expected)

    def test_degree_one_derivative_is_classical(self):
        F = galois_field(7)
        f = Poly(F, (3, 1, 4, 1, 5))
        df = f.derivative()
        for place in places_of_degree(F, 1)[:-1]:
            alpha = F.neg(place.poly.coeffs[0])
            self.assertEqual(evaluate_with_derivative(f, place, 4).derivative, (df(alpha),))
