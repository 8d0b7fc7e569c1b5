from fractions import Fraction

from django.test import SimpleTestCase

from symmul.bounds import (
    BoundReport, Method, best_bound, bound_by, cq_constant, epsilon, exact_small, methods,
    per_n_tower_bound, select_step, uniform_bound, uniform_coefficient,
)
from symmul.errors import InapplicableError, InvariantError, UsageError
from symmul.towers import Family


class SmallRangeTest(SimpleTestCase):
    def test_epsilon(self):
        self.assertEqual(
            [epsilon(q) for q in (2, 3, 4, 5, 7, 8, 9, 11, 13)],
            [1, 2, 4, 4, 5, 5, 6, 6, 7],
        )

    def test_exact_values(self):
        cases = {
            (2, 4): 9, (2, 6): 15, (4, 4): 8, (5, 4): 8,
            (7, 4): 7, (5, 3): 5, (4, 3): 5, (3, 2): 3, (9, 1): 1,
        }
        for (q, n), expected in cases.items():
            self.assertEqual(exact_small(q, n), expected, (q, n))

    def test_shokrollahi_range(self):
        # 2n <= q + 2 fails but 2n < q + 1 + epsilon(q) holds
        self.assertEqual(exact_small(9, 6), 12)
        self.assertEqual(exact_small(8, 6), 12)

    def test_unknown(self):
        self.assertIsNone(exact_small(2, 3))
        self.assertIsNone(exact_small(5, 5))
        self.assertIsNone(exact_small(2, 5))

    def test_rejects(self):
        for q, n in ((6, 3), (4, 0), (4, -1), (4, True)):
            with self.assertRaises(UsageError):
                exact_small(q, n)


class ConstantTest(SimpleTestCase):
    def test_cq(self):
        expected = {
            2: Fraction(4824, 247), 3: Fraction(27), 4: Fraction(18), 5: Fraction(9),
            7: Fraction(6), 9: Fraction(9), 25: Fraction(4), 49: Fraction(3),
        }
        for q, value in expected.items():
            self.assertEqual(cq_constant(q), value, q)

    def test_uniform_coefficients(self):
        self.assertEqual(uniform_coefficient(4, Method.UNIFORM_AS), Fraction(79, 13))
        self.assertEqual(uniform_coefficient(5, Method.UNIFORM_KUMMER), Fraction(27, 5))
        self.assertEqual(uniform_coefficient(25, Method.UNIFORM_AS_QUADRATIC), Fraction(31, 8))
        self.assertEqual(uniform_coefficient(25, 'uniform-kummer-quadratic'), Fraction(158, 47))

    def test_uniform_inapplicable(self):
        self.assertIsNone(uniform_coefficient(4, Method.UNIFORM_KUMMER))
        self.assertIsNone(uniform_coefficient(8, Method.UNIFORM_AS_QUADRATIC))
        self.assertIsNone(uniform_bound(3, 10, Method.UNIFORM_AS))
        with self.assertRaises(UsageError):
            uniform_coefficient(4, Method.TOWER)

    def test_uniform_bound(self):
        report = uniform_bound(5, 100, Method.UNIFORM_KUMMER)
        self.assertEqual(report.upper, 540)
        self.assertEqual(report.lower, 199)
        self.assertEqual(report.provenance, 'uniform-kummer')


class ReportTest(SimpleTestCase):
    def test_floor_and_provenance(self):
        report = BoundReport(q=4, n=3, lower=5, upper=Fraction(79, 13), method=Method.UNIFORM_AS)
        self.assertEqual(report.upper_int, 6)
        self.assertEqual(report.provenance, 'uniform-as')

    def test_lower_above_upper(self):
        with self.assertRaises(InvariantError):
            BoundReport(q=4, n=3, lower=5, upper=Fraction(9, 2), method=Method.EXACT)


class StepSelectionTest(SimpleTestCase):
    def test_kummer_quadratic(self):
        step = select_step(25, 18, Family.KUMMER_QUADRATIC)
        self.assertEqual(step.k, 3)
        self.assertEqual(step.genus_upper, 9)

    def test_tabulated_step(self):
        step = select_step(4, 7, Family.AS_BASE)
        self.assertTrue(step.tabulated)
        self.assertEqual((step.k, step.s), (1, 1))

    def test_tabulated_rational_step(self):
        step = select_step(7, 9, Family.AS_BASE)
        self.assertEqual(str(step), 'as_base(7)(2,0)')
        self.assertEqual(step.capacity, 151)
        self.assertEqual(step.genus_exact, 21)

    def test_below_threshold(self):
        with self.assertRaises(InapplicableError):
            select_step(4, 3, Family.AS_BASE)

    def test_level_limit(self):
        from symmul.settings import base_settings

        level = base_settings.MAX_TOWER_LEVEL
        base_settings.MAX_TOWER_LEVEL = 2
        try:
            with self.assertRaises(InapplicableError):
                select_step(5, 300, Family.KUMMER_BASE)
        finally:
            base_settings.MAX_TOWER_LEVEL = level


class TowerBoundTest(SimpleTestCase):
    def test_earlier_step_without_derivatives(self):
        # step (1,0) has capacity 8, ahead of the tabulated (1,1)
        report = per_n_tower_bound(4, 5, Family.AS_BASE)
        self.assertEqual(report.upper, 15)
        self.assertEqual(report.case, 'a')
        self.assertEqual(report.step.label, '(1,0)')
        self.assertEqual(report.provenance, 'tower:as_base(4)(1,0):a')
        for n in range(5, 9):
            self.assertEqual(per_n_tower_bound(4, n, Family.AS_BASE).case, 'a', n)

    def test_previous_step_with_derivatives(self):
        # one evaluation past capacity 8: 3·9 + 2·0 + 3·1
        report = per_n_tower_bound(4, 9, Family.AS_BASE)
        self.assertEqual(report.upper, 30)
        self.assertEqual(report.case, 'b')
        self.assertEqual(report.provenance, 'tower:as_base(4)(1,0):b')

    def test_excess_evaluations(self):
        # previous step k=0 has capacity 4: 3·5 + 2·0 + 3·1
        report = per_n_tower_bound(5, 5, Family.KUMMER_BASE)
        self.assertEqual(report.upper, 18)
        self.assertEqual(report.step.k, 0)

    def test_first_step(self):
        # capacity 12 reaches n = 12 on the rational step
        report = per_n_tower_bound(5, 12, Family.AS_BASE)
        self.assertEqual(report.upper, 36)
        self.assertEqual(report.case, 'a')

    def test_exact_range(self):
        report = per_n_tower_bound(7, 3, Family.AS_BASE)
        self.assertEqual(report.method, Method.WINOGRAD)
        self.assertEqual(report.upper, 5)

    def test_inapplicable_family(self):
        with self.assertRaises(InapplicableError):
            per_n_tower_bound(9, 20, Family.KUMMER_BASE)


class DominanceTest(SimpleTestCase):
    """Per-n tower bounds never exceed the uniform linear bound of the same tower."""

    def assertDominated(self, q, family, which):
        coefficient = uniform_coefficient(q, which)
        for n in range(1, 301):
            report = per_n_tower_bound(q, n, family)
            self.assertLessEqual(report.upper, coefficient * n, (q, n, report.provenance))
            self.assertLessEqual(report.lower, report.upper_int)

    def test_artin_schreier(self):
        for q in (4, 5, 7, 8, 9, 13):
            self.assertDominated(q, Family.AS_BASE, Method.UNIFORM_AS)

    def test_kummer(self):
        for q in (5, 7, 13):
            self.assertDominated(q, Family.KUMMER_BASE, Method.UNIFORM_KUMMER)

    def test_quadratic_artin_schreier(self):
        for q in (16, 25, 49, 64):
            with self.subTest(q=q):
                self.assertDominated(q, Family.AS_QUADRATIC, Method.UNIFORM_AS_QUADRATIC)

    def test_quadratic_kummer(self):
        for q in (25, 49):
            with self.subTest(q=q):
                self.assertDominated(q, Family.KUMMER_QUADRATIC, Method.UNIFORM_KUMMER_QUADRATIC)


class BestBoundTest(SimpleTestCase):
    def test_exact_wins(self):
        report = best_bound(2, 4)
        self.assertEqual((report.upper, report.method), (9, Method.EXACT))
        self.assertEqual(best_bound(7, 4).method, Method.WINOGRAD)

    def test_tower(self):
        report = best_bound(4, 5)
        self.assertEqual(report.upper, 15)
        self.assertEqual(report.method, Method.TOWER)

    def test_binary_falls_back_to_constant(self):
        report = best_bound(2, 20)
        self.assertEqual(report.method, Method.LINEAR_CONSTANT)
        self.assertEqual(report.upper, Fraction(4824 * 20, 247))

    def test_never_worse_than_any_method(self):
        for q in (2, 3, 4, 5, 9, 25):
            for n in (1, 2, 7, 30, 120):
                best = best_bound(q, n)
                self.assertEqual(best.lower, 2 * n - 1)
                for name in methods:
                    try:
                        other = bound_by(name, q, n)
                    except InapplicableError:
                        continue
                    self.assertLessEqual(best.upper, other.upper, (q, n, name))


class RegistryTest(SimpleTestCase):
    def test_choices(self):
        self.assertEqual(methods.choices(), [
            'best', 'exact',
            'tower-as', 'tower-as-quadratic', 'tower-kummer', 'tower-kummer-quadratic',
            'uniform-as', 'uniform-kummer', 'uniform-as-quadratic', 'uniform-kummer-quadratic',
            'thm4i', 'thm4ii', 'thm5i', 'thm5ii',
            'linear-constant',
        ])

    def test_bound_by(self):
        self.assertEqual(bound_by('uniform-kummer', 5, 100).upper, 540)
        self.assertEqual(bound_by('linear-constant', 4, 10).upper, 180)
        self.assertEqual(bound_by('best', 4, 5), best_bound(4, 5))

    def test_short_names(self):
        self.assertEqual(bound_by('thm4ii', 5, 100).upper, 540)
        self.assertEqual(bound_by('thm4i', 4, 13).upper, 79)
        self.assertEqual(bound_by('thm5i', 25, 8).upper, 31)
        self.assertEqual(bound_by('thm5ii', 25, 47).upper, 158)
        self.assertEqual(bound_by('thm4ii', 5, 100).method, Method.UNIFORM_KUMMER)

    def test_bound_by_errors(self):
        with self.assertRaises(UsageError):
            bound_by('karatsuba', 4, 5)
        with self.assertRaises(InapplicableError):
            bound_by('uniform-kummer', 4, 10)
        with self.assertRaises(InapplicableError):
            bound_by('exact', 2, 3)
