import itertools
from dataclasses import replace

import numpy as np
from django.test import SimpleTestCase

from symmul.chud import (
    EvaluationPlan, PlanCounts, Term, build_symmetric_algorithm, coordinate_system, exhaustive_counts,
    greedy_counts, local_kernel, plan_evaluation, spot_check, verify_algorithm,
)
from symmul.costacct import full_evaluation_rank
from symmul.errors import CapacityError, UsageError
from symmul.gf import ExtensionField, Poly, find_irreducible, galois_field, rank
from symmul.rfield import Place, local_coordinates, places_of_degree
from symmul.utils.random import random_vectors

# (q, largest n that F_q(x) can serve)
CAPACITY = {2: 5, 3: 10}


def apply_kernel(F, kernel, x, y):
    result = [0] * len(kernel[0][1])
    for form, contribution in kernel:
        a = F.vdot(np.array(form), np.array(x))
        b = F.vdot(np.array(form), np.array(y))
        w = F.mul(int(a), int(b))
        result = [F.add(r, F.mul(w, c)) for r, c in zip(result, contribution)]
    return tuple(result)


def feasible(q, n):
    return n <= CAPACITY.get(q, n)


def place_collections(F, n, target):
    """Distinct places with multiplicity 1 or 2 giving exactly 2n - 1 coordinates."""
    deg2 = [place for place in places_of_degree(F, 2) if place != target][:1]
    pool = places_of_degree(F, 1) + deg2
    for multiplicities in itertools.product(range(3), repeat=len(pool)):
        if sum(u * place.degree for u, place in zip(multiplicities, pool)) == 2 * n - 1:
            yield [(place, u) for place, u in zip(pool, multiplicities) if u]


def plan_from(F, n, target, usage):
    def pick(degree, u):
        return tuple(place for place, m in usage if place.degree == degree and m == u)
    return EvaluationPlan(
        q=F.q, n=n, Q=target,
        deg1_classical=pick(1, 1), deg1_derivative=pick(1, 2),
        deg2_classical=pick(2, 1), deg2_derivative=pick(2, 2),
    )


class PlanCountsTest(SimpleTestCase):
    def test_binary_quintic(self):
        self.assertEqual(greedy_counts(2, 5).rank, 18)
        self.assertEqual(exhaustive_counts(2, 5), PlanCounts(c1=1, d1=2, c2=0, d2=1))
        self.assertEqual(exhaustive_counts(2, 5).rank, 16)

    def test_known_optimal(self):
        self.assertEqual(exhaustive_counts(2, 2).rank, 3)
        self.assertEqual(exhaustive_counts(4, 4).rank, 8)
        self.assertEqual(exhaustive_counts(7, 4).rank, 7)

    def test_tie_break_prefers_fewer_derivatives(self):
        # rank 12 either way; no derivative evaluation wins
        self.assertEqual(greedy_counts(3, 5), PlanCounts(3, 1, 2, 0))
        self.assertEqual(exhaustive_counts(3, 5), PlanCounts(3, 0, 3, 0))

    def test_greedy_matches_when_values_suffice(self):
        for q in (2, 3, 4, 5):
            for n in range(2, (q * q + 2) // 2 + 1):
                self.assertEqual(greedy_counts(q, n).rank, exhaustive_counts(q, n).rank, (q, n))

    def test_exhaustive_never_worse(self):
        for q, n in itertools.product((2, 3, 4), range(2, 10)):
            if feasible(q, n):
                greedy, best = greedy_counts(q, n), exhaustive_counts(q, n)
                self.assertLessEqual(best.rank, greedy.rank)
                self.assertGreaterEqual(best.coordinates, 2 * n - 1)

    def test_capacity(self):
        with self.assertRaises(CapacityError) as cm:
            exhaustive_counts(2, 6)
        self.assertEqual(cm.exception.extra, {'capacity': 10, 'required': 11})
        with self.assertRaises(CapacityError):
            greedy_counts(2, 6)
        with self.assertRaises(CapacityError):
            plan_evaluation(3, 11)

    def test_rejects(self):
        for q, n in ((6, 3), (4, 1), (4, True), (128, 3)):
            with self.assertRaises(UsageError):
                exhaustive_counts(q, n)


class LocalKernelTest(SimpleTestCase):
    def test_sizes(self):
        F = galois_field(3)
        deg1, deg2 = places_of_degree(F, 1)[0], places_of_degree(F, 2)[0]
        self.assertEqual(len(local_kernel(F, deg1, 1)), 1)
        self.assertEqual(len(local_kernel(F, deg1, 2)), 3)
        self.assertEqual(len(local_kernel(F, deg2, 1)), 3)
        self.assertEqual(len(local_kernel(F, deg2, 2)), 9)
        with self.assertRaises(UsageError):
            local_kernel(F, deg1, 3)

    def test_residue_product(self):
        for q in (2, 3, 4):
            F = galois_field(q)
            for place in places_of_degree(F, 2):
                residue = ExtensionField(F, place.poly)
                kernel = local_kernel(F, place, 1)
                for x, y in itertools.product(residue.elements(), repeat=2):
                    self.assertEqual(apply_kernel(F, kernel, x, y), residue.mul(x, y))

    def test_truncated_product(self):
        # (v, d) * (v', d') = (vv', vd' + dv') over the residue field
        F = galois_field(3)
        place = places_of_degree(F, 2)[0]
        residue = ExtensionField(F, place.poly)
        kernel = local_kernel(F, place, 2)
        for x, y in itertools.product(itertools.product(range(3), repeat=4), repeat=2):
            vx, dx, vy, dy = x[:2], x[2:], y[:2], y[2:]
            expected = residue.mul(vx, vy) + residue.add(residue.mul(vx, dy), residue.mul(dx, vy))
            self.assertEqual(apply_kernel(F, kernel, x, y), expected)


class EvaluationPlanTest(SimpleTestCase):
    def test_plan_shape(self):
        plan = plan_evaluation(2, 5)
        self.assertEqual((plan.N1, plan.a1, plan.N2, plan.a2), (3, 2, 1, 1))
        self.assertEqual(plan.coordinates, 9)
        self.assertEqual(plan.rank, 16)
        self.assertEqual(plan.Q.degree, 5)
        self.assertNotIn(plan.Q, [place for place, _ in plan.usage()])

    def test_deterministic(self):
        self.assertEqual(plan_evaluation(3, 4), plan_evaluation(3, 4))
        self.assertEqual(plan_evaluation(3, 2).rank, 3)

    def test_validation(self):
        F = galois_field(3)
        target = Place(F, Poly(F, (1, 2, 0, 1)))  # x^3 + 2x + 1
        deg1 = places_of_degree(F, 1)
        with self.assertRaises(UsageError):
            EvaluationPlan(q=3, n=3, Q=target, deg1_classical=(deg1[0], deg1[0], deg1[1], deg1[2], deg1[3]))
        with self.assertRaises(UsageError):
            EvaluationPlan(q=3, n=2, Q=target, deg1_classical=tuple(deg1))
        with self.assertRaises(UsageError):
            EvaluationPlan(q=3, n=3, Q=target, deg2_classical=tuple(deg1[:3]))
        with self.assertRaises(CapacityError):
            EvaluationPlan(q=3, n=3, Q=target, deg1_classical=tuple(deg1[:4]))


class CoordinateSystemTest(SimpleTestCase):
    def test_round_trip(self):
        for q, n in ((2, 5), (3, 4), (4, 3), (5, 6), (9, 4)):
            F = galois_field(q)
            system = coordinate_system(plan_evaluation(q, n))
            for coeffs in random_vectors(q, 100, 2 * n - 1, seed=q * n):
                h = Poly(F, tuple(int(c) for c in coeffs))
                z = system.evaluate(h)
                self.assertEqual(system.interpolate(z), h)
                np.testing.assert_array_equal(system.evaluate(system.interpolate(z)), z)

    def test_matches_local_coordinates(self):
        plan = plan_evaluation(3, 4)
        system = coordinate_system(plan)
        F = plan.field
        h = Poly(F, (1, 2, 0, 1, 1, 2, 2))
        expected = [c for place, u in plan.usage() for c in local_coordinates(h, place, u, plan.product_bound)]
        self.assertEqual([int(v) for v in system.evaluate(h)], expected)


class ConstructionTest(SimpleTestCase):
    def test_construct_and_verify(self):
        for q in (2, 3, 4, 5, 7, 8, 9):
            for n in range(2, 9):
                if not feasible(q, n):
                    continue
                alg = build_symmetric_algorithm(plan_evaluation(q, n))
                report = verify_algorithm(alg)
                self.assertTrue(report.ok, (q, n, report.failures[:4]))
                self.assertEqual(report.exhaustive, q ** n <= 64)
                self.assertEqual(alg.rank, exhaustive_counts(q, n).rank)
                self.assertGreaterEqual(alg.rank, 2 * n - 1)

    def test_any_place_collection(self):
        for q in (2, 3, 4, 5):
            F = galois_field(q)
            for n in range(2, 6):
                target = Place(F, find_irreducible(F, n))
                with self.subTest(q=q, n=n):
                    for usage in place_collections(F, n, target):
                        plan = plan_from(F, n, target, usage)
                        system = coordinate_system(plan)
                        self.assertEqual(rank(F, system.matrix), 2 * n - 1, usage)
                        alg = build_symmetric_algorithm(plan)
                        self.assertEqual(alg.rank, full_evaluation_rank(plan.N1, plan.N2, plan.a1, plan.a2))
                        self.assertTrue(verify_algorithm(alg, exhaustive=False).ok, usage)

    def test_optimal_in_interpolation_range(self):
        # 2n - 1 <= q + 1 rational places suffice
        for q in (2, 3, 4, 5, 7, 8, 9):
            for n in range(2, min(5, q // 2 + 1) + 1):
                alg = build_symmetric_algorithm(plan_evaluation(q, n))
                self.assertEqual(alg.rank, 2 * n - 1, (q, n))
                self.assertTrue(verify_algorithm(alg, exhaustive=False).ok)

    def test_exhaustive_on_request(self):
        alg = build_symmetric_algorithm(plan_evaluation(3, 4))
        report = verify_algorithm(alg, exhaustive=True)
        self.assertTrue(report.ok)
        self.assertEqual(report.pairs, 81 ** 2)
        self.assertEqual(verify_algorithm(alg, exhaustive=False).pairs, 16)

    def test_symmetric_and_bilinear(self):
        alg = build_symmetric_algorithm(plan_evaluation(5, 4))
        F, ext = alg.field, alg.extension
        xs = random_vectors(5, 20, 4, seed=1)
        for x, y in zip(xs[:10], xs[10:]):
            x, y = tuple(int(v) for v in x), tuple(int(v) for v in y)
            self.assertEqual(alg.apply(x, y), alg.apply(y, x))
            self.assertEqual(alg.apply(x, y), ext.mul(x, y))
            twice = tuple(F.add(a, a) for a in x)
            self.assertEqual(alg.apply(twice, y), ext.add(ext.mul(x, y), ext.mul(x, y)))

    def test_spot_check(self):
        alg = build_symmetric_algorithm(plan_evaluation(7, 5))
        self.assertEqual(spot_check(alg, 50, seed=11), 0)
        self.assertEqual(spot_check(alg), 0)

    def test_corruption_is_detected(self):
        alg = build_symmetric_algorithm(plan_evaluation(4, 3))
        F = alg.field
        index = next(i for i, term in enumerate(alg.terms) if any(term.linear_form))
        term = alg.terms[index]
        broken = Term(term.linear_form, (F.add(term.constant[0], 1),) + term.constant[1:])
        corrupted = replace(alg, terms=alg.terms[:index] + (broken,) + alg.terms[index + 1:])
        report = verify_algorithm(corrupted)
        self.assertFalse(report.ok)
        self.assertTrue(report.failures)
        self.assertFalse(verify_algorithm(corrupted, exhaustive=False).ok)
