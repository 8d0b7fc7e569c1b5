"""Symmetric multiplication algorithms for F_{q^n}/F_q by evaluation at places of F_q(x).

Inputs are polynomials of degree < n (the monomial basis of F_q[x]/Q). Their product has
degree <= 2n - 2 and is recovered from its local data at degree-1 and degree-2 places, with
value only (u = 1) or value and first derivative (u = 2). Each place contributes a small
symmetric local kernel:

=======  ===  ========
degree   u    products
=======  ===  ========
1        1    1
1        2    3
2        1    3
2        2    9
=======  ===  ========
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import islice
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np
from django.utils.functional import cached_property

from symmul.errors import CapacityError, UsageError
from symmul.gf import (
    ExtensionField, FieldSpec, Poly, count_irreducibles, find_irreducible, galois_field,
    is_irreducible, left_inverse, matmul, monic_polynomials, prime_power,
)
from symmul.rfield import Place, local_coordinates, places_of_degree
from symmul.settings import base_settings
from symmul.utils.random import random_vectors

__all__ = [
    'PlanCounts', 'EvaluationPlan', 'Term', 'SymmetricAlgorithm', 'VerificationReport',
    'CoordinateSystem', 'local_kernel',
    'exhaustive_counts', 'greedy_counts', 'plan_evaluation', 'coordinate_system',
    'build_symmetric_algorithm', 'verify_algorithm', 'spot_check',
]

Kernel = List[Tuple[Tuple[int, ...], Tuple[int, ...]]]


@dataclass(frozen=True)
class PlanCounts:
    c1: int
    d1: int
    c2: int
    d2: int

    @property
    def N1(self) -> int:
        return self.c1 + self.d1

    @property
    def N2(self) -> int:
        return self.c2 + self.d2

    @property
    def coordinates(self) -> int:
        return self.c1 + 2 * self.d1 + 2 * self.c2 + 4 * self.d2

    @property
    def rank(self) -> int:
        return self.N1 + 2 * self.d1 + 3 * self.N2 + 6 * self.d2

    @property
    def key(self) -> Tuple[int, ...]:
        return self.rank, self.d1 + self.d2, self.N1 + self.N2, self.N2, self.d2


@dataclass(frozen=True)
class EvaluationPlan:
    q: int
    n: int
    Q: Place
    deg1_classical: Tuple[Place, ...] = ()
    deg1_derivative: Tuple[Place, ...] = ()
    deg2_classical: Tuple[Place, ...] = ()
    deg2_derivative: Tuple[Place, ...] = ()

    def __post_init__(self):
        if self.Q.is_infinity or self.Q.degree != self.n:
            raise UsageError(detail=f'target place {self.Q} does not have degree {self.n}')
        used = [place for place, _ in self.usage()]
        if len(set(used)) != len(used) or self.Q in used:
            raise UsageError(detail='evaluation places must be distinct and differ from the target place')
        for places, degree in ((self.deg1_classical + self.deg1_derivative, 1),
                               (self.deg2_classical + self.deg2_derivative, 2)):
            if any(place.degree != degree or place.base != self.field for place in places):
                raise UsageError(detail=f'expected degree-{degree} places over {self.field}')
        if self.coordinates < 2 * self.n - 1:
            raise CapacityError(
                detail=f'{self.coordinates} coordinates cannot determine products of degree {2 * self.n - 2}',
            )

    @property
    def field(self) -> FieldSpec:
        return self.Q.base

    @property
    def counts(self) -> PlanCounts:
        return PlanCounts(
            len(self.deg1_classical), len(self.deg1_derivative),
            len(self.deg2_classical), len(self.deg2_derivative),
        )

    @property
    def N1(self) -> int:
        return self.counts.N1

    @property
    def a1(self) -> int:
        return len(self.deg1_derivative)

    @property
    def N2(self) -> int:
        return self.counts.N2

    @property
    def a2(self) -> int:
        return len(self.deg2_derivative)

    @property
    def coordinates(self) -> int:
        return self.counts.coordinates

    @property
    def rank(self) -> int:
        return self.counts.rank

    @property
    def input_bound(self) -> int:
        return self.n - 1

    @property
    def product_bound(self) -> int:
        return 2 * self.n - 2

    def usage(self) -> List[Tuple[Place, int]]:
        return (
            [(place, 1) for place in self.deg1_classical]
            + [(place, 2) for place in self.deg1_derivative]
            + [(place, 1) for place in self.deg2_classical]
            + [(place, 2) for place in self.deg2_derivative]
        )


@dataclass(frozen=True)
class Term:
    linear_form: Tuple[int, ...]
    constant: Tuple[int, ...]


@dataclass(frozen=True)
class SymmetricAlgorithm:
    field: FieldSpec
    modulus: Poly
    terms: Tuple[Term, ...]
    plan: Optional[EvaluationPlan] = None

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def n(self) -> int:
        return self.modulus.degree

    @property
    def rank(self) -> int:
        return len(self.terms)

    @cached_property
    def extension(self) -> ExtensionField:
        return ExtensionField(self.field, self.modulus)

    @cached_property
    def forms(self) -> np.ndarray:
        return np.array([term.linear_form for term in self.terms], dtype=np.int64).reshape(self.rank, self.n)

    @cached_property
    def constants(self) -> np.ndarray:
        return np.array([term.constant for term in self.terms], dtype=np.int64).reshape(self.rank, self.n)

    def apply(self, x: Sequence[int], y: Sequence[int]) -> Tuple[int, ...]:
        F = self.field
        lx = F.vdot(self.forms, np.asarray(x, dtype=np.int64)[None, :], axis=1)
        ly = F.vdot(self.forms, np.asarray(y, dtype=np.int64)[None, :], axis=1)
        weights = F.vmul(lx, ly)
        return tuple(int(v) for v in F.vdot(weights[:, None], self.constants, axis=0))


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    rank: int
    pairs: int
    exhaustive: bool
    failures: Tuple[Tuple[int, int], ...] = ()


def _residue_kernel(F: FieldSpec, place: Place) -> Kernel:
    if place.degree == 1:
        return [((1,), (1,))]
    # Karatsuba in F_q[x]/P on the basis 1, theta
    theta_sq = (Poly.monomial(F, 2) % place.poly).padded(2)
    return [
        ((1, 0), (1, F.neg(1))),
        ((0, 1), (theta_sq[0], F.sub(theta_sq[1], 1))),
        ((1, 1), (0, 1)),
    ]


def local_kernel(F: FieldSpec, place: Place, u: int) -> Kernel:
    """Symmetric products (form, contribution) over the local coordinates of ``place``."""
    inner = _residue_kernel(F, place)
    if u == 1:
        return inner
    if u != 2:
        raise UsageError(detail=f'multiplicity {u} is not supported')
    minus = F.neg(1)
    # (f0 + f1 t)(g0 + g1 t) mod t^2
    outer = [((1, 0), (1, minus)), ((0, 1), (0, minus)), ((1, 1), (0, 1))]
    return [
        (
            tuple(F.mul(a, b) for a in outer_form for b in inner_form),
            tuple(F.mul(a, b) for a in outer_contribution for b in inner_contribution),
        )
        for outer_form, outer_contribution in outer
        for inner_form, inner_contribution in inner
    ]


def _local_matrix(F: FieldSpec, place: Place, u: int, bound: int) -> np.ndarray:
    columns = [local_coordinates(Poly.monomial(F, k), place, u, bound) for k in range(bound + 1)]
    return np.array(columns, dtype=np.int64).T


class CoordinateSystem:
    def __init__(self, plan: EvaluationPlan):
        F = plan.field
        self.field = F
        self.plan = plan
        self.blocks = [_local_matrix(F, place, u, plan.product_bound) for place, u in plan.usage()]
        self.matrix = np.vstack(self.blocks)
        self.inverse = left_inverse(F, self.matrix)

    def evaluate(self, h: Poly) -> np.ndarray:
        coeffs = np.array(h.padded(self.plan.product_bound + 1), dtype=np.int64)
        return matmul(self.field, self.matrix, coeffs[:, None])[:, 0]

    def interpolate(self, z: Sequence[int]) -> Poly:
        values = matmul(self.field, self.inverse, np.asarray(z, dtype=np.int64)[:, None])[:, 0]
        return Poly(self.field, tuple(int(v) for v in values))


def coordinate_system(plan: EvaluationPlan) -> CoordinateSystem:
    return CoordinateSystem(plan)


def _check_field(q: int, n: int) -> FieldSpec:
    prime_power(q)
    if q > base_settings.PLAN_SEARCH_LIMIT:
        raise UsageError(detail=f'q={q} exceeds PLAN_SEARCH_LIMIT={base_settings.PLAN_SEARCH_LIMIT}')
    if isinstance(n, bool) or not isinstance(n, int) or n < 2:
        raise UsageError(detail=f'n must be an integer >= 2, got {n}')
    return galois_field(q)


def _inventory(F: FieldSpec, n: int) -> Tuple[int, int]:
    # a degree-2 target place is not available for evaluation
    return F.q + 1, count_irreducibles(F, 2) - (1 if n == 2 else 0)


def _deficit(F: FieldSpec, n: int) -> CapacityError:
    deg1, deg2 = _inventory(F, n)
    capacity = 2 * deg1 + 4 * deg2
    return CapacityError(
        detail=f'F_{F.q}(x) offers {capacity} coordinates, {2 * n - 1 - capacity} short of {2 * n - 1}',
        extra={'capacity': capacity, 'required': 2 * n - 1},
    )


def _feasible_counts(F: FieldSpec, n: int) -> Iterator[PlanCounts]:
    need = 2 * n - 1
    deg1, deg2 = _inventory(F, n)
    for N1 in range(deg1 + 1):
        for d1 in range(N1 + 1):
            rest = need - N1 - d1
            if rest <= 0:
                yield PlanCounts(N1 - d1, d1, 0, 0)
                continue
            for N2 in range(min(deg2, math.ceil(rest / 2)) + 1):
                for d2 in range(N2 + 1):
                    if 2 * (N2 + d2) >= rest:
                        yield PlanCounts(N1 - d1, d1, N2 - d2, d2)


def exhaustive_counts(q: int, n: int) -> PlanCounts:
    F = _check_field(q, n)
    best = min(_feasible_counts(F, n), key=lambda counts: counts.key, default=None)
    if best is None:
        raise _deficit(F, n)
    return best


def greedy_counts(q: int, n: int) -> PlanCounts:
    F = _check_field(q, n)
    deg1, deg2 = _inventory(F, n)
    need = 2 * n - 1
    c1 = min(need, deg1)
    need -= c1
    d1 = c2 = d2 = 0
    while need > 0:
        if need >= 2 and c2 + d2 < deg2:
            c2, need = c2 + 1, need - 2
        elif c1 > 0:
            c1, d1, need = c1 - 1, d1 + 1, need - 1
        elif c2 + d2 < deg2:
            c2, need = c2 + 1, need - 2
        elif c2 > 0:
            c2, d2, need = c2 - 1, d2 + 1, need - 2
        else:
            raise _deficit(F, n)
    return PlanCounts(c1, d1, c2, d2)


def _degree2_places(F: FieldSpec, count: int, exclude: Poly) -> List[Place]:
    polys = (f for f in monic_polynomials(F, 2) if f != exclude and is_irreducible(f))
    return [Place(F, f) for f in islice(polys, count)]


def plan_evaluation(q: int, n: int) -> EvaluationPlan:
    F = _check_field(q, n)
    counts = exhaustive_counts(q, n)
    target = find_irreducible(F, n)
    deg1 = places_of_degree(F, 1)[:counts.N1]
    deg2 = _degree2_places(F, counts.N2, target)
    return EvaluationPlan(
        q=q, n=n, Q=Place(F, target),
        deg1_classical=tuple(deg1[counts.d1:]), deg1_derivative=tuple(deg1[:counts.d1]),
        deg2_classical=tuple(deg2[counts.d2:]), deg2_derivative=tuple(deg2[:counts.d2]),
    )


def build_symmetric_algorithm(plan: EvaluationPlan) -> SymmetricAlgorithm:
    F = plan.field
    system = coordinate_system(plan)
    terms: List[Term] = []
    offset = 0
    for place, u in plan.usage():
        inputs = _local_matrix(F, place, u, plan.input_bound)
        width = inputs.shape[0]
        dual = system.inverse[:, offset:offset + width]
        for form, contribution in local_kernel(F, place, u):
            linear = F.vdot(np.array(form, dtype=np.int64)[:, None], inputs, axis=0)
            product = F.vdot(dual, np.array(contribution, dtype=np.int64)[None, :], axis=1)
            constant = (Poly(F, tuple(int(v) for v in product)) % plan.Q.poly).padded(plan.n)
            terms.append(Term(tuple(int(v) for v in linear), constant))
        offset += width
    return SymmetricAlgorithm(field=F, modulus=plan.Q.poly, terms=tuple(terms), plan=plan)


def _bilinear(alg: SymmetricAlgorithm, xs: np.ndarray) -> np.ndarray:
    """alg applied to every pair of rows of xs, shape (len, len, n)."""
    F = alg.field
    values = F.vdot(xs[:, None, :], alg.forms[None, :, :], axis=2)
    weights = F.vmul(values[:, None, :], values[None, :, :])
    return F.vdot(weights[..., None], alg.constants[None, None, :, :], axis=2)


def verify_algorithm(alg: SymmetricAlgorithm, exhaustive: Optional[bool] = None) -> VerificationReport:
    ext = alg.extension
    if exhaustive is None:
        exhaustive = ext.order <= base_settings.EXHAUSTIVE_VERIFY_LIMIT
    if exhaustive:
        elements = [tuple(x) for x in ext.elements()]
    else:
        elements = [ext.basis(a) for a in range(alg.n)]

    got = _bilinear(alg, np.array(elements, dtype=np.int64).reshape(len(elements), alg.n))
    failures = tuple(
        (i, j)
        for i, x in enumerate(elements)
        for j, y in enumerate(elements)
        if tuple(int(v) for v in got[i, j]) != ext.mul(x, y)
    )
    return VerificationReport(
        ok=not failures, rank=alg.rank, pairs=len(elements) ** 2, exhaustive=exhaustive, failures=failures,
    )


def spot_check(alg: SymmetricAlgorithm, samples: int = None, seed: int = None) -> int:
    samples = base_settings.SPOT_CHECK_SAMPLES if samples is None else samples
    seed = base_settings.RANDOM_SEED if seed is None else seed
    ext = alg.extension
    xs = random_vectors(alg.q, samples, alg.n, seed=seed)
    ys = random_vectors(alg.q, samples, alg.n, seed=seed + 1)
    return sum(
        alg.apply(x, y) != ext.mul(tuple(int(v) for v in x), tuple(int(v) for v in y))
        for x, y in zip(xs, ys)
    )
