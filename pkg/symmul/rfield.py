"""Places of the rational function field F_q(x) and local evaluation at them.

A finite place is a monic irreducible P; its residue field is F_q[x]/P with basis
1, x, ..., x^(d-1). The uniformizer is P itself, so the order-1 coefficient of f is
(f' mod P)·(P' mod P)^-1, which reduces to f'(alpha) at a degree-1 place x - alpha.
The place at infinity reads coefficients relative to a degree bound B: value is the
coefficient of x^B, derivative the coefficient of x^(B-1).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

from symmul.errors import UsageError
from symmul.gf import FieldSpec, Poly, is_irreducible, monic_polynomials, poly_invmod

__all__ = [
    'Place', 'LocalValue',
    'places_of_degree', 'enumerate_places',
    'evaluate', 'evaluate_with_derivative', 'local_coordinates',
]


@dataclass(frozen=True)
class Place:
    base: FieldSpec
    poly: Optional[Poly] = None

    def __post_init__(self):
        if self.poly is None:
            return
        if self.poly.base != self.base:
            raise UsageError(detail=f'place polynomial {self.poly} is not over {self.base}')
        if not self.poly.is_monic() or not is_irreducible(self.poly):
            raise UsageError(detail=f'{self.poly} is not monic irreducible over {self.base}')

    @classmethod
    def infinity(cls, base: FieldSpec) -> Place:
        return cls(base)

    @classmethod
    def finite(cls, poly: Poly) -> Place:
        return cls(poly.base, poly)

    @property
    def is_infinity(self) -> bool:
        return self.poly is None

    @property
    def degree(self) -> int:
        return 1 if self.poly is None else self.poly.degree

    @property
    def sort_key(self) -> Tuple[int, int, Tuple[int, ...]]:
        if self.poly is None:
            return 1, 1, ()
        return self.degree, 0, self.poly.coeffs[:-1]

    def __lt__(self, other: Place) -> bool:
        return self.sort_key < other.sort_key

    def __str__(self):
        return 'inf' if self.poly is None else str(self.poly)


@dataclass(frozen=True)
class LocalValue:
    value: Tuple[int, ...]
    derivative: Optional[Tuple[int, ...]] = None

    @property
    def coordinates(self) -> Tuple[int, ...]:
        return self.value + (self.derivative or ())


def places_of_degree(base: FieldSpec, d: int) -> List[Place]:
    if d == 1:
        finite = [Place(base, Poly(base, (c, 1))) for c in range(base.q)]
        return finite + [Place.infinity(base)]
    if d == 2:
        return [Place(base, f) for f in monic_polynomials(base, 2) if is_irreducible(f)]
    raise UsageError(detail=f'places of degree {d} are not supported')


def enumerate_places(base: FieldSpec, max_degree: int) -> List[Place]:
    if max_degree not in (1, 2):
        raise UsageError(detail=f'max_degree must be 1 or 2, got {max_degree}')
    places = places_of_degree(base, 1)
    if max_degree == 2:
        places += places_of_degree(base, 2)
    return places


def _check_bound(f: Poly, degree_bound: int):
    if f.degree > degree_bound:
        raise UsageError(detail=f'degree {f.degree} exceeds the bound {degree_bound}')


def _residue(f: Poly, place: Place) -> Tuple[int, ...]:
    return (f % place.poly).padded(place.degree)


def evaluate(f: Poly, place: Place, degree_bound: int) -> LocalValue:
    _check_bound(f, degree_bound)
    if place.is_infinity:
        return LocalValue((f.coefficient(degree_bound),))
    return LocalValue(_residue(f, place))


def evaluate_with_derivative(f: Poly, place: Place, degree_bound: int) -> LocalValue:
    _check_bound(f, degree_bound)
    if place.is_infinity:
        return LocalValue((f.coefficient(degree_bound),), (f.coefficient(degree_bound - 1),))

    P = place.poly
    slope = poly_invmod(P.derivative() % P, P)
    derivative = ((f.derivative() % P) * slope) % P
    return LocalValue(_residue(f, place), derivative.padded(place.degree))


def local_coordinates(f: Poly, place: Place, u: int, degree_bound: int) -> Tuple[int, ...]:
    if u == 1:
        return evaluate(f, place, degree_bound).coordinates
    if u == 2:
        return evaluate_with_derivative(f, place, degree_bound).coordinates
    raise UsageError(detail=f'multiplicity {u} is not supported')
