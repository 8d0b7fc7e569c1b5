"""Point counts of Weierstrass curves over small finite fields and the descent-form test.

The genus-1 model checked here lives over Q(r), r^2 - r - 3 = 0:

    y^2 + (r + 1)xy + (r + 1)y = x^3 + (16383r - 38230)x + (1551027r - 3576436)

At a prime p inert in Q(r) its reduction is a curve over F_p[t]/(t^2 - t - 3). A curve
that descends to Q has trace a_p^2 - 2p over F_{p^2}, where a_p is its trace over F_p.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional, Tuple

import numpy as np
from sympy import integer_nthroot, isprime

from symmul.errors import DomainError, InapplicableError, InvariantError, UsageError
from symmul.gf import FieldSpec, Poly, field_with_modulus, galois_field, is_irreducible
from symmul.settings import base_settings

__all__ = [
    'WeierstrassCurve', 'CANONICAL_MODEL', 'RATIONAL_CONTROL',
    'canonical_coefficients', 'reduce_canonical_curve', 'reduce_rational_curve',
    'discriminant', 'count_points', 'trace_of_frobenius', 'within_hasse',
    'is_descent_form', 'base_change_trace', 'descent_control', 'shimura_payload',
]

# coefficient -> (c0, c1) meaning c0 + c1·r
CANONICAL_MODEL: Dict[str, Tuple[int, int]] = {
    'a1': (1, 1),
    'a3': (1, 1),
    'a4': (-38230, 16383),
    'a6': (-3576436, 1551027),
}

# y^2 + xy + y = x^3 - 70997x + 7275296
RATIONAL_CONTROL: Dict[str, int] = {'a1': 1, 'a3': 1, 'a4': -70997, 'a6': 7275296}


@dataclass(frozen=True)
class WeierstrassCurve:
    """y^2 + a1·xy + a3·y = x^3 + a2·x^2 + a4·x + a6 with coefficients as element indices."""
    field: FieldSpec
    a1: int
    a3: int
    a4: int
    a6: int
    a2: int = 0

    def __post_init__(self):
        for name in ('a1', 'a2', 'a3', 'a4', 'a6'):
            self.field.check(getattr(self, name))
        if discriminant(self) == 0:
            raise DomainError(detail=f'{self} is singular')

    @property
    def q(self) -> int:
        return self.field.q

    def contains(self, x: int, y: int) -> bool:
        F = self.field
        lhs = F.add(F.mul(y, y), F.mul(y, F.add(F.mul(self.a1, x), self.a3)))
        return lhs == self._rhs(x)

    def _rhs(self, x: int) -> int:
        F = self.field
        x2 = F.mul(x, x)
        return F.add(F.add(F.mul(x2, x), F.mul(self.a2, x2)), F.add(F.mul(self.a4, x), self.a6))

    def __str__(self):
        F = self.field
        a1, a2, a3, a4, a6 = (str(F.element(a)) for a in (self.a1, self.a2, self.a3, self.a4, self.a6))
        return f'E[{a1}, {a2}, {a3}, {a4}, {a6}] over {F}'


def discriminant(c: WeierstrassCurve) -> int:
    F = c.field
    mul, add, sub = F.mul, F.add, F.sub

    def k(n: int) -> int:
        return F.embed(n)

    b2 = add(mul(c.a1, c.a1), mul(k(4), c.a2))
    b4 = add(mul(k(2), c.a4), mul(c.a1, c.a3))
    b6 = add(mul(c.a3, c.a3), mul(k(4), c.a6))
    b8 = sub(
        add(add(mul(mul(c.a1, c.a1), c.a6), mul(k(4), mul(c.a2, c.a6))), mul(c.a2, mul(c.a3, c.a3))),
        add(mul(c.a1, mul(c.a3, c.a4)), mul(c.a4, c.a4)),
    )
    return sub(
        add(mul(k(9), mul(b2, mul(b4, b6))), F.neg(mul(mul(b2, b2), b8))),
        add(mul(k(8), mul(b4, mul(b4, b4))), mul(k(27), mul(b6, b6))),
    )


def canonical_coefficients(p: int) -> Dict[str, Tuple[int, int]]:
    if not isprime(p):
        raise UsageError(detail=f'{p} is not prime')
    return {name: (c0 % p, c1 % p) for name, (c0, c1) in CANONICAL_MODEL.items()}


def _defining_poly(p: int) -> Poly:
    return Poly(FieldSpec(p), ((-3) % p, (-1) % p, 1))


def reduce_canonical_curve(p: int) -> WeierstrassCurve:
    """The model over F_p[t]/(t^2 - t - 3) with r -> t; p must be inert."""
    coefficients = canonical_coefficients(p)
    if not is_irreducible(_defining_poly(p)):
        raise InapplicableError(detail=f't^2 - t - 3 splits mod {p}; the residue field is not F_{p * p}')
    F = field_with_modulus(p, _defining_poly(p).coeffs)
    return WeierstrassCurve(F, **{name: F.index(pair) for name, pair in coefficients.items()})


def reduce_rational_curve(p: int, a1: int, a3: int, a4: int, a6: int, degree: int = 1, a2: int = 0) -> WeierstrassCurve:
    if not isprime(p):
        raise UsageError(detail=f'{p} is not prime')
    if degree < 1:
        raise UsageError(detail=f'extension degree {degree} < 1')
    F = galois_field(p ** degree)
    return WeierstrassCurve(F, a1=F.embed(a1), a3=F.embed(a3), a4=F.embed(a4), a6=F.embed(a6), a2=F.embed(a2))


def _check_size(c: WeierstrassCurve):
    if c.q > base_settings.POINT_COUNT_LIMIT:
        raise UsageError(detail=f'|{c.field}| exceeds POINT_COUNT_LIMIT={base_settings.POINT_COUNT_LIMIT}')


def _rhs(c: WeierstrassCurve, xs: np.ndarray) -> np.ndarray:
    F = c.field
    x2 = F.vmul(xs, xs)
    return F.vadd(F.vadd(F.vmul(x2, xs), F.vmul(c.a2, x2)), F.vadd(F.vmul(c.a4, xs), c.a6))


def count_points(c: WeierstrassCurve) -> int:
    _check_size(c)
    F = c.field
    xs = np.arange(F.q, dtype=np.int64)
    rhs = _rhs(c, xs)
    linear = F.vadd(F.vmul(c.a1, xs), c.a3)

    if F.p != 2:
        # (2y + a1x + a3)^2 = (a1x + a3)^2 + 4(x^3 + a2x^2 + a4x + a6)
        disc = F.vadd(F.vmul(linear, linear), F.vmul(F.embed(4), rhs))
        return 1 + F.q + int(F.quadratic_character(disc).sum())

    total = 1
    for y in range(F.q):
        lhs = F.vadd(F.vmul(y, y), F.vmul(y, linear))
        total += int(np.count_nonzero(lhs == rhs))
    return total


def trace_of_frobenius(c: WeierstrassCurve) -> int:
    trace = c.q + 1 - count_points(c)
    if not within_hasse(trace, c.q):
        raise InvariantError(detail=f'trace {trace} of {c} breaks |a| <= 2 sqrt({c.q})')
    return trace


def within_hasse(trace: int, q: int) -> bool:
    return trace * trace <= 4 * q


def is_descent_form(trace: int, p: int) -> bool:
    """Whether trace = m^2 - 2p for some integer m >= 0."""
    value = trace + 2 * p
    if value < 0:
        return False
    return bool(integer_nthroot(value, 2)[1])


def base_change_trace(a: int, p: int) -> int:
    """Trace over F_{p^2} of a curve over F_p with trace a."""
    return a * a - 2 * p


def descent_control(p: int, coefficients: Optional[Dict[str, int]] = None) -> Dict[str, int]:
    coefficients = RATIONAL_CONTROL if coefficients is None else coefficients
    base = reduce_rational_curve(p, **coefficients)
    quadratic = reduce_rational_curve(p, degree=2, **coefficients)
    a = trace_of_frobenius(base)
    return {'p': p, 'trace_base': a, 'trace': trace_of_frobenius(quadratic), 'expected': base_change_trace(a, p)}


def shimura_payload(p: int) -> Dict[str, object]:
    try:
        curve = reduce_canonical_curve(p)
    except InapplicableError:
        return {'p': p, 'irreducible': False, 'points': None, 'trace': None, 'descent_form': None}
    trace = trace_of_frobenius(curve)
    points = curve.q + 1 - trace
    return {
        'p': p,
        'irreducible': True,
        'points': points,
        'trace': trace,
        'descent_form': is_descent_form(trace, p),
    }
