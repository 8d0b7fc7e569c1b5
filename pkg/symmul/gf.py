# F_q elements are int indices: the little-endian base-p digits of an index are its
# coefficients in the basis 1, y, ..., y^(r-1).
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np
from django.utils.functional import cached_property
from sympy import divisors, factorint, isprime, mobius

from symmul.errors import DomainError, InvariantError, UsageError

__all__ = [
    'prime_power', 'FieldSpec', 'FieldElement', 'Poly', 'ExtensionField',
    'galois_field', 'field_with_modulus', 'poly_gcd', 'poly_invmod',
    'is_irreducible', 'find_irreducible', 'count_irreducibles', 'monic_polynomials',
    'matmul', 'rank', 'left_inverse',
]


def prime_power(q: int) -> Tuple[int, int]:
    if isinstance(q, bool) or not isinstance(q, (int, np.integer)) or q < 2:
        raise UsageError(detail=f'{q} is not a prime power')
    factors = factorint(int(q))
    if len(factors) != 1:
        raise UsageError(detail=f'{q} is not a prime power')
    (p, r), = factors.items()
    return int(p), int(r)


@dataclass(frozen=True)
class FieldSpec:
    p: int
    r: int = 1
    modulus: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        if not isprime(self.p):
            raise UsageError(detail=f'characteristic {self.p} is not prime')
        if self.r < 1:
            raise UsageError(detail=f'extension degree {self.r} < 1')
        if self.r == 1:
            if self.modulus is not None:
                raise UsageError(detail='prime fields take no modulus')
            return

        if self.modulus is None:
            raise UsageError(detail=f'F_{self.p}^{self.r} needs a modulus')
        modulus = tuple(int(c) for c in self.modulus)
        if len(modulus) != self.r + 1 or modulus[-1] != 1 or any(not 0 <= c < self.p for c in modulus):
            raise UsageError(detail=f'modulus {modulus} is not a monic degree-{self.r} polynomial over F_{self.p}')
        object.__setattr__(self, 'modulus', modulus)

    def __str__(self):
        return f'F_{self.q}'

    @property
    def q(self) -> int:
        return self.p ** self.r

    @cached_property
    def _powers(self) -> np.ndarray:
        return self.p ** np.arange(self.r, dtype=np.int64)

    # scalar arithmetic on indices

    def coeffs(self, a: int) -> Tuple[int, ...]:
        digits = []
        for _ in range(self.r):
            a, c = divmod(a, self.p)
            digits.append(c)
        return tuple(digits)

    def index(self, coeffs: Sequence[int]) -> int:
        value = 0
        for c in reversed(coeffs):
            value = value * self.p + int(c) % self.p
        return value

    def embed(self, k: int) -> int:
        return int(k) % self.p

    def check(self, a: int) -> int:
        if not 0 <= a < self.q:
            raise UsageError(detail=f'{a} is not an element index of {self}')
        return a

    def add(self, a: int, b: int) -> int:
        if self.r == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return self.index([x + y for x, y in zip(self.coeffs(a), self.coeffs(b))])

    def neg(self, a: int) -> int:
        if self.r == 1:
            return -a % self.p
        if self.p == 2:
            return a
        return self.index([-x for x in self.coeffs(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def _mul_digits(self, u: Sequence[int], v: Sequence[int]) -> List[int]:
        p, r, m = self.p, self.r, self.modulus
        prod = [0] * (2 * r - 1)
        for i, x in enumerate(u):
            if x:
                for j, y in enumerate(v):
                    prod[i + j] += x * y
        for k in range(2 * r - 2, r - 1, -1):
            c = prod[k] % p
            if c:
                for j in range(r):
                    prod[k - r + j] -= c * m[j]
        return [c % p for c in prod[:r]]

    def mul(self, a: int, b: int) -> int:
        if self.r == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        return self.index(self._mul_digits(self.coeffs(a), self.coeffs(b)))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise DomainError(detail=f'inverse of zero in {self}')
        if self.r == 1:
            return pow(a, -1, self.p)
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    # vectorised arithmetic on index arrays

    def _vdigits(self, a: np.ndarray) -> np.ndarray:
        return (a[..., None] // self._powers) % self.p

    def _vindex(self, digits: np.ndarray) -> np.ndarray:
        return (digits * self._powers).sum(axis=-1)

    def vadd(self, a, b) -> np.ndarray:
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self.r == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return self._vindex((self._vdigits(a) + self._vdigits(b)) % self.p)

    def vneg(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.r == 1:
            return -a % self.p
        if self.p == 2:
            return a.copy()
        return self._vindex(-self._vdigits(a) % self.p)

    def vsub(self, a, b) -> np.ndarray:
        return self.vadd(a, self.vneg(b))

    def vmul(self, a, b) -> np.ndarray:
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        p, r = self.p, self.r
        if r == 1:
            return a * b % p
        da, db = self._vdigits(a), self._vdigits(b)
        prod = np.zeros(a.shape + (2 * r - 1,), dtype=np.int64)
        for i in range(r):
            for j in range(r):
                prod[..., i + j] += da[..., i] * db[..., j]
        for k in range(2 * r - 2, r - 1, -1):
            c = prod[..., k] % p
            for j in range(r):
                prod[..., k - r + j] -= c * self.modulus[j]
        return self._vindex(prod[..., :r] % p)

    def vpow(self, a, e: int) -> np.ndarray:
        base = np.asarray(a, dtype=np.int64)
        result = np.ones_like(base)
        while e:
            if e & 1:
                result = self.vmul(result, base)
            base = self.vmul(base, base)
            e >>= 1
        return result

    def vsum(self, a, axis: int = 0) -> np.ndarray:
        a = np.moveaxis(np.asarray(a, dtype=np.int64), axis, 0)
        if self.r == 1:
            return a.sum(axis=0) % self.p
        if self.p == 2:
            return np.bitwise_xor.reduce(a, axis=0)
        return self._vindex(self._vdigits(a).sum(axis=0) % self.p)

    def vdot(self, a, b, axis: int = -1) -> np.ndarray:
        return self.vsum(self.vmul(a, b), axis=axis)

    def quadratic_character(self, a) -> np.ndarray:
        """1 on nonzero squares, -1 on non-squares, 0 on zero (odd q only)."""
        if self.p == 2:
            raise UsageError(detail='quadratic character needs odd characteristic')
        a = np.asarray(a, dtype=np.int64)
        euler = self.vpow(a, (self.q - 1) // 2)
        return np.where(a == 0, 0, np.where(euler == 1, 1, -1))

    def is_square(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return np.ones(a.shape, dtype=bool)
        return self.quadratic_character(a) >= 0

    # public wrappers

    def element(self, value: Union[int, Sequence[int]]) -> FieldElement:
        if isinstance(value, (int, np.integer)):
            return FieldElement(self, self.coeffs(self.check(int(value))))
        return FieldElement(self, tuple(value))

    def elements(self) -> Iterator[FieldElement]:
        for a in range(self.q):
            yield FieldElement(self, self.coeffs(a))


@dataclass(frozen=True)
class FieldElement:
    spec: FieldSpec
    coeffs: Tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coeffs)
        if len(coeffs) != self.spec.r or any(not 0 <= c < self.spec.p for c in coeffs):
            raise UsageError(detail=f'{coeffs} is not an element of {self.spec}')
        object.__setattr__(self, 'coeffs', coeffs)

    @property
    def index(self) -> int:
        return self.spec.index(self.coeffs)

    def _operand(self, other: FieldElement) -> int:
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.spec != self.spec:
            raise UsageError(detail=f'cannot combine elements of {self.spec} and {other.spec}')
        return other.index

    def _wrap(self, a: int) -> FieldElement:
        return FieldElement(self.spec, self.spec.coeffs(a))

    def __add__(self, other: FieldElement) -> FieldElement:
        b = self._operand(other)
        return b if b is NotImplemented else self._wrap(self.spec.add(self.index, b))

    def __sub__(self, other: FieldElement) -> FieldElement:
        b = self._operand(other)
        return b if b is NotImplemented else self._wrap(self.spec.sub(self.index, b))

    def __mul__(self, other: FieldElement) -> FieldElement:
        b = self._operand(other)
        return b if b is NotImplemented else self._wrap(self.spec.mul(self.index, b))

    def __truediv__(self, other: FieldElement) -> FieldElement:
        b = self._operand(other)
        return b if b is NotImplemented else self._wrap(self.spec.div(self.index, b))

    def __neg__(self) -> FieldElement:
        return self._wrap(self.spec.neg(self.index))

    def __pow__(self, e: int) -> FieldElement:
        return self._wrap(self.spec.pow(self.index, e))

    def __bool__(self):
        return any(self.coeffs)

    def inverse(self) -> FieldElement:
        return self._wrap(self.spec.inv(self.index))

    def __str__(self):
        if self.spec.r == 1:
            return str(self.coeffs[0])
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = '' if i == 0 else ('y' if i == 1 else f'y^{i}')
                terms.append(str(c) if not mono else (mono if c == 1 else f'{c}{mono}'))
        return ' + '.join(terms) or '0'


@dataclass(frozen=True)
class Poly:
    base: FieldSpec
    coeffs: Tuple[int, ...] = ()

    def __post_init__(self):
        coeffs = [int(c) for c in self.coeffs]
        for c in coeffs:
            self.base.check(c)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, 'coeffs', tuple(coeffs))

    @classmethod
    def constant(cls, base: FieldSpec, c: int) -> Poly:
        return cls(base, (c,))

    @classmethod
    def monomial(cls, base: FieldSpec, k: int, c: int = 1) -> Poly:
        return cls(base, (0,) * k + (c,))

    @classmethod
    def x(cls, base: FieldSpec) -> Poly:
        return cls.monomial(base, 1)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.lead == 1

    def coefficient(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def _check(self, other: Poly):
        if not isinstance(other, Poly) or other.base != self.base:
            raise UsageError(detail=f'polynomials over different fields: {self.base} and {getattr(other, "base", other)}')

    def __add__(self, other: Poly) -> Poly:
        self._check(other)
        F = self.base
        size = max(len(self.coeffs), len(other.coeffs))
        return Poly(F, tuple(F.add(self.coefficient(i), other.coefficient(i)) for i in range(size)))

    def __neg__(self) -> Poly:
        return Poly(self.base, tuple(self.base.neg(c) for c in self.coeffs))

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other: Poly) -> Poly:
        self._check(other)
        F = self.base
        if self.is_zero() or other.is_zero():
            return Poly(F)
        prod = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        prod[i + j] = F.add(prod[i + j], F.mul(a, b))
        return Poly(F, tuple(prod))

    def scale(self, c: int) -> Poly:
        return Poly(self.base, tuple(self.base.mul(c, a) for a in self.coeffs))

    def __divmod__(self, other: Poly) -> Tuple[Poly, Poly]:
        self._check(other)
        if other.is_zero():
            raise DomainError(detail='polynomial division by zero')
        F = self.base
        rem = list(self.coeffs)
        d = other.degree
        inv_lead = F.inv(other.lead)
        quot = [0] * max(len(rem) - d, 0)
        for k in range(len(rem) - 1, d - 1, -1):
            c = rem[k]
            if not c:
                continue
            factor = F.mul(c, inv_lead)
            quot[k - d] = factor
            for j, b in enumerate(other.coeffs):
                rem[k - d + j] = F.sub(rem[k - d + j], F.mul(factor, b))
        return Poly(F, tuple(quot)), Poly(F, tuple(rem[:d]))

    def __mod__(self, other: Poly) -> Poly:
        return divmod(self, other)[1]

    def __floordiv__(self, other: Poly) -> Poly:
        return divmod(self, other)[0]

    def monic(self) -> Poly:
        if self.is_zero():
            raise DomainError(detail='zero polynomial has no monic associate')
        return self.scale(self.base.inv(self.lead))

    def derivative(self) -> Poly:
        F = self.base
        return Poly(F, tuple(F.mul(F.embed(i), c) for i, c in enumerate(self.coeffs))[1:])

    def __call__(self, a: int) -> int:
        F = self.base
        value = 0
        for c in reversed(self.coeffs):
            value = F.add(F.mul(value, a), c)
        return value

    def powmod(self, e: int, modulus: Poly) -> Poly:
        result = Poly.constant(self.base, 1) % modulus
        base = self % modulus
        while e:
            if e & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            e >>= 1
        return result

    def padded(self, length: int) -> Tuple[int, ...]:
        if len(self.coeffs) > length:
            raise UsageError(detail=f'degree {self.degree} does not fit {length} coefficients')
        return self.coeffs + (0,) * (length - len(self.coeffs))

    def __str__(self):
        if self.is_zero():
            return '0'
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = '' if i == 0 else ('x' if i == 1 else f'x^{i}')
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f'{c}*{mono}')
        return ' + '.join(terms)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero():
        a, b = b, a % b
    return a if a.is_zero() else a.monic()


def poly_invmod(a: Poly, modulus: Poly) -> Poly:
    F = a.base
    r0, r1 = modulus, a % modulus
    s0, s1 = Poly(F), Poly.constant(F, 1)
    while not r1.is_zero():
        quot, rem = divmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quot * s1
    if r0.degree != 0:
        raise DomainError(detail=f'{a} is not invertible modulo {modulus}')
    return (s0.scale(F.inv(r0.lead))) % modulus


def is_irreducible(f: Poly) -> bool:
    if f.is_zero():
        raise UsageError(detail='irreducibility of the zero polynomial')
    if f.degree < 1:
        return False
    if f.degree == 1:
        return True
    f = f.monic()
    x = Poly.x(f.base)
    h = x
    for _ in range(f.degree // 2):
        h = h.powmod(f.base.q, f)
        if poly_gcd(h - x, f).degree > 0:
            return False
    return True


def monic_polynomials(base: FieldSpec, d: int) -> Iterator[Poly]:
    for tail in itertools.product(range(base.q), repeat=d):
        yield Poly(base, tail + (1,))


def find_irreducible(base: FieldSpec, d: int) -> Poly:
    if d < 1:
        raise UsageError(detail=f'degree {d} < 1')
    for f in monic_polynomials(base, d):
        if is_irreducible(f):
            return f
    raise InvariantError(detail=f'no irreducible of degree {d} over {base}')


def count_irreducibles(base: FieldSpec, d: int) -> int:
    if d < 1:
        raise UsageError(detail=f'degree {d} < 1')
    return sum(int(mobius(e)) * base.q ** (d // e) for e in divisors(d)) // d


@lru_cache(maxsize=None)
def galois_field(q: int) -> FieldSpec:
    p, r = prime_power(q)
    if r == 1:
        return FieldSpec(p)
    modulus = find_irreducible(FieldSpec(p), r)
    return FieldSpec(p, r, modulus.coeffs)


def field_with_modulus(p: int, modulus: Sequence[int]) -> FieldSpec:
    prime = FieldSpec(p)
    poly = Poly(prime, tuple(c % p for c in modulus))
    if not poly.is_monic() or not is_irreducible(poly):
        raise UsageError(detail=f'{poly} is not a monic irreducible over F_{p}')
    return FieldSpec(p, poly.degree, poly.coeffs)


class ExtensionField:
    def __init__(self, base: FieldSpec, modulus: Poly):
        if modulus.base != base or not modulus.is_monic() or not is_irreducible(modulus):
            raise UsageError(detail=f'{modulus} is not a monic irreducible over {base}')
        self.base = base
        self.modulus = modulus
        self.n = modulus.degree

    def __eq__(self, other):
        return isinstance(other, ExtensionField) and (self.base, self.modulus) == (other.base, other.modulus)

    def __hash__(self):
        return hash((self.base, self.modulus))

    def __str__(self):
        return f'{self.base}[x]/({self.modulus})'

    @property
    def order(self) -> int:
        return self.base.q ** self.n

    def element(self, coeffs: Sequence[int]) -> Tuple[int, ...]:
        return (Poly(self.base, tuple(coeffs)) % self.modulus).padded(self.n)

    def to_poly(self, x: Sequence[int]) -> Poly:
        return Poly(self.base, tuple(x))

    def zero(self) -> Tuple[int, ...]:
        return (0,) * self.n

    def one(self) -> Tuple[int, ...]:
        return (1,) + (0,) * (self.n - 1)

    def basis(self, a: int) -> Tuple[int, ...]:
        return tuple(1 if i == a else 0 for i in range(self.n))

    def add(self, x: Sequence[int], y: Sequence[int]) -> Tuple[int, ...]:
        return tuple(self.base.add(a, b) for a, b in zip(x, y))

    def sub(self, x: Sequence[int], y: Sequence[int]) -> Tuple[int, ...]:
        return tuple(self.base.sub(a, b) for a, b in zip(x, y))

    def mul(self, x: Sequence[int], y: Sequence[int]) -> Tuple[int, ...]:
        return ((self.to_poly(x) * self.to_poly(y)) % self.modulus).padded(self.n)

    def inv(self, x: Sequence[int]) -> Tuple[int, ...]:
        if not any(x):
            raise DomainError(detail=f'inverse of zero in {self}')
        return poly_invmod(self.to_poly(x), self.modulus).padded(self.n)

    def elements(self) -> Iterator[Tuple[int, ...]]:
        return itertools.product(range(self.base.q), repeat=self.n)


def matmul(spec: FieldSpec, a, b) -> np.ndarray:
    a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
    return spec.vdot(a[:, :, None], b[None, :, :], axis=1)


def _row_reduce(spec: FieldSpec, rows: List[List[int]], ncols: int) -> Tuple[List[List[int]], List[int]]:
    rows = [list(row) for row in rows]
    pivots: List[int] = []
    lead = 0
    for col in range(ncols):
        if lead == len(rows):
            break
        pivot = next((i for i in range(lead, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[lead], rows[pivot] = rows[pivot], rows[lead]
        inv = spec.inv(rows[lead][col])
        rows[lead] = [spec.mul(inv, v) for v in rows[lead]]
        for i, row in enumerate(rows):
            factor = row[col]
            if i != lead and factor:
                rows[i] = [spec.sub(v, spec.mul(factor, w)) for v, w in zip(row, rows[lead])]
        pivots.append(col)
        lead += 1
    return rows, pivots


def rank(spec: FieldSpec, a) -> int:
    a = np.asarray(a, dtype=np.int64)
    if a.size == 0:
        return 0
    return len(_row_reduce(spec, a.tolist(), a.shape[1])[1])


def left_inverse(spec: FieldSpec, a) -> np.ndarray:
    """L with L·a = I for an (M x m) matrix a of full column rank."""
    a = np.asarray(a, dtype=np.int64)
    big, small = a.shape
    augmented = [a[:, i].tolist() + [1 if k == i else 0 for k in range(small)] for i in range(small)]
    rows, pivots = _row_reduce(spec, augmented, big)
    if len(pivots) < small:
        raise InvariantError(detail=f'coordinate matrix has rank {len(pivots)} < {small}')
    result = np.zeros((small, big), dtype=np.int64)
    for row, col in zip(rows, pivots):
        result[:, col] = row[big:]
    return result
