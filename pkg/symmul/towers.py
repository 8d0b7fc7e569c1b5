"""Genus and place-count data for the Garcia-Stichtenoth towers.

Two families, each usable over a base field or its quadratic extension:

- the Artin-Schreier tower with steps (k, s), 0 <= s < r, where q = p^r >= 4 and the
  step (k, r) is identified with (k + 1, 0);
- the Kummer tower y^2 = (x^2 + 1)/2x with steps k >= 0, for odd p.

Exact genera come from closed formulas. Intermediate Artin-Schreier steps only have a
certified interval, and bound computations must stay on the safe side of it. Square roots
are never evaluated: every comparison involving one is done on squares.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterator, Optional, Tuple

from sympy import integer_nthroot

from symmul.errors import InapplicableError, UsageError
from symmul.gf import prime_power
from symmul.settings import base_settings

__all__ = [
    'Family', 'TowerId', 'TowerStep', 'SmallCaseFixture', 'FIXTURES',
    'as_genus', 'kummer_genus', 'kummer_delta_genus',
    'as_step_bounds', 'as_genus_upper', 'step_capacity', 'kummer_step_bounds', 'fixture_step', 'iter_steps',
    'delta_genus_lower', 'n0_lower', 'place_of_degree_exists',
    'fixture_lookup', 'fixture_consistent',
]


class Family(str, Enum):
    AS_QUADRATIC = 'as_quadratic'
    AS_BASE = 'as_base'
    KUMMER_QUADRATIC = 'kummer_quadratic'
    KUMMER_BASE = 'kummer_base'

    @property
    def is_quadratic(self) -> bool:
        return self in (Family.AS_QUADRATIC, Family.KUMMER_QUADRATIC)

    @property
    def is_kummer(self) -> bool:
        return self in (Family.KUMMER_QUADRATIC, Family.KUMMER_BASE)


@dataclass(frozen=True)
class TowerId:
    family: Family
    p: int
    r: int = 1

    def __post_init__(self):
        object.__setattr__(self, 'family', Family(self.family))
        if prime_power(self.q) != (self.p, self.r):
            raise UsageError(detail=f'{self.p}^{self.r} is not a prime power')
        if self.family.is_kummer:
            if self.r != 1 or self.p < 3:
                raise UsageError(detail=f'the Kummer tower needs an odd prime, got {self.q}')
        elif self.q < 4:
            raise UsageError(detail=f'the Artin-Schreier tower needs q >= 4, got {self.q}')

    @classmethod
    def for_field(cls, family: Family, field_size: int) -> TowerId:
        family = Family(family)
        p, e = prime_power(field_size)
        if family.is_quadratic:
            if e % 2:
                raise InapplicableError(detail=f'{family.value} needs a square field size, got {field_size}')
            e //= 2
        if family.is_kummer and (e != 1 or p < 5):
            raise InapplicableError(detail=f'{family.value} needs p >= 5 prime, got field size {field_size}')
        if not family.is_kummer and p ** e < 4:
            raise InapplicableError(detail=f'{family.value} needs q >= 4, got field size {field_size}')
        return cls(family, p, e)

    @property
    def q(self) -> int:
        return self.p ** self.r

    @property
    def field_size(self) -> int:
        return self.q ** 2 if self.family.is_quadratic else self.q

    def __str__(self):
        return f'{self.family.value}({self.q})'


@dataclass(frozen=True)
class TowerStep:
    tower: TowerId
    k: int
    s: int
    genus_lower: int
    genus_upper: int
    places_lower: int
    genus_exact: Optional[int] = None
    nonspecial_divisor: bool = False
    tabulated: bool = False

    @property
    def capacity(self) -> int:
        """Largest n with 2n <= places_lower - 2·genus_upper + 1."""
        return (self.places_lower - 2 * self.genus_upper + 1) // 2

    @property
    def label(self) -> str:
        return f'({self.k},{self.s})'

    def __str__(self):
        return f'{self.tower}{self.label}'


@dataclass(frozen=True)
class SmallCaseFixture:
    q: int
    k: int
    s: int
    N1: int
    N2: int
    g: int
    gamma: int
    n_min: int
    n_max: int

    @property
    def n_range(self) -> Tuple[int, int]:
        return self.n_min, self.n_max

    @property
    def places(self) -> int:
        return self.N1 + 2 * self.N2


# step data computed for the base Artin-Schreier tower over F_q
FIXTURES: Tuple[SmallCaseFixture, ...] = (
    SmallCaseFixture(q=4, k=1, s=1, N1=5, N2=14, g=2, gamma=15, n_min=5, n_max=11),
    SmallCaseFixture(q=8, k=1, s=1, N1=9, N2=124, g=12, gamma=117, n_min=7, n_max=11),
    SmallCaseFixture(q=9, k=1, s=1, N1=10, N2=117, g=9, gamma=113, n_min=8, n_max=11),
    SmallCaseFixture(q=5, k=2, s=0, N1=6, N2=60, g=10, gamma=53, n_min=5, n_max=11),
    SmallCaseFixture(q=7, k=2, s=0, N1=8, N2=168, g=21, gamma=151, n_min=7, n_max=11),
    SmallCaseFixture(q=11, k=2, s=0, N1=12, N2=660, g=55, gamma=611, n_min=9, n_max=12),
    SmallCaseFixture(q=13, k=2, s=0, N1=14, N2=1092, g=78, gamma=1021, n_min=11, n_max=11),
)


def _check_as(q: int) -> Tuple[int, int]:
    p, r = prime_power(q)
    if q < 4:
        raise UsageError(detail=f'the Artin-Schreier tower needs q >= 4, got {q}')
    return p, r


def as_genus(q: int, k: int) -> int:
    _check_as(q)
    if k < 1:
        raise UsageError(detail=f'tower level k={k} < 1')
    if k % 2:
        return q ** k + q ** (k - 1) - q ** ((k + 1) // 2) - 2 * q ** ((k - 1) // 2) + 1
    h = k // 2
    return (2 * q ** k + 2 * q ** (k - 1) - q ** (h + 1) - 3 * q ** h - 2 * q ** (h - 1) + 2) // 2


def kummer_genus(k: int) -> int:
    if k < 0:
        raise UsageError(detail=f'tower level k={k} < 0')
    if k % 2:
        return 2 ** (k + 1) - 2 * 2 ** ((k + 1) // 2) + 1
    return 2 ** (k + 1) - 3 * 2 ** (k // 2) + 1


def kummer_delta_genus(k: int) -> int:
    return kummer_genus(k + 1) - kummer_genus(k)


def _nonspecial(field_size: int, genus_lower: int, genus_upper: int) -> bool:
    # genus 0 carries the zero divisor class in degree -1
    return genus_upper == 0 or (field_size >= 4 and genus_lower >= 2)


def _as_exact(q: int, k: int, s: int, r: int) -> Optional[int]:
    if s == 0:
        return as_genus(q, k)
    return as_genus(q, k + 1) if s == r else None


def as_genus_upper(q: int, k: int, s: int) -> int:
    """Certified upper bound on the genus of the Artin-Schreier step (k, s).

    Exact at s = 0 and s = r. In between it is the smallest of g_{k+1}/p^(r-s) + 1,
    q^(k-1)(q+1)p^s and, from level 2 on, (q^k(q+1) - sqrt(q^k)(q-1))/p^(r-s), where the
    square root is rounded down so the last bound only grows.
    """
    p, r = _check_as(q)
    if k < 1 or not 0 <= s <= r:
        raise UsageError(detail=f'no Artin-Schreier step ({k},{s}) for q={q}')
    exact = _as_exact(q, k, s, r)
    if exact is not None:
        return exact
    shrink = p ** (r - s)
    upper = min(as_genus(q, k + 1) // shrink + 1, q ** (k - 1) * (q + 1) * p ** s)
    if k >= 2:
        root = integer_nthroot(q ** k, 2)[0]
        upper = min(upper, (q ** k * (q + 1) - root * (q - 1)) // shrink)
    return upper


def as_step_bounds(q: int, k: int, s: int, family: Family = Family.AS_BASE) -> TowerStep:
    p, r = _check_as(q)
    tower = TowerId(family, p, r)
    if tower.family.is_kummer:
        raise UsageError(detail=f'{family} is not an Artin-Schreier family')

    upper = as_genus_upper(q, k, s)
    genus_exact = _as_exact(q, k, s, r)
    lower = upper if genus_exact is not None else max(0, (as_genus(q, k) - 1) * p ** s + 1)
    places_lower = (q * q - 1) * q ** (k - 1) * p ** s

    return TowerStep(
        tower=tower, k=k, s=s, genus_lower=lower, genus_upper=upper, places_lower=places_lower,
        genus_exact=genus_exact, nonspecial_divisor=_nonspecial(tower.field_size, lower, upper),
    )


def step_capacity(step: TowerStep) -> int:
    return step.capacity


def kummer_step_bounds(p: int, k: int, family: Family = Family.KUMMER_BASE) -> TowerStep:
    if k < 0:
        raise UsageError(detail=f'tower level k={k} < 0')
    tower = TowerId(family, p)
    if not tower.family.is_kummer:
        raise UsageError(detail=f'{family} is not a Kummer family')
    genus = kummer_genus(k)
    return TowerStep(
        tower=tower, k=k, s=0, genus_lower=genus, genus_upper=genus, places_lower=2 ** (k + 1) * (p - 1),
        genus_exact=genus, nonspecial_divisor=_nonspecial(tower.field_size, genus, genus),
    )


def fixture_step(fixture: SmallCaseFixture) -> TowerStep:
    p, r = prime_power(fixture.q)
    return TowerStep(
        tower=TowerId(Family.AS_BASE, p, r), k=fixture.k, s=fixture.s,
        genus_lower=fixture.g, genus_upper=fixture.g, places_lower=fixture.places, genus_exact=fixture.g,
        nonspecial_divisor=_nonspecial(fixture.q, fixture.g, fixture.g), tabulated=True,
    )


def _tabulated(tower: TowerId, k: int, s: int) -> Optional[SmallCaseFixture]:
    if tower.family is not Family.AS_BASE:
        return None
    return next((f for f in FIXTURES if (f.q, f.k, f.s) == (tower.q, k, s)), None)


def iter_steps(tower: TowerId, max_level: Optional[int] = None) -> Iterator[TowerStep]:
    max_level = base_settings.MAX_TOWER_LEVEL if max_level is None else max_level
    if tower.family.is_kummer:
        for k in range(max_level + 1):
            yield kummer_step_bounds(tower.p, k, tower.family)
        return
    for k in range(1, max_level + 1):
        for s in range(tower.r):
            fixture = _tabulated(tower, k, s)
            yield fixture_step(fixture) if fixture else as_step_bounds(tower.q, k, s, tower.family)


def delta_genus_lower(step: TowerStep) -> int:
    if step.tower.family.is_kummer:
        k = step.k
        return 2 ** (k + 1) - 2 ** ((k + 2) // 2)
    if step.k < 4:
        raise UsageError(detail=f'the genus increment bound needs k >= 4, got k={step.k}')
    p, q = step.tower.p, step.tower.q
    return (p - 1) * p ** step.s * q ** step.k


def n0_lower(step: TowerStep) -> int:
    if step.tower.family.is_kummer:
        return 2 ** step.k * (step.tower.p - 3) + 2
    p, q = step.tower.p, step.tower.q
    return math.ceil(Fraction((q + 1) * q ** (step.k - 1) * p ** step.s * (q - 3), 2))


def place_of_degree_exists(field_size: int, genus: int, n: int) -> bool:
    """Exact test of 2g + 1 <= F^((n-1)/2)·(sqrt(F) - 1), which guarantees a degree-n place."""
    if n < 1:
        raise UsageError(detail=f'degree {n} < 1')
    a = 2 * genus + 1
    if n % 2:
        b = field_size ** ((n - 1) // 2)
        return (a + b) ** 2 <= field_size ** n
    c = field_size ** (n // 2)
    return a <= c and (c - a) ** 2 >= field_size ** (n - 1)


def fixture_lookup(q: int, n: int) -> Optional[SmallCaseFixture]:
    return next((f for f in FIXTURES if f.q == q and f.n_min <= n <= f.n_max), None)


def fixture_consistent(fixture: SmallCaseFixture) -> bool:
    gamma = (fixture.N1 + 2 * fixture.N2 - 2 * fixture.g + 1) // 2
    return gamma == fixture.gamma and all(
        place_of_degree_exists(fixture.q, fixture.g, n) for n in range(fixture.n_min, fixture.n_max + 1)
    )
