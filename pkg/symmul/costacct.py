"""Multiplication counts of evaluation algorithms by coordinate type.

The 2n + g - 1 interpolation coordinates fall into four types:

- (a) ``L1`` values at degree-1 places, one multiplication each;
- (b) ``l1`` derivatives at degree-1 places, two each;
- (c) ``L2`` value coordinates at degree-2 places;
- (d) ``l2`` derivative coordinates at degree-2 places.

Coordinates of types (c) and (d) are paired per place: two coordinates of the same place
cost 3 (resp. 6) by Karatsuba instead of 2 + 2 (resp. 4 + 4).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np

from symmul.errors import InapplicableError, UsageError
from symmul.settings import base_settings

__all__ = [
    'CoordinateSplit', 'AuditResult', 'GRID_KEYS',
    'pairing', 'split_cost', 'degree_one_bound', 'mixed_place_bounds', 'full_evaluation_rank',
    'feasible_splits', 'max_split_cost', 'brute_force_dominance',
    'parse_grid', 'grid_points', 'audit_point', 'audit_grid',
]

GRID_KEYS = ('n', 'g', 'N1', 'N2', 'a1', 'a2')
CLASSICAL = (2, 3)
DERIVATIVE = (4, 6)


@dataclass(frozen=True)
class CoordinateSplit:
    L1: int
    l1: int
    L2: int
    l2: int
    n: int
    g: int
    N1: int
    N2: int
    a1: int = 0
    a2: int = 0

    def __post_init__(self):
        values = (self.L1, self.l1, self.L2, self.l2, self.n, self.g, self.N1, self.N2, self.a1, self.a2)
        if any(isinstance(v, bool) or not isinstance(v, int) or v < 0 for v in values):
            raise UsageError(detail=f'split counts must be non-negative integers: {values}')
        if self.a1 > self.N1 or self.a2 > self.N2:
            raise UsageError(detail=f'a1={self.a1}, a2={self.a2} exceed N1={self.N1}, N2={self.N2}')
        if self.L1 + self.l1 + self.L2 + self.l2 != self.coordinates:
            raise UsageError(detail=f'{self} does not split {self.coordinates} coordinates')
        if self.L1 > self.N1 or self.l1 > self.a1 or self.L2 > 2 * self.N2 or self.l2 > 2 * self.a2:
            raise UsageError(detail=f'{self} uses more coordinates than its places provide')

    @property
    def coordinates(self) -> int:
        return 2 * self.n + self.g - 1

    def __str__(self):
        return f'split(L1={self.L1}, l1={self.l1}, L2={self.L2}, l2={self.l2})'


def pairing(C: int, M: int, u: int, v: int) -> int:
    """Cost of C coordinates spread over M places, u per lone coordinate, v per full place."""
    if C < 0 or C > 2 * M:
        raise UsageError(detail=f'{C} coordinates do not fit {M} degree-2 places')
    if C <= M:
        return u * C
    return v * (C - M) + u * (2 * M - C)


def split_cost(s: CoordinateSplit) -> int:
    return s.L1 + 2 * s.l1 + pairing(s.L2, s.N2, *CLASSICAL) + pairing(s.l2, s.a2, *DERIVATIVE)


def _check_counts(**counts: int):
    for name, value in counts.items():
        if isinstance(value, bool) or not isinstance(value, int) or value < 0:
            raise UsageError(detail=f'{name} must be a non-negative integer, got {value}')


def degree_one_bound(n: int, g: int, N1: int, a: int) -> int:
    _check_counts(n=n, g=g, N1=N1, a=a)
    if a > N1:
        raise UsageError(detail=f'a={a} exceeds N1={N1}')
    if N1 + a < 2 * n + 2 * g - 1:
        raise InapplicableError(detail=f'N1 + a = {N1 + a} < 2n + 2g - 1 = {2 * n + 2 * g - 1}')
    return 2 * n + g - 1 + a


def mixed_place_bounds(n: int, g: int, N1: int, N2: int, a1: int, a2: int) -> Tuple[int, Fraction]:
    _check_counts(n=n, g=g, N1=N1, N2=N2, a1=a1, a2=a2)
    if a1 > N1 or a2 > N2:
        raise UsageError(detail=f'a1={a1}, a2={a2} exceed N1={N1}, N2={N2}')
    supply = N1 + a1 + 2 * (N2 + a2)
    if supply < 2 * n + 2 * g - 1:
        raise InapplicableError(
            detail=f'N1 + a1 + 2(N2 + a2) = {supply} < 2n + 2g - 1 = {2 * n + 2 * g - 1}',
        )
    bound1 = 2 * n + g - 1 + a1 + N2 + 4 * a2
    bound2 = 3 * n + 2 * g + Fraction(a1, 2) + 3 * a2
    return bound1, bound2


def full_evaluation_rank(N1: int, N2: int, a1: int, a2: int) -> int:
    _check_counts(N1=N1, N2=N2, a1=a1, a2=a2)
    return N1 + 2 * a1 + 3 * N2 + 6 * a2


def _vpairing(C: np.ndarray, M: int, u: int, v: int) -> np.ndarray:
    return np.where(C <= M, u * C, v * (C - M) + u * (2 * M - C))


def _split_grid(n: int, g: int, N1: int, N2: int, a1: int, a2: int) -> Tuple[np.ndarray, ...]:
    L1, l1, L2 = np.meshgrid(
        np.arange(N1 + 1), np.arange(a1 + 1), np.arange(2 * N2 + 1), indexing='ij',
    )
    l2 = (2 * n + g - 1) - L1 - l1 - L2
    mask = (l2 >= 0) & (l2 <= 2 * a2)
    return L1[mask], l1[mask], L2[mask], l2[mask]


def feasible_splits(n: int, g: int, N1: int, N2: int, a1: int = 0, a2: int = 0) -> Iterator[CoordinateSplit]:
    for L1, l1, L2, l2 in zip(*_split_grid(n, g, N1, N2, a1, a2)):
        yield CoordinateSplit(int(L1), int(l1), int(L2), int(l2), n, g, N1, N2, a1, a2)


def max_split_cost(n: int, g: int, N1: int, N2: int, a1: int = 0, a2: int = 0) -> Optional[int]:
    L1, l1, L2, l2 = _split_grid(n, g, N1, N2, a1, a2)
    if not L1.size:
        return None
    cost = L1 + 2 * l1 + _vpairing(L2, N2, *CLASSICAL) + _vpairing(l2, a2, *DERIVATIVE)
    return int(cost.max())


def brute_force_dominance(
        n: int, g: int, N1: int, N2: int, a1: int, a2: int, bound: Optional[int] = None,
) -> bool:
    if bound is None:
        bound = mixed_place_bounds(n, g, N1, N2, a1, a2)[0]
    worst = max_split_cost(n, g, N1, N2, a1, a2)
    return worst is None or worst <= bound


# grid audits

@dataclass(frozen=True)
class AuditResult:
    n: int
    g: int
    N1: int
    N2: int
    a1: int
    a2: int
    max_cost: int
    bound1: int

    @property
    def ok(self) -> bool:
        return self.max_cost <= self.bound1

    @property
    def point(self) -> Dict[str, int]:
        return {key: getattr(self, key) for key in GRID_KEYS}


GRID_ITEM_REGEX = re.compile(r'^(?P<key>[A-Za-z0-9]+)=(?P<lo>\d+)(?:\.\.(?P<hi>\d+))?$')


def parse_grid(text: str = None) -> Dict[str, range]:
    text = base_settings.AUDIT_GRID if text is None else text
    grid: Dict[str, range] = {}
    for item in filter(None, (part.strip() for part in text.split(','))):
        match = GRID_ITEM_REGEX.match(item)
        if match is None:
            raise UsageError(detail=f'cannot parse grid item {item!r}')
        key, lo = match['key'], int(match['lo'])
        hi = lo if match['hi'] is None else int(match['hi'])
        if key not in GRID_KEYS:
            raise UsageError(detail=f'unknown grid key {key!r}; expected one of {", ".join(GRID_KEYS)}')
        if key in grid:
            raise UsageError(detail=f'grid key {key!r} given twice')
        if hi < lo:
            raise UsageError(detail=f'empty range {item!r}')
        grid[key] = range(lo, hi + 1)

    missing = [key for key in ('n', 'g', 'N1', 'N2') if key not in grid]
    if missing:
        raise UsageError(detail=f'grid is missing {", ".join(missing)}')
    if grid['n'].start < 1:
        raise UsageError(detail='grid needs n >= 1')
    return grid


def grid_points(grid: Dict[str, range]) -> Iterator[Tuple[int, ...]]:
    for n, g, N1, N2 in product(grid['n'], grid['g'], grid['N1'], grid['N2']):
        a1_range = grid.get('a1', range(N1 + 1))
        a2_range = grid.get('a2', range(N2 + 1))
        for a1, a2 in product(a1_range, a2_range):
            if a1 > N1 or a2 > N2:
                continue
            if N1 + a1 + 2 * (N2 + a2) >= 2 * n + 2 * g - 1:
                yield n, g, N1, N2, a1, a2


def audit_point(point: Tuple[int, ...]) -> AuditResult:
    bound1, _ = mixed_place_bounds(*point)
    return AuditResult(*point, max_cost=max_split_cost(*point), bound1=bound1)


def audit_grid(grid: Dict[str, range], pool=None) -> List[AuditResult]:
    points = list(grid_points(grid))
    if pool is None:
        return [audit_point(point) for point in points]
    return pool.map(audit_point, points)
