from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Tuple

from sympy import integer_nthroot

from symmul.errors import InapplicableError, InvariantError, UsageError
from symmul.gf import prime_power
from symmul.settings import base_settings
from symmul.towers import (
    Family, TowerId, TowerStep, fixture_lookup, iter_steps, place_of_degree_exists, step_capacity,
)
from symmul.utils.registry import ModuleRegistry

__all__ = [
    'Method', 'BoundReport', 'methods',
    'epsilon', 'exact_small', 'cq_constant', 'uniform_coefficient', 'uniform_bound',
    'select_step', 'per_n_tower_bound', 'best_bound', 'bound_by',
]


class Method(str, Enum):
    EXACT = 'exact'
    WINOGRAD = 'winograd'
    SHOKROLLAHI = 'shokrollahi'
    TOWER = 'tower'
    UNIFORM_AS = 'uniform-as'
    UNIFORM_KUMMER = 'uniform-kummer'
    UNIFORM_AS_QUADRATIC = 'uniform-as-quadratic'
    UNIFORM_KUMMER_QUADRATIC = 'uniform-kummer-quadratic'
    LINEAR_CONSTANT = 'linear-constant'

    @property
    def priority(self) -> int:
        if self in (Method.EXACT, Method.WINOGRAD, Method.SHOKROLLAHI):
            return 0
        if self is Method.TOWER:
            return 1
        if self is Method.LINEAR_CONSTANT:
            return 3
        return 2


UNIFORM_FAMILY = {
    Method.UNIFORM_AS: Family.AS_BASE,
    Method.UNIFORM_KUMMER: Family.KUMMER_BASE,
    Method.UNIFORM_AS_QUADRATIC: Family.AS_QUADRATIC,
    Method.UNIFORM_KUMMER_QUADRATIC: Family.KUMMER_QUADRATIC,
}

# short names of the uniform bounds
UNIFORM_ALIASES = {
    'thm4i': Method.UNIFORM_AS,
    'thm4ii': Method.UNIFORM_KUMMER,
    'thm5i': Method.UNIFORM_AS_QUADRATIC,
    'thm5ii': Method.UNIFORM_KUMMER_QUADRATIC,
}

EXACT_TABLE = {(2, 4): 9, (4, 4): 8, (5, 4): 8, (2, 6): 15}


@dataclass(frozen=True)
class BoundReport:
    q: int
    n: int
    lower: int
    upper: Fraction
    method: Method
    step: Optional[TowerStep] = None
    case: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, 'upper', Fraction(self.upper))
        if self.lower > self.upper_int:
            raise InvariantError(detail=f'lower bound {self.lower} exceeds upper bound {self.upper}')

    @property
    def upper_int(self) -> int:
        return math.floor(self.upper)

    @property
    def provenance(self) -> str:
        if self.step is None:
            return self.method.value
        return f'{self.method.value}:{self.step}:{self.case}'


def _validate(q: int, n: int) -> Tuple[int, int]:
    p, r = prime_power(q)
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise UsageError(detail=f'n must be a positive integer, got {n}')
    return p, r


def _report(q: int, n: int, upper, method: Method, step: TowerStep = None, case: str = None) -> BoundReport:
    return BoundReport(q=q, n=n, lower=2 * n - 1, upper=Fraction(upper), method=method, step=step, case=case)


def epsilon(q: int) -> int:
    prime_power(q)
    root, exact = integer_sqrt(q)
    if exact:
        return 2 * root
    m = math.isqrt(4 * q)
    while math.gcd(m, q) != 1:
        m -= 1
    return m


def integer_sqrt(value: int) -> Tuple[int, bool]:
    root, exact = integer_nthroot(value, 2)
    return int(root), bool(exact)


def _exact_small(q: int, n: int) -> Optional[Tuple[int, Method]]:
    if n == 2:
        return 3, Method.EXACT
    if (q, n) in EXACT_TABLE:
        return EXACT_TABLE[q, n], Method.EXACT
    if 2 * n <= q + 2:
        return 2 * n - 1, Method.WINOGRAD
    if 2 * n < q + 1 + epsilon(q):
        return 2 * n, Method.SHOKROLLAHI
    return None


def exact_small(q: int, n: int) -> Optional[int]:
    _validate(q, n)
    found = _exact_small(q, n)
    return None if found is None else found[0]


def _exact_report(q: int, n: int) -> Optional[BoundReport]:
    found = _exact_small(q, n)
    return None if found is None else _report(q, n, found[0], found[1])


def cq_constant(q: int) -> Fraction:
    p, r = prime_power(q)
    if q == 2:
        return Fraction(4824, 247)
    if q == 3:
        return Fraction(27)
    if r == 1:
        return 3 * (1 + Fraction(4, q - 3))
    if r == 2 and p >= 5:
        return 2 * (1 + Fraction(2, p - 3))
    return 6 * (1 + Fraction(p, q - 3))


def uniform_coefficient(q: int, which: Method) -> Optional[Fraction]:
    """Slope of the uniform linear bound ``which`` over F_q, or None when it does not apply."""
    which = Method(which)
    if which not in UNIFORM_FAMILY:
        raise UsageError(detail=f'{which.value} is not a uniform bound')
    try:
        tower = TowerId.for_field(UNIFORM_FAMILY[which], q)
    except InapplicableError:
        return None

    p, t = tower.p, tower.q
    if which is Method.UNIFORM_AS:
        return 3 * (1 + Fraction(4, 3) * p / ((t - 3) + Fraction(2 * (p - 1) * t, t + 1)))
    if which is Method.UNIFORM_KUMMER:
        return 3 * (1 + Fraction(8, 3 * p - 5))
    if which is Method.UNIFORM_AS_QUADRATIC:
        return 2 * (1 + p / ((t - 3) + Fraction((p - 1) * t, t + 1)))
    return 2 * (1 + 2 / (p - Fraction(33, 16)))


def uniform_bound(q: int, n: int, which: Method) -> Optional[BoundReport]:
    _validate(q, n)
    coefficient = uniform_coefficient(q, which)
    if coefficient is None:
        return None
    return _report(q, n, coefficient * n, Method(which))


def _check_threshold(q: int, n: int):
    if 2 * n < q + 1 + epsilon(q):
        raise InapplicableError(detail=f'n={n} is in the exactly known range for q={q}')


def _scan(tower: TowerId, n: int) -> Tuple[TowerStep, Optional[TowerStep]]:
    """First admissible step and the last non-special step scanned before it."""
    tabulated = tower.family is Family.AS_BASE and fixture_lookup(tower.q, n) is not None
    previous = None
    for step in iter_steps(tower, base_settings.MAX_TOWER_LEVEL):
        if not step.nonspecial_divisor:
            continue
        if tabulated:
            if step.tabulated:
                return step, previous
        elif step_capacity(step) >= n and place_of_degree_exists(tower.field_size, step.genus_upper, n):
            return step, previous
        previous = step
    raise InapplicableError(
        detail=f'no step of {tower} up to level {base_settings.MAX_TOWER_LEVEL} admits n={n}'
    )


def select_step(q: int, n: int, family: Family) -> TowerStep:
    _validate(q, n)
    tower = TowerId.for_field(family, q)
    _check_threshold(q, n)
    return _scan(tower, n)[0]


def per_n_tower_bound(q: int, n: int, family: Family) -> BoundReport:
    _validate(q, n)
    tower = TowerId.for_field(family, q)
    if 2 * n < q + 1 + epsilon(q):
        return _exact_report(q, n)

    step, previous = _scan(tower, n)
    quadratic = tower.family.is_quadratic

    def cost(genus: int, excess: int) -> int:
        if quadratic:
            return 2 * n + genus - 1 + 2 * excess
        return 3 * n + 2 * genus + 3 * excess

    best = _report(q, n, cost(step.genus_upper, 0), Method.TOWER, step, 'a')
    if previous is not None and place_of_degree_exists(q, previous.genus_upper, n):
        excess = max(0, n - step_capacity(previous))
        if 2 * excess <= previous.places_lower:
            upper = cost(previous.genus_upper, excess)
            if upper < best.upper:
                best = _report(q, n, upper, Method.TOWER, previous, 'b' if excess else 'a')
    return best


def _candidates(q: int, n: int) -> List[BoundReport]:
    reports = []
    exact = _exact_report(q, n)
    if exact is not None:
        reports.append(exact)
    for family in Family:
        try:
            reports.append(per_n_tower_bound(q, n, family))
        except InapplicableError:
            pass
    for which in UNIFORM_FAMILY:
        report = uniform_bound(q, n, which)
        if report is not None:
            reports.append(report)
    reports.append(_report(q, n, cq_constant(q) * n, Method.LINEAR_CONSTANT))
    return reports


def best_bound(q: int, n: int) -> BoundReport:
    _validate(q, n)
    return min(_candidates(q, n), key=lambda report: (report.upper, report.method.priority))


methods = ModuleRegistry('methods')
methods.register('best')(best_bound)


@methods.register('exact')
def _exact_method(q: int, n: int) -> Optional[BoundReport]:
    _validate(q, n)
    return _exact_report(q, n)


def _tower_method(family: Family):
    def method(q: int, n: int) -> BoundReport:
        return per_n_tower_bound(q, n, family)
    return method


def _uniform_method(which: Method):
    def method(q: int, n: int) -> Optional[BoundReport]:
        return uniform_bound(q, n, which)
    return method


for _family in (Family.AS_BASE, Family.AS_QUADRATIC, Family.KUMMER_BASE, Family.KUMMER_QUADRATIC):
    methods.register('tower-' + _family.value.replace('_base', '').replace('_', '-'))(_tower_method(_family))
for _which in UNIFORM_FAMILY:
    methods.register(_which.value)(_uniform_method(_which))
for _alias, _which in UNIFORM_ALIASES.items():
    methods.register(_alias)(_uniform_method(_which))


@methods.register('linear-constant')
def _linear_method(q: int, n: int) -> BoundReport:
    _validate(q, n)
    return _report(q, n, cq_constant(q) * n, Method.LINEAR_CONSTANT)


def bound_by(method: str, q: int, n: int) -> BoundReport:
    if method not in methods:
        raise UsageError(detail=f'unknown method {method}; choose from {", ".join(methods.choices())}')
    report = methods[method](q, n)
    if report is None:
        raise InapplicableError(detail=f'{method} does not apply to q={q}, n={n}')
    return report
