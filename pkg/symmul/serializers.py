from __future__ import annotations

import json
from dataclasses import asdict
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

from django.core.serializers.json import DjangoJSONEncoder

from symmul.bounds import BoundReport
from symmul.chud import EvaluationPlan, SymmetricAlgorithm, Term
from symmul.errors import SymmulError, UsageError
from symmul.gf import FieldSpec, Poly, field_with_modulus
from symmul.rfield import Place
from symmul.settings import base_settings
from symmul.towers import SmallCaseFixture

__all__ = [
    'SymmulJSONEncoder', 'rational',
    'report_payload', 'report_row', 'REPORT_COLUMNS',
    'algorithm_to_dict', 'dump_algorithm', 'algorithm_from_dict', 'load_algorithm',
    'fixture_row', 'FIXTURE_COLUMNS',
]

REPORT_COLUMNS = ('n', 'lower', 'upper', 'upper_int', 'method', 'step')
FIXTURE_COLUMNS = ('q', 'k', 's', 'N1', 'N2', 'g', 'gamma', 'n_min', 'n_max')


def rational(value: Fraction) -> str:
    value = Fraction(value)
    return f'{value.numerator}/{value.denominator}'


class SymmulJSONEncoder(DjangoJSONEncoder):
    def default(self, o):
        if isinstance(o, Fraction):
            return rational(o)
        return super().default(o)


def report_payload(report: BoundReport) -> Dict[str, Any]:
    return {
        'q': report.q,
        'n': report.n,
        'lower': report.lower,
        'upper': report.upper,
        'upper_int': report.upper_int,
        'method': report.method.value,
        'step': None if report.step is None else str(report.step),
        'case': report.case,
        'provenance': report.provenance,
    }


def report_row(report: BoundReport) -> Dict[str, Any]:
    return {
        'n': report.n,
        'lower': report.lower,
        'upper': rational(report.upper),
        'upper_int': report.upper_int,
        'method': report.method.value,
        'step': '' if report.step is None else report.step.label,
    }


def fixture_row(fixture: SmallCaseFixture) -> Dict[str, int]:
    return asdict(fixture)


# algorithm files

def _vector(F: FieldSpec, a: int) -> List[int]:
    return list(F.coeffs(a))


def _poly_vectors(poly: Poly) -> List[List[int]]:
    return [_vector(poly.base, c) for c in poly.coeffs]


def _place_dict(place: Place, u: int) -> Dict[str, Any]:
    return {
        'degree': place.degree,
        'poly': None if place.is_infinity else _poly_vectors(place.poly),
        'u': u,
    }


def algorithm_to_dict(alg: SymmetricAlgorithm) -> Dict[str, Any]:
    F = alg.field
    data: Dict[str, Any] = {
        'version': base_settings.FORMAT_VERSION,
        'p': F.p,
        'r': F.r,
        'base_modulus': list(F.modulus or ()),
        'n': alg.n,
        'ext_modulus': _poly_vectors(alg.modulus),
        'plan': None,
        'terms': [
            {
                'lin': [_vector(F, a) for a in term.linear_form],
                'c': [_vector(F, a) for a in term.constant],
            }
            for term in alg.terms
        ],
    }
    plan = alg.plan
    if plan is not None:
        data['plan'] = {
            'N1': plan.N1,
            'a1': plan.a1,
            'N2': plan.N2,
            'a2': plan.a2,
            'places': [_place_dict(place, u) for place, u in plan.usage()],
        }
    return data


def dump_algorithm(alg: SymmetricAlgorithm) -> str:
    return json.dumps(algorithm_to_dict(alg), sort_keys=True, indent=2)


def _require(data: Dict[str, Any], key: str, kind: type):
    value = data.get(key)
    if not isinstance(value, kind) or isinstance(value, bool):
        raise UsageError(detail=f'field {key!r} must be {kind.__name__}, got {value!r}')
    return value


def _element(F: FieldSpec, vector: Any) -> int:
    if (
        not isinstance(vector, list) or len(vector) != F.r
        or any(isinstance(c, bool) or not isinstance(c, int) or not 0 <= c < F.p for c in vector)
    ):
        raise UsageError(detail=f'{vector!r} is not a residue vector of {F}')
    return F.index(vector)


def _elements(F: FieldSpec, vectors: Any, length: Optional[int] = None) -> List[int]:
    if not isinstance(vectors, list) or (length is not None and len(vectors) != length):
        raise UsageError(detail=f'expected {length or "a list of"} residue vectors, got {vectors!r}')
    return [_element(F, v) for v in vectors]


def _base_field(p: int, r: int, base_modulus: Sequence[int]) -> FieldSpec:
    if r == 1:
        if base_modulus:
            raise UsageError(detail='prime fields take an empty base_modulus')
        return FieldSpec(p)
    F = field_with_modulus(p, base_modulus)
    if F.r != r:
        raise UsageError(detail=f'base_modulus has degree {F.r}, expected {r}')
    return F


def _plan(F: FieldSpec, target: Poly, data: Dict[str, Any]) -> EvaluationPlan:
    if not isinstance(data, dict):
        raise UsageError(detail=f'plan {data!r} is not an object')
    groups: Dict[tuple, list] = {(1, 1): [], (1, 2): [], (2, 1): [], (2, 2): []}
    for entry in _require(data, 'places', list):
        if not isinstance(entry, dict):
            raise UsageError(detail=f'place entry {entry!r} is not an object')
        degree, u = entry.get('degree'), entry.get('u')
        if not isinstance(degree, int) or not isinstance(u, int) or (degree, u) not in groups:
            raise UsageError(detail=f'unsupported place (degree={degree!r}, u={u!r})')
        poly = entry.get('poly')
        place = Place.infinity(F) if poly is None else Place.finite(Poly(F, tuple(_elements(F, poly))))
        groups[degree, u].append(place)

    plan = EvaluationPlan(
        q=F.q, n=target.degree, Q=Place.finite(target),
        deg1_classical=tuple(groups[1, 1]), deg1_derivative=tuple(groups[1, 2]),
        deg2_classical=tuple(groups[2, 1]), deg2_derivative=tuple(groups[2, 2]),
    )
    declared = tuple(data.get(key) for key in ('N1', 'a1', 'N2', 'a2'))
    if declared != (plan.N1, plan.a1, plan.N2, plan.a2):
        raise UsageError(detail=f'plan counts {declared} do not match its places')
    return plan


def algorithm_from_dict(data: Any) -> SymmetricAlgorithm:
    if not isinstance(data, dict):
        raise UsageError(detail='algorithm file must hold a JSON object')
    version = data.get('version')
    if version != base_settings.FORMAT_VERSION:
        raise UsageError(detail=f'unsupported format version {version!r}')

    p, r, n = _require(data, 'p', int), _require(data, 'r', int), _require(data, 'n', int)
    try:
        F = _base_field(p, r, _require(data, 'base_modulus', list))
        modulus = Poly(F, tuple(_elements(F, _require(data, 'ext_modulus', list), n + 1)))
        if modulus.degree != n or not modulus.is_monic():
            raise UsageError(detail=f'ext_modulus must be monic of degree {n}')

        terms = []
        for term in _require(data, 'terms', list):
            if not isinstance(term, dict):
                raise UsageError(detail=f'term {term!r} is not an object')
            terms.append(Term(tuple(_elements(F, term.get('lin'), n)), tuple(_elements(F, term.get('c'), n))))

        plan = data.get('plan')
        return SymmetricAlgorithm(
            field=F, modulus=modulus, terms=tuple(terms),
            plan=None if plan is None else _plan(F, modulus, plan),
        )
    except UsageError:
        raise
    except SymmulError as e:
        raise UsageError(detail=f'malformed algorithm: {e.str_detail}')


def load_algorithm(text: str) -> SymmetricAlgorithm:
    try:
        data = json.loads(text)
    except ValueError as e:
        raise UsageError(detail=f'algorithm file is not valid JSON: {e}')
    return algorithm_from_dict(data)
