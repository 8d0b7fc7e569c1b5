import json
from fractions import Fraction

from django.test import SimpleTestCase

from symmul.bounds import best_bound
from symmul.chud import build_symmetric_algorithm, plan_evaluation, verify_algorithm
from symmul.errors import UsageError
from symmul.serializers import (
    SymmulJSONEncoder, algorithm_from_dict, algorithm_to_dict, dump_algorithm, load_algorithm, rational,
    report_payload, report_row,
)


class EncoderTest(SimpleTestCase):
    def test_rationals(self):
        self.assertEqual(rational(Fraction(158, 47)), '158/47')
        self.assertEqual(rational(3), '3/1')
        self.assertEqual(json.dumps({'c': Fraction(79, 13)}, cls=SymmulJSONEncoder), '{"c": "79/13"}')

    def test_report(self):
        report = best_bound(4, 5)
        self.assertEqual(report_payload(report)['step'], 'as_base(4)(1,0)')
        self.assertEqual(report_row(report), {
            'n': 5, 'lower': 9, 'upper': '15/1', 'upper_int': 15, 'method': 'tower', 'step': '(1,0)',
        })


class AlgorithmFileTest(SimpleTestCase):
    def setUp(self):
        self.alg = build_symmetric_algorithm(plan_evaluation(4, 3))
        self.data = algorithm_to_dict(self.alg)

    def test_layout(self):
        self.assertEqual(self.data['version'], '1')
        self.assertEqual((self.data['p'], self.data['r'], self.data['n']), (2, 2, 3))
        self.assertEqual(self.data['base_modulus'], [1, 1, 1])
        self.assertEqual(len(self.data['ext_modulus']), 4)
        self.assertEqual(self.data['ext_modulus'][-1], [1, 0])
        self.assertEqual(len(self.data['terms']), self.alg.rank)
        places = self.data['plan']['places']
        self.assertEqual(len(places), self.data['plan']['N1'] + self.data['plan']['N2'])
        self.assertTrue(any(place['poly'] is None for place in places))

    def test_reload(self):
        text = dump_algorithm(self.alg)
        loaded = load_algorithm(text)
        self.assertEqual(dump_algorithm(loaded), text)
        self.assertEqual(loaded.plan.rank, self.alg.plan.rank)
        self.assertTrue(verify_algorithm(loaded).ok)

    def test_without_plan(self):
        self.data['plan'] = None
        loaded = algorithm_from_dict(self.data)
        self.assertIsNone(loaded.plan)
        self.assertTrue(verify_algorithm(loaded, exhaustive=False).ok)

    def test_prime_field(self):
        alg = build_symmetric_algorithm(plan_evaluation(5, 3))
        data = algorithm_to_dict(alg)
        self.assertEqual(data['base_modulus'], [])
        self.assertEqual(dump_algorithm(algorithm_from_dict(data)), dump_algorithm(alg))

    def assertRejected(self, **changes):
        data = json.loads(dump_algorithm(self.alg))
        for key, value in changes.items():
            data[key] = value
        with self.assertRaises(UsageError):
            algorithm_from_dict(data)

    def test_rejects(self):
        self.assertRejected(version='2')
        self.assertRejected(p='2')
        self.assertRejected(r=True)
        self.assertRejected(base_modulus=[1, 0, 1])
        self.assertRejected(base_modulus=[1, 1, 0, 1])
        self.assertRejected(ext_modulus=[[1, 0], [1, 0]])
        self.assertRejected(terms=[{'lin': [[0, 0]], 'c': [[0, 0]]}])
        self.assertRejected(terms=[{'lin': [[0, 2], [0, 0], [0, 0]], 'c': [[0, 0], [0, 0], [0, 0]]}])
        self.assertRejected(terms=['term'])
        with self.assertRaises(UsageError):
            algorithm_from_dict([])
        with self.assertRaises(UsageError):
            load_algorithm('[1, 2')

    def test_rejects_bad_plan(self):
        data = json.loads(dump_algorithm(self.alg))
        data['plan']['N1'] += 1
        with self.assertRaises(UsageError):
            algorithm_from_dict(data)

        data = json.loads(dump_algorithm(self.alg))
        data['plan']['places'].append(dict(data['plan']['places'][0]))
        with self.assertRaises(UsageError):
            algorithm_from_dict(data)

        data = json.loads(dump_algorithm(self.alg))
        data['plan']['places'][0]['u'] = 3
        with self.assertRaises(UsageError):
            algorithm_from_dict(data)
