import time
from argparse import ArgumentParser

from symmul.chud import build_symmetric_algorithm, plan_evaluation, verify_algorithm
from symmul.commands import BaseCommand
from symmul.errors import UsageError, VerificationError
from symmul.serializers import algorithm_to_dict, dump_algorithm


class Command(BaseCommand):
    help = (
        'Build a verified symmetric multiplication algorithm for F_{q^n}/F_q by evaluation at places of F_q(x)'
    )

    def add_arguments(self, parser: ArgumentParser):
        parser.add_argument('--q', type=int, required=True, help='Specifies the base field size (a prime power)')
        parser.add_argument('--n', type=int, required=True, help='Specifies the extension degree (>= 2)')
        parser.add_argument(
            '--out', type=str, default=None,
            help='Writes the algorithm to this file instead of embedding it in the output',
        )

    def handle(self, *args, **options):
        q, n, out = options['q'], options['n'], options['out']

        t = time.time()
        self.log(f'plan evaluation places for q={q} n={n}')
        plan = plan_evaluation(q, n)
        self.log(f'N1={plan.N1} a1={plan.a1} N2={plan.N2} a2={plan.a2} rank={plan.rank}')

        algorithm = build_symmetric_algorithm(plan)
        report = verify_algorithm(algorithm)
        self.log(f'verified {report.pairs} pairs (exhaustive: {report.exhaustive}): {report.ok}')

        payload = {
            'q': q,
            'n': n,
            'rank': algorithm.rank,
            'N1': plan.N1,
            'a1': plan.a1,
            'N2': plan.N2,
            'a2': plan.a2,
            'verified': report.ok,
            'exhaustive': report.exhaustive,
            'pairs': report.pairs,
        }
        if out:
            try:
                with open(out, 'w', encoding='utf-8') as f:
                    f.write(dump_algorithm(algorithm) + '\n')
            except OSError as e:
                raise UsageError(detail=f'cannot write {out}: {e}')
            self.log(f'algorithm written to {out}')
        else:
            payload['algorithm'] = algorithm_to_dict(algorithm)

        self.emit(self.invocation('construct', options, ('q', 'n', 'out')), payload)
        if not report.ok:
            raise VerificationError(detail=f'{len(report.failures)} of {report.pairs} pairs disagree')

        self.log(f'done ({time.time() - t:.2f} s)')
