import time
from argparse import ArgumentParser

from symmul.chud import spot_check, verify_algorithm
from symmul.commands import BaseCommand
from symmul.errors import UsageError, VerificationError
from symmul.serializers import load_algorithm


class Command(BaseCommand):
    help = (
        'Check a stored symmetric multiplication algorithm against multiplication modulo its defining polynomial'
    )

    def add_arguments(self, parser: ArgumentParser):
        parser.add_argument('--algo', type=str, required=True, help='Specifies the algorithm file written by construct')
        parser.add_argument('--exhaustive', action='store_true', help='Checks every pair instead of basis pairs')
        parser.add_argument('--samples', type=int, default=0, help='Adds this many random spot checks (default: 0)')
        parser.add_argument('--seed', type=int, default=None, help='Seed of the spot checks (default: RANDOM_SEED)')

    def handle(self, *args, **options):
        path = options['algo']
        try:
            with open(path, 'r', encoding='utf-8') as f:
                text = f.read()
        except OSError as e:
            raise UsageError(detail=f'cannot read {path}: {e}')

        t = time.time()
        algorithm = load_algorithm(text)
        self.log(f'loaded rank-{algorithm.rank} algorithm for q={algorithm.q} n={algorithm.n}')

        report = verify_algorithm(algorithm, exhaustive=options['exhaustive'])
        mismatches = spot_check(algorithm, options['samples'], options['seed']) if options['samples'] else 0
        ok = report.ok and not mismatches
        payload = {
            'q': algorithm.q,
            'n': algorithm.n,
            'rank': algorithm.rank,
            'ok': ok,
            'pairs': report.pairs,
            'exhaustive': report.exhaustive,
            'failures': len(report.failures),
            'spot_checks': options['samples'],
            'spot_check_failures': mismatches,
        }
        self.emit(self.invocation('verify', options, ('algo', 'exhaustive', 'samples', 'seed')), payload)
        if not ok:
            raise VerificationError(
                detail=f'{len(report.failures)} pair and {mismatches} spot-check failures',
                extra={'failures': [list(pair) for pair in report.failures[:16]]},
            )

        self.log(f'done ({time.time() - t:.2f} s)')
