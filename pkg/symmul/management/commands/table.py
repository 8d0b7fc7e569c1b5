import time
from argparse import ArgumentParser

from symmul.bounds import best_bound
from symmul.commands import BaseCommand
from symmul.errors import UsageError
from symmul.gf import prime_power
from symmul.serializers import REPORT_COLUMNS, report_row


class Command(BaseCommand):
    help = (
        'Best certified bounds for n = n_min, ..., n_max over F_q as a CSV or markdown table. '
        'A tower row may name a step before the tabulated one when that step already certifies n'
    )

    def add_arguments(self, parser: ArgumentParser):
        parser.add_argument('--q', type=int, required=True, help='Specifies the base field size (a prime power)')
        parser.add_argument('--n-max', type=int, required=True, help='Specifies the largest extension degree')
        parser.add_argument('--n-min', type=int, default=1, help='Specifies the smallest extension degree (default: 1)')
        parser.add_argument('--format', default='csv', choices=('csv', 'md'), help='Output format (default: csv)')

    def handle(self, *args, **options):
        q, n_min, n_max = options['q'], options['n_min'], options['n_max']
        prime_power(q)
        if n_min < 1 or n_max < n_min:
            raise UsageError(detail=f'need 1 <= n-min <= n-max, got {n_min}..{n_max}')

        t = time.time()
        self.log(f'table q={q} n={n_min}..{n_max}')
        reports = self.pool().starmap(best_bound, [(q, n) for n in range(n_min, n_max + 1)], name='rows')
        self.emit_table(REPORT_COLUMNS, [report_row(report) for report in reports], options['format'])

        self.log(f'done ({time.time() - t:.2f} s)')
