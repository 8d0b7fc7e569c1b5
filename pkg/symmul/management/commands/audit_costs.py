import time
from argparse import ArgumentParser

from symmul.commands import BaseCommand
from symmul.costacct import GRID_KEYS, audit_grid, parse_grid
from symmul.errors import VerificationError
from symmul.settings import base_settings


class Command(BaseCommand):
    help = (
        'Check by enumeration that every coordinate split costs at most 2n + g - 1 + a1 + N2 + 4a2'
    )

    def add_arguments(self, parser: ArgumentParser):
        parser.add_argument(
            '--grid', type=str, default=None,
            help=f'Specifies the grid as key=lo..hi items (default: {base_settings.AUDIT_GRID})',
        )
        parser.add_argument('--all', action='store_true', help='Lists every grid point, not only failures')

    def handle(self, *args, **options):
        text = options['grid'] or base_settings.AUDIT_GRID
        grid = parse_grid(text)

        t = time.time()
        self.log(f'audit grid {text}')
        results = audit_grid(grid, pool=self.pool())
        failures = [result for result in results if not result.ok]
        self.log(f'{len(results)} points, {len(failures)} failures')

        def entry(result):
            return {**result.point, 'max_cost': result.max_cost, 'bound1': result.bound1, 'ok': result.ok}

        payload = {
            'grid': {key: [grid[key].start, grid[key].stop - 1] for key in GRID_KEYS if key in grid},
            'points': len(results),
            'ok': not failures,
            'failures': [entry(result) for result in failures],
        }
        if options['all']:
            payload['results'] = [entry(result) for result in results]
        self.emit(self.invocation('audit-costs', options, ('grid', 'all')), payload)
        if failures:
            raise VerificationError(detail=f'{len(failures)} grid points exceed the four-case bound')

        self.log(f'done ({time.time() - t:.2f} s)')
