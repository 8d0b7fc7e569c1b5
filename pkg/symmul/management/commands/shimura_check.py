import time
from argparse import ArgumentParser

from symmul.commands import BaseCommand
from symmul.curvecheck import descent_control, shimura_payload
from symmul.errors import InapplicableError, VerificationError

EXPECTED_TRACE = {11: 22}


class Command(BaseCommand):
    help = (
        'Count points of the genus-1 canonical model at an inert prime and test its trace for descent form'
    )

    def add_arguments(self, parser: ArgumentParser):
        parser.add_argument('--p', type=int, default=11, help='Specifies the inert prime (default: 11)')
        parser.add_argument(
            '--control', action='store_true',
            help='Adds the same test for a curve defined over Q, whose trace must have descent form',
        )

    def handle(self, *args, **options):
        p = options['p']

        t = time.time()
        self.log(f'reduce the canonical model mod {p}')
        payload = shimura_payload(p)
        if options['control'] and payload['irreducible']:
            control = descent_control(p)
            control['descent_form'] = control['trace'] == control['expected']
            payload['control'] = control

        self.emit(self.invocation('shimura-check', options, ('p', 'control')), payload)
        if not payload['irreducible']:
            raise InapplicableError(detail=f'{p} is not inert: t^2 - t - 3 splits mod {p}')
        expected = EXPECTED_TRACE.get(p)
        if expected is not None and (payload['trace'] != expected or payload['descent_form']):
            raise VerificationError(detail=f'trace {payload["trace"]} at p={p}, expected {expected}')
        if options['control'] and not payload['control']['descent_form']:
            raise VerificationError(detail=f'control curve trace is not of descent form at p={p}')

        self.log(f'done ({time.time() - t:.2f} s)')
