import time
from argparse import ArgumentParser

from symmul.bounds import bound_by, methods
from symmul.commands import BaseCommand
from symmul.serializers import report_payload


class Command(BaseCommand):
    help = (
        'Certified lower and upper bounds on the symmetric bilinear complexity of multiplication in F_{q^n}/F_q'
    )

    def add_arguments(self, parser: ArgumentParser):
        parser.add_argument('--q', type=int, required=True, help='Specifies the base field size (a prime power)')
        parser.add_argument('--n', type=int, required=True, help='Specifies the extension degree')
        parser.add_argument(
            '--method', default='best', choices=methods.choices(),
            help='Forces one bound instead of the best available (default: best); '
                 'thm4i, thm4ii, thm5i and thm5ii name the uniform bounds',
        )
        parser.add_argument('--format', default='json', choices=('json', 'text'), help='Output format (default: json)')

    def handle(self, *args, **options):
        q, n, method = options['q'], options['n'], options['method']

        t = time.time()
        self.log(f'bound q={q} n={n} method={method}')
        report = bound_by(method, q, n)

        if options['format'] == 'text':
            self.stdout.write(
                f'q={q} n={n} lower={report.lower} upper={report.upper} '
                f'upper_int={report.upper_int} method={report.provenance}'
            )
        else:
            self.emit(self.invocation('bound', options, ('q', 'n', 'method')), report_payload(report))

        self.log(f'done ({time.time() - t:.2f} s)')
