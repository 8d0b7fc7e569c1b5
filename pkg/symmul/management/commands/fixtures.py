from argparse import ArgumentParser

from symmul.commands import BaseCommand
from symmul.errors import VerificationError
from symmul.serializers import FIXTURE_COLUMNS, fixture_row
from symmul.towers import FIXTURES, fixture_consistent


class Command(BaseCommand):
    help = (
        'Export the tabulated small-field tower steps as CSV, with a consistency check per row'
    )

    def add_arguments(self, parser: ArgumentParser):
        parser.add_argument('--format', default='csv', choices=('csv', 'md'), help='Output format (default: csv)')

    def handle(self, *args, **options):
        rows = [{**fixture_row(fixture), 'consistent': fixture_consistent(fixture)} for fixture in FIXTURES]
        self.emit_table(FIXTURE_COLUMNS + ('consistent',), rows, options['format'])

        broken = [row for row in rows if not row['consistent']]
        if broken:
            raise VerificationError(detail=f'{len(broken)} inconsistent fixture rows')
        self.log(f'{len(rows)} fixture rows')
