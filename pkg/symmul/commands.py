from __future__ import annotations

import csv
import io
import json
from abc import ABC
from typing import Any, Dict, Iterable, Optional, Sequence

from django.core.management import BaseCommand as DjangoBaseCommand
from django.utils import timezone

from symmul.errors import Error, sentry_report
from symmul.serializers import SymmulJSONEncoder
from symmul.settings import base_settings
from symmul.utils.worker import WorkerPool

__all__ = ['BaseCommand']


class BaseCommand(DjangoBaseCommand, ABC):
    verbosity = 1

    def execute(self, *args, **options):
        self.verbosity = options.get('verbosity', 1)
        try:
            return super().execute(*args, **options)
        except Error:
            raise
        except Exception as e:
            sentry_report(e)
            raise

    def log(self, *args):
        if self.verbosity < 1:
            return
        _args = [str(s) for s in args]
        self.stderr.write(f"[{timezone.now().strftime('%Y-%m-%d %H:%M:%S.%f')}] {' '.join(_args)}")

    def pool(self) -> WorkerPool:
        return WorkerPool(base_settings.WORKER_COUNT, log=self.log, verbose=self.verbosity >= 2)

    @staticmethod
    def invocation(name: str, options: Dict[str, Any], keys: Iterable[str]) -> str:
        parts = [name]
        for key in keys:
            value = options.get(key)
            if value is None or value is False:
                continue
            flag = '--' + key.replace('_', '-')
            parts.append(flag if value is True else f'{flag} {value}')
        return ' '.join(parts)

    def emit(self, command: str, payload: Any, indent: Optional[int] = 2):
        envelope = {
            'version': base_settings.FORMAT_VERSION,
            'command': command,
            'payload': payload,
        }
        self.stdout.write(json.dumps(envelope, cls=SymmulJSONEncoder, sort_keys=True, indent=indent))

    def emit_table(self, columns: Sequence[str], rows: Iterable[Dict[str, Any]], fmt: str = 'csv'):
        if fmt == 'md':
            lines = ['| ' + ' | '.join(columns) + ' |', '|' + '---|' * len(columns)]
            lines += ['| ' + ' | '.join(str(row[c]) for c in columns) + ' |' for row in rows]
            self.stdout.write('\n'.join(lines))
            return

        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=list(columns), lineterminator='\n')
        writer.writeheader()
        writer.writerows(rows)
        self.stdout.write(buffer.getvalue(), ending='')
