import os
from typing import Any, Dict, Mapping

__all__ = ['load', 'environ_overrides']

TRUE_VALUES = ('1', 'true', 'yes', 'on')
FALSE_VALUES = ('0', 'false', 'no', 'off', '')


def load(filename: str):
    with open(filename, 'r', encoding='utf8') as f:
        for line in f:
            try:
                line = line[:line.index('#')]
            except ValueError:
                pass
            line = line.strip()
            if '=' not in line:
                continue

            key, value = line.split('=', 1)
            if '{' in value:
                try:
                    value = value.format(**os.environ)
                except KeyError:
                    pass
            os.environ[key.strip()] = value.strip()


def _coerce(key: str, raw: str, default: Any) -> Any:
    if isinstance(default, bool):
        lowered = raw.strip().lower()
        if lowered in TRUE_VALUES:
            return True
        if lowered in FALSE_VALUES:
            return False
        raise ValueError(f'{key}={raw!r} is not a boolean')
    if isinstance(default, int):
        try:
            return int(raw)
        except ValueError:
            raise ValueError(f'{key}={raw!r} is not an integer')
    return raw or None


def environ_overrides(defaults: Mapping[str, Any], prefix: str = 'SYMMUL_') -> Dict[str, Any]:
    overrides = {}
    for key, default in defaults.items():
        raw = os.environ.get(prefix + key)
        if raw is not None:
            overrides[key] = _coerce(prefix + key, raw, default)
    return overrides
