from __future__ import annotations

import traceback
from typing import Any, Literal, Optional, TypedDict

from django.core.management import CommandError
from django.utils.functional import cached_property

from symmul.settings import base_settings

__all__ = [
    'SENTRY_ERROR_LEVEL', 'CODE_UNKNOWN',
    'Error', 'sentry_report',
    'SymmulError', 'UsageError', 'DomainError', 'InapplicableError', 'CapacityError',
    'VerificationError', 'InvariantError',
]

SENTRY_ERROR_LEVEL = Literal['debug', 'info', 'warning', 'error', 'fatal']
CODE_UNKNOWN = 'Unknown'

sentry_enabled = bool(getattr(base_settings, 'SENTRY_HOST', False))
sentry_verbose = getattr(base_settings, 'SENTRY_VERBOSE', False)

if sentry_enabled:
    try:
        import sentry_sdk
        from sentry_sdk.integrations.django import DjangoIntegration

        sentry_sdk.init(base_settings.SENTRY_HOST, integrations=[DjangoIntegration()])
    except ImportError:
        sentry_sdk = None
        DjangoIntegration = None
else:
    sentry_sdk = None
    DjangoIntegration = None


class Error(CommandError):
    app: Optional[str] = None
    code: Optional[str] = None
    str_detail: Optional[str] = None
    extra: Optional[Any] = None
    traceback: Optional[str] = None
    returncode: int = 1

    class SerializedCode(TypedDict):
        code: str

    class SerializedDetail(SerializedCode, total=False):
        detail: str
        extra: Any
        traceback: str

    class Serialized(TypedDict):
        error: Error.SerializedDetail

    def __new__(
            cls, *args, code: str = None, detail: str = None, extra: Any = None,
            tb: str = None, returncode: int = None,
    ):
        if cls.app is None:
            if not args or type(args[0]) is not str:
                raise ValueError('app name must be provided as first argument')

            app = args[0]
            if len(args) == 1 and code is None:
                code = CODE_UNKNOWN
                name = app.title().replace('_', '') + 'Error'
            else:
                code = code or '::'.join(args[1:]) or CODE_UNKNOWN
                name = code.replace('::', '') + 'Error'
        else:
            if not args and code is None:
                return super().__new__(cls)

            app = cls.app
            code = code or '::'.join(args) or CODE_UNKNOWN
            name = code.replace('::', '') + 'Error'

        _app, _code, _detail, _extra, _returncode = app, code, detail, extra, returncode

        class SubError(cls):
            app = _app.lower()
            code = _code
            str_detail = _detail or cls.str_detail
            extra = _extra or cls.extra
            traceback = tb or cls.traceback
            returncode = _returncode or cls.returncode
        SubError.__name__ = name
        SubError.__qualname__ = name

        return SubError

    def __init__(
            self, *args, code: str = None, detail: str = None, extra: Any = None,
            tb: str = None, returncode: int = None,
    ):
        if code is not None:
            self.code = code
        if detail is not None:
            self.str_detail = detail
        if extra is not None:
            self.extra = extra
        if tb is not None:
            self.traceback = tb
        if returncode is not None:
            self.returncode = returncode

        super().__init__(str(self), returncode=self.returncode)

    def __str__(self):
        if self.str_detail:
            return f'{self.app}::{self.code}: {self.str_detail}'
        return f'{self.app}::{self.code}'

    def __call__(self, *args, code: str = None, detail: str = None, extra: Any = None, tb: str = None) -> Error:
        return self.__class__(*args, code=code, detail=detail, extra=extra, tb=tb)

    def __reduce__(self):
        return _restore_error, (self.__class__, self.str_detail, self.extra)

    @cached_property
    def serialized(self) -> Error.Serialized:
        serialized: Error.Serialized = Error.Serialized(
            error=Error.SerializedDetail(code=f'{self.app}::{self.code}')
        )

        if self.str_detail is not None:
            serialized['error']['detail'] = self.str_detail
        if self.extra is not None:
            serialized['error']['extra'] = self.extra
        if self.traceback is not None:
            serialized['error']['traceback'] = self.traceback

        return serialized


def _restore_error(cls, detail, extra):
    return cls(detail=detail, extra=extra)


def sentry_report(
        exc: Exception, level: SENTRY_ERROR_LEVEL = 'error', silent: bool = True
) -> Optional[str]:
    global sentry_enabled, sentry_verbose

    if not sentry_enabled:
        if not silent:
            raise RuntimeError('SENTRY_HOST is not found from SYMMUL settings')
        return

    if sentry_sdk is None:
        if not silent:
            raise ImportError('Module sentry_sdk is not found. Try `pip install django-symmul[sentry]`.')
        return

    if level in ('debug', 'info') and not sentry_verbose:
        return

    with sentry_sdk.push_scope() as scope:
        scope.set_level(level)
        try:
            return sentry_sdk.capture_exception(exc)
        except Exception as e:
            print('sentry error:', e)
            print(traceback.format_exc())
            if not silent:
                raise


SymmulError = Error('symmul')

UsageError = SymmulError('Usage', returncode=2)
DomainError = SymmulError('Domain', returncode=2)
InapplicableError = SymmulError('Inapplicable', returncode=3)
CapacityError = SymmulError('Capacity', returncode=3)
VerificationError = SymmulError('Verification', returncode=4)
InvariantError = SymmulError('Invariant', returncode=1)
