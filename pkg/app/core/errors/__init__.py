from .exceptions import (
    AppError,
    BadArityError,
    DivergentError,
    EnclosureError,
    ErrorCode,
    NotAdmissibleError,
    NotConvertibleError,
    NotFoundError,
    OutOfDomainError,
    ParseError,
    PoleError,
    UnsupportedError,
)

__all__ = [
    'AppError',
    'BadArityError',
    'DivergentError',
    'EnclosureError',
    'ErrorCode',
    'NotAdmissibleError',
    'NotConvertibleError',
    'NotFoundError',
    'OutOfDomainError',
    'ParseError',
    'PoleError',
    'UnsupportedError',
]
