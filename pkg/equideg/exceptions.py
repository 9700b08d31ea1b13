"""
Error hierarchy shared by the library, the management commands and the API.

Each error carries the exit code used by the ``manage.py`` commands and the
HTTP status used by the API, so both front ends report failures the same way.
"""
from rest_framework import status
from rest_framework.response import Response
from rest_framework.views import exception_handler


class EquidegError(Exception):
    """Base class for every failure raised by equideg."""
    exit_code = 1
    status_code = status.HTTP_500_INTERNAL_SERVER_ERROR
    default_code = 'error'

    def __init__(self, message, **extra):
        super().__init__(message)
        self.message = message
        self.extra = extra

    def as_dict(self):
        return {'error': self.default_code, 'detail': self.message, **self.extra}


class DomainError(EquidegError, ValueError):
    """Invalid numeric input: non-finite values, wrong shapes, alpha outside a domain."""
    exit_code = 2
    status_code = status.HTTP_400_BAD_REQUEST
    default_code = 'domain'


class CapacityError(EquidegError):
    """A configured cap (mode, index, power set) was exceeded."""
    exit_code = 6
    status_code = status.HTTP_422_UNPROCESSABLE_ENTITY
    default_code = 'capacity'


class UnsupportedProductError(EquidegError):
    """A Burnside product involving the radial orbit type was requested."""
    exit_code = 2
    status_code = status.HTTP_422_UNPROCESSABLE_ENTITY
    default_code = 'unsupported_product'


class DegeneracyError(EquidegError):
    """Assumption (D) fails: an eigenvalue sits on a Dirichlet eigenvalue s_{m,n}."""
    exit_code = 4
    status_code = status.HTTP_422_UNPROCESSABLE_ENTITY
    default_code = 'degenerate'

    def __init__(self, message, violations=(), **extra):
        self.violations = list(violations)
        super().__init__(
            message,
            violations=[v.as_dict() for v in self.violations],
            **extra,
        )


class NonIsolatedCriticalityError(DegeneracyError):
    """No regular bracket exists around a critical point at the requested resolution."""
    exit_code = 5
    default_code = 'non_isolated'


class InternalConsistencyError(EquidegError):
    """Two computations of the same exact integer disagree."""
    exit_code = 70
    default_code = 'internal_consistency'


def equideg_exception_handler(exc, context):
    """DRF exception handler that renders EquidegError as a JSON error body."""
    if isinstance(exc, EquidegError):
        return Response(exc.as_dict(), status=exc.status_code)
    return exception_handler(exc, context)
