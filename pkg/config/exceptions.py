"""
Domain exceptions and the custom exception handler for consistent API error responses.
"""
from rest_framework.views import exception_handler
from rest_framework.response import Response
from rest_framework import status


class SparsekitError(Exception):
    """Base class for every refusal raised by the numerical services."""

    status_code = status.HTTP_400_BAD_REQUEST
    exit_code = 1


class ParameterError(SparsekitError):
    """Parameters outside the admissible range (CLI exit code 2)."""

    status_code = status.HTTP_400_BAD_REQUEST
    exit_code = 2


class BudgetError(SparsekitError):
    """Exhaustive enumeration refused because the tree is too large (CLI exit code 3)."""

    status_code = status.HTTP_422_UNPROCESSABLE_ENTITY
    exit_code = 3


class GridFormatError(ParameterError):
    """Malformed SPGF payload."""


class UnverifiedFamilyError(ParameterError):
    """A family was used as if sparse but failed verification."""


def custom_exception_handler(exc, context):
    """
    Custom exception handler that returns consistent error format.

    Returns:
        {
            "error": {
                "code": <status_code>,
                "message": <error_message>
            }
        }
    """
    if isinstance(exc, SparsekitError):
        return Response(
            {'error': {'code': exc.status_code, 'message': str(exc)}},
            status=exc.status_code
        )

    response = exception_handler(exc, context)

    if response is not None:
        if hasattr(exc, 'detail'):
            if isinstance(exc.detail, dict):
                # Handle ValidationError with field-specific errors
                error_messages = []
                for field, messages in exc.detail.items():
                    if isinstance(messages, list):
                        error_messages.extend([f"{field}: {msg}" for msg in messages])
                    else:
                        error_messages.append(f"{field}: {messages}")
                error_message = "; ".join(error_messages) if error_messages else str(exc)
            else:
                error_message = str(exc.detail)
        else:
            error_message = str(exc)

        response.data = {
            'error': {
                'code': response.status_code,
                'message': error_message
            }
        }

    return response
