"""Validators shared by the marshmallow schemas and the services."""

import math
from typing import Any

from marshmallow import ValidationError


def validate_positive(value: Any) -> None:
    """
    Validate that ``value`` is a finite number strictly above zero.

    Raises:
        ValidationError: If the value is not finite or not positive.
    """
    if not isinstance(value, (int, float)) or not math.isfinite(value):
        raise ValidationError("Must be a finite number.")
    if value <= 0:
        raise ValidationError("Must be greater than 0.")


def validate_non_negative(value: Any) -> None:
    """Validate that ``value`` is a finite number at or above zero."""
    if not isinstance(value, (int, float)) or not math.isfinite(value):
        raise ValidationError("Must be a finite number.")
    if value < 0:
        raise ValidationError("Must be at least 0.")


def validate_open_probability(value: Any) -> None:
    """
    Validate that ``value`` lies in the open interval (0, 1).

    Raises:
        ValidationError: If the value is outside (0, 1).
    """
    if not isinstance(value, (int, float)) or not 0 < value < 1:
        raise ValidationError("Must be strictly between 0 and 1.")


def validate_finite(value: Any) -> None:
    """Validate that ``value`` is a finite real number."""
    if not isinstance(value, (int, float)) or not math.isfinite(value):
        raise ValidationError("Must be a finite number.")
