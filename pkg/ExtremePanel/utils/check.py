from __future__ import annotations

import math

import numpy as np

from .exception import DomainError


def _get_type_name(type_class: type) -> str:
    """Return the formatted name of a type."""
    return f"{type_class.__module__}.{type_class.__name__}"

def validate_type(instance: object,
                  type_class: type | tuple[type],
                  message_name: str) -> None:
    """Validate the type of an instance.

    Args:
        instance: The instance to be validated.
        type_class: Acceptable type(s) of the instance.
                    Can be a single type or a tuple of types.
        message_name: The name of the instance to be displayed in the error message.

    Raises:
        TypeError: If the instance is not an instance of the acceptable type(s).
    """
    if not isinstance(type_class, (list, tuple)):
        type_class = (type_class, )
    if not isinstance(instance, type_class):
        type_name = ' or '.join(_get_type_name(c) for c in type_class)
        raise TypeError(
            f"{message_name} must be an instance of {type_name}, "
            f"got {type(instance)} instead.")

def validate_probability(value, message_name: str):
    """Validate that ``value`` lies strictly inside (0, 1).

    Arrays are checked element-wise. Scalars are returned as float,
    arrays as float arrays.

    Raises:
        DomainError: If a value is not a number in the open unit interval.
    """
    try:
        array = np.asarray(value, dtype=float)
    except (TypeError, ValueError):
        raise DomainError(f"{message_name} must be a number, got {value!r}") from None
    if not np.all((array > 0.0) & (array < 1.0)):
        raise DomainError(f"{message_name} must lie in (0, 1), got {value}")
    return float(array) if array.ndim == 0 else array

def validate_positive_int(value: int, message_name: str) -> int:
    """Validate that ``value`` is a positive integer and return it.

    Integral floats and numeric strings are accepted.

    Raises:
        ValueError: If the value is not a positive integer.
    """
    try:
        number = float(value)
    except (TypeError, ValueError):
        raise ValueError(f"{message_name} must be an integer, got {value!r}") from None
    if not math.isfinite(number) or number != int(number) or number < 1:
        raise ValueError(f"{message_name} must be a positive integer, got {value!r}")
    return int(number)
