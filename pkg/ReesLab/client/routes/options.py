"""
Readers for command options given as text on the command line or as values in a JobSpec

"""
from typing import Any, List, Optional, Sequence, Tuple

from ReesLab.algebra.errors import ScalarSyntaxError
from ReesLab.algebra.multifilt import MultiIndex
from ReesLab.algebra.scalars import Scalar, parse_scalar, to_scalar
from ReesLab.client.errors import InvalidJobError


def read_int(name: str, value: Any, minimum: Optional[int] = None) -> int:
    """
    :raises: InvalidJobError

    """

    try:
        number: int = int(value)
    except (TypeError, ValueError):
        raise InvalidJobError(f"Option '{name}' must be an integer, got {value!r}")

    if minimum is not None and number < minimum:
        raise InvalidJobError(f"Option '{name}' must be at least {minimum}, got {number}")

    return number


def read_scalars(name: str, value: Any) -> List[Scalar]:
    """
    A comma-separated list of scalar literals ("1,2,i") or a sequence of literals

    :raises: InvalidJobError

    """

    items: Sequence[Any] = value.split(",") if isinstance(value, str) else value

    try:
        return [parse_scalar(item.strip()) if isinstance(item, str) else to_scalar(item) for item in items]
    except (ScalarSyntaxError, TypeError) as ex:
        raise InvalidJobError(f"Option '{name}': {ex}")


def _read_corner(name: str, text: str, n: int) -> MultiIndex:
    parts: List[str] = text.split(",")

    if len(parts) == 1:
        return (read_int(name, parts[0]),) * n

    if len(parts) != n:
        raise InvalidJobError(f"Option '{name}': corner '{text}' needs 1 or {n} entries")

    return tuple(read_int(name, part) for part in parts)


def read_window(name: str, value: Any, n: int) -> Tuple[MultiIndex, MultiIndex]:
    """
    ``lo..hi`` with each corner a single integer (used on every axis) or n comma-separated ones

    :raises: InvalidJobError

    """

    if not isinstance(value, str):
        lo, hi = value
        return tuple(lo), tuple(hi)

    if ".." not in value:
        raise InvalidJobError(f"Option '{name}' must look like lo..hi, got {value!r}")

    lo_text, hi_text = value.split("..", 1)
    lo: MultiIndex = _read_corner(name, lo_text, n)
    hi: MultiIndex = _read_corner(name, hi_text, n)

    if any(a > b for a, b in zip(lo, hi)):
        raise InvalidJobError(f"Option '{name}': lower corner {lo} exceeds upper corner {hi}")

    return lo, hi


def read_flag(value: Any) -> bool:
    if isinstance(value, str):
        return value.strip().lower() in ("1", "true", "yes", "on")
    return bool(value)


__all__ = [
    "read_int",
    "read_scalars",
    "read_window",
    "read_flag"
]
