__all__ = ["BaseModel", "flatten_dict", "format_rational", "iter_bits", "parse_rational"]

import re
from collections.abc import Iterator
from fractions import Fraction
from typing import Any

from pydantic import BaseModel as PydanticModel
from rich.panel import Panel

from hamilton_toughness.console import CONSOLE
from hamilton_toughness.errors import InputError

_RATIONAL = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(\d+))?\s*$")


class BaseModel(
    PydanticModel,
    populate_by_name=True,
    str_strip_whitespace=True,
    validate_assignment=True,
    extra="ignore",
):
    def display(self) -> None:
        content = flatten_dict(content=self.model_dump(mode="json"))
        content_vals = [
            f"[repr.attrib_name]{k}[/]: [repr.attrib_value]{v}[/]" for k, v in content.items()
        ]
        CONSOLE.print(Panel.fit("\n".join(content_vals), title=type(self).__name__))


def flatten_dict(content: dict[str, Any], parent_key: str = "") -> dict[str, Any]:
    items = {}
    for key, value in content.items():
        new_key = f"{parent_key}.{key}" if parent_key else key
        if isinstance(value, dict):
            items.update(flatten_dict(content=value, parent_key=new_key))
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            for index, entry in enumerate(value):
                items.update(flatten_dict(content=entry, parent_key=f"{new_key}[{index}]"))
        else:
            items[new_key] = value
    return dict(sorted(items.items()))


def format_rational(value: Fraction | None) -> str:
    """Render as "p/q" in lowest terms, or "inf" for None."""
    if value is None:
        return "inf"
    return f"{value.numerator}/{value.denominator}"


def parse_rational(value: str | int | Fraction) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    match = _RATIONAL.match(value)
    if not match:
        raise InputError(f"Not a rational number: '{value}'")
    numerator, denominator = match.groups()
    if denominator is not None and int(denominator) == 0:
        raise InputError(f"Zero denominator: '{value}'")
    return Fraction(int(numerator), int(denominator or 1))


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the positions of the set bits of mask in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low
