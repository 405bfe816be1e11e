"""Exact output values: zero, or a positive rational times a root of unity."""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

__all__ = ["Value", "ZERO", "ONE", "MINUS_ONE", "parse_value"]


@dataclass(frozen=True)
class Value:
    """``mag * exp(2*pi*i*phase)``; ``mag == 0`` is the zero value (phase 0).

    Instances are normalized on construction, so ``==`` and ``hash`` are
    structural and exact.
    """

    mag: Fraction
    phase: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        mag = Fraction(self.mag)
        phase = Fraction(self.phase)
        if mag < 0:
            raise ValueError("magnitude must be nonnegative")
        phase = Fraction(0) if mag == 0 else phase - (phase.numerator // phase.denominator)
        object.__setattr__(self, "mag", mag)
        object.__setattr__(self, "phase", phase)

    @classmethod
    def root(cls, a: int, b: int) -> "Value":
        """The root of unity ``exp(2*pi*i*a/b)``."""
        return cls(Fraction(1), Fraction(a, b))

    @property
    def is_zero(self) -> bool:
        return self.mag == 0

    @property
    def is_unit(self) -> bool:
        return self.mag == 1

    def __mul__(self, other: "Value") -> "Value":
        if not isinstance(other, Value):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return ZERO
        return Value(self.mag * other.mag, self.phase + other.phase)

    def __abs__(self) -> "Value":
        return Value(self.mag)

    def conjugate(self) -> "Value":
        return Value(self.mag, -self.phase)

    def sort_key(self) -> tuple[Fraction, Fraction]:
        return (self.mag, self.phase)

    def to_complex(self) -> complex:
        import cmath

        return float(self.mag) * cmath.exp(2j * cmath.pi * float(self.phase))

    def to_json(self) -> Union[str, dict]:
        if self.is_zero:
            return "0"
        return {"mag": str(self.mag), "phase": str(self.phase)}

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        mag = "" if self.mag == 1 else str(self.mag)
        special = {Fraction(0): ("", "1"), Fraction(1, 2): ("-", "1"),
                   Fraction(1, 4): ("", "i"), Fraction(3, 4): ("-", "i")}
        if self.phase in special:
            sign, unit = special[self.phase]
            if unit == "1":
                return sign + (mag or "1")
            return sign + (f"{mag}*i" if mag else "i")
        root = f"e({self.phase})"
        return f"{mag}*{root}" if mag else root

    def __repr__(self) -> str:
        return f"Value({self})"


ZERO = Value(Fraction(0))
ONE = Value(Fraction(1))
MINUS_ONE = Value(Fraction(1), Fraction(1, 2))

_TERM = re.compile(
    r"^(?P<sign>[+-]?)(?:(?P<mag>\d+(?:/\d+)?)\*?)?(?P<unit>i|e\((?P<ph>-?\d+(?:/\d+)?)\))?$"
)


def parse_value(obj: Union[str, int, dict, Value]) -> Value:
    """Parse the text or JSON form of a value.

    Text forms: ``0``, ``1``, ``-1``, ``3/2``, ``i``, ``-i``, ``2*i``,
    ``e(1/3)``, ``1/2*e(2/5)``. JSON form: ``{"mag": "a/b", "phase": "c/d"}``.
    """
    if isinstance(obj, Value):
        return obj
    if isinstance(obj, dict):
        try:
            return Value(Fraction(str(obj["mag"])), Fraction(str(obj.get("phase", "0"))))
        except KeyError:
            raise ValueError("value object needs a 'mag' field") from None
    if isinstance(obj, int) and not isinstance(obj, bool):
        obj = str(obj)
    if not isinstance(obj, str):
        raise ValueError(f"cannot parse value {obj!r}")
    s = obj.strip().replace(" ", "")
    m = _TERM.match(s)
    if not s or m is None or (m["mag"] is None and m["unit"] is None):
        raise ValueError(f"cannot parse value {obj!r}")
    mag = Fraction(m["mag"]) if m["mag"] else Fraction(1)
    phase = Fraction(0)
    if m["unit"] == "i":
        phase = Fraction(1, 4)
    elif m["unit"]:
        phase = Fraction(m["ph"])
    if m["sign"] == "-":
        phase += Fraction(1, 2)
    return Value(mag, phase)
