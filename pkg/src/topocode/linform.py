"""Integer linear forms a*k + b*d over two symbolic parameters."""
from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import TopocodeError


@dataclass(frozen=True, order=True)
class LinForm:
    """The form kcoef*k + dcoef*d.

    Ordering is lexicographic with k dominant, i.e. the order that holds when
    k is much larger than every d-multiple in play.
    """

    kcoef: int = 0
    dcoef: int = 0

    def __add__(self, other):
        other = as_form(other)
        return LinForm(self.kcoef + other.kcoef, self.dcoef + other.dcoef)

    __radd__ = __add__

    def __sub__(self, other):
        other = as_form(other)
        return LinForm(self.kcoef - other.kcoef, self.dcoef - other.dcoef)

    def __rsub__(self, other):
        return as_form(other) - self

    def __neg__(self):
        return LinForm(-self.kcoef, -self.dcoef)

    def __mul__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        return LinForm(self.kcoef * n, self.dcoef * n)

    __rmul__ = __mul__

    def evaluate(self, k: int, d: int) -> int:
        return self.kcoef * k + self.dcoef * d

    def sign(self) -> int:
        """Sign under the k-dominant regime."""
        if self.kcoef:
            return 1 if self.kcoef > 0 else -1
        if self.dcoef:
            return 1 if self.dcoef > 0 else -1
        return 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def is_zero(self) -> bool:
        return self.kcoef == 0 and self.dcoef == 0

    def to_json(self):
        return [self.kcoef, self.dcoef]

    @classmethod
    def from_json(cls, value) -> "LinForm":
        if isinstance(value, int):
            return cls(0, value)
        kc, dc = value
        return cls(int(kc), int(dc))

    def __str__(self):
        return f"{self.kcoef}*k{'+' if self.dcoef >= 0 else '-'}{abs(self.dcoef)}*d"

    def pretty(self) -> str:
        """Short human form: 'k+3d', '2d', '0'."""
        parts = []
        if self.kcoef:
            parts.append({1: "k", -1: "-k"}.get(self.kcoef, f"{self.kcoef}k"))
        if self.dcoef:
            term = {1: "d", -1: "-d"}.get(self.dcoef, f"{self.dcoef}d")
            if parts and not term.startswith("-"):
                term = "+" + term
            parts.append(term)
        return "".join(parts) or "0"


K = LinForm(1, 0)
D = LinForm(0, 1)
ZERO = LinForm(0, 0)

_TERM = re.compile(r"([+-]?)\s*(\d*)\s*\*?\s*([kd]?)")


def parse_form(text: str) -> LinForm:
    """Parse '2*k+3*d', 'k-d', '5*d' or '7'; a bare integer means that many d's."""
    s = text.replace(" ", "")
    if not s:
        raise TopocodeError("parse-error", "empty form")
    kc = dc = 0
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (not m.group(2) and not m.group(3)):
            raise TopocodeError("parse-error", f"bad form {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        coef = int(m.group(2)) if m.group(2) else 1
        if m.group(3) == "k":
            kc += sign * coef
        else:
            dc += sign * coef
        pos = m.end()
    return LinForm(kc, dc)


def as_form(value) -> LinForm:
    if isinstance(value, LinForm):
        return value
    if isinstance(value, int):
        return LinForm(0, value)
    raise TypeError(f"cannot treat {value!r} as a linear form")


def value_at(c, k: int, d: int) -> int:
    """Concrete value of a color: LinForms are evaluated, ints pass through."""
    if isinstance(c, LinForm):
        return c.evaluate(k, d)
    return int(c)
