"""Symbolic disk areas ``c_t * t + sum_i a_i x_i (+ const)``."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .ring import format_fraction, parse_fraction

__all__ = ["AffineArea"]


@dataclass(frozen=True)
class AffineArea:
    t: Fraction
    x: tuple
    const: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "t", Fraction(self.t))
        object.__setattr__(self, "x", tuple(Fraction(a) for a in self.x))
        object.__setattr__(self, "const", Fraction(self.const))

    @classmethod
    def zero(cls, n):
        return cls(0, (0,) * n)

    @property
    def n(self):
        return len(self.x)

    def __add__(self, other):
        if self.n != other.n:
            raise ValueError("area dimension mismatch")
        return AffineArea(self.t + other.t, tuple(a + b for a, b in zip(self.x, other.x)), self.const + other.const)

    def __neg__(self):
        return AffineArea(-self.t, tuple(-a for a in self.x), -self.const)

    def __sub__(self, other):
        return self + (-other)

    def __call__(self, t, x):
        """Numeric value at parameter ``t`` and fiber position ``x``."""
        return float(self.t) * t + sum(float(a) * xi for a, xi in zip(self.x, x)) + float(self.const)

    def exact(self, t, x):
        return self.t * Fraction(t) + sum((a * Fraction(xi) for a, xi in zip(self.x, x)), Fraction(0)) + self.const

    def sort_key(self):
        return (self.t, self.x, self.const)

    def to_json(self):
        out = {"t": format_fraction(self.t), "x": [format_fraction(a) for a in self.x]}
        if self.const:
            out["const"] = format_fraction(self.const)
        return out

    @classmethod
    def from_json(cls, obj):
        return cls(parse_fraction(obj["t"]), [parse_fraction(a) for a in obj["x"]], parse_fraction(obj.get("const", "0/1")))

    def __str__(self):
        parts = []

        def put(c, sym):
            if not c:
                return
            mag = abs(c)
            if sym:
                coef = "" if mag.numerator == 1 else str(mag.numerator)
                body = coef + sym + ("" if mag.denominator == 1 else f"/{mag.denominator}")
            else:
                body = str(mag)
            parts.append(("-" if c < 0 else "+", body))

        put(self.t, "t")
        for i, a in enumerate(self.x):
            put(a, "x" if self.n == 1 else f"x{i + 1}")
        put(self.const, "")
        if not parts:
            return "0"
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s
