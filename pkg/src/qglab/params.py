"""Parsing of the numeric session parameters q and theta."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import gmpy2

__all__ = ["Theta", "parse_theta", "parse_q", "GOLDEN", "exact_q"]

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class Theta:
    """Rotation angle; ``fraction`` is set for the rational clock model ``L/N``."""

    value: float
    fraction: Fraction | None = None
    label: str = ""

    @property
    def zeta(self) -> complex:
        if self.fraction is not None:
            return clock_phase(self.fraction.numerator, self.fraction.denominator)
        return complex(math.cos(2 * math.pi * self.value), math.sin(2 * math.pi * self.value))

    def convergents(self, count: int = 20) -> list:
        """Continued-fraction convergents p/q of the angle."""
        x = Fraction(self.fraction) if self.fraction is not None else Fraction(self.value)
        out = []
        h0, h1, k0, k1 = 0, 1, 1, 0
        for _ in range(count):
            a = math.floor(x)
            h0, h1 = h1, a * h1 + h0
            k0, k1 = k1, a * k1 + k0
            out.append(Fraction(h1, k1))
            frac = x - a
            if frac == 0:
                break
            x = 1 / frac
        return out


def clock_phase(L: int, N: int) -> complex:
    """e^{2 pi i L/N}, reduced so that exact cases (N | 4L) come out exact."""
    L %= N
    if (4 * L) % N == 0:
        return [1, 1j, -1, -1j][(4 * L) // N]
    t = 2 * math.pi * L / N
    return complex(math.cos(t), math.sin(t))


def parse_theta(text) -> Theta:
    if isinstance(text, Theta):
        return text
    if isinstance(text, Fraction):
        return Theta(float(text), text, f"{text.numerator}/{text.denominator}")
    s = str(text).strip().lower()
    if s == "golden":
        return Theta(GOLDEN, None, "golden")
    if "/" in s:
        fr = Fraction(s)
        return Theta(float(fr), fr, f"{fr.numerator}/{fr.denominator}")
    return Theta(float(s), None, s)


def parse_q(text) -> Fraction:
    """q as an exact rational (decimals are read exactly in base ten)."""
    q = Fraction(str(text).strip()) if not isinstance(text, (Fraction, int)) else Fraction(text)
    if q == 0 or abs(q) >= 1:
        raise ValueError("q must satisfy 0 < |q| < 1")
    return q


def exact_q(q):
    """gmpy2 rational for q (floats are taken at their exact binary value)."""
    if isinstance(q, Fraction):
        return gmpy2.mpq(q.numerator, q.denominator)
    return gmpy2.mpq(q)
