"""Exact scalar arithmetic over the field Q(i, sqrt2).

Every coefficient produced by the ordering conversions lives in the
Gaussian rationals, optionally times sqrt(2) (the ladder-operator
substitution is the only source of sqrt(2) factors).  A scalar is stored
as four reduced rationals (ra, ia, rb, ib) meaning

    (ra + ia*i) + (rb + ib*i) * sqrt(2)

which is a unique representation because {1, i, sqrt2, i*sqrt2} are
linearly independent over Q.  All operations are pure and values are
immutable, so they are safe to share between threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

#: Reduced rational numbers (positive denominator, gcd-free) with
#: unbounded integer components.  The stdlib type maintains exactly the
#: invariants required here.
Rational = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


class ExactArithmeticError(ArithmeticError):
    """Raised on domain errors such as inverting zero."""


@dataclass(frozen=True)
class ExactScalar:
    """Element of Q(i, sqrt2), stored componentwise in lowest terms."""

    ra: Fraction = _ZERO
    ia: Fraction = _ZERO
    rb: Fraction = _ZERO
    ib: Fraction = _ZERO

    # -- constructors ------------------------------------------------

    @classmethod
    def from_int(cls, n: int) -> ExactScalar:
        return cls(Fraction(n))

    @classmethod
    def rational(cls, num: int, den: int = 1) -> ExactScalar:
        return cls(Fraction(num, den))

    @classmethod
    def from_complex_parts(cls, re: Fraction, im: Fraction) -> ExactScalar:
        return cls(Fraction(re), Fraction(im))

    # -- predicates --------------------------------------------------

    def is_zero(self) -> bool:
        return not (self.ra or self.ia or self.rb or self.ib)

    def is_rational(self) -> bool:
        return not (self.ia or self.rb or self.ib)

    # -- ring operations ---------------------------------------------

    def __add__(self, other: ExactScalar | int) -> ExactScalar:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return ExactScalar(
            self.ra + other.ra,
            self.ia + other.ia,
            self.rb + other.rb,
            self.ib + other.ib,
        )

    __radd__ = __add__

    def __neg__(self) -> ExactScalar:
        return ExactScalar(-self.ra, -self.ia, -self.rb, -self.ib)

    def __sub__(self, other: ExactScalar | int) -> ExactScalar:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: ExactScalar | int) -> ExactScalar:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other: ExactScalar | int) -> ExactScalar:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        # (A + B*sqrt2)(C + D*sqrt2) = (AC + 2BD) + (AD + BC)*sqrt2
        # with A, B, C, D Gaussian rationals.
        a_re, a_im, b_re, b_im = self.ra, self.ia, self.rb, self.ib
        c_re, c_im, d_re, d_im = other.ra, other.ia, other.rb, other.ib
        ac_re = a_re * c_re - a_im * c_im
        ac_im = a_re * c_im + a_im * c_re
        bd_re = b_re * d_re - b_im * d_im
        bd_im = b_re * d_im + b_im * d_re
        ad_re = a_re * d_re - a_im * d_im
        ad_im = a_re * d_im + a_im * d_re
        bc_re = b_re * c_re - b_im * c_im
        bc_im = b_re * c_im + b_im * c_re
        return ExactScalar(
            ac_re + 2 * bd_re,
            ac_im + 2 * bd_im,
            ad_re + bc_re,
            ad_im + bc_im,
        )

    __rmul__ = __mul__

    def invert(self) -> ExactScalar:
        """Multiplicative inverse; raises on zero."""
        if self.is_zero():
            raise ExactArithmeticError("cannot invert zero")
        # Clear sqrt2 by the conjugate A - B*sqrt2, then clear i by the
        # Gaussian conjugate; both denominators are nonzero because the
        # representation is unique.
        conj = ExactScalar(self.ra, self.ia, -self.rb, -self.ib)
        norm = self * conj  # lands in Q(i): rb = ib = 0
        den = norm.ra * norm.ra + norm.ia * norm.ia
        inv_norm = ExactScalar(norm.ra / den, -norm.ia / den)
        return conj * inv_norm

    def __truediv__(self, other: ExactScalar | int) -> ExactScalar:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self * other.invert()

    def __pow__(self, exponent: int) -> ExactScalar:
        if exponent < 0:
            return self.invert() ** (-exponent)
        out = ONE
        base = self
        k = exponent
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> ExactScalar:
        """Complex conjugation: fixes sqrt2, maps i to -i."""
        return ExactScalar(self.ra, -self.ia, self.rb, -self.ib)

    # -- numeric bridge ----------------------------------------------

    def to_complex(self) -> complex:
        """Double-precision value, accurate to a few ulp."""
        re = float(self.ra) + float(self.rb) * math.sqrt(2.0)
        im = float(self.ia) + float(self.ib) * math.sqrt(2.0)
        return complex(re, im)

    # -- canonical text ----------------------------------------------

    def render(self) -> str:
        """Canonical rendering, e.g. ``1/2 + -1/2*i`` or ``r2``."""
        parts = []
        for value, tag in (
            (self.ra, ""),
            (self.ia, "i"),
            (self.rb, "r2"),
            (self.ib, "i*r2"),
        ):
            if value == 0:
                continue
            if not tag:
                parts.append(str(value))
            elif value == 1:
                parts.append(tag)
            elif value == -1:
                parts.append("-" + tag)
            else:
                parts.append(f"{value}*{tag}")
        if not parts:
            return "0"
        return " + ".join(parts)

    def __str__(self) -> str:
        return self.render()


def _coerce(value: ExactScalar | int) -> ExactScalar | None:
    if isinstance(value, ExactScalar):
        return value
    if isinstance(value, int):
        return ExactScalar(Fraction(value))
    return None


def parse_scalar(text: str) -> ExactScalar:
    """Parse the canonical rendering produced by :meth:`ExactScalar.render`."""
    text = text.strip()
    if text == "0":
        return ZERO
    total = ZERO
    for part in text.split("+"):
        part = part.strip()
        if not part:
            raise ValueError(f"empty component in scalar {text!r}")
        negative = part.startswith("-")
        if negative:
            part = part[1:].strip()
        factors = part.split("*")
        value = _ONE
        has_i = False
        has_r2 = False
        for factor in factors:
            factor = factor.strip()
            if factor == "i":
                if has_i:
                    raise ValueError(f"repeated i in {part!r}")
                has_i = True
            elif factor == "r2":
                if has_r2:
                    raise ValueError(f"repeated r2 in {part!r}")
                has_r2 = True
            else:
                value = Fraction(factor)
        if negative:
            value = -value
        if not has_i and not has_r2:
            comp = ExactScalar(value)
        elif has_i and not has_r2:
            comp = ExactScalar(_ZERO, value)
        elif not has_i and has_r2:
            comp = ExactScalar(_ZERO, _ZERO, value)
        else:
            comp = ExactScalar(_ZERO, _ZERO, _ZERO, value)
        total = total + comp
    return total


def i_power(k: int) -> ExactScalar:
    """i**k for any integer k."""
    k %= 4
    if k == 0:
        return ONE
    if k == 1:
        return I
    if k == 2:
        return MINUS_ONE
    return MINUS_I


ZERO = ExactScalar()
ONE = ExactScalar(_ONE)
MINUS_ONE = ExactScalar(-_ONE)
I = ExactScalar(_ZERO, _ONE)
MINUS_I = ExactScalar(_ZERO, -_ONE)
SQRT2 = ExactScalar(_ZERO, _ZERO, _ONE)
HALF = ExactScalar(Fraction(1, 2))
I_HALF = ExactScalar(_ZERO, Fraction(1, 2))
