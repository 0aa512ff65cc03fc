"""Scalar curvature of admissible rays, kept exact as ``a*pi + b``."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .exact import fraction_str
from .topology import Bundle, JoinParams, ProductRayError, WeightVector, contact_invariants, is_product_ray

# pi to 60 digits; enough to order any pi-linear value met here
_PI_LO = Fraction(314159265358979323846264338327950288419716939937510582097494, 10**59)
_PI_HI = _PI_LO + Fraction(1, 10**59)

# 2n with n = 2: the transverse homothety fixed point is -4 in dimension five
TWO_N = 4

DECIMAL_DIGITS = 12


@dataclass(frozen=True)
class PiLinear:
    """The real number ``pi_coeff * pi + const``."""

    pi: Fraction = Fraction(0)
    const: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "pi", Fraction(self.pi))
        object.__setattr__(self, "const", Fraction(self.const))

    def __add__(self, other) -> PiLinear:
        other = _as_pilinear(other)
        return PiLinear(self.pi + other.pi, self.const + other.const)

    __radd__ = __add__

    def __neg__(self) -> PiLinear:
        return PiLinear(-self.pi, -self.const)

    def __sub__(self, other) -> PiLinear:
        return self + (-_as_pilinear(other))

    def __rsub__(self, other) -> PiLinear:
        return _as_pilinear(other) - self

    def __mul__(self, k) -> PiLinear:
        k = Fraction(k)
        return PiLinear(self.pi * k, self.const * k)

    __rmul__ = __mul__

    def __truediv__(self, k) -> PiLinear:
        k = Fraction(k)
        return PiLinear(self.pi / k, self.const / k)

    def is_zero(self) -> bool:
        return self.pi == 0 and self.const == 0

    def sign(self) -> int:
        a, b = self.pi, self.const
        if a == 0:
            return (b > 0) - (b < 0)
        lo, hi = sorted((a * _PI_LO + b, a * _PI_HI + b))
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        raise ArithmeticError(f"cannot order {self} with the stored digits of pi")

    def __float__(self) -> float:
        return float(self.pi * _PI_LO + self.const)

    def decimal(self) -> str:
        return f"{float(self):.{DECIMAL_DIGITS}g}"

    def __str__(self) -> str:
        parts = []
        if self.pi:
            a = self.pi
            num = "" if abs(a.numerator) == 1 else str(abs(a.numerator))
            term = f"{num}π" if a.denominator == 1 else f"{num}π/{a.denominator}"
            parts.append(("-" if a < 0 else "", term))
        if self.const or not parts:
            b = self.const
            parts.append(("-" if b < 0 else "", fraction_str(abs(b))))
        out = parts[0][0] + parts[0][1]
        for sign, term in parts[1:]:
            out += f" {sign or '+'} {term}"
        return out

    def to_json(self) -> dict:
        return {"pi": fraction_str(self.pi), "const": fraction_str(self.const), "decimal": self.decimal()}


def _as_pilinear(x) -> PiLinear:
    return x if isinstance(x, PiLinear) else PiLinear(0, Fraction(x))


class Type3(enum.Enum):
    ABOVE = "Above(-4)"
    EQUAL = "Equal(-4)"
    BELOW = "Below(-4)"


@dataclass(frozen=True)
class ScalarReport:
    """Transverse scalar curvature ``A + B z`` and, when constant, the Sasaki one."""

    A: PiLinear
    B: PiLinear
    sasaki_const: PiLinear | None
    type3: Type3 | None

    @property
    def is_csc(self) -> bool:
        return self.B.is_zero()

    def transverse_at(self, z) -> PiLinear:
        return self.A + self.B * Fraction(z)

    def sasaki_at(self, z) -> PiLinear:
        return self.transverse_at(z) - TWO_N

    def to_json(self) -> dict:
        return {
            "A": self.A.to_json(),
            "B": self.B.to_json(),
            "sasaki_const": self.sasaki_const.to_json() if self.sasaki_const else None,
            "type": self.type3.value if self.type3 else None,
        }


def scalar_coefficients(params: JoinParams, v: WeightVector) -> tuple[PiLinear, PiLinear]:
    """Coefficients of the transverse scalar curvature ``A + B z`` of the ray ``v``."""
    if is_product_ray(params, v):
        raise ProductRayError("v = w is the product ray: the admissible data are undefined")
    g, l, w1, w2 = params.g, params.l, params.w1, params.w2
    v1, v2 = v.v1, v.v2
    quad = v2**2 * w1**2 + 4 * v1 * v2 * w1 * w2 + v1**2 * w2**2
    a_num = v1 * w2 * (1 - g + l * w1) + v2 * w1 * (1 - g + l * w2)
    b_num = (l * v2**3 * w1**2 - v1**2 * v2 * w2 * (g - 1 + 2 * l * w1)
             - l * v1**3 * w2**2 + v1 * v2**2 * w1 * (g - 1 + 2 * l * w2))
    A = PiLinear(Fraction(24 * a_num, l * quad))
    B = PiLinear(Fraction(24 * b_num, l * v1 * v2 * quad))
    return A, B


def _classify(s: PiLinear) -> Type3:
    sign = (s + TWO_N).sign()
    return {1: Type3.ABOVE, 0: Type3.EQUAL, -1: Type3.BELOW}[sign]


def sasaki_scalar(params: JoinParams, v: WeightVector) -> ScalarReport:
    A, B = scalar_coefficients(params, v)
    if B.is_zero():
        s = A - TWO_N
        return ScalarReport(A, B, s, _classify(s))
    return ScalarReport(A, B, None, None)


def transverse_homothety(s: PiLinear, a) -> PiLinear:
    """Sasaki scalar curvature after the transverse homothety with parameter ``a``."""
    a = Fraction(a)
    if a <= 0:
        raise ValueError("homothety parameter a must be positive")
    return (s + TWO_N) / a - TWO_N


@dataclass(frozen=True)
class NullScalarSolution:
    l: int
    w1: int
    w2: int
    v1: int
    v2: int
    bundle: Bundle

    def to_json(self) -> dict:
        return {"l": self.l, "w": [self.w1, self.w2], "v": [self.v1, self.v2],
                "bundle": self.bundle.label}


@dataclass(frozen=True)
class NullScalarResult:
    g: int
    bound: int
    solutions: tuple[NullScalarSolution, ...]
    note: str = ""

    def to_json(self) -> dict:
        return {"g": self.g, "bound": self.bound,
                "solutions": [s.to_json() for s in self.solutions], "note": self.note}


NOT_FOUND_NOTE = (
    "only the admissible construction is searched; an empty bundle type means "
    "not found here, not non-existence"
)


def null_scalar_solutions(g: int, search_bound: int) -> NullScalarResult:
    """Admissible CSC rays with Sasaki scalar curvature -4 (scalar-flat transverse metric).

    Enumerates ``l, w1 <= search_bound`` with ``l^2 w1 w2 = (g-1)^2`` and
    ``l w2 < g - 1``; each ray is re-verified to have ``A = B = 0``.
    """
    if search_bound < 1:
        raise ValueError("search bound must be a positive integer")
    if g < 1:
        raise ValueError("genus g >= 1 required: the genus 0 case is not treated")
    if g <= 2:
        return NullScalarResult(g, search_bound, (), "A > 0 for every ray when g <= 2: no scalar-flat admissible rays")
    G = g - 1
    out = []
    for l in range(1, search_bound + 1):
        if (G * G) % (l * l):
            continue
        prod = (G * G) // (l * l)
        for w1 in range(1, search_bound + 1):
            if prod % w1:
                continue
            w2 = prod // w1
            if gcd(w1, w2) != 1 or w1 < w2 or l * w2 >= G:
                continue
            num = (l * w1 - G) * w2
            den = (G - l * w2) * w1
            c = Fraction(num, den)
            params = JoinParams(g, l, w1, w2)
            v = WeightVector.from_slope(c)
            A, B = scalar_coefficients(params, v)
            if not (A.is_zero() and B.is_zero()):
                raise AssertionError(f"scalar-flat check failed for l={l}, w=({w1},{w2})")
            out.append(NullScalarSolution(l, w1, w2, v.v1, v.v2, contact_invariants(params).bundle))
    return NullScalarResult(g, search_bound, tuple(out), NOT_FOUND_NOTE)


def degenerate_factor(g: int, l: int, w1: int, w2: int) -> int:
    """Cofactor of ``l^2 w1 w2 - (g-1)^2`` in the CSC cubic at the ``A = 0`` slope.

    Never zero for positive integers with ``l w2 < g - 1``.
    """
    G = g - 1
    return l * l * w1 * w1 - 4 * l * l * w1 * w2 + l * l * w2 * w2 + 2 * G * l * (w1 + w2) - 2 * G * G
