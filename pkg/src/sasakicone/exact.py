"""Exact rational polynomials, Sturm chains and real root isolation.

Rationals are :class:`fractions.Fraction` throughout (always reduced, positive
denominator).  Polynomials are dense, lowest degree first.
"""

from __future__ import annotations

import enum
import math
import os
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

Number = int | Fraction

DEFAULT_WIDTH = Fraction(1, 2**40)
WIDTH_ENV_VAR = "SASAKI_ISOLATION_WIDTH"

INF = math.inf


def parse_fraction(text: str) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or ``"1/2^k"`` into a Fraction."""
    text = text.strip()
    m = re.fullmatch(r"([+-]?\d+)\s*/\s*(\d+)\s*\^\s*(\d+)", text)
    if m:
        return Fraction(int(m.group(1)), int(m.group(2)) ** int(m.group(3)))
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc


def fraction_str(x: Fraction | int) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def default_width() -> Fraction:
    """Isolation width, overridable through ``SASAKI_ISOLATION_WIDTH``."""
    raw = os.environ.get(WIDTH_ENV_VAR)
    if not raw:
        return DEFAULT_WIDTH
    width = parse_fraction(raw)
    if width <= 0:
        raise ValueError(f"{WIDTH_ENV_VAR} must be positive, got {raw!r}")
    return width


def _sign(x) -> int:
    return (x > 0) - (x < 0)


class PolyQ:
    """Immutable univariate polynomial with Fraction coefficients."""

    __slots__ = ("coeffs", "_ints")

    def __init__(self, coeffs: Iterable[Number] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)
        # positive multiple with coprime integer coefficients, for fast signs
        if cs:
            den = reduce(math.lcm, (c.denominator for c in cs), 1)
            ints = [c.numerator * (den // c.denominator) for c in cs]
            g = reduce(math.gcd, ints, 0)
            self._ints = tuple(i // g for i in ints)
        else:
            self._ints = ()

    @classmethod
    def x(cls) -> PolyQ:
        return cls([0, 1])

    @classmethod
    def const(cls, c: Number) -> PolyQ:
        return cls([c])

    # -- basic structure -------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coeff(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def integer_coeffs(self) -> tuple[int, ...]:
        """Primitive integer coefficients; a positive multiple of ``self``."""
        return self._ints

    def normalized(self) -> PolyQ:
        """Coprime integer coefficients, scaled by a positive constant."""
        return PolyQ(self._ints)

    def primitive(self) -> PolyQ:
        """Primitive integer polynomial with positive leading coefficient."""
        ints = self._ints
        if ints and ints[-1] < 0:
            ints = tuple(-i for i in ints)
        return PolyQ(ints)

    def monic(self) -> PolyQ:
        if self.is_zero():
            return self
        lc = self.leading
        return PolyQ(c / lc for c in self.coeffs)

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other) -> PolyQ:
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return PolyQ(self.coeff(i) + other.coeff(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> PolyQ:
        return PolyQ(-c for c in self.coeffs)

    def __sub__(self, other) -> PolyQ:
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> PolyQ:
        return _as_poly(other) - self

    def __mul__(self, other) -> PolyQ:
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return PolyQ()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return PolyQ(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> PolyQ:
        out = PolyQ([1])
        for _ in range(n):
            out = out * self
        return out

    def __divmod__(self, other) -> tuple[PolyQ, PolyQ]:
        other = _as_poly(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lc = other.leading
        quot = [Fraction(0)] * max(len(rem) - dq, 1)
        for i in range(len(rem) - 1, dq - 1, -1):
            t = rem[i] / lc
            if t:
                quot[i - dq] = t
                for j, b in enumerate(other.coeffs):
                    rem[i - dq + j] -= t * b
        return PolyQ(quot), PolyQ(rem[:dq])

    def __floordiv__(self, other) -> PolyQ:
        return divmod(self, other)[0]

    def __mod__(self, other) -> PolyQ:
        return divmod(self, other)[1]

    def derivative(self) -> PolyQ:
        return PolyQ(i * c for i, c in enumerate(self.coeffs) if i)

    def compose(self, other) -> PolyQ:
        other = _as_poly(other)
        out = PolyQ()
        for c in reversed(self.coeffs):
            out = out * other + c
        return out

    # -- evaluation ------------------------------------------------------
    def __call__(self, x: Number) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def sign_at(self, x: Number | float) -> int:
        """Exact sign of the polynomial at a rational point or at ±inf."""
        ints = self._ints
        if not ints:
            return 0
        if x == INF:
            return _sign(ints[-1])
        if x == -INF:
            return _sign(ints[-1]) * (-1) ** (len(ints) - 1)
        x = Fraction(x)
        num, den = x.numerator, x.denominator
        # den**deg * p(num/den), evaluated in integers
        acc = ints[-1]
        dpow = 1
        for c in reversed(ints[:-1]):
            dpow *= den
            acc = acc * num + c * dpow
        return _sign(acc)

    # -- misc ------------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = PolyQ([other])
        return isinstance(other, PolyQ) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"PolyQ([{', '.join(fraction_str(c) for c in self.coeffs)}])"

    def to_json(self) -> list[str]:
        return [fraction_str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str | int]) -> PolyQ:
        return cls(parse_fraction(str(c)) for c in data)

    def pretty(self, var: str = "c") -> str:
        """Render highest degree first, e.g. ``4c^3 + 4c^2 - 4c - 1``."""
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mag = abs(c)
            if i == 0:
                body = fraction_str(mag)
            else:
                mono = var if i == 1 else f"{var}^{i}"
                body = mono if mag == 1 else f"{fraction_str(mag)}{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def _as_poly(x) -> PolyQ:
    return x if isinstance(x, PolyQ) else PolyQ([x])


def poly_gcd(a: PolyQ, b: PolyQ) -> PolyQ:
    """Monic gcd (zero if both are zero)."""
    while not b.is_zero():
        a, b = b, (a % b).primitive()
    return a.monic()


def squarefree_part(p: PolyQ) -> PolyQ:
    if p.is_zero():
        raise ValueError("zero polynomial has no square-free part")
    if p.degree < 1:
        return PolyQ([1])
    return (p // poly_gcd(p, p.derivative())).primitive()


def squarefree_factors(p: PolyQ) -> list[PolyQ]:
    """Yun's decomposition: ``[a1, a2, ...]`` with p = lc * prod a_i**i."""
    if p.is_zero():
        raise ValueError("zero polynomial has no square-free decomposition")
    if p.degree < 1:
        return []
    dp = p.derivative()
    b = poly_gcd(p, dp)
    c = p // b
    d = dp // b - c.derivative()
    out = []
    while c.degree >= 1:
        a = poly_gcd(c, d)
        out.append(a)
        c = c // a
        d = d // a - c.derivative()
    return out


# ---------------------------------------------------------------------------
# Sturm chains


def sturm_chain(p: PolyQ) -> list[PolyQ]:
    """Sturm chain of the square-free part of ``p``.

    Members are rescaled by positive constants, which leaves sign variation
    counts unchanged.
    """
    if p.is_zero():
        raise ValueError("zero polynomial has no Sturm chain")
    p0 = squarefree_part(p)
    chain = [p0]
    if p0.degree < 1:
        return chain
    chain.append(p0.derivative().normalized())
    while True:
        r = chain[-2] % chain[-1]
        if r.is_zero():
            break
        chain.append((-r).normalized())
    return chain


def _variations(chain: Sequence[PolyQ], x) -> int:
    count = 0
    last = 0
    for q in chain:
        s = q.sign_at(x)
        if s:
            if last and s != last:
                count += 1
            last = s
    return count


def sturm_sign_changes(p: PolyQ, a, b) -> int:
    """Number of distinct real roots of ``p`` in the half-open ``(a, b]``.

    ``a`` and ``b`` may be rationals or ``±math.inf``.
    """
    if p.is_zero():
        raise ValueError("zero polynomial has no Sturm chain")
    if not a < b:
        raise ValueError(f"need a < b, got a={a}, b={b}")
    chain = sturm_chain(p)
    return _variations(chain, a) - _variations(chain, b)


def count_roots_open(p: PolyQ, a, b) -> int:
    """Number of distinct real roots of ``p`` strictly inside ``(a, b)``."""
    n = sturm_sign_changes(p, a, b)
    if b != INF and p.sign_at(b) == 0:
        n -= 1
    return n


def cauchy_bound(p: PolyQ) -> Fraction:
    """Integer bound strictly exceeding every |root| of ``p``."""
    ints = p.integer_coeffs()
    lc = abs(ints[-1])
    return Fraction(1 + max((abs(c) for c in ints[:-1]), default=0) // lc + 1)


# ---------------------------------------------------------------------------
# Isolating intervals


@dataclass(frozen=True)
class IsolatingInterval:
    """A real algebraic number: the unique root of ``poly`` in ``[lo, hi]``.

    Either ``lo == hi`` (an exact rational root) or ``poly`` takes nonzero
    values of opposite sign at ``lo`` and ``hi``.  ``poly`` is square-free.
    """

    poly: PolyQ
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError("isolating interval needs lo <= hi")
        if self.lo == self.hi:
            if self.poly.sign_at(self.lo) != 0:
                raise ValueError("degenerate interval is not a root")
        elif self.poly.sign_at(self.lo) * self.poly.sign_at(self.hi) >= 0:
            raise ValueError("no sign change across isolating interval")

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __float__(self) -> float:
        return float(self.midpoint)

    def refine(self, width: Fraction | None = None) -> IsolatingInterval:
        """Bisect until the width is at most ``width``."""
        width = default_width() if width is None else Fraction(width)
        if self.is_exact or self.width <= width:
            return self
        lo, hi = self.lo, self.hi
        p = self.poly
        slo = p.sign_at(lo)
        while hi - lo > width:
            mid = (lo + hi) / 2
            s = p.sign_at(mid)
            if s == 0:
                return IsolatingInterval(p, mid, mid)
            if s == slo:
                lo = mid
            else:
                hi = mid
        return IsolatingInterval(p, lo, hi)

    def with_poly(self, q: PolyQ) -> IsolatingInterval:
        """Same number, re-expressed with a square-free divisor ``q`` of ``poly``."""
        return IsolatingInterval(q, self.lo, self.hi)

    def sign_of(self, q: PolyQ) -> int:
        """Exact sign of ``q`` at this algebraic number."""
        if self.is_exact:
            return q.sign_at(self.lo)
        if q.is_zero():
            return 0
        g = poly_gcd(self.poly, q)
        if g.degree >= 1 and self.is_root_of(g):
            return 0
        lo, hi = self.lo, self.hi
        p = self.poly
        slo = p.sign_at(lo)
        # shrink until q has no root in [lo, hi]
        while q.sign_at(lo) == 0 or sturm_sign_changes(q, lo, hi) != 0:
            mid = (lo + hi) / 2
            s = p.sign_at(mid)
            if s == 0:
                return q.sign_at(mid)
            if s == slo:
                lo = mid
            else:
                hi = mid
        return q.sign_at(lo)

    def compare(self, other: IsolatingInterval | Fraction | int) -> int:
        """-1, 0 or 1 as this number is below, equal to or above ``other``."""
        if not isinstance(other, IsolatingInterval):
            other = Fraction(other)
            if self.is_exact:
                return _sign(self.lo - other)
            if other <= self.lo:
                return 1
            if other >= self.hi:
                return -1
            s = self.poly.sign_at(other)
            if s == 0:
                return 0
            return 1 if s == self.poly.sign_at(self.lo) else -1
        if other.is_exact:
            return self.compare(other.lo)
        if self.is_exact:
            return -other.compare(self.lo)
        g = poly_gcd(self.poly, other.poly)
        a, b = self, other
        while True:
            if a.hi < b.lo:
                return -1
            if b.hi < a.lo:
                return 1
            if a.is_exact or b.is_exact:
                return a.compare(b)
            if g.degree >= 1 and a.is_root_of(g) and b.is_root_of(g):
                # both are roots of g; equal once g has a single root nearby
                hull_lo, hull_hi = min(a.lo, b.lo), max(a.hi, b.hi)
                if count_roots_open(g, hull_lo, hull_hi) == 1:
                    return 0
            a = a.refine(a.width / 2)
            b = b.refine(b.width / 2)

    def is_root_of(self, g: PolyQ) -> bool:
        """True when this number is a root of ``g``, a square-free divisor of ``poly``."""
        if self.is_exact:
            return g.sign_at(self.lo) == 0
        return g.sign_at(self.lo) * g.sign_at(self.hi) < 0

    def to_json(self) -> dict:
        return {"poly": self.poly.to_json(), "lo": fraction_str(self.lo), "hi": fraction_str(self.hi)}

    @classmethod
    def from_json(cls, data: dict) -> IsolatingInterval:
        return cls(PolyQ.from_json(data["poly"]), parse_fraction(data["lo"]), parse_fraction(data["hi"]))


def isolate_real_roots(p: PolyQ, a, b, width: Fraction | None = None) -> list[IsolatingInterval]:
    """Isolate every distinct real root of ``p`` in the open interval ``(a, b)``.

    Intervals are sorted, pairwise disjoint (as closed sets) and no wider than
    ``width``.  ``a``/``b`` may be ``±math.inf``.
    """
    if p.is_zero():
        raise ValueError("zero polynomial has no Sturm chain")
    if not a < b:
        raise ValueError(f"need a < b, got a={a}, b={b}")
    width = default_width() if width is None else Fraction(width)
    if width <= 0:
        raise ValueError("isolation width must be positive")
    sf = squarefree_part(p)
    if sf.degree < 1:
        return []
    bound = cauchy_bound(sf)
    lo0 = -bound if a == -INF else max(Fraction(a), -bound)
    hi0 = bound if b == INF else min(Fraction(b), bound)
    if lo0 >= hi0:
        return []
    chain = sturm_chain(sf)

    found: list[IsolatingInterval] = []

    def open_count(lo, hi, vlo, vhi):
        return vlo - vhi - (1 if sf.sign_at(hi) == 0 else 0)

    def visit(lo, hi, vlo, vhi):
        n = open_count(lo, hi, vlo, vhi)
        if n == 0:
            return
        if n == 1 and sf.sign_at(lo) != 0 and sf.sign_at(hi) != 0:
            found.append(IsolatingInterval(sf, lo, hi))
            return
        mid = (lo + hi) / 2
        vmid = _variations(chain, mid)
        visit(lo, mid, vlo, vmid)
        if sf.sign_at(mid) == 0:
            found.append(IsolatingInterval(sf, mid, mid))
        visit(mid, hi, vmid, vhi)

    visit(lo0, hi0, _variations(chain, lo0), _variations(chain, hi0))
    found = [iv.refine(width) for iv in found]
    # separate neighbours that share an endpoint
    for i in range(len(found) - 1):
        while found[i].hi >= found[i + 1].lo:
            found[i] = found[i].refine(found[i].width / 2)
            found[i + 1] = found[i + 1].refine(found[i + 1].width / 2)
    return found


def real_roots(p: PolyQ, a, b, width: Fraction | None = None) -> list[Fraction | IsolatingInterval]:
    """Like :func:`isolate_real_roots`, but exact roots come back as Fractions."""
    return [iv.lo if iv.is_exact else iv for iv in isolate_real_roots(p, a, b, width)]


# ---------------------------------------------------------------------------
# Rational roots


def rational_roots(p: PolyQ) -> list[Fraction]:
    """All rational roots of ``p``, ascending, each verified by exact evaluation.

    A rational root ``u/v`` of the integer square-free part has ``v`` dividing
    the leading coefficient ``a``; two such numbers lie at least ``1/a^2``
    apart.  Each real root is isolated to width ``1/(2a^2)`` and the single
    candidate near it is tested.  This avoids factoring large coefficients.
    """
    if p.is_zero():
        raise ValueError("zero polynomial has infinitely many roots")
    sf = squarefree_part(p)
    if sf.degree < 1:
        return []
    lead = abs(sf.integer_coeffs()[-1])
    roots: set[Fraction] = set()
    for iv in isolate_real_roots(sf, -INF, INF, Fraction(1, 2 * lead * lead)):
        cand = iv.lo if iv.is_exact else iv.midpoint.limit_denominator(lead)
        if sf.sign_at(cand) == 0:
            roots.add(cand)
    return sorted(roots)


def strip_rational_roots(p: PolyQ) -> PolyQ:
    """Square-free part of ``p`` with every rational linear factor divided out."""
    q = squarefree_part(p)
    for rt in rational_roots(q):
        q = q // PolyQ([-rt, 1])
    return q.primitive()


# ---------------------------------------------------------------------------
# Positivity certificates


class Positivity(enum.Enum):
    STRICTLY_POSITIVE = "StrictlyPositive"
    VANISHES_INSIDE = "VanishesInside"
    NEGATIVE_SOMEWHERE = "NegativeSomewhere"


def positive_on_open_interval(p: PolyQ, a: Number, b: Number) -> Positivity:
    """Decide the sign behaviour of ``p`` on the open interval ``(a, b)``.

    Roots of odd multiplicity inside mean a sign change; otherwise the sign is
    read off at one interior non-root and the square-free part tells whether
    ``p`` touches zero.
    """
    if p.is_zero():
        raise ValueError("zero polynomial has no Sturm chain")
    a, b = Fraction(a), Fraction(b)
    if not a < b:
        raise ValueError(f"need a < b, got a={a}, b={b}")
    factors = squarefree_factors(p)
    odd = reduce(lambda x, y: x * y, factors[0::2], PolyQ([1]))
    if odd.degree >= 1 and count_roots_open(odd, a, b) > 0:
        return Positivity.NEGATIVE_SOMEWHERE
    sf = reduce(lambda x, y: x * y, factors, PolyQ([1]))
    k = 2
    point = (a + b) / 2
    while sf.sign_at(point) == 0:
        k += 1
        point = a + (b - a) / k
    if p.sign_at(point) < 0:
        return Positivity.NEGATIVE_SOMEWHERE
    if sf.degree >= 1 and count_roots_open(sf, a, b) > 0:
        return Positivity.VANISHES_INSIDE
    return Positivity.STRICTLY_POSITIVE
