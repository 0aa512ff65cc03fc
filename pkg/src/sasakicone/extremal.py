"""Admissible extremal profiles, positivity verdicts and extremal regions.

For a quasi-regular ray the admissible extremal metric is encoded by a
quadratic ``h(z)``; the momentum profile ``Theta(z) = F(z) / (1 + r z)`` with
``F = (1 - z^2) h / (4 p q (3 - r^2))`` is a genuine metric iff ``h > 0`` on
``(-1, 1)``.
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .exact import (
    INF,
    IsolatingInterval,
    PolyQ,
    Positivity,
    fraction_str,
    isolate_real_roots,
    positive_on_open_interval,
    rational_roots,
    squarefree_part,
    strip_rational_roots,
)
from .topology import (
    Bundle,
    JoinParams,
    WeightVector,
    is_product_ray,
    params_from_km,
    quotient_orbifold,
)

Z = PolyQ.x()


class Strength(enum.Enum):
    GENUINELY_NON_EXTREMAL = "GenuinelyNonExtremal"
    NO_ADMISSIBLE_EXTREMAL = "NoAdmissibleExtremal"
    ADMISSIBLE_EXTREMAL = "AdmissibleExtremal"
    PRODUCT_RAY = "ProductRay"


def _check_r(r: Fraction) -> Fraction:
    r = Fraction(r)
    if not -1 < r < 1 or r == 0:
        raise ValueError(f"r must lie in (-1, 1) and be nonzero, got {fraction_str(r)}")
    return r


def smooth_h(r, s_sigma) -> PolyQ:
    """Extremal ``h(z)`` on a smooth pseudo-Hirzebruch surface."""
    r = _check_r(r)
    s = Fraction(s_sigma)
    return PolyQ([
        12 - 8 * r**2 + 2 * r**3 * s,
        4 * r * (3 - r**2),
        2 * r**2 * (2 - r * s),
    ])


def orbifold_h(p: int, q: int, r, s_sigma) -> PolyQ:
    """Extremal ``h(z)`` with cone angles ``2pi/p`` (at z=-1) and ``2pi/q`` (at z=1)."""
    if p < 1 or q < 1:
        raise ValueError("p and q must be positive integers")
    r = _check_r(r)
    s = Fraction(s_sigma)
    tail = 2 * p * q * r**3 * s
    return PolyQ([
        q * (6 - 3 * r - 4 * r**2 + r**3) + p * (6 + 3 * r - 4 * r**2 - r**3) + tail,
        2 * (3 - r**2) * (q * (r - 1) + p * (1 + r)),
        r * (p * (3 + 2 * r - r**2) - q * (3 - 2 * r - r**2)) - tail,
    ])


@dataclass(frozen=True)
class ExtremalProfile:
    h: PolyQ
    F: PolyQ
    r: Fraction
    p: int
    q: int
    s_sigma: Fraction

    @classmethod
    def build(cls, p: int, q: int, r, s_sigma) -> ExtremalProfile:
        h = orbifold_h(p, q, r, s_sigma)
        r = Fraction(r)
        F = (1 - Z * Z) * h * Fraction(1, 4 * p * q * (3 - r**2))
        return cls(h=h, F=F, r=r, p=p, q=q, s_sigma=Fraction(s_sigma))

    def theta(self, z) -> Fraction:
        z = Fraction(z)
        return self.F(z) / (1 + self.r * z)

    def theta_prime(self, z) -> Fraction:
        z = Fraction(z)
        denom = 1 + self.r * z
        return (self.F.derivative()(z) * denom - self.r * self.F(z)) / denom**2

    def is_csc(self) -> bool:
        return self.h.degree <= 1

    def to_json(self) -> dict:
        return {"h": self.h.to_json(), "F": self.F.to_json(), "r": fraction_str(self.r),
                "p": self.p, "q": self.q, "s_sigma": fraction_str(self.s_sigma)}


@dataclass(frozen=True)
class Witness:
    """Unconstrained minimum of a convex ``h``: its location and value."""

    location: Fraction
    value: Fraction

    def to_json(self) -> dict:
        return {"location": fraction_str(self.location), "value": fraction_str(self.value)}


@dataclass(frozen=True)
class ExtremalVerdict:
    positivity: Positivity | None
    strength: Strength
    witness: Witness | None = None

    @property
    def is_extremal(self) -> bool:
        return self.strength in (Strength.ADMISSIBLE_EXTREMAL, Strength.PRODUCT_RAY)

    def to_json(self) -> dict:
        return {
            "positivity": self.positivity.value if self.positivity else None,
            "verdict": self.strength.value,
            "witness": self.witness.to_json() if self.witness else None,
        }


def _vertex_witness(h: PolyQ) -> Witness | None:
    if h.degree != 2 or h.leading <= 0:
        return None
    loc = -h.coeff(1) / (2 * h.coeff(2))
    if not -1 < loc < 1:
        return None
    return Witness(loc, h(loc))


def _verdict(h: PolyQ, regular: bool) -> ExtremalVerdict:
    pos = positive_on_open_interval(h, -1, 1)
    if pos is Positivity.STRICTLY_POSITIVE:
        strength = Strength.ADMISSIBLE_EXTREMAL
    elif regular:
        # smooth case: extremal metrics are unique, so failure is final
        strength = Strength.GENUINELY_NON_EXTREMAL
    else:
        strength = Strength.NO_ADMISSIBLE_EXTREMAL
    return ExtremalVerdict(pos, strength, _vertex_witness(h))


def extremal_profile(params: JoinParams, v: WeightVector) -> ExtremalProfile:
    """Admissible profile for the ray ``v``; raises ProductRayError on ``v = w``."""
    orb = quotient_orbifold(params, v)
    return ExtremalProfile.build(orb.p, orb.q, orb.r, orb.s_sigma)


def classify_ray(params: JoinParams, v: WeightVector) -> ExtremalVerdict:
    if is_product_ray(params, v):
        return ExtremalVerdict(None, Strength.PRODUCT_RAY)
    prof = extremal_profile(params, v)
    return _verdict(prof.h, regular=(v.v1, v.v2) == (1, 1))


def classify_slope(params: JoinParams, c) -> ExtremalVerdict:
    return classify_ray(params, WeightVector.from_slope(Fraction(c)))


# ---------------------------------------------------------------------------
# Regular ray


@dataclass(frozen=True)
class RegularRayReport:
    g: int
    k: int
    m: int
    bundle: Bundle
    l: int
    w: tuple[int, int]
    verdict: ExtremalVerdict
    r: Fraction | None = None
    s_sigma: Fraction | None = None
    h: PolyQ | None = None
    M: Fraction | None = None
    minimum_location: Fraction | None = None

    def to_json(self) -> dict:
        opt = lambda x: None if x is None else fraction_str(x)  # noqa: E731
        return {
            "g": self.g, "k": self.k, "m": self.m, "bundle": self.bundle.label,
            "l": self.l, "w": list(self.w),
            **self.verdict.to_json(),
            "r": opt(self.r), "s_sigma": opt(self.s_sigma),
            "h": self.h.to_json() if self.h is not None else None,
            "M": opt(self.M), "minimum_location": opt(self.minimum_location),
        }


def regular_ray_extremal(g: int, k: int, m: int, bundle: Bundle) -> RegularRayReport:
    """Extremality of the regular ray ``v = (1, 1)`` in the Sasaki cone of ``(k, m)``.

    ``M`` is the minimum of the parabola ``h`` rescaled to the integer
    polynomial in ``(g, k, m)``: ``min h = 2M / (k^3 (g + 2k - 1))`` for
    ``n = 2m`` and ``4M / ((2k + 1)^3 (g + 2k))`` for ``n = 2m + 1``.
    """
    if g < 1:
        raise ValueError("genus g >= 1 required: the genus 0 case is not treated")
    l, w = params_from_km(k, m, bundle)
    if bundle is Bundle.TRIVIAL and m == 0:
        # n = 0: product of constant curvature metrics
        return RegularRayReport(g, k, m, bundle, l, w, ExtremalVerdict(None, Strength.ADMISSIBLE_EXTREMAL))
    if bundle is Bundle.TRIVIAL:
        r = Fraction(m, k)
        s = Fraction(1 - g, m)
        scale = Fraction(k**3 * (g + 2 * k - 1), 2)
    else:
        r = Fraction(2 * m + 1, 2 * k + 1)
        s = Fraction(2 * (1 - g), 2 * m + 1)
        scale = Fraction((2 * k + 1) ** 3 * (g + 2 * k), 4)
    h = smooth_h(r, s)
    a0, a1, a2 = h.coeff(0), h.coeff(1), h.coeff(2)
    loc = -a1 / (2 * a2)
    M = (a0 - a1**2 / (4 * a2)) * scale
    return RegularRayReport(g, k, m, bundle, l, w, _verdict(h, regular=True), r, s, h, M, loc)


# ---------------------------------------------------------------------------
# Exhaustion


@dataclass(frozen=True)
class ExhaustionReport:
    exhausted: bool
    genus_threshold: int
    k: int
    m: int
    k_minus_m: int
    km_bound: Fraction

    def to_json(self) -> dict:
        return {"exhausted": self.exhausted, "genus_threshold": self.genus_threshold,
                "k": self.k, "m": self.m, "k_minus_m": self.k_minus_m,
                "km_bound": fraction_str(self.km_bound)}


def exhaustion_bound(params: JoinParams) -> ExhaustionReport:
    """Sufficient condition ``g <= 1 + 3 l w2`` for the whole cone to be extremal.

    Equivalently ``k >= m + (g - 1)/3``, since ``k - m = l w2`` in both parities.
    """
    from .topology import km_from_params

    inv = km_from_params(params)
    threshold = 1 + 3 * params.l * params.w2
    return ExhaustionReport(
        exhausted=params.g <= threshold,
        genus_threshold=threshold,
        k=inv.k,
        m=inv.m,
        k_minus_m=inv.k - inv.m,
        km_bound=inv.m + Fraction(params.g - 1, 3),
    )


# ---------------------------------------------------------------------------
# Extremal region in the slope variable c = v2/v1


def cleared_profile(params: JoinParams) -> tuple[PolyQ, PolyQ, PolyQ]:
    """Coefficients ``(P0, P1, P2)`` in ``c`` of ``l (c w1 + w2)^3 / (4 v1) * h(z)``.

    The prefactor is positive for ``c > 0``, so ``P0 + P1 z + P2 z^2`` has the
    sign of ``h``.
    """
    g, l, w1, w2 = params.g, params.l, params.w1, params.w2
    one_m = PolyQ([1, -1])
    one_p = PolyQ([1, 1])
    by_power = [
        l * w2**3 * one_m * one_m,
        w2**2 * one_m * PolyQ([7 * l * w1 + 1 - g, 1 - g - l * w1]),
        2 * w1 * w2 * PolyQ([g - 1 + 2 * l * (w1 + w2), l * (w2 - w1), 1 - g - l * (w1 + w2)]),
        w1**2 * one_p * PolyQ([1 - g + 7 * l * w2, g - 1 + l * w2]),
        l * w1**3 * one_p * one_p,
    ]
    return tuple(PolyQ([zpoly.coeff(j) for zpoly in by_power]) for j in range(3))


class RegionVerdict(enum.Enum):
    ADMISSIBLE_EXTREMAL = "AdmissibleExtremal"
    NO_ADMISSIBLE_EXTREMAL = "NoAdmissibleExtremal"
    BOUNDARY = "Boundary"
    PRODUCT_RAY = "ProductRay"


AlgNum = Fraction | IsolatingInterval


def _cmp(a: AlgNum, b: AlgNum) -> int:
    if isinstance(a, IsolatingInterval):
        return a.compare(b)
    if isinstance(b, IsolatingInterval):
        return -b.compare(a)
    return (a > b) - (a < b)


def _upper(x: AlgNum) -> Fraction:
    return x.hi if isinstance(x, IsolatingInterval) else x


def _lower(x: AlgNum) -> Fraction:
    return x.lo if isinstance(x, IsolatingInterval) else x


def _rational_between(a: AlgNum | None, b: AlgNum | None) -> Fraction:
    """A rational strictly between ``a < b``; ``None`` stands for 0 and +inf."""
    lo = Fraction(0) if a is None else _upper(a)
    if b is None:
        return Fraction(lo.__floor__() + 1)
    hi = _lower(b)
    while hi <= lo:
        if isinstance(a, IsolatingInterval):
            a = a.refine(a.width / 2)
            lo = _upper(a)
        if isinstance(b, IsolatingInterval):
            b = b.refine(b.width / 2)
            hi = _lower(b)
    return (lo + hi) / 2


def _surd(poly: PolyQ, root: IsolatingInterval) -> str | None:
    """Closed form of a quadratic irrationality, e.g. ``13 - 2√42``."""
    if poly.degree != 2:
        return None
    d, b, a = poly.integer_coeffs()
    disc = b * b - 4 * a * d
    if disc <= 0:
        return None
    s, t = 1, disc
    f = 2
    while f * f <= t:
        while t % (f * f) == 0:
            t //= f * f
            s *= f
        f += 1
    plus = root.compare(Fraction(-b, 2 * a)) > 0
    num, coef, den = -b, s, 2 * a
    if den < 0:
        num, coef, den = -num, coef, -den
        plus = not plus
    common = gcd(gcd(num, coef), den)
    num, coef, den = num // common, coef // common, den // common
    op = "+" if plus else "-"
    rad = f"√{t}" if coef == 1 else f"{coef}√{t}"
    body = f"{num} {op} {rad}" if num else (rad if plus else f"-{rad}")
    return body if den == 1 else f"({body})/{den}"


def format_number(x: AlgNum | None, digits: int = 12) -> str:
    if x is None:
        return "+∞"
    if isinstance(x, Fraction):
        return fraction_str(x)
    if x.is_exact:
        return fraction_str(x.lo)
    surd = _surd(x.poly, x)
    if surd:
        return surd
    return f"≈{float(x.refine(Fraction(1, 2**60))):.{digits}g}"


@dataclass(frozen=True)
class CriticalPoint:
    """A slope where one of the sign conditions on ``h`` changes."""

    value: AlgNum
    conditions: tuple[str, ...]
    defining_poly: PolyQ

    def to_json(self) -> dict:
        val = fraction_str(self.value) if isinstance(self.value, Fraction) else self.value.to_json()
        return {"value": val, "conditions": list(self.conditions),
                "defining_poly": self.defining_poly.to_json(), "display": format_number(self.value)}


@dataclass(frozen=True)
class Segment:
    lo: AlgNum
    hi: AlgNum | None
    lo_closed: bool
    hi_closed: bool
    verdict: RegionVerdict

    @property
    def boundary_polys(self) -> list[PolyQ]:
        """Defining polynomials of the irrational endpoints."""
        out = []
        for x in (self.lo, self.hi):
            if isinstance(x, IsolatingInterval) and x.poly not in out:
                out.append(x.poly)
        return out

    @property
    def is_point(self) -> bool:
        return self.hi is not None and self.lo_closed and self.hi_closed and _cmp(self.lo, self.hi) == 0

    def contains(self, c: Fraction) -> bool:
        lo = _cmp(c, self.lo)
        if lo < 0 or (lo == 0 and not self.lo_closed):
            return False
        if self.hi is None:
            return True
        hi = _cmp(c, self.hi)
        return hi < 0 or (hi == 0 and self.hi_closed)

    def notation(self) -> str:
        if self.is_point:
            return "{" + format_number(self.lo) + "}"
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        return f"{left}{format_number(self.lo)}, {format_number(self.hi)}{right}"

    def to_json(self) -> dict:
        def enc(x):
            if x is None:
                return "inf"
            return fraction_str(x) if isinstance(x, Fraction) else x.to_json()

        out = {"lo": enc(self.lo), "hi": enc(self.hi), "lo_closed": self.lo_closed,
               "hi_closed": self.hi_closed, "verdict": self.verdict.value,
               "notation": self.notation()}
        if self.boundary_polys:
            out["boundary_poly"] = [p.to_json() for p in self.boundary_polys]
        return out


@dataclass(frozen=True)
class ExtremalRegion:
    params: JoinParams
    segments: tuple[Segment, ...]
    critical_points: tuple[CriticalPoint, ...]
    cleared: tuple[PolyQ, PolyQ, PolyQ]

    def extremal_intervals(self) -> list[Segment]:
        return [s for s in self.segments if s.verdict is RegionVerdict.ADMISSIBLE_EXTREMAL]

    def failure_intervals(self) -> list[Segment]:
        return [s for s in self.segments if s.verdict is RegionVerdict.NO_ADMISSIBLE_EXTREMAL]

    def boundary_points(self) -> list[Segment]:
        return [s for s in self.segments if s.verdict is RegionVerdict.BOUNDARY]

    def verdict_at(self, c) -> RegionVerdict:
        c = Fraction(c)
        if c <= 0:
            raise ValueError("ray slope must be positive")
        for seg in self.segments:
            if seg.contains(c):
                return seg.verdict
        raise AssertionError(f"slope {c} not covered by the region decomposition")

    def to_json(self) -> dict:
        return {
            "params": self.params.to_json(),
            "segments": [s.to_json() for s in self.segments],
            "critical_points": [cp.to_json() for cp in self.critical_points],
        }


_CONDITION_ORDER = ("discriminant", "concavity", "vertex_left", "vertex_right")


def _sign_conditions(P0: PolyQ, P1: PolyQ, P2: PolyQ) -> dict[str, PolyQ]:
    return {
        "discriminant": P1 * P1 - 4 * P0 * P2,
        "concavity": P2,
        "vertex_left": 2 * P2 - P1,   # positive iff the vertex is right of -1
        "vertex_right": 2 * P2 + P1,  # positive iff the vertex is left of +1
    }


def _verdict_from_signs(signs: dict[str, int]) -> RegionVerdict:
    fails = signs["concavity"] > 0 and signs["vertex_left"] > 0 and signs["vertex_right"] > 0
    if not fails or signs["discriminant"] < 0:
        return RegionVerdict.ADMISSIBLE_EXTREMAL
    if signs["discriminant"] == 0:
        return RegionVerdict.BOUNDARY
    return RegionVerdict.NO_ADMISSIBLE_EXTREMAL


def _pointwise_region_verdict(params: JoinParams, c: Fraction) -> RegionVerdict:
    v = WeightVector.from_slope(c)
    if is_product_ray(params, v):
        return RegionVerdict.PRODUCT_RAY
    pos = positive_on_open_interval(extremal_profile(params, v).h, -1, 1)
    return {
        Positivity.STRICTLY_POSITIVE: RegionVerdict.ADMISSIBLE_EXTREMAL,
        Positivity.VANISHES_INSIDE: RegionVerdict.BOUNDARY,
        Positivity.NEGATIVE_SOMEWHERE: RegionVerdict.NO_ADMISSIBLE_EXTREMAL,
    }[pos]


def extremal_region(params: JoinParams, width: Fraction | None = None) -> ExtremalRegion:
    """Decompose the slopes ``c in (0, inf)`` by admissible extremality.

    ``h`` is positive at ``z = ±1`` for every ``c``, so it fails on ``(-1, 1)``
    exactly when it is convex, its vertex is inside and its discriminant is
    nonnegative.  The slopes where any of these four polynomials in ``c``
    vanishes split ``(0, inf)`` into cells of constant verdict; cells are
    decided at a rational sample through the pointwise profile.
    """
    P0, P1, P2 = cleared_profile(params)
    conds = {k: q for k, q in _sign_conditions(P0, P1, P2).items() if not q.is_zero()}
    product = PolyQ([1])
    for q in conds.values():
        product = product * q
    sf = squarefree_part(product)

    points: list[AlgNum] = [r for r in rational_roots(sf) if r > 0]
    irr = strip_rational_roots(sf)
    if irr.degree >= 1:
        points += isolate_real_roots(irr, 0, INF, width)
    points.sort(key=functools.cmp_to_key(_cmp))

    critical: list[CriticalPoint] = []
    point_verdicts: list[RegionVerdict] = []
    for x in points:
        if isinstance(x, Fraction):
            signs = {k: q.sign_at(x) for k, q in conds.items()}
            defining = PolyQ([-x, 1])
        else:
            signs = {k: x.sign_of(q) for k, q in conds.items()}
            vanishing = next(k for k in _CONDITION_ORDER if signs.get(k) == 0)
            defining = strip_rational_roots(conds[vanishing])
            x = x.with_poly(defining)
        names = tuple(k for k in _CONDITION_ORDER if signs.get(k) == 0)
        critical.append(CriticalPoint(x, names, defining))
        if isinstance(x, Fraction):
            point_verdicts.append(_pointwise_region_verdict(params, x))
        else:
            signs = {k: signs.get(k, 1) for k in _CONDITION_ORDER}
            point_verdicts.append(_verdict_from_signs(signs))

    # alternate cells and points: cell_0, pt_1, cell_1, ..., pt_n, cell_n
    values = [cp.value for cp in critical]
    bounds: list[AlgNum | None] = [None, *values, None]
    pieces: list[tuple[AlgNum, AlgNum | None, bool, bool, RegionVerdict]] = []
    for i in range(len(values) + 1):
        lo, hi = bounds[i], bounds[i + 1]
        sample = _rational_between(lo, hi)
        verdict = _pointwise_region_verdict(params, sample)
        pieces.append((Fraction(0) if lo is None else lo, hi, False, False, verdict))
        if i < len(values):
            pieces.append((values[i], values[i], True, True, point_verdicts[i]))

    segments: list[Segment] = []
    for lo, hi, lc, hc, verdict in pieces:
        if segments and segments[-1].verdict is verdict:
            prev = segments[-1]
            segments[-1] = Segment(prev.lo, hi, prev.lo_closed, hc, verdict)
        else:
            segments.append(Segment(lo, hi, lc, hc, verdict))
    return ExtremalRegion(params, tuple(segments), tuple(critical), (P0, P1, P2))

