"""Join parameters, contact invariants, bouquet tables and quotient orbifolds.

A join is fixed by the genus ``g`` and the integers ``(l, w1, w2)``.  The
regular quotient is a pseudo-Hirzebruch surface ``S_n`` carrying the Kähler
class ``h + k[omega_g]``; ``(k, m)`` with ``n = 2m`` or ``2m + 1`` is the
equivalent description used throughout the extremal analysis.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .exact import fraction_str


class Bundle(enum.Enum):
    TRIVIAL = "trivial"
    NONTRIVIAL = "nontrivial"

    @classmethod
    def parse(cls, text: str) -> Bundle:
        key = text.strip().lower().replace("-", "").replace("_", "")
        aliases = {"trivial": cls.TRIVIAL, "even": cls.TRIVIAL,
                   "nontrivial": cls.NONTRIVIAL, "odd": cls.NONTRIVIAL}
        if key not in aliases:
            raise ValueError(f"unknown bundle type {text!r}: expected 'trivial' or 'nontrivial'")
        return aliases[key]

    @property
    def label(self) -> str:
        return "Trivial" if self is Bundle.TRIVIAL else "NonTrivial"


class ProductRayError(ValueError):
    """The ray ``v = w``: extremal (a product metric) but outside the admissible set-up."""


@dataclass(frozen=True)
class JoinParams:
    """The join of a genus-``g`` circle bundle with the weighted sphere ``S^3_w``.

    Weights given as ``w1 < w2`` are swapped into ``w1 >= w2``; ``swapped``
    records it.
    """

    g: int
    l: int
    w1: int
    w2: int
    l2: int = 1
    swapped: bool = field(default=False, compare=False)

    def __post_init__(self):
        for name in ("g", "l", "w1", "w2", "l2"):
            if not isinstance(getattr(self, name), int):
                raise TypeError(f"{name} must be an integer")
        if self.g < 1:
            raise ValueError("genus g >= 1 required: the genus 0 case is not treated")
        if self.l < 1:
            raise ValueError("l must be a positive integer")
        if self.l2 != 1:
            raise ValueError("only (l, 1)-joins are supported: l2 must equal 1")
        if self.w1 < 1 or self.w2 < 1:
            raise ValueError("weights w1, w2 must be positive integers")
        if gcd(self.w1, self.w2) != 1:
            raise ValueError(f"gcd(w1, w2) = 1 required, got w = ({self.w1},{self.w2})")
        if self.w1 < self.w2:
            w1, w2 = self.w2, self.w1
            object.__setattr__(self, "w1", w1)
            object.__setattr__(self, "w2", w2)
            object.__setattr__(self, "swapped", True)

    @property
    def w(self) -> tuple[int, int]:
        return (self.w1, self.w2)

    @property
    def l_w(self) -> int:
        """``l|w| = l(w1 + w2)``."""
        return self.l * (self.w1 + self.w2)

    def to_json(self) -> dict:
        return {"g": self.g, "l": self.l, "w": [self.w1, self.w2]}


@dataclass(frozen=True)
class WeightVector:
    """Reeb weights ``(v1, v2)``; the ray slope is ``c = v2 / v1``."""

    v1: int
    v2: int

    def __post_init__(self):
        if self.v1 < 1 or self.v2 < 1:
            raise ValueError("Reeb weights v1, v2 must be positive integers")
        if gcd(self.v1, self.v2) != 1:
            raise ValueError(f"gcd(v1, v2) = 1 required, got v = ({self.v1},{self.v2})")

    @classmethod
    def from_slope(cls, c: Fraction | int) -> WeightVector:
        c = Fraction(c)
        if c <= 0:
            raise ValueError("ray slope c = v2/v1 must be positive")
        return cls(c.denominator, c.numerator)

    @property
    def slope(self) -> Fraction:
        return Fraction(self.v2, self.v1)

    def to_json(self) -> list[int]:
        return [self.v1, self.v2]


@dataclass(frozen=True)
class ContactInvariants:
    c1_coefficient: int
    bundle: Bundle
    k: int
    m: int
    n: int

    def to_json(self) -> dict:
        return {"c1": self.c1_coefficient, "bundle": self.bundle.label,
                "k": self.k, "m": self.m, "n": self.n}


@dataclass(frozen=True)
class QuotientOrbifold:
    """The log pair ``(S_n, Delta_v)`` of a quasi-regular ray and its admissible data.

    ``ramification`` is ``(v1, v2)``: index ``v1`` along the zero section and
    ``v2`` along the infinity section.  ``p = v2``, ``q = v1``.
    """

    n: int
    ramification: tuple[int, int]
    k: int
    r: Fraction
    p: int
    q: int
    s_sigma: Fraction

    def to_json(self) -> dict:
        return {"n": self.n, "ramification": list(self.ramification), "k": self.k,
                "r": fraction_str(self.r), "p": self.p, "q": self.q,
                "s_sigma": fraction_str(self.s_sigma)}


def _k_from_lw(lw: int) -> int:
    return lw // 2 if lw % 2 == 0 else (lw - 1) // 2


def params_from_km(k: int, m: int, bundle: Bundle) -> tuple[int, tuple[int, int]]:
    """The unique ``(l, w)`` realising the Kähler class ``h + k[omega_g]`` on ``S_n``."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    if m < 0:
        raise ValueError("m must be nonnegative")
    if m >= k:
        raise ValueError(f"m < k required: not a Kähler class (k={k}, m={m})")
    top = k + m if bundle is Bundle.TRIVIAL else k + m + 1
    bottom = k - m
    l = gcd(top, bottom)
    return l, (top // l, bottom // l)


def km_from_params(params: JoinParams) -> ContactInvariants:
    lw = params.l_w
    n = params.l * (params.w1 - params.w2)
    return ContactInvariants(
        c1_coefficient=2 - 2 * params.g - lw,
        bundle=Bundle.TRIVIAL if lw % 2 == 0 else Bundle.NONTRIVIAL,
        k=_k_from_lw(lw),
        m=n // 2,
        n=n,
    )


def contact_invariants(params: JoinParams) -> ContactInvariants:
    """First Chern class of the contact bundle, diffeotype and ``(k, m, n)``."""
    return km_from_params(params)


@dataclass(frozen=True)
class BouquetRow:
    m: int
    l: int
    w: tuple[int, int]
    c1_coefficient: int


NONTRIVIAL_BOUQUET_NOTE = (
    "non-conjugacy of the maximal tori is only established on the trivial bundle; "
    "on the non-trivial bundle these rows are the Sasaki cones sharing D_k, "
    "not a proven bouquet"
)


def bouquet_table(g: int, k: int, bundle: Bundle) -> list[BouquetRow]:
    """Rows ``m = 0..k-1`` of the Sasaki cones attached to the contact structure ``D_k``."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    rows = []
    for m in range(k):
        l, w = params_from_km(k, m, bundle)
        inv = km_from_params(JoinParams(g, l, *w))
        rows.append(BouquetRow(m=m, l=l, w=w, c1_coefficient=inv.c1_coefficient))
    return rows


def format_bouquet_table(rows: list[BouquetRow]) -> str:
    """Aligned text table, ``m`` ascending."""
    header = ("m", "l", "w")
    body = [(str(r.m), str(r.l), f"({r.w[0]},{r.w[1]})") for r in rows]
    widths = [max(len(x) for x in col) for col in zip(header, *body)]
    lines = ["  ".join(x.ljust(wd) for x, wd in zip(line, widths)).rstrip()
             for line in [header, *body]]
    return "\n".join(lines)


def is_product_ray(params: JoinParams, v: WeightVector) -> bool:
    # both pairs are coprime, so proportional means equal
    return (v.v1, v.v2) == (params.w1, params.w2)


def quotient_orbifold(params: JoinParams, v: WeightVector) -> QuotientOrbifold:
    """Orbifold data of the quotient by the Reeb field ``v1 H1 + v2 H2``.

    ``n`` may be negative (slopes below ``w2/w1``); then ``r < 0`` and
    ``s_sigma`` flips sign with it.
    """
    if is_product_ray(params, v):
        raise ProductRayError(
            f"v = w = ({v.v1},{v.v2}) is the product ray: extremal, but the admissible profile is undefined"
        )
    a = params.w1 * v.v2
    b = params.w2 * v.v1
    n = params.l * (a - b)
    return QuotientOrbifold(
        n=n,
        ramification=(v.v1, v.v2),
        k=_k_from_lw(params.l * (a + b)),
        r=Fraction(a - b, a + b),
        p=v.v2,
        q=v.v1,
        s_sigma=Fraction(2 * (1 - params.g), n),
    )
