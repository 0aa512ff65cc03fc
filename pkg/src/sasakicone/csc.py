"""The constant scalar curvature ray of a join's Sasaki cone."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .exact import (
    INF,
    IsolatingInterval,
    PolyQ,
    fraction_str,
    isolate_real_roots,
    rational_roots,
    sturm_sign_changes,
)
from .topology import JoinParams, WeightVector


class Regularity(enum.Enum):
    REGULAR = "Regular"
    QUASI_REGULAR = "QuasiRegular"
    IRREGULAR = "Irregular"


class CscUniquenessError(RuntimeError):
    """The CSC cubic does not have exactly one positive root."""


@dataclass(frozen=True)
class CscRay:
    params: JoinParams
    cubic: PolyQ
    root: Fraction | IsolatingInterval
    regularity: Regularity
    v: WeightVector | None

    @property
    def is_rational(self) -> bool:
        return isinstance(self.root, Fraction)

    def to_json(self) -> dict:
        root = fraction_str(self.root) if self.is_rational else self.root.to_json()
        return {
            "cubic": self.cubic.to_json(),
            "root": root,
            "regularity": self.regularity.value,
            "v": self.v.to_json() if self.v else None,
        }


def csc_cubic(params: JoinParams) -> PolyQ:
    """Cubic in ``c = v2/v1`` whose positive root is the CSC slope."""
    g, l, w1, w2 = params.g, params.l, params.w1, params.w2
    return PolyQ([
        -l * w2**2,
        -(g - 1 + 2 * l * w1) * w2,
        (g - 1 + 2 * l * w2) * w1,
        l * w1**2,
    ])


def csc_ray(params: JoinParams, width: Fraction | None = None, check_curvature: bool = True) -> CscRay:
    """Locate the unique CSC ray and classify its regularity.

    Rationality is settled by the rational root test; an irrational root is
    isolated inside ``(w2/w1, 1)``.
    """
    cubic = csc_cubic(params)
    positive = sturm_sign_changes(cubic, 0, INF)
    if positive != 1:
        raise CscUniquenessError(
            f"CSC cubic {cubic.pretty()} has {positive} positive roots, expected exactly one"
        )
    rational = [x for x in rational_roots(cubic) if x > 0]
    if rational:
        root = rational[0]
        v = WeightVector.from_slope(root)
        regularity = Regularity.REGULAR if root == 1 else Regularity.QUASI_REGULAR
        if check_curvature and (v.v1, v.v2) != params.w:
            from .curvature import scalar_coefficients

            _, B = scalar_coefficients(params, v)
            if B.pi or B.const:
                raise CscUniquenessError(f"CSC slope {root} has nonconstant scalar curvature B = {B}")
        return CscRay(params, cubic, root, regularity, v)
    if params.w1 > params.w2:
        lo, hi = Fraction(params.w2, params.w1), Fraction(1)
    else:
        lo, hi = Fraction(0), Fraction(2)
    found = isolate_real_roots(cubic, lo, hi, width)
    if len(found) != 1:
        raise CscUniquenessError(f"expected one CSC root in ({lo}, {hi}), found {len(found)}")
    return CscRay(params, cubic, found[0], Regularity.IRREGULAR, None)
