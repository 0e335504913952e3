"""Edge-weight functions mapping two cell heights and a horizontal distance to a cost."""

from __future__ import annotations

import enum
import math


class WeightSpec(enum.Enum):
    """Selects how an edge between two adjacent cells is priced.

    A closed enumeration (not a plugin point) so that benchmark configs and
    CSV output serialize exactly.
    """

    UNIT = "unit"
    PYTHAGORAS = "pythagoras"
    SLOPE_PENALTY = "penalty"

    @classmethod
    def from_token(cls, token: str) -> "WeightSpec":
        for member in cls:
            if member.value == token:
                return member
        valid = ", ".join(m.value for m in cls)
        raise ValueError(f"unknown weight spec {token!r} (expected one of: {valid})")

    @property
    def token(self) -> str:
        return self.value


def _check_distance(d: float) -> None:
    if not d > 0:
        raise ValueError(f"horizontal distance must be positive, got {d}")


def weight_unit(h1: float, h2: float, d: float) -> float:
    """Flat-terrain baseline cost: every edge counts 1 regardless of heights."""
    _check_distance(d)
    return 1.0


def weight_pythagoras(h1: float, h2: float, d: float) -> float:
    """Straight-line distance between the cell centres, sqrt(d^2 + (h1-h2)^2)."""
    _check_distance(d)
    return math.hypot(d, h1 - h2)


def weight_penalty(h1: float, h2: float, d: float) -> float:
    """Straight-line distance amplified by (1 + |h1-h2|/d) to punish steep edges."""
    _check_distance(d)
    return math.hypot(d, h1 - h2) * (1.0 + abs(h1 - h2) / d)


def edge_weight(spec: WeightSpec, h1: float, h2: float, d: float) -> float:
    """Dispatch to the weight function selected by spec; symmetric in (h1, h2)."""
    if spec is WeightSpec.UNIT:
        return weight_unit(h1, h2, d)
    if spec is WeightSpec.PYTHAGORAS:
        return weight_pythagoras(h1, h2, d)
    if spec is WeightSpec.SLOPE_PENALTY:
        return weight_penalty(h1, h2, d)
    raise TypeError(f"not a WeightSpec: {spec!r}")
