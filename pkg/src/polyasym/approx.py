"""Result records shared by the expansion modules and the CLI."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .numeric_core import format_value, is_exact


class Confidence(enum.Enum):
    ASYMPTOTIC = "asymptotic"
    CONVERGENT = "convergent"
    EXACT = "exact"


class Method(enum.Enum):
    ORACLE = "oracle"
    FINITE_SUM = "finite-sum"
    LEADING = "leading"
    FOURIER = "fourier"
    WATSON = "watson"
    TWOPOINT = "twopoint"
    TWOPOINT_TILDE = "twopoint-tilde"
    SADDLE = "saddle"


class RegionCase(enum.Enum):
    """Which finite-sum term dominates for mu = -m: r = m, both ends, or r = 0."""

    UPPER_DOMINANT = "upper"
    BOUNDARY = "boundary"
    LOWER_DOMINANT = "lower"


@dataclass(frozen=True)
class ApproxValue:
    value: object
    method: Method
    terms_used: int = 0
    error_estimate: object = 0
    confidence: Confidence = Confidence.ASYMPTOTIC
    notes: tuple = field(default=())

    def __post_init__(self):
        if self.error_estimate < 0:
            raise ValueError("error_estimate must be >= 0")
        if self.confidence is Confidence.EXACT and self.error_estimate != 0:
            raise ValueError("exact results carry a zero error estimate")

    @property
    def is_exact(self) -> bool:
        return is_exact(self.value)

    def describe(self) -> dict:
        return {
            "value": format_value(self.value),
            "method": self.method.value,
            "terms_used": self.terms_used,
            "error_estimate": format_value(self.error_estimate) if not isinstance(self.error_estimate, int) else str(self.error_estimate),
            "confidence": self.confidence.value,
        }
