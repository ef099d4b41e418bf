"""Coupled angle parameters of the folding construction.

Every geometric quantity in this package is driven by a single unfolding
angle alpha (degrees).  Its half-complement beta = 90 - alpha/2 is the
rotation magnitude of the two generating maps, and q = 1/(2 cos beta) is
the edge contraction per refinement level.  Public interfaces use degrees
throughout; trigonometry converts internally.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class AngleParams:
    """The coupled triple (alpha, beta, q).

    Invariants: beta_deg = 90 - alpha_deg/2 and q = 1/(2 cos beta).
    For 90 <= alpha <= 108 the contraction lies in
    [(sqrt(5)-1)/2, sqrt(2)/2].
    """

    alpha_deg: float
    beta_deg: float
    q: float

    @property
    def beta_rad(self) -> float:
        return math.radians(self.beta_deg)

    @property
    def alpha_over_beta(self) -> float:
        return self.alpha_deg / self.beta_deg


def params_from_alpha(alpha_deg: float) -> AngleParams:
    """Parameters for a given unfolding angle in (0, 180) degrees."""
    if not 0.0 < alpha_deg < 180.0:
        raise ValueError(f"alpha must lie in (0, 180) degrees, got {alpha_deg!r}")
    beta_deg = 90.0 - alpha_deg / 2.0
    q = 1.0 / (2.0 * math.cos(math.radians(beta_deg)))
    return AngleParams(alpha_deg, beta_deg, q)


def params_from_q(q: float) -> AngleParams:
    """Inverse of params_from_alpha for contractions in (0.5, 1)."""
    if not 0.5 < q < 1.0:
        raise ValueError(f"q must lie in (0.5, 1), got {q!r}")
    beta_deg = math.degrees(math.acos(1.0 / (2.0 * q)))
    return AngleParams(180.0 - 2.0 * beta_deg, beta_deg, q)
