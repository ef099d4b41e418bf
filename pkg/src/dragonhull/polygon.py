"""Plane similarities and the folded polygon family.

A level-n polygon has 2**n + 1 vertices stored as a read-only float64
array of shape (2**n + 1, 2).  Every level starts at (0, 0) and ends at
(1, 0); edges have length q**n and meet at the unfolding angle alpha.
Rotations are counterclockwise-positive, so the first refinement places
the new vertex below the x-axis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .params import AngleParams
from .sequence import L, R, sigma

MAX_LEVEL = 24  # 2**24 segments; resource guard


@dataclass(frozen=True)
class Similarity:
    """Rotation (degrees) and uniform scaling about the origin, followed
    by a translation.  Compositions accumulate the rotation angle exactly
    instead of multiplying matrices, so repeated composition does not
    drift the conformal structure."""

    rotation_deg: float
    scale: float
    translation: tuple[float, float] = (0.0, 0.0)

    def __post_init__(self):
        if self.scale <= 0.0:
            raise ValueError(f"scale must be positive, got {self.scale!r}")

    def matrix(self) -> np.ndarray:
        a = math.radians(self.rotation_deg)
        c, s = math.cos(a), math.sin(a)
        return self.scale * np.array([[c, -s], [s, c]])

    def apply(self, points) -> np.ndarray:
        pts = np.asarray(points, dtype=float)
        return pts @ self.matrix().T + np.asarray(self.translation, dtype=float)

    def compose(self, inner: "Similarity") -> "Similarity":
        """self after inner (apply `inner` first)."""
        tx, ty = self.apply(inner.translation)
        return Similarity(
            self.rotation_deg + inner.rotation_deg,
            self.scale * inner.scale,
            (float(tx), float(ty)),
        )


def make_pi0(params: AngleParams) -> Similarity:
    """The map fixing the start point: rotate by -beta, scale by q."""
    return Similarity(-params.beta_deg, params.q)


def make_pi1(params: AngleParams) -> Similarity:
    """The map sending the start point to (1, 0): rotate by beta - 180,
    scale by q, translate by (1, 0)."""
    return Similarity(params.beta_deg - 180.0, params.q, (1.0, 0.0))


@dataclass(frozen=True)
class FoldPolygon:
    level: int
    params: AngleParams
    vertices: np.ndarray

    def __post_init__(self):
        self.vertices.setflags(write=False)

    @property
    def num_segments(self) -> int:
        return 1 << self.level

    def segment(self, k: int) -> tuple[np.ndarray, np.ndarray]:
        if not 0 <= k < self.num_segments:
            raise IndexError(f"segment index {k} out of range at level {self.level}")
        return self.vertices[k], self.vertices[k + 1]


def _check_level(n: int) -> None:
    if not 0 <= n <= MAX_LEVEL:
        raise ValueError(f"level must lie in [0, {MAX_LEVEL}], got {n!r}")


def generate_recursive(n: int, params: AngleParams) -> FoldPolygon:
    """Build the level-n polygon by unioning the two mapped copies of the
    previous level.

    The second copy reverses traversal: vertex k of the previous level
    lands at index 2**(level+1) - k.
    """
    _check_level(n)
    pts = np.array([[0.0, 0.0], [1.0, 0.0]])
    pi0, pi1 = make_pi0(params), make_pi1(params)
    for _ in range(n):
        first = pi0.apply(pts)
        second = pi1.apply(pts)[::-1]
        pts = np.vstack([first, second[1:]])
    return FoldPolygon(n, params, pts)


def generate_inflation(n: int, params: AngleParams) -> FoldPolygon:
    """Build the level-n polygon by repeated edge replacement.

    Each edge is replaced by the two equal sides of an isosceles triangle
    with apex angle alpha.  With edges oriented from even to odd vertex
    index, the apex always sits on the right of the directed edge, which
    means: right of the forward direction on even edges, left on odd ones.
    """
    _check_level(n)
    pts = np.array([[0.0, 0.0], [1.0, 0.0]])
    half_tan = 0.5 * math.tan(params.beta_rad)
    for _ in range(n):
        a, b = pts[:-1], pts[1:]
        d = b - a
        normal = np.column_stack([d[:, 1], -d[:, 0]])
        normal[1::2] *= -1.0
        apex = 0.5 * (a + b) + half_tan * normal
        merged = np.empty((2 * len(pts) - 1, 2))
        merged[0::2] = pts
        merged[1::2] = apex
        pts = merged
    return FoldPolygon(n, params, pts)


def edge_lengths(poly: FoldPolygon) -> np.ndarray:
    return np.hypot(*(np.diff(poly.vertices, axis=0).T))


def turn_crosses(poly: FoldPolygon) -> np.ndarray:
    """Cross product of consecutive edge vectors at each interior vertex;
    positive means a left turn of the traversal."""
    d = np.diff(poly.vertices, axis=0)
    return d[:-1, 0] * d[1:, 1] - d[:-1, 1] * d[1:, 0]


def interior_angles_deg(poly: FoldPolygon) -> np.ndarray:
    """Unsigned angle between the two edges meeting at each interior
    vertex (the angle of the polygon wedge, not the turn)."""
    d = np.diff(poly.vertices, axis=0)
    u, v = -d[:-1], d[1:]
    dot = np.einsum("ij,ij->i", u, v)
    cross = u[:, 0] * v[:, 1] - u[:, 1] * v[:, 0]
    return np.degrees(np.arctan2(np.abs(cross), dot))


def turn_symbols(poly: FoldPolygon) -> list[str]:
    """Turn direction at interior vertices 1 .. 2**n - 1 as L/R symbols."""
    return [L if c > 0.0 else R for c in turn_crosses(poly)]


def _collinear_chain(n: int, k: int, depth: int, params: AngleParams,
                     step: int) -> np.ndarray:
    """Points that continue a fold edge along a straight line.

    Starting from the neighbour vertex and the turn vertex at (n, k), each
    iteration descends four levels where the index map is
    k -> 16k + step (step +1 after a left turn, -1 before a right turn).
    """
    top = n + 4 * depth
    _check_level(top)
    poly = generate_recursive(top, params)
    # vertex (m, j) appears at index j * 2**(top - m) of the level-`top` polygon
    neighbour = k - step
    chain = [poly.vertices[neighbour << (top - n)], poly.vertices[k << (top - n)]]
    m, j = n, k
    for _ in range(depth):
        m, j = m + 4, 16 * j + step
        chain.append(poly.vertices[j << (top - m)])
    return np.array(chain)


def collinear_chain_left(n: int, k: int, depth: int, params: AngleParams) -> np.ndarray:
    """Chain of points on the straight line through a left turn at odd k."""
    if k % 2 == 0 or sigma(k) != L:
        raise ValueError(f"vertex (n={n}, k={k}) is not a left turn at odd index")
    return _collinear_chain(n, k, depth, params, step=+1)


def collinear_chain_right(n: int, k: int, depth: int, params: AngleParams) -> np.ndarray:
    """Chain of points on the straight line through a right turn at odd k."""
    if k % 2 == 0 or sigma(k) != R:
        raise ValueError(f"vertex (n={n}, k={k}) is not a right turn at odd index")
    return _collinear_chain(n, k, depth, params, step=-1)


def _chain_is_collinear(chain: np.ndarray, tol: float) -> bool:
    base = chain[1] - chain[0]
    for point in chain[2:]:
        v = point - chain[1]
        cross = base[0] * v[1] - base[1] * v[0]
        scale = np.hypot(*base) * np.hypot(*v)
        if abs(cross) > tol * scale:
            return False
    return True


def check_collinearity_left(n: int, k: int, depth: int, params: AngleParams,
                            tol: float = 1e-9) -> bool:
    """True when the left-turn chain stays on one line (relative cross
    products below tol)."""
    return _chain_is_collinear(collinear_chain_left(n, k, depth, params), tol)


def check_collinearity_right(n: int, k: int, depth: int, params: AngleParams,
                             tol: float = 1e-9) -> bool:
    """Mirror of check_collinearity_left for right turns."""
    return _chain_is_collinear(collinear_chain_right(n, k, depth, params), tol)
