"""Minimal self-contained SVG 1.1 emission for polygons and hulls.

The math coordinates extend below the x-axis, so the drawing group flips
the y-axis; the flip is a plain transform attribute on the group, which
keeps the emitted coordinates identical to the math ones.
"""

from __future__ import annotations

import numpy as np

_HEADER = (
    '<?xml version="1.0" encoding="UTF-8"?>\n'
    '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
    'viewBox="{vx:.6g} {vy:.6g} {vw:.6g} {vh:.6g}" '
    'width="{w:.6g}" height="{h:.6g}">\n'
)


def _fmt_points(points: np.ndarray) -> str:
    return " ".join(f"{x:.10g},{y:.10g}" for x, y in points)


def _fmt_path(points: np.ndarray, close: bool) -> str:
    body = " L ".join(f"{x:.10g} {y:.10g}" for x, y in points)
    return f"M {body}" + (" Z" if close else "")


class SvgCanvas:
    """Collects drawing elements in math coordinates and writes one SVG."""

    def __init__(self):
        self.elements: list[str] = []
        self._min = np.array([np.inf, np.inf])
        self._max = np.array([-np.inf, -np.inf])

    def _grow(self, points: np.ndarray) -> None:
        pts = np.atleast_2d(points)
        self._min = np.minimum(self._min, pts.min(axis=0))
        self._max = np.maximum(self._max, pts.max(axis=0))

    def polyline(self, points, stroke="#1f3b70", width=1.0) -> None:
        pts = np.asarray(points, dtype=float)
        self._grow(pts)
        self.elements.append(
            f'<polyline fill="none" stroke="{stroke}" stroke-width="{width:.6g}" '
            f'points="{_fmt_points(pts)}"/>'
        )

    def path(self, points, stroke="#b04a2f", width=1.0, close=True, css_class=None) -> None:
        pts = np.asarray(points, dtype=float)
        self._grow(pts)
        cls = f' class="{css_class}"' if css_class else ""
        self.elements.append(
            f'<path fill="none" stroke="{stroke}" stroke-width="{width:.6g}"{cls} '
            f'd="{_fmt_path(pts, close)}"/>'
        )

    def marker(self, center, radius, stroke="#c02020") -> None:
        cx, cy = float(center[0]), float(center[1])
        self._grow(np.array([[cx - radius, cy - radius], [cx + radius, cy + radius]]))
        self.elements.append(
            f'<circle cx="{cx:.10g}" cy="{cy:.10g}" r="{radius:.6g}" '
            f'fill="none" stroke="{stroke}" stroke-width="{radius / 3:.6g}" '
            f'class="contact"/>'
        )

    def write(self, path: str, pixel_width: float = 800.0) -> None:
        span = np.maximum(self._max - self._min, 1e-9)
        pad = 0.05 * float(span.max())
        w = float(span[0]) + 2 * pad
        h = float(span[1]) + 2 * pad
        scale = pixel_width / w
        # flip y: view box lives in flipped coordinates, elements in math ones
        vx = float(self._min[0]) - pad
        vy = -(float(self._max[1]) + pad)
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(_HEADER.format(vx=vx, vy=vy, vw=w, vh=h,
                                    w=pixel_width, h=h * scale))
            fh.write('<g transform="scale(1,-1)">\n')
            for element in self.elements:
                fh.write(element + "\n")
            fh.write("</g>\n</svg>\n")
