"""Minimal SVG rendering of polygon configurations.

Layer conventions: the outer body L is drawn solid; K and -2K (and any
other auxiliary outline) are dotted.
"""

from __future__ import annotations

import numpy as np

from .geometry import ConvexPolygon, apply_affine, scale_negate

_SOLID = 'fill="none" stroke="{color}" stroke-width="{w}"'
_DOTTED = ('fill="none" stroke="{color}" stroke-width="{w}" '
           'stroke-dasharray="{d},{d}"')

_PALETTE = {"L": "#1a1a1a", "L_prime": "#0050b0", "K": "#b00020",
            "neg2K": "#207030"}


def _style_for(name: str) -> tuple[str, bool]:
    color = _PALETTE.get(name, "#666666")
    dotted = name not in ("L", "L_prime")
    return color, dotted


def _bounds(polys):
    pts = np.vstack([p.vertices for p in polys])
    lo = pts.min(axis=0)
    hi = pts.max(axis=0)
    pad = 0.06 * float(max(hi - lo))
    return lo - pad, hi + pad


def render_bodies(bodies: dict, path, size: int = 520) -> None:
    """Write an SVG with one outline per named polygon."""
    polys = {k: v for k, v in bodies.items() if isinstance(v, ConvexPolygon)}
    if not polys:
        raise ValueError("nothing to render")
    lo, hi = _bounds(list(polys.values()))
    span = float(max(hi - lo))
    scale = size / span

    def tx(p):
        return ((p[0] - lo[0]) * scale,
                size - (p[1] - lo[1]) * scale)

    lines = [f'<svg xmlns="http://www.w3.org/2000/svg" '
             f'width="{size}" height="{size}" '
             f'viewBox="0 0 {size} {size}">']
    stroke_w = max(1.0, size / 350.0)
    for name, poly in sorted(polys.items()):
        color, dotted = _style_for(name)
        tpl = _DOTTED if dotted else _SOLID
        style = tpl.format(color=color, w=f"{stroke_w:.2f}",
                           d=f"{3 * stroke_w:.2f}")
        pts = " ".join(f"{x:.3f},{y:.3f}"
                       for x, y in (tx(v) for v in poly.vertices))
        lines.append(f'<polygon points="{pts}" {style}>'
                     f'<title>{name}</title></polygon>')
    lines.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(lines))


def render_scenario(scenario, path, size: int = 520) -> None:
    render_bodies(scenario.bodies, path, size=size)


def render_distance_report(k: ConvexPolygon, l: ConvexPolygon, report,
                           path, size: int = 520) -> None:
    """Draw K+u, the mapped copy of L, and the outer homothet."""
    kp = k.translate(report.shift_inner)
    lp = apply_affine(report.map, l.translate(report.shift_outer))
    outer = scale_negate(kp, report.r) if report.sign < 0 else \
        ConvexPolygon(report.r * kp.vertices)
    render_bodies({"K": kp, "L_prime": lp, "neg2K": outer}, path, size=size)
