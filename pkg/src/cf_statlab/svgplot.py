"""Minimal deterministic SVG scatter plots.

Just enough to reproduce the counting figure without an external plotting
toolchain: side-by-side panels, linear axes, fixed tick count, colored
point clouds with a small legend.  Output is a plain string built in a
fixed order with fixed float formatting, so identical data yields
identical bytes.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Series:
    label: str
    color: str
    points: tuple[tuple[float, float], ...]


@dataclass(frozen=True)
class Panel:
    title: str
    x_label: str
    y_label: str
    series: tuple[Series, ...]


_MARGIN_L, _MARGIN_R, _MARGIN_T, _MARGIN_B = 56.0, 16.0, 30.0, 42.0


def _fmt(v: float) -> str:
    """Coordinate formatting: two decimals is below pixel resolution."""
    return f"{v:.2f}"


def _tick_label(v: float) -> str:
    return f"{v:.4g}"


def _bounds(panel: Panel) -> tuple[float, float, float, float]:
    xs = [x for s in panel.series for x, _ in s.points]
    ys = [y for s in panel.series for _, y in s.points]
    if not xs:
        return 0.0, 1.0, 0.0, 1.0
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    if x0 == x1:
        x0, x1 = x0 - 0.5, x1 + 0.5
    if y0 == y1:
        y0, y1 = y0 - 0.5, y1 + 0.5
    pad_x, pad_y = 0.04 * (x1 - x0), 0.04 * (y1 - y0)
    return x0 - pad_x, x1 + pad_x, y0 - pad_y, y1 + pad_y


def _panel_svg(panel: Panel, x_off: float, w: float, h: float) -> list[str]:
    x0, x1, y0, y1 = _bounds(panel)
    px0, px1 = x_off + _MARGIN_L, x_off + w - _MARGIN_R
    py0, py1 = h - _MARGIN_B, _MARGIN_T

    def sx(x: float) -> float:
        return px0 + (x - x0) / (x1 - x0) * (px1 - px0)

    def sy(y: float) -> float:
        return py0 + (y - y0) / (y1 - y0) * (py1 - py0)

    out = []
    out.append(
        f'<rect x="{_fmt(px0)}" y="{_fmt(py1)}" width="{_fmt(px1 - px0)}" '
        f'height="{_fmt(py0 - py1)}" fill="none" stroke="#444" stroke-width="1"/>'
    )
    out.append(
        f'<text x="{_fmt((px0 + px1) / 2)}" y="{_fmt(_MARGIN_T - 12)}" '
        f'text-anchor="middle" font-size="13">{panel.title}</text>'
    )
    n_ticks = 5
    for i in range(n_ticks):
        fx = x0 + (x1 - x0) * i / (n_ticks - 1)
        X = sx(fx)
        out.append(
            f'<line x1="{_fmt(X)}" y1="{_fmt(py0)}" x2="{_fmt(X)}" '
            f'y2="{_fmt(py0 + 4)}" stroke="#444" stroke-width="1"/>'
        )
        out.append(
            f'<text x="{_fmt(X)}" y="{_fmt(py0 + 16)}" text-anchor="middle" '
            f'font-size="10">{_tick_label(fx)}</text>'
        )
        fy = y0 + (y1 - y0) * i / (n_ticks - 1)
        Y = sy(fy)
        out.append(
            f'<line x1="{_fmt(px0 - 4)}" y1="{_fmt(Y)}" x2="{_fmt(px0)}" '
            f'y2="{_fmt(Y)}" stroke="#444" stroke-width="1"/>'
        )
        out.append(
            f'<text x="{_fmt(px0 - 6)}" y="{_fmt(Y + 3)}" text-anchor="end" '
            f'font-size="10">{_tick_label(fy)}</text>'
        )
    out.append(
        f'<text x="{_fmt((px0 + px1) / 2)}" y="{_fmt(py0 + 32)}" '
        f'text-anchor="middle" font-size="11">{panel.x_label}</text>'
    )
    out.append(
        f'<text x="{_fmt(x_off + 14)}" y="{_fmt((py0 + py1) / 2)}" text-anchor="middle" '
        f'font-size="11" transform="rotate(-90 {_fmt(x_off + 14)} '
        f'{_fmt((py0 + py1) / 2)})">{panel.y_label}</text>'
    )
    for s in panel.series:
        for x, y in s.points:
            out.append(
                f'<circle cx="{_fmt(sx(x))}" cy="{_fmt(sy(y))}" r="1.6" '
                f'fill="{s.color}" fill-opacity="0.55"/>'
            )
    for i, s in enumerate(panel.series):
        lx, ly = px0 + 10, py1 + 14 + 14 * i
        out.append(f'<circle cx="{_fmt(lx)}" cy="{_fmt(ly - 3)}" r="3" fill="{s.color}"/>')
        out.append(f'<text x="{_fmt(lx + 8)}" y="{_fmt(ly)}" font-size="11">{s.label}</text>')
    return out


def scatter_svg(
    panels: list[Panel] | tuple[Panel, ...],
    panel_width: float = 440.0,
    panel_height: float = 340.0,
) -> str:
    """Render side-by-side scatter panels to an SVG document string."""
    if not panels:
        raise ValueError("need at least one panel")
    total_w = panel_width * len(panels)
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(total_w)}" '
        f'height="{_fmt(panel_height)}" viewBox="0 0 {_fmt(total_w)} {_fmt(panel_height)}" '
        f'font-family="sans-serif">',
        f'<rect width="{_fmt(total_w)}" height="{_fmt(panel_height)}" fill="white"/>',
    ]
    for i, panel in enumerate(panels):
        lines.extend(_panel_svg(panel, i * panel_width, panel_width, panel_height))
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
