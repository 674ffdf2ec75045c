"""Minimal deterministic SVG line charts.

The renderer is intentionally tiny: fixed canvas, one polyline per labeled
curve, a legend, and min/mid/max tick labels. Output is a pure function of
the input arrays, with no timestamps or generated ids, so identical runs
produce identical bytes.
"""

from __future__ import annotations

import numpy as np

WIDTH = 960
HEIGHT = 480
MARGIN_L = 70
MARGIN_R = 180
MARGIN_T = 40
MARGIN_B = 50

PALETTE = (
    "#1f77b4",
    "#ff7f0e",
    "#2ca02c",
    "#d62728",
    "#9467bd",
    "#8c564b",
    "#e377c2",
    "#111111",
    "#7f7f7f",
    "#bcbd22",
)


def moving_average(values, window: int) -> np.ndarray:
    """Trailing moving average; a window longer than the data is clamped."""
    values = np.asarray(values, dtype=np.float64)
    if window < 1:
        raise ValueError(f"window must be >= 1, got {window}")
    window = min(window, values.size)
    if window == 1:
        return values.copy()
    kernel = np.full(window, 1.0 / window)
    return np.convolve(values, kernel, mode="valid")


def smooth_curve(indices, values, window: int) -> tuple[np.ndarray, np.ndarray]:
    """Apply a trailing moving average, keeping indices aligned to window ends."""
    indices = np.asarray(indices)
    smoothed = moving_average(values, window)
    return indices[indices.size - smoothed.size :], smoothed


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def render_svg(
    curves: dict[str, tuple[np.ndarray, np.ndarray]],
    title: str = "",
    x_label: str = "t",
    y_label: str = "residual",
) -> str:
    """Render labeled (x, y) curves to an SVG document string."""
    if not curves:
        raise ValueError("no curves to plot")
    xs = np.concatenate([np.asarray(x, dtype=np.float64) for x, _ in curves.values()])
    ys = np.concatenate([np.asarray(y, dtype=np.float64) for _, y in curves.values()])
    if xs.size == 0:
        raise ValueError("curves contain no points")
    x_lo, x_hi = float(xs.min()), float(xs.max())
    y_lo, y_hi = float(ys.min()), float(ys.max())
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    if y_hi == y_lo:
        y_hi = y_lo + 1.0
    pad = 0.05 * (y_hi - y_lo)
    y_lo -= pad
    y_hi += pad

    plot_w = WIDTH - MARGIN_L - MARGIN_R
    plot_h = HEIGHT - MARGIN_T - MARGIN_B

    def px(x: float) -> float:
        return MARGIN_L + (x - x_lo) / (x_hi - x_lo) * plot_w

    def py(y: float) -> float:
        return MARGIN_T + (y_hi - y) / (y_hi - y_lo) * plot_h

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<rect x="{MARGIN_L}" y="{MARGIN_T}" width="{plot_w}" height="{plot_h}" '
        'fill="none" stroke="#333333" stroke-width="1"/>',
    ]
    if title:
        parts.append(
            f'<text x="{WIDTH // 2}" y="24" text-anchor="middle" '
            f'font-family="sans-serif" font-size="16">{title}</text>'
        )

    for frac in (0.0, 0.5, 1.0):
        xv = x_lo + frac * (x_hi - x_lo)
        yv = y_lo + frac * (y_hi - y_lo)
        parts.append(
            f'<text x="{_fmt(px(xv))}" y="{HEIGHT - MARGIN_B + 18}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{xv:.5g}</text>'
        )
        parts.append(
            f'<text x="{MARGIN_L - 6}" y="{_fmt(py(yv) + 4)}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{yv:.5g}</text>'
        )
    parts.append(
        f'<text x="{MARGIN_L + plot_w // 2}" y="{HEIGHT - 10}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12">{x_label}</text>'
    )
    parts.append(
        f'<text x="16" y="{MARGIN_T + plot_h // 2}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12" '
        f'transform="rotate(-90 16 {MARGIN_T + plot_h // 2})">{y_label}</text>'
    )

    for k, (label, (x, y)) in enumerate(curves.items()):
        color = PALETTE[k % len(PALETTE)]
        x = np.asarray(x, dtype=np.float64)
        y = np.asarray(y, dtype=np.float64)
        pts = " ".join(f"{_fmt(px(a))},{_fmt(py(b))}" for a, b in zip(x, y))
        parts.append(
            f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.2"/>'
        )
        ly = MARGIN_T + 14 + 18 * k
        lx = WIDTH - MARGIN_R + 14
        parts.append(
            f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 22}" y2="{ly - 4}" '
            f'stroke="{color}" stroke-width="2"/>'
        )
        parts.append(
            f'<text x="{lx + 28}" y="{ly}" font-family="sans-serif" '
            f'font-size="12">{label}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
