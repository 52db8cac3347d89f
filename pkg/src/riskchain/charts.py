"""Byte-deterministic grouped bar charts as SVG or plain text."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence
from xml.sax.saxutils import escape

from .errors import DomainError

PALETTE = ("#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1", "#9c755f")

BAR_WIDTH = 22
GROUP_GAP = 18
PLOT_HEIGHT = 220
MARGIN_LEFT = 56
LEGEND_CHAR_WIDTH = 7
MARGIN_TOP = 48
MARGIN_BOTTOM = 56
ASCII_WIDTH = 40


@dataclass(frozen=True)
class ChartSpec:
    title: str
    categories: Sequence[str]
    series: Sequence[tuple[str, Sequence[float]]]
    style: str = "svg"
    y_label: str = ""
    y_max: float | None = None

    def validate(self):
        if not self.categories:
            raise DomainError("chart needs at least one category")
        if not self.series:
            raise DomainError("chart needs at least one series")
        if self.style not in ("svg", "ascii"):
            raise DomainError(f"unknown chart style {self.style!r}")
        for label, values in self.series:
            if len(values) != len(self.categories):
                raise DomainError(
                    f"series {label!r} has {len(values)} values for {len(self.categories)} categories"
                )
            for v in values:
                if not math.isfinite(v) or v < 0:
                    raise DomainError(f"series {label!r} has invalid value {v!r}")
        if self.y_max is not None:
            top = max(max(values) for _, values in self.series)
            if not math.isfinite(self.y_max) or self.y_max <= 0 or self.y_max < top:
                raise DomainError(f"y_max {self.y_max!r} must be positive and cover every value")


def _text(s: str) -> str:
    # XML 1.0 forbids most control characters even when escaped.
    return escape("".join(ch for ch in str(s) if ch >= " " or ch in "\t\n\r"))


def _fmt(x: float) -> str:
    s = f"{x:.2f}".rstrip("0").rstrip(".")
    return "0" if s in ("", "-0") else s


def _nice_ceiling(value: float) -> float:
    if value <= 0:
        return 1.0
    exp = math.floor(math.log10(value))
    for step in (1, 2, 5, 10):
        candidate = step * 10.0 ** exp
        if candidate >= value:
            return candidate
    return 10.0 ** (exp + 1)


def render_chart(spec: ChartSpec) -> str:
    spec.validate()
    if spec.style == "ascii":
        return _render_ascii(spec)
    return _render_svg(spec)


def _render_svg(spec: ChartSpec) -> str:
    n_series = len(spec.series)
    group_w = n_series * BAR_WIDTH + GROUP_GAP
    plot_w = len(spec.categories) * group_w + GROUP_GAP
    legend_w = 40 + LEGEND_CHAR_WIDTH * max(len(label) for label, _ in spec.series)
    width = MARGIN_LEFT + plot_w + legend_w
    height = MARGIN_TOP + PLOT_HEIGHT + MARGIN_BOTTOM
    top = max(max(values) for _, values in spec.series)
    y_max = spec.y_max or _nice_ceiling(top)
    base_y = MARGIN_TOP + PLOT_HEIGHT

    def y_of(v):
        return base_y - PLOT_HEIGHT * v / y_max

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>',
        f'<text x="{_fmt(width / 2)}" y="24" text-anchor="middle" font-size="14" '
        f'font-weight="bold">{_text(spec.title)}</text>',
    ]
    ticks = int(y_max) if spec.y_max and float(y_max).is_integer() and y_max <= 10 else 4
    for i in range(ticks + 1):
        v = y_max * i / ticks
        y = _fmt(y_of(v))
        out.append(f'<line x1="{MARGIN_LEFT}" y1="{y}" x2="{MARGIN_LEFT + plot_w}" y2="{y}" stroke="#dddddd"/>')
        out.append(f'<text x="{MARGIN_LEFT - 6}" y="{y}" text-anchor="end" dy="4">{_fmt(v)}</text>')
    out.append(f'<line x1="{MARGIN_LEFT}" y1="{MARGIN_TOP}" x2="{MARGIN_LEFT}" y2="{base_y}" stroke="#333333"/>')
    out.append(f'<line x1="{MARGIN_LEFT}" y1="{base_y}" x2="{MARGIN_LEFT + plot_w}" y2="{base_y}" stroke="#333333"/>')
    if spec.y_label:
        mid = _fmt(MARGIN_TOP + PLOT_HEIGHT / 2)
        out.append(
            f'<text x="14" y="{mid}" text-anchor="middle" transform="rotate(-90 14 {mid})">{_text(spec.y_label)}</text>'
        )
    for ci, category in enumerate(spec.categories):
        gx = MARGIN_LEFT + GROUP_GAP + ci * group_w
        for si, (label, values) in enumerate(spec.series):
            v = values[ci]
            x = gx + si * BAR_WIDTH
            y = y_of(v)
            out.append(
                f'<rect x="{x}" y="{_fmt(y)}" width="{BAR_WIDTH - 2}" height="{_fmt(base_y - y)}" '
                f'fill="{PALETTE[si % len(PALETTE)]}"><title>{_text(category)} / {_text(label)}: {_fmt(v)}</title></rect>'
            )
            out.append(
                f'<text x="{_fmt(x + (BAR_WIDTH - 2) / 2)}" y="{_fmt(y - 3)}" text-anchor="middle" font-size="9">{_fmt(v)}</text>'
            )
        cx = _fmt(gx + (n_series * BAR_WIDTH - 2) / 2)
        out.append(f'<text x="{cx}" y="{base_y + 16}" text-anchor="middle">{_text(category)}</text>')
    lx = MARGIN_LEFT + plot_w + 16
    for si, (label, _) in enumerate(spec.series):
        ly = MARGIN_TOP + si * 18
        out.append(f'<rect x="{lx}" y="{ly}" width="12" height="12" fill="{PALETTE[si % len(PALETTE)]}"/>')
        out.append(f'<text x="{lx + 18}" y="{ly + 10}">{_text(label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _render_ascii(spec: ChartSpec) -> str:
    top = max(max(values) for _, values in spec.series)
    scale = ASCII_WIDTH / top if top > 0 else 0.0
    label_w = max(len(label) for label, _ in spec.series)
    cat_w = max(len(c) for c in spec.categories)
    lines = [spec.title, "=" * len(spec.title)]
    for ci, category in enumerate(spec.categories):
        for si, (label, values) in enumerate(spec.series):
            v = values[ci]
            bar = "#" * int(round(v * scale))
            head = category if si == 0 else ""
            lines.append(f"{head:<{cat_w}}  {label:<{label_w}} |{bar} {_fmt(v)}")
    return "\n".join(lines) + "\n"
