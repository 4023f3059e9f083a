"""
Self-contained SVG figures for each report

Everything is assembled from string parts with coordinates fixed to two decimals,
so the same report always renders to the same bytes.
"""

from html    import escape
from logging import getLogger
from typing  import Callable, Dict, List, Sequence, Tuple

from .exc import RulerLabUsageError
from .hv_dynamics import forward_edges
from .polygon import generation, turn_point, vertex_coordinates
from .report import Report

_LOGGER = getLogger(__name__)

WIDTH  = 800
MARGIN = 40
FONT   = 'Helvetica, Arial, sans-serif'


def _ratio(text) -> float:
    """'p/3^k' or 'p/2^k' as a float, for drawing only; floats pass through"""
    if isinstance(text, float):
        return text
    numerator, power = text.split('/')
    base, exponent = power.split('^')
    return int(numerator) / int(base)**int(exponent)


def _open(width: float, height: float, title: str) -> List[str]:
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.2f}" height="{height:.2f}" '
        f'viewBox="0 0 {width:.2f} {height:.2f}">',
        f'<rect x="0" y="0" width="{width:.2f}" height="{height:.2f}" fill="white"/>',
        f'<text x="{width / 2:.2f}" y="24.00" text-anchor="middle" font-family="{FONT}" '
        f'font-size="14">{escape(title)}</text>',
    ]


def _close(parts: List[str]) -> bytes:
    parts.append('</svg>')
    return ('\n'.join(parts) + '\n').encode('utf-8')


def _ticks(title: str, xs: Sequence[float], heights: Sequence[int]) -> bytes:
    """One vertical tick per point, tick height proportional to its term"""
    top = max(heights) if heights else 1
    unit = 240 / top
    height = 2 * MARGIN + 260
    base = height - MARGIN
    parts = _open(WIDTH, height, title)
    parts.append(f'<line x1="{MARGIN:.2f}" y1="{base:.2f}" x2="{WIDTH - MARGIN:.2f}" y2="{base:.2f}" '
                 'stroke="black" stroke-width="1"/>')
    parts.append('<g stroke="black" stroke-width="1">')
    for x, h in zip(xs, heights):
        parts.append(f'<line x1="{x:.2f}" y1="{base:.2f}" x2="{x:.2f}" y2="{base - h * unit:.2f}"/>')
    parts.append('</g>')
    return _close(parts)


def ruler_svg(report: Report) -> bytes:
    """Ruler-tick plot: tick k at height r_k"""
    count = len(report.rows)
    step = (WIDTH - 2 * MARGIN) / (count + 1)
    xs = [MARGIN + row['position'] * step for row in report.rows]
    n = report.provenance.get('config', {}).get('n', '')
    return _ticks(f'Ruler sequence, order {n}: {count} terms', xs, [row['term'] for row in report.rows])


def automaton_svg(report: Report) -> bytes:
    """Partition points at their positions, tick height = age"""
    positions = [row['position'] for row in report.rows]
    lo, hi = min(positions), max(positions)
    span = (hi - lo) or 1.0
    pad = span / (len(positions) + 1)
    scale = (WIDTH - 2 * MARGIN) / (span + 2 * pad)
    xs = [MARGIN + (p - lo + pad) * scale for p in positions]
    step = report.provenance.get('config', {}).get('steps', '')
    return _ticks(f'Duplication automaton after step {step}', xs, [row['age'] for row in report.rows])


def demography_svg(report: Report) -> bytes:
    """Age pyramid: one centred bar per age class, youngest at the bottom"""
    rows = sorted(report.rows, key=lambda row: row['age'])
    largest = max((row['count'] for row in rows), default=1)
    bar = 24
    height = 2 * MARGIN + 20 + bar * len(rows)
    centre = WIDTH / 2
    half = (WIDTH - 2 * MARGIN - 120) / 2
    parts = _open(WIDTH, height, 'Age pyramid')
    parts.append(f'<g font-family="{FONT}" font-size="11">')
    for i, row in enumerate(rows):
        y = height - MARGIN - (i + 1) * bar
        w = half * row['count'] / largest
        parts.append(f'<rect x="{centre - w:.2f}" y="{y:.2f}" width="{2 * w:.2f}" height="{bar - 4:.2f}" '
                     'fill="#4a7ab5" stroke="black" stroke-width="0.5"/>')
        parts.append(f'<text x="{MARGIN:.2f}" y="{y + bar / 2 + 2:.2f}">age {row["age"]}</text>')
        parts.append(f'<text x="{WIDTH - MARGIN:.2f}" y="{y + bar / 2 + 2:.2f}" text-anchor="end">'
                     f'{escape(str(row["proportion"]))}</text>')
    parts.append('</g>')
    return _close(parts)


def cantor_svg(report: Report) -> bytes:
    """Surviving closed segments after each step, removed middles labelled with their index"""
    removed = [(_ratio(row['lo']), _ratio(row['hi']), row['birth'], row['index']) for row in report.rows]
    steps = max((r[2] for r in removed), default=0)
    row_gap = 36
    height = 2 * MARGIN + 20 + row_gap * (steps + 1)
    span = WIDTH - 2 * MARGIN
    parts = _open(WIDTH, height, f'Middle-third construction, {steps} steps')

    parts.append('<g stroke="black" stroke-width="4">')
    for level in range(steps + 1):
        y = MARGIN + 20 + level * row_gap
        cuts = sorted((lo, hi) for lo, hi, birth, _ in removed if birth <= level)
        left = 0.0
        for lo, hi in cuts + [(1.0, 1.0)]:
            if lo > left:
                parts.append(f'<line x1="{MARGIN + left * span:.2f}" y1="{y:.2f}" '
                             f'x2="{MARGIN + lo * span:.2f}" y2="{y:.2f}"/>')
            left = hi
    parts.append('</g>')

    y = MARGIN + 20 + steps * row_gap + 14
    parts.append(f'<g font-family="{FONT}" font-size="9" text-anchor="middle">')
    for lo, hi, _, index in removed:
        parts.append(f'<text x="{MARGIN + (lo + hi) / 2 * span:.2f}" y="{y:.2f}">{index}</text>')
    parts.append('</g>')
    return _close(parts)


def _place(point: Tuple[float, float], cx: float, cy: float, radius: float) -> Tuple[float, float]:
    """Unit-circle point onto the canvas, SVG y pointing down"""
    x, y = point
    return cx + radius * x, cy - radius * y


def polygon_svg(report: Report) -> bytes:
    """Nested duplicated polygons; every vertex labelled with its index"""
    n = report.provenance.get('config', {}).get('n', 1)
    size = WIDTH
    cx = cy = size / 2
    radius = size / 2 - 2 * MARGIN
    parts = _open(size, size, f'Nested polygons up to 2^{n} sides')
    parts.append(f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="{radius:.2f}" fill="none" stroke="#bbbbbb"/>')

    jittered = report.provenance.get('config', {}).get('jitter', False)
    parts.append('<g fill="none" stroke="#4a7ab5" stroke-width="1">')
    for m in ([] if jittered else range(1, n + 1)):
        corners = vertex_coordinates(generation(m), include_south=True)
        d = ' '.join('{:.2f},{:.2f}'.format(*_place(p, cx, cy, radius)) for p in corners)
        parts.append(f'<polygon points="{d}"/>')
    parts.append('</g>')

    labels = [(0.0, n)] + [(_ratio(row['fraction']), row['index']) for row in report.rows]
    parts.append(f'<g font-family="{FONT}" font-size="10" text-anchor="middle">')
    for turn, index in labels:
        x, y = _place(turn_point(turn), cx, cy, radius)
        lx, ly = _place(turn_point(turn), cx, cy, radius + 16)
        parts.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="2.50" fill="black"/>')
        parts.append(f'<text x="{lx:.2f}" y="{ly + 3:.2f}">{index}</text>')
    parts.append('</g>')
    return _close(parts)


def cascade_svg(report: Report) -> bytes:
    """Two periods of a superstable orbit as bars, forward visibility links as horizontal segments"""
    orbit = report.extras.get('orbit')
    if not orbit:
        raise RulerLabUsageError('Cascade report carries no orbit to draw')
    series = list(orbit['points']) * 2
    height = 2 * MARGIN + 320
    base = height - MARGIN
    step = (WIDTH - 2 * MARGIN) / (len(series) + 1)
    xs = [MARGIN + (t + 1) * step for t in range(len(series))]
    tops = [base - 260 * x for x in series]
    parts = _open(WIDTH, height, f'Forward visibility, period {orbit["period"]}, r = {orbit["r"]:.6f}')

    parts.append('<g stroke="black" stroke-width="2">')
    for x, top in zip(xs, tops):
        parts.append(f'<line x1="{x:.2f}" y1="{base:.2f}" x2="{x:.2f}" y2="{top:.2f}"/>')
    parts.append('</g>')
    parts.append('<g fill="none" stroke="#c0392b" stroke-width="0.8">')
    for i, j in forward_edges(series):
        level = max(tops[i], tops[j])
        parts.append(f'<path d="M {xs[i]:.2f} {level:.2f} L {xs[j]:.2f} {level:.2f}"/>')
    parts.append('</g>')
    return _close(parts)


_FIGURES = {
    'ruler':      ruler_svg,
    'automaton':  automaton_svg,
    'demography': demography_svg,
    'cantor':     cantor_svg,
    'polygon':    polygon_svg,
    'cascade':    cascade_svg,
}   # type: Dict[str, Callable[[Report], bytes]]


def emit_svg(report: Report) -> bytes:
    figure = _FIGURES.get(report.title)
    if figure is None:
        raise RulerLabUsageError(f'No figure for {report.title!r} reports; use csv or json')
    _LOGGER.debug(f'Rendering {report.title} figure from {len(report.rows)} rows')
    return figure(report)
