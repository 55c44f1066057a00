"""CSV and SVG emission.

CSV files use ``,`` separators, ``\\n`` line endings and numbers printed with
17 significant digits, so every float survives a write/read round trip. A run
that stopped early gets a trailing ``# partial`` footer row.
"""

import io
import math

import numpy as np

TRAJECTORY_COLUMNS = ("t", "k", "c", "L", "n", "x", "z", "k_lower", "k_upper", "c_lower",
                      "c_upper", "savings_rate")


def format_number(v):
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        v = float(v)
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return format(v, ".17g")
    return str(v)


def write_rows(columns, rows, footer=None):
    """CSV text for ``rows`` (sequences matching ``columns``)."""
    buf = io.StringIO()
    buf.write(",".join(columns) + "\n")
    for row in rows:
        buf.write(",".join(format_number(v) for v in row) + "\n")
    if footer:
        buf.write(f"# partial: {footer}\n")
    return buf.getvalue()


def _stride_index(size, stride):
    idx = np.arange(0, size, stride)
    if size and idx[-1] != size - 1:
        idx = np.append(idx, size - 1)
    return idx


def trajectory_columns(traj):
    """Columns of the trajectory schema as arrays (bounds NaN when absent)."""
    nan = np.full(len(traj), np.nan)

    def bound(v):
        return nan if v is None else v

    with np.errstate(divide="ignore", invalid="ignore"):
        return {
            "t": traj.t, "k": traj.k, "c": traj.c, "L": traj.L, "n": traj.n,
            "x": traj.x, "z": traj.z,
            "k_lower": bound(traj.k_lower), "k_upper": bound(traj.k_upper),
            "c_lower": bound(traj.c_lower), "c_upper": bound(traj.c_upper),
            "savings_rate": traj.savings_rate,
        }


def footer_for(traj):
    if traj.completed:
        return None
    return f"termination={traj.termination} t_last={format_number(float(traj.t[-1]))}"


def trajectory_csv(traj, stride=1, header_only=False):
    """Trajectory in the fixed column schema; ``header_only`` gives just the header."""
    if header_only:
        return write_rows(TRAJECTORY_COLUMNS, [])
    cols = trajectory_columns(traj)
    idx = _stride_index(len(traj), stride)
    data = np.column_stack([cols[name][idx] for name in TRAJECTORY_COLUMNS])
    return write_rows(TRAJECTORY_COLUMNS, data.tolist(), footer_for(traj))


def read_csv(text):
    """Parse CSV written by this module into ``(columns, rows, footer)``."""
    lines = text.split("\n")
    columns = lines[0].split(",")
    rows, footer = [], None
    for line in lines[1:]:
        if not line:
            continue
        if line.startswith("# partial: "):
            footer = line[len("# partial: "):]
            continue
        rows.append([_parse_cell(v) for v in line.split(",")])
    return columns, rows, footer


def _parse_cell(v):
    try:
        return float(v)
    except ValueError:
        return v


# -- SVG ---------------------------------------------------------------------

WIDTH, HEIGHT, MARGIN = 640, 400, 60
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e")


def _fmt_tick(v):
    return format(v, ".4g")


def svg_plot(series, title="", xlabel="t", ylabel=""):
    """A self-contained SVG line chart.

    ``series`` is a list of ``(label, x, y)``. Non-finite points are dropped.
    """
    clean = []
    for label, x, y in series:
        x, y = np.asarray(x, float), np.asarray(y, float)
        ok = np.isfinite(x) & np.isfinite(y)
        clean.append((label, x[ok], y[ok]))
    xs = np.concatenate([s[1] for s in clean]) if clean else np.array([])
    ys = np.concatenate([s[2] for s in clean]) if clean else np.array([])
    x0, x1 = (float(xs.min()), float(xs.max())) if xs.size else (0.0, 1.0)
    y0, y1 = (float(ys.min()), float(ys.max())) if ys.size else (0.0, 1.0)
    if x1 == x0:
        x1 = x0 + 1.0
    if y1 == y0:
        y0, y1 = y0 - 0.5, y1 + 0.5
    pw, ph = WIDTH - 2 * MARGIN, HEIGHT - 2 * MARGIN

    def px(v):
        return MARGIN + (v - x0) / (x1 - x0) * pw

    def py(v):
        return HEIGHT - MARGIN - (v - y0) / (y1 - y0) * ph

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
           f'viewBox="0 0 {WIDTH} {HEIGHT}">',
           f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
           f'<text x="{WIDTH / 2}" y="{MARGIN / 2}" text-anchor="middle" '
           f'font-family="sans-serif" font-size="14">{_escape(title)}</text>',
           f'<line x1="{MARGIN}" y1="{HEIGHT - MARGIN}" x2="{WIDTH - MARGIN}" '
           f'y2="{HEIGHT - MARGIN}" stroke="black"/>',
           f'<line x1="{MARGIN}" y1="{MARGIN}" x2="{MARGIN}" y2="{HEIGHT - MARGIN}" '
           f'stroke="black"/>']
    for v in np.linspace(x0, x1, 5):
        out.append(f'<text x="{px(v):.2f}" y="{HEIGHT - MARGIN + 16}" text-anchor="middle" '
                   f'font-family="sans-serif" font-size="10">{_fmt_tick(v)}</text>')
    for v in np.linspace(y0, y1, 5):
        out.append(f'<text x="{MARGIN - 6}" y="{py(v) + 3:.2f}" text-anchor="end" '
                   f'font-family="sans-serif" font-size="10">{_fmt_tick(v)}</text>')
    out.append(f'<text x="{WIDTH / 2}" y="{HEIGHT - 15}" text-anchor="middle" '
               f'font-family="sans-serif" font-size="12">{_escape(xlabel)}</text>')
    out.append(f'<text x="15" y="{HEIGHT / 2}" text-anchor="middle" font-family="sans-serif" '
               f'font-size="12" transform="rotate(-90 15 {HEIGHT / 2})">{_escape(ylabel)}</text>')
    for i, (label, x, y) in enumerate(clean):
        color = PALETTE[i % len(PALETTE)]
        pts = " ".join(f"{px(a):.2f},{py(b):.2f}" for a, b in zip(x, y))
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{pts}"/>')
        ly = MARGIN + 14 * (i + 1)
        out.append(f'<text x="{WIDTH - MARGIN - 4}" y="{ly}" text-anchor="end" fill="{color}" '
                   f'font-family="sans-serif" font-size="11">{_escape(label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _escape(s):
    return str(s).replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
