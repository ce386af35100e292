#!/usr/bin/env python3
"""Render a dlnsolve CSV as a simple SVG line plot.

    plot_csv.py landscape.csv --x b --y linear,tanh -o landscape.svg

Lines starting with '#' are ignored. Columns that are empty or non-numeric in a
row are skipped for that row.
"""

import argparse
import csv
import math
import sys

COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]


def read_rows(path):
    with open(path, newline="") as fh:
        lines = [ln for ln in fh if not ln.startswith("#")]
    return list(csv.DictReader(lines))


def number(text):
    try:
        v = float(text)
    except (TypeError, ValueError):
        return None
    return v if math.isfinite(v) else None


def render(rows, xcol, ycols, logx, logy, width=640, height=420, pad=56):
    series = []
    for col in ycols:
        pts = []
        for r in rows:
            x, y = number(r.get(xcol)), number(r.get(col))
            if x is None or y is None or (logx and x <= 0) or (logy and y <= 0):
                continue
            pts.append((math.log10(x) if logx else x, math.log10(y) if logy else y))
        series.append((col, pts))
    allpts = [p for _, pts in series for p in pts]
    if not allpts:
        raise SystemExit("nothing to plot")
    x0, x1 = min(p[0] for p in allpts), max(p[0] for p in allpts)
    y0, y1 = min(p[1] for p in allpts), max(p[1] for p in allpts)
    x1 = x1 if x1 > x0 else x0 + 1
    y1 = y1 if y1 > y0 else y0 + 1

    def sx(x):
        return pad + (x - x0) / (x1 - x0) * (width - 2 * pad)

    def sy(y):
        return height - pad - (y - y0) / (y1 - y0) * (height - 2 * pad)

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" font-family="sans-serif" font-size="12">',
           f'<rect x="{pad}" y="{pad}" width="{width - 2 * pad}" height="{height - 2 * pad}" fill="none" stroke="#444"/>']
    for v, anchor, x, y in ((x0, "start", pad, height - pad + 16), (x1, "end", width - pad, height - pad + 16)):
        out.append(f'<text x="{x}" y="{y}" text-anchor="{anchor}">{v:.4g}</text>')
    out.append(f'<text x="{pad - 4}" y="{height - pad}" text-anchor="end">{y0:.4g}</text>')
    out.append(f'<text x="{pad - 4}" y="{pad + 10}" text-anchor="end">{y1:.4g}</text>')
    xlabel = f"log10 {xcol}" if logx else xcol
    out.append(f'<text x="{width / 2}" y="{height - 12}" text-anchor="middle">{xlabel}</text>')
    for i, (name, pts) in enumerate(series):
        color = COLORS[i % len(COLORS)]
        path = " ".join(f"{sx(x):.1f},{sy(y):.1f}" for x, y in pts)
        out.append(f'<polyline points="{path}" fill="none" stroke="{color}" stroke-width="1.5"/>')
        out.append(f'<text x="{width - pad - 4}" y="{pad + 16 + 14 * i}" text-anchor="end" fill="{color}">{name}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("csv")
    ap.add_argument("--x", required=True, help="column for the horizontal axis")
    ap.add_argument("--y", required=True, help="comma-separated columns to draw")
    ap.add_argument("--logx", action="store_true")
    ap.add_argument("--logy", action="store_true")
    ap.add_argument("-o", "--output", help="SVG path (default stdout)")
    args = ap.parse_args(argv)
    svg = render(read_rows(args.csv), args.x, args.y.split(","), args.logx, args.logy)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(svg)
    else:
        sys.stdout.write(svg)


if __name__ == "__main__":
    main()
