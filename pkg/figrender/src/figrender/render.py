"""Render partial-information-plot CSVs into a static figure.

Input files follow the producing tool's schema: header `m,I_bits,stderr_bits`
(extra columns are tolerated), one integer m per row, stderr empty on exact
rows.  Series with any nonzero stderr are drawn as circles with error bars
(sampled data); the rest as solid lines (exact curves).  Output is SVG by
default, chosen because the files diff cleanly; rendering is deterministic:
fixed style, salted SVG ids, no embedded timestamps.

Usage:
    figrender CURVE.csv [CURVE.csv ...] --out FIG.svg
        [--format svg|png] [--rescale-endpoint] [--x-fraction]
"""

from __future__ import annotations

import argparse
import csv
import math
import os
import sys
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

FORMATS = ("svg", "png")

# one fixed palette; cycled when a figure holds more series than entries
PALETTE = (
    "#1b6ca8", "#c84b31", "#346751", "#8a4f7d",
    "#b68b38", "#50707c", "#7d3540", "#4f6d2f",
)


@dataclass(frozen=True)
class Series:
    """One curve: label, integer m grid, values in bits, optional stderr."""

    label: str
    m: tuple
    y: tuple
    stderr: tuple | None

    @property
    def sampled(self) -> bool:
        return self.stderr is not None and any(s > 0 for s in self.stderr)


@dataclass(frozen=True)
class FigureSpec:
    """Everything render() needs: inputs, labels, axes flavor, output."""

    csv_paths: tuple
    out_path: str
    fmt: str = "svg"
    labels: tuple | None = None
    rescale: bool = False
    x_fraction: bool = False

    def __post_init__(self) -> None:
        if not self.csv_paths:
            raise ValueError("no input series: at least one CSV is required")
        if self.fmt not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}, got {self.fmt!r}")
        if self.labels is not None and len(self.labels) != len(self.csv_paths):
            raise ValueError("one label per CSV or none at all")


def load_series(path: str, label: str | None = None) -> Series:
    """Parse one curve CSV, raising errors that name the file."""
    if label is None:
        label = os.path.splitext(os.path.basename(path))[0]
    try:
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
    except OSError as exc:
        raise ValueError(f"{path}: cannot read ({exc.strerror})") from exc
    if not rows or rows[0][:3] != ["m", "I_bits", "stderr_bits"]:
        raise ValueError(f"{path}: expected header m,I_bits,stderr_bits")
    ms, ys, ses = [], [], []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) < 3:
            raise ValueError(f"{path}:{lineno}: expected at least 3 columns")
        try:
            ms.append(int(row[0]))
            ys.append(float(row[1]))
            ses.append(float(row[2]) if row[2] != "" else None)
        except ValueError:
            raise ValueError(f"{path}:{lineno}: bad numeric value") from None
    if not ms:
        raise ValueError(f"{path}: no data rows")
    if any(s is None for s in ses):
        stderr = None
    else:
        stderr = tuple(ses)
    return Series(label, tuple(ms), tuple(ys), stderr)


def rescale_endpoint(y) -> tuple:
    """Divide a series by its final value; the final point becomes exactly 1.0."""
    last = y[-1]
    if last == 0.0:
        raise ValueError("cannot rescale: endpoint is zero")
    return tuple(v / last for v in y)


def render(spec: FigureSpec) -> str:
    """Draw every series into one panel and write the image file."""
    series = [
        load_series(path, None if spec.labels is None else spec.labels[i])
        for i, path in enumerate(spec.csv_paths)
    ]

    plt.rcParams["svg.hashsalt"] = "figrender"
    fig, ax = plt.subplots(figsize=(6.4, 4.4), dpi=100)
    for i, s in enumerate(series):
        y = rescale_endpoint(s.y) if spec.rescale else s.y
        if spec.x_fraction:
            n = s.m[-1]
            x = [m / n for m in s.m]
        else:
            x = list(s.m)
        color = PALETTE[i % len(PALETTE)]
        gid = f"series-{s.label}"
        if s.sampled:
            se = s.stderr
            if spec.rescale:
                se = tuple(v / s.y[-1] for v in se)
            container = ax.errorbar(
                x, y, yerr=se, fmt="o", ms=4, capsize=2,
                color=color, label=s.label,
            )
            container.lines[0].set_gid(gid)
        else:
            (line,) = ax.plot(x, y, "-", lw=1.4, color=color, label=s.label)
            line.set_gid(gid)

    ax.set_xlabel("m/N" if spec.x_fraction else "m")
    ax.set_ylabel("I(m)/I(N)" if spec.rescale else "information (bits)")
    ax.legend(fontsize=8, frameon=False)
    ax.margins(x=0.02)
    fig.tight_layout()
    fig.savefig(spec.out_path, format=spec.fmt, metadata={"Date": None})
    plt.close(fig)
    return spec.out_path


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="figrender",
        description="Render curve CSVs (header m,I_bits,stderr_bits) into "
                    "one figure; sampled series get circles and error bars.",
    )
    parser.add_argument("csvs", nargs="+", help="input curve CSV files")
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument("--format", choices=FORMATS, default="svg")
    parser.add_argument("--rescale-endpoint", action="store_true",
                        help="divide each series by its own final value")
    parser.add_argument("--x-fraction", action="store_true",
                        help="plot against m/N instead of m")
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    spec = FigureSpec(
        csv_paths=tuple(args.csvs),
        out_path=args.out,
        fmt=args.format,
        rescale=args.rescale_endpoint,
        x_fraction=args.x_fraction,
    )
    try:
        render(spec)
    except ValueError as exc:
        print(f"figrender: error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {spec.out_path}", file=sys.stderr)
    return 0
