"""Figure assembly from the dlpad CLI's versioned CSV tables.

Every number drawn here comes out of a CSV produced by the `dlpad`
command-line tool; nothing is recomputed.  Each figure kind is bound to one
CSV schema and the header row must match it exactly, so a table from the
wrong subcommand is rejected instead of plotted as garbage.
"""

import csv
import itertools
import math
import os
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

# figure kind -> the exact header row of the dlpad CSV it consumes
SCHEMAS = {
    "collapse": ("L", "u", "l2k0_tilde", "h_limit"),
    "cumulant_growth": ("L", "n", "kappa_c", "kappa_star", "ratio"),
    "phi_convergence": ("m", "N", "phi_exact", "phi_asymptotic", "diff_times_n4"),
}

KINDS = tuple(SCHEMAS)

_MARKERS = ("o", "s", "^", "D", "v", "<", ">", "p")


class SchemaMismatchError(ValueError):
    """The CSV header row is not the one the figure kind expects."""


class EmptyInputError(ValueError):
    """The CSV parsed but holds no data rows."""


@dataclass(frozen=True)
class FigureSpec:
    """What to draw: input tables, figure kind, axis labels, output path.

    `inputs` may name several CSVs; all must carry the schema of `kind` and
    their rows are pooled.  Labels default to per-kind choices when None.
    The output suffix selects the image format (.png or .svg).
    """

    inputs: tuple
    kind: str
    output: str
    x_label: str | None = None
    y_label: str | None = None

    def __post_init__(self):
        paths = (self.inputs,) if isinstance(self.inputs, (str, os.PathLike)) else self.inputs
        object.__setattr__(self, "inputs", tuple(os.fspath(p) for p in paths))
        if not self.inputs:
            raise ValueError("need at least one input CSV")
        if self.kind not in SCHEMAS:
            raise ValueError(f"unknown figure kind {self.kind!r}; expected one of {sorted(SCHEMAS)}")
        suffix = os.path.splitext(self.output)[1].lower()
        if suffix not in (".png", ".svg"):
            raise ValueError(f"output must end in .png or .svg, got {self.output!r}")


def load_table(path, kind: str) -> list[dict]:
    """Read one CSV for `kind` and return its rows as float-valued dicts.

    The header must equal the documented schema verbatim; an empty table is
    an error because it could only produce a blank figure.
    """
    columns = SCHEMAS[kind]
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or tuple(header) != columns:
            got = ",".join(header) if header else "<nothing>"
            raise SchemaMismatchError(
                f"{path}: header {got!r} does not match {','.join(columns)!r} required for {kind!r}"
            )
        rows = [dict(zip(columns, map(float, row))) for row in reader]
    if not rows:
        raise EmptyInputError(f"{path}: no data rows")
    return rows


def _series(rows, key, x, y):
    """Per-group sorted (x, y) arrays, keyed by the integer column `key`."""
    groups = sorted({int(r[key]) for r in rows})
    for g in groups:
        pts = sorted((r[x], r[y]) for r in rows if int(r[key]) == g)
        yield g, [p[0] for p in pts], [p[1] for p in pts]


def _draw_collapse(ax, rows):
    for marker, (L, us, vs) in zip(itertools.cycle(_MARKERS), _series(rows, "L", "u", "l2k0_tilde")):
        ax.plot(us, vs, marker, ms=4, mfc="none", label=f"L = {L}")
    limit = sorted({(r["u"], r["h_limit"]) for r in rows})
    ax.plot([u for u, _ in limit], [h for _, h in limit], "k-", lw=1.0, label="limit curve")
    ax.set_xlabel("u")
    ax.set_ylabel(r"$L^2\,\tilde K_0(L, u)$")


def _draw_cumulant_growth(ax, rows):
    ax.set_xscale("log", base=2)
    for marker, (n, sizes, ratios) in zip(itertools.cycle(_MARKERS), _series(rows, "n", "L", "ratio")):
        ax.plot(sizes, ratios, marker + "-", ms=4, label=f"n = {n}")
        star = next(r["kappa_star"] for r in rows if int(r["n"]) == n)
        if star != 0.0 and math.isfinite(star):
            ax.axhline(star, color="0.6", lw=0.8, ls="--")
    ax.set_xlabel("L")
    ax.set_ylabel("cumulant growth ratio")


def _draw_phi_convergence(ax, rows):
    ax.set_xscale("log", base=2)
    for marker, (m, sizes, diffs) in zip(itertools.cycle(_MARKERS), _series(rows, "m", "N", "diff_times_n4")):
        ax.plot(sizes, diffs, marker + "-", ms=4, label=f"m = {m}")
    ax.set_xlabel("N")
    ax.set_ylabel(r"$(\Phi_m - \Phi_m^{\rm asym})\,N^4$")


_DRAWERS = {
    "collapse": _draw_collapse,
    "cumulant_growth": _draw_cumulant_growth,
    "phi_convergence": _draw_phi_convergence,
}


def build_figure(spec: FigureSpec):
    """Assemble (but do not save) the matplotlib Figure for `spec`.

    Raises before creating the figure if any input is missing, has the wrong
    header, or is empty.  The caller owns the figure and must close it.
    """
    rows = []
    for path in spec.inputs:
        rows.extend(load_table(path, spec.kind))
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    try:
        _DRAWERS[spec.kind](ax, rows)
        if spec.x_label is not None:
            ax.set_xlabel(spec.x_label)
        if spec.y_label is not None:
            ax.set_ylabel(spec.y_label)
        ax.legend(frameon=False, fontsize="small")
        fig.tight_layout()
    except Exception:
        plt.close(fig)
        raise
    return fig


def render(spec: FigureSpec) -> str:
    """Write the figure for `spec` to `spec.output` and return that path.

    All inputs are read and validated before the output file is touched, so
    a bad table never leaves a partial image behind.  Rendering depends only
    on the CSV bytes and the FigureSpec: rerunning with identical input produces a
    byte-identical file (writer timestamps and version stamps are stripped).
    """
    fig = build_figure(spec)
    try:
        if spec.output.lower().endswith(".svg"):
            # fixed hash salt keeps the SVG's internal element ids stable
            with matplotlib.rc_context({"svg.hashsalt": "plotkit"}):
                fig.savefig(spec.output, metadata={"Date": None})
        else:
            fig.savefig(spec.output, metadata={"Software": None})
    finally:
        plt.close(fig)
    return spec.output
