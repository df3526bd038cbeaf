"""Render the plot descriptions attached to suite results."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def _bar(ax, spec):
    x = [str(v) for v in spec["x"]]
    series = spec["series"]
    k = len(series)
    width = 0.8 / max(k, 1)
    for s, (label, ys) in enumerate(series.items()):
        pos = [i + (s - (k - 1) / 2) * width for i in range(len(x))]
        ax.bar(pos, ys, width=width, label=label)
    ax.set_xticks(range(len(x)))
    ax.set_xticklabels(x, rotation=45 if len(x) > 6 else 0, ha="right" if len(x) > 6 else "center")
    if k > 1:
        ax.legend()


def _line(ax, spec):
    for label, ys in spec["series"].items():
        ax.plot(spec["x"], ys, marker="o", label=label)
    ax.set_xticks(spec["x"])
    ax.legend(fontsize="small")


def _grid(ax, spec):
    g = spec["grid"]                  # g[p][q]
    data = [[g[p][q] for p in range(len(g))] for q in range(len(g[0]))]
    im = ax.imshow(data, origin="lower", cmap="Blues")
    for q, row in enumerate(data):
        for p, v in enumerate(row):
            ax.text(p, q, str(v), ha="center", va="center")
    ax.figure.colorbar(im, ax=ax)


DRAW = {"bar": _bar, "line": _line, "grid": _grid}


def render(plots, out_dir, prefix):
    """One PNG per plot; returns the file paths."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    for name in sorted(plots):
        spec = plots[name]
        fig, ax = plt.subplots(figsize=(6, 4))
        DRAW[spec["kind"]](ax, spec)
        ax.set_title(spec.get("title", name))
        ax.set_xlabel(spec.get("xlabel", ""))
        ax.set_ylabel(spec.get("ylabel", ""))
        fig.tight_layout()
        path = out_dir / f"{prefix}-{name}.png"
        fig.savefig(path, dpi=100)
        plt.close(fig)
        paths.append(path)
    return paths
