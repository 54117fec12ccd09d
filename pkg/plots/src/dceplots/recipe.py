"""Figure recipes over dcesim CSV files: validated loading and rendering.

Each recipe names its input CSVs, which column of each file becomes which
curve, the axis labels, and the expected curve count. Rendering is
strictly read-only over the CSVs and deterministic: fixed style, fixed
canvas, no timestamps in the output metadata.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

STYLE = {
    "figure.figsize": (6.4, 4.2),
    "figure.dpi": 120,
    "savefig.dpi": 120,
    "font.size": 9,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "svg.hashsalt": "dceplots",
}


class RecipeError(RuntimeError):
    """A recipe's inputs are missing or malformed."""


@dataclass(frozen=True)
class Curve:
    """One plotted line: a column of one input file."""

    file_index: int
    column: str
    label: str
    style: dict = field(default_factory=dict)


@dataclass(frozen=True)
class FigureRecipe:
    """Declarative description of one figure."""

    figure_id: str
    csv_paths: tuple[str, ...]
    curves: tuple[Curve, ...]
    x_label: str
    y_label: str
    title: str = ""
    log_y: bool = False
    normalized_axis: bool = True

    @property
    def expected_curve_count(self) -> int:
        return len(self.curves)


def read_csv(path) -> tuple[dict, dict[str, np.ndarray]]:
    """Load one dcesim CSV into metadata and named columns."""
    path = Path(path)
    if not path.exists():
        raise RecipeError(f"input CSV does not exist: {path}")
    metadata: dict = {}
    header: list[str] | None = None
    rows: list[list[float]] = []
    for lineno, line in enumerate(path.read_text().splitlines(), start=1):
        if line.startswith("#"):
            key, _, value = line[1:].partition("=")
            metadata[key.strip()] = value.strip()
            continue
        if header is None:
            header = [name.strip() for name in line.split(",")]
            continue
        parts = line.split(",")
        if len(parts) != len(header):
            raise RecipeError(f"{path}:{lineno}: expected {len(header)} fields")
        try:
            rows.append([float(v) for v in parts])
        except ValueError:
            raise RecipeError(f"{path}:{lineno}: non-numeric value") from None
    if header is None or not rows:
        raise RecipeError(f"{path}: no data rows")
    table = np.array(rows)
    return metadata, {name: table[:, i] for i, name in enumerate(header)}


def render(recipe: FigureRecipe, out_path) -> Path:
    """Render one recipe to an image file (format from the extension)."""
    loaded = []
    for path in recipe.csv_paths:
        metadata, columns = read_csv(path)
        loaded.append((path, metadata, columns))

    for curve in recipe.curves:
        path, _, columns = loaded[curve.file_index]
        if curve.column not in columns:
            raise RecipeError(
                f"{path}: missing column {curve.column!r}; "
                f"available: {sorted(columns)}"
            )

    out_path = Path(out_path)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        for curve in recipe.curves:
            _, _, columns = loaded[curve.file_index]
            axis_name = next(iter(columns))
            ax.plot(
                columns[axis_name],
                columns[curve.column],
                label=curve.label,
                **curve.style,
            )
        if recipe.log_y:
            ax.set_yscale("log")
        ax.set_xlabel(recipe.x_label)
        ax.set_ylabel(recipe.y_label)
        if recipe.title:
            ax.set_title(recipe.title)
        ax.legend(fontsize=7)
        fig.tight_layout()
        fig.savefig(out_path, metadata=_fixed_metadata(out_path))
        plt.close(fig)
    return out_path


def _fixed_metadata(path: Path) -> dict:
    # Keep output bytes independent of render time.
    suffix = path.suffix.lower()
    if suffix == ".png":
        return {"Software": "dceplots"}
    if suffix == ".svg":
        return {"Date": None, "Creator": "dceplots"}
    return {}
