"""Sampled spectra with axis metadata and deterministic CSV/JSON output.

Floats are always written with 12 significant digits so identical inputs
produce byte-identical files. Metadata rides along as ``#``-prefixed
``key = value`` comment lines in CSV and as a plain object in JSON.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError


def format_float(value: float) -> str:
    """Render a float with 12 significant digits."""
    return f"{value:.11e}"


def _is_complex(arr: np.ndarray) -> bool:
    return np.iscomplexobj(arr)


@dataclass
class SpectrumSeries:
    """A sampled function of one real axis with named value columns.

    The axis must be strictly increasing and every value finite. Columns
    may be real or complex; complex columns are expanded to ``_re``/``_im``
    pairs on output.
    """

    axis_name: str
    axis_unit: str
    x: np.ndarray
    columns: dict[str, np.ndarray]
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self.x = np.asarray(self.x, dtype=float)
        if self.x.ndim != 1 or self.x.size == 0:
            raise DomainError("axis must be a non-empty 1-d array")
        if np.any(np.diff(self.x) <= 0):
            raise DomainError("axis values must be strictly increasing")
        if not np.all(np.isfinite(self.x)):
            raise DomainError("axis values must be finite")
        converted = {}
        for name, col in self.columns.items():
            arr = np.asarray(col)
            if arr.shape != self.x.shape:
                raise DomainError(f"column {name!r} does not match the axis length")
            if not np.all(np.isfinite(arr)):
                raise DomainError(f"column {name!r} contains non-finite values")
            converted[name] = arr
        self.columns = converted

    def _flat_columns(self) -> list[tuple[str, np.ndarray]]:
        flat = []
        for name, col in self.columns.items():
            if _is_complex(col):
                flat.append((f"{name}_re", col.real))
                flat.append((f"{name}_im", col.imag))
            else:
                flat.append((name, col.astype(float)))
        return flat

    def _metadata_items(self) -> list[tuple[str, str]]:
        items = [("axis_unit", self.axis_unit)]
        for key, value in self.metadata.items():
            if isinstance(value, float):
                items.append((key, format_float(value)))
            else:
                items.append((key, str(value)))
        return items

    def to_csv(self, path) -> None:
        flat = self._flat_columns()
        lines = [f"# {key} = {value}" for key, value in self._metadata_items()]
        lines.append(",".join([self.axis_name] + [name for name, _ in flat]))
        for i in range(self.x.size):
            row = [format_float(self.x[i])]
            row.extend(format_float(col[i]) for _, col in flat)
            lines.append(",".join(row))
        with open(path, "w") as handle:
            handle.write("\n".join(lines) + "\n")

    def to_json(self, path) -> None:
        flat = self._flat_columns()

        def rounded(v: float) -> float:
            return float(format_float(v))

        payload = {
            "axis": {"name": self.axis_name, "unit": self.axis_unit},
            "metadata": {key: value for key, value in self._metadata_items()},
            "columns": [self.axis_name] + [name for name, _ in flat],
            "data": [
                [rounded(self.x[i])] + [rounded(col[i]) for _, col in flat]
                for i in range(self.x.size)
            ],
        }
        with open(path, "w") as handle:
            json.dump(payload, handle, indent=1, sort_keys=True)
            handle.write("\n")

    def write(self, path, fmt: str = "csv") -> None:
        if fmt == "csv":
            self.to_csv(path)
        elif fmt == "json":
            self.to_json(path)
        else:
            raise DomainError(f"unknown output format {fmt!r}")
