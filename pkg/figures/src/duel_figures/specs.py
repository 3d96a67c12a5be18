"""Figure specifications and CSV schema checks.

Each figure kind consumes one published CSV schema from the simulation
package. Rendering is read-only over the CSVs and never recomputes
model quantities.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import pandas as pd

KINDS = ("level_curves", "heatmap", "surface", "contour", "timeseries",
         "best_response")

REQUIRED_COLUMNS = {
    "level_curves": ["info", "level"],
    "heatmap": ["beta1", "beta2", "a_over_ab"],
    "surface": ["beta1", "beta2"],
    "contour": ["beta1", "beta2"],
    "timeseries": ["t", "S", "A", "B", "AB", "a", "b"],
    "best_response": ["opponent_pos", "lo", "hi", "lo_open", "hi_open",
                      "undefined"],
}


class SchemaError(ValueError):
    """The input CSV does not carry a column the figure kind needs."""

    def __init__(self, column: str, path, kind: str):
        self.column = column
        super().__init__(
            f"column {column!r} missing from {path} (required by kind {kind!r})")


@dataclass
class FigureSpec:
    kind: str
    input_path: Path
    output_path: Path
    xlabel: str | None = None
    ylabel: str | None = None
    title: str | None = None
    column: str | None = None   # surface: value column; level_curves: metric
    style: str | None = None    # optional matplotlib style file

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown figure kind {self.kind!r}; "
                             f"expected one of {', '.join(KINDS)}")
        self.input_path = Path(self.input_path)
        self.output_path = Path(self.output_path)


def load_table(spec: FigureSpec) -> pd.DataFrame:
    """Read the CSV and verify every column the kind requires."""
    df = pd.read_csv(spec.input_path)
    required = list(REQUIRED_COLUMNS[spec.kind])
    if spec.kind == "surface":
        required.append(spec.column or "a")
    if spec.kind == "level_curves":
        metric = spec.column or "supporter"
        required.append(f"mu_{metric}_mean")
    for col in required:
        if col not in df.columns:
            raise SchemaError(col, spec.input_path, spec.kind)
    return df
