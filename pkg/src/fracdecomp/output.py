"""Deterministic CSV output: `#` comment header with the run configuration,
named columns at 10 significant digits, footer comments for summary values.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

__all__ = ["CsvTable", "format_value"]


def format_value(v: float) -> str:
    return f"{v:.10g}"


@dataclass
class CsvTable:
    """Column-oriented table with comment header and footer lines."""

    header: list[str] = field(default_factory=list)
    columns: dict[str, np.ndarray] = field(default_factory=dict)
    footer: list[str] = field(default_factory=list)

    def add_header(self, key: str, value) -> None:
        self.header.append(f"{key} = {value}")

    def add_column(self, name: str, values) -> None:
        values = np.asarray(values, dtype=float)
        if self.columns:
            first = next(iter(self.columns.values()))
            if values.shape != first.shape:
                raise ValueError(
                    f"column {name!r} has {values.shape}, table has {first.shape}"
                )
        self.columns[name] = values

    def add_footer(self, key: str, value) -> None:
        if isinstance(value, float):
            value = format_value(value)
        self.footer.append(f"{key} = {value}")

    def render(self) -> str:
        lines = [f"# {h}" for h in self.header]
        names = list(self.columns)
        lines.append(",".join(names))
        if names:
            data = np.column_stack([self.columns[n] for n in names])
            for row in data:
                lines.append(",".join(format_value(v) for v in row))
        lines.extend(f"# {f}" for f in self.footer)
        return "\n".join(lines) + "\n"

    def write(self, path: str | Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.render(), encoding="ascii")
        return path
