import json
from pathlib import Path
from typing import Any

import polars as pl

SIGNIFICANT_DIGITS = 17


def format_float(value: float) -> str:
    """Render a float with a fixed number of significant digits."""
    return format(value, f".{SIGNIFICANT_DIGITS}g")


def stringify_floats(df: pl.DataFrame) -> pl.DataFrame:
    """
    Replace every float column by its fixed-precision text rendering.

    polars only offers a fixed number of decimals on write, which loses
    significance for small populations, hence the manual formatting.
    """

    float_columns = [name for name, dtype in df.schema.items() if dtype.is_float()]
    return df.with_columns(
        pl.col(name).map_elements(format_float, return_dtype=pl.String)
        for name in float_columns
    )


def write_csv(df: pl.DataFrame, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    stringify_floats(df).write_csv(path, line_terminator="\n", quote_style="never")
    return path


def write_metadata(metadata: dict[str, Any], path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    text = json.dumps(metadata, indent=2, sort_keys=True, ensure_ascii=False)
    path.write_text(text + "\n", encoding="utf-8", newline="\n")
    return path
