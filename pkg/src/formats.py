"""File formats: channel/codebook JSON in, region/table CSV and verdict JSON out."""

import json
from pathlib import Path
from typing import Any, Iterable, Sequence

import numpy as np

from .codebook_symmetry import Codebook
from .dmc import ChannelTriple
from .exceptions import ToolkitError
from .region import RateRegion

SIGNIFICANT_DIGITS = 12


def format_number(x: float) -> str:
    """12 significant digits, no negative zero."""
    text = f"{float(x):.{SIGNIFICANT_DIGITS}g}"
    return "0" if text == "-0" else text


def table_to_csv(header: Sequence[str], rows: Iterable[Sequence[float]]) -> str:
    """CSV text with a header row and LF line endings."""
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(format_number(v) for v in row))
    return "\n".join(lines) + "\n"


def region_to_csv(region: RateRegion) -> str:
    """One row per boundary vertex, columns R0,R1."""
    return table_to_csv(("R0", "R1"), region.rows())


def _json_default(obj: Any):
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (np.floating, np.bool_)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"not JSON serializable: {type(obj).__name__}")


def to_json(doc: dict) -> str:
    """Pretty-printed JSON with sorted keys and a trailing newline."""
    return json.dumps(doc, indent=2, sort_keys=True, default=_json_default) + "\n"


def write_text(path: str | Path, text: str) -> Path:
    """Write text with LF line endings, creating parent directories."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)
    return path


def read_json(path: str | Path) -> Any:
    """Parse a JSON file.

    Raises:
        OSError: If the file cannot be read.
        ToolkitError: If the content is not valid JSON.
    """
    with open(path, encoding="utf-8") as f:
        try:
            return json.load(f)
        except json.JSONDecodeError as e:
            raise ToolkitError(f"invalid JSON in {path}: {e}") from e


def load_channel(path: str | Path) -> ChannelTriple:
    """Channel triple from {"y1": [[...]], "y2": [[...]], "y3": [[...]]}."""
    return ChannelTriple.from_dict(read_json(path))


def load_codebook(path: str | Path) -> Codebook:
    """Base codebook from {"n": ..., "codewords": {...}, "decoders": {...}}."""
    return Codebook.from_dict(read_json(path))
