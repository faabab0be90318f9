import logging
import re
from pathlib import Path
from typing import Optional, Union

import numpy as np

from spectral_sketch.core.exceptions import GraphFormatError, GraphValidationError
from spectral_sketch.models.graph import WeightedGraph

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

_VERTICES_HEADER = re.compile(r"^#\s*vertices\s*[:=]\s*(\d+)\s*$", re.IGNORECASE)


def parse_edge_list(text: str, n: Optional[int] = None) -> WeightedGraph:
    """Parse ``u v w`` lines; ``#`` starts a comment.

    The vertex count is ``n`` if given, else a ``# vertices: N`` header,
    else one more than the largest id.
    """
    us, vs, ws = [], [], []
    declared = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        header = _VERTICES_HEADER.match(line)
        if header:
            declared = int(header.group(1))
            continue
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise GraphFormatError(f"Line {lineno}: expected 'u v w', got {raw!r}")
        try:
            u, v, w = int(parts[0]), int(parts[1]), float(parts[2])
        except ValueError:
            raise GraphFormatError(f"Line {lineno}: cannot parse {raw!r}")
        us.append(u)
        vs.append(v)
        ws.append(w)
    if n is None:
        n = declared if declared is not None else (max(max(us), max(vs)) + 1 if us else 0)
    try:
        return WeightedGraph(n, us, vs, ws)
    except GraphValidationError as e:
        raise GraphFormatError(str(e))


def _read_utf8(path: PathLike) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise GraphFormatError(f"{path} is not valid UTF-8 text: {e.reason} at byte {e.start}")


def read_edge_list(path: PathLike, n: Optional[int] = None) -> WeightedGraph:
    g = parse_edge_list(_read_utf8(path), n=n)
    logger.info(f"Read graph with n={g.n}, m={g.m} from {path}")
    return g


def format_edge_list(g: WeightedGraph) -> str:
    lines = [f"# vertices: {g.n}"]
    lines.extend(f"{u} {v} {w!r}" for u, v, w in g.edges())
    return "\n".join(lines) + "\n"


def write_edge_list(g: WeightedGraph, path: PathLike) -> None:
    Path(path).write_text(format_edge_list(g), encoding="utf-8")


def parse_vector(text: str) -> np.ndarray:
    values = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            values.append(float(line))
        except ValueError:
            raise GraphFormatError(f"Line {lineno}: expected one real number, got {raw!r}")
    return np.asarray(values, dtype=np.float64)


def read_vector(path: PathLike) -> np.ndarray:
    return parse_vector(_read_utf8(path))


def write_vector(x, path: PathLike) -> None:
    Path(path).write_text("".join(f"{float(v)!r}\n" for v in np.asarray(x, dtype=np.float64)), encoding="utf-8")
