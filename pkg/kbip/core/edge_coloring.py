#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Edge-coloring data type shared by the constructions and the verifier.

An EdgeColoring of K_{n,n} is an n x n integer array: colors[u, v] is the
color of the edge from top vertex u to bottom vertex v, -1 when uncolored.
The certificate codec reads and writes the JSON form

    {"n": .., "num_colors": .., "construction": .., "p": .., "x": ..,
     "edges": [[u, v, color], ...]}

with edges sorted by (u, v).
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional

import numpy as np

from ..config import CertificateError, ColoringError, Config
from ..utils.file_io import read_json, write_json

logger = logging.getLogger(__name__)

UNCOLORED = -1


@dataclass(frozen=True, eq=False)
class EdgeColoring:
    """
    Coloring of the n^2 edges of K_{n,n} with colors 0..num_colors-1.

    Attributes:
        n: Side size
        num_colors: Size of the palette
        colors: Read-only n x n array, UNCOLORED for missing edges
        construction: Name of the producing construction
        p: Prime of the construction, when there is one
        x: Generator of the construction, when there is one
    """

    n: int
    num_colors: int
    colors: np.ndarray
    construction: str = "custom"
    p: Optional[int] = None
    x: Optional[int] = None

    def __post_init__(self):
        colors = np.array(self.colors, dtype=np.int32, copy=True)
        if colors.shape != (self.n, self.n):
            raise ColoringError(f"Color array has shape {colors.shape}, expected ({self.n}, {self.n})",
                                construction=self.construction)
        if colors.size and (colors.min() < UNCOLORED or colors.max() >= self.num_colors):
            raise ColoringError(f"Colors must lie in 0..{self.num_colors - 1}", construction=self.construction)
        colors.setflags(write=False)
        object.__setattr__(self, "colors", colors)

    def color(self, u: int, v: int) -> int:
        return int(self.colors[u, v])

    def is_total(self) -> bool:
        return bool(np.all(self.colors != UNCOLORED))

    @property
    def edge_count(self) -> int:
        return int(np.count_nonzero(self.colors != UNCOLORED))

    def to_certificate(self) -> Dict[str, Any]:
        """JSON certificate with a fixed field order and edges sorted by (u, v)."""
        payload: Dict[str, Any] = {
            "n": self.n,
            "num_colors": self.num_colors,
            "construction": self.construction,
        }
        if self.p is not None:
            payload["p"] = self.p
        if self.x is not None:
            payload["x"] = self.x
        us, vs = np.nonzero(self.colors != UNCOLORED)
        payload["edges"] = [[int(u), int(v), int(self.colors[u, v])] for u, v in zip(us, vs)]
        return payload

    def __eq__(self, other) -> bool:
        if not isinstance(other, EdgeColoring):
            return NotImplemented
        return (self.n, self.num_colors) == (other.n, other.num_colors) and \
            bool(np.array_equal(self.colors, other.colors))

    __hash__ = None


def _is_int(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def _reject(message: str, filename: Optional[str]) -> CertificateError:
    logger.error(message)
    return CertificateError(message, filename=filename)


def from_certificate(payload: Dict[str, Any], filename: Optional[str] = None) -> EdgeColoring:
    """
    Decode a certificate.

    Values are taken as written: n, num_colors and every edge component must
    be JSON integers, and each edge must be a three-element list. Nothing is
    rounded or converted.

    Args:
        payload: Parsed JSON certificate
        filename: Source path, used in error messages

    Returns:
        EdgeColoring with UNCOLORED for edges the certificate omits

    Raises:
        CertificateError: If fields are missing or mistyped, n exceeds
            Config.MAX_SIDE, num_colors exceeds n^2 + 2, or edges repeat or
            fall outside the graph
    """
    if not isinstance(payload, dict):
        raise _reject("Certificate root must be an object", filename)
    missing = [key for key in ("n", "num_colors", "edges") if key not in payload]
    if missing:
        raise _reject(f"Certificate is missing required field(s): {', '.join(missing)}", filename)

    n, num_colors, edges = payload["n"], payload["num_colors"], payload["edges"]
    for key in ("n", "num_colors"):
        if not _is_int(payload[key]):
            raise _reject(f"Field {key!r} must be an integer, got {payload[key]!r}", filename)
    for key in ("p", "x"):
        if payload.get(key) is not None and not _is_int(payload[key]):
            raise _reject(f"Field {key!r} must be an integer, got {payload[key]!r}", filename)
    if not isinstance(edges, list):
        raise _reject(f"Field 'edges' must be a list, got {type(edges).__name__}", filename)

    max_side = Config.get_instance().MAX_SIDE
    if not 1 <= n <= max_side:
        raise _reject(f"n={n} outside 1..{max_side}", filename)
    # A proper coloring never needs more than n^2 colors
    if not 1 <= num_colors <= n * n + 2:
        raise _reject(f"num_colors={num_colors} outside 1..{n * n + 2}", filename)

    colors = np.full((n, n), UNCOLORED, dtype=np.int32)
    for entry in edges:
        if not (isinstance(entry, list) and len(entry) == 3 and all(_is_int(value) for value in entry)):
            raise _reject(f"Malformed edge entry {entry!r}", filename)
        u, v, c = entry
        if not (0 <= u < n and 0 <= v < n and 0 <= c < num_colors):
            raise _reject(f"Edge entry {entry!r} out of range", filename)
        if colors[u, v] != UNCOLORED:
            raise _reject(f"Edge ({u},{v}) listed twice", filename)
        colors[u, v] = c

    return EdgeColoring(
        n=n,
        num_colors=num_colors,
        colors=colors,
        construction=str(payload.get("construction", "custom")),
        p=payload.get("p"),
        x=payload.get("x"),
    )


def write_certificate(coloring: EdgeColoring, path: str) -> str:
    """Write the certificate of a coloring to path."""
    logger.debug(f"Writing certificate for n={coloring.n} to {path}")
    return write_json(path, coloring.to_certificate())


def read_certificate(path: str) -> EdgeColoring:
    """Read and decode a certificate file."""
    return from_certificate(read_json(path), filename=path)
