"""Lossless loading of spanning-set export files.

The export file is the single source of truth: this module never rebuilds
matrices from the diagram strings, it only carries them as provenance.
Integer entries are preserved exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

SUPPORTED_FORMAT_VERSION = 1


class ExportFormatError(ValueError):
    """The file is not a readable spanning-set export."""


@dataclass(frozen=True, eq=False)
class LoadedElement:
    """One spanning element as a sparse operator (1-based COO, exact ints)."""

    shape: tuple[int, int]
    rows: np.ndarray = field(repr=False)
    cols: np.ndarray = field(repr=False)
    vals: np.ndarray = field(repr=False)
    kind: str = ""
    diagram: str = ""
    feature: tuple[int, int] | None = None

    @property
    def nnz(self) -> int:
        return len(self.vals)

    def to_dense(self) -> np.ndarray:
        out = np.zeros(self.shape, dtype=np.int64)
        out[self.rows - 1, self.cols - 1] = self.vals
        return out

    def apply(self, x: np.ndarray) -> np.ndarray:
        out = np.zeros(x.shape[:-1] + (self.shape[0],))
        np.add.at(out, (..., self.rows - 1), self.vals * x[..., self.cols - 1])
        return out


@dataclass(frozen=True)
class LoadedSpanningSet:
    """Export-file metadata plus its elements, exactly as stored."""

    group: str | tuple[str, ...]
    n: int | tuple[int, ...]
    k: int | tuple[int, ...]
    l: int | tuple[int, ...]
    d_k: int
    d_l: int
    out_dim: int
    in_dim: int
    ordering: str
    elements: tuple[LoadedElement, ...]

    def __len__(self) -> int:
        return len(self.elements)


def _meta(value):
    return tuple(value) if isinstance(value, list) else value


def load(path) -> LoadedSpanningSet:
    """Parse an export file; raises ExportFormatError on any defect."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ExportFormatError(f"cannot parse {path}: {exc}") from exc
    try:
        version = data["format_version"]
        if version != SUPPORTED_FORMAT_VERSION:
            raise ExportFormatError(f"unsupported format_version {version!r}")
        out_dim, in_dim = int(data["rows"]), int(data["cols"])
        elements = []
        for item in data["elements"]:
            entries = item["entries"]
            rows = np.array([e[0] for e in entries], dtype=np.int64)
            cols = np.array([e[1] for e in entries], dtype=np.int64)
            vals = np.array([e[2] for e in entries], dtype=np.int64)
            if len(rows) and (rows.min() < 1 or rows.max() > out_dim
                              or cols.min() < 1 or cols.max() > in_dim):
                raise ExportFormatError("entry index out of declared shape")
            feature = tuple(item["feature"]) if "feature" in item else None
            elements.append(LoadedElement(shape=(out_dim, in_dim), rows=rows,
                                          cols=cols, vals=vals,
                                          kind=item["kind"],
                                          diagram=item["diagram"],
                                          feature=feature))
        return LoadedSpanningSet(
            group=_meta(data["group"]), n=_meta(data["n"]),
            k=_meta(data["k"]), l=_meta(data["l"]),
            d_k=int(data["d_k"]), d_l=int(data["d_l"]),
            out_dim=out_dim, in_dim=in_dim,
            ordering=data.get("ordering", ""),
            elements=tuple(elements),
        )
    except ExportFormatError:
        raise
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise ExportFormatError(f"malformed export {path}: {exc}") from exc
