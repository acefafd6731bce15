"""Dataset and embedding containers plus the on-disk formats shared by the
CLI, the library, and the labeling frontend.

Two file formats are defined here and nowhere else:

* table CSV -- UTF-8, LF line endings, '.' decimal separator, mandatory
  header row.  Feature columns hold finite floats serialized with shortest
  round-trip precision; an optional class column (named ``label`` by
  default) holds arbitrary strings.

* projection bundle -- a single JSON document tying 2D coordinates to the
  per-point attribute values they were computed from::

      {
        "format_version": 1,
        "method": "...",
        "params": {...},
        "attribute_names": ["f0", ...],
        "attributes": [[...n floats...], ...],
        "coords": [[x, y], ...],
        "labels": ["a", null, ...]          # omitted when no labels exist
      }

  Row index i is the point identity across every artifact: attributes[i],
  coords[i], and labels[i] all describe the same observation.  A top-level
  ``source_checksum`` key (optional) records the checksum of the table the
  coordinates were computed from.

Label files (``row_index,label`` CSV) produced by the labeling frontend
are parsed here as well so the CLI can evaluate user-assigned classes.
"""

from __future__ import annotations

import csv
import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

BUNDLE_FORMAT_VERSION = 1
DEFAULT_LABEL_COLUMN = "label"


def _as_points(values, what: str = "points") -> np.ndarray:
    pts = np.asarray(values, dtype=np.float64)
    if pts.ndim != 2:
        raise ValueError(f"{what} must be a 2D array, got shape {pts.shape}")
    if pts.shape[0] < 1 or pts.shape[1] < 1:
        raise ValueError(f"{what} must have at least one row and one column")
    if not np.isfinite(pts).all():
        raise ValueError(f"{what} contain non-finite values (NaN or Inf)")
    return np.ascontiguousarray(pts)


@dataclass
class DataTable:
    """N x n numeric matrix with optional per-row class labels.

    ``points[i]`` and ``labels[i]`` describe observation i; that index is
    the point identity everywhere downstream (embeddings, bundles, label
    files).
    """

    points: np.ndarray
    labels: list[str] | None = None
    names: list[str] | None = None

    def __post_init__(self):
        self.points = _as_points(self.points)
        if self.labels is not None:
            self.labels = [str(v) for v in self.labels]
            if len(self.labels) != self.n_rows:
                raise ValueError(
                    f"expected {self.n_rows} labels, got {len(self.labels)}"
                )
        if self.names is not None:
            self.names = [str(v) for v in self.names]
            if len(self.names) != self.n_cols:
                raise ValueError(
                    f"expected {self.n_cols} column names, got {len(self.names)}"
                )

    @property
    def n_rows(self) -> int:
        return self.points.shape[0]

    @property
    def n_cols(self) -> int:
        return self.points.shape[1]

    def column_names(self) -> list[str]:
        """Declared names, or generated ``f0..f{n-1}`` placeholders."""
        if self.names is not None:
            return list(self.names)
        return [f"f{j}" for j in range(self.n_cols)]

    def with_points(self, points: np.ndarray, names: list[str] | None = None
                    ) -> "DataTable":
        """New table with replaced coordinates, same rows and labels."""
        pts = _as_points(points)
        if pts.shape[0] != self.n_rows:
            raise ValueError("row count must be preserved")
        labels = list(self.labels) if self.labels is not None else None
        return DataTable(pts, labels=labels, names=names)

    def checksum(self) -> str:
        """Content checksum; identical tables hash identically."""
        h = hashlib.sha256()
        h.update(f"{self.n_rows}x{self.n_cols}".encode())
        h.update(np.ascontiguousarray(self.points).tobytes())
        if self.labels is not None:
            h.update("\x1f".join(self.labels).encode())
        return h.hexdigest()


@dataclass
class Embedding:
    """N x s projected coordinates plus provenance metadata.

    Row i corresponds to row i of the source table (index-preserving map).
    """

    coords: np.ndarray
    method: str
    params: dict = field(default_factory=dict)
    source_checksum: str = ""

    def __post_init__(self):
        self.coords = _as_points(self.coords, what="coords")

    @property
    def n_rows(self) -> int:
        return self.coords.shape[0]

    @property
    def n_dims(self) -> int:
        return self.coords.shape[1]

    @classmethod
    def for_table(cls, table: DataTable, coords: np.ndarray, method: str,
                  params: dict | None = None) -> "Embedding":
        emb = cls(coords, method, dict(params or {}), table.checksum())
        if emb.n_rows != table.n_rows:
            raise ValueError(
                f"embedding has {emb.n_rows} rows but table has {table.n_rows}"
            )
        return emb


@dataclass
class LabelAssignment:
    """Sparse row-index -> class-label map; unassigned rows are permitted."""

    entries: dict[int, str] = field(default_factory=dict)

    def __post_init__(self):
        clean: dict[int, str] = {}
        for idx, label in self.entries.items():
            i = int(idx)
            if i < 0:
                raise ValueError(f"row index {i} is negative")
            clean[i] = str(label)
        self.entries = clean

    def validate_for(self, n_rows: int) -> None:
        bad = [i for i in self.entries if i >= n_rows]
        if bad:
            raise ValueError(
                f"label assignment references rows {sorted(bad)[:5]} "
                f"but the table has only {n_rows} rows"
            )

    def as_label_list(self, n_rows: int) -> list[str | None]:
        self.validate_for(n_rows)
        out: list[str | None] = [None] * n_rows
        for i, label in self.entries.items():
            out[i] = label
        return out


def format_float(x: float) -> str:
    """Shortest decimal string that round-trips to the same float64."""
    return repr(float(x))


# ---------------------------------------------------------------------------
# table CSV
# ---------------------------------------------------------------------------

def read_table(path, delimiter: str = ",",
               label_column: str = DEFAULT_LABEL_COLUMN) -> DataTable:
    """Parse a header-first CSV into a DataTable.

    A column whose header equals ``label_column`` is extracted as the class
    labels; every other column must parse as a float.
    """
    path = Path(path)
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh, delimiter=delimiter))
    rows = [r for r in rows if r]  # tolerate a trailing blank line
    if not rows:
        raise ValueError(f"{path}: empty file")
    header = [c.strip() for c in rows[0]]
    if len(rows) == 1:
        raise ValueError(f"{path}: header but no data rows")
    label_idx = header.index(label_column) if label_column in header else None
    feature_idx = [j for j in range(len(header)) if j != label_idx]
    if not feature_idx:
        raise ValueError(f"{path}: no feature columns besides the label column")

    points = np.empty((len(rows) - 1, len(feature_idx)), dtype=np.float64)
    labels: list[str] | None = [] if label_idx is not None else None
    for i, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise ValueError(
                f"{path}: line {i}: expected {len(header)} cells, got {len(row)}"
            )
        for out_j, j in enumerate(feature_idx):
            cell = row[j].strip()
            try:
                points[i - 2, out_j] = float(cell)
            except ValueError:
                raise ValueError(
                    f"{path}: line {i}, column '{header[j]}': "
                    f"non-numeric value {cell!r}"
                ) from None
        if labels is not None:
            labels.append(row[label_idx].strip())
    names = [header[j] for j in feature_idx]
    return DataTable(points, labels=labels, names=names)


def write_table(table: DataTable, path, delimiter: str = ",",
                label_column: str = DEFAULT_LABEL_COLUMN) -> None:
    """Write a DataTable as CSV (UTF-8, LF, shortest round-trip floats)."""
    path = Path(path)
    header = table.column_names()
    if table.labels is not None:
        header = header + [label_column]
    lines = [delimiter.join(header)]
    for i in range(table.n_rows):
        cells = [format_float(v) for v in table.points[i]]
        if table.labels is not None:
            cells.append(table.labels[i])
        lines.append(delimiter.join(cells))
    with open(path, "w", newline="\n", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# projection bundle
# ---------------------------------------------------------------------------

def write_bundle(table: DataTable, embedding: Embedding, path) -> None:
    """Serialize table attributes + embedding coords as one JSON bundle."""
    if embedding.n_rows != table.n_rows:
        raise ValueError(
            f"embedding has {embedding.n_rows} rows "
            f"but table has {table.n_rows}"
        )
    doc: dict = {
        "format_version": BUNDLE_FORMAT_VERSION,
        "method": embedding.method,
        "params": embedding.params,
        "attribute_names": table.column_names(),
        "attributes": [[float(v) for v in row] for row in table.points],
        "coords": [[float(v) for v in row] for row in embedding.coords],
    }
    if table.labels is not None:
        doc["labels"] = list(table.labels)
    if embedding.source_checksum:
        doc["source_checksum"] = embedding.source_checksum
    with open(path, "w", newline="\n", encoding="utf-8") as fh:
        json.dump(doc, fh, sort_keys=True, separators=(",", ":"))
        fh.write("\n")


def read_bundle(path) -> tuple[DataTable, Embedding, list[str | None] | None]:
    """Read a projection bundle back into (table, embedding, labels).

    Per-point null labels are allowed (a partially labeled bundle); the
    returned table carries labels only when every point has one, since a
    DataTable is all-or-none about labels.  The raw per-point list is the
    third element either way.
    """
    path = Path(path)
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: malformed bundle JSON ({exc})") from None
    if not isinstance(doc, dict):
        raise ValueError(f"{path}: bundle must be a JSON object")
    for key in ("format_version", "method", "attribute_names", "attributes",
                "coords"):
        if key not in doc:
            raise ValueError(f"{path}: bundle is missing required key '{key}'")
    if doc["format_version"] != BUNDLE_FORMAT_VERSION:
        raise ValueError(
            f"{path}: unsupported bundle format_version {doc['format_version']}"
        )
    labels = doc.get("labels")
    if labels is not None:
        labels = [None if v is None else str(v) for v in labels]
        if len(labels) != len(doc["coords"]):
            raise ValueError(
                f"{path}: bundle has {len(labels)} labels for "
                f"{len(doc['coords'])} points"
            )
    complete = labels if labels is not None and None not in labels else None
    table = DataTable(np.asarray(doc["attributes"], dtype=np.float64),
                      labels=complete,
                      names=[str(v) for v in doc["attribute_names"]])
    embedding = Embedding(np.asarray(doc["coords"], dtype=np.float64),
                          method=str(doc["method"]),
                          params=dict(doc.get("params") or {}),
                          source_checksum=str(doc.get("source_checksum", "")))
    if embedding.n_rows != table.n_rows:
        raise ValueError(
            f"{path}: bundle coords have {embedding.n_rows} rows but "
            f"attributes have {table.n_rows}"
        )
    return table, embedding, labels


# ---------------------------------------------------------------------------
# label CSV (frontend exchange)
# ---------------------------------------------------------------------------

def read_label_csv(path) -> LabelAssignment:
    """Parse a ``row_index,label`` CSV; empty label fields mean unassigned."""
    path = Path(path)
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    rows = [r for r in rows if r]
    if not rows:
        raise ValueError(f"{path}: empty label file")
    header = [c.strip() for c in rows[0]]
    if header[:2] != ["row_index", "label"]:
        raise ValueError(
            f"{path}: expected header 'row_index,label', got {','.join(header)}"
        )
    entries: dict[int, str] = {}
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) < 1:
            continue
        idx_cell = row[0].strip()
        label = row[1].strip() if len(row) > 1 else ""
        try:
            idx = int(idx_cell)
        except ValueError:
            raise ValueError(
                f"{path}: line {lineno}: non-integer row index {idx_cell!r}"
            ) from None
        if not label:
            continue
        if idx in entries:
            raise ValueError(f"{path}: line {lineno}: duplicate row index {idx}")
        entries[idx] = label
    return LabelAssignment(entries)


def write_label_csv(assignment: LabelAssignment, path,
                    n_rows: int | None = None) -> None:
    """Write a ``row_index,label`` CSV.

    With ``n_rows`` every row is listed (empty label = unassigned), which is
    the frontend's export shape; otherwise only assigned rows appear.
    """
    lines = ["row_index,label"]
    if n_rows is not None:
        assignment.validate_for(n_rows)
        for i in range(n_rows):
            lines.append(f"{i},{assignment.entries.get(i, '')}")
    else:
        for i in sorted(assignment.entries):
            lines.append(f"{i},{assignment.entries[i]}")
    with open(path, "w", newline="\n", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
