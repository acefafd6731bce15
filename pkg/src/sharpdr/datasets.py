"""Loaders for the two vendored benchmark data sets.

Each data set ships as a fixture file in the upstream's native text format
(no header, class column last): WiFi indoor-localization signal strengths
(tab-separated, 2000 x 7, four rooms) and banknote-authentication wavelet
features (comma-separated, 1327 x 4, two classes).  Loading validates the
shape and class count against the descriptor and, for the vendored file,
its checksum.  A user-supplied file in the same native format can be
loaded via ``path=`` and is validated for shape only.

The fixture files are deterministic synthetic stand-ins generated by
``tools/make_fixtures.py`` (this build environment has no network access);
they reproduce the originals' documented traits.  See README.md.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from .dataio import DataTable


@dataclass(frozen=True)
class DatasetDescriptor:
    id: str
    n_rows: int
    n_cols: int
    class_count: int
    source_url: str
    sha256: str
    filename: str
    delimiter: str | None  # None = any whitespace


DESCRIPTORS: dict[str, DatasetDescriptor] = {
    "wifi": DatasetDescriptor(
        id="wifi",
        n_rows=2000,
        n_cols=7,
        class_count=4,
        source_url=("https://archive.ics.uci.edu/dataset/422/"
                    "wireless+indoor+localization"),
        sha256="f8de21853188338ff2b14682a901661a2e20d0559420ffb6ae419add3698b90d",
        filename="wifi_localization.txt",
        delimiter=None,
    ),
    "banknote": DatasetDescriptor(
        id="banknote",
        n_rows=1327,
        n_cols=4,
        class_count=2,
        source_url=("https://archive.ics.uci.edu/dataset/267/"
                    "banknote+authentication"),
        sha256="211c6dac83f97b9ffbfe7f6e6b11de68e92d0d2622e22871784c258f8656f660",
        filename="banknote_authentication.txt",
        delimiter=",",
    ),
}


def dataset_ids() -> list[str]:
    return sorted(DESCRIPTORS)


def _fixture_path(desc: DatasetDescriptor) -> Path:
    return Path(resources.files("sharpdr").joinpath("fixtures", desc.filename))


def _parse_native(text: str, desc: DatasetDescriptor, origin: str) -> DataTable:
    points_rows: list[list[float]] = []
    labels: list[str] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        cells = line.split(desc.delimiter) if desc.delimiter else line.split()
        if len(cells) != desc.n_cols + 1:
            raise ValueError(
                f"{origin}: line {lineno}: expected {desc.n_cols + 1} "
                f"columns, found {len(cells)}"
            )
        try:
            points_rows.append([float(c) for c in cells[:-1]])
        except ValueError:
            raise ValueError(
                f"{origin}: line {lineno}: non-numeric feature value"
            ) from None
        labels.append(cells[-1].strip())
    if not points_rows:
        raise ValueError(f"{origin}: no data rows")
    names = [f"{desc.id}_f{j}" for j in range(desc.n_cols)]
    return DataTable(np.asarray(points_rows), labels=labels, names=names)


def load_dataset(dataset_id: str, path=None) -> DataTable:
    """Load a benchmark data set and validate it against its descriptor.

    Shape or class-count mismatches raise with expected vs. found values;
    the vendored fixture is additionally checksum-verified.
    """
    if dataset_id not in DESCRIPTORS:
        raise ValueError(
            f"unknown dataset '{dataset_id}', expected one of {dataset_ids()}"
        )
    desc = DESCRIPTORS[dataset_id]
    if path is None:
        source = _fixture_path(desc)
        raw = source.read_bytes()
        digest = hashlib.sha256(raw).hexdigest()
        if digest != desc.sha256:
            raise ValueError(
                f"{source}: checksum mismatch: expected {desc.sha256}, "
                f"found {digest}"
            )
    else:
        source = Path(path)
        raw = source.read_bytes()
    table = _parse_native(raw.decode("utf-8"), desc, str(source))
    if table.n_rows != desc.n_rows or table.n_cols != desc.n_cols:
        raise ValueError(
            f"{source}: shape mismatch: expected "
            f"{desc.n_rows}x{desc.n_cols}, found "
            f"{table.n_rows}x{table.n_cols}"
        )
    found_classes = len(set(table.labels or []))
    if found_classes != desc.class_count:
        raise ValueError(
            f"{source}: class-count mismatch: expected {desc.class_count}, "
            f"found {found_classes}"
        )
    return table
