"""Dataset containers and file formats.

A dataset is a frequency grid plus named groups of FRF samples and
free-form string metadata.  Two on-disk formats are supported:

CSV (one table, text)::

    # condition=eyes-closed          <- optional metadata lines
    freq_hz,re_0,im_0,re_1,im_1
    22.0,0.05,,0.15,                 <- sample rate, frequencies in re cells
    control,1.0,0.5,0.3,-0.2         <- group name, then re/im pairs
    control,0.9,0.6,0.2,-0.1

An empty sample-rate cell means "use the default of ten times the
highest frequency".

JSON::

    {"frequencies": [...], "sample_rate": 22.0,
     "groups": {"control": [[[re, im], ...], ...]},
     "metadata": {...}}

Numbers are written with full repr precision so a save/load roundtrip
reproduces the dataset bit for bit.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import ParseError
from .grid import FrequencyGrid, derive_grid
from .pir import FRF, FRFSet

FORMATS = ("csv", "json")


@dataclass(frozen=True)
class Dataset:
    grid: FrequencyGrid
    groups: dict[str, FRFSet]
    metadata: dict[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.groups:
            raise ValueError("dataset needs at least one group")
        for name, frf_set in self.groups.items():
            if not name:
                raise ValueError("group names must be non-empty")
            if frf_set.m != self.grid.m:
                raise ValueError(
                    f"group {name!r} has {frf_set.m} components but the grid "
                    f"has {self.grid.m} frequencies"
                )

    def group(self, name: str) -> FRFSet:
        try:
            return self.groups[name]
        except KeyError:
            known = ", ".join(sorted(self.groups))
            raise KeyError(f"no group {name!r} in dataset (have: {known})") from None


def _infer_format(path: Path, format: str | None) -> str:
    if format is not None:
        if format not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}")
        return format
    suffix = path.suffix.lower().lstrip(".")
    if suffix in FORMATS:
        return suffix
    raise ValueError(f"cannot infer format from {path.name!r}; pass format=")


def _parse_float(cell: str, where: str) -> float:
    try:
        return float(cell)
    except ValueError:
        raise ParseError(f"{where}: {cell!r} is not a number") from None


def _load_csv(path: Path) -> Dataset:
    metadata: dict[str, str] = {}
    table: list[tuple[int, list[str]]] = []
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, sep, value = line.lstrip("#").partition("=")
            if not sep:
                raise ParseError(f"{path.name} line {lineno}: metadata needs key=value")
            metadata[key.strip()] = value.strip()
            continue
        table.append((lineno, [cell.strip() for cell in raw.split(",")]))

    if len(table) < 3:
        raise ParseError(f"{path.name}: need a header, a frequency row, and samples")
    (_, header), (freq_line, freq_row), *samples = table
    if header[0] != "freq_hz" or len(header) < 3 or len(header) % 2 == 0:
        raise ParseError(f"{path.name}: header must be freq_hz,re_0,im_0,...")
    m = (len(header) - 1) // 2
    if len(freq_row) != len(header):
        raise ParseError(
            f"{path.name} line {freq_line}: frequency row has {len(freq_row)} "
            f"cells, expected {len(header)}"
        )
    rate = None
    if freq_row[0]:
        rate = _parse_float(freq_row[0], f"{path.name} line {freq_line}")
    freqs = [
        _parse_float(freq_row[1 + 2 * k], f"{path.name} line {freq_line}")
        for k in range(m)
    ]

    grouped: dict[str, list[np.ndarray]] = {}
    for lineno, row in samples:
        where = f"{path.name} line {lineno}"
        if len(row) != len(header):
            raise ParseError(
                f"{where}: sample row has {len(row)} cells, expected {len(header)}"
            )
        name = row[0]
        if not name:
            raise ParseError(f"{where}: sample row has an empty group name")
        values = np.array(
            [
                _parse_float(row[1 + 2 * k], where)
                + 1j * _parse_float(row[2 + 2 * k], where)
                for k in range(m)
            ]
        )
        grouped.setdefault(name, []).append(values)

    grid = derive_grid(freqs, rate)
    groups = {name: FRFSet(np.stack(rows)) for name, rows in grouped.items()}
    return Dataset(grid=grid, groups=groups, metadata=metadata)


def _load_json(path: Path) -> Dataset:
    try:
        doc = json.loads(path.read_text())
    except json.JSONDecodeError as err:
        raise ParseError(f"{path.name}: {err}") from None
    if not isinstance(doc, dict) or "frequencies" not in doc or "groups" not in doc:
        raise ParseError(f"{path.name}: need an object with frequencies and groups")
    grid = derive_grid(doc["frequencies"], doc.get("sample_rate"))
    groups = {}
    for name, samples in doc["groups"].items():
        rows = []
        for i, sample in enumerate(samples):
            if len(sample) != grid.m or any(len(pair) != 2 for pair in sample):
                raise ParseError(
                    f"{path.name}: group {name!r} sample {i} is not a list of "
                    f"{grid.m} [re, im] pairs"
                )
            rows.append([complex(re, im) for re, im in sample])
        if not rows:
            raise ParseError(f"{path.name}: group {name!r} has no samples")
        groups[name] = FRFSet(np.array(rows))
    metadata = {str(k): str(v) for k, v in doc.get("metadata", {}).items()}
    return Dataset(grid=grid, groups=groups, metadata=metadata)


def load_dataset(path, format: str | None = None) -> Dataset:
    """Read a dataset from a CSV or JSON file (format inferred by suffix)."""
    path = Path(path)
    if _infer_format(path, format) == "csv":
        return _load_csv(path)
    return _load_json(path)


def _save_csv(dataset: Dataset, path: Path) -> None:
    for name in dataset.groups:
        if "," in name or "\n" in name or name.startswith("#"):
            raise ValueError(f"group name {name!r} cannot be stored in CSV")
    m = dataset.grid.m
    lines = [f"# {key}={value}" for key, value in dataset.metadata.items()]
    lines.append("freq_hz," + ",".join(f"re_{k},im_{k}" for k in range(m)))
    freq_cells = [repr(float(dataset.grid.sample_rate))]
    for f in dataset.grid.frequencies:
        freq_cells += [repr(float(f)), ""]
    lines.append(",".join(freq_cells))
    for name, frf_set in dataset.groups.items():
        for row in frf_set.values:
            cells = [name]
            for z in row:
                cells += [repr(float(z.real)), repr(float(z.imag))]
            lines.append(",".join(cells))
    path.write_text("\n".join(lines) + "\n")


def _save_json(dataset: Dataset, path: Path) -> None:
    doc = {
        "frequencies": [float(f) for f in dataset.grid.frequencies],
        "sample_rate": float(dataset.grid.sample_rate),
        "groups": {
            name: [[[float(z.real), float(z.imag)] for z in row] for row in frf_set.values]
            for name, frf_set in dataset.groups.items()
        },
        "metadata": dataset.metadata,
    }
    path.write_text(json.dumps(doc, indent=1) + "\n")


def save_dataset(dataset: Dataset, path, format: str | None = None) -> None:
    """Write a dataset to a CSV or JSON file (format inferred by suffix)."""
    path = Path(path)
    if _infer_format(path, format) == "csv":
        _save_csv(dataset, path)
    else:
        _save_json(dataset, path)


def load_frf(path) -> FRF:
    """Read a single test FRF.

    JSON files hold ``{"values": [[re, im], ...]}``; CSV files hold one
    ``re,im`` pair per line (blank lines and # comments ignored).
    """
    path = Path(path)
    if path.suffix.lower() == ".json":
        try:
            doc = json.loads(path.read_text())
        except json.JSONDecodeError as err:
            raise ParseError(f"{path.name}: {err}") from None
        pairs = doc.get("values") if isinstance(doc, dict) else None
        if not pairs or any(len(pair) != 2 for pair in pairs):
            raise ParseError(f"{path.name}: need {{\"values\": [[re, im], ...]}}")
        return FRF(np.array([complex(re, im) for re, im in pairs]))
    values = []
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        cells = [c.strip() for c in line.split(",")]
        if len(cells) != 2:
            raise ParseError(
                f"{path.name} line {lineno}: expected re,im but got {len(cells)} cells"
            )
        where = f"{path.name} line {lineno}"
        values.append(_parse_float(cells[0], where) + 1j * _parse_float(cells[1], where))
    if not values:
        raise ParseError(f"{path.name}: no FRF values found")
    return FRF(np.array(values))
