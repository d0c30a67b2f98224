"""Datasets of proportions: loading, validation, summaries and simulation."""

import csv
import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from . import cepd, epd2, gepd, kumaraswamy
from .exceptions import DomainError

__all__ = [
    "Dataset",
    "load_csv",
    "write_csv",
    "simulate_dataset",
    "summarize",
    "bundled",
    "BUNDLED",
]

SAMPLERS = {
    "epd2": epd2.sample_n,
    "gepd": gepd.sample_n,
    "cepd": cepd.sample_n,
    "kumaraswamy": kumaraswamy.sample_n,
}


@dataclass
class Dataset:
    """Nonempty sample of values in (0, 1] with provenance."""

    values: np.ndarray
    name: str = "data"
    source: str = ""
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        v = np.atleast_1d(np.asarray(self.values, dtype=float))
        if v.ndim != 1 or v.size == 0:
            raise DomainError("a dataset needs at least one value")
        bad = np.flatnonzero(~np.isfinite(v) | (v <= 0) | (v > 1))
        if bad.size:
            i = int(bad[0])
            raise DomainError(f"value {v[i]!r} at index {i} is outside (0, 1]")
        v.setflags(write=False)
        self.values = v

    @property
    def n(self):
        return self.values.size

    @property
    def contains_one(self):
        return bool(np.any(self.values == 1.0))

    def __len__(self):
        return self.n


def load_csv(path, column=0, name=None):
    """Read one numeric column from a CSV file.

    ``column`` is a 0-based index or a header name. A single header line is
    detected when the first row does not parse as numbers. Values must lie in
    (0, 1]; the error for a bad row names its 1-based line number.
    """
    path = Path(path)
    with open(path, newline="", encoding="utf-8") as fh:
        rows = [row for row in csv.reader(fh)]
    numbered = [(i + 1, row) for i, row in enumerate(rows) if row and any(c.strip() for c in row)]
    if not numbered:
        raise DomainError(f"{path}: file is empty")

    first_line, first = numbered[0]
    try:
        [float(c) for c in first]
        header = None
    except ValueError:
        header = [c.strip() for c in first]
        numbered = numbered[1:]

    if isinstance(column, str):
        if header is None or column not in header:
            raise DomainError(f"{path}: no column named {column!r}")
        col = header.index(column)
    else:
        col = int(column)

    values = []
    for line, row in numbered:
        try:
            x = float(row[col])
        except (IndexError, ValueError):
            raise DomainError(f"{path}: line {line}: cannot parse a number in column {column!r}")
        if not np.isfinite(x) or x <= 0 or x > 1:
            raise DomainError(f"{path}: line {line}: value {x!r} is outside (0, 1]")
        values.append(x)
    if not values:
        raise DomainError(f"{path}: no data rows")
    return Dataset(np.array(values), name=name or path.stem, source=str(path))


def write_csv(data, path, header="value"):
    """Write values one per line using the shortest round-trip representation
    (at most 17 significant digits), so reading back is exact."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        if header:
            fh.write(header + "\n")
        for x in np.asarray(getattr(data, "values", data), dtype=float):
            fh.write(repr(float(x)) + "\n")


def simulate_dataset(family, params, n, seed):
    """Draw ``n`` values from ``family`` with a seeded generator."""
    if family not in SAMPLERS:
        raise DomainError(f"unknown family {family!r}; expected one of {sorted(SAMPLERS)}")
    if int(n) != n or n < 1:
        raise DomainError("n must be a positive integer")
    params = tuple(float(p) for p in params)
    values = SAMPLERS[family](params, int(n), seed)
    return Dataset(
        values,
        name=f"{family}{list(params)}",
        source="simulated",
        metadata={"family": family, "params": list(params), "n": int(n), "seed": seed},
    )


def summarize(data):
    """Summary record with the fixed fields ``n, min, max, mean, variance, ones_count``."""
    v = getattr(data, "values", None)
    if v is None:
        v = Dataset(data).values
    return {
        "n": int(v.size),
        "min": float(v.min()),
        "max": float(v.max()),
        "mean": float(v.mean()),
        "variance": float(v.var(ddof=1)) if v.size > 1 else 0.0,
        "ones_count": int(np.sum(v == 1.0)),
    }


def summary_json(data):
    return json.dumps(summarize(data), indent=2)


BUNDLED = {
    "unity_votes": "Unimodal proportions peaked mid-interval (stand-in for party unity vote shares).",
    "minority_share": "Proportions concentrated near 0 with a long right tail (stand-in for ethnic minority shares).",
    "literacy": "Proportions massed near 1 with exact ones (stand-in for youth literacy rates).",
    "example6": "1000 draws from the three-parameter EPD (1, 0.001, 4), seed 7.",
}


def bundled(name):
    """Load one of the synthetic datasets shipped with the package."""
    if name not in BUNDLED:
        raise DomainError(f"unknown bundled dataset {name!r}; choose from {sorted(BUNDLED)}")
    ref = resources.files("epdist") / "data" / f"{name}.csv"
    with resources.as_file(ref) as path:
        ds = load_csv(path, name=name)
    ds.source = f"bundled:{name}"
    ds.metadata["description"] = BUNDLED[name]
    return ds
