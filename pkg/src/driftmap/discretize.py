"""Global equal-frequency discretization and integer encoding.

Numeric attributes are binned with cut points fitted once over the pooled
values of the whole dataset (all time periods jointly), so window-to-window
comparisons never conflate encoding changes with drift. Categorical
attributes get a label dictionary built over the whole dataset.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .schema import CATEGORICAL, NUMERIC, AttributeSchema, RawDataset

MISSING_CODE = -1

DEFAULT_BIN_COUNT = 5


class DiscretizationError(ValueError):
    pass


@dataclass(frozen=True)
class Discretizer:
    """Fitted encoding state: cut points per numeric attribute, label
    dictionaries per categorical attribute.

    Numeric bins are right-closed: value v maps to the count of cut points
    strictly below v, so a value equal to a cut point falls in the lower bin.
    Unseen categorical labels map to a reserved overflow code (one past the
    fitted dictionary).
    """

    schema: AttributeSchema
    bin_count: int
    cut_points: dict[str, tuple[float, ...]]
    label_codes: dict[str, dict[str, int]]

    def domain_size(self, name: str) -> int:
        if name in self.cut_points:
            return len(self.cut_points[name]) + 1
        return len(self.label_codes[name])

    def overflow_code(self, name: str) -> int:
        return len(self.label_codes[name])

    def labels_for(self, name: str) -> list[str]:
        """Code-ordered labels for a categorical attribute."""
        codes = self.label_codes[name]
        return [label for label, _ in sorted(codes.items(), key=lambda kv: kv[1])]

    def encode_value(self, name: str, value):
        if value is None:
            return MISSING_CODE
        cuts = self.cut_points.get(name)
        if cuts is not None:
            return int(np.searchsorted(cuts, value, side="left"))
        return self.label_codes[name].get(str(value), self.overflow_code(name))

    def to_json(self) -> str:
        doc = {
            "bin_count": self.bin_count,
            "cut_points": {k: list(v) for k, v in self.cut_points.items()},
            "label_codes": self.label_codes,
        }
        return json.dumps(doc, indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str, schema: AttributeSchema) -> "Discretizer":
        doc = json.loads(text)
        return cls(
            schema=schema,
            bin_count=int(doc["bin_count"]),
            cut_points={k: tuple(v) for k, v in doc["cut_points"].items()},
            label_codes={k: {lbl: int(c) for lbl, c in d.items()}
                         for k, d in doc["label_codes"].items()},
        )


@dataclass(frozen=True)
class EncodedDataset:
    """Fully integer-coded dataset, record order identical to the raw input.

    ``codes`` is an (n_records, n_attributes) int array with ``MISSING_CODE``
    marking missing cells; ``timestamps`` is sorted non-decreasing.
    """

    schema: AttributeSchema
    discretizer: Discretizer
    timestamps: np.ndarray = field(repr=False)
    codes: np.ndarray = field(repr=False)
    cardinalities: tuple[int, ...]
    overflow_counts: dict[str, int]

    def __len__(self) -> int:
        return len(self.timestamps)

    @property
    def attribute_names(self) -> tuple[str, ...]:
        return self.schema.attribute_names

    def column_indices(self, names) -> list[int]:
        all_names = self.schema.attribute_names
        return [all_names.index(n) for n in names]

    def cardinality(self, name: str) -> int:
        return self.cardinalities[self.schema.attribute_names.index(name)]


def _equal_frequency_cuts(values: np.ndarray, bin_count: int) -> tuple[float, ...]:
    """Cut points splitting sorted values into near-equal-count bins.

    Cuts may only sit between distinct values. When the ideal rank split
    lands inside a run of equal values, the cut moves to the nearer run
    boundary (ties broken toward the lower boundary). The cut value is the
    last value of the lower run, consistent with right-closed bins.
    """
    ordered = np.sort(values)
    n = len(ordered)
    distinct, first_index = np.unique(ordered, return_index=True)
    if len(distinct) <= 1:
        return ()
    # cumulative count at the end of each distinct-value run
    run_ends = np.append(first_index[1:], n)

    cut_values = []
    for i in range(1, bin_count):
        ideal = i * n / bin_count
        # candidate boundaries are the run ends (excluding the final one,
        # which would create an empty top bin)
        candidates = run_ends[:-1]
        if len(candidates) == 0:
            break
        deltas = np.abs(candidates - ideal)
        best = int(np.argmin(deltas))  # argmin takes the first, i.e. lower, boundary on ties
        cut_values.append(float(distinct[best]))
    return tuple(sorted(set(cut_values)))


def fit_discretizer(dataset: RawDataset, bin_count: int = DEFAULT_BIN_COUNT) -> Discretizer:
    """Fit cut points and label dictionaries over the whole dataset."""
    if bin_count < 2:
        raise DiscretizationError("bin_count must be at least 2")
    if len(dataset) == 0:
        raise DiscretizationError("cannot fit a discretizer on an empty dataset")

    cut_points: dict[str, tuple[float, ...]] = {}
    label_codes: dict[str, dict[str, int]] = {}
    for attr in dataset.schema.attributes:
        observed = [v for v in dataset.column(attr.name) if v is not None]
        if not observed:
            raise DiscretizationError(f"attribute {attr.name!r} has no non-missing values")
        if attr.kind == NUMERIC:
            cut_points[attr.name] = _equal_frequency_cuts(np.asarray(observed, float), bin_count)
        else:
            labels = list(attr.declared_domain) if attr.declared_domain else []
            for v in observed:
                if v not in labels:
                    labels.append(v)
            label_codes[attr.name] = {label: code for code, label in enumerate(labels)}
    return Discretizer(
        schema=dataset.schema,
        bin_count=bin_count,
        cut_points=cut_points,
        label_codes=label_codes,
    )


def apply_discretizer(dataset: RawDataset, discretizer: Discretizer) -> EncodedDataset:
    """Encode every record through the fitted discretizer.

    Unseen categorical labels are mapped to the overflow code and tallied in
    ``overflow_counts`` rather than raising.
    """
    names = dataset.schema.attribute_names
    n = len(dataset)
    codes = np.full((n, len(names)), MISSING_CODE, dtype=np.int64)
    timestamps = np.empty(n, dtype=np.int64)
    overflow_counts = {name: 0 for name in discretizer.label_codes}

    for j, name in enumerate(names):
        attr = dataset.schema.attribute(name)
        column = dataset.column(name)
        if attr.kind == NUMERIC:
            cuts = np.asarray(discretizer.cut_points[name], float)
            present = np.array([v is not None for v in column])
            if present.any():
                vals = np.asarray([v for v in column if v is not None], float)
                codes[present, j] = np.searchsorted(cuts, vals, side="left")
        else:
            table = discretizer.label_codes[name]
            overflow = discretizer.overflow_code(name)
            for i, v in enumerate(column):
                if v is None:
                    continue
                code = table.get(str(v), overflow)
                if code == overflow:
                    overflow_counts[name] += 1
                codes[i, j] = code

    seen_overflow = {k for k, c in overflow_counts.items() if c > 0}
    cardinalities = tuple(
        discretizer.domain_size(name) + (1 if name in seen_overflow else 0)
        for name in names
    )
    for i, (ts, _) in enumerate(dataset.records):
        timestamps[i] = ts
    return EncodedDataset(
        schema=dataset.schema,
        discretizer=discretizer,
        timestamps=timestamps,
        codes=codes,
        cardinalities=cardinalities,
        overflow_counts=overflow_counts,
    )
