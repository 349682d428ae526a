"""Window selection and maximum-likelihood distribution estimates.

Estimates are sparse: only observed code tuples are stored, absent tuples
mean probability zero. Records missing a value on any attribute of the
subset under analysis are dropped from that subset's counts only.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .discretize import MISSING_CODE, EncodedDataset

COVARIATES = "covariates-only"
CLASS_ONLY = "class-only"
JOINT = "covariates-plus-class"

NORMALIZATION_TOL = 1e-9


class EstimationError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class TimeInterval:
    """Half-open tick interval [start, end)."""

    start: int
    end: int

    def __post_init__(self):
        if self.start >= self.end:
            raise EstimationError(f"empty interval [{self.start}, {self.end})")


@dataclass(frozen=True)
class AttributeSubset:
    """An ordered attribute subset with its analysis role.

    The class attribute appears iff the role requires it; the constructor
    helpers below enforce that against a schema.
    """

    names: tuple[str, ...]
    role: str

    def __post_init__(self):
        if not self.names:
            raise EstimationError("attribute subset must be non-empty")
        if len(set(self.names)) != len(self.names):
            raise EstimationError(f"duplicate attributes in subset: {self.names}")
        if self.role not in (COVARIATES, CLASS_ONLY, JOINT):
            raise EstimationError(f"unknown subset role {self.role!r}")

    @classmethod
    def covariates(cls, names) -> "AttributeSubset":
        return cls(tuple(names), COVARIATES)

    @classmethod
    def class_only(cls, class_name: str) -> "AttributeSubset":
        return cls((class_name,), CLASS_ONLY)

    @classmethod
    def joint(cls, covariate_names, class_name: str) -> "AttributeSubset":
        return cls(tuple(covariate_names) + (class_name,), JOINT)

    def validate_against(self, dataset: EncodedDataset) -> None:
        known = set(dataset.schema.attribute_names)
        unknown = [n for n in self.names if n not in known]
        if unknown:
            raise EstimationError(f"unknown attributes in subset: {unknown}")
        has_class = dataset.schema.class_attribute in self.names
        needs_class = self.role in (CLASS_ONLY, JOINT)
        if has_class != needs_class:
            raise EstimationError(
                f"subset role {self.role!r} inconsistent with class attribute presence"
            )


@dataclass(frozen=True)
class WindowView:
    """The contiguous record range of a dataset inside one time interval."""

    dataset: EncodedDataset
    interval: TimeInterval
    lo: int
    hi: int

    @property
    def record_count(self) -> int:
        return self.hi - self.lo

    def codes(self, names) -> np.ndarray:
        cols = self.dataset.column_indices(names)
        return self.dataset.codes[self.lo:self.hi, cols]


@dataclass(frozen=True)
class DistributionEstimate:
    """Sparse ML estimate over one attribute subset within one window.

    ``sample_size`` counts the records that contributed after missing-value
    drops; a zero sample size is the distinguished empty-estimate result.
    """

    subset: AttributeSubset
    support: dict[tuple[int, ...], float] = field(repr=False)
    sample_size: int

    @property
    def is_empty(self) -> bool:
        return self.sample_size == 0

    def probability(self, key: tuple[int, ...]) -> float:
        return self.support.get(key, 0.0)

    def marginalize(self, keep_names) -> "DistributionEstimate":
        """Sum out all attributes except ``keep_names`` (order preserved)."""
        keep_names = tuple(keep_names)
        keep = [self.subset.names.index(n) for n in keep_names]
        merged: dict[tuple[int, ...], float] = {}
        for key, p in self.support.items():
            sub = tuple(key[i] for i in keep)
            merged[sub] = merged.get(sub, 0.0) + p
        # joint subsets carry the class attribute last (see .joint())
        class_kept = self.subset.role != COVARIATES and self.subset.names[-1] in keep_names
        if not class_kept:
            role = COVARIATES
        elif keep_names == (self.subset.names[-1],):
            role = CLASS_ONLY
        else:
            role = JOINT
        return DistributionEstimate(
            subset=AttributeSubset(keep_names, role),
            support=merged,
            sample_size=self.sample_size,
        )

    def to_rows(self) -> list[tuple]:
        """(code..., probability) rows sorted by code tuple, for CSV export."""
        return [key + (p,) for key, p in sorted(self.support.items())]


@dataclass(frozen=True)
class ConditionalFamily:
    """Per conditioning tuple: its window probability and the ML estimate of
    the target subset restricted to matching records."""

    conditioning: AttributeSubset
    target: AttributeSubset
    members: dict[tuple[int, ...], tuple[float, DistributionEstimate]] = field(repr=False)
    sample_size: int

    @property
    def is_empty(self) -> bool:
        return self.sample_size == 0

    def weight(self, key: tuple[int, ...]) -> float:
        member = self.members.get(key)
        return member[0] if member else 0.0


def select_window(dataset: EncodedDataset, interval: TimeInterval) -> WindowView:
    """Records with timestamp in [start, end); empty windows are allowed."""
    lo = int(np.searchsorted(dataset.timestamps, interval.start, side="left"))
    hi = int(np.searchsorted(dataset.timestamps, interval.end, side="left"))
    return WindowView(dataset=dataset, interval=interval, lo=lo, hi=hi)


def _usable_rows(window: WindowView, names) -> np.ndarray:
    codes = window.codes(names)
    return codes[(codes != MISSING_CODE).all(axis=1)]


def estimate_distribution(window: WindowView, subset: AttributeSubset) -> DistributionEstimate:
    """ML estimate: observed-tuple counts over usable records, normalized."""
    subset.validate_against(window.dataset)
    rows = _usable_rows(window, subset.names)
    n = len(rows)
    if n == 0:
        return DistributionEstimate(subset=subset, support={}, sample_size=0)
    counts = Counter(map(tuple, rows.tolist()))
    support = {key: c / n for key, c in counts.items()}
    return DistributionEstimate(subset=subset, support=support, sample_size=n)


def estimate_conditional(
    window: WindowView,
    target: AttributeSubset,
    conditioning: AttributeSubset,
) -> ConditionalFamily:
    """Family of ML target estimates, one per observed conditioning tuple."""
    if set(target.names) & set(conditioning.names):
        raise EstimationError("target and conditioning subsets must be disjoint")
    target.validate_against(window.dataset)
    conditioning.validate_against(window.dataset)

    names = conditioning.names + target.names
    rows = _usable_rows(window, names)
    n = len(rows)
    if n == 0:
        return ConditionalFamily(conditioning=conditioning, target=target,
                                 members={}, sample_size=0)

    k = len(conditioning.names)
    groups: dict[tuple[int, ...], Counter] = {}
    for row in map(tuple, rows.tolist()):
        groups.setdefault(row[:k], Counter())[row[k:]] += 1

    members = {}
    for cond_key, counter in groups.items():
        m = sum(counter.values())
        inner = DistributionEstimate(
            subset=target,
            support={key: c / m for key, c in counter.items()},
            sample_size=m,
        )
        members[cond_key] = (m / n, inner)
    return ConditionalFamily(conditioning=conditioning, target=target,
                             members=members, sample_size=n)
