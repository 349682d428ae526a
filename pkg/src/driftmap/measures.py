"""Drift magnitudes between two time windows.

Plain distances (total variation, Hellinger) between marginal estimates,
plus the two weighted conditional measures: conditioned covariate drift
(per-class covariate distances weighted by average class probability) and
posterior drift (per-tuple class distances weighted by average covariate
tuple probability).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .discretize import EncodedDataset
from .estimate import (
    CLASS_ONLY,
    COVARIATES,
    JOINT,
    AttributeSubset,
    DistributionEstimate,
    TimeInterval,
    estimate_conditional,
    estimate_distribution,
    select_window,
)

TOTAL_VARIATION = "total_variation"
HELLINGER = "hellinger"

STATUS_OK = "ok"
STATUS_INSUFFICIENT = "insufficient_data"

# measure kinds
JOINT_DRIFT = "joint"
COVARIATE_DRIFT = "covariate"
CLASS_DRIFT = "class"
CONDITIONED_COVARIATE_DRIFT = "conditioned_covariate"
POSTERIOR_DRIFT = "posterior"

_ROLE_TO_KIND = {
    COVARIATES: COVARIATE_DRIFT,
    CLASS_ONLY: CLASS_DRIFT,
    JOINT: JOINT_DRIFT,
}


class MeasureError(ValueError):
    pass


@dataclass(frozen=True)
class DriftMeasurement:
    """One drift magnitude with its provenance.

    ``magnitude`` is None when ``status`` is insufficient-data; a value of 0
    always means measured absence of drift, never missing input.
    """

    measure_kind: str
    distance_kind: str
    subset: AttributeSubset
    window_a: TimeInterval
    window_b: TimeInterval
    magnitude: float | None
    sample_sizes: tuple[int, int]
    status: str = STATUS_OK

    @property
    def ok(self) -> bool:
        return self.status == STATUS_OK

    def to_row(self) -> dict:
        return {
            "measure_kind": self.measure_kind,
            "distance_kind": self.distance_kind,
            "subset": "|".join(self.subset.names),
            "window_a_start": self.window_a.start,
            "window_a_end": self.window_a.end,
            "window_b_start": self.window_b.start,
            "window_b_end": self.window_b.end,
            "magnitude": self.magnitude,
            "sample_size_a": self.sample_sizes[0],
            "sample_size_b": self.sample_sizes[1],
            "status": self.status,
        }


def _check_comparable(p: DistributionEstimate, q: DistributionEstimate) -> None:
    if p.subset.names != q.subset.names or p.subset.role != q.subset.role:
        raise MeasureError(
            f"estimates are over different subsets: {p.subset} vs {q.subset}"
        )
    if p.is_empty or q.is_empty:
        raise MeasureError("cannot measure distance to an empty estimate")


def total_variation(p: DistributionEstimate, q: DistributionEstimate) -> float:
    """Half the L1 distance over the union of supports; a metric in [0,1]."""
    _check_comparable(p, q)
    keys = p.support.keys() | q.support.keys()
    return 0.5 * sum(abs(p.probability(k) - q.probability(k)) for k in keys)


def hellinger(p: DistributionEstimate, q: DistributionEstimate) -> float:
    """Hellinger distance over the support union; a metric in [0,1].

    Computed as sqrt(0.5 * sum((sqrt p - sqrt q)^2)) rather than the
    algebraically equal sqrt(1 - sum(sqrt(p*q))): the latter amplifies
    rounding near zero (sqrt of a ~1e-16 residual is ~1e-8).
    """
    _check_comparable(p, q)
    keys = p.support.keys() | q.support.keys()
    total = sum(
        (math.sqrt(p.probability(k)) - math.sqrt(q.probability(k))) ** 2
        for k in keys
    )
    return min(1.0, math.sqrt(0.5 * total))


_DISTANCES = {TOTAL_VARIATION: total_variation, HELLINGER: hellinger}


def distance_function(distance_kind: str):
    try:
        return _DISTANCES[distance_kind]
    except KeyError:
        raise MeasureError(f"unknown distance kind {distance_kind!r}") from None


def _insufficient(kind, distance_kind, subset, window_a, window_b, sizes):
    return DriftMeasurement(
        measure_kind=kind,
        distance_kind=distance_kind,
        subset=subset,
        window_a=window_a,
        window_b=window_b,
        magnitude=None,
        sample_sizes=sizes,
        status=STATUS_INSUFFICIENT,
    )


def marginal_drift(
    dataset: EncodedDataset,
    window_a: TimeInterval,
    window_b: TimeInterval,
    subset: AttributeSubset,
    distance_kind: str = TOTAL_VARIATION,
) -> DriftMeasurement:
    """Distance between the two windows' marginal estimates over ``subset``."""
    dist = distance_function(distance_kind)
    kind = _ROLE_TO_KIND[subset.role]
    p = estimate_distribution(select_window(dataset, window_a), subset)
    q = estimate_distribution(select_window(dataset, window_b), subset)
    sizes = (p.sample_size, q.sample_size)
    if p.is_empty or q.is_empty:
        return _insufficient(kind, distance_kind, subset, window_a, window_b, sizes)
    return DriftMeasurement(
        measure_kind=kind,
        distance_kind=distance_kind,
        subset=subset,
        window_a=window_a,
        window_b=window_b,
        magnitude=dist(p, q),
        sample_sizes=sizes,
    )


def _weighted_conditional_drift(
    family_a,
    family_b,
    distance_kind: str,
) -> float:
    """Sum over the union of conditioning tuples of
    average-weight * inner distance.

    A tuple observed in only one window has an undefined conditional on the
    other side; its inner distance is taken as 1.0 (the conditional's entire
    mass appeared or disappeared), which keeps the measure symmetric.
    """
    dist = distance_function(distance_kind)
    total = 0.0
    for key in family_a.members.keys() | family_b.members.keys():
        weight = 0.5 * (family_a.weight(key) + family_b.weight(key))
        if weight == 0.0:
            continue
        in_a = key in family_a.members
        in_b = key in family_b.members
        if in_a and in_b:
            inner = dist(family_a.members[key][1], family_b.members[key][1])
        else:
            inner = 1.0  # one-sided support
        total += weight * inner
    return total


def conditioned_covariate_drift(
    dataset: EncodedDataset,
    window_a: TimeInterval,
    window_b: TimeInterval,
    subset: AttributeSubset,
    distance_kind: str = TOTAL_VARIATION,
) -> DriftMeasurement:
    """Class-prevalence-weighted average of per-class covariate distances."""
    if subset.role != COVARIATES:
        raise MeasureError("conditioned covariate drift needs a covariates-only subset")
    class_subset = AttributeSubset.class_only(dataset.schema.class_attribute)
    fam_a = estimate_conditional(select_window(dataset, window_a), subset, class_subset)
    fam_b = estimate_conditional(select_window(dataset, window_b), subset, class_subset)
    sizes = (fam_a.sample_size, fam_b.sample_size)
    if fam_a.is_empty or fam_b.is_empty:
        return _insufficient(CONDITIONED_COVARIATE_DRIFT, distance_kind,
                             subset, window_a, window_b, sizes)
    magnitude = _weighted_conditional_drift(fam_a, fam_b, distance_kind)
    return DriftMeasurement(
        measure_kind=CONDITIONED_COVARIATE_DRIFT,
        distance_kind=distance_kind,
        subset=subset,
        window_a=window_a,
        window_b=window_b,
        magnitude=magnitude,
        sample_sizes=sizes,
    )


def posterior_drift(
    dataset: EncodedDataset,
    window_a: TimeInterval,
    window_b: TimeInterval,
    subset: AttributeSubset,
    distance_kind: str = TOTAL_VARIATION,
) -> DriftMeasurement:
    """Covariate-prevalence-weighted average of per-tuple class distances."""
    if subset.role != COVARIATES:
        raise MeasureError("posterior drift needs a covariates-only subset")
    class_subset = AttributeSubset.class_only(dataset.schema.class_attribute)
    fam_a = estimate_conditional(select_window(dataset, window_a), class_subset, subset)
    fam_b = estimate_conditional(select_window(dataset, window_b), class_subset, subset)
    sizes = (fam_a.sample_size, fam_b.sample_size)
    if fam_a.is_empty or fam_b.is_empty:
        return _insufficient(POSTERIOR_DRIFT, distance_kind,
                             subset, window_a, window_b, sizes)
    magnitude = _weighted_conditional_drift(fam_a, fam_b, distance_kind)
    return DriftMeasurement(
        measure_kind=POSTERIOR_DRIFT,
        distance_kind=distance_kind,
        subset=subset,
        window_a=window_a,
        window_b=window_b,
        magnitude=magnitude,
        sample_sizes=sizes,
    )


def compute_drift(
    dataset: EncodedDataset,
    window_a: TimeInterval,
    window_b: TimeInterval,
    measure_kind: str,
    subset: AttributeSubset,
    distance_kind: str = TOTAL_VARIATION,
) -> DriftMeasurement:
    """Dispatch on measure kind; marginal kinds must agree with subset role."""
    if measure_kind == CONDITIONED_COVARIATE_DRIFT:
        return conditioned_covariate_drift(dataset, window_a, window_b, subset, distance_kind)
    if measure_kind == POSTERIOR_DRIFT:
        return posterior_drift(dataset, window_a, window_b, subset, distance_kind)
    if measure_kind in (JOINT_DRIFT, COVARIATE_DRIFT, CLASS_DRIFT):
        if _ROLE_TO_KIND[subset.role] != measure_kind:
            raise MeasureError(
                f"measure kind {measure_kind!r} does not match subset role {subset.role!r}"
            )
        return marginal_drift(dataset, window_a, window_b, subset, distance_kind)
    raise MeasureError(f"unknown measure kind {measure_kind!r}")
