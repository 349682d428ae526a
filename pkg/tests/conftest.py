import numpy as np
import pytest

from driftmap.discretize import Discretizer, EncodedDataset
from driftmap.schema import Attribute, AttributeSchema, CATEGORICAL


def build_encoded(codes, cardinalities, timestamps=None, class_last=True):
    """Assemble an EncodedDataset directly from integer codes.

    ``codes`` is (n_records, n_attrs); the last column is the class when
    ``class_last``. Attributes are categorical with domains 0..card-1 and
    names a0, a1, ... plus "label" for the class.
    """
    codes = np.asarray(codes, dtype=np.int64)
    n, k = codes.shape
    assert len(cardinalities) == k
    names = [f"a{i}" for i in range(k - 1)] + ["label"] if class_last \
        else [f"a{i}" for i in range(k)]
    class_name = "label" if class_last else names[-1]

    attrs = tuple(
        Attribute(name=nm, kind=CATEGORICAL,
                  declared_domain=tuple(str(v) for v in range(card)))
        for nm, card in zip(names, cardinalities)
    )
    schema = AttributeSchema(attributes=attrs, class_attribute=class_name)
    discretizer = Discretizer(
        schema=schema,
        bin_count=5,
        cut_points={},
        label_codes={nm: {str(v): v for v in range(card)}
                     for nm, card in zip(names, cardinalities)},
    )
    if timestamps is None:
        timestamps = np.arange(n, dtype=np.int64)
    else:
        timestamps = np.asarray(timestamps, dtype=np.int64)
    return EncodedDataset(
        schema=schema,
        discretizer=discretizer,
        timestamps=timestamps,
        codes=codes,
        cardinalities=tuple(cardinalities),
        overflow_counts={},
    )


def random_encoded(rng, n_attrs=None, n_records=None, max_card=5):
    """A random small synthetic dataset split into two equal halves by time.

    Returns (dataset, window_a, window_b) where each window covers one half.
    Two regimes with different sampling biases so drift is usually nonzero.
    """
    from driftmap.estimate import TimeInterval

    n_attrs = n_attrs or int(rng.integers(1, 4))  # covariates
    per_window = n_records or int(rng.integers(10, 200))
    cards = [int(rng.integers(2, max_card + 1)) for _ in range(n_attrs + 1)]

    halves = []
    for _ in range(2):
        cols = []
        for card in cards:
            weights = rng.dirichlet(np.ones(card))
            cols.append(rng.choice(card, size=per_window, p=weights))
        halves.append(np.column_stack(cols))
    codes = np.vstack(halves)
    dataset = build_encoded(codes, cards)
    return (dataset,
            TimeInterval(0, per_window),
            TimeInterval(per_window, 2 * per_window))


@pytest.fixture
def rng():
    return np.random.default_rng(20260823)
