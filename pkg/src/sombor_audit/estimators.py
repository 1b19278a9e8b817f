"""scikit-learn style transformers over degree-based indices.

``DegreeIndexTransformer`` turns a collection of graphs, edge arrays or
degree-pair partitions into an ``(n_samples, n_indices)`` feature matrix.
``FamilyIndexTransformer`` does the same for ``(p, q)`` rows of one
silicon-carbide family, so index values can feed a pipeline directly.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .families import get_family, load_registry, partition_counts_at
from .graph import DegreePairPartition, Graph, degree_pair_partition
from .indices import AVERAGE_SOMBOR, BUILTIN_INDICES, IndexDefinition, average_sombor_on_partition, index_on_partition
from .radical import RadicalNumber, rad_to_float

__all__ = [
    "DegreeIndexTransformer",
    "FamilyIndexTransformer",
    "check_partitions",
    "check_pq_array",
    "resolve_indices",
]


def resolve_indices(indices) -> list[IndexDefinition | str]:
    """Map names / expressions / definitions to index objects.

    Built-in names resolve to the catalog; ``average_sombor`` stays a name
    (it needs graph-level data); any other string is read as a weight
    expression.
    """
    if isinstance(indices, (str, IndexDefinition)):
        indices = [indices]
    out = []
    for item in indices:
        if isinstance(item, IndexDefinition):
            out.append(item)
        elif item == AVERAGE_SOMBOR:
            out.append(AVERAGE_SOMBOR)
        elif item in BUILTIN_INDICES:
            out.append(BUILTIN_INDICES[item])
        elif isinstance(item, str):
            out.append(IndexDefinition.from_expr(item))
        else:
            raise TypeError(f"cannot interpret {item!r} as an index")
    if not out:
        raise ValueError("at least one index is required")
    return out


def _as_partition(x) -> DegreePairPartition:
    if isinstance(x, DegreePairPartition):
        return x
    if isinstance(x, Graph):
        return degree_pair_partition(x)
    arr = np.asarray(x)
    if arr.ndim == 2 and arr.shape[1] == 2 and np.issubdtype(arr.dtype, np.integer):
        return degree_pair_partition(Graph.from_edges(map(tuple, arr.tolist())))
    raise TypeError(
        f"expected a Graph, DegreePairPartition or (m, 2) integer edge array, got {type(x).__name__}"
    )


def check_partitions(X) -> list[DegreePairPartition]:
    """Validate a sample collection and convert each item to a partition."""
    if isinstance(X, (Graph, DegreePairPartition)):
        raise TypeError("X must be a collection of samples, not a single graph")
    parts = [_as_partition(x) for x in X]
    if not parts:
        raise ValueError("X contains no samples")
    return parts


def check_pq_array(X) -> np.ndarray:
    """Validate an ``(n, 2)`` array of positive integer ``(p, q)`` rows."""
    arr = check_array(X, dtype=None, ensure_2d=True)
    if arr.shape[1] != 2:
        raise ValueError(f"expected 2 columns (p, q), got {arr.shape[1]}")
    if not np.issubdtype(arr.dtype, np.integer):
        as_int = arr.astype(np.int64)
        if not np.array_equal(as_int, arr):
            raise ValueError("p and q must be integers")
        arr = as_int
    if (arr < 1).any():
        raise ValueError("p and q must be >= 1")
    return arr


def _value(idx, part: DegreePairPartition, m_choice: str, exact: bool):
    if idx == AVERAGE_SOMBOR:
        return average_sombor_on_partition(part, m_choice)
    v = index_on_partition(idx, part)
    if exact:
        return v
    return rad_to_float(v) if isinstance(v, RadicalNumber) else float(v)


def _name(idx) -> str:
    return idx if isinstance(idx, str) else idx.name


class DegreeIndexTransformer(TransformerMixin, BaseEstimator):
    """Compute degree-based indices for each sample.

    Parameters
    ----------
    indices : str or sequence
        Built-in names (``sombor``, ``reduced_sombor``, ``m1``, ``m2``,
        ``isi``, ``average_sombor``), weight expressions, or
        :class:`IndexDefinition` objects.
    exact : bool
        Return an object array of :class:`RadicalNumber` instead of floats.
    """

    def __init__(self, indices=("sombor",), exact=False):
        self.indices = indices
        self.exact = exact

    def fit(self, X, y=None):
        check_partitions(X)
        self.indices_ = resolve_indices(self.indices)
        self.n_features_out_ = len(self.indices_)
        return self

    def transform(self, X):
        check_is_fitted(self, "indices_")
        parts = check_partitions(X)
        rows = [[_value(idx, part, "partition-sum", self.exact) for idx in self.indices_] for part in parts]
        return np.array(rows, dtype=object if self.exact else float)

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "indices_")
        return np.array([_name(i) for i in self.indices_], dtype=object)


class FamilyIndexTransformer(TransformerMixin, BaseEstimator):
    """Index values of one family at ``(p, q)`` rows.

    Rows whose partition has a negative count raise ``NegativeCount`` unless
    ``strict=False``.
    """

    def __init__(self, family="Si2C3-I", indices=("sombor",), m_choice="partition-sum", strict=True, exact=False):
        self.family = family
        self.indices = indices
        self.m_choice = m_choice
        self.strict = strict
        self.exact = exact

    def fit(self, X=None, y=None):
        if X is not None:
            check_pq_array(X)
        self.family_ = get_family(self.family, load_registry())
        self.indices_ = resolve_indices(self.indices)
        self.n_features_out_ = len(self.indices_)
        return self

    def transform(self, X):
        check_is_fitted(self, "family_")
        arr = check_pq_array(X)
        rows = []
        for p, q in arr.tolist():
            part = partition_counts_at(self.family_, p, q, strict=self.strict)
            rows.append([_value(idx, part, self.m_choice, self.exact) for idx in self.indices_])
        return np.array(rows, dtype=object if self.exact else float)

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "indices_")
        return np.array([f"{self.family}:{_name(i)}" for i in self.indices_], dtype=object)
