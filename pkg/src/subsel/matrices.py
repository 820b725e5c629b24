"""Ground-set data representations and similarity-matrix construction.

Two containers:

* :class:`FeatureMatrix` wraps an n x D non-negative dense matrix of
  per-example feature values (the input to feature-based selection).
* :class:`SimilarityMatrix` wraps an n x n non-negative pairwise-similarity
  table, either dense or sparse. Absent sparse entries mean similarity zero.

Entry orientation: ``S[i][j]`` is read as "similarity of candidate i to
covered element j". Asymmetric dense matrices are accepted.

Both containers are immutable after construction and safe to share across
concurrent readers.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .exceptions import (
    ConstraintViolationError,
    DegenerateInputError,
    InputError,
    TripleValidationError,
)

__all__ = [
    "FeatureMatrix",
    "SimilarityMatrix",
    "squared_correlation_similarity",
    "cosine_similarity",
    "sparse_from_triples",
]


def _as_2d_float(values, what: str) -> np.ndarray:
    arr = np.array(values, dtype=np.float64, copy=True)
    if arr.ndim != 2:
        raise InputError(f"{what} must be 2-dimensional, got ndim={arr.ndim}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise DegenerateInputError(f"{what} must have at least one row and one column, got shape {arr.shape}")
    return arr


def _first_negative(arr: np.ndarray) -> tuple[int, int] | None:
    # NaN fails the >= 0 test as well, so it is caught here too.
    ok = arr >= 0.0
    if ok.all():
        return None
    r, c = np.unravel_index(int(np.argmin(ok)), arr.shape)
    return int(r), int(c)


class FeatureMatrix:
    """Dense n x D matrix of non-negative feature values.

    Rows are examples, columns are features. Every entry must be >= 0; this
    is what makes the feature-based objective monotone.
    """

    def __init__(self, values):
        arr = _as_2d_float(values, "feature matrix")
        pos = _first_negative(arr)
        if pos is not None:
            raise ConstraintViolationError(
                f"feature values cannot be negative: value {arr[pos]!r} at row {pos[0]}, column {pos[1]}",
                position=pos,
            )
        arr.setflags(write=False)
        self._values = arr

    @property
    def values(self) -> np.ndarray:
        """Read-only (n, D) float64 array."""
        return self._values

    @property
    def n_examples(self) -> int:
        return self._values.shape[0]

    @property
    def n_features(self) -> int:
        return self._values.shape[1]

    def __repr__(self):
        return f"FeatureMatrix(n_examples={self.n_examples}, n_features={self.n_features})"


class SimilarityMatrix:
    """Square n x n table of non-negative similarities, dense or sparse.

    Construct with :meth:`from_dense` or :func:`sparse_from_triples`. The
    sparse form stores rows in CSR layout with columns sorted ascending;
    entries not stored are zero.
    """

    def __init__(self, *, dense=None, indptr=None, cols=None, vals=None, n=None):
        if dense is not None:
            self._dense = dense
            self._indptr = self._cols = self._vals = None
            self._n = dense.shape[0]
        else:
            self._dense = None
            self._indptr = indptr
            self._cols = cols
            self._vals = vals
            self._n = int(n)

    @classmethod
    def from_dense(cls, values) -> "SimilarityMatrix":
        """Wrap a dense square array. Entries must be >= 0; asymmetry is allowed."""
        arr = _as_2d_float(values, "similarity matrix")
        if arr.shape[0] != arr.shape[1]:
            raise InputError(f"similarity matrix must be square, got shape {arr.shape}")
        pos = _first_negative(arr)
        if pos is not None:
            raise ConstraintViolationError(
                f"similarity matrix must have non-negative entries: value {arr[pos]!r} at row {pos[0]}, column {pos[1]}",
                position=pos,
            )
        arr.setflags(write=False)
        return cls(dense=arr)

    @property
    def n_examples(self) -> int:
        return self._n

    @property
    def is_sparse(self) -> bool:
        return self._dense is None

    @property
    def nnz(self) -> int:
        """Number of stored entries."""
        if self.is_sparse:
            return len(self._vals)
        return int(self._n) * int(self._n)

    def dense_row(self, i: int) -> np.ndarray:
        """Row i as a length-n array (dense storage only)."""
        return self._dense[i]

    def row(self, i: int) -> tuple[np.ndarray, np.ndarray]:
        """Stored entries of row i as (cols, vals), cols ascending (sparse storage only)."""
        lo, hi = self._indptr[i], self._indptr[i + 1]
        return self._cols[lo:hi], self._vals[lo:hi]

    def lookup(self, i: int, j: int) -> float:
        """Similarity of candidate i to element j; absent sparse entries read 0."""
        n = self._n
        if not (0 <= i < n and 0 <= j < n):
            raise IndexError(f"index ({i}, {j}) out of range for {n} x {n} similarity matrix")
        if self._dense is not None:
            return float(self._dense[i, j])
        cols, vals = self.row(i)
        k = np.searchsorted(cols, j)
        if k < len(cols) and cols[k] == j:
            return float(vals[k])
        return 0.0

    def to_dense(self) -> np.ndarray:
        """Materialize as a dense (n, n) array (copy)."""
        if self._dense is not None:
            return self._dense.copy()
        out = np.zeros((self._n, self._n))
        for i in range(self._n):
            cols, vals = self.row(i)
            out[i, cols] = vals
        return out

    def __repr__(self):
        kind = "sparse" if self.is_sparse else "dense"
        return f"SimilarityMatrix(n_examples={self._n}, {kind}, nnz={self.nnz})"


def _feature_values(data, what: str) -> np.ndarray:
    """Accept a FeatureMatrix or any 2-D array-like.

    Similarity construction does not require non-negative inputs (only the
    resulting similarities must be non-negative), so raw arrays are allowed.
    """
    if isinstance(data, FeatureMatrix):
        return data.values
    return _as_2d_float(data, what)


def squared_correlation_similarity(data) -> SimilarityMatrix:
    """Pairwise squared Pearson correlations of the rows of ``data``.

    Output is symmetric with entries in [0, 1] and unit diagonal. Rows need
    at least two coordinates and must not be constant (a zero-variance row
    makes the correlation undefined).
    """
    arr = _feature_values(data, "input matrix")
    if arr.shape[1] < 2:
        raise InputError(
            f"squared-correlation similarity needs at least 2 features per row, got {arr.shape[1]}"
        )
    variances = arr.var(axis=1)
    flat = np.flatnonzero(variances == 0.0)
    if flat.size:
        raise DegenerateInputError(
            f"row {flat[0]} has zero variance across its features; correlation is undefined",
            row=int(flat[0]),
        )
    sim = np.corrcoef(arr) ** 2
    # Correlation is symmetric by definition, but the BLAS product behind
    # corrcoef is not bitwise symmetric; average the halves to make it so.
    sim = (sim + sim.T) * 0.5
    # Self-correlation is exactly 1 by definition; avoid last-ulp residue.
    np.fill_diagonal(sim, 1.0)
    return SimilarityMatrix.from_dense(sim)


def cosine_similarity(data, clamp_negative: bool = False) -> SimilarityMatrix:
    """Pairwise cosine similarities of the rows of ``data``.

    Rows must not be all-zero. Negative cosines (possible when the input has
    negative entries) violate the non-negativity invariant: by default they
    raise, because silently clamping changes the objective; pass
    ``clamp_negative=True`` to replace them with 0 instead.
    """
    arr = _feature_values(data, "input matrix")
    norms = np.linalg.norm(arr, axis=1)
    flat = np.flatnonzero(norms == 0.0)
    if flat.size:
        raise DegenerateInputError(
            f"row {flat[0]} is all-zero; cosine similarity is undefined",
            row=int(flat[0]),
        )
    unit = arr / norms[:, None]
    sim = np.clip(unit @ unit.T, -1.0, 1.0)
    # The BLAS product is not bitwise symmetric; cosine similarity is.
    sim = (sim + sim.T) * 0.5
    np.fill_diagonal(sim, 1.0)
    if clamp_negative:
        sim = np.maximum(sim, 0.0)
    else:
        pos = _first_negative(sim)
        if pos is not None:
            raise ConstraintViolationError(
                f"cosine similarity is negative ({sim[pos]!r}) for rows {pos[0]} and {pos[1]}; "
                "pass clamp_negative=True to zero negatives",
                position=pos,
            )
    return SimilarityMatrix.from_dense(sim)


def sparse_from_triples(n: int, triples: Iterable[Sequence]) -> SimilarityMatrix:
    """Build a sparse SimilarityMatrix from (row, col, value) triples.

    Indices must lie in [0, n), values must be >= 0, and no (row, col) pair
    may repeat. Entries not listed are zero. Validation errors identify the
    offending triple by its position in the input sequence.
    """
    if n < 1:
        raise DegenerateInputError(f"similarity matrix needs at least one example, got n={n}")
    triples = list(triples)
    rows = np.empty(len(triples), dtype=np.int64)
    cols = np.empty(len(triples), dtype=np.int64)
    vals = np.empty(len(triples), dtype=np.float64)
    for k, t in enumerate(triples):
        try:
            i, j, v = t
            rows[k], cols[k], vals[k] = int(i), int(j), float(v)
        except (TypeError, ValueError) as exc:
            raise TripleValidationError(f"malformed triple #{k}: {t!r} ({exc})", k, tuple(t) if hasattr(t, "__len__") else (t,)) from None
        if not (0 <= rows[k] < n and 0 <= cols[k] < n):
            raise TripleValidationError(
                f"triple #{k} index out of range for n={n}: ({i}, {j}, {v})", k, (i, j, v)
            )
        if not vals[k] >= 0.0:
            raise TripleValidationError(
                f"triple #{k} has negative value: ({i}, {j}, {v})", k, (i, j, v)
            )

    order = np.lexsort((cols, rows))
    rows_s, cols_s = rows[order], cols[order]
    if len(triples) > 1:
        dup = np.flatnonzero((np.diff(rows_s) == 0) & (np.diff(cols_s) == 0))
        if dup.size:
            k = int(order[dup[0] + 1])  # later occurrence in input order
            raise TripleValidationError(
                f"duplicate (row, col) pair in triple #{k}: ({rows[k]}, {cols[k]}, {vals[k]})",
                k,
                (int(rows[k]), int(cols[k]), float(vals[k])),
            )

    indptr = np.zeros(n + 1, dtype=np.int64)
    np.add.at(indptr, rows_s + 1, 1)
    np.cumsum(indptr, out=indptr)
    cols_arr = cols_s.copy()
    vals_arr = vals[order].copy()
    for a in (indptr, cols_arr, vals_arr):
        a.setflags(write=False)
    return SimilarityMatrix(indptr=indptr, cols=cols_arr, vals=vals_arr, n=n)
