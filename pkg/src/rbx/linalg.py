"""Exact linear algebra on object-dtype numpy tensors.

Tensors hold Fraction or FpElement entries; numpy supplies shape
bookkeeping and object-dtype contraction (tensordot dispatches to the
scalars' __mul__/__add__), so every result stays exact.
"""

from __future__ import annotations

import numpy as np

from .errors import InputError


def zeros(shape, field):
    arr = np.empty(shape, dtype=object)
    arr[...] = field.zero
    return arr


def identity(n, field):
    arr = zeros((n, n), field)
    for i in range(n):
        arr[i, i] = field.one
    return arr


def as_tensor(entries, field, shape=None):
    """Nested lists of raw schema scalars -> object ndarray over `field`."""
    arr = np.array(
        [field.parse(v) for v in np.asarray(entries, dtype=object).flat],
        dtype=object,
    ).reshape(np.asarray(entries, dtype=object).shape)
    if shape is not None and arr.shape != tuple(shape):
        raise InputError(f"expected tensor of shape {tuple(shape)}, got {arr.shape}")
    return arr


def is_zero(arr):
    return all(not bool(x) for x in np.asarray(arr, dtype=object).flat)


def tensors_equal(a, b):
    a = np.asarray(a, dtype=object)
    b = np.asarray(b, dtype=object)
    return a.shape == b.shape and is_zero(a - b)


def first_nonzero_index(arr):
    """Lexicographically first index with a nonzero entry, or None."""
    for idx in np.ndindex(arr.shape):
        if bool(arr[idx]):
            return idx
    return None


def apply_matrix(vec, matrix):
    """Row-vector convention: image of `vec` under the map with `matrix`
    (shape source_dim x target_dim)."""
    return np.dot(np.asarray(vec, dtype=object), matrix)


def row_reduce(matrix):
    """Reduced row echelon form over the exact scalar field.

    Returns (rref, pivot_columns).  The input is not modified.
    """
    m = np.array(matrix, dtype=object, copy=True)
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if bool(m[i, c])), None)
        if pivot is None:
            continue
        if pivot != r:
            m[[r, pivot]] = m[[pivot, r]]
        lead = m[r, c]
        m[r] = np.array([x / lead for x in m[r]], dtype=object)
        for i in range(rows):
            if i != r and bool(m[i, c]):
                m[i] = m[i] - m[r] * m[i, c]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(matrix):
    return len(row_reduce(matrix)[1])


def invert(matrix):
    """Exact inverse of a square matrix; raises InputError if singular."""
    matrix = np.asarray(matrix, dtype=object)
    n, m = matrix.shape
    if n != m:
        raise InputError(f"cannot invert a {n}x{m} matrix")
    aug = np.concatenate([matrix, identity(n, _field_of(matrix))], axis=1)
    rref, pivots = row_reduce(aug)
    if pivots[:n] != list(range(n)):
        raise InputError("matrix is singular")
    return rref[:, n:]


def _field_of(arr):
    """Recover the scalar field from a tensor's entries."""
    from .fields import FpElement, PrimeField, QQ

    for x in arr.flat:
        if isinstance(x, FpElement):
            return PrimeField(x.p)
        return QQ
    raise InputError("cannot infer field of an empty tensor")


class Span:
    """A subspace given by spanning vectors, with exact membership tests."""

    def __init__(self, vectors):
        mat = np.array([np.asarray(v, dtype=object) for v in vectors], dtype=object)
        self.dim_ambient = mat.shape[1]
        self.rref, self.pivots = row_reduce(mat)
        self.rank = len(self.pivots)

    def reduce(self, vec):
        """Residual of `vec` after elimination against the span basis."""
        v = np.array(vec, dtype=object, copy=True)
        for r, c in enumerate(self.pivots):
            if bool(v[c]):
                v = v - self.rref[r] * v[c]
        return v

    def contains(self, vec):
        return is_zero(self.reduce(vec))
