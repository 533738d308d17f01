"""Graded space of multilinear maps on a coordinate space B with the
Gerstenhaber calculus: insertion compositions, the bar-circle product,
the graded-commutator bracket, derived brackets, and the graded-Jacobi
residual.

A MultiMap of arity m on a d-dimensional space is a tensor of shape
(d,)*m + (d,); the last axis indexes the output.  The bracket of maps of
arities m and n has arity m+n-1, so the arity cap 4 bounds everything in
scope.

Conventions (degree of an arity-m map is m):

    (f o_i g)(b_1..b_{m+n-1}) = f(b_1,..,b_{i-1}, g(b_i..b_{i+n-1}), ..)
    f obar g  = sum_{i=1}^{m} (-1)^{(i-1)(n-1)} f o_i g
    [f, g]    = f obar g - (-1)^{(m-1)(n-1)} g obar f
    [f, g]_S  = [[S, f], g]          (derived bracket, for [S,S]=0)
"""

from __future__ import annotations

import numpy as np

from .errors import CapacityError, InputError
from .linalg import is_zero, zeros

ARITY_CAP = 4


class MultiMap:
    """Multilinear map B^m -> B as a dense coefficient tensor."""

    def __init__(self, field, tensor):
        tensor = np.asarray(tensor, dtype=object)
        if tensor.ndim < 2 or len(set(tensor.shape)) != 1:
            raise InputError(f"multimap tensor has bad shape {tensor.shape}")
        self.arity = tensor.ndim - 1
        if self.arity > ARITY_CAP:
            raise CapacityError(f"arity {self.arity} exceeds the cap {ARITY_CAP}")
        self.field = field
        self.tensor = tensor
        self.dim = tensor.shape[0]

    def __call__(self, *vectors):
        if len(vectors) != self.arity:
            raise InputError(f"arity-{self.arity} map applied to {len(vectors)} vectors")
        t = self.tensor
        for v in vectors:
            t = np.tensordot(np.asarray(v, dtype=object), t, axes=([0], [0]))
        return t

    def __add__(self, other):
        self._compatible(other)
        return MultiMap(self.field, self.tensor + other.tensor)

    def __sub__(self, other):
        self._compatible(other)
        return MultiMap(self.field, self.tensor - other.tensor)

    def __neg__(self):
        return MultiMap(self.field, -self.tensor)

    def scale(self, scalar):
        return MultiMap(self.field, self.tensor * scalar)

    def is_zero_map(self):
        return is_zero(self.tensor)

    def _compatible(self, other):
        if self.tensor.shape != other.tensor.shape:
            raise InputError("multimaps have different arity or dimension")

    def __repr__(self):
        return f"MultiMap(arity={self.arity}, dim={self.dim})"


def zero_map(field, dim, arity):
    return MultiMap(field, zeros((dim,) * arity + (dim,), field))


def identity_map(field, dim):
    from .linalg import identity

    return MultiMap(field, identity(dim, field))


def from_linear_map(field, matrix):
    """Arity-1 MultiMap from an endomorphism matrix (row convention)."""
    return MultiMap(field, np.asarray(matrix, dtype=object))


def from_algebra(algebra):
    """The multiplication of an algebra as an arity-2 MultiMap."""
    return MultiMap(algebra.field, algebra.c)


def circ_i(f: MultiMap, g: MultiMap, i: int) -> MultiMap:
    """Insertion of g into the i-th slot of f (1-based)."""
    m, n = f.arity, g.arity
    if not 1 <= i <= m:
        raise InputError(f"insertion index {i} out of range 1..{m}")
    if m + n - 1 > ARITY_CAP:
        raise CapacityError(
            f"composite arity {m + n - 1} exceeds the cap {ARITY_CAP}")
    if f.dim != g.dim:
        raise InputError("multimaps live on different spaces")
    # contract g's output axis into f's input slot i-1
    t = np.tensordot(f.tensor, g.tensor, axes=([i - 1], [n]))
    # axes now: f-inputs before slot, f-inputs after slot, f-output, g-inputs
    perm = (list(range(0, i - 1))
            + list(range(m, m + n))
            + list(range(i - 1, m - 1))
            + [m - 1])
    return MultiMap(f.field, np.transpose(t, perm))


def bar_circ(f: MultiMap, g: MultiMap) -> MultiMap:
    """f obar g = sum_i (-1)^{(i-1)(n-1)} f o_i g."""
    n = g.arity
    total = None
    for i in range(1, f.arity + 1):
        term = circ_i(f, g, i)
        if (i - 1) * (n - 1) % 2:
            term = -term
        total = term if total is None else total + term
    return total


def g_bracket(f: MultiMap, g: MultiMap) -> MultiMap:
    """Graded commutator [f,g] = f obar g - (-1)^{(m-1)(n-1)} g obar f."""
    fg = bar_circ(f, g)
    gf = bar_circ(g, f)
    if (f.arity - 1) * (g.arity - 1) % 2:
        return fg + gf
    return fg - gf


def derived_bracket(f: MultiMap, g: MultiMap, square: MultiMap) -> MultiMap:
    """[f, g]_S = [[S, f], g] for an arity-2 S with [S,S] = 0."""
    if square.arity != 2:
        raise InputError("derived bracket needs an arity-2 structure map")
    if not is_zero(g_bracket(square, square).tensor):
        raise InputError("structure map is not square-zero: [S,S] != 0")
    return g_bracket(g_bracket(square, f), g)


def jacobi_residual(f: MultiMap, g: MultiMap, h: MultiMap) -> MultiMap:
    """Signed three-term sum of the graded Jacobi identity; identically
    zero for a genuine graded Lie bracket:

    (-1)^{(m-1)(l-1)}[[f,g],h] + (-1)^{(l-1)(n-1)}[[h,f],g]
        + (-1)^{(n-1)(m-1)}[[g,h],f]
    """
    m, n, l = f.arity, g.arity, h.arity
    terms = [
        ((m - 1) * (l - 1), g_bracket(g_bracket(f, g), h)),
        ((l - 1) * (n - 1), g_bracket(g_bracket(h, f), g)),
        ((n - 1) * (m - 1), g_bracket(g_bracket(g, h), f)),
    ]
    total = None
    for exponent, term in terms:
        if exponent % 2:
            term = -term
        total = term if total is None else total + term
    return total
