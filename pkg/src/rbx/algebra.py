"""Finite-dimensional associative algebras, bimodules, and extensions.

An algebra is a dim x dim x dim structure-constant tensor c with
e_i * e_j = sum_k c[i,j,k] e_k; a bimodule over it carries left/right
action tensors.  Everything is stored as object-dtype numpy tensors of
exact scalars and validated on construction, so an Algebra value is
always genuinely associative.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError
from .linalg import Span, first_nonzero_index, is_zero, rank, row_reduce, zeros


@dataclass(frozen=True)
class Verdict:
    """Outcome of an identity check.

    `witness` is the lexicographically first failing index tuple;
    `lhs`/`rhs` hold both evaluated sides at the witness.  Truthy iff the
    check passed.
    """

    ok: bool
    witness: tuple | None = None
    lhs: object = None
    rhs: object = None
    detail: str = ""
    failures: tuple = ()

    def __bool__(self):
        return self.ok


def assoc_check(c) -> Verdict:
    """Associativity of a structure-constant tensor on all basis triples.

    Reports the first failing (i, j, k, l) in lexicographic order, with
    the l-th coefficient of (e_i e_j) e_k and e_i (e_j e_k).
    """
    c = np.asarray(c, dtype=object)
    if c.ndim != 3 or len(set(c.shape)) != 1:
        raise InputError(f"structure constants must be cubic, got shape {c.shape}")
    d = c.shape[0]
    for i in range(d):
        for j in range(d):
            left = np.dot(c[i, j], c.reshape(d, d * d)).reshape(d, d)
            # left[k] = (e_i e_j) e_k ; right[k] = e_i (e_j e_k)
            right = np.dot(c[j], c[i])
            for k in range(d):
                diff = left[k] - right[k]
                for l in range(d):
                    if bool(diff[l]):
                        return Verdict(False, (i, j, k, l),
                                       lhs=left[k][l], rhs=right[k][l],
                                       detail="associativity fails")
    return Verdict(True)


class Algebra:
    """Associative algebra by structure constants; validated on creation."""

    def __init__(self, field, c, labels=None):
        c = np.asarray(c, dtype=object)
        report = assoc_check(c)
        if not report:
            i, j, k, l = report.witness
            raise InputError(
                f"structure constants are not associative at "
                f"(i,j,k,l)=({i},{j},{k},{l}): {report.lhs} != {report.rhs}")
        self.field = field
        self.c = c
        self.dim = c.shape[0]
        if labels is not None and len(labels) != self.dim:
            raise InputError("label count does not match dimension")
        self.labels = list(labels) if labels is not None else [f"e{i}" for i in range(self.dim)]

    def mul(self, u, v):
        """Product of two coordinate vectors."""
        u = np.asarray(u, dtype=object)
        v = np.asarray(v, dtype=object)
        return np.dot(np.dot(u, self.c.reshape(self.dim, -1)).reshape(self.dim, self.dim).T, v)

    def zero_vec(self):
        return zeros(self.dim, self.field)

    def basis(self, i):
        vec = self.zero_vec()
        vec[i] = self.field.one
        return vec

    def unit(self):
        """Coordinates of the unit element, or None if non-unital."""
        d = self.dim
        rows = []
        rhs = []
        for j in range(d):
            for k in range(d):
                rows.append([self.c[i, j, k] for i in range(d)])
                rhs.append(self.field.one if j == k else self.field.zero)
                rows.append([self.c[j, i, k] for i in range(d)])
                rhs.append(self.field.one if j == k else self.field.zero)
        aug = np.array([row + [b] for row, b in zip(rows, rhs)], dtype=object)
        rref, pivots = row_reduce(aug)
        if d in pivots:
            return None
        sol = zeros(d, self.field)
        for r, c_ in enumerate(pivots):
            sol[c_] = rref[r, d]
        # the system may be underdetermined only if the unit is non-unique,
        # which cannot happen; verify the candidate anyway
        for j in range(d):
            ej = self.basis(j)
            if not (tensors_equal_vec(self.mul(sol, ej), ej)
                    and tensors_equal_vec(self.mul(ej, sol), ej)):
                return None
        return sol

    def __repr__(self):
        return f"Algebra(dim={self.dim}, field={self.field.name})"


def tensors_equal_vec(a, b):
    return is_zero(np.asarray(a, dtype=object) - np.asarray(b, dtype=object))


class Bimodule:
    """Bimodule over an Algebra: left (dA,dM,dM) and right (dM,dA,dM) actions.

    Shape checks happen here; the axioms live in `bimodule_check` so that
    deliberately broken modules can be built for testing (pass check=False).
    """

    def __init__(self, base: Algebra, left, right, labels=None, check=True):
        left = np.asarray(left, dtype=object)
        right = np.asarray(right, dtype=object)
        dA = base.dim
        if left.ndim != 3 or left.shape[0] != dA or left.shape[1] != left.shape[2]:
            raise InputError(f"left action tensor has bad shape {left.shape}")
        dM = left.shape[1]
        if right.shape != (dM, dA, dM):
            raise InputError(f"right action tensor has bad shape {right.shape}")
        self.base = base
        self.left = left
        self.right = right
        self.dim = dM
        self.field = base.field
        self.labels = list(labels) if labels is not None else [f"m{i}" for i in range(dM)]
        if check:
            report = bimodule_check(base, self)
            if not report:
                raise InputError(f"bimodule axioms fail: {report.detail} at {report.witness}")

    def act_left(self, a_vec, m_vec):
        """a . m for coordinate vectors a in A, m in M."""
        dA, dM = self.base.dim, self.dim
        return np.dot(np.dot(a_vec, self.left.reshape(dA, -1)).reshape(dM, dM).T, m_vec)

    def act_right(self, m_vec, a_vec):
        dA, dM = self.base.dim, self.dim
        return np.dot(np.dot(m_vec, self.right.reshape(dM, -1)).reshape(dA, dM).T, a_vec)

    def zero_vec(self):
        return zeros(self.dim, self.field)

    def basis(self, i):
        vec = self.zero_vec()
        vec[i] = self.field.one
        return vec

    def __repr__(self):
        return f"Bimodule(dim={self.dim}, over dim={self.base.dim})"


def canonical_bimodule(algebra: Algebra) -> Bimodule:
    """A acting on itself by its own product."""
    return Bimodule(algebra, algebra.c, algebra.c, labels=algebra.labels, check=False)


def dual_module(algebra: Algebra) -> Bimodule:
    """The dual space A* with (a.f)(b) = f(ba) and (f.a)(b) = f(ab)."""
    d = algebra.dim
    c = algebra.c
    left = zeros((d, d, d), algebra.field)
    right = zeros((d, d, d), algebra.field)
    for s in range(d):
        for i in range(d):
            for j in range(d):
                left[s, i, j] = c[j, s, i]
                right[i, s, j] = c[s, j, i]
    return Bimodule(algebra, left, right,
                    labels=[f"{l}*" for l in algebra.labels], check=False)


def bimodule_check(algebra: Algebra, module: Bimodule) -> Verdict:
    """The three bimodule axioms on all basis triples.

    Axioms: (ab).m = a.(b.m); m.(ab) = (m.a).b; (a.m).b = a.(m.b).
    Witness is (axiom_index, i, j, k, l) for the first failure.
    """
    if module.base is not algebra and module.base.dim != algebra.dim:
        raise InputError("module is not over the given algebra")
    dA, dM = algebra.dim, module.dim
    for i in range(dA):
        a = algebra.basis(i)
        for j in range(dA):
            b = algebra.basis(j)
            ab = algebra.mul(a, b)
            for k in range(dM):
                m = module.basis(k)
                diff1 = module.act_left(ab, m) - module.act_left(a, module.act_left(b, m))
                bad = first_nonzero_index(diff1)
                if bad is not None:
                    return Verdict(False, (0, i, j, k, bad[0]),
                                   detail="(ab).m != a.(b.m)")
                diff2 = module.act_right(m, algebra.mul(a, b)) - \
                    module.act_right(module.act_right(m, a), b)
                bad = first_nonzero_index(diff2)
                if bad is not None:
                    return Verdict(False, (1, i, j, k, bad[0]),
                                   detail="m.(ab) != (m.a).b")
                diff3 = module.act_right(module.act_left(a, m), b) - \
                    module.act_left(a, module.act_right(m, b))
                bad = first_nonzero_index(diff3)
                if bad is not None:
                    return Verdict(False, (2, i, j, k, bad[0]),
                                   detail="(a.m).b != a.(m.b)")
    return Verdict(True)


def extension_product(algebra: Algebra, module: Bimodule, cocycle_tensor=None):
    """Raw product tensor on A (+) M:
    (a,m)*(b,n) = (ab, a.n + m.b [+ phi(a,b)]).

    Returns the (d,d,d) tensor with the A-block first; no associativity
    gate, so callers can probe non-cocycle extensions.
    """
    dA, dM = algebra.dim, module.dim
    d = dA + dM
    field = algebra.field
    c = zeros((d, d, d), field)
    c[:dA, :dA, :dA] = algebra.c
    c[:dA, dA:, dA:] = module.left
    c[dA:, :dA, dA:] = module.right
    if cocycle_tensor is not None:
        cocycle_tensor = np.asarray(cocycle_tensor, dtype=object)
        if cocycle_tensor.shape != (dA, dA, dM):
            raise InputError(
                f"2-cochain tensor has shape {cocycle_tensor.shape}, "
                f"expected {(dA, dA, dM)}")
        c[:dA, :dA, dA:] = c[:dA, :dA, dA:] + cocycle_tensor
    return c


def _ext_labels(algebra, module):
    return list(algebra.labels) + list(module.labels)


def semidirect(algebra: Algebra, module: Bimodule) -> Algebra:
    """The trivial abelian extension A (+)_0 M."""
    return Algebra(algebra.field, extension_product(algebra, module),
                   labels=_ext_labels(algebra, module))


def twisted_extension(algebra: Algebra, module: Bimodule, cocycle) -> Algebra:
    """A (+)_phi M for a 2-cochain phi; associative iff phi is a cocycle,
    and the Algebra constructor enforces exactly that."""
    tensor = cocycle.tensor if hasattr(cocycle, "tensor") else cocycle
    try:
        return Algebra(algebra.field, extension_product(algebra, module, tensor),
                       labels=_ext_labels(algebra, module))
    except InputError as exc:
        raise InputError(
            f"twisted extension is not associative (the 2-cochain is "
            f"not a cocycle): {exc}") from exc


def subspace_closed(algebra: Algebra, basis_vectors) -> Verdict:
    """Is the span of `basis_vectors` closed under the product?

    Requires a linearly independent basis; on failure the witness is the
    first basis pair (i, j) whose product escapes, with the product vector
    and its residual after elimination.
    """
    vecs = [np.asarray(v, dtype=object) for v in basis_vectors]
    for v in vecs:
        if v.shape != (algebra.dim,):
            raise InputError("basis vector has wrong length")
    span = Span(vecs)
    if span.rank != len(vecs):
        raise InputError("basis vectors are linearly dependent")
    for i, u in enumerate(vecs):
        for j, v in enumerate(vecs):
            prod = algebra.mul(u, v)
            residual = span.reduce(prod)
            if not is_zero(residual):
                return Verdict(False, (i, j), lhs=prod, rhs=residual,
                               detail="product escapes the span")
    return Verdict(True)


def intertwiner_check(T, P, Q) -> Verdict:
    """Does T intertwine the arity-2 maps P and Q: T(P(x,y)) = Q(Tx,Ty)?

    T must be an invertible endomorphism of the common space.
    """
    mat = np.asarray(T.matrix if hasattr(T, "matrix") else T, dtype=object)
    d = mat.shape[0]
    if mat.shape != (d, d):
        raise InputError("intertwiner must be an endomorphism")
    if rank(mat) != d:
        raise InputError("intertwiner is singular")
    pt = P.tensor if hasattr(P, "tensor") else np.asarray(P, dtype=object)
    qt = Q.tensor if hasattr(Q, "tensor") else np.asarray(Q, dtype=object)
    if pt.shape != (d, d, d) or qt.shape != (d, d, d):
        raise InputError("P and Q must be arity-2 maps on the same space")
    for i in range(d):
        ti = mat[i]
        for j in range(d):
            tj = mat[j]
            lhs = np.dot(pt[i, j], mat)
            rhs = np.dot(np.dot(ti, qt.reshape(d, -1)).reshape(d, d).T, tj)
            diff = lhs - rhs
            bad = first_nonzero_index(diff)
            if bad is not None:
                return Verdict(False, (i, j, bad[0]), lhs=lhs[bad[0]], rhs=rhs[bad[0]])
    return Verdict(True)
