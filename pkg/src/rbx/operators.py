"""Checkers, residuals, lifts and exhaustive searches for Rota-Baxter-type
operators: generalized (GRB), twisted (TRB), classical, Reynolds and
associative-Nijenhuis, plus the associative Yang-Baxter machinery.

The defining identities, for a linear map p: M -> A over an A-bimodule M:

    GRB:  p(m) p(n) = p( p(m).n + m.p(n) )
    TRB:  p(m) p(n) = p( p(m).n + m.p(n) ) + p( phi(p(m), p(n)) )

with phi a Hochschild 2-cocycle.  Reynolds operators are TRB with M = A
and phi = -mu; classical Rota-Baxter operators are GRB with M = A.
"""

from __future__ import annotations

import itertools

import numpy as np

from .algebra import (Algebra, Bimodule, Verdict, canonical_bimodule,
                      dual_module, extension_product, semidirect,
                      subspace_closed, twisted_extension)
from .cochains import Cochain, is_cocycle
from .errors import CapacityError, CharacteristicError, InputError
from .gerstenhaber import MultiMap, circ_i, g_bracket
from .linalg import apply_matrix, is_zero, zeros

SEARCH_BUDGET = 2 ** 20


class LinearMap:
    """Linear map between coordinate spaces, matrix of shape
    (source_dim, target_dim), row convention: image(v) = v @ matrix."""

    def __init__(self, matrix, source="", target=""):
        matrix = np.asarray(matrix, dtype=object)
        if matrix.ndim != 2:
            raise InputError(f"linear map needs a matrix, got shape {matrix.shape}")
        self.matrix = matrix
        self.source = source
        self.target = target

    @property
    def source_dim(self):
        return self.matrix.shape[0]

    @property
    def target_dim(self):
        return self.matrix.shape[1]

    def __call__(self, vec):
        return apply_matrix(vec, self.matrix)

    def then(self, other: "LinearMap") -> "LinearMap":
        """self followed by other."""
        return LinearMap(np.dot(self.matrix, other.matrix),
                         source=self.source, target=other.target)

    def __repr__(self):
        return f"LinearMap({self.source or self.source_dim}->{self.target or self.target_dim})"


class OperatorInstance:
    """A linear map op: M -> A, optionally with a 2-cocycle twist.

    The cocycle condition is enforced here, not in is_trb: a twisted
    operator only makes sense against a genuine Hochschild cocycle.
    """

    def __init__(self, algebra: Algebra, module: Bimodule, op: LinearMap,
                 cocycle: Cochain | None = None):
        if module.base.dim != algebra.dim:
            raise InputError("module is not over the instance algebra")
        if op.matrix.shape != (module.dim, algebra.dim):
            raise InputError(
                f"operator matrix must be {module.dim}x{algebra.dim} (M -> A), "
                f"got {op.matrix.shape}")
        if cocycle is not None:
            if cocycle.arity != 2 or cocycle.tensor.shape != \
                    (algebra.dim, algebra.dim, module.dim):
                raise InputError("twist must be a 2-cochain A x A -> M")
            report = is_cocycle(cocycle)
            if not report:
                raise InputError(
                    f"twist is not a Hochschild cocycle; coboundary nonzero "
                    f"at {report.witness}")
        self.algebra = algebra
        self.module = module
        self.op = op
        self.cocycle = cocycle

    @property
    def field(self):
        return self.algebra.field

    @property
    def ext_dim(self):
        return self.algebra.dim + self.module.dim

    def __repr__(self):
        kind = "twisted" if self.cocycle is not None else "plain"
        return (f"OperatorInstance({kind}, A={self.algebra.dim}, "
                f"M={self.module.dim})")


# ---------------------------------------------------------------------------
# lifts to A (+) M

def lift_matrix(inst: OperatorInstance):
    """Matrix of the lift (a, m) |-> (op(m), 0) on A (+) M."""
    dA, dM = inst.algebra.dim, inst.module.dim
    mat = zeros((dA + dM, dA + dM), inst.field)
    mat[dA:, :dA] = inst.op.matrix
    return mat


def lift_operator(inst: OperatorInstance) -> MultiMap:
    """The lift as an arity-1 element of G(A (+) M); composes to zero
    with itself."""
    return MultiMap(inst.field, lift_matrix(inst))


def lift_cocycle(inst: OperatorInstance) -> MultiMap:
    """The twist as an arity-2 map on A (+) M: values in the M-block,
    nonzero only on pairs of A-components."""
    if inst.cocycle is None:
        raise InputError("instance has no twist cochain")
    d = inst.ext_dim
    dA = inst.algebra.dim
    t = zeros((d, d, d), inst.field)
    t[:dA, :dA, dA:] = inst.cocycle.tensor
    return MultiMap(inst.field, t)


def extension_mult_map(inst: OperatorInstance) -> MultiMap:
    """mu-hat (+ phi-hat when the instance is twisted) as an arity-2
    MultiMap on A (+) M."""
    tensor = extension_product(
        inst.algebra, inst.module,
        inst.cocycle.tensor if inst.cocycle is not None else None)
    return MultiMap(inst.field, tensor)


def semidirect_mult_map(inst: OperatorInstance) -> MultiMap:
    """mu-hat alone, the semidirect product of A and M."""
    return MultiMap(inst.field, extension_product(inst.algebra, inst.module))


# ---------------------------------------------------------------------------
# checkers

def _pairwise_check(dim, evaluate) -> Verdict:
    """Run an identity on all basis pairs; witness = first failing pair."""
    for i in range(dim):
        for j in range(dim):
            lhs, rhs = evaluate(i, j)
            if not is_zero(lhs - rhs):
                return Verdict(False, (i, j), lhs=lhs, rhs=rhs)
    return Verdict(True)


def is_grb(inst: OperatorInstance) -> Verdict:
    """Generalized Rota-Baxter identity on all basis pairs of M."""
    if inst.cocycle is not None:
        raise InputError("instance carries a twist; use is_trb")
    return _trb_identity(inst, twisted=False)


def is_trb(inst: OperatorInstance) -> Verdict:
    """Twisted Rota-Baxter identity on all basis pairs of M."""
    if inst.cocycle is None:
        raise InputError("instance has no twist cochain; use is_grb")
    return _trb_identity(inst, twisted=True)


def _trb_identity(inst, twisted) -> Verdict:
    A, M, p = inst.algebra, inst.module, inst.op

    def evaluate(i, j):
        m, n = M.basis(i), M.basis(j)
        pm, pn = p(m), p(n)
        lhs = A.mul(pm, pn)
        inner = M.act_left(pm, n) + M.act_right(m, pn)
        if twisted:
            inner = inner + inst.cocycle(pm, pn)
        return lhs, p(inner)

    return _pairwise_check(M.dim, evaluate)


def is_classical_rb(algebra: Algebra, op: LinearMap) -> Verdict:
    """Classical weight-zero Rota-Baxter identity: the M = A case."""
    inst = OperatorInstance(algebra, canonical_bimodule(algebra), op)
    return is_grb(inst)


def is_reynolds(algebra: Algebra, op: LinearMap) -> Verdict:
    """R(a)R(b) = R(R(a)b + aR(b)) - R(R(a)R(b)) on basis pairs."""
    _expect_endo(algebra, op)

    def evaluate(i, j):
        a, b = algebra.basis(i), algebra.basis(j)
        ra, rb = op(a), op(b)
        lhs = algebra.mul(ra, rb)
        rhs = op(algebra.mul(ra, b) + algebra.mul(a, rb)) - op(algebra.mul(ra, rb))
        return lhs, rhs

    return _pairwise_check(algebra.dim, evaluate)


def is_nijenhuis(algebra: Algebra, op: LinearMap) -> Verdict:
    """N(a)N(b) = N(N(a)b + aN(b)) - N(N(ab)) on basis pairs."""
    _expect_endo(algebra, op)

    def evaluate(i, j):
        a, b = algebra.basis(i), algebra.basis(j)
        na, nb = op(a), op(b)
        lhs = algebra.mul(na, nb)
        rhs = op(algebra.mul(na, b) + algebra.mul(a, nb)) - op(op(algebra.mul(a, b)))
        return lhs, rhs

    return _pairwise_check(algebra.dim, evaluate)


def _expect_endo(algebra, op):
    if op.matrix.shape != (algebra.dim, algebra.dim):
        raise InputError("operator must be an endomorphism of the algebra")


def reynolds_as_twisted(algebra: Algebra, op: LinearMap) -> OperatorInstance:
    """A Reynolds candidate viewed as a twisted operator: M = A, twist -mu."""
    module = canonical_bimodule(algebra)
    phi = Cochain(algebra, module, -algebra.c)
    return OperatorInstance(algebra, module, op, phi)


# ---------------------------------------------------------------------------
# structure residuals via the bracket engine

def structure_residual(inst: OperatorInstance) -> MultiMap:
    """(1/2)[p^, p^]_mu^  (+ (1/6)[[[phi^,p^],p^],p^] when twisted);
    the zero map exactly when the instance satisfies its identity.
    """
    field = inst.field
    if inst.cocycle is not None and field.char in (2, 3):
        raise CharacteristicError(
            "the twisted structure residual needs 1/6; characteristic "
            f"{field.char} is refused")
    if field.char == 2:
        raise CharacteristicError(
            "the structure residual needs 1/2; characteristic 2 is refused")
    mu_hat = semidirect_mult_map(inst)
    p_hat = lift_operator(inst)
    residual = g_bracket(g_bracket(mu_hat, p_hat), p_hat).scale(field.inverse_int(2))
    if inst.cocycle is not None:
        phi_hat = lift_cocycle(inst)
        triple = g_bracket(g_bracket(g_bracket(phi_hat, p_hat), p_hat), p_hat)
        residual = residual + triple.scale(field.inverse_int(6))
    return residual


def twist_insertion(inst: OperatorInstance) -> MultiMap:
    """p^ o phi^ o (p^ (x) p^): the intermediate of the twisted structure
    equation, equal to -(1/6)[[[phi^,p^],p^],p^]."""
    p_hat = lift_operator(inst)
    phi_hat = lift_cocycle(inst)
    both = circ_i(circ_i(phi_hat, p_hat, 1), p_hat, 2)
    return circ_i(p_hat, both, 1)


def graph_check(inst: OperatorInstance) -> Verdict:
    """Is the graph {(op(m), m)} a subalgebra of the (twisted) extension?"""
    if inst.cocycle is None:
        ext = semidirect(inst.algebra, inst.module)
    else:
        ext = twisted_extension(inst.algebra, inst.module, inst.cocycle)
    dA, dM = inst.algebra.dim, inst.module.dim
    basis = []
    for j in range(dM):
        vec = zeros(dA + dM, inst.field)
        vec[:dA] = inst.op.matrix[j]
        vec[dA + j] = inst.field.one
        basis.append(vec)
    return subspace_closed(ext, basis)


# ---------------------------------------------------------------------------
# associative Yang-Baxter equation

def aybe_residual(algebra: Algebra, r) -> np.ndarray:
    """Residual tensor of the associative Yang-Baxter equation for
    r in A (x) A, as an element of A (x) A (x) A:

        sum a_i a_j (x) b^j (x) b^i  -  sum a_i (x) b^i a_j (x) b^j
            + sum a_j (x) a_i (x) b^i b^j
    """
    r = np.asarray(r, dtype=object)
    d = algebra.dim
    if r.shape != (d, d):
        raise InputError(f"r must be a {d}x{d} tensor in A (x) A")
    c = algebra.c
    out = zeros((d, d, d), algebra.field)
    for u in range(d):
        for v in range(d):
            for w in range(d):
                t1 = sum((r[s, w] * r[t, v] * c[s, t, u]
                          for s in range(d) for t in range(d)),
                         start=algebra.field.zero)
                t2 = sum((r[u, t] * r[s, w] * c[t, s, v]
                          for s in range(d) for t in range(d)),
                         start=algebra.field.zero)
                t3 = sum((r[v, s] * r[u, t] * c[s, t, w]
                          for s in range(d) for t in range(d)),
                         start=algebra.field.zero)
                out[u, v, w] = t1 - t2 + t3
    return out


def r_tilde(algebra: Algebra, r) -> OperatorInstance:
    """The operator A* -> A, f |-> sum a_i f(b^i), of a skew-symmetric
    AYBE solution r, over the dual bimodule."""
    r = np.asarray(r, dtype=object)
    d = algebra.dim
    if r.shape != (d, d):
        raise InputError(f"r must be a {d}x{d} tensor in A (x) A")
    if not is_zero(r + r.T):
        raise InputError("r is not skew-symmetric")
    if not is_zero(aybe_residual(algebra, r)):
        raise InputError("r does not solve the associative Yang-Baxter equation")
    module = dual_module(algebra)
    matrix = r.T.copy()  # row i = image of the i-th dual basis vector
    return OperatorInstance(algebra, module,
                            LinearMap(matrix, source="A*", target="A"))


# ---------------------------------------------------------------------------
# exhaustive search over prime fields

_CHECKERS = ("grb", "rb", "trb", "reynolds", "nijenhuis", "aybe")


def search_operators(algebra: Algebra, module: Bimodule | None, kind: str,
                     cocycle: Cochain | None = None, budget: int | None = None):
    """Enumerate all candidates of the given kind over a prime field, in
    lexicographic order of the flattened matrix entries, and return those
    passing the kind's checker.

    Candidates are maps M -> A (grb/trb), endomorphisms of A
    (rb/reynolds/nijenhuis), or tensors in A (x) A (aybe).
    """
    if kind not in _CHECKERS:
        raise InputError(f"unknown search kind {kind!r}; one of {_CHECKERS}")
    field = algebra.field
    if field.char == 0:
        raise InputError("exhaustive search needs a prime field")
    if budget is None:
        budget = SEARCH_BUDGET
    if kind in ("grb", "trb"):
        if module is None:
            raise InputError(f"search kind {kind!r} needs a bimodule")
        shape = (module.dim, algebra.dim)
    elif kind == "aybe":
        shape = (algebra.dim, algebra.dim)
    else:
        shape = (algebra.dim, algebra.dim)
        module = canonical_bimodule(algebra)
    n_entries = shape[0] * shape[1]
    total = field.char ** n_entries
    if total > budget:
        raise CapacityError(
            f"search space {field.char}^{n_entries} = {total} exceeds the "
            f"budget {budget}")
    if kind == "trb" and cocycle is None:
        raise InputError("search kind 'trb' needs the twist cochain")

    scalars = field.elements()
    solutions = []
    for entries in itertools.product(scalars, repeat=n_entries):
        candidate = np.array(entries, dtype=object).reshape(shape)
        if _passes(algebra, module, kind, candidate, cocycle):
            solutions.append(candidate)
    return solutions


def _passes(algebra, module, kind, candidate, cocycle):
    if kind == "aybe":
        return is_zero(aybe_residual(algebra, candidate))
    lm = LinearMap(candidate)
    if kind in ("grb", "rb"):
        return bool(is_grb(OperatorInstance(algebra, module, lm)))
    if kind == "trb":
        return bool(is_trb(OperatorInstance(algebra, module, lm, cocycle)))
    if kind == "reynolds":
        return bool(is_reynolds(algebra, lm))
    return bool(is_nijenhuis(algebra, lm))
