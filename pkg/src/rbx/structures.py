"""Dendriform and NS-algebras: axiom checkers, construction from
(twisted) Rota-Baxter operators, induced associative products and
bimodule actions, and instance-level functor round-trips.

Dendriform axioms, for products succ (>) and prec (<):

    (d1)  (x < y) < z = x < (y > z + y < z)
    (d2)  (x > y) < z = x > (y < z)
    (d3)  x > (y > z) = (x > y + x < y) > z

NS axioms add a third product vee (v), with x*y = x>y + x<y + x v y:

    (t1)  (x < y) < z = x < (y > z + y < z + y v z)
    (t2)  (x > y) < z = x > (y < z)
    (t3)  x > (y > z) = (x > y + x < y + x v y) > z
    (t4)  x > (y v z) - (x*y) v z + x v (y*z) - (x v y) < z = 0
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import Algebra, Bimodule, Verdict, bimodule_check
from .cochains import Cochain
from .errors import InputError
from .linalg import first_nonzero_index, identity, is_zero, zeros
from .operators import LinearMap, OperatorInstance, is_grb, is_trb


class Dendriform:
    """Two product tensors on a module; validity is what check_dendriform
    decides, so raw (possibly broken) tensors can be wrapped for testing."""

    def __init__(self, field, succ, prec, labels=None):
        succ = np.asarray(succ, dtype=object)
        prec = np.asarray(prec, dtype=object)
        if succ.ndim != 3 or len(set(succ.shape)) != 1 or succ.shape != prec.shape:
            raise InputError("dendriform product tensors must be equal-shape cubes")
        self.field = field
        self.succ = succ
        self.prec = prec
        self.dim = succ.shape[0]
        self.labels = list(labels) if labels is not None else [f"m{i}" for i in range(self.dim)]

    def total_tensor(self):
        return self.succ + self.prec

    def __repr__(self):
        return f"Dendriform(dim={self.dim})"


class NSAlgebra:
    """Three product tensors succ, prec, vee; see check_ns."""

    def __init__(self, field, succ, prec, vee, labels=None):
        succ = np.asarray(succ, dtype=object)
        prec = np.asarray(prec, dtype=object)
        vee = np.asarray(vee, dtype=object)
        if succ.ndim != 3 or len(set(succ.shape)) != 1 or \
                succ.shape != prec.shape or succ.shape != vee.shape:
            raise InputError("NS product tensors must be equal-shape cubes")
        self.field = field
        self.succ = succ
        self.prec = prec
        self.vee = vee
        self.dim = succ.shape[0]
        self.labels = list(labels) if labels is not None else [f"m{i}" for i in range(self.dim)]

    def total_tensor(self):
        return self.succ + self.prec + self.vee

    def __repr__(self):
        return f"NSAlgebra(dim={self.dim})"


@dataclass
class InducedActions:
    """Actions making A a bimodule over the induced algebra on M:
    m ._p a = p(m)a - p(m.a)  (left action of M_ass on A),
    a ._p m = ap(m) - p(a.m)  (right action)."""

    algebra: Algebra            # the induced associative algebra M_ass
    module: Bimodule            # A as an M_ass-bimodule
    left: np.ndarray            # (dM, dA, dA)
    right: np.ndarray           # (dA, dM, dA)


def check_dendriform(dend: Dendriform) -> Verdict:
    """All three axioms on every basis triple; reports every violated
    axiom (first witness per axiom), not just the first."""
    failures = _axiom_failures(dend.succ, dend.prec, None)
    if not failures:
        return Verdict(True)
    first = failures[0]
    return Verdict(False, first[1], detail="; ".join(sorted({f[0] for f in failures})),
                   failures=tuple(failures))


def check_ns(ns: NSAlgebra) -> Verdict:
    """All four axioms on every basis triple; reports every violated axiom."""
    failures = _axiom_failures(ns.succ, ns.prec, ns.vee)
    if not failures:
        return Verdict(True)
    first = failures[0]
    return Verdict(False, first[1], detail="; ".join(sorted({f[0] for f in failures})),
                   failures=tuple(failures))


def _axiom_failures(succ, prec, vee):
    """Shared checker: vee=None means dendriform, else NS.
    Returns one (axiom, (i,j,k), lhs, rhs) per violated axiom."""
    d = succ.shape[0]
    total = succ + prec if vee is None else succ + prec + vee
    names = ("t1", "t2", "t3", "t4") if vee is not None else ("d1", "d2", "d3")
    found = {}

    def record(name, idx, lhs, rhs):
        if name not in found:
            found[name] = (name, idx, lhs, rhs)

    def left_assoc(first, second, i, j, k):
        # (e_i FIRST e_j) SECOND e_k, as an output vector
        return np.dot(first[i, j], second.reshape(d, -1)).reshape(d, d)[k]

    def right_assoc(first, second, i, j, k):
        # e_i FIRST (e_j SECOND e_k)
        return np.dot(second[j, k], first[i])

    for i in range(d):
        for j in range(d):
            for k in range(d):
                # (x < y) < z  vs  x < (y > z + y < z [+ y v z])
                lhs = left_assoc(prec, prec, i, j, k)
                rhs = right_assoc(prec, total, i, j, k)
                if not is_zero(lhs - rhs):
                    record(names[0], (i, j, k), lhs, rhs)
                # (x > y) < z  vs  x > (y < z)
                lhs = left_assoc(succ, prec, i, j, k)
                rhs = right_assoc(succ, prec, i, j, k)
                if not is_zero(lhs - rhs):
                    record(names[1], (i, j, k), lhs, rhs)
                # x > (y > z)  vs  (x > y + x < y [+ x v y]) > z
                lhs = right_assoc(succ, succ, i, j, k)
                rhs = left_assoc(total, succ, i, j, k)
                if not is_zero(lhs - rhs):
                    record(names[2], (i, j, k), lhs, rhs)
                if vee is not None:
                    # x > (y v z) - (x*y) v z + x v (y*z) - (x v y) < z = 0
                    resid = (right_assoc(succ, vee, i, j, k)
                             - left_assoc(total, vee, i, j, k)
                             + right_assoc(vee, total, i, j, k)
                             - left_assoc(vee, prec, i, j, k))
                    if not is_zero(resid):
                        record("t4", (i, j, k), resid, None)
    order = {name: pos for pos, name in enumerate(names)}
    return sorted(found.values(), key=lambda f: (order[f[0]], f[1]))


def dendriform_from_grb(inst: OperatorInstance) -> Dendriform:
    """m > n := p(m).n and m < n := m.p(n); needs a GRB instance."""
    report = is_grb(inst)
    if not report:
        raise InputError(
            f"operator is not generalized Rota-Baxter; identity fails at "
            f"basis pair {report.witness}")
    succ, prec = _dendriform_tensors(inst)
    return Dendriform(inst.field, succ, prec, labels=inst.module.labels)


def ns_from_trb(inst: OperatorInstance) -> NSAlgebra:
    """m > n := p(m).n, m < n := m.p(n), m v n := phi(p(m), p(n));
    needs a TRB instance."""
    report = is_trb(inst)
    if not report:
        raise InputError(
            f"operator is not twisted Rota-Baxter; identity fails at "
            f"basis pair {report.witness}")
    succ, prec = _dendriform_tensors(inst)
    M, p = inst.module, inst.op
    vee = zeros((M.dim, M.dim, M.dim), inst.field)
    for i in range(M.dim):
        for j in range(M.dim):
            vee[i, j] = inst.cocycle(p(M.basis(i)), p(M.basis(j)))
    return NSAlgebra(inst.field, succ, prec, vee, labels=inst.module.labels)


def _dendriform_tensors(inst):
    M, p = inst.module, inst.op
    d = M.dim
    succ = zeros((d, d, d), inst.field)
    prec = zeros((d, d, d), inst.field)
    for i in range(d):
        for j in range(d):
            succ[i, j] = M.act_left(p(M.basis(i)), M.basis(j))
            prec[i, j] = M.act_right(M.basis(i), p(M.basis(j)))
    return succ, prec


def total_product(structure) -> Algebra:
    """The sum of the products as an associative Algebra (construction
    fails loudly if the structure's axioms do not hold)."""
    checker = check_ns if isinstance(structure, NSAlgebra) else check_dendriform
    report = checker(structure)
    if not report:
        raise InputError(f"structure axioms fail: {report.detail}")
    return Algebra(structure.field, structure.total_tensor(), labels=structure.labels)


def identity_operator(structure) -> OperatorInstance:
    """The identity map of a dendriform (resp. NS) algebra onto its total
    algebra, as a GRB (resp. TRB) instance: e.x = e > x, x.e = x < e, and
    for NS input the twist is the vee product."""
    total = total_product(structure)
    module = Bimodule(total, structure.succ, structure.prec,
                      labels=structure.labels, check=False)
    report = bimodule_check(total, module)
    if not report:
        raise InputError(f"induced actions fail bimodule axioms at {report.witness}")
    op = LinearMap(identity(structure.dim, structure.field),
                   source="M", target="A")
    if isinstance(structure, NSAlgebra):
        twist = Cochain(total, module, structure.vee)
        return OperatorInstance(total, module, op, twist)
    return OperatorInstance(total, module, op)


def induced_actions(inst: OperatorInstance) -> InducedActions:
    """The actions of the induced algebra M_ass on A, for a GRB instance."""
    report = is_grb(inst)
    if not report:
        raise InputError(
            f"operator is not generalized Rota-Baxter; identity fails at "
            f"basis pair {report.witness}")
    A, M, p = inst.algebra, inst.module, inst.op
    dA, dM = A.dim, M.dim
    m_ass = total_product(dendriform_from_grb(inst))
    left = zeros((dM, dA, dA), inst.field)
    right = zeros((dA, dM, dA), inst.field)
    for j in range(dM):
        m = M.basis(j)
        pm = p(m)
        for i in range(dA):
            a = A.basis(i)
            left[j, i] = A.mul(pm, a) - p(M.act_right(m, a))
            right[i, j] = A.mul(a, pm) - p(M.act_left(a, m))
    module = Bimodule(m_ass, left, right, labels=A.labels, check=False)
    check = bimodule_check(m_ass, module)
    if not check:
        raise InputError(f"induced actions fail bimodule axioms at {check.witness}")
    return InducedActions(m_ass, module, left, right)


def derivation_dual(inst: OperatorInstance, omega: LinearMap, z) -> OperatorInstance:
    """Dual operator of a GRB instance: a derivation W: A -> M with
    W(p(m)) = z m for a scalar z becomes a GRB operator A -> M_ass over
    the induced actions."""
    A, M, p = inst.algebra, inst.module, inst.op
    if omega.matrix.shape != (A.dim, M.dim):
        raise InputError("derivation must map A to M")
    for i in range(A.dim):
        a = A.basis(i)
        for j in range(A.dim):
            b = A.basis(j)
            lhs = omega(A.mul(a, b))
            rhs = M.act_right(omega(a), b) + M.act_left(a, omega(b))
            if not is_zero(lhs - rhs):
                raise InputError(
                    f"map is not a derivation: W(ab) != W(a).b + a.W(b) at "
                    f"basis pair ({i},{j})")
    composed = np.dot(p.matrix, omega.matrix)
    if not is_zero(composed - identity(M.dim, inst.field) * z):
        raise InputError("W o p is not z times the identity on M")
    actions = induced_actions(inst)
    return OperatorInstance(actions.algebra, actions.module,
                            LinearMap(omega.matrix, source="A", target="M_ass"))


def grb_morphism_check(psi0: LinearMap, psi1: LinearMap,
                       src: OperatorInstance, dst: OperatorInstance) -> Verdict:
    """Morphism of operator instances: the square psi0 o p = p' o psi1
    commutes and psi1 intertwines the actions:
    psi1(a.m) = psi0(a).psi1(m) and psi1(m.a) = psi1(m).psi0(a)."""
    if psi0.matrix.shape != (src.algebra.dim, dst.algebra.dim):
        raise InputError("psi0 must map the source algebra to the target algebra")
    if psi1.matrix.shape != (src.module.dim, dst.module.dim):
        raise InputError("psi1 must map the source module to the target module")
    square = np.dot(src.op.matrix, psi0.matrix) - np.dot(psi1.matrix, dst.op.matrix)
    bad = first_nonzero_index(square)
    if bad is not None:
        return Verdict(False, bad, detail="square does not commute")
    for i in range(src.algebra.dim):
        a = src.algebra.basis(i)
        fa = psi0(a)
        for j in range(src.module.dim):
            m = src.module.basis(j)
            fm = psi1(m)
            diff = psi1(src.module.act_left(a, m)) - dst.module.act_left(fa, fm)
            if not is_zero(diff):
                return Verdict(False, (i, j), detail="left actions not intertwined")
            diff = psi1(src.module.act_right(m, a)) - dst.module.act_right(fm, fa)
            if not is_zero(diff):
                return Verdict(False, (i, j), detail="right actions not intertwined")
    return Verdict(True)
