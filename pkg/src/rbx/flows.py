"""Hamiltonian vector fields and exponential flows on A (+) M.

For a lift p^ (which always satisfies p^ o p^ = 0), the field
X(Theta) = [Theta, p^] is nilpotent on arity-2 maps: X^4 = 0.  The flow

    exp(X)(Theta) = Theta + [Theta,p^] + (1/2)X^2(Theta) + (1/6)X^3(Theta)

is therefore a finite sum.  The halved and sixthed terms also have
division-free closed forms (valid over every field, F2 and F3 included):

    (1/2)X^2(Theta) = Theta(p^ (x) p^) - p^ Theta(p^ (x) id)
                                       - p^ Theta(id (x) p^)
    (1/6)X^3(Theta) = -p^ Theta(p^ (x) p^)

When the characteristic permits, the flow is computed term-by-term from
the brackets; over F2/F3 the closed forms are used (the two routes agree
identically, which the test suite checks over Q and F5).
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import Verdict
from .errors import InputError
from .gerstenhaber import MultiMap, circ_i, g_bracket
from .linalg import first_nonzero_index, is_zero
from .operators import (OperatorInstance, extension_mult_map, lift_operator)


@dataclass
class FlowResult:
    """The four flow terms and their sum, all arity-2 MultiMaps."""

    theta: MultiMap       # Theta itself
    order1: MultiMap      # [Theta, p^]
    order2: MultiMap      # (1/2) X^2(Theta)
    order3: MultiMap      # (1/6) X^3(Theta)
    total: MultiMap


def hamiltonian_field(theta: MultiMap, inst: OperatorInstance) -> MultiMap:
    """X(theta) = [theta, p^] via the bracket engine."""
    return g_bracket(theta, lift_operator(inst))


def _insert_both(theta: MultiMap, p_hat: MultiMap) -> MultiMap:
    """theta(p^ (x) p^)."""
    return circ_i(circ_i(theta, p_hat, 1), p_hat, 2)


def _closed_form_terms(theta, p_hat):
    half = (_insert_both(theta, p_hat)
            - circ_i(p_hat, circ_i(theta, p_hat, 1), 1)
            - circ_i(p_hat, circ_i(theta, p_hat, 2), 1))
    sixth = -circ_i(p_hat, _insert_both(theta, p_hat), 1)
    return half, sixth


def exp_flow(inst: OperatorInstance, theta: MultiMap | None = None) -> FlowResult:
    """exp(X)(Theta) for Theta = mu^ + phi^ by default."""
    if theta is None:
        theta = extension_mult_map(inst)
    if theta.arity != 2 or theta.dim != inst.ext_dim:
        raise InputError("flow needs an arity-2 map on A (+) M")
    p_hat = lift_operator(inst)
    if not circ_i(p_hat, p_hat, 1).is_zero_map():
        raise InputError("lift does not square to zero")
    order1 = g_bracket(theta, p_hat)
    field = inst.field
    if field.char in (2, 3):
        order2, order3 = _closed_form_terms(theta, p_hat)
    else:
        order2 = g_bracket(order1, p_hat).scale(field.inverse_int(2))
        order3 = g_bracket(g_bracket(order1, p_hat), p_hat).scale(field.inverse_int(6))
    total = theta + order1 + order2 + order3
    return FlowResult(theta, order1, order2, order3, total)


def flow_truncation(inst: OperatorInstance) -> MultiMap:
    """The three-term flow mu^ + phi^ + [mu^+phi^, p^] + (1/2)[[phi^,p^],p^]
    that characterizes twisted Rota-Baxter operators."""
    from .operators import lift_cocycle

    theta = extension_mult_map(inst)
    p_hat = lift_operator(inst)
    truncated = theta + g_bracket(theta, p_hat)
    if inst.cocycle is not None:
        phi_hat = lift_cocycle(inst)
        if inst.field.char in (2, 3):
            half, _ = _closed_form_terms(phi_hat, p_hat)
        else:
            half = g_bracket(g_bracket(phi_hat, p_hat), p_hat).scale(
                inst.field.inverse_int(2))
        truncated = truncated + half
    return truncated


def addexp_check(inst: OperatorInstance) -> Verdict:
    """Does the full flow collapse to its three-term truncation?  True
    exactly for (twisted) Rota-Baxter operators.  On success the M x M
    restriction of the flow is the induced product m x n =
    p(m).n + m.p(n) [+ phi(p(m),p(n))], which is verified as well."""
    flow = exp_flow(inst)
    truncated = flow_truncation(inst)
    diff = flow.total.tensor - truncated.tensor
    bad = first_nonzero_index(diff)
    if bad is not None:
        return Verdict(False, bad, lhs=flow.total.tensor[bad],
                       rhs=truncated.tensor[bad],
                       detail="flow does not truncate; operator is not "
                              "(twisted) Rota-Baxter")
    dA = inst.algebra.dim
    M, p, A = inst.module, inst.op, inst.algebra
    for i in range(M.dim):
        for j in range(M.dim):
            got = flow.total.tensor[dA + i, dA + j]
            m, n = M.basis(i), M.basis(j)
            induced = M.act_left(p(m), n) + M.act_right(m, p(n))
            if inst.cocycle is not None:
                induced = induced + inst.cocycle(p(m), p(n))
            if not is_zero(got[:dA]):
                return Verdict(False, (i, j), detail="flow leaks into the A-block")
            if not is_zero(got[dA:] - induced):
                return Verdict(False, (i, j), lhs=got[dA:], rhs=induced,
                               detail="M-restriction differs from the induced product")
    return Verdict(True)
