"""rbx: exact-arithmetic verification of Rota-Baxter-type operator
identities, the dendriform and NS structures they induce, Hochschild
cochain calculus, the Gerstenhaber bracket engine, and exponential flows
on abelian extensions.

All arithmetic is exact (rationals or small prime fields); every check is
a zero-tolerance identity on basis tuples, with brute-force enumeration
over F_p available as an independent oracle.
"""

from .algebra import (Algebra, Bimodule, Verdict, assoc_check,
                      bimodule_check, canonical_bimodule, dual_module,
                      extension_product, intertwiner_check, semidirect,
                      subspace_closed, twisted_extension)
from .cochains import (Cochain, coboundary, is_cocycle,
                       multiplication_cochain, zero_cochain)
from .errors import (CapacityError, CharacteristicError, InputError,
                     RbxError)
from .fields import (F2, F3, F5, FpElement, PrimeField, QQ, RationalField)
from .flows import FlowResult, addexp_check, exp_flow, hamiltonian_field
from .gerstenhaber import (MultiMap, bar_circ, circ_i, derived_bracket,
                           from_algebra, g_bracket, jacobi_residual)
from .operators import (LinearMap, OperatorInstance, aybe_residual,
                        graph_check, is_classical_rb, is_grb, is_nijenhuis,
                        is_reynolds, is_trb, lift_cocycle, lift_operator,
                        r_tilde, reynolds_as_twisted, search_operators,
                        structure_residual)
from .structures import (Dendriform, InducedActions, NSAlgebra,
                         check_dendriform, check_ns, dendriform_from_grb,
                         derivation_dual, grb_morphism_check,
                         identity_operator, induced_actions, ns_from_trb,
                         total_product)
from .weyl import WeylPoly

__version__ = "0.1.0"
