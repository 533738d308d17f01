"""Exact normal-ordering arithmetic in the Weyl algebra W<x, y> with
[x, y] = xy - yx = 1.

Polynomials are stored on the normal basis x^i y^j with Fraction
coefficients.  Reordering uses

    y^j x^k = sum_{s=0}^{min(j,k)} (-1)^s s! C(j,s) C(k,s) x^{k-s} y^{j-s}

so products of normal monomials stay normal-ordered:

    (x^i y^j)(x^k y^l)
        = sum_s (-1)^s s! C(j,s) C(k,s) x^{i+k-s} y^{j+l-s}.

This engine never truncates; it is deliberately independent of the
structure-constant machinery and serves as its cross-check on the
commutative (y-free) fragment.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial


class WeylPoly:
    """Normal-ordered polynomial: immutable dict {(i, j): Fraction}."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for mono, coeff in (terms or {}).items():
            coeff = Fraction(coeff)
            if coeff:
                clean[mono] = coeff
        self.terms = clean

    @classmethod
    def monomial(cls, i, j, coeff=1):
        return cls({(i, j): Fraction(coeff)})

    @classmethod
    def zero(cls):
        return cls({})

    @classmethod
    def one(cls):
        return cls.monomial(0, 0)

    def __add__(self, other):
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            out[mono] = out.get(mono, Fraction(0)) + coeff
        return WeylPoly(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return WeylPoly({m: -c for m, c in self.terms.items()})

    def scale(self, scalar):
        scalar = Fraction(scalar)
        return WeylPoly({m: c * scalar for m, c in self.terms.items()})

    def __mul__(self, other):
        out = {}
        for (i, j), a in self.terms.items():
            for (k, l), b in other.terms.items():
                ab = a * b
                for s in range(min(j, k) + 1):
                    coeff = ab * ((-1) ** s * factorial(s) * comb(j, s) * comb(k, s))
                    mono = (i + k - s, j + l - s)
                    out[mono] = out.get(mono, Fraction(0)) + coeff
        return WeylPoly(out)

    def commutator(self, other):
        return self * other - other * self

    def integrate_y(self):
        """x^i y^j |-> x^i y^{j+1} / (j+1)."""
        return WeylPoly({(i, j + 1): c / (j + 1) for (i, j), c in self.terms.items()})

    def ad_x(self):
        """[x, .]: x^i y^j |-> j x^i y^{j-1}."""
        return WeylPoly({(i, j - 1): c * j for (i, j), c in self.terms.items() if j})

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        return max((i + j for i, j in self.terms), default=-1)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, WeylPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for (i, j), c in sorted(self.terms.items()):
            powers = (f"x^{i}" if i > 1 else "x" if i == 1 else "") + \
                     (f"y^{j}" if j > 1 else "y" if j == 1 else "")
            bits.append(f"{c}*{powers}" if powers else f"{c}")
        return " + ".join(bits)
