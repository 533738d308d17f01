"""Exact scalar domains: arbitrary-precision rationals and small prime fields.

Every computation in rbx happens over one of these two domains.  Equality
is decidable and bit-exact, so every identity check in the library is a
zero-tolerance comparison.  Rational scalars are ``fractions.Fraction``;
prime-field scalars are :class:`FpElement` with canonical representatives
in ``[0, p)``.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import CharacteristicError, InputError


class FpElement:
    """An element of F_p, canonical representative in [0, p).

    Arithmetic never mixes moduli or leaks into other scalar domains;
    ``0 + x`` (plain int zero) is allowed so that ``sum`` and numpy
    reductions work.
    """

    __slots__ = ("val", "p")

    def __init__(self, val, p):
        self.val = val % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, FpElement):
            if other.p != self.p:
                raise InputError(f"mixing F{self.p} and F{other.p} scalars")
            return other.val
        if isinstance(other, int):
            return other % self.p
        return None

    def __add__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return FpElement(self.val + v, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return FpElement(self.val - v, self.p)

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return FpElement(v - self.val, self.p)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return FpElement(self.val * v, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        if v % self.p == 0:
            raise ZeroDivisionError(f"division by zero in F{self.p}")
        return FpElement(self.val * pow(v, -1, self.p), self.p)

    def __neg__(self):
        return FpElement(-self.val, self.p)

    def __pos__(self):
        return self

    def __eq__(self, other):
        if isinstance(other, FpElement):
            return self.p == other.p and self.val == other.val
        if isinstance(other, int):
            return self.val == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.val, self.p))

    def __bool__(self):
        return self.val != 0

    def __repr__(self):
        return f"FpElement({self.val}, {self.p})"

    def __str__(self):
        return str(self.val)


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class RationalField:
    """The field Q with Fraction scalars."""

    char = 0
    name = "Q"

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def inverse_int(self, n):
        if n == 0:
            raise ZeroDivisionError("inverse of 0")
        return Fraction(1, n)

    def parse(self, value):
        """Parse a schema scalar: an int, or a string 'num' / 'num/den'."""
        if isinstance(value, bool):
            raise InputError(f"expected scalar, got {value!r}")
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, str):
            try:
                return Fraction(value)
            except (ValueError, ZeroDivisionError) as exc:
                raise InputError(f"bad rational scalar {value!r}: {exc}") from exc
        raise InputError(f"expected scalar, got {value!r}")

    def format(self, x):
        """Canonical JSON form: int when integral, else 'num/den'."""
        if x.denominator == 1:
            return int(x.numerator)
        return f"{x.numerator}/{x.denominator}"

    def elements(self):
        raise InputError("Q is not enumerable; use a prime field for searches")

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "RationalField()"


class PrimeField:
    """The field F_p for a small prime p."""

    def __init__(self, p):
        if not isinstance(p, int) or not _is_prime(p):
            raise InputError(f"F_p needs a prime modulus, got {p!r}")
        self.p = p
        self.char = p
        self.name = f"F{p}"

    @property
    def zero(self):
        return FpElement(0, self.p)

    @property
    def one(self):
        return FpElement(1, self.p)

    def from_int(self, n):
        return FpElement(n, self.p)

    def inverse_int(self, n):
        if n % self.p == 0:
            raise CharacteristicError(
                f"1/{n} does not exist in characteristic {self.p}")
        return FpElement(pow(n % self.p, -1, self.p), self.p)

    def parse(self, value):
        if isinstance(value, bool):
            raise InputError(f"expected scalar, got {value!r}")
        if isinstance(value, int):
            return FpElement(value, self.p)
        if isinstance(value, str):
            frac = Fraction(value)  # allows "3" and "1/2" when 2 invertible
            num = FpElement(frac.numerator, self.p)
            if frac.denominator == 1:
                return num
            return num / FpElement(frac.denominator, self.p)
        raise InputError(f"expected scalar, got {value!r}")

    def format(self, x):
        return x.val

    def elements(self):
        """All scalars in canonical order 0, 1, ..., p-1."""
        return [FpElement(v, self.p) for v in range(self.p)]

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


QQ = RationalField()
F2 = PrimeField(2)
F3 = PrimeField(3)
F5 = PrimeField(5)


def field_from_name(name):
    """'Q' or {'Fp': p} as used in the shared JSON schema."""
    if name == "Q":
        return QQ
    if isinstance(name, dict) and set(name) == {"Fp"}:
        return PrimeField(name["Fp"])
    raise InputError(f"unknown field name {name!r}")


def field_to_name(field):
    if field.char == 0:
        return "Q"
    return {"Fp": field.char}


def require_characteristic(field, forbidden, what):
    """Refuse fields whose characteristic is in `forbidden`."""
    if field.char in forbidden:
        raise CharacteristicError(
            f"{what} is not defined in characteristic {field.char}")
