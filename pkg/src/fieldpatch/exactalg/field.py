"""The constant field k: the rationals or a prime field F_p.

Scalars are python-flint ``fmpq`` (char 0) or ``nmod`` (char p) values,
both of which support the usual arithmetic operators, so code that only
uses ``+ - * /`` works unchanged in every characteristic.
"""

from __future__ import annotations

from random import Random
from fractions import Fraction

import flint

from ..errors import InputError, UnsupportedCharacteristic

_FIELDS: dict[int, "Field"] = {}


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


class Field:
    """k = Q (char 0) or F_p (p an odd prime).  Instances are interned."""

    __slots__ = ("char", "zero", "one")

    def __new__(cls, char: int = 0) -> "Field":
        char = int(char)
        cached = _FIELDS.get(char)
        if cached is not None:
            return cached
        if char != 0:
            if not _is_prime(char):
                raise InputError(f"characteristic {char} is not prime")
            if char >= 2**62:
                raise InputError("characteristic too large for word-size residues")
        self = object.__new__(cls)
        self.char = char
        if char == 0:
            self.zero = flint.fmpq(0)
            self.one = flint.fmpq(1)
        else:
            self.zero = flint.nmod(0, char)
            self.one = flint.nmod(1, char)
        _FIELDS[char] = self
        return self

    def __reduce__(self):
        return (Field, (self.char,))

    def __repr__(self) -> str:
        return "Field(0)" if self.char == 0 else f"Field({self.char})"

    def __call__(self, value) -> object:
        """Coerce ints, Fractions, "p/q" strings and flint scalars into k."""
        if self.char == 0:
            if isinstance(value, flint.fmpq):
                return value
            if isinstance(value, (int, flint.fmpz)):
                return flint.fmpq(int(value))
            if isinstance(value, str):
                value = Fraction(value.strip())
            if isinstance(value, Fraction):
                return flint.fmpq(value.numerator, value.denominator)
            if isinstance(value, flint.nmod):
                raise InputError("cannot coerce a residue into characteristic 0")
            raise InputError(f"cannot coerce {value!r} into Q")
        p = self.char
        if isinstance(value, flint.nmod):
            if value.modulus() != p:
                raise InputError("residue has the wrong modulus")
            return value
        if isinstance(value, (int, flint.fmpz)):
            return flint.nmod(int(value) % p, p)
        if isinstance(value, str):
            value = Fraction(value.strip())
        if isinstance(value, flint.fmpq):
            value = Fraction(int(value.p), int(value.q))
        if isinstance(value, Fraction):
            den = value.denominator % p
            if den == 0:
                raise InputError(f"denominator {value.denominator} vanishes mod {p}")
            return flint.nmod(value.numerator % p, p) / flint.nmod(den, p)
        raise InputError(f"cannot coerce {value!r} into F_{p}")

    def is_scalar(self, value) -> bool:
        if self.char == 0:
            return isinstance(value, flint.fmpq)
        return isinstance(value, flint.nmod) and value.modulus() == self.char

    def to_str(self, value) -> str:
        """Decimal "p/q" (char 0) or residue string (char p)."""
        if self.char == 0:
            v = self(value)
            return str(v.p) if v.q == 1 else f"{v.p}/{v.q}"
        return str(int(self(value)))

    def to_fraction(self, value) -> Fraction:
        if self.char != 0:
            raise InputError("no rational value in positive characteristic")
        v = self(value)
        return Fraction(int(v.p), int(v.q))

    def random(self, rng: Random, bound: int = 9) -> object:
        """Uniform-ish random scalar; integers in [-bound, bound] in char 0."""
        if self.char == 0:
            return flint.fmpq(rng.randint(-bound, bound))
        return flint.nmod(rng.randrange(self.char), self.char)

    def random_nonzero(self, rng: Random, bound: int = 9) -> object:
        while True:
            c = self.random(rng, bound)
            if c != 0:
                return c

    def require_odd(self, what: str = "this construction") -> None:
        if self.char == 2:
            raise UnsupportedCharacteristic(f"{what} needs char != 2")

    def require_invertible(self, n: int, what: str = "this construction") -> None:
        """Reject characteristics dividing the integer n."""
        if self.char and n % self.char == 0:
            raise UnsupportedCharacteristic(f"{what} divides by {n} in char {self.char}")


QQ = Field(0)
