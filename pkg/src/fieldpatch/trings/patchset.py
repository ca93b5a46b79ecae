"""Subsets of P^1 that are finite or cofinite, and regularity predicates.

A ``PatchSet`` lists finitely many places.  In *cofinite* form the set is
P^1 minus the listed places; in *finite* form it is exactly the listed
places.  ``full`` (cofinite, nothing listed) is all of P^1 and ``generic``
(finite, nothing listed) is the empty set, whose ring of regular
functions is all of k(x).
"""

from __future__ import annotations

from typing import Iterable

from ..errors import InputError
from ..exactalg import INF, Field, Poly, RatFunc, check_coprime, coprime_base, support_split


class PatchSet:
    __slots__ = ("field", "cofinite", "places", "inf", "support")

    def __init__(self, field: Field, cofinite: bool, places: Iterable = ()):
        places = list(places)
        check_coprime(places)
        finite = [p for p in places if p is not INF]
        self.field = field
        self.cofinite = bool(cofinite)
        self.inf = len(finite) != len(places)
        self.places = tuple(sorted(finite, key=lambda p: p.sort_key()))
        s = Poly(field, [1])
        for p in self.places:
            s = s * p
        self.support = s

    @classmethod
    def _from_support(cls, field: Field, cofinite: bool, support: Poly, inf: bool, pieces: Iterable[Poly]) -> "PatchSet":
        base = coprime_base(p.gcd(support) for p in pieces if not p.gcd(support).is_one())
        return cls(field, cofinite, base + ([INF] if inf else []))

    # --- named sets -----------------------------------------------------------
    @classmethod
    def full(cls, field: Field) -> "PatchSet":
        return cls(field, True, ())

    @classmethod
    def generic(cls, field: Field) -> "PatchSet":
        return cls(field, False, ())

    @classmethod
    def excluding(cls, field: Field, places: Iterable) -> "PatchSet":
        return cls(field, True, places)

    @classmethod
    def points(cls, field: Field, places: Iterable) -> "PatchSet":
        return cls(field, False, places)

    @classmethod
    def affine_line(cls, field: Field) -> "PatchSet":
        return cls(field, True, [INF])

    # --- predicates ---------------------------------------------------------
    def listed(self) -> list:
        return list(self.places) + ([INF] if self.inf else [])

    def contains_inf(self) -> bool:
        return self.inf != self.cofinite

    def contains_point(self, a) -> bool:
        """Whether the rational point x = a lies in the set."""
        hit = self.support(self.field(a)) == 0
        return hit != self.cofinite

    def contains_place(self, p) -> bool:
        """Whether every root of the place p lies in the set."""
        if p is INF:
            return self.contains_inf()
        g = p.gcd(self.support)
        if self.cofinite:
            return g.is_one()
        return g == p

    def is_full(self) -> bool:
        return self.cofinite and not self.places and not self.inf

    def is_empty(self) -> bool:
        return not self.cofinite and not self.places and not self.inf

    def is_proper(self) -> bool:
        return not self.is_full()

    # --- set algebra --------------------------------------------------------
    def complement(self) -> "PatchSet":
        return PatchSet(self.field, not self.cofinite, self.listed())

    def intersection(self, other: "PatchSet") -> "PatchSet":
        a, b = self, other
        pieces = list(a.places) + list(b.places)
        if not a.cofinite and not b.cofinite:
            s = a.support.gcd(b.support)
            return PatchSet._from_support(a.field, False, s, a.inf and b.inf, pieces)
        if a.cofinite and b.cofinite:
            s = a.support * b.support // a.support.gcd(b.support)
            return PatchSet._from_support(a.field, True, s, a.inf or b.inf, pieces)
        if a.cofinite:
            a, b = b, a
        # a finite, b cofinite: listed(a) minus listed(b)
        s = a.support // a.support.gcd(b.support)
        return PatchSet._from_support(a.field, False, s, a.inf and not b.inf, pieces)

    def union(self, other: "PatchSet") -> "PatchSet":
        return self.complement().intersection(other.complement()).complement()

    def difference(self, other: "PatchSet") -> "PatchSet":
        return self.intersection(other.complement())

    def issubset(self, other: "PatchSet") -> bool:
        return self.difference(other).is_empty()

    def isdisjoint(self, other: "PatchSet") -> bool:
        return self.intersection(other).is_empty()

    def __eq__(self, other) -> bool:
        if not isinstance(other, PatchSet):
            return NotImplemented
        return (
            self.field is other.field
            and self.cofinite == other.cofinite
            and self.inf == other.inf
            and self.support == other.support
        )

    def __hash__(self) -> int:
        return hash((self.field.char, self.cofinite, self.inf, self.support))

    def __str__(self) -> str:
        names = [str(p) for p in self.places] + (["inf"] if self.inf else [])
        if self.cofinite:
            return "P1" if not names else "P1 minus {" + ", ".join(names) + "}"
        return "{" + ", ".join(names) + "}"

    def __repr__(self) -> str:
        return f"PatchSet({self})"

    # --- regularity -------------------------------------------------------------
    def regular(self, f: RatFunc) -> bool:
        """f has no pole at any point of the set."""
        if f.is_zero():
            return True
        den = f.den
        if self.cofinite:
            if not den.is_one():
                part, rest = support_split(den, self.support)
                if rest.degree() > 0:
                    return False
        else:
            if self.places and not den.gcd(self.support).is_one():
                return False
        if self.contains_inf() and f.num.degree() > f.den.degree():
            return False
        return True

    def unit(self, f: RatFunc) -> bool:
        """f is regular and nowhere zero on the set."""
        if f.is_zero():
            return False
        return self.regular(f) and self.regular(f.inv())


def parse_patchset(field: Field, text: str) -> PatchSet:
    """Parse ``full``, ``generic``, ``A1``, ``points:a,b,inf`` or ``minus:a,inf``.

    A place token is ``inf``, a rational number a (the point x = a), or
    ``poly:c0:c1:...`` for a monic squarefree polynomial given by ascending
    coefficients.
    """
    text = text.strip()
    low = text.lower()
    if low == "full":
        return PatchSet.full(field)
    if low in ("generic", "empty"):
        return PatchSet.generic(field)
    if low == "a1":
        return PatchSet.affine_line(field)
    if ":" not in text:
        raise InputError(f"cannot parse patch descriptor {text!r}")
    kind, _, rest = text.partition(":")
    places = [parse_place(field, tok) for tok in rest.split(",") if tok.strip()]
    if kind == "points":
        return PatchSet.points(field, places)
    if kind == "minus":
        return PatchSet.excluding(field, places)
    raise InputError(f"unknown patch kind {kind!r}")


def parse_place(field: Field, tok: str):
    tok = tok.strip()
    if tok.lower() == "inf":
        return INF
    if tok.startswith("poly:"):
        return Poly(field, [field(c) for c in tok[5:].split(":")])
    try:
        a = field(tok)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad place token {tok!r}") from exc
    return Poly(field, [-a, 1])
