"""Places of P^1, divisors, partial fractions and Riemann-Roch spaces.

A finite place is a monic nonconstant squarefree polynomial (all of its
roots together); the place at infinity is the sentinel ``INF``.  Places
in one collection must be pairwise coprime, but need not be irreducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from ..errors import InputError, NonCoprimePlaces, NonEffective, UnsupportedDenominator
from .field import Field
from .poly import Poly, poly_gcd
from .ratfunc import RatFunc


class _Infinity:
    __slots__ = ()

    def __repr__(self) -> str:
        return "INF"

    def __str__(self) -> str:
        return "inf"

    def __reduce__(self):
        return (_get_inf, ())


INF = _Infinity()


def _get_inf():
    return INF


def is_squarefree(p: Poly) -> bool:
    d = p.derivative()
    if d.is_zero():
        return p.degree() <= 0
    return p.gcd(d).is_one()


def check_place(p) -> None:
    if p is INF:
        return
    if not isinstance(p, Poly):
        raise InputError(f"not a place: {p!r}")
    if p.degree() < 1 or not p.is_monic():
        raise InputError(f"place {p} must be monic and nonconstant")
    if not is_squarefree(p):
        raise InputError(f"place {p} is not squarefree")


def check_coprime(places: Sequence) -> None:
    finite = [p for p in places if p is not INF]
    if len(places) - len(finite) > 1:
        raise NonCoprimePlaces("infinity listed twice")
    for i, p in enumerate(finite):
        check_place(p)
        for q in finite[i + 1:]:
            if not p.gcd(q).is_one():
                raise NonCoprimePlaces(f"places {p} and {q} share a root")


def place_sort_key(p) -> tuple:
    if p is INF:
        return (1, ())
    return (0, p.sort_key())


def support_split(a: Poly, s: Poly) -> tuple[Poly, Poly]:
    """Split a = part * rest where part has all its roots among the roots of s
    and rest is coprime to s."""
    part = Poly(a.field, [1])
    rest = a
    g = rest.gcd(s)
    while not g.is_one():
        part = part * g
        rest = rest // g
        g = rest.gcd(g)
    return part, rest


def coprime_base(polys: Iterable[Poly]) -> list[Poly]:
    """Refine monic squarefree polynomials into a pairwise coprime family
    with the same union of roots."""
    base: list[Poly] = []
    for p in polys:
        if p.degree() < 1:
            continue
        p = p.monic()
        new = []
        for q in base:
            g = p.gcd(q)
            if g.is_one():
                new.append(q)
                continue
            qr = q // g
            if qr.degree() >= 1:
                new.append(qr)
            new.append(g)
            p = p // g
        if p.degree() >= 1:
            new.append(p)
        base = new
    return sorted(base, key=lambda q: q.sort_key())


@dataclass(frozen=True)
class Divisor:
    """Sum of multiplicity * place."""

    field: Field
    terms: tuple  # ((place, multiplicity), ...) sorted, multiplicities nonzero

    @classmethod
    def make(cls, field: Field, terms: Mapping | Iterable) -> "Divisor":
        items = list(terms.items()) if isinstance(terms, Mapping) else list(terms)
        places = [p for p, _ in items]
        check_coprime(places)
        kept = tuple(sorted(((p, int(m)) for p, m in items if m != 0), key=lambda pm: place_sort_key(pm[0])))
        return cls(field, kept)

    def degree(self) -> int:
        return sum(m * (1 if p is INF else p.degree()) for p, m in self.terms)

    def is_effective(self) -> bool:
        return all(m >= 0 for _, m in self.terms)

    def multiplicity(self, place) -> int:
        for p, m in self.terms:
            if p is place or (p is not INF and place is not INF and p == place):
                return m
        return 0


@dataclass(frozen=True)
class PartialFractions:
    polypart: Poly
    parts: tuple  # ((modulus, RatFunc), ...) in modulus order

    def total(self) -> RatFunc:
        out = RatFunc(self.polypart)
        for _, r in self.parts:
            out = out + r
        return out

    def part(self, modulus: Poly) -> RatFunc:
        for m, r in self.parts:
            if m == modulus:
                return r
        raise KeyError(str(modulus))


def partial_fractions(r: RatFunc, moduli: Sequence[Poly]) -> PartialFractions:
    """r = polypart + sum of parts, parts[m] = n/d with d | m^e and deg n < deg d."""
    F = r.field
    for m in moduli:
        if m.degree() < 1 or not m.is_monic():
            raise InputError(f"modulus {m} must be monic and nonconstant")
    for i, m in enumerate(moduli):
        for m2 in moduli[i + 1:]:
            if not m.gcd(m2).is_one():
                raise NonCoprimePlaces(f"moduli {m} and {m2} are not coprime")
    q, rem = divmod(r.num, r.den)
    rest = r.den
    dens = []
    for m in moduli:
        part, rest = support_split(rest, m)
        dens.append(part)
    if rest.degree() > 0:
        raise UnsupportedDenominator(f"denominator factor {rest} is coprime to every modulus")
    parts = []
    # Peel one factor at a time: rem/(d * D) = a/d + b/D with a = rem*u mod d.
    D = r.den
    num = rem
    for m, d in zip(moduli, dens):
        if d.degree() < 1:
            parts.append((m, RatFunc(Poly(F))))
            continue
        D = D // d
        g, s, u = poly_gcd(d, D)  # s*d + u*D = 1
        a = (num * u) % d
        b = (num * s) % D if D.degree() > 0 else Poly(F)
        parts.append((m, RatFunc(a, d)))
        num = b
    return PartialFractions(q, tuple(parts))


def rr_basis(D: Divisor) -> list[RatFunc]:
    """Basis of L(D) = {f : div(f) + D >= 0} on P^1.

    The basis is 1, x, ..., x^{m_inf}, then x^j / P^e for each finite
    place P of multiplicity m, 1 <= e <= m, 0 <= j < deg P.
    """
    if not D.is_effective():
        raise NonEffective("L(D) basis requested for a non-effective divisor")
    F = D.field
    m_inf = D.multiplicity(INF)
    out = [RatFunc(Poly.monomial(F, i)) for i in range(m_inf + 1)]
    for p, m in D.terms:
        if p is INF:
            continue
        for e in range(1, m + 1):
            den = p**e
            for j in range(p.degree()):
                out.append(RatFunc(Poly.monomial(F, j), den))
    return out


def in_riemann_roch_space(f: RatFunc, D: Divisor) -> bool:
    """div(f) + D >= 0."""
    if f.is_zero():
        return True
    m_inf = D.multiplicity(INF)
    if f.num.degree() - f.den.degree() > m_inf:
        return False
    allowed = Poly(f.field, [1])
    for p, m in D.terms:
        if p is not INF and m > 0:
            allowed = allowed * p**m
    return f.den.divides(allowed)


def rr_certificate(D: Divisor, basis: list[RatFunc] | None = None) -> list[dict]:
    """Checks for a claimed basis of L(D): pole orders, linear independence over k
    (after clearing the common denominator), and dim = deg D + 1."""
    basis = rr_basis(D) if basis is None else basis
    F = D.field
    checks = [{"name": "every basis element lies in L(D)", "modulus": None,
               "residual_is_zero": all(in_riemann_roch_space(f, D) for f in basis)}]
    Q = Poly(F, [1])
    for p, m in D.terms:
        if p is not INF:
            Q = Q * p**m
    polys = [(f * RatFunc(Q)).num for f in basis]
    width = max([p.degree() + 1 for p in polys] + [1])
    rows = [[p[i] for i in range(width)] for p in polys]
    rank = 0
    for c in range(width):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][c] != 0:
                f = rows[i][c] / rows[rank][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    checks.append({"name": "basis is linearly independent over k", "modulus": None,
                   "residual_is_zero": rank == len(basis)})
    checks.append({"name": f"dim L(D) = deg D + 1 = {D.degree() + 1}", "modulus": None,
                   "residual_is_zero": len(basis) == D.degree() + 1})
    return checks
