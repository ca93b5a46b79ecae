"""Seeded random instances for the command line, the self-test and the test suite."""

from __future__ import annotations

import random

from ..errors import InputError
from ..exactalg import QQ, Divisor, Field, INF, Poly, RatFunc, RatFuncField, TruncLaurent
from ..patching import PatchingProblem, make_problem
from ..trings import ExactXT, PatchSet, RingId, TElem, TMatrix
from ..trings.telem import conv


def laurent_poly(rng: random.Random, F: Field, low: int = -3, high: int = 3, density: float = 0.5) -> RatFunc:
    """Random Laurent polynomial in x with exponents in [low, high]."""
    cs = [F(rng.randint(-5, 5)) if rng.random() < density else F.zero for _ in range(high - low + 1)]
    p = Poly(F, cs)
    return RatFunc(p, Poly.monomial(F, -low)) if low < 0 else RatFunc(p * Poly.monomial(F, low))


def global_matrix(rng: random.Random, n: int, N: int = 8, F: Field = QQ, ring: RingId | None = None) -> TMatrix:
    """Matrix over k(x)[[t]] with Laurent-polynomial coefficients and det != 0 mod t."""
    ring = ring or RingId.generic(F)
    while True:
        data = [[[laurent_poly(rng, F) for _ in range(n)] for _ in range(n)] for _ in range(N)]
        A = TMatrix(ring, data)
        if not A.det().coeffs[0].is_zero():
            return A


def x_series(rng: random.Random, F: Field, low: int = -2, high: int = 4, nonzero: bool = False) -> TruncLaurent:
    while True:
        c = TruncLaurent(F, low, [F(rng.randint(-5, 5)) for _ in range(high - low)], None)
        if not nonzero or not c.is_zero():
            return c


def local_unit(rng: random.Random, N: int = 8, F: Field = QQ) -> TElem:
    """Unit of k((x))[[t]]: nonzero reduction modulo t."""
    R0 = RingId.local(F, "R0")
    return TElem(R0, [x_series(rng, F, nonzero=True)] + [x_series(rng, F) for _ in range(N - 1)])


def local_matrix(rng: random.Random, n: int, N: int = 8, F: Field = QQ) -> TMatrix:
    R0 = RingId.local(F, "R0")
    while True:
        A = TMatrix(R0, [[[x_series(rng, F, nonzero=(j == 0)) for _ in range(n)] for _ in range(n)] for j in range(N)])
        if not A.det().coeffs[0].is_zero():
            return A


def weierstrass_input(rng: random.Random, N: int = 8, F: Field = QQ) -> tuple[TElem, ExactXT]:
    """(f, e): f = e * w over a finite patch U, e exact in (x, t) with its zeros
    in U, w a random unit over U."""
    x = Poly.x(F)
    K = RatFuncField(F)
    pts = rng.choice([[0], [0, 1], [0, 2], [1, -1]])
    U = PatchSet.points(F, [x - a for a in pts])
    e = ExactXT.t(F, rng.randint(0, 2))
    for _ in range(rng.randint(1, 2)):
        a, c = rng.choice(pts), rng.choice([-2, -1, 1, 2, 3])
        e = e * ExactXT.from_t_coeffs([RatFunc(x - a), RatFunc.const(F, -c)], None, F)
    if rng.random() < 0.5:
        b, d = rng.choice([3, 4, 5]), rng.choice([-1, 1, 2])
        e = e / ExactXT.from_t_coeffs([RatFunc(x - b), RatFunc.const(F, -d)], None, F)
    v, es = e.expand(N)
    es = [K.zero] * v + es[: N - v]

    def off() -> int:
        while True:
            q = rng.choice([-7, -5, -3, 5, 6, 7])
            if q not in pts:
                return q

    w = [RatFunc(x - off(), x - off())] + [
        RatFunc(Poly(F, [rng.randint(-4, 4) for _ in range(2)]), x - off()) for _ in range(N - 1)
    ]
    return TElem(RingId.global_(U), conv(es, w, N, K.zero)), e


def patching_problem(rng: random.Random, shape: str = "two-patch", n: int = 2, N: int = 8, r: int = 3,
                     F: Field = QQ) -> PatchingProblem:
    if shape == "local-global":
        return make_problem(shape, [local_matrix(rng, n, N, F)], N, field_=F)
    count = 1 if shape == "two-patch" else r - 1
    return make_problem(shape, [global_matrix(rng, n, N, F) for _ in range(count)], N, field_=F, r=None if shape == "two-patch" else r)


def effective_divisor(rng: random.Random, max_degree: int = 6, F: Field = QQ) -> Divisor:
    """Random effective divisor of degree <= max_degree on coprime places."""
    x = Poly.x(F)
    candidates = [INF, x, x - 1, x + 1, x - 2, x * x + 1, x * x - 3]
    budget = rng.randint(0, max_degree)
    terms: dict = {}
    for p in rng.sample(candidates, len(candidates)):
        d = 1 if p is INF else p.degree()
        if d > budget:
            continue
        m = rng.randint(0, budget // d)
        if not m:
            continue
        try:
            Divisor.make(F, {**terms, p: m})
        except InputError:
            continue  # not squarefree or not coprime to the others in this characteristic
        terms[p] = m
        budget -= m * d
    return Divisor.make(F, terms)
