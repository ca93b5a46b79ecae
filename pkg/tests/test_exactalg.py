from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import poly, rf
from fieldpatch.errors import BothZero, InputError, NonEffective, ReconstructionFailed, UnsupportedDenominator
from fieldpatch.exactalg import (
    INF,
    QQ,
    Divisor,
    Field,
    Poly,
    RatFunc,
    RatFuncField,
    TruncLaurent,
    UPoly,
    derive_x,
    in_riemann_roch_space,
    pade_reconstruct,
    partial_fractions,
    poly_gcd,
    rr_basis,
    rr_certificate,
    series_expand,
    series_inv,
    series_mul,
)

x = Poly.x(QQ)
ints = st.integers(-6, 6)
small_poly = st.lists(ints, min_size=1, max_size=4).map(lambda cs: Poly(QQ, cs))
nonzero_poly = small_poly.filter(lambda p: not p.is_zero())


@st.composite
def ratfuncs(draw):
    return RatFunc(draw(small_poly), draw(nonzero_poly))


# --- scalars -----------------------------------------------------------------------------------
def test_field_char0_and_p():
    assert QQ("3/6") == QQ(Fraction(1, 2))
    F7 = Field(7)
    assert F7(10) == F7(3)
    assert F7.to_str(F7(-1)) == "6"
    with pytest.raises(InputError):
        Field(4)


def test_field_is_cached_by_characteristic():
    assert Field(5) is Field(5)
    assert Field(0) is QQ


# --- poly_gcd ---------------------------------------------------------------------------------
def test_gcd_common_factor():
    g, s, u = poly_gcd(x * x - 1, x - 1)
    assert g == x - 1
    assert s * (x * x - 1) + u * (x - 1) == g


def test_gcd_coprime_bezout():
    g, s, u = poly_gcd(x, x + 1)
    assert g == poly(1)
    assert (s, u) == (poly(-1), poly(1))


def test_gcd_both_zero():
    with pytest.raises(BothZero):
        poly_gcd(Poly(QQ, []), Poly(QQ, []))


@given(small_poly, small_poly)
def test_gcd_bezout_property(a, b):
    if a.is_zero() and b.is_zero():
        return
    g, s, u = poly_gcd(a, b)
    assert g.is_monic()
    assert s * a + u * b == g
    assert g.divides(a) and g.divides(b)


# --- partial fractions ---------------------------------------------------------------------------
def test_partial_fractions_pole_at_zero():
    pf = partial_fractions(RatFunc(x * x + 1, x), [x])
    assert pf.polypart == x
    assert pf.part(x) == rf([1], [0, 1])


def test_partial_fractions_two_places():
    pf = partial_fractions(RatFunc(poly(1), x * (x - 1)), [x, x - 1])
    assert pf.part(x) == rf([-1], [0, 1])
    assert pf.part(x - 1) == rf([1], [-1, 1])
    assert pf.polypart.is_zero()


def test_partial_fractions_polynomial_part():
    pf = partial_fractions(RatFunc(x**3, x - 1), [x - 1])
    assert pf.polypart == x * x + x + 1
    assert pf.part(x - 1) == rf([1], [-1, 1])


def test_partial_fractions_unsupported_denominator():
    with pytest.raises(UnsupportedDenominator):
        partial_fractions(RatFunc(poly(1), x + 3), [x])


@given(small_poly, st.integers(0, 3), st.integers(0, 2), st.integers(0, 2))
def test_partial_fractions_resum(num, e0, e1, e2):
    moduli = [x, x - 1, x * x + 1]
    den = x**e0 * (x - 1) ** e1 * (x * x + 1) ** e2
    r = RatFunc(num, den)
    pf = partial_fractions(r, moduli)
    assert pf.total() == r
    for m, part in pf.parts:
        assert part.num.degree() < part.den.degree() or part.is_zero()
        d = part.den
        while not d.is_constant():
            assert m.divides(d)
            d = d.exact_div(m)


# --- series_expand -----------------------------------------------------------------------------
def test_expand_geometric():
    s = series_expand(RatFunc(poly(1), 1 - x), 4)
    assert [s.coeff(e) for e in range(4)] == [1, 1, 1, 1]
    assert s.prec == 4


def test_expand_pole():
    s = series_expand(RatFunc(poly(1), x * x), 4)
    assert s.valuation() == -2
    assert s.terms() == [(-2, 1)]


def test_expand_derived_x_over_x_minus_1():
    # oracle (sympy): series(x/(x-1), x, 0, 3) = -x - x^2
    s = series_expand(RatFunc(x, x - 1), 3)
    assert s.terms() == [(1, -1), (2, -1)]


@given(ratfuncs(), ratfuncs())
def test_expand_is_multiplicative(r, s):
    if r.is_zero() or s.is_zero() or r.den(0) == 0 or s.den(0) == 0:
        return
    M = 6
    lhs = series_expand(r * s, M)
    rhs = series_expand(r, M) * series_expand(s, M)
    assert lhs.agrees(rhs)


# --- Riemann-Roch ----------------------------------------------------------------------------------
def test_rr_basis_examples():
    assert rr_basis(Divisor.make(QQ, {INF: 2})) == [RatFunc(poly(1)), RatFunc(x), RatFunc(x * x)]
    assert rr_basis(Divisor.make(QQ, {x: 1})) == [RatFunc(poly(1)), rf([1], [0, 1])]
    assert rr_basis(Divisor.make(QQ, {})) == [RatFunc(poly(1))]


def test_rr_basis_rejects_non_effective():
    with pytest.raises(NonEffective):
        rr_basis(Divisor.make(QQ, {x: -1}))


def test_divisor_rejects_non_coprime_places():
    with pytest.raises(InputError):
        Divisor.make(QQ, {x: 1, x * (x - 1): 1})


@given(st.integers(0, 2), st.integers(0, 2), st.integers(0, 1), st.integers(0, 1))
def test_rr_dimension_and_certificate(m_inf, m0, m1, m2):
    D = Divisor.make(QQ, {INF: m_inf, x: m0, x - 1: m1, x * x + 1: m2})
    basis = rr_basis(D)
    assert len(basis) == D.degree() + 1
    assert all(in_riemann_roch_space(f, D) for f in basis)
    assert all(c["residual_is_zero"] for c in rr_certificate(D, basis))


def test_rr_certificate_detects_dependent_basis():
    D = Divisor.make(QQ, {INF: 1})
    bad = [RatFunc(poly(1)), RatFunc(poly(2))]
    checks = {c["name"]: c["residual_is_zero"] for c in rr_certificate(D, bad)}
    assert not all(checks.values())


# --- Pade -------------------------------------------------------------------------------------------
def test_pade_geometric():
    r = pade_reconstruct([QQ(1)] * 6, 0, 1)
    assert (list(r.num.c), list(r.den.c)) == ([1], [1, -1])


def test_pade_polynomial():
    r = pade_reconstruct([QQ(1), QQ(1)] + [QQ(0)] * 4, 1, 0)
    assert (list(r.num.c), list(r.den.c)) == ([1, 1], [1])


def test_pade_over_kx_derived():
    # oracle (sympy): 1/(x - t) = sum_j x^(-(j+1)) t^j
    series = [RatFunc(poly(1), x ** (j + 1)) for j in range(6)]
    r = pade_reconstruct(series, 0, 1)
    # P/Q normalized with Q(0) = 1: (1/x) / (1 - t/x) = 1/(x - t)
    assert list(r.num.c) == [rf([1], [0, 1])]
    assert list(r.den.c) == [RatFunc(poly(1)), rf([-1], [0, 1])]


def test_pade_failure():
    with pytest.raises(ReconstructionFailed):
        pade_reconstruct([QQ(c) for c in (1, 2, 5, -3, 7, 11)], 1, 1)


@given(st.lists(ints, min_size=1, max_size=3), st.lists(ints, min_size=1, max_size=3))
def test_pade_recovers_rational(num, den):
    if den[0] == 0:
        return
    N = 8
    K = QQ
    P = UPoly(K, [K(c) for c in num])
    Q = UPoly(K, [K(c) for c in den])
    s = series_mul(P.c, series_inv(Q.c, N, K(1)), N, K(0))
    r = pade_reconstruct(s, 2, 2)
    assert r.den[0] == 1
    assert r.num * Q == r.den * P


# --- derivative -------------------------------------------------------------------------------------
def test_derive_examples():
    assert derive_x(rf([1], [0, 1])) == rf([-1], [0, 0, 1])
    assert derive_x(RatFunc(x**3)) == RatFunc(3 * x * x)
    assert derive_x(RatFunc.const(QQ, 5)).is_zero()


@given(ratfuncs(), ratfuncs())
def test_derive_leibniz(r, s):
    assert derive_x(r * s) == derive_x(r) * s + r * derive_x(s)


# --- rational functions and Laurent series --------------------------------------------------------------
def test_ratfunc_canonical_form():
    r = RatFunc(2 * x * (x - 1), 4 * x)
    assert r.den.is_monic()
    assert r == RatFunc(x - 1, poly(2))
    K = RatFuncField(QQ)
    assert K(3) == RatFunc.const(QQ, 3)


def test_laurent_window_arithmetic():
    a = TruncLaurent(QQ, -1, [1, 2, 3], 2)
    b = TruncLaurent(QQ, 0, [1, 1], None)
    c = TruncLaurent(QQ, -1, [1], None)
    assert (a * b).prec == 2
    assert (a * c).prec == 1
    assert (a + b).prec == 2
    assert str(series_expand(RatFunc(x, x - 1), 3)) == "-x - x^2 + O(x^3)"


def test_char_p_arithmetic():
    F = Field(5)
    y = Poly.x(F)
    g, s, u = poly_gcd(y**5 - y, y * y - 1)
    assert g == y * y - 1
    assert derive_x(RatFunc(y**5)).is_zero()
