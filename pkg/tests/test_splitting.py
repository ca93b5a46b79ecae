import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import ONE, X, rf
from fieldpatch.errors import ContextInvalid, MembershipFailure, NotEqual, ReconstructionFailed
from fieldpatch.exactalg import INF, QQ, Poly, RatFunc, TruncLaurent
from fieldpatch.splitting import (
    GlobalSplitContext,
    default_bounds,
    intersect_elem,
    lift_constant,
    reconstruct_field_elem,
    split_mod_t_global,
    split_mod_t_local,
)
from fieldpatch.trings import ExactXT, PatchSet, RingId, TElem

x = Poly.x(QQ)
A1 = PatchSet.affine_line(QQ)
AT_INF = PatchSet.points(QQ, [INF])
CTX = GlobalSplitContext(A1, AT_INF)


def excl(*places):
    return RingId.global_(PatchSet.excluding(QQ, places))


# --- global split ----------------------------------------------------------------------------------
def test_global_split_pole_at_zero_moves_to_c():
    b, c = split_mod_t_global(rf([1, 0, 1], [0, 1]), CTX)
    assert (b, c) == (X, rf([1], [0, 1]))


def test_global_split_constant_goes_to_b():
    b, c = split_mod_t_global(RatFunc.const(QQ, 5), CTX)
    assert b == RatFunc.const(QQ, 5) and c.is_zero()


def test_global_split_unconstrained_place_goes_to_b():
    ctx = GlobalSplitContext(PatchSet.points(QQ, [x]), PatchSet.points(QQ, [x - 1]))
    a = rf([1], [-2, 1])
    assert split_mod_t_global(a, ctx) == (a, RatFunc.const(QQ, 0))


def test_global_split_context_validation():
    with pytest.raises(ContextInvalid):
        split_mod_t_global(X, GlobalSplitContext(A1, A1))
    with pytest.raises(ContextInvalid):
        split_mod_t_global(X, GlobalSplitContext(A1, AT_INF, P=None, N_P=2))


def test_global_split_with_pole_budget():
    # P = x in U1 with budget 1: the simple pole at 0 may stay on the b side
    ctx = GlobalSplitContext(A1, AT_INF, P=x, N_P=1)
    a = rf([1, 0, 0, 1], [0, 0, 1])  # 1/x^2 + x
    b, c = split_mod_t_global(a, ctx)
    assert b + c == a
    assert b.pole_order(x) <= 1
    assert AT_INF.regular(c)


@st.composite
def laurent_rats(draw):
    num = Poly(QQ, draw(st.lists(st.integers(-5, 5), min_size=1, max_size=6)))
    e0 = draw(st.integers(0, 3))
    e1 = draw(st.integers(0, 2))
    return RatFunc(num, x**e0 * (x - 1) ** e1)


@given(laurent_rats(), laurent_rats(), st.integers(-3, 3), st.integers(-3, 3))
def test_global_split_linear_and_idempotent(a, a2, al, be):
    b, c = split_mod_t_global(a, CTX)
    assert b + c == a
    assert A1.regular(b) and AT_INF.regular(c)
    # den(c) divides a power of the U1 place product: c has no pole at infinity and only finite poles
    assert c.is_zero() or c.num.degree() < c.den.degree() or c.is_constant()
    b2, c2 = split_mod_t_global(a2, CTX)
    bl, cl = split_mod_t_global(a * al + a2 * be, CTX)
    assert (bl, cl) == (b * al + b2 * be, c * al + c2 * be)
    assert split_mod_t_global(b, CTX) == (b, RatFunc.const(QQ, 0))
    assert split_mod_t_global(c, CTX) == (RatFunc.const(QQ, 0), c)


# --- local split -----------------------------------------------------------------------------------
def test_local_split_examples():
    b, c = split_mod_t_local(TruncLaurent(QQ, -2, [1, 0, 3, 1], None))
    assert b.terms() == [(0, 3), (1, 1)] and c.terms() == [(-2, 1)]
    b, c = split_mod_t_local(TruncLaurent(QQ, 0, [1, 1, 1], None))
    assert b.terms() == [(0, 1), (1, 1), (2, 1)] and c.is_zero()
    b, c = split_mod_t_local(TruncLaurent(QQ, -1, [1], None))
    assert b.is_zero() and c.terms() == [(-1, 1)]


@given(st.integers(-4, 0), st.lists(st.integers(-5, 5), min_size=1, max_size=8))
def test_local_split_exact_and_sided(low, cs):
    a = TruncLaurent(QQ, low, cs, 6)
    b, c = split_mod_t_local(a)
    assert (b + c).agrees(a)
    assert all(e >= 0 for e, _ in b.terms())
    assert all(e < 0 for e, _ in c.terms()) and c.prec is None
    assert split_mod_t_local(c)[0].is_zero()


# --- constant lifts -----------------------------------------------------------------------------------
def test_lift_constant_examples():
    e = lift_constant(X * X, excl(INF), 8)
    assert e.prec == 8 and e.coeffs[0] == X * X and all(c.is_zero() for c in e.coeffs[1:])
    assert lift_constant(rf([1], [0, 1]), excl(x), 3).coeffs[0] == rf([1], [0, 1])
    with pytest.raises(MembershipFailure):
        lift_constant(rf([1], [0, 1]), excl(INF), 3)


# --- intersections ---------------------------------------------------------------------------------------
def test_intersect_constants_land_in_full_ring():
    e1 = TElem(excl(INF), [ONE, ONE * 3])
    e2 = TElem(excl(x), [ONE, ONE * 3])
    out = intersect_elem(e1, e2)
    assert out.ring.patch.is_full()
    assert list(out.coeffs) == [ONE, ONE * 3]


def test_intersect_rejects_claim_regular_at_infinity():
    e1 = TElem(excl(INF), [X, ONE])
    e2 = TElem.unchecked(excl(x), [X, ONE])
    with pytest.raises(MembershipFailure):
        intersect_elem(e1, e2)


def test_intersect_union_of_overlapping_patches():
    e1 = TElem(excl(INF, x - 1), [X, X])
    e2 = TElem(excl(INF, x), [X, X])
    out = intersect_elem(e1, e2)
    assert out.ring == excl(INF)
    assert list(out.coeffs) == [X, X]


def test_intersect_detects_different_elements():
    with pytest.raises(NotEqual):
        intersect_elem(TElem(excl(INF), [ONE]), TElem(excl(x), [ONE * 2]))


def test_intersect_local_r1_r2():
    R1, R2 = RingId.local(QQ, "R1"), RingId.local(QQ, "R2")
    f = rf([1], [1, -1])  # 1/(1-x): in k[[x]] and in k(x)
    e1 = TElem(R1, [TruncLaurent(QQ, 0, [1] * 6, 6)])
    e2 = TElem(R2, [f])
    out = intersect_elem(e1, e2)
    assert out.ring == RingId.local(QQ, "R") and list(out.coeffs) == [f]


@given(st.randoms(use_true_random=False))
def test_intersect_matches_brute_force(r):
    # coefficients regular on A1 minus {1} and on A1 minus {0}: the common value is a polynomial
    cs = [RatFunc(Poly(QQ, [r.randint(-3, 3) for _ in range(3)])) for _ in range(4)]
    e1 = TElem(excl(INF, x - 1), cs)
    e2 = TElem(excl(INF, x), cs)
    out = intersect_elem(e1, e2)
    gen = RingId.generic(QQ)
    assert [gen.coerce(c) for c in out.coeffs] == [gen.coerce(c) for c in cs]
    assert out.membership_ok()


# --- reconstruction -----------------------------------------------------------------------------------
def test_reconstruct_one_over_x_minus_t():
    # oracle (sympy): 1/(x - t) has t-coefficients x^-(j+1)
    e = TElem(RingId.generic(QQ), [rf([1], [0] * (j + 1) + [1]) for j in range(8)])
    out = reconstruct_field_elem(e)
    assert out == ExactXT.from_t_coeffs([ONE], [X, -ONE])


def test_reconstruct_constant():
    e = TElem(RingId.generic(QQ), [ONE * 7] + [ONE * 0] * 7)
    assert reconstruct_field_elem(e) == ExactXT.const(QQ, 7)


def test_reconstruct_random_unit_fails_at_small_bounds():
    rng = random.Random(7)
    cs = [RatFunc(Poly(QQ, [rng.randint(-9, 9) for _ in range(3)]), Poly(QQ, [rng.randint(1, 9), 1])) for _ in range(8)]
    with pytest.raises(ReconstructionFailed):
        reconstruct_field_elem(TElem(RingId.generic(QQ), cs), 1, 1)


def test_default_bounds():
    assert default_bounds(8) == (3, 3)
    assert default_bounds(1) == (0, 0)
