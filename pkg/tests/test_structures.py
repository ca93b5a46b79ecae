import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fieldpatch.errors import InconsistentTable, NotCompatible, NotMultiplicative, UnsupportedCharacteristic, ZeroInput
from fieldpatch.exactalg import QQ, Field, Poly, RatFunc
from fieldpatch.patching import make_problem
from fieldpatch.structures import (
    AlgebraPresentation,
    CosetTable,
    FiniteGroup,
    building_block_quadratic,
    check_algebra,
    check_equivariant_iso,
    check_galois,
    coset_change_iso,
    diffmod_demo,
    induce_galois,
    inner_automorphism,
    klein4_demo,
    matrix_algebra,
    patch_algebra,
    patch_diffmod,
    quaternion_algebra,
    quaternion_split_demo,
    random_compatible_problem,
    sqrt_one_minus_xt,
    trivial_algebra,
    trivial_galois,
)
from fieldpatch.trings import ExactXT, RingId, XMatrix

x = RatFunc.x(QQ)
t = ExactXT.t(QQ)
xe = ExactXT.from_coeff(x)
GEN = RingId.generic(QQ)
ONE_MINUS_XT = ExactXT.from_t_coeffs([RatFunc.const(QQ, 1), -x])


def all_pass(checks):
    return bool(checks) and all(c["residual_is_zero"] for c in checks)


def series_strs(L, k):
    return [str(L.coeff(0, 0, j)) for j in range(k)]


# --- algebra patching ----------------------------------------------------------------------------
def test_patch_trivial_algebras():
    p = make_problem("two-patch", [XMatrix(QQ, [[1]])])
    A = patch_algebra(p, [trivial_algebra(QQ)] * 2)
    assert A.exact and A.consts == trivial_algebra(QQ).consts
    assert A.unit == [ExactXT.const(QQ, 1)]
    assert all_pass(A.checks)


def test_patch_mat2_by_inner_transition():
    # oracle (sympy): conjugation by [[1, t/x + x t], [0, 1]] is multiplicative on Mat_2
    g = XMatrix(QQ, [[1, t / xe + xe * t], [0, 1]])
    p = make_problem("two-patch", [inner_automorphism(g)])
    A = patch_algebra(p, [matrix_algebra(QQ)] * 2)
    ref = matrix_algebra(QQ)
    assert A.exact and A.consts == ref.consts and A.unit == ref.unit
    assert A.N_eff == p.N
    assert all_pass(A.checks)


def test_patch_quaternion_relations_exact():
    D = quaternion_algebra(QQ, ONE_MINUS_XT, ONE_MINUS_XT)
    p = make_problem("two-patch", [XMatrix.identity(QQ, 4)])
    A = patch_algebra(p, [D, D])
    assert A.exact
    c = A.consts
    assert c[1][1][0] == ONE_MINUS_XT and c[2][2][0] == ONE_MINUS_XT
    assert c[1][2][3] == ExactXT.const(QQ, 1) and c[2][1][3] == ExactXT.const(QQ, -1)
    assert all_pass(A.checks)


def test_patch_algebra_rejects_non_multiplicative_transition():
    # F[e]/(e^2 - 1) with transition e -> 2e is not an algebra map
    alg = AlgebraPresentation.from_left_mult(QQ, [[[1, 0], [0, 1]], [[0, 1], [1, 0]]], [1, 0])
    p = make_problem("two-patch", [XMatrix(QQ, [[1, 0], [0, 2]])])
    with pytest.raises(NotMultiplicative):
        patch_algebra(p, [alg, alg])


@pytest.mark.parametrize("m", [1, 2, 3])
def test_matrix_algebra_identities(m):
    checks = check_algebra(matrix_algebra(QQ, m), GEN, 4)
    assert all_pass(checks)


# --- Galois algebras ------------------------------------------------------------------------------
Z2 = FiniteGroup.cyclic(2)
K4 = FiniteGroup.klein4()


def test_induce_from_whole_group_is_unchanged():
    E = building_block_quadratic(x, 4).galois
    out = induce_galois(CosetTable.make(Z2, (0, 1)), E)
    assert out.algebra.consts == E.algebra.consts
    assert out.action == E.action


def test_induce_from_trivial_subgroup_is_swap():
    E = induce_galois(CosetTable.make(Z2, (0,)), trivial_galois(QQ))
    assert E.algebra.n == 2
    assert E.action[1] == XMatrix(QQ, [[0, 1], [1, 0]])
    checks = check_galois(E, GEN, 4)
    assert all_pass(checks)
    assert "invariants have dimension 1" in [c["name"] for c in checks]


@pytest.mark.parametrize("H", [(0, 1), (0, 2), (0, 3)])
def test_induce_quadratic_to_klein4(H):
    ct = CosetTable.make(K4, H)
    # brute force: h_{i,g} = c_i^-1 g c_sigma(i) lies in H, and the stabilizer of factor i is c_i H c_i^-1
    for g in range(4):
        for i in range(ct.m):
            h = K4.mul(K4.mul(K4.inv(ct.reps[i]), g), ct.reps[ct.sigma[g][i]])
            assert h == ct.h[g][i] and h in H
    for i in range(ct.m):
        c = ct.reps[i]
        assert ct.stabilizer(i) == sorted(K4.mul(K4.mul(c, h), K4.inv(c)) for h in H)
    E = building_block_quadratic(x, 4).galois
    out = induce_galois(ct, E)
    assert out.algebra.n == 4
    assert all_pass(check_galois(out, GEN, 4))


def test_induce_rejects_mismatched_group():
    with pytest.raises(InconsistentTable):
        induce_galois(CosetTable.make(K4, (0, 1)), trivial_galois(QQ))
    with pytest.raises(InconsistentTable):
        CosetTable.make(K4, (0, 1), reps=(0, 1))


@pytest.mark.parametrize("H,reps2", [((0, 1), (0, 3)), ((0, 2), (0, 3)), ((0,), (0, 1, 2, 3))])
def test_coset_change_iso_is_equivariant(H, reps2):
    E = building_block_quadratic(x, 4).galois if len(H) == 2 else trivial_galois(QQ)
    ct1, ct2 = CosetTable.make(K4, H), CosetTable.make(K4, H, reps=reps2)
    E1, E2 = induce_galois(ct1, E), induce_galois(ct2, E)
    Phi = coset_change_iso(ct1, ct2, E)
    ok, m = check_equivariant_iso(Phi, E1, E2, GEN, 4)
    assert ok and m == 4


def test_building_block_f_equals_x():
    # oracle (sympy): sqrt(x(x - t)) = x - t/2 - t^2/(8x) - t^3/(16x^2) - 5t^4/(128x^3) - 7t^5/(256x^4)
    bb = building_block_quadratic(x, 6)
    assert series_strs(bb.root, 6) == ["x", "-1/2", "-1/8/x", "-1/16/x^2", "-5/128/x^3", "-7/256/x^4"]
    assert bb.relation == xe * (xe - t)
    assert bb.relation_reconstructed == bb.relation
    assert all_pass(bb.checks)


def test_building_block_f_equals_one():
    # oracle (sympy): sqrt(1 - t) = 1 - t/2 - t^2/8 - t^3/16 - 5t^4/128 - 7t^5/256
    bb = building_block_quadratic(RatFunc.const(QQ, 1), 6)
    assert series_strs(bb.root, 6) == ["1", "-1/2", "-1/8", "-1/16", "-5/128", "-7/256"]
    assert all_pass(bb.checks)


def test_building_block_errors():
    with pytest.raises(UnsupportedCharacteristic):
        building_block_quadratic(RatFunc.x(Field(2)), 4)
    with pytest.raises(ZeroInput):
        building_block_quadratic(RatFunc.const(QQ, 0), 4)


@settings(max_examples=8)
@given(st.integers(-3, 3).filter(bool), st.integers(-2, 2))
def test_building_block_splits_for_units(a, b):
    f = RatFunc.const(QQ, a) * x + b if b else RatFunc.const(QQ, a) * x
    bb = building_block_quadratic(f, 5)
    assert all_pass(bb.checks)


# --- quaternion demo --------------------------------------------------------------------------------
def test_sqrt_one_minus_xt_small():
    # oracle (sympy): sqrt(1 - x t) = 1 - x t/2 - x^2 t^2/8 + O(t^3)
    fs = sqrt_one_minus_xt(QQ, 3)
    assert [str(f) for f in fs] == ["1", "-1/2*x", "-1/8*x^2"]


@pytest.mark.parametrize("N", [1, 3, 16])
def test_quaternion_demo(N):
    rep = quaternion_split_demo(N)
    assert rep.passed and rep.N == N
    assert rep.idempotent_rank == 2
    fs = sqrt_one_minus_xt(QQ, N)
    binom = [Fraction(1)]
    for j in range(1, N):
        binom.append(binom[-1] * (Fraction(1, 2) - j + 1) / j)
    for j, f in enumerate(fs):
        assert f == Poly(QQ, [0] * j + [binom[j] * (-1) ** j])


def test_quaternion_demo_other_characteristic():
    assert quaternion_split_demo(6, Field(5)).passed
    with pytest.raises(UnsupportedCharacteristic):
        quaternion_split_demo(4, Field(2))


# --- Klein-four demo --------------------------------------------------------------------------------
def test_klein4_demo_small():
    rep = klein4_demo(4)
    assert rep.passed
    assert (rep.dimension, rep.invariant_dimension) == (4, 1)
    assert all(b.relation_reconstructed == b.relation for b in rep.blocks)


def test_klein4_rejects_char_2():
    with pytest.raises(UnsupportedCharacteristic):
        klein4_demo(4, Field(2))


# --- differential modules ------------------------------------------------------------------------------
def test_diffmod_trivial():
    p = make_problem("two-patch", [XMatrix(QQ, [[1]])])
    M = patch_diffmod(p, [XMatrix(QQ, [[0]]), XMatrix(QQ, [[0]])])
    assert M.flag == "exact" and M.exact == [[ExactXT.const(QQ, 0)]]


def test_diffmod_gauge_of_x():
    # compatibility: 1 = x * (1/x) - 0; S1 = 1/x gives D = 1/x + x * (-1/x^2) = 0
    p = make_problem("two-patch", [XMatrix(QQ, [[x]])])
    M = patch_diffmod(p, [XMatrix(QQ, [[1 / x]]), XMatrix(QQ, [[0]])])
    assert M.exact == [[ExactXT.const(QQ, 0)]]
    assert all_pass(M.checks)


def test_diffmod_incompatible():
    p = make_problem("two-patch", [XMatrix(QQ, [[x]])])
    with pytest.raises(NotCompatible):
        patch_diffmod(p, [XMatrix(QQ, [[0]]), XMatrix(QQ, [[0]])])


@settings(max_examples=4)
@given(st.integers(0, 10**6))
def test_diffmod_random_compatible(seed):
    rng = random.Random(seed)
    p, Ds, _ = random_compatible_problem(rng, 2, 6)
    M = patch_diffmod(p, Ds, rng=rng)
    assert all_pass(M.checks)
    assert any(c["name"].startswith("Leibniz") for c in M.checks)


def test_diffmod_demo_small():
    rep = diffmod_demo(2, 6, seed=1)
    assert rep.passed and len(rep.instances) == 2
