import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fieldpatch.cli import generate
from fieldpatch.errors import InputError, ShapeMismatch, SingularAtPrecision, VerificationFailed
from fieldpatch.exactalg import QQ, Field, RatFunc
from fieldpatch.patching import (
    SHAPES,
    Solution,
    beta_induce,
    make_problem,
    solve,
    solve_local_global,
    solve_multi_patch,
    solve_two_patch,
    verify_solution,
)
from fieldpatch.trings import ExactXT, FMatrix, RingId, XMatrix

t = ExactXT.t(QQ)
xe = ExactXT.from_coeff(RatFunc.x(QQ))
GEN = RingId.generic(QQ)


def assert_solution_is(p, sol, expected_rows):
    N = sol.N_eff
    for S, rows in zip(sol.S, expected_rows):
        V = S.evaluate(p.model, N, p.window)
        E = FMatrix.of(XMatrix(QQ, rows)).evaluate(p.model, N, p.window)
        assert V.agrees_to(E, min(N, V.abs_prec))


# --- induced problems ------------------------------------------------------------------------------
def test_beta_induce_rejects_zero_dimension():
    with pytest.raises(InputError):
        beta_induce(0)


@pytest.mark.parametrize("shape", SHAPES)
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_beta_induce_solves_to_identity(shape, n):
    p = beta_induce(n, shape)
    sol = solve(p)
    cert = verify_solution(p, sol)
    assert cert.passed and cert.dimension == n and cert.N_eff == p.N
    I = [[int(i == j) for j in range(n)] for i in range(n)]
    assert_solution_is(p, sol, [I] * p.r)


# --- two-patch ----------------------------------------------------------------------------------------
def test_two_patch_diagonal_t():
    p = make_problem("two-patch", [XMatrix(QQ, [[t, 0], [0, 1]])])
    sol = solve_two_patch(p)
    assert_solution_is(p, sol, [[[1 / t, 0], [0, 1]], [[1, 0], [0, 1]]])
    assert verify_solution(p, sol).passed


def test_two_patch_one_plus_t_over_x():
    p = make_problem("two-patch", [XMatrix(QQ, [[1 + t / xe]])])
    sol = solve(p)
    # S1 = 1 over A^1; S2 = 1 + t/x is regular away from 0
    assert_solution_is(p, sol, [[[1]], [[1 + t / xe]]])


def test_two_patch_tampered_solution_rejected():
    p = make_problem("two-patch", [XMatrix(QQ, [[t, 0], [0, 1]])])
    sol = solve(p)
    bad = Solution((FMatrix.of(XMatrix(QQ, [[2 / t, 0], [0, 1]])), sol.S[1]), sol.N_eff)
    with pytest.raises(VerificationFailed):
        verify_solution(p, bad)


def test_wrong_solver_for_shape():
    p = beta_induce(1, "two-patch")
    with pytest.raises(InputError):
        solve_multi_patch(p)
    with pytest.raises(InputError):
        solve_local_global(p)


# --- multi-patch ---------------------------------------------------------------------------------------
def test_multi_patch_example():
    p = make_problem("multi", [XMatrix(QQ, [[1]]), XMatrix(QQ, [[1 + t / xe]])])
    sol = solve_multi_patch(p)
    assert p.r == 3
    # 1 + t/x is a unit at x = 1, so patch 2 absorbs its inverse and the reference stays trivial
    assert_solution_is(p, sol, [[[1]], [[1 / (1 + t / xe)]], [[1]]])
    assert verify_solution(p, sol).passed


def test_multi_patch_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        make_problem("multi", [XMatrix(QQ, [[1]]), XMatrix(QQ, [[1, 0], [0, 1]])])


# --- local-global --------------------------------------------------------------------------------------
def test_local_global_x_plus_t():
    p = make_problem("local-global", [XMatrix(QQ, [[xe + t]])])
    sol = solve_local_global(p)
    assert sol.N_eff == p.N
    assert verify_solution(p, sol).passed
    assert_solution_is(p, sol, [[[1 / xe]], [[1 + t / xe]]])


def test_local_global_singular_rejected():
    with pytest.raises(SingularAtPrecision):
        make_problem("local-global", [XMatrix(QQ, [[0]])])


# --- random problems ----------------------------------------------------------------------------------
@settings(max_examples=8)
@given(st.integers(0, 10**6), st.sampled_from(SHAPES), st.integers(1, 2))
def test_random_problems_verify(seed, shape, n):
    p = generate.patching_problem(random.Random(seed), shape, n)
    sol = solve(p)
    cert = verify_solution(p, sol)
    assert cert.passed
    names = [c["name"] for c in cert.checks]
    assert sum(name.startswith("A_") for name in names) == p.r - 1


@settings(max_examples=6)
@given(st.integers(0, 10**6))
def test_conjugating_by_constant_matrix_is_functorial(seed):
    rng = random.Random(seed)
    G = XMatrix(QQ, [[1, rng.randint(-3, 3)], [0, rng.choice([1, 2, -1])]])
    Gf, Gi = FMatrix.of(G), FMatrix.of(G.inverse())
    p = generate.patching_problem(rng, "two-patch", 2)
    sol = solve(p)
    A = p.transitions[0]
    GA = Gf.evaluate(p.model, p.N) * A * Gi.evaluate(p.model, p.N)
    q = make_problem("two-patch", [GA])
    moved = Solution(tuple(Gf * S * Gi for S in sol.S), sol.N_eff)
    assert verify_solution(q, moved).passed


def test_char_p_two_patch():
    F = Field(5)
    tp = ExactXT.t(F)
    xp = ExactXT.from_coeff(RatFunc.x(F))
    p = make_problem("two-patch", [XMatrix(F, [[1 + tp / xp, tp], [0, 1]])])
    assert verify_solution(p, solve(p)).passed
