"""Acceptance suite: one test per criterion, each printing a single PASS/FAIL line.

Every congruence below is exact: a check passes only when the residual is
identically zero at the stated modulus."""

import random
import time
from functools import lru_cache

import pytest

from fieldpatch.cli import generate
from fieldpatch.errors import MembershipFailure, SingularAtPrecision, UnsupportedCharacteristic
from fieldpatch.exactalg import INF, QQ, Field, RatFunc, in_riemann_roch_space, rr_basis, rr_certificate
from fieldpatch.factorization import FactorContext, audit_trace, factor_general, unit_factor_local, weierstrass_prep
from fieldpatch.patching import SHAPES, beta_induce, solve, verify_solution
from fieldpatch.splitting import intersect_elem
from fieldpatch.structures import building_block_quadratic, diffmod_demo, klein4_demo, quaternion_split_demo
from fieldpatch.trings import ExactXT, LMatrix, PatchSet, RingId, TElem, XMatrix

N = 8
M = 16
GEN = RingId.generic(QQ)
A1 = PatchSet.affine_line(QQ)
AT_INF = PatchSet.points(QQ, [INF])


def report(num: int, ok: bool, detail: str) -> None:
    print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {num}: {detail}")
    assert ok, detail


def all_zero(checks) -> bool:
    return bool(checks) and all(c["residual_is_zero"] for c in checks)


# --- 1, 2: global factorization and loop audit ------------------------------------------------------
@lru_cache(maxsize=None)
def global_runs():
    ctx = FactorContext.global_(A1, AT_INF, N)
    start = time.perf_counter()
    runs = []
    for n in (1, 2, 3):
        rng = random.Random(f"acceptance-global-{n}")
        for _ in range(25):
            A = generate.global_matrix(rng, n, N)
            runs.append((A, factor_general(A, ctx)))
    return runs, time.perf_counter() - start


def test_criterion_1_global_factorization():
    runs, elapsed = global_runs()
    bad = []
    for k, (A, res) in enumerate(runs):
        a1 = res.A1.evaluate(GEN, res.N_eff)
        a2 = res.A2.evaluate(GEN, res.N_eff)
        B = res.A1.factors[-1].payload
        C = res.A2.factors[0].payload
        ok = (
            res.N_eff >= 6
            and (a1 * a2).agrees_to(LMatrix.from_tmatrix(A), res.N_eff)
            and all_zero(res.checks)
            and all(A1.regular(c) for Mk in B.data for r in Mk for c in r)
            and all(AT_INF.regular(c) for Mk in C.data for r in Mk for c in r)
        )
        if not ok:
            bad.append(k)
    min_n = min(res.N_eff for _, res in runs)
    report(1, not bad and len(runs) == 75 and elapsed < 30,
           f"{len(runs) - len(bad)}/75 factorizations exact, min N_eff {min_n}, {elapsed:.1f}s")


def test_criterion_2_loop_audit():
    runs, _ = global_runs()
    steps = 0
    bad = []
    for k, (A, res) in enumerate(runs):
        src = res.near_identity_input
        trace = audit_trace(src, res) if src is not None else []
        steps += len(trace)
        if not trace or not all(okB and okC and okA for _, okB, okC, okA in trace):
            bad.append(k)
    report(2, not bad, f"{steps} logged loop steps over {len(runs)} instances, {len(bad)} violations")


# --- 3: local case ----------------------------------------------------------------------------------
def test_criterion_3_local_case():
    rng = random.Random("acceptance-local")
    unit_ok = 0
    for _ in range(25):
        a = generate.local_unit(rng, N)
        r = unit_factor_local(a, M)
        sides = r.b.ring == RingId.local(QQ, "R1") and r.c.ring == RingId.local(QQ, "R2")
        if all_zero(r.checks) and sides and r.b.membership_ok() and r.c.membership_ok():
            unit_ok += 1
    ctx = FactorContext.local(QQ, N, M)
    mat_ok = 0
    for _ in range(25):
        A = generate.local_matrix(rng, 2, N)
        res = factor_general(A, ctx)
        if all_zero(res.checks) and res.N_eff >= N:
            mat_ok += 1
    report(3, unit_ok == 25 and mat_ok == 25, f"units {unit_ok}/25, 2x2 matrices {mat_ok}/25 (mod t^{N})")


# --- 4: Weierstrass preparation ------------------------------------------------------------------------
def independent_residual_zero(f: TElem, b: ExactXT, u: TElem, modulus: int) -> bool:
    """Expand b in k(x)((t)) and compare t^v-aligned coefficients of b*u with f."""
    v, cs = b.expand(modulus)
    us = list(u.coeffs)
    for m in range(modulus):
        acc = RatFunc.const(QQ, 0)
        for j, c in enumerate(cs):
            k = m - v - j
            if 0 <= k < len(us):
                acc = acc + c * us[k]
        if acc != f.coeffs[m]:
            return False
    return True


def test_criterion_4_weierstrass():
    rng = random.Random("acceptance-weierstrass")
    exact = 0
    wrong = 0
    for _ in range(25):
        f, _ = generate.weierstrass_input(rng, N)
        w = weierstrass_prep(f)
        if w.flag == "exact" and w.b is not None:
            if all_zero(w.checks) and independent_residual_zero(f, w.b, w.u, min(N, w.N_eff)):
                exact += 1
            else:
                wrong += 1
    report(4, exact >= 23 and wrong == 0, f"{exact}/25 reconstructed exactly (need >= 90%), {wrong} wrong outputs")


# --- 5: patching round-trips ------------------------------------------------------------------------
def test_criterion_5_patching_round_trip():
    beta_ok = 0
    for shape in SHAPES:
        for n in range(1, 5):
            p = beta_induce(n, shape, N)
            sol = solve(p)
            cert = verify_solution(p, sol)
            ident = all(
                S.evaluate(p.model, sol.N_eff, p.window).agrees_to(
                    LMatrix.from_xmatrix(XMatrix.identity(QQ, n), p.model, sol.N_eff, p.window), sol.N_eff)
                for S in sol.S
            )
            beta_ok += cert.passed and ident and cert.N_eff == N
    rng = random.Random("acceptance-patching")
    two = sum(verify_solution(p, solve(p)).passed
              for p in (generate.patching_problem(rng, "two-patch", 2, N) for _ in range(25)))
    three = sum(verify_solution(p, solve(p)).passed
                for p in (generate.patching_problem(rng, "multi", 2, N, r=3) for _ in range(10)))
    report(5, beta_ok == 12 and two == 25 and three == 10,
           f"induced {beta_ok}/12, two-patch {two}/25, three-patch {three}/10")


# --- 6, 7, 8: structure demos ----------------------------------------------------------------------------
def test_criterion_6_quaternion():
    rep = quaternion_split_demo(16)
    names = {c["name"]: c for c in rep.checks}
    ok = (
        rep.passed
        and names["f^2 = 1 - xt"]["modulus"] == 16
        and names["(a - f)(a + f) = 0"]["modulus"] == 16
        and names["a^2 = 1 - xt"]["residual_is_zero"]
        and names["b^2 = 1 - xt"]["residual_is_zero"]
    )
    report(6, ok, f"{len(rep.checks)} quaternion checks mod t^16, idempotent rank {rep.idempotent_rank}")


def test_criterion_7_klein4():
    rep = klein4_demo(N)
    recon = all(b.relation_reconstructed is not None and b.relation_reconstructed == b.relation for b in rep.blocks)
    action = any("group homomorphism" in c["name"] for c in rep.checks)
    ok = rep.passed and rep.dimension == 4 and rep.invariant_dimension == 1 and recon and action
    report(7, ok, f"dimension {rep.dimension}, invariants {rep.invariant_dimension}, "
                  f"block relations exact: {recon}, {len(rep.checks)} checks")


def test_criterion_8_diffmod():
    rep = diffmod_demo(10, N, seed=0)
    compat = [c for c in rep.checks if "D_1 - D_2" in c["name"]]
    sides = [c for c in rep.checks if "D from patch 1 = D from patch 2" in c["name"]]
    leib = [c for c in rep.checks if "Leibniz" in c["name"]]
    ok = (
        rep.passed
        and len(rep.instances) == 10
        and len(compat) == 10 and len(sides) == 10 and len(leib) == 30
        and all(c["modulus"] == N for c in sides)
    )
    report(8, ok, f"10 instances, {len(rep.checks)} checks, both-side D agree mod t^{N}")


# --- 9: Riemann-Roch --------------------------------------------------------------------------------------
def test_criterion_9_riemann_roch():
    rng = random.Random("acceptance-rr")
    good = 0
    for _ in range(20):
        D = generate.effective_divisor(rng, 6)
        basis = rr_basis(D)
        if (len(basis) == D.degree() + 1 and all(in_riemann_roch_space(f, D) for f in basis)
                and all_zero(rr_certificate(D, basis))):
            good += 1
    report(9, good == 20, f"{good}/20 divisors with dim L(D) = deg D + 1 and certificates")


# --- 10: negative controls -------------------------------------------------------------------------------
def test_criterion_10_negative_controls():
    t = ExactXT.t(QQ)
    x = ExactXT.from_coeff(RatFunc.x(QQ))
    ctx = FactorContext.global_(A1, AT_INF, N)
    singular = 0
    for rows in ([[1, 1], [1, 1]], [[1, x], [t, x * t]]):
        with pytest.raises(SingularAtPrecision):
            factor_general(XMatrix(QQ, rows), ctx)
        singular += 1
    # x + t claimed regular at infinity
    excl_inf = RingId.global_(PatchSet.excluding(QQ, [INF]))
    excl_0 = RingId.global_(PatchSet.excluding(QQ, [RatFunc.x(QQ).num]))
    X = RatFunc.x(QQ)
    one = RatFunc.const(QQ, 1)
    with pytest.raises(MembershipFailure):
        intersect_elem(TElem(excl_inf, [X, one]), TElem.unchecked(excl_0, [X, one]))
    F2 = Field(2)
    rejected = 0
    for run in (lambda: quaternion_split_demo(4, F2), lambda: klein4_demo(4, F2),
                lambda: building_block_quadratic(RatFunc.x(F2), 4)):
        with pytest.raises(UnsupportedCharacteristic):
            run()
        rejected += 1
    report(10, singular == 2 and rejected == 3,
           "singular Mat_n inputs rejected, x + t not regular at infinity, char-2 demos rejected")
