"""Seeded self-test battery covering every module."""

from __future__ import annotations

import random

from ..errors import CheckFailure
from ..exactalg import Field, RatFunc, rr_certificate
from ..factorization import FactorContext, audit_trace, factor_general, unit_factor_local, weierstrass_prep
from ..patching import SHAPES, beta_induce, solve, verify_solution
from ..splitting import GlobalSplitContext, reconstruct_field_elem, split_mod_t_global
from ..structures import diffmod_demo, klein4_demo, quaternion_split_demo
from ..trings import ExactXT, PatchSet
from . import generate


class _Stop(Exception):
    pass


def run_selftest(F: Field, seed: int = 0, N: int = 8) -> list[dict]:
    """Run the battery; the list ends at the first failing check, if any."""
    rng = random.Random(seed)
    out: list[dict] = []

    def add(case: str, checks) -> None:
        for c in checks:
            out.append({"name": f"{case}: {c['name']}", "modulus": c.get("modulus"),
                        "residual_is_zero": bool(c["residual_is_zero"])})
            if not c["residual_is_zero"]:
                raise _Stop

    def guarded(case: str, fn) -> None:
        try:
            add(case, fn())
        except (CheckFailure, AssertionError) as exc:
            add(case, [{"name": f"raised {type(exc).__name__}: {exc}", "modulus": None, "residual_is_zero": False}])

    U1, U2 = PatchSet.affine_line(F), PatchSet.complement(PatchSet.affine_line(F))
    try:
        for k in range(3):
            a = generate.laurent_poly(rng, F)

            def split_case(a=a):
                b, c = split_mod_t_global(a, GlobalSplitContext(U1, U2))
                return [{"name": "a = b + c", "residual_is_zero": b + c == a},
                        {"name": "b regular on A1", "residual_is_zero": U1.regular(b)},
                        {"name": "c regular at inf", "residual_is_zero": U2.regular(c)}]

            guarded(f"split {k + 1}", split_case)
        ctx = FactorContext.global_(U1, U2, N)
        for k in range(3):
            A = generate.global_matrix(rng, 2, N, F)

            def factor_case(A=A):
                res = factor_general(A, ctx)
                checks = list(res.checks)
                for i, okB, okC, okA in audit_trace(res.near_identity_input, res):
                    checks.append({"name": f"loop step {i}", "modulus": i + 1, "residual_is_zero": okB and okC and okA})
                return checks

            guarded(f"factor {k + 1}", factor_case)
        for k in range(2):
            a = generate.local_unit(rng, N, F)
            guarded(f"unitfact {k + 1}", lambda a=a: unit_factor_local(a, 16).checks)
        if F.char == 0:
            for k in range(3):
                f, _ = generate.weierstrass_input(rng, N, F)
                guarded(f"wprep {k + 1}", lambda f=f: weierstrass_prep(f).checks)
        for shape in SHAPES:
            p = beta_induce(2, shape, N, F)

            def solve_case(p=p):
                s = solve(p)
                return verify_solution(p, s).checks

            guarded(f"solve {shape}", solve_case)
        for k in range(3):
            D = generate.effective_divisor(rng, 6, F)
            guarded(f"rrbasis {k + 1}", lambda D=D: rr_certificate(D))
        for k in range(2):
            e = ExactXT.from_t_coeffs([generate.laurent_poly(rng, F), RatFunc.const(F, 1)],
                                      [RatFunc.const(F, 1), generate.laurent_poly(rng, F)], F)
            v, cs = e.expand(N)

            def rec_case(e=e, v=v, cs=cs):
                return [{"name": "reconstructed element equals the source", "modulus": N,
                         "residual_is_zero": reconstruct_field_elem((v, cs)) == e}]

            guarded(f"reconstruct {k + 1}", rec_case)
        if F.char != 2:
            guarded("demo quaternion", lambda: quaternion_split_demo(N, F).checks)
            guarded("demo klein4", lambda: klein4_demo(min(N, 6), F).checks)
            guarded("demo diffmod", lambda: diffmod_demo(2, N, seed, F).checks)
    except _Stop:
        pass
    return out
