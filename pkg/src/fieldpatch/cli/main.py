"""Command-line front end.  Every command writes one JSON report; exit status
0 means every check passed, 1 that a mathematical check failed, 2 that the
input was malformed or out of contract."""

from __future__ import annotations

import argparse
import json
import random
import sys

from ..errors import CheckFailure, FieldPatchError, InputError, ReconstructionFailed
from ..exactalg import INF, Divisor, Field, RatFunc, rr_basis, rr_certificate
from ..factorization import FactorContext, audit_trace, factor_general, unit_factor_local, weierstrass_prep
from ..patching import SHAPES, make_problem, solve, verify_solution
from ..splitting import GlobalSplitContext, default_bounds, reconstruct_field_elem, split_mod_t_global, split_mod_t_local
from ..structures import (
    AlgebraPresentation,
    diffmod_demo,
    inner_automorphism,
    klein4_demo,
    matrix_algebra,
    patch_algebra,
    patch_diffmod,
    quaternion_algebra,
    quaternion_split_demo,
    random_compatible_problem,
    trivial_algebra,
)
from ..trings import ExactXT, PatchSet, RingId, XMatrix, parse_patchset, parse_place
from . import codec, generate
from .selftest import run_selftest

COMMANDS = ("split", "factor", "wprep", "unitfact", "solve", "patch-alg", "patch-diff", "rrbasis",
            "reconstruct", "demo", "selftest")


class Malformed(Exception):
    """Input could not be parsed."""


# --- argument handling ---------------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fieldpatch", description="Exact patching computations over k((t))(x).")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("target", nargs="?", help="problem shape for solve; quaternion|klein4|diffmod for demo")
    ap.add_argument("--char", type=int, default=0, help="characteristic of k (0 or an odd prime)")
    ap.add_argument("--prec-t", type=int, default=None, help="t-adic precision N (default 8)")
    ap.add_argument("--prec-x", type=int, default=16, help="x-adic window M for local rings")
    ap.add_argument("--seed", type=int, default=0, help="seed for generated instances")
    ap.add_argument("--input", help="JSON input file (a seeded random instance is used when absent)")
    ap.add_argument("--output", help="write the report here instead of standard output")
    ap.add_argument("--bounds", help="reconstruction degree bounds dnum,dden")
    ap.add_argument("--u1", help="first patch, e.g. A1, points:0,1 or minus:inf")
    ap.add_argument("--u2", help="second patch")
    ap.add_argument("--exclude", help="comma-separated places excluded from the patch (sets --u2 to their complement)")
    return ap


def _bounds(text: str | None):
    if text is None:
        return None
    try:
        dn, dd = (int(v) for v in text.split(","))
    except ValueError as exc:
        raise InputError(f"--bounds must be 'dnum,dden', got {text!r}") from exc
    if dn < 0 or dd < 0:
        raise InputError("degree bounds must be nonnegative")
    return dn, dd


class Job:
    def __init__(self, args: argparse.Namespace):
        self.command = args.command
        self.target = args.target
        self.char = args.char
        self.N = args.prec_t
        self.M = args.prec_x
        self.seed = args.seed
        self.input = args.input
        self.output = args.output
        self.bounds = _bounds(args.bounds)
        if self.N is not None and self.N < 1:
            raise InputError("--prec-t must be >= 1")
        if self.M < 1:
            raise InputError("--prec-x must be >= 1")
        self.field = Field(self.char)
        self.args = args
        self.data = self._load()

    def prec(self, default: int = 8) -> int:
        return self.N if self.N is not None else default

    def _load(self):
        if self.input is None:
            return None
        try:
            with open(self.input, encoding="utf-8") as fh:
                data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise Malformed(f"{self.input}: invalid JSON ({exc.msg} at line {exc.lineno} column {exc.colno})") from exc
        except OSError as exc:
            raise Malformed(f"{self.input}: {exc.strerror}") from exc
        if not isinstance(data, dict):
            raise Malformed(f"{self.input}: top level must be a JSON object")
        return data

    def patches(self, default1: str = "A1", default2: str = "points:inf") -> tuple[PatchSet, PatchSet]:
        F = self.field
        d = self.data or {}
        t1 = self.args.u1 or d.get("u1") or default1
        if self.args.exclude:
            U2 = PatchSet.excluding(F, [parse_place(F, tok) for tok in self.args.exclude.split(",") if tok.strip()])
            U2 = U2 if not (self.args.u2 or d.get("u2")) else parse_patchset(F, self.args.u2 or d.get("u2"))
            if not (self.args.u1 or d.get("u1")):
                return U2.complement(), U2
        else:
            U2 = parse_patchset(F, self.args.u2 or d.get("u2") or default2)
        return parse_patchset(F, t1), U2


# --- commands ------------------------------------------------------------------------------------
def cmd_split(job: Job) -> dict:
    F = job.field
    d = job.data or {}
    rng = random.Random(job.seed)
    if d.get("mode") == "local":
        a = codec.dec_laurent(F, d["a"])
        b, c = split_mod_t_local(a)
        ok = (b + c).agrees(a)
        checks = [{"name": "a = nonneg + neg", "modulus": None, "residual_is_zero": ok}]
        return {"checks": checks, "result": {"nonneg": codec.enc_laurent(b), "neg": codec.enc_laurent(c)}}
    U1, U2 = job.patches()
    P = None
    if d.get("P") is not None:
        P = parse_place(F, str(d["P"]))
    ctx = GlobalSplitContext(U1, U2, P, int(d.get("N_P", 0)), d.get("constants_to", "b"))
    a = codec.dec_ratfunc(F, d["a"]) if "a" in d else generate.laurent_poly(rng, F)
    b, c = split_mod_t_global(a, ctx)
    checks = [
        {"name": "a = b + c", "modulus": None, "residual_is_zero": b + c == a},
        {"name": f"c regular on {U2}", "modulus": None, "residual_is_zero": U2.regular(c)},
    ]
    U1b = U1 if P is None or ctx.N_P == 0 else U1.difference(PatchSet.points(F, [P]))
    checks.append({"name": f"b regular on {U1b}", "modulus": None, "residual_is_zero": U1b.regular(b)})
    return {"checks": checks, "result": {"a": codec.enc_ratfunc(a), "b": codec.enc_ratfunc(b), "c": codec.enc_ratfunc(c),
                                         "u1": str(U1), "u2": str(U2)}}


def _factor_input(job: Job):
    F = job.field
    d = job.data or {}
    rng = random.Random(job.seed)
    N = job.prec()
    local = d.get("mode") == "local"
    if "matrix" in d:
        A = codec.dec_matrix(F, d["matrix"])
    elif local:
        A = generate.local_matrix(rng, int(d.get("n", 2)), N, F)
    else:
        A = generate.global_matrix(rng, int(d.get("n", 2)), N, F)
    return A, local


def cmd_factor(job: Job) -> dict:
    F = job.field
    A, local = _factor_input(job)
    N = job.prec(A.prec if hasattr(A, "prec") else 8)
    if local:
        ctx = FactorContext.local(F, N, job.M)
    else:
        U1, U2 = job.patches()
        ctx = FactorContext.global_(U1, U2, N)
    res = factor_general(A, ctx)
    checks = [codec.enc_check(c) for c in res.checks]
    if res.near_identity_input is not None:
        for i, okB, okC, okA in audit_trace(res.near_identity_input, res):
            checks.append({"name": f"loop step {i}: B, C stable and A = B C", "modulus": i + 1,
                           "residual_is_zero": okB and okC and okA})
    return {
        "N_eff": res.N_eff,
        "checks": checks,
        "result": {"A1": codec.enc_fmatrix(res.A1), "A2": codec.enc_fmatrix(res.A2),
                   "certification": res.certification, "mode": "local" if local else "global"},
    }


def cmd_wprep(job: Job) -> dict:
    F = job.field
    d = job.data or {}
    rng = random.Random(job.seed)
    if "elem" in d:
        f = codec.dec_telem(F, d["elem"])
    else:
        f, _ = generate.weierstrass_input(rng, job.prec(), F)
    W = weierstrass_prep(f, job.bounds, M=job.M)
    checks = [codec.enc_check(c) for c in W.checks]
    return {
        "N_eff": W.N_eff,
        "checks": checks,
        "result": {"flag": W.flag, "v": W.v, "b": codec.enc_exact(W.b) if W.b is not None else None,
                   "b_series": codec.enc_telem(W.b_series), "u": codec.enc_telem(W.u)},
    }


def cmd_unitfact(job: Job) -> dict:
    F = job.field
    d = job.data or {}
    rng = random.Random(job.seed)
    a = codec.dec_telem(F, d["elem"]) if "elem" in d else generate.local_unit(rng, job.prec(), F)
    res = unit_factor_local(a, job.M, job.N)
    return {"N_eff": res.b.prec, "checks": [codec.enc_check(c) for c in res.checks],
            "result": {"b": codec.enc_telem(res.b), "c": codec.enc_telem(res.c), "s": res.s}}


def _problem(job: Job, shape: str | None):
    F = job.field
    d = job.data or {}
    shape = shape or d.get("shape") or "two-patch"
    if shape not in SHAPES:
        raise InputError(f"unknown problem shape {shape!r}; expected one of {', '.join(SHAPES)}")
    N = job.prec()
    if "transitions" in d:
        model = RingId.local(F, "R0") if shape == "local-global" else RingId.generic(F)
        ts = d["transitions"]
        if not isinstance(ts, list) or not ts:
            raise InputError("'transitions' must be a nonempty array")
        mats = [codec.dec_matrix(F, t, model) for t in ts]
        return make_problem(shape, mats, N, job.M, F, d.get("r"))
    rng = random.Random(job.seed)
    return generate.patching_problem(rng, shape, int(d.get("n", 2)), N, int(d.get("r", 3)), F)


def cmd_solve(job: Job) -> dict:
    p = _problem(job, job.target)
    s = solve(p)
    cert = verify_solution(p, s)
    return {"N_eff": s.N_eff, "checks": [codec.enc_check(c) for c in cert.checks],
            "result": {"shape": p.shape, "dimension": p.n, "S": [codec.enc_fmatrix(S) for S in s.S], "log": s.log}}


def _algebra(F: Field, desc) -> AlgebraPresentation:
    if not isinstance(desc, dict):
        raise InputError("algebra description must be an object")
    kind = desc.get("kind")
    if kind == "trivial":
        return trivial_algebra(F)
    if kind == "matrix":
        return matrix_algebra(F, int(desc.get("m", 2)))
    if kind == "quaternion":
        return quaternion_algebra(F, codec.dec_exact(F, desc["a"]), codec.dec_exact(F, desc["b"]))
    if kind == "table":
        table = [[[codec.dec_exact(F, c) for c in v] for v in row] for row in desc["products"]]
        unit = [codec.dec_exact(F, c) for c in desc["unit"]] if "unit" in desc else None
        return AlgebraPresentation.from_products(F, table, unit)
    raise InputError(f"unknown algebra kind {kind!r}")


def _enc_algebra(A: AlgebraPresentation) -> dict:
    n = A.n
    return {
        "dimension": n,
        "flag": A.flag,
        "products": [[[codec.enc_exact(c) if c is not None else None for c in A.consts[i][j]] for j in range(n)]
                     for i in range(n)],
        "unit": None if A.unit is None else [codec.enc_exact(c) if c is not None else None for c in A.unit],
        "unreconstructed": [list(ix) for ix in A.unreconstructed()],
    }


def cmd_patch_alg(job: Job) -> dict:
    F = job.field
    d = job.data
    if d is None:
        x = ExactXT.from_coeff(RatFunc.x(F))
        t = ExactXT.t(F)
        g = XMatrix(F, [[1, t / x + x * t], [0, 1]])
        p = make_problem("two-patch", [inner_automorphism(g)], job.prec(), field_=F)
        algs = [matrix_algebra(F), matrix_algebra(F)]
    else:
        p = _problem(job, d.get("shape"))
        descs = d.get("algebras")
        if not isinstance(descs, list):
            raise InputError("'algebras' must be an array with one entry per patch")
        algs = [_algebra(F, s) for s in descs]
    A = patch_algebra(p, algs, job.bounds)
    return {"N_eff": A.N_eff, "checks": [codec.enc_check(c) for c in A.checks], "result": _enc_algebra(A)}


def cmd_patch_diff(job: Job) -> dict:
    F = job.field
    d = job.data
    if d is None:
        p, Ds, _ = random_compatible_problem(random.Random(job.seed), 2, job.prec(), F)
    else:
        p = _problem(job, d.get("shape"))
        cs = d.get("connections")
        if not isinstance(cs, list):
            raise InputError("'connections' must be an array with one matrix per patch")
        Ds = [codec.dec_matrix(F, c, p.model) for c in cs]
    M = patch_diffmod(p, Ds, job.bounds, random.Random(job.seed))
    D = [[codec.enc_exact(e) if e is not None else None for e in r] for r in M.exact]
    return {"N_eff": M.N_eff, "checks": [codec.enc_check(c) for c in M.checks],
            "result": {"flag": M.flag, "D": D, "D_series": codec.enc_lmatrix(M.D)}}


def cmd_rrbasis(job: Job) -> dict:
    F = job.field
    d = job.data or {}
    if "divisor" in d:
        terms = []
        for item in d["divisor"]:
            if not (isinstance(item, list) and len(item) == 2 and isinstance(item[1], int)):
                raise InputError("divisor entries are [place, multiplicity] pairs")
            place, m = item
            pl = parse_place(F, place) if isinstance(place, str) else codec.dec_poly(F, place)
            terms.append((pl, m))
        D = Divisor.make(F, terms)
    else:
        D = generate.effective_divisor(random.Random(job.seed), 6, F)
    basis = rr_basis(D)
    terms = [["inf" if p is INF else codec.enc_poly(p), m] for p, m in D.terms]
    return {"checks": rr_certificate(D, basis),
            "result": {"divisor": terms, "degree": D.degree(), "dimension": len(basis),
                       "basis": [codec.enc_ratfunc(f) for f in basis]}}


def cmd_reconstruct(job: Job) -> dict:
    F = job.field
    d = job.data or {}
    if "elem" not in d:
        raise InputError("reconstruct needs an input file with 'elem'")
    e = d["elem"]
    if isinstance(e, dict) and "shift" in e and "ring" not in e:
        cs = [codec.dec_ratfunc(F, c) for c in e["coeffs"]]
        if not cs:
            raise InputError("'coeffs' must be nonempty")
        src = (int(e["shift"]), cs)
        n = len(cs)
    else:
        src = codec.dec_telem(F, e, RingId.generic(F))
        n = src.prec
    dn, dd = job.bounds if job.bounds is not None else default_bounds(n)
    try:
        out = reconstruct_field_elem(src, dn, dd)
    except ReconstructionFailed as exc:
        return {"checks": [{"name": f"reconstruction within bounds ({dn}, {dd})", "modulus": n,
                            "residual_is_zero": False}],
                "result": {"flag": "Unreconstructed", "reason": str(exc)}}
    return {"checks": [{"name": "P - Q * series = 0 (cross-multiplied)", "modulus": n, "residual_is_zero": True}],
            "result": {"flag": "exact", "elem": codec.enc_exact(out), "text": str(out)}}


def cmd_demo(job: Job) -> dict:
    F = job.field
    which = job.target
    if which == "quaternion":
        r = quaternion_split_demo(job.prec(16), F)
        return {"N_eff": r.N, "checks": r.checks,
                "result": {"f": [codec.enc_poly(p) for p in r.f], "idempotent_rank": r.idempotent_rank,
                           "idempotent": codec.enc_lmatrix(r.idempotent)}}
    if which == "klein4":
        r = klein4_demo(job.prec(), F)
        return {"N_eff": r.N, "checks": r.checks,
                "result": {"dimension": r.dimension, "invariant_dimension": r.invariant_dimension,
                           "relations": [codec.enc_exact(b.relation) for b in r.blocks],
                           "algebra": _enc_algebra(r.patched.galois.algebra),
                           "field_claim": "not claimed (surrogates only: action, invariants)"}}
    if which == "diffmod":
        F.require_odd("the demos")
        r = diffmod_demo(10, job.prec(), job.seed, F)
        return {"N_eff": min(m.N_eff for m in r.instances), "checks": r.checks,
                "result": {"instances": len(r.instances), "flags": [m.flag for m in r.instances]}}
    raise InputError("demo needs one of: quaternion, klein4, diffmod")


def cmd_selftest(job: Job) -> dict:
    """Seeded battery over every module; stops at the first violated identity."""
    checks = run_selftest(job.field, job.seed, job.prec())
    return {"checks": checks, "result": {"cases": len(checks)}}


HANDLERS = {
    "split": cmd_split,
    "factor": cmd_factor,
    "wprep": cmd_wprep,
    "unitfact": cmd_unitfact,
    "solve": cmd_solve,
    "patch-alg": cmd_patch_alg,
    "patch-diff": cmd_patch_diff,
    "rrbasis": cmd_rrbasis,
    "reconstruct": cmd_reconstruct,
    "demo": cmd_demo,
    "selftest": cmd_selftest,
}


# --- driver ---------------------------------------------------------------------------------
def run(job: Job) -> tuple[int, dict]:
    report = {
        "version": codec.VERSION,
        "command": job.command if job.target is None else f"{job.command} {job.target}",
        "char": job.char,
        "prec_t": job.N,
        "prec_x": job.M,
        "seed": job.seed,
    }
    try:
        out = HANDLERS[job.command](job)
    except CheckFailure as exc:
        report.update(status="failed", first_failure=str(exc), checks=[])
        return 1, report
    except AssertionError as exc:
        report.update(status="failed", first_failure=str(exc), checks=[])
        return 1, report
    except (InputError, Malformed, KeyError, TypeError, ValueError, IndexError) as exc:
        report.update(status="malformed", error=f"{type(exc).__name__}: {exc}")
        return 2, report
    except FieldPatchError as exc:
        report.update(status="rejected", error=f"{type(exc).__name__}: {exc}")
        return 2, report
    checks = [codec.enc_check(c) for c in out.pop("checks", [])]
    failed = next((c for c in checks if not c["residual_is_zero"]), None)
    report.update(out)
    report["checks"] = checks
    report["status"] = "ok" if failed is None else "failed"
    report["first_failure"] = None if failed is None else failed["name"]
    return (0 if failed is None else 1), report


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        job = Job(args)
    except (InputError, Malformed) as exc:
        print(f"fieldpatch: {exc}", file=sys.stderr)
        return 2
    code, report = run(job)
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if job.output:
        with open(job.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if code == 2:
        print(f"fieldpatch: {report.get('error')}", file=sys.stderr)
    elif code == 1:
        print(f"fieldpatch: check failed: {report.get('first_failure')}", file=sys.stderr)
    return code

