"""JSON encoding of field elements, series and matrices (format version 1).

  scalar        "p/q" (char 0) or a residue string; JSON integers are accepted
  Poly          ascending coefficient array
  RatFunc       {"num": Poly, "den": Poly}; a bare array is a polynomial
  x-series      {"low": v, "coeffs": [...], "prec": M or null}  (local rings)
  TElem         {"ring": ring, "prec": N, "coeffs": [coefficient, ...]}
  ring          {"model": "global", "excluded" | "included": [place, ...]}
                or {"model": "local", "ring": "R0" | "R1" | "R2"}
  place         "inf", a place token ("0", "1/2", "poly:c0:c1:..."), or an
                ascending coefficient array of the monic place polynomial
  TMatrix       {"ring": ring, "prec": N, "rows": [[coefficient list, ...], ...]}
  LMatrix       a TMatrix object with an extra "shift"
  ExactXT       {"t_num": [RatFunc, ...], "t_den": [RatFunc, ...]}
  XMatrix       {"exact": [[ExactXT, ...], ...]}
  FMatrix       {"factors": [{"exp": +-1, "matrix": TMatrix | XMatrix}, ...], "n": n}
"""

from __future__ import annotations

from ..errors import InputError
from ..exactalg import INF, Field, Poly, RatFunc, TruncLaurent
from ..exactalg.ratfunc import RatFuncField
from ..exactalg.upoly import UPoly
from ..trings import ExactXT, Factor, FMatrix, LMatrix, RingId, TElem, TMatrix, XMatrix, parse_place, ring_make

VERSION = 1


# --- scalars and polynomials --------------------------------------------------------------
def enc_scalar(F: Field, c) -> str:
    return F.to_str(c)


def dec_scalar(F: Field, v):
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise InputError(f"bad scalar {v!r}")
    try:
        return F(v)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad scalar {v!r}") from exc


def enc_poly(p: Poly) -> list:
    return [enc_scalar(p.field, c) for c in p.coeffs()]


def dec_poly(F: Field, v) -> Poly:
    if not isinstance(v, list):
        raise InputError(f"polynomial must be a coefficient array, got {v!r}")
    return Poly(F, [dec_scalar(F, c) for c in v])


def enc_ratfunc(r: RatFunc) -> dict:
    return {"num": enc_poly(r.num), "den": enc_poly(r.den)}


def dec_ratfunc(F: Field, v) -> RatFunc:
    if isinstance(v, list):
        return RatFunc(dec_poly(F, v))
    if isinstance(v, (int, str)) and not isinstance(v, bool):
        return RatFunc.const(F, dec_scalar(F, v))
    if isinstance(v, dict) and "num" in v:
        den = dec_poly(F, v.get("den", [1]))
        if den.is_zero():
            raise InputError("zero denominator")
        return RatFunc(dec_poly(F, v["num"]), den)
    raise InputError(f"bad rational function {v!r}")


def enc_laurent(s: TruncLaurent) -> dict:
    return {"low": s.val, "coeffs": enc_poly(s.body), "prec": s.prec}


def dec_laurent(F: Field, v) -> TruncLaurent:
    if isinstance(v, dict) and "low" in v:
        low, prec = v["low"], v.get("prec")
        if not isinstance(low, int) or (prec is not None and not isinstance(prec, int)):
            raise InputError(f"bad x-series {v!r}")
        return TruncLaurent(F, low, [dec_scalar(F, c) for c in v.get("coeffs", [])], prec)
    r = dec_ratfunc(F, v)
    if r.den.degree() != r.den.valuation():
        raise InputError("local coefficients must be x-series or Laurent polynomials")
    return TruncLaurent.make(F, -r.den.degree(), r.num, None)


def enc_coeff(c):
    if isinstance(c, TruncLaurent):
        return enc_laurent(c)
    return enc_ratfunc(c)


def dec_coeff(ring: RingId, v):
    F = ring.field
    c = dec_laurent(F, v) if ring.laurent else dec_ratfunc(F, v)
    ring.require_coeff(c)
    return c


# --- rings, places, patches ---------------------------------------------------------------------
def enc_ring(r: RingId) -> dict:
    return r.descriptor()


def dec_ring(F: Field, v) -> RingId:
    if isinstance(v, dict) and v.get("model") == "global":
        key = "excluded" if "excluded" in v else "included"
        places = v.get(key)
        if not isinstance(places, list):
            raise InputError("global ring descriptor needs a place list")
        v = {"model": "global", key: [_place_array(F, p) for p in places]}
    return ring_make(v, F)


def _place_array(F: Field, p):
    if isinstance(p, str):
        q = parse_place(F, p)
        return "inf" if q is INF else enc_poly(q)
    return p


# --- series and matrices ------------------------------------------------------------------------
def enc_telem(e: TElem) -> dict:
    return {"ring": enc_ring(e.ring), "prec": e.prec, "coeffs": [enc_coeff(c) for c in e.coeffs]}


def dec_telem(F: Field, v, default_ring: RingId | None = None) -> TElem:
    if not isinstance(v, dict) or "coeffs" not in v:
        raise InputError("series element needs 'coeffs'")
    ring = dec_ring(F, v["ring"]) if "ring" in v else default_ring
    if ring is None:
        raise InputError("series element needs a 'ring'")
    cs = v["coeffs"]
    if not isinstance(cs, list) or not cs:
        raise InputError("'coeffs' must be a nonempty array")
    N = v.get("prec", len(cs))
    if not isinstance(N, int) or N < 1:
        raise InputError("'prec' must be a positive integer")
    cs = [dec_coeff(ring, c) for c in cs[:N]]
    z = ring.coerce(0)
    return TElem(ring, cs + [z] * (N - len(cs)))


def enc_tmatrix(A: TMatrix) -> dict:
    return {
        "ring": enc_ring(A.ring),
        "prec": A.prec,
        "rows": [[[enc_coeff(c) for c in A.entry(i, j).coeffs] for j in range(A.cols)] for i in range(A.rows)],
    }


def dec_tmatrix(F: Field, v, default_ring: RingId | None = None) -> TMatrix:
    if not isinstance(v, dict) or "rows" not in v:
        raise InputError("matrix needs 'rows'")
    ring = dec_ring(F, v["ring"]) if "ring" in v else default_ring
    if ring is None:
        raise InputError("matrix needs a 'ring'")
    rows = v["rows"]
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) and r for r in rows):
        raise InputError("'rows' must be a nonempty array of nonempty arrays")
    if len({len(r) for r in rows}) != 1:
        raise InputError("ragged matrix rows")
    lists = []
    for r in rows:
        out = []
        for e in r:
            if not isinstance(e, list):
                raise InputError("matrix entries are coefficient arrays")
            out.append([dec_coeff(ring, c) for c in e])
        lists.append(out)
    N = v.get("prec", max(len(e) for r in lists for e in r))
    if not isinstance(N, int) or N < 1:
        raise InputError("'prec' must be a positive integer")
    z = ring.coerce(0)
    lists = [[(e + [z] * N)[:N] for e in r] for r in lists]
    return TMatrix.from_entries(ring, lists, N)


def enc_lmatrix(L: LMatrix) -> dict:
    d = enc_tmatrix(L.M)
    d["shift"] = L.shift
    return d


def enc_exact(e: ExactXT) -> dict:
    return {"t_num": [enc_ratfunc(c) for c in e.num.c], "t_den": [enc_ratfunc(c) for c in e.den.c]}


def dec_exact(F: Field, v) -> ExactXT:
    if isinstance(v, dict) and "t_num" in v:
        K = RatFuncField(F)
        num = UPoly(K, [dec_ratfunc(F, c) for c in v["t_num"]])
        den = UPoly(K, [dec_ratfunc(F, c) for c in v.get("t_den", [1])])
        if den.is_zero():
            raise InputError("zero denominator")
        return ExactXT(num, den)
    return ExactXT.from_coeff(dec_ratfunc(F, v))


def enc_xmatrix(X: XMatrix) -> dict:
    return {"exact": [[enc_exact(e) for e in r] for r in X.rows]}


def dec_xmatrix(F: Field, v) -> XMatrix:
    rows = v.get("exact") if isinstance(v, dict) else None
    if not isinstance(rows, list) or not rows or len({len(r) if isinstance(r, list) else -1 for r in rows}) != 1:
        raise InputError("exact matrix needs a rectangular 'exact' array")
    return XMatrix(F, [[dec_exact(F, e) for e in r] for r in rows])


def dec_matrix(F: Field, v, default_ring: RingId | None = None):
    """TMatrix, LMatrix (with 'shift') or XMatrix."""
    if isinstance(v, dict) and "exact" in v:
        return dec_xmatrix(F, v)
    A = dec_tmatrix(F, v, default_ring)
    if "shift" in v:
        if not isinstance(v["shift"], int):
            raise InputError("'shift' must be an integer")
        return LMatrix(v["shift"], A if A.ring.is_dvr() else A.embed(A.ring.ambient()))
    return A


def enc_matrix(A) -> dict:
    if isinstance(A, XMatrix):
        return enc_xmatrix(A)
    if isinstance(A, LMatrix):
        return enc_lmatrix(A)
    if isinstance(A, FMatrix):
        return enc_fmatrix(A)
    return enc_tmatrix(A)


def enc_fmatrix(A: FMatrix) -> dict:
    return {"n": A.n, "factors": [{"exp": f.exp, "matrix": enc_matrix(f.payload)} for f in A.factors]}


def dec_fmatrix(F: Field, v) -> FMatrix:
    if not isinstance(v, dict) or "factors" not in v:
        raise InputError("factored matrix needs 'factors'")
    fs = [Factor(dec_matrix(F, f["matrix"]), f.get("exp", 1)) for f in v["factors"]]
    return FMatrix(fs, v.get("n"))


def enc_check(c: dict) -> dict:
    return {"name": c["name"], "modulus": c.get("modulus"), "residual_is_zero": bool(c["residual_is_zero"])}
