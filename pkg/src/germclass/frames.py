"""Constructors for the hierarchy of adapted vector-field pairs.

Every recognition criterion is a determinant of derivative words taken
with respect to a pair (xi, eta) that kills specific words at the origin:

  sb2:  xi eta f = eta xi f = 0
  s3:   additionally xi^2 eta f = xi eta xi f = eta xi^2 f = 0
  b3:   additionally eta^3 f = 0
  h2:   eta^2 f = 0
  h4:   additionally eta^4 f = 0

All constructors assume the germ has been put through `linear_normalize`
first, so that f_v(0) = 0 and f_u(0) != 0 and the pair can be built as an
explicit perturbation of (d/du, d/dv).  The coefficient formulas below are
exact: each constructor solves a small linear system for the defect of f
at the origin and writes the correction directly into the field
coefficients.  The solved parameters are returned alongside the pair so a
classification certificate can expose them.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PreconditionError
from .jets import Jet2, MapJet, PolyMap2, compose_map, cross3, det3
from .scalars import ZeroCtx
from .vfields import (B3, FramePair, H2, H4, S3, SB2, VectorFieldJet,
                      apply, apply_word, d_du)


@dataclass(frozen=True)
class FrameBuild:
    pair: FramePair
    params: dict


def rank_df0(f: MapJet, ctx: ZeroCtx | None = None) -> int:
    ctx = ctx or f.zero_ctx()
    fu0 = f.partial_u().at0()
    fv0 = f.partial_v().at0()
    if not ctx.is_zero_vec(cross3(fu0, fv0)):
        return 2
    if ctx.is_zero_vec(fu0) and ctx.is_zero_vec(fv0):
        return 0
    return 1


def linear_normalize(f: MapJet):
    """Precompose with a linear map L so that f_v(0) = 0, f_u(0) != 0.

    Returns (f o L, L).  Requires rank df0 = 1; rank 0 and rank 2 germs are
    rejected (they are classified before any frame is built).
    """
    ctx = f.zero_ctx()
    rank = rank_df0(f, ctx)
    if rank != 1:
        raise PreconditionError("linear_normalize needs rank df0 = 1, got %d" % rank)
    fu0 = f.partial_u().at0()
    fv0 = f.partial_v().at0()
    one = 1 if ctx.exact else 1.0
    if ctx.is_zero_vec(fv0):
        L = PolyMap2.identity(f.order, f.eps)
    elif ctx.is_zero_vec(fu0):
        L = PolyMap2.swap(f.order, f.eps)
    else:
        # f_v(0) = t f_u(0); kernel direction (t, -1).
        if ctx.exact:
            k = next(i for i in range(3) if fu0[i] != 0)
        else:
            k = max(range(3), key=lambda i: abs(fu0[i]))
        t = fv0[k] / fu0[k]
        for i in range(3):
            if not ctx.is_zero(fv0[i] - t * fu0[i]):
                raise PreconditionError("df0 columns not parallel despite rank 1")
        L = PolyMap2.linear(((one, t), (0, -one)), f.order, f.eps)
    return compose_map(f, L), L


def solve_span2(target, w1, w2, ctx: ZeroCtx):
    """Solve target = alpha*w1 + beta*w2 in R^3, verifying consistency.

    Picks the 2x2 row subsystem with nonzero determinant (largest pivot in
    float mode) and checks the remaining row.
    """
    rows = [(0, 1), (0, 2), (1, 2)]
    best = None
    best_det = None
    for r, s in rows:
        d = w1[r] * w2[s] - w1[s] * w2[r]
        if ctx.is_zero(d):
            continue
        if ctx.exact:
            best, best_det = (r, s), d
            break
        if best is None or abs(d) > abs(best_det):
            best, best_det = (r, s), d
    if best is None:
        raise PreconditionError("span vectors are linearly dependent")
    r, s = best
    alpha = (target[r] * w2[s] - target[s] * w2[r]) / best_det
    beta = (w1[r] * target[s] - w1[s] * target[r]) / best_det
    for i in range(3):
        if not ctx.is_zero(target[i] - alpha * w1[i] - beta * w2[i]):
            raise PreconditionError("vector does not lie in the required span")
    return alpha, beta


def solve_parallel(target, w, ctx: ZeroCtx):
    """Solve target = alpha*w, verifying the remaining components."""
    if ctx.exact:
        k = next((i for i in range(3) if w[i] != 0), None)
    else:
        k = max(range(3), key=lambda i: abs(w[i]))
        if ctx.is_zero(w[k]):
            k = None
    if k is None:
        raise PreconditionError("cannot solve along the zero vector")
    alpha = target[k] / w[k]
    for i in range(3):
        if not ctx.is_zero(target[i] - alpha * w[i]):
            raise PreconditionError("vector is not parallel to the required direction")
    return alpha


def solve_basis3(target, w1, w2, w3, ctx: ZeroCtx):
    """Solve target = a*w1 + b*w2 + c*w3 by Cramer's rule (basis required)."""
    d = det3((w1, w2, w3))
    if ctx.is_zero(d):
        raise PreconditionError("the three vectors do not form a basis")
    a = det3((target, w2, w3)) / d
    b = det3((w1, target, w3)) / d
    c = det3((w1, w2, target)) / d
    return a, b, c


def _sb_defect(f: MapJet, ctx: ZeroCtx):
    """alpha, beta with f_uv(0) = alpha f_u(0) + beta f_vv(0), after SB guards."""
    fu0 = f.partial_u().at0()
    fvv0 = f.partial_v().partial_v().at0()
    fuv0 = f.partial_u().partial_v().at0()
    if ctx.is_zero_vec(cross3(fu0, fvv0)):
        raise PreconditionError("germ is not SB-type: f_u(0) x f_vv(0) = 0")
    if not ctx.is_zero(det3((fu0, fvv0, fuv0))):
        raise PreconditionError("germ is a Whitney umbrella, no SB-2 pair exists")
    return solve_span2(fuv0, fu0, fvv0, ctx)


def sb2_adapt(f: MapJet) -> FrameBuild:
    """SB-2 pair: xi = (1 - alpha v) du - beta dv, eta = -alpha u du + dv."""
    ctx = f.zero_ctx()
    alpha, beta = _sb_defect(f, ctx)
    n, eps = f.order, f.eps
    xi = VectorFieldJet(Jet2(n, {(0, 0): 1, (0, 1): -alpha}, eps),
                        Jet2.const(-beta, n, eps), SB2)
    eta = VectorFieldJet(Jet2(n, {(1, 0): -alpha}, eps), Jet2.const(1, n, eps), SB2)
    return FrameBuild(FramePair(xi, eta, SB2), {"alpha": alpha, "beta": beta})


def _solve_affine(columns, rhs, ctx: ZeroCtx):
    """Solve sum_j x_j columns[j] = rhs exactly (consistent overdetermined system)."""
    m = len(rhs)
    n = len(columns)
    rows = [[columns[j][i] for j in range(n)] + [rhs[i]] for i in range(m)]
    zero = rhs[0] * 0
    x = [zero] * n
    row = 0
    pivots = []
    for col in range(n):
        if ctx.exact:
            pivot_row = next((k for k in range(row, m) if rows[k][col] != 0), None)
        else:
            pivot_row = max(range(row, m), key=lambda k: abs(rows[k][col]), default=None)
            if pivot_row is not None and ctx.is_zero(rows[pivot_row][col]):
                pivot_row = None
        if pivot_row is None:
            continue
        rows[row], rows[pivot_row] = rows[pivot_row], rows[row]
        pivot = rows[row][col]
        rows[row] = [value / pivot for value in rows[row]]
        for k in range(m):
            if k != row:
                factor = rows[k][col]
                if factor:
                    rows[k] = [a - factor * b for a, b in zip(rows[k], rows[row])]
        pivots.append(col)
        row += 1
        if row == m:
            break
    for k in range(row, m):
        if not ctx.is_zero(rows[k][n]):
            raise PreconditionError("correction system is inconsistent")
    for idx, col in enumerate(pivots):
        x[col] = rows[idx][n]
    return x


def s3_adapt(f: MapJet) -> FrameBuild:
    """S-3 pair, built from scratch over the normalized coordinates.

    Stage one solves the SB-2 defect (alpha, beta).  Stage two writes
    corrections into three fixed coefficient slots -- a uv term in xi's
    du-coefficient, a u term in its dv-coefficient, a u^2 term in eta's
    du-coefficient -- and solves the three correction coefficients exactly
    against the level-3 vanishing conditions.  (Closed forms for these
    corrections exist but are fragile: the classical expressions break
    when alpha and beta are both nonzero, so the solve-and-verify route is
    used instead.)  The conditions are affine in the corrections: each
    correction coefficient surfaces at the origin through exactly one
    coefficient-derivative extraction, which together with at least one
    derivative left for f exhausts the three letters of every word.
    """
    ctx = f.zero_ctx()
    alpha, beta = _sb_defect(f, ctx)
    sb = sb2_adapt(f)
    xi_t, eta_t = sb.pair.xi, sb.pair.eta
    xif0 = apply(xi_t, f).at0()
    etaetaf = apply(eta_t, apply(eta_t, f))
    eta2f0 = etaetaf.at0()
    # S-type guard: eta^2 phi(0) = det(xi f, eta^2 f, eta^3 f)(0) must survive.
    eta3f0 = apply(eta_t, etaetaf).at0()
    if ctx.is_zero(det3((xif0, eta2f0, eta3f0))):
        raise PreconditionError("germ is not S-type: eta^2 phi vanishes at 0")
    xi2eta0 = apply_word([xi_t, xi_t, eta_t], f).at0()
    try:
        alpha1, beta1 = solve_span2(xi2eta0, xif0, eta2f0, ctx)
    except PreconditionError:
        raise PreconditionError("germ is not S-type: xi^2 eta f(0) outside the span")

    n, eps = f.order, f.eps

    def build(p, q, r):
        a1 = Jet2(n, {(0, 0): 1, (0, 1): -alpha, (1, 1): p}, eps)
        b1 = Jet2(n, {(0, 0): -beta, (1, 0): q}, eps)
        c1 = Jet2(n, {(1, 0): -alpha, (2, 0): r}, eps)
        d1 = Jet2.const(1, n, eps)
        return FramePair(VectorFieldJet(a1, b1, S3), VectorFieldJet(c1, d1, S3), S3)

    def level3_defect(pair):
        xi, eta = pair.xi, pair.eta
        out = []
        for word in ([xi, xi, eta], [xi, eta, xi], [eta, xi, xi]):
            out.extend(apply_word(word, f).at0())
        return out

    zero = alpha * 0
    one = zero + 1
    base = level3_defect(build(zero, zero, zero))
    columns = []
    for unit in ((one, zero, zero), (zero, one, zero), (zero, zero, one)):
        shifted = level3_defect(build(*unit))
        columns.append([s - b for s, b in zip(shifted, base)])
    p, q, r = _solve_affine(columns, [-b for b in base], ctx)
    pair = build(p, q, r)
    if not all(ctx.is_zero(value) for value in level3_defect(pair)):
        raise PreconditionError("S-3 correction failed verification")
    return FrameBuild(pair, {"alpha": alpha, "beta": beta,
                             "alpha1": alpha1, "beta1": beta1,
                             "corr_xi_uv": p, "corr_xi_u": q, "corr_eta_uu": r})


def b3_adapt(f: MapJet) -> FrameBuild:
    """B-3 pair: the SB-2 pair corrected so that eta^3 f(0) = 0."""
    ctx = f.zero_ctx()
    alpha, beta = _sb_defect(f, ctx)
    sb = sb2_adapt(f)
    xi_t, eta_t = sb.pair.xi, sb.pair.eta
    xif0 = apply(xi_t, f).at0()
    etaetaf = apply(eta_t, apply(eta_t, f))
    eta2f0 = etaetaf.at0()
    # B-type guard: xi^2 phi(0), equivalently det(xi f, xi^2 eta f, eta^2 f)(0).
    xi2eta0 = apply_word([xi_t, xi_t, eta_t], f).at0()
    if ctx.is_zero(det3((xif0, xi2eta0, eta2f0))):
        raise PreconditionError("germ is not B-type: xi^2 phi vanishes at 0")
    eta3f0 = apply(eta_t, etaetaf).at0()
    try:
        alpha1, beta1 = solve_span2(eta3f0, xif0, eta2f0, ctx)
    except PreconditionError:
        raise PreconditionError("germ is not B-type: eta^3 f(0) outside the span")
    n, eps = f.order, f.eps
    a1 = Jet2(n, {(0, 0): 1, (0, 1): -alpha}, eps)
    b1 = Jet2.const(-beta, n, eps)
    c1 = Jet2(n, {(1, 0): -alpha, (0, 2): -alpha1 / 2}, eps)
    d1 = Jet2(n, {(0, 0): 1, (0, 1): -beta1 / 3}, eps)
    pair = FramePair(VectorFieldJet(a1, b1, B3), VectorFieldJet(c1, d1, B3), B3)
    return FrameBuild(pair, {"alpha": alpha, "beta": beta,
                             "alpha1": alpha1, "beta1": beta1})


def h2_adapt(f: MapJet) -> FrameBuild:
    """H-2 pair: xi = du, eta = -alpha v du + dv, where f_vv(0) = alpha f_u(0)."""
    ctx = f.zero_ctx()
    fu0 = f.partial_u().at0()
    fvv0 = f.partial_v().partial_v().at0()
    fuv0 = f.partial_u().partial_v().at0()
    if not ctx.is_zero_vec(cross3(fu0, fvv0)):
        raise PreconditionError("germ is not HP-type: f_u(0) x f_vv(0) != 0")
    if ctx.is_zero_vec(cross3(fu0, fuv0)):
        raise PreconditionError("germ is not HP-type: f_u(0) x f_uv(0) = 0")
    alpha = solve_parallel(fvv0, fu0, ctx)
    n, eps = f.order, f.eps
    xi = d_du(n, eps)
    eta = VectorFieldJet(Jet2(n, {(0, 1): -alpha}, eps), Jet2.const(1, n, eps), H2)
    pair = FramePair(VectorFieldJet(xi.a, xi.b, H2), eta, H2)
    return FrameBuild(pair, {"alpha": alpha})


def h4_adapt(f: MapJet) -> FrameBuild:
    """H-4 pair: the H-2 eta corrected (a cubic in v) so eta^4 f(0) = 0 too.

    Needs f of H-type so that {xi f, xi eta f, eta^3 f}(0) is a basis.  The
    corrections live in three fixed slots (v^2 and v^3 terms of eta's
    du-coefficient, a v term of its dv-coefficient) and are solved exactly,
    in the triangular order the basis expansion dictates: the dv-slot from
    the eta^3 f component of eta^4 f(0), then the v^2 slot from the
    xi eta f component, then the v^3 slot from the xi f component.  Each
    step is affine in its unknown; cross terms only feed components that a
    later step still controls, and the result is verified outright.
    """
    ctx = f.zero_ctx()
    h2 = h2_adapt(f)
    alpha = h2.params["alpha"]
    xi_t, eta_t = h2.pair.xi, h2.pair.eta
    xif0 = apply(xi_t, f).at0()
    etaf = apply(eta_t, f)
    xietaf0 = apply(xi_t, etaf).at0()
    eta2f = apply(eta_t, etaf)
    eta3f = apply(eta_t, eta2f)
    eta3f0 = eta3f.at0()
    if ctx.is_zero(det3((xif0, xietaf0, eta3f0))):
        raise PreconditionError("germ is not H-type: det(xi f, xi eta f, eta^3 f)(0) = 0")
    eta4f0 = apply(eta_t, eta3f).at0()
    alpha1, beta1, delta1 = solve_basis3(eta4f0, xif0, xietaf0, eta3f0, ctx)

    n, eps = f.order, f.eps
    xi = VectorFieldJet(Jet2.const(1, n, eps), Jet2.zero(n, eps), H4)

    def build(s, t, w):
        c1 = Jet2(n, {(0, 1): -alpha, (0, 2): s, (0, 3): t}, eps)
        d1 = Jet2(n, {(0, 0): 1, (0, 1): w}, eps)
        return VectorFieldJet(c1, d1, H4)

    def components(s, t, w):
        eta = build(s, t, w)
        e4 = apply_word([eta] * 4, f).at0()
        return solve_basis3(e4, xif0, xietaf0, eta3f0, ctx)

    zero = alpha * 0
    one = zero + 1
    s = t = w = zero
    for _ in range(3):
        # dv-slot against the eta^3 f component
        c0 = components(s, t, w)[2]
        slope = components(s, t, w + one)[2] - c0
        if not ctx.is_zero(slope):
            w = w - c0 / slope
        # v^2 slot against the xi eta f component
        c0 = components(s, t, w)[1]
        slope = components(s + one, t, w)[1] - c0
        if not ctx.is_zero(slope):
            s = s - c0 / slope
        # v^3 slot against the xi f component
        c0 = components(s, t, w)[0]
        slope = components(s, t + one, w)[0] - c0
        if not ctx.is_zero(slope):
            t = t - c0 / slope
        if all(ctx.is_zero(c) for c in components(s, t, w)):
            break
    else:
        raise PreconditionError("H-4 correction failed to converge")
    eta = build(s, t, w)
    if not all(ctx.is_zero(c) for c in apply_word([eta, eta], f).at0()):
        raise PreconditionError("H-4 correction broke the H-2 level")
    return FrameBuild(FramePair(xi, eta, H4),
                      {"alpha": alpha, "alpha1": alpha1, "beta1": beta1,
                       "delta1": delta1, "corr_eta_vv": s, "corr_eta_vvv": t,
                       "corr_d_v": w})
