# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled counterpart of ``fraclab._kernels_py.weighted_terms``.

The integrand is a closed-form term sum, so the whole adaptive loop runs
without calling back into Python.
"""

import math

from libc.math cimport pow, exp, fabs, isfinite, fmin
from libc.stdlib cimport malloc, realloc, free

from fraclab.errors import ConvergenceError, DomainError

cdef double EPS = 2.220446049250313e-16
cdef double ROUNDOFF_FACTOR = 50.0

cdef double[15] NODES = [
    -0.991455371120812639206854697526329, -0.949107912342758524526189684047851,
    -0.864864423359769072789712788640926, -0.741531185599394439863864773280788,
    -0.586087235467691130294144845693013, -0.405845151377397166906606412076961,
    -0.207784955007898467600689403773245, 0.0,
    0.207784955007898467600689403773245, 0.405845151377397166906606412076961,
    0.586087235467691130294144845693013, 0.741531185599394439863864773280788,
    0.864864423359769072789712788640926, 0.949107912342758524526189684047851,
    0.991455371120812639206854697526329]
cdef double[15] KW = [
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
    0.204432940075298892414161999234649, 0.190350578064785409913256402421014,
    0.169004726639267902826583426598550, 0.140653259715525918745189590510238,
    0.104790010322250183839876322541518, 0.063092092629978553290700663189204,
    0.022935322010529224963732008058970]
cdef double[15] GW = [
    0.0, 0.129484966168869693270611432679082, 0.0, 0.279705391489276667901467771423780,
    0.0, 0.381830050505118944950369775488975, 0.0, 0.417959183673469387755102040816327,
    0.0, 0.381830050505118944950369775488975, 0.0, 0.279705391489276667901467771423780,
    0.0, 0.129484966168869693270611432679082, 0.0]


cdef struct Ctx:
    int nterms
    double *c
    double *r
    double *lam
    double inv_s
    double span
    double end
    double sign


cdef inline double _integrand(Ctx *ctx, double u, double *t_out) nogil:
    cdef double d = fmin(pow(u, ctx.inv_s), ctx.span)
    cdef double t = ctx.end + ctx.sign * d
    cdef double acc = 0.0, term
    cdef int k
    for k in range(ctx.nterms):
        term = ctx.c[k]
        if ctx.r[k] != 0.0:
            term *= pow(t, ctx.r[k])
        if ctx.lam[k] != 0.0:
            term *= exp(ctx.lam[k] * t)
        acc += term
    t_out[0] = t
    return ctx.inv_s * acc


cdef int _panel(Ctx *ctx, double a, double b, double *val, double *err,
                double *resabs, double *bad_t) nogil:
    cdef double half = 0.5 * (b - a), center = 0.5 * (a + b)
    cdef double kron = 0.0, gauss = 0.0, ra = 0.0, fv, t
    cdef int j
    for j in range(15):
        fv = _integrand(ctx, center + half * NODES[j], &t)
        if not isfinite(fv):
            bad_t[0] = t
            return 1
        kron += KW[j] * fv
        gauss += GW[j] * fv
        ra += KW[j] * fabs(fv)
    val[0] = half * kron
    resabs[0] = half * ra
    err[0] = fabs(half * kron - half * gauss)
    if err[0] < ROUNDOFF_FACTOR * EPS * resabs[0]:
        err[0] = ROUNDOFF_FACTOR * EPS * resabs[0]
    return 0


def weighted_terms(coefs, powers, rates, double lo, double hi, double s, bint upper,
                   double tol, int max_depth=60, int max_panels=4000):
    """Same contract as the pure-Python ``weighted_terms``."""
    cdef int n = len(coefs)
    if hi <= lo or n == 0:
        return 0.0, 0.0, 1
    cdef Ctx ctx
    ctx.nterms = n
    ctx.c = <double *> malloc(n * sizeof(double))
    ctx.r = <double *> malloc(n * sizeof(double))
    ctx.lam = <double *> malloc(n * sizeof(double))
    cdef int k
    for k in range(n):
        ctx.c[k] = coefs[k]
        ctx.r[k] = powers[k]
        ctx.lam[k] = rates[k]
    ctx.inv_s = 1.0 / s
    ctx.span = hi - lo
    ctx.end = hi if upper else lo
    ctx.sign = -1.0 if upper else 1.0

    cdef int cap = 64, count = 1, i, status = 0
    cdef double *left = <double *> malloc(cap * sizeof(double))
    cdef double *right = <double *> malloc(cap * sizeof(double))
    cdef double *vals = <double *> malloc(cap * sizeof(double))
    cdef double *errs = <double *> malloc(cap * sizeof(double))
    cdef double *absv = <double *> malloc(cap * sizeof(double))
    cdef int *depth = <int *> malloc(cap * sizeof(int))
    cdef double bad_t = 0.0, total_err, total_abs, target, best, a, b, mid
    cdef double v1, e1, r1, v2, e2, r2
    cdef long nodes = 15
    try:
        left[0] = 0.0
        right[0] = pow(ctx.span, s)
        depth[0] = 0
        if _panel(&ctx, left[0], right[0], &vals[0], &errs[0], &absv[0], &bad_t):
            raise DomainError(f"integrand is not finite at t={bad_t!r}", bad_t)
        while True:
            total_err = 0.0
            total_abs = 0.0
            i = 0
            best = -1.0
            for k in range(count):
                total_err += errs[k]
                total_abs += absv[k]
                if errs[k] > best:
                    best = errs[k]
                    i = k
            target = tol if tol > 1e2 * EPS * total_abs else 1e2 * EPS * total_abs
            if total_err <= target:
                break
            if depth[i] >= max_depth:
                raise ConvergenceError(
                    f"panel [{left[i]!r}, {right[i]!r}] reached depth {max_depth} "
                    f"with error estimate {total_err:.3e} > {target:.3e}")
            if count >= max_panels:
                raise ConvergenceError(
                    f"exceeded {max_panels} panels with error estimate {total_err:.3e} > {target:.3e}")
            a = left[i]
            b = right[i]
            mid = 0.5 * (a + b)
            if _panel(&ctx, a, mid, &v1, &e1, &r1, &bad_t) or _panel(&ctx, mid, b, &v2, &e2, &r2, &bad_t):
                raise DomainError(f"integrand is not finite at t={bad_t!r}", bad_t)
            nodes += 30
            if count + 1 > cap:
                cap *= 2
                left = <double *> realloc(left, cap * sizeof(double))
                right = <double *> realloc(right, cap * sizeof(double))
                vals = <double *> realloc(vals, cap * sizeof(double))
                errs = <double *> realloc(errs, cap * sizeof(double))
                absv = <double *> realloc(absv, cap * sizeof(double))
                depth = <int *> realloc(depth, cap * sizeof(int))
            depth[i] += 1
            right[i] = mid
            vals[i] = v1
            errs[i] = e1
            absv[i] = r1
            left[count] = mid
            right[count] = b
            vals[count] = v2
            errs[count] = e2
            absv[count] = r2
            depth[count] = depth[i]
            count += 1
        pairs = []
        err_list = []
        for k in range(count):
            pairs.append((left[k], vals[k]))
            err_list.append(errs[k])
        pairs.sort()
        value = math.fsum([v for _, v in pairs])
        err_total = math.fsum(err_list)
        return value, err_total, nodes
    finally:
        free(ctx.c)
        free(ctx.r)
        free(ctx.lam)
        free(left)
        free(right)
        free(vals)
        free(errs)
        free(absv)
        free(depth)
