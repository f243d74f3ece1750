# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled polynomial kernels; same contract as ``_kernels_py``."""

from libc.math cimport sqrt, hypot, atan2, cos, sin, exp, log, fabs, copysign, pow, M_PI
from libc.stdlib cimport malloc, free

cdef double EPS = 2.220446049250313e-16
cdef double complex OMEGA = -0.5 + 0.8660254037844386j


cdef inline double cabs_(double complex z) nogil:
    return hypot(z.real, z.imag)


cdef inline double complex csqrt_(double complex z) nogil:
    cdef double x = z.real
    cdef double y = z.imag + 0.0
    cdef double r, t
    if x == 0.0 and y == 0.0:
        return 0.0
    r = hypot(x, y)
    if x >= 0.0:
        t = sqrt(0.5 * (r + x))
        return t + 1j * (y / (2.0 * t))
    t = sqrt(0.5 * (r - x))
    return fabs(y) / (2.0 * t) + 1j * copysign(t, y)


cdef inline double complex ccbrt_(double complex z) nogil:
    cdef double r = hypot(z.real, z.imag)
    cdef double th, m
    if r == 0.0:
        return 0.0
    th = atan2(z.imag + 0.0, z.real) / 3.0
    m = exp(log(r) / 3.0)
    return m * cos(th) + 1j * (m * sin(th))


cdef inline double complex horner(double complex* c, int n, double complex z) nogil:
    cdef double complex acc = 0.0
    cdef int k
    for k in range(n + 1):
        acc = acc * z + c[k]
    return acc


cdef double complex polish(double complex* c, int n, double complex z) nogil:
    cdef double best = cabs_(horner(c, n, z))
    cdef double complex p, dp, cand
    cdef double r
    cdef int step, k
    for step in range(2):
        if best == 0.0:
            break
        p = 0.0
        dp = 0.0
        for k in range(n + 1):
            dp = dp * z + p
            p = p * z + c[k]
        if dp == 0.0:
            break
        cand = z - p / dp
        r = cabs_(horner(c, n, cand))
        if r < best:
            z = cand
            best = r
        else:
            break
    return z


cdef void quad_c(double complex a2, double complex a1, double complex a0,
                 double complex* rp, double complex* rm) nogil:
    cdef double complex sq = csqrt_(a1 * a1 - 4.0 * a2 * a0)
    cdef double complex plus = -a1 + sq
    cdef double complex minus = -a1 - sq
    if cabs_(plus) >= cabs_(minus):
        if plus == 0.0:
            rp[0] = 0.0
            rm[0] = 0.0
            return
        rp[0] = plus / (2.0 * a2)
        rm[0] = (2.0 * a0) / plus
    else:
        rm[0] = minus / (2.0 * a2)
        rp[0] = (2.0 * a0) / minus


def quadratic_roots(a2, a1, a0):
    cdef double complex rp, rm
    quad_c(complex(a2), complex(a1), complex(a0), &rp, &rm)
    return rp, rm


def cubic_roots(a3_, a2, a1, a0):
    cdef double complex a3 = complex(a3_)
    cdef double complex c[4]
    cdef double complex b, cc, d, shift, p, q, sq, w1, w2, u, uk
    cdef double complex out[3]
    cdef int k
    b = complex(a2) / a3
    cc = complex(a1) / a3
    d = complex(a0) / a3
    shift = b / 3.0
    p = cc - b * b / 3.0
    q = 2.0 * b * b * b / 27.0 - b * cc / 3.0 + d
    sq = csqrt_(q * q / 4.0 + p * p * p / 27.0)
    w1 = -q / 2.0 + sq
    w2 = -q / 2.0 - sq
    u = ccbrt_(w1 if cabs_(w1) >= cabs_(w2) else w2)
    if u == 0.0:
        for k in range(3):
            out[k] = -shift
    else:
        uk = u
        for k in range(3):
            out[k] = uk - p / (3.0 * uk) - shift
            uk = uk * OMEGA
    c[0] = 1.0
    c[1] = b
    c[2] = cc
    c[3] = d
    return (polish(c, 3, out[0]), polish(c, 3, out[1]), polish(c, 3, out[2]))


cdef void biquad_c(double complex p, double complex r, double complex shift,
                   double complex* out) nogil:
    cdef double complex z1, z2, y1, y2
    quad_c(1.0, p, r, &z1, &z2)
    y1 = csqrt_(z1)
    y2 = csqrt_(z2)
    out[0] = y1 - shift
    out[1] = -y1 - shift
    out[2] = y2 - shift
    out[3] = -y2 - shift


def quartic_roots(a_, b_, c_, d_, e_, double q_tol=1e-10):
    cdef double complex a = complex(a_)
    cdef double complex b = complex(b_)
    cdef double complex c = complex(c_)
    cdef double complex d = complex(d_)
    cdef double complex e = complex(e_)
    cdef double complex co[5]
    cdef double complex out[4]
    cdef double complex shift, p, S, q, s, sq, w1, w2, delta, inner, Q, r12, r34, base, r
    cdef double scale = 1.0
    cdef int k, branch = -1, found = 0

    co[0] = 1.0
    co[1] = b / a
    co[2] = c / a
    co[3] = d / a
    co[4] = e / a
    shift = b / (4.0 * a)
    for k in range(1, 5):
        scale = max(scale, pow(cabs_(co[k]), 1.0 / k))

    if b == 0.0 and d == 0.0:
        biquad_c(c / a, e / a, 0.0, out)
    else:
        p = (8.0 * a * c - 3.0 * b * b) / (8.0 * a * a)
        S = (8.0 * a * a * d - 4.0 * a * b * c + b * b * b) / (8.0 * a * a * a)
        q = 12.0 * a * e - 3.0 * b * d + c * c
        s = 27.0 * a * d * d - 72.0 * a * c * e + 27.0 * b * b * e - 9.0 * b * c * d + 2.0 * c * c * c
        sq = csqrt_(s * s - 4.0 * q * q * q)
        w1 = (s + sq) / 2.0
        w2 = (s - sq) / 2.0
        delta = ccbrt_(w1 if cabs_(w1) >= cabs_(w2) else w2)
        Q = 0.0
        for k in range(3):
            if delta == 0.0:
                inner = -2.0 * p / 3.0
            else:
                inner = -2.0 * p / 3.0 + (delta + q / delta) / (3.0 * a)
            Q = 0.5 * csqrt_(inner)
            if cabs_(Q) > q_tol * scale:
                found = 1
                branch = k
                break
            delta = delta * OMEGA
        if found:
            base = -shift
            r12 = 0.5 * csqrt_(-4.0 * Q * Q - 2.0 * p + S / Q)
            r34 = 0.5 * csqrt_(-4.0 * Q * Q - 2.0 * p - S / Q)
            out[0] = base - Q + r12
            out[1] = base - Q - r12
            out[2] = base + Q + r34
            out[3] = base + Q - r34
        else:
            r = (-3.0 * b * b * b * b + 256.0 * a * a * a * e - 64.0 * a * a * b * d
                 + 16.0 * a * b * b * c) / (256.0 * a * a * a * a)
            biquad_c(p, r, shift, out)
    for k in range(4):
        out[k] = polish(co, 4, out[k])
    return (out[0], out[1], out[2], out[3]), branch


def durand_kerner(coeffs, double tol=1e-13, int max_iter=500):
    cdef list cl = [complex(v) for v in coeffs]
    cdef int n = len(cl) - 1
    cdef double complex lead
    cdef double complex* mono
    cdef double complex* z
    cdef double complex zi, p, denom, corr
    cdef double bound, root_scale, max_corr, ac, floor_, azi, inf = float("inf")
    cdef int i, j, k, it = 0, settled, converged = 0
    if n <= 0:
        return [], 0, True, 0.0
    mono = <double complex*> malloc((n + 1) * sizeof(double complex))
    z = <double complex*> malloc(n * sizeof(double complex))
    try:
        lead = cl[0]
        for k in range(n + 1):
            mono[k] = <double complex> cl[k] / lead
        bound = 0.0
        for k in range(1, n + 1):
            bound = max(bound, cabs_(mono[k]))
        bound += 1.0
        for k in range(n):
            ac = 2.0 * M_PI * k / n + 0.4
            z[k] = bound * cos(ac) + 1j * (bound * sin(ac))
        max_corr = inf
        with nogil:
            for it in range(1, max_iter + 1):
                max_corr = 0.0
                settled = 1
                root_scale = 1.0
                for i in range(n):
                    root_scale = max(root_scale, cabs_(z[i]))
                for i in range(n):
                    zi = z[i]
                    p = 0.0
                    floor_ = 0.0
                    azi = cabs_(zi)
                    for k in range(n + 1):
                        p = p * zi + mono[k]
                        floor_ = floor_ * azi + cabs_(mono[k])
                    denom = 1.0
                    for j in range(n):
                        if j != i:
                            denom = denom * (zi - z[j])
                    if denom == 0.0:
                        denom = EPS * root_scale
                    corr = p / denom
                    z[i] = zi - corr
                    ac = cabs_(corr)
                    if ac > max_corr:
                        max_corr = ac
                    if ac > tol * root_scale and cabs_(p) > 16.0 * n * EPS * floor_:
                        settled = 0
                if settled:
                    converged = 1
                    break
        return [z[k] for k in range(n)], it, bool(converged), max_corr
    finally:
        free(mono)
        free(z)
