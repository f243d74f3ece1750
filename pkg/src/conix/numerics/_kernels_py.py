"""Pure-Python polynomial kernels.

Reference twin of ``_kernels.pyx``; both modules expose the same functions
with the same semantics and are selected at import by ``conix.numerics``.
Coefficients are always given leading-first and the leading one is assumed
nonzero (validation lives in ``conix.numerics.solvers``).
"""

import cmath
import math

EPS = 2.220446049250313e-16
_OMEGA = complex(-0.5, math.sqrt(3.0) / 2.0)


def _sqrt(z):
    # adding +0j clears a signed-zero imaginary part so real negatives map to +i
    return cmath.sqrt(z + 0j)


def _cbrt(z):
    if z == 0:
        return 0j
    return cmath.exp(cmath.log(z + 0j) / 3.0)


def _horner(coeffs, z):
    acc = 0j
    for c in coeffs:
        acc = acc * z + c
    return acc


def _polish(coeffs, z, steps=2):
    # Newton steps, kept only while the residual keeps shrinking.
    best = abs(_horner(coeffs, z))
    for _ in range(steps):
        if best == 0.0:
            break
        p = 0j
        dp = 0j
        for c in coeffs:
            dp = dp * z + p
            p = p * z + c
        if dp == 0:
            break
        cand = z - p / dp
        r = abs(_horner(coeffs, cand))
        if r < best:
            z, best = cand, r
        else:
            break
    return z


def quadratic_roots(a2, a1, a0):
    """Roots ``(r_plus, r_minus)`` of ``a2 x^2 + a1 x + a0``.

    ``r_plus`` is the root of ``(-a1 + sqrt(D)) / (2 a2)`` with the principal
    square root; the root that would suffer cancellation is recovered from the
    product ``a0 / a2``.
    """
    a2 = complex(a2)
    a1 = complex(a1)
    a0 = complex(a0)
    sq = _sqrt(a1 * a1 - 4.0 * a2 * a0)
    plus = -a1 + sq
    minus = -a1 - sq
    if abs(plus) >= abs(minus):
        if plus == 0:
            return 0j, 0j
        r_plus = plus / (2.0 * a2)
        r_minus = (2.0 * a0) / plus
    else:
        r_minus = minus / (2.0 * a2)
        r_plus = (2.0 * a0) / minus
    return r_plus, r_minus


def cubic_roots(a3, a2, a1, a0):
    """Three roots of a cubic via Cardano with complex cube roots."""
    a3 = complex(a3)
    b = complex(a2) / a3
    c = complex(a1) / a3
    d = complex(a0) / a3
    shift = b / 3.0
    p = c - b * b / 3.0
    q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d
    sq = _sqrt(q * q / 4.0 + p * p * p / 27.0)
    w1 = -q / 2.0 + sq
    w2 = -q / 2.0 - sq
    u = _cbrt(w1 if abs(w1) >= abs(w2) else w2)
    roots = []
    if u == 0:
        roots = [-shift, -shift, -shift]
    else:
        uk = u
        for _ in range(3):
            roots.append(uk - p / (3.0 * uk) - shift)
            uk = uk * _OMEGA
    coeffs = (1.0 + 0j, b, c, d)
    return tuple(_polish(coeffs, r) for r in roots)


def _biquadratic(p, r, shift):
    # y^4 + p y^2 + r = 0, x = y - shift
    z1, z2 = quadratic_roots(1.0, p, r)
    y1 = _sqrt(z1)
    y2 = _sqrt(z2)
    return [y1 - shift, -y1 - shift, y2 - shift, -y2 - shift]


def quartic_roots(a, b, c, d, e, q_tol=1e-10):
    """Four roots of ``a x^4 + b x^3 + c x^2 + d x + e`` in closed form.

    Ferrari-type formulas with the resolvent cube root rotated by the cube
    roots of unity whenever the auxiliary quantity ``Q`` vanishes. Returns
    ``(roots, branch)`` where ``branch`` is the number of rotations applied,
    or -1 when the depressed-biquadratic fallback was used.
    """
    a = complex(a)
    b = complex(b)
    c = complex(c)
    d = complex(d)
    e = complex(e)
    coeffs = (1.0 + 0j, b / a, c / a, d / a, e / a)
    shift = b / (4.0 * a)
    scale = 1.0
    for k in range(1, 5):
        scale = max(scale, abs(coeffs[k]) ** (1.0 / k))

    if b == 0 and d == 0:
        roots = _biquadratic(c / a, e / a, 0j)
        return tuple(_polish(coeffs, x) for x in roots), -1

    p = (8.0 * a * c - 3.0 * b * b) / (8.0 * a * a)
    S = (8.0 * a * a * d - 4.0 * a * b * c + b * b * b) / (8.0 * a * a * a)
    q = 12.0 * a * e - 3.0 * b * d + c * c
    s = 27.0 * a * d * d - 72.0 * a * c * e + 27.0 * b * b * e - 9.0 * b * c * d + 2.0 * c * c * c
    sq = _sqrt(s * s - 4.0 * q * q * q)
    w1 = (s + sq) / 2.0
    w2 = (s - sq) / 2.0
    delta = _cbrt(w1 if abs(w1) >= abs(w2) else w2)

    Q = 0j
    branch = 0
    found = False
    for branch in range(3):
        if delta == 0:
            inner = -2.0 * p / 3.0
        else:
            inner = -2.0 * p / 3.0 + (delta + q / delta) / (3.0 * a)
        Q = 0.5 * _sqrt(inner)
        if abs(Q) > q_tol * scale:
            found = True
            break
        delta = delta * _OMEGA
    if not found:
        # depressed quartic has no odd term: y^4 + p y^2 + r
        r = (-3.0 * b ** 4 + 256.0 * a ** 3 * e - 64.0 * a * a * b * d + 16.0 * a * b * b * c) / (256.0 * a ** 4)
        roots = _biquadratic(p, r, shift)
        return tuple(_polish(coeffs, x) for x in roots), -1

    base = -shift
    r12 = 0.5 * _sqrt(-4.0 * Q * Q - 2.0 * p + S / Q)
    r34 = 0.5 * _sqrt(-4.0 * Q * Q - 2.0 * p - S / Q)
    roots = [base - Q + r12, base - Q - r12, base + Q + r34, base + Q - r34]
    return tuple(_polish(coeffs, x) for x in roots), branch


def durand_kerner(coeffs, tol=1e-13, max_iter=500):
    """Simultaneous Weierstrass iteration on a polynomial (leading first).

    Returns ``(roots, iterations, converged, max_correction)``. A root counts
    as settled when its last correction is below ``tol`` times the root scale
    or its residual sits at the rounding floor of Horner evaluation.
    """
    lead = complex(coeffs[0])
    mono = [complex(c) / lead for c in coeffs]
    n = len(mono) - 1
    if n == 0:
        return [], 0, True, 0.0
    bound = 1.0 + max(abs(c) for c in mono[1:])
    z = [bound * cmath.exp(1j * (2.0 * math.pi * k / n + 0.4)) for k in range(n)]
    max_corr = math.inf
    it = 0
    converged = False
    for it in range(1, max_iter + 1):
        max_corr = 0.0
        settled = True
        root_scale = max(1.0, max(abs(v) for v in z))
        for i in range(n):
            zi = z[i]
            p = 0j
            floor = 0.0
            azi = abs(zi)
            for cf in mono:
                p = p * zi + cf
                floor = floor * azi + abs(cf)
            denom = 1.0 + 0j
            for j in range(n):
                if j != i:
                    denom *= zi - z[j]
            if denom == 0:
                denom = complex(EPS * root_scale, 0.0)
            corr = p / denom
            z[i] = zi - corr
            ac = abs(corr)
            if ac > max_corr:
                max_corr = ac
            if ac > tol * root_scale and abs(p) > 16.0 * n * EPS * floor:
                settled = False
        if settled:
            converged = True
            break
    return z, it, converged, max_corr
