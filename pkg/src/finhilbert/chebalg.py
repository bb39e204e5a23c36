"""Chebyshev-series and log-kernel algebra underlying the transform evaluators.

Everything here works on plain numpy arrays of first-kind Chebyshev
coefficients (``f = sum a_n T_n``).  The central primitive is the synthetic
division ``(p(y) - p(x)) / (y - x)`` carried out in coefficient space, which
turns every principal-value integral of a polynomial against the Cauchy
kernel into a finite closed form.  The classical identities used throughout:

    pv int_-1^1 T_n(y) / (w(y)(y-t)) dy = pi * U_{n-1}(t),       n >= 1 (0 for n=0)
    pv int_-1^1 w(y) U_{n-1}(y) / (y-t) dy = -pi * T_n(t),       n >= 1
    ln|y - a| = -ln 2 - 2 sum_{n>=1} T_n(a) T_n(y) / n,          a, y in [-1, 1]

with ``w(x) = sqrt(1 - x^2)``.
"""

from __future__ import annotations

import functools

import numpy as np
from numpy.polynomial import chebyshev as _cheb
from scipy.fft import dct


# ----------------------------------------------------------------- node families

def chebyshev_nodes(n):
    """First-kind Chebyshev points cos((2k-1)pi/2n), ascending, all interior."""
    k = np.arange(1, n + 1)
    return np.cos((2 * k - 1) * np.pi / (2 * n))[::-1].copy()


def fejer1_weights(n):
    """Fejer-1 weights on the first-kind nodes, calibrated to be exact on 1 and w.

    The raw Fejer rule integrates polynomials of degree < n exactly but picks
    up an O(n^-3) error on the endpoint weight w(x) = sqrt(1-x^2).  A minimal
    even correction in span{1, w} pins both  sum(weights) == 2  and
    ``integral of w == pi/2`` exactly; the perturbation of polynomial
    exactness is below 5e-8 for n >= 256.
    """
    theta = (2 * np.arange(1, n + 1) - 1) * np.pi / (2 * n)
    m = np.arange(1, n // 2 + 1)
    w = (2.0 / n) * (1 - 2 * np.sum(np.cos(2 * np.outer(theta, m)) / (4 * m**2 - 1), axis=1))
    w = w[::-1].copy()
    wx = np.sin(theta)[::-1].copy()          # w(x_k) on ascending nodes
    s1, s2 = wx.sum(), (wx**2).sum()
    rhs = np.array([2.0 - w.sum(), np.pi / 2 - w @ wx])
    alpha, beta = np.linalg.solve(np.array([[n, s1], [s1, s2]]), rhs)
    return w + alpha + beta * wx


def uniform_nodes(n):
    """Midpoint nodes on (-1,1); the matching weights are the constant 2/n."""
    k = np.arange(n)
    return -1.0 + (2 * k + 1.0) / n


# ---------------------------------------------------------------- series basics

def fit_chebyshev(values):
    """Chebyshev coefficients interpolating samples at the first-kind nodes.

    ``values`` must be ordered by ascending node (the layout produced by
    :func:`chebyshev_nodes`).  Complex data is fitted componentwise.
    """
    v = np.asarray(values)[::-1]             # DCT wants ascending theta
    n = len(v)
    if np.iscomplexobj(v):
        out = dct(v.real, type=2) + 1j * dct(v.imag, type=2)
    else:
        out = dct(v, type=2).astype(float)
    out = out / n
    out[0] /= 2.0
    return out


def chebval(x, coeffs):
    return _cheb.chebval(x, coeffs)


def chebmul(a, b):
    return _cheb.chebmul(a, b)


def chebint(coeffs):
    return _cheb.chebint(coeffs)


def trim(coeffs, tol=0.0):
    c = np.asarray(coeffs)
    nz = np.nonzero(np.abs(c) > tol)[0]
    if len(nz) == 0:
        return c[:1] * 0
    return c[: nz[-1] + 1]


def difference_quotient(coeffs, x):
    """Coefficients b_k(x) of q(y) = (p(y) - p(x)) / (y - x), vectorized in x.

    Returns an array of shape (deg(p), len(x)); empty for constant p.
    """
    a = np.asarray(coeffs, dtype=complex)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    d = len(a) - 1
    if d <= 0:
        return np.zeros((0, len(x)), dtype=complex)
    b = np.zeros((d + 2, len(x)), dtype=complex)
    for n in range(d, 0, -1):
        b[n - 1] = 2 * a[n] + 2 * x * b[n] - b[n + 1]
    b[0] /= 2.0
    return b[:d]


@functools.lru_cache(maxsize=256)
def _chebint_table(d):
    """Antiderivative coefficients of T_0..T_{d-1}, stacked as a (d, d+1) array."""
    out = np.zeros((d, d + 1))
    for k in range(d):
        c = np.zeros(k + 1)
        c[k] = 1.0
        ci = _cheb.chebint(c)
        out[k, : len(ci)] = ci
    return out


def segment_integrals(d, lo, hi):
    """Vector of ``int_lo^hi T_k(y) dy`` for k = 0..d-1."""
    if d <= 0:
        return np.zeros(0)
    tab = _chebint_table(d)
    return _cheb.chebval(hi, tab.T) - _cheb.chebval(lo, tab.T)


# ------------------------------------------------------- transforms of series

def log_ratio(x):
    """L(x) = ln((1-x)/(1+x)), the transform of the constant 1 times pi."""
    x = np.asarray(x, dtype=float)
    return np.log1p(-x) - np.log1p(x)


def fht_series(coeffs, x, lo=-1.0, hi=1.0):
    """(1/pi) pv int_lo^hi p(y)/(y-x) dy for Chebyshev-coefficient p.

    Exact (to roundoff) for any x in (-1,1) away from {lo, hi}, whether or
    not x lies inside the segment; the principal value is built into the
    log term.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    b = difference_quotient(coeffs, x)
    seg = segment_integrals(b.shape[0], lo, hi)
    px = _cheb.chebval(x, coeffs)
    return (seg @ b + px * np.log(np.abs((hi - x) / (lo - x)))) / np.pi


def t_to_u(coeffs):
    """Rewrite sum a_n T_n as sum b_k U_k (second-kind basis)."""
    a = np.asarray(coeffs, dtype=complex)
    d = len(a)
    b = np.zeros(d, dtype=complex)
    pad = np.concatenate([a, [0.0, 0.0]])
    b[0] = a[0] - pad[2] / 2.0
    for k in range(1, d):
        b[k] = (pad[k] - pad[k + 2]) / 2.0
    return b


def u_to_t(coeffs):
    """Rewrite sum b_k U_k as first-kind coefficients."""
    b = np.asarray(coeffs, dtype=complex)
    d = len(b)
    a = np.zeros(d, dtype=complex)
    # U_{2m} = T_0 + 2(T_2 + ... + T_{2m}); U_{2m+1} = 2(T_1 + T_3 + ...)
    for parity in (0, 1):
        idx = np.arange(parity, d, 2)
        if len(idx) == 0:
            continue
        tails = np.cumsum(b[idx][::-1])[::-1]      # sum of b_k for k >= j, same parity
        a[idx] = 2.0 * tails
    if d > 0:
        a[0] = np.sum(b[np.arange(0, d, 2)])       # T_0 enters U_{2m} with weight 1
    return a


def fht_over_w_series(coeffs):
    """Coefficients of T(p/w) for p = sum a_n T_n:  sum_{n>=1} a_n U_{n-1}."""
    a = np.asarray(coeffs, dtype=complex)
    if len(a) <= 1:
        return np.zeros(1, dtype=complex)
    return u_to_t(a[1:])


def fht_times_w_series(coeffs):
    """Coefficients of T(p*w) for p = sum a_n T_n:  -sum b_k T_{k+1}."""
    b = t_to_u(coeffs)
    out = np.zeros(len(b) + 1, dtype=complex)
    out[1:] = -b
    return out


# -------------------------------------------------- weighted / log closed forms

def integral_over_w(coeffs, lo=-1.0, hi=1.0):
    """int_lo^hi p(x)/w(x) dx via x = cos(theta); exact for series p."""
    a = np.asarray(coeffs, dtype=complex)
    th_lo, th_hi = np.arccos(lo), np.arccos(hi)     # th_lo > th_hi
    total = a[0] * (th_lo - th_hi)
    n = np.arange(1, len(a))
    if len(n):
        total = total + np.sum(a[1:] * (np.sin(n * th_lo) - np.sin(n * th_hi)) / n)
    return complex(total)


def integral_log_over_w(coeffs, a_pt):
    """int_-1^1 p(x) ln|x - a| / w(x) dx, a in [-1, 1]; fully closed form."""
    a = np.asarray(coeffs, dtype=complex)
    total = -a[0] * np.pi * np.log(2.0)
    n = np.arange(1, len(a))
    if len(n):
        total = total - np.pi * np.sum(a[1:] * np.cos(n * np.arccos(a_pt)) / n)
    return complex(total)


def integral_log(coeffs, a_pt, lo=-1.0, hi=1.0):
    """int_lo^hi p(x) ln|x - a| dx with a anywhere in [-1, 1].

    Integration by parts against the antiderivative P of p normalized to
    P(a) = 0 removes the singularity: the remaining integrand
    (P(y) - P(a))/(y - a) is the regular difference quotient.
    """
    P = _cheb.chebint(np.asarray(coeffs, dtype=complex))
    P[0] -= _cheb.chebval(a_pt, P)
    bt = 0.0 + 0.0j
    for end, sign in ((hi, 1.0), (lo, -1.0)):
        if abs(end - a_pt) > 1e-300:
            bt += sign * _cheb.chebval(end, P) * np.log(abs(end - a_pt))
    q = difference_quotient(P, np.array([a_pt]))[:, 0]
    seg = segment_integrals(len(q), lo, hi)
    return complex(bt - q @ seg)


def fht_indicator_over_w(lo, hi, t):
    """(1/pi) pv int_lo^hi dy / (w(y)(y - t)); exact antiderivative in theta."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    wt = np.sqrt(1.0 - t * t)
    alpha = np.sqrt((1.0 - t) / (1.0 + t))

    def G(theta):
        if theta >= np.pi - 1e-14:
            return np.zeros_like(t)
        u = np.tan(theta / 2.0)
        return np.log(np.abs((alpha + u) / (alpha - u)))

    return (G(np.arccos(lo)) - G(np.arccos(hi))) / (np.pi * wt)


# ----------------------------------------------------------- panel quadrature

@functools.lru_cache(maxsize=16)
def _gl_rule(n):
    return np.polynomial.legendre.leggauss(n)


def integrate_panels(f, edges, order=24):
    """Composite Gauss-Legendre quadrature of a vectorized callable."""
    z, w = _gl_rule(order)
    edges = np.asarray(edges, dtype=float)
    lo, hi = edges[:-1], edges[1:]
    mid, half = (lo + hi) / 2.0, (hi - lo) / 2.0
    pts = mid[:, None] + half[:, None] * z[None, :]
    vals = f(pts.ravel()).reshape(pts.shape)
    return np.sum(half[:, None] * w[None, :] * vals)


def graded_edges(lo, hi, singular, depth=36, ratio=0.5, floor=1e-11):
    """Panel edges on (lo, hi), geometrically refined toward each singular point.

    Refinement stops at an absolute ``floor`` so panel points never collapse
    onto the singular point in floating point; the truncated mass of an
    integrable log/algebraic singularity at that scale is negligible.
    """
    pts = {lo, hi}
    for s in singular:
        if not (lo < s < hi) and not (abs(s - lo) < 1e-15 or abs(s - hi) < 1e-15):
            continue
        for side in (-1.0, 1.0):
            limit = hi - s if side > 0 else s - lo
            if limit <= floor:
                continue
            step = limit
            for _ in range(depth):
                step *= ratio
                if step < floor:
                    break
                pts.add(min(hi, max(lo, s + side * step)))
    return np.array(sorted(pts))


def fht_log_kernel(a_pt, t, order=20, depth=40):
    """K_a(t) = pv int_-1^1 ln|y - a| / (y - t) dy by graded panel quadrature.

    The Cauchy singularity at t is subtracted exactly (a plain panel split
    there suffices); the integrable log singularity at a is absorbed by
    geometric panel grading.
    """
    t = float(t)
    la = np.log(abs(t - a_pt))

    def g(y):
        return (np.log(np.abs(y - a_pt)) - la) / (y - t)

    edges = graded_edges(-1.0, 1.0, [a_pt], depth=depth)
    edges = np.array(sorted(set(edges) | {t}))
    val = integrate_panels(g, edges, order=order)
    return float(val.real) + la * log_ratio(t)
