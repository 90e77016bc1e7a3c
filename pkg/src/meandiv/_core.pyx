# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: per-point power-mean integrands and compensated sums.

A numpy twin of this module lives in ``_core_py.py``; ``_backend`` picks
whichever is importable.  Both expose the same three functions with
identical semantics (weight ``alpha`` multiplies the first argument ``p``
inside the weighted mean).
"""

from libc.math cimport log, exp, expm1, fmax, fmin

import numpy as np

BACKEND = "cython"


def kahan_sum(const double[::1] x):
    """Compensated (Kahan) sum of a 1-D array."""
    cdef double s = 0.0, c = 0.0, y, t
    cdef Py_ssize_t i, n = x.shape[0]
    for i in range(n):
        y = x[i] - c
        t = s + y
        c = (t - s) - y
        s = t
    return s


cdef inline double _wpow_mean(double r, double alpha, double lp, double lq) nogil:
    """Weighted power mean in log space: (alpha*p^r + (1-alpha)*q^r)^(1/r).

    r == 0 is the exact geometric branch p^alpha * q^(1-alpha).
    """
    cdef double a, b, m
    if r == 0.0:
        return exp(alpha * lp + (1.0 - alpha) * lq)
    a = r * lp
    b = r * lq
    m = fmax(a, b)
    return exp((m + log(alpha * exp(a - m) + (1.0 - alpha) * exp(b - m))) / r)


cdef inline double _e_power(double r, double p, double lp, double lq) nogil:
    """E_r(p, q) = (q^r - p^r) / (r * p^(r-1)) = p * expm1(r*log(q/p)) / r."""
    cdef double d = lq - lp
    if r == 0.0:
        return p * d
    return p * expm1(r * d) / r


def weighted_power_terms(double r, double s, double alpha,
                         const double[::1] p, const double[::1] q, const double[::1] w):
    """Sum_i w_i * (P^r_{1-alpha}(p_i,q_i) - P^s_{1-alpha}(p_i,q_i)).

    Returns (compensated total, min unweighted per-point term).
    """
    cdef double total = 0.0, c = 0.0, y, t, term, mn = np.inf
    cdef double lp, lq
    cdef Py_ssize_t i, n = p.shape[0]
    for i in range(n):
        lp = log(p[i])
        lq = log(q[i])
        term = _wpow_mean(r, alpha, lp, lq) - _wpow_mean(s, alpha, lp, lq)
        mn = fmin(mn, term)
        y = w[i] * term - c
        t = total + y
        c = (t - total) - y
        total = t
    return total, mn


def power_limit_terms(double r, double s,
                      const double[::1] p, const double[::1] q, const double[::1] w):
    """Sum_i w_i * (E_r(p_i,q_i) - E_s(p_i,q_i)), the alpha -> 1 closed form.

    Returns (compensated total, min unweighted per-point term).
    """
    cdef double total = 0.0, c = 0.0, y, t, term, mn = np.inf
    cdef double lp, lq
    cdef Py_ssize_t i, n = p.shape[0]
    for i in range(n):
        lp = log(p[i])
        lq = log(q[i])
        term = _e_power(r, p[i], lp, lq) - _e_power(s, p[i], lp, lq)
        mn = fmin(mn, term)
        y = w[i] * term - c
        t = total + y
        c = (t - total) - y
        total = t
    return total, mn
