"""Pure-Python (numpy) fallback for the compiled kernels in ``_core.pyx``.

Same API and branch structure as the extension; summation uses
``math.fsum`` which is at least as accurate as the Kahan loop of the
compiled path.
"""

import math

import numpy as np

BACKEND = "python"


def kahan_sum(x):
    """Compensated sum of a 1-D array (exact-rounding fsum)."""
    return math.fsum(np.asarray(x, dtype=float))


def _wpow_mean(r, alpha, lp, lq):
    # weighted power mean (alpha*p^r + (1-alpha)*q^r)^(1/r) in log space;
    # r == 0 is the exact geometric branch
    if r == 0.0:
        return np.exp(alpha * lp + (1.0 - alpha) * lq)
    a = r * lp
    b = r * lq
    m = np.maximum(a, b)
    return np.exp((m + np.log(alpha * np.exp(a - m) + (1.0 - alpha) * np.exp(b - m))) / r)


def _e_power(r, p, lp, lq):
    # E_r(p,q) = (q^r - p^r) / (r p^(r-1)) = p * expm1(r*log(q/p)) / r
    d = lq - lp
    if r == 0.0:
        return p * d
    return p * np.expm1(r * d) / r


def weighted_power_terms(r, s, alpha, p, q, w):
    """Sum_i w_i * (P^r_{1-alpha}(p_i,q_i) - P^s_{1-alpha}(p_i,q_i))."""
    lp = np.log(p)
    lq = np.log(q)
    terms = _wpow_mean(r, alpha, lp, lq) - _wpow_mean(s, alpha, lp, lq)
    return math.fsum(w * terms), float(np.min(terms))


def power_limit_terms(r, s, p, q, w):
    """Sum_i w_i * (E_r(p_i,q_i) - E_s(p_i,q_i)), the alpha -> 1 closed form."""
    lp = np.log(p)
    lq = np.log(q)
    terms = _e_power(r, p, lp, lq) - _e_power(s, p, lp, lq)
    return math.fsum(w * terms), float(np.min(terms))
