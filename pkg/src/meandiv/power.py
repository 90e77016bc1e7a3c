"""Homogeneous (r,s)-power alpha-divergences and their Csiszar form.

For r > s the power means satisfy P_r >= P_s (with equality only on the
diagonal), so

    I_alpha^{r,s}[p:q] = 1/(alpha(1-alpha)) sum w ((alpha p^r + (1-alpha) q^r)^{1/r}
                                                  - (alpha p^s + (1-alpha) q^s)^{1/s})

is a proper divergence; a zero exponent uses the exact geometric branch
p^alpha q^(1-alpha).  For nonzero r, s these are Csiszar f-divergences
sum w p f_{r,s}(q/p) and hence homogeneous of degree 1.

The per-point accumulation is delegated to the kernel backend (compiled
extension when available, numpy otherwise).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from meandiv._backend import kahan_sum, power_limit_terms, weighted_power_terms
from meandiv.densities import DensityPair
from meandiv.divergences import LIMIT_EPS, DivergenceResult
from meandiv.errors import AlphaOutOfRange, BadPowerPair, NonPositiveInput


@dataclass(frozen=True)
class PowerPair:
    """Exponent pair (r, s) with r > s so that P_r dominates P_s."""

    r: float
    s: float

    def __post_init__(self):
        if not self.r > self.s:
            raise BadPowerPair(f"need r > s, got r={self.r}, s={self.s}")


def _as_arrays(pair: DensityPair):
    p = np.ascontiguousarray(pair.p.values, dtype=float)
    q = np.ascontiguousarray(pair.q.values, dtype=float)
    w = np.ascontiguousarray(pair.weights, dtype=float)
    return p, q, w


def power_alpha_div(rs: PowerPair, alpha: float, pair: DensityPair) -> DivergenceResult:
    """(r,s)-power alpha-divergence for alpha in [0, 1].

    alpha within LIMIT_EPS of 1 uses the closed form sum w (E_r - E_s);
    alpha near 0 the reverse.  Matches qa_alpha_div(pow_r, pow_s, alpha)
    at the same alpha (the two code paths share the mean-index convention).
    """
    if not 0.0 <= alpha <= 1.0:
        raise AlphaOutOfRange(f"alpha must be in [0, 1], got {alpha}")
    p, q, w = _as_arrays(pair)
    if alpha >= 1.0 - LIMIT_EPS:
        total, mn = power_limit_terms(rs.r, rs.s, p, q, w)
        return DivergenceResult(total, True, mn, p.size)
    if alpha <= LIMIT_EPS:
        total, mn = power_limit_terms(rs.r, rs.s, q, p, w)
        return DivergenceResult(total, True, mn, p.size)
    total, mn = weighted_power_terms(rs.r, rs.s, alpha, p, q, w)
    scale = 1.0 / (alpha * (1.0 - alpha))
    return DivergenceResult(scale * total, False, scale * mn, p.size)


def csiszar_generator_rs(rs: PowerPair, alpha: float, u) -> float:
    """Csiszar generator f_{r,s}(u) of the (r,s)-power alpha-divergence:
    1/(alpha(1-alpha)) (P^r(1, u) - P^s(1, u)) with weight alpha on the 1.

    Convex with f(1) = 0; p * f(q/p) reproduces the per-point integrand.
    """
    if not 0.0 < alpha < 1.0:
        raise AlphaOutOfRange(f"alpha must be in (0, 1), got {alpha}")
    u = np.asarray(u, dtype=float)
    if np.any(u <= 0):
        raise NonPositiveInput("u must be > 0")
    lu = np.log(u)

    def mean_of_one_and_u(r):
        if r == 0.0:
            return np.exp((1.0 - alpha) * lu)
        # log-space: (alpha + (1-alpha) u^r)^(1/r)
        a = np.zeros_like(lu)
        b = r * lu
        m = np.maximum(a, b)
        return np.exp((m + np.log(alpha * np.exp(a - m) + (1.0 - alpha) * np.exp(b - m))) / r)

    out = (mean_of_one_and_u(rs.r) - mean_of_one_and_u(rs.s)) / (alpha * (1.0 - alpha))
    return float(out) if out.ndim == 0 else out


def csiszar_div(f: Callable, pair: DensityPair) -> float:
    """Csiszar f-divergence sum w p f(q/p) for convex f with f(1) = 0.

    The ratio q/p is formed in log space when direct division would
    overflow or underflow.
    """
    p, q, w = _as_arrays(pair)
    logratio = np.log(q) - np.log(p)
    # |log ratio| ~ 230 corresponds to ratios near 1e100
    if np.any(np.abs(logratio) > 230.0):
        ratio = np.exp(logratio)
    else:
        ratio = q / p
    terms = p * np.asarray(f(ratio), dtype=float)
    return kahan_sum(w * terms)


def homogeneity_check(rs: PowerPair, alpha: float, pair: DensityPair, lam: float) -> float:
    """Relative homogeneity error |I[lam p : lam q] - lam I[p:q]| / (lam I[p:q])."""
    if lam <= 0:
        raise NonPositiveInput(f"lambda must be > 0, got {lam}")
    base = power_alpha_div(rs, alpha, pair).value
    scaled = power_alpha_div(rs, alpha, pair.scaled(lam)).value
    return abs(scaled - lam * base) / abs(lam * base)
