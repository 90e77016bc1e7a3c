"""Alpha-divergences from pairs of strictly comparable weighted means.

The generic form for alpha in (0, 1) is

    I_alpha[p:q] = 1/(alpha (1-alpha)) * sum_i w_i (M_{1-alpha}(p_i, q_i)
                                                    - N_{1-alpha}(p_i, q_i)),

with M_{1-alpha}(p, q) = f^{-1}(alpha f(p) + (1-alpha) f(q)) for
quasi-arithmetic means.  Near alpha in {0, 1} the 1/(alpha(1-alpha))
factor amplifies rounding error catastrophically, so within LIMIT_EPS of
the endpoints we switch to the closed-form limits built from the E-terms
E_f(p, q) = (f(q) - f(p)) / f'(p).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from meandiv import means as _means
from meandiv._backend import kahan_sum
from meandiv.densities import DensityPair
from meandiv.errors import (
    AlphaOutOfOpenInterval,
    AlphaOutOfRange,
    BetaOutOfRange,
    NonPositiveInput,
    NotComparable,
)
from meandiv.means import Generator, WeightedMeanSpec, e_term

# within this distance of alpha in {0, 1} the closed-form limit is used
LIMIT_EPS = 1e-6


@dataclass(frozen=True)
class AlphaParam:
    """Divergence weight in either the alpha in [0,1] convention or the
    alpha_A = 1 - 2*alpha in [-1,1] convention; conversion is lossless."""

    value: float
    convention: str = "standard"  # "standard" | "amari"

    def __post_init__(self):
        if self.convention not in ("standard", "amari"):
            raise ValueError(f"unknown alpha convention {self.convention!r}")

    @property
    def standard(self) -> float:
        if self.convention == "standard":
            return self.value
        return (1.0 - self.value) / 2.0

    @property
    def amari(self) -> float:
        if self.convention == "amari":
            return self.value
        return 1.0 - 2.0 * self.value


@dataclass(frozen=True)
class DivergenceResult:
    """Divergence value plus diagnostics.

    ``min_integrand`` is the smallest per-point integrand; for comparable
    mean pairs it should only ever be negative by floating-point slack.
    """

    value: float
    limit_branch_used: bool
    min_integrand: float
    n_points: int

    def __float__(self) -> float:
        return self.value


@lru_cache(maxsize=256)
def _comparability(f: Generator, g: Generator) -> _means.ComparabilityResult:
    return _means.check_strict_comparability(f, g)


def require_comparable(f: Generator, g: Generator) -> None:
    res = _comparability(f, g)
    if not res:
        raise NotComparable(
            f"({f.name}, {g.name}) fails the strict-comparability certificate",
            witness=res.witness,
        )


def scalar_alpha_div(alpha: float, a: float, b: float) -> float:
    """Scalar alpha-divergence i_alpha(a:b); limit branches within
    LIMIT_EPS of alpha in {0, 1}; valid for any real alpha otherwise."""
    if a <= 0 or b <= 0:
        raise NonPositiveInput("arguments must be > 0")
    if abs(1.0 - alpha) <= LIMIT_EPS:
        return a * math.log(a / b) + b - a
    if abs(alpha) <= LIMIT_EPS:
        return b * math.log(b / a) + a - b
    return (alpha * a + (1.0 - alpha) * b - a**alpha * b ** (1.0 - alpha)) / (
        alpha * (1.0 - alpha)
    )


def extended_kl(pair: DensityPair) -> float:
    """Extended KL divergence sum w * (p log(p/q) + q - p) for positive,
    not necessarily normalized densities."""
    p, q, w = pair.p.values, pair.q.values, pair.weights
    terms = p * np.log(p / q) + q - p
    return kahan_sum(w * terms)


def _limit_terms(f: Generator, g: Generator, p, q):
    # per-point integrand of I_1: E_f(p, q) - E_g(p, q)
    return e_term(f, p, q) - e_term(g, p, q)


def qa_alpha_div(
    f: Generator,
    g: Generator,
    alpha: float,
    pair: DensityPair,
    check: bool = True,
) -> DivergenceResult:
    """Quasi-arithmetic alpha-divergence I_alpha^{f,g}[p:q] for alpha in [0,1].

    Requires f o g^{-1} strictly convex (certified on a sample grid unless
    ``check`` is False).  alpha within LIMIT_EPS of 1 uses the closed form
    I_1 = sum w (E_f - E_g); alpha near 0 uses the reverse I_0[p:q] = I_1[q:p].
    """
    if not 0.0 <= alpha <= 1.0:
        raise AlphaOutOfRange(f"alpha must be in [0, 1], got {alpha}")
    if check:
        require_comparable(f, g)
    p, q, w = pair.p.values, pair.q.values, pair.weights
    if alpha >= 1.0 - LIMIT_EPS:
        terms = _limit_terms(f, g, p, q)
        return DivergenceResult(kahan_sum(w * terms), True, float(np.min(terms)), p.size)
    if alpha <= LIMIT_EPS:
        terms = _limit_terms(f, g, q, p)
        return DivergenceResult(kahan_sum(w * terms), True, float(np.min(terms)), p.size)
    fp, fq = f.eval(p), f.eval(q)
    gp, gq = g.eval(p), g.eval(q)
    terms = f.inverse(alpha * fp + (1.0 - alpha) * fq) - g.inverse(
        alpha * gp + (1.0 - alpha) * gq
    )
    scale = 1.0 / (alpha * (1.0 - alpha))
    return DivergenceResult(
        scale * kahan_sum(w * terms), False, scale * float(np.min(terms)), p.size
    )


def mn_alpha_div(
    M: WeightedMeanSpec,
    N: WeightedMeanSpec,
    alpha: float,
    pair: DensityPair,
) -> DivergenceResult:
    """Abstract (M, N) alpha-divergence for alpha strictly inside (0, 1).

    Limits at the endpoints exist only for quasi-arithmetic pairs and live
    in :func:`qa_alpha_div`.  For QAM/power pairs the strict-comparability
    certificate is run; the caller is responsible for dominance otherwise.
    """
    if not 0.0 < alpha < 1.0:
        raise AlphaOutOfOpenInterval(
            f"abstract (M,N) divergence needs alpha in (0, 1), got {alpha}"
        )
    require_comparable(M.as_generator(), N.as_generator())
    p, q, w = pair.p.values, pair.q.values, pair.weights
    terms = M.evaluate(1.0 - alpha, p, q) - N.evaluate(1.0 - alpha, p, q)
    scale = 1.0 / (alpha * (1.0 - alpha))
    return DivergenceResult(
        scale * kahan_sum(w * terms), False, scale * float(np.min(terms)), p.size
    )


# ---------------------------------------------------------------------------
# entropy decomposition of the limit divergences


def fg_cross_entropy(f: Generator, g: Generator, pair: DensityPair) -> float:
    """(f,g)-cross-entropy sum w (f(q)/f'(p) - g(q)/g'(p)) (constant c = 0)."""
    require_comparable(f, g)
    p, q, w = pair.p.values, pair.q.values, pair.weights
    terms = f.eval(q) / f.derivative(p) - g.eval(q) / g.derivative(p)
    return kahan_sum(w * terms)


def fg_entropy(f: Generator, g: Generator, density) -> float:
    """(f,g)-entropy, the self cross-entropy sum w (f(p)/f'(p) - g(p)/g'(p))."""
    p, w = density.values, density.weights
    terms = f.eval(p) / f.derivative(p) - g.eval(p) / g.derivative(p)
    return kahan_sum(w * terms)


def fg_kl(f: Generator, g: Generator, pair: DensityPair) -> float:
    """Generalized (f,g)-KL divergence: cross-entropy minus entropy.

    Computed literally as the difference of the two sums so the
    decomposition identity holds bit for bit.
    """
    return fg_cross_entropy(f, g, pair) - fg_entropy(f, g, pair.p)


def fg_jeffreys(f: Generator, g: Generator, pair: DensityPair) -> float:
    """Symmetrized (f,g)-KL: KL[p:q] + KL[q:p]."""
    return fg_kl(f, g, pair) + fg_kl(f, g, pair.swapped())


# ---------------------------------------------------------------------------
# Zhang's families in the alpha_A convention


def zhang_rho_alpha_div(rho: Generator, alphaA: float, pair: DensityPair) -> float:
    """(A, M^rho) divergence in the alpha_A in [-1, 1] convention.

    Implemented from its own displayed formula (prefactor 4/(1-alpha_A^2),
    weight (1-alpha_A)/2 on p) rather than by delegating to
    :func:`qa_alpha_div`; the agreement of the two code paths under
    alpha = (1-alpha_A)/2 is a test oracle.  At alpha_A = +/-1 the closed
    form sum w (p - q - (rho(p)-rho(q))/rho'(q)) (and its reverse) is used.
    """
    if not -1.0 <= alphaA <= 1.0:
        raise AlphaOutOfRange(f"alpha_A must be in [-1, 1], got {alphaA}")
    require_comparable(_means.IDENTITY, rho)
    p, q, w = pair.p.values, pair.q.values, pair.weights
    if alphaA >= 1.0 - 2.0 * LIMIT_EPS:
        terms = p - q - (rho.eval(p) - rho.eval(q)) / rho.derivative(q)
        return kahan_sum(w * terms)
    if alphaA <= -1.0 + 2.0 * LIMIT_EPS:
        terms = q - p - (rho.eval(q) - rho.eval(p)) / rho.derivative(p)
        return kahan_sum(w * terms)
    wp = (1.0 - alphaA) / 2.0
    wq = (1.0 + alphaA) / 2.0
    terms = wp * p + wq * q - rho.inverse(wp * rho.eval(p) + wq * rho.eval(q))
    return 4.0 / (1.0 - alphaA * alphaA) * kahan_sum(w * terms)


def zhang_alpha_beta_div(alphaA: float, betaA: float, pair: DensityPair) -> float:
    """Zhang's homogeneous (alpha_A, beta_A)-divergence.

    beta_A = 1 is the exact geometric inner mean (the (A,G) family);
    beta_A = -1 is an exponent singularity and is rejected.
    """
    if not -1.0 < alphaA < 1.0:
        raise AlphaOutOfOpenInterval(f"alpha_A must be in (-1, 1), got {alphaA}")
    if not -1.0 < betaA <= 1.0:
        raise BetaOutOfRange(f"beta_A must be in (-1, 1], got {betaA}")
    p, q, w = pair.p.values, pair.q.values, pair.weights
    wp = (1.0 - alphaA) / 2.0
    wq = (1.0 + alphaA) / 2.0
    t = (1.0 - betaA) / 2.0
    lp, lq = np.log(p), np.log(q)
    if betaA == 1.0:
        inner = np.exp(wp * lp + wq * lq)
    else:
        a, b = t * lp, t * lq
        m = np.maximum(a, b)
        inner = np.exp((m + np.log(wp * np.exp(a - m) + wq * np.exp(b - m))) / t)
    terms = wp * p + wq * q - inner
    scale = 4.0 / (1.0 - alphaA * alphaA) * 2.0 / (1.0 + betaA)
    return scale * kahan_sum(w * terms)
