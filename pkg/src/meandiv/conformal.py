"""Bregman divergences, the conformal representation of the limit
divergence I_1, skew (M,N)-Jensen/Bregman divergences, and the geometric
divergence on the probability simplex.

The central identity: with F = f o g^{-1} strictly convex,

    I_1^{f,g}[p:q] = sum w (1/f'(p)) B_F(g(q) : g(p)),

i.e. the generalized KL divergence is a Bregman divergence of the
g-embedded values, conformally weighted by 1/f'(p).  The induced
differential-geometric structure (conformally flat statistical manifolds)
is intentionally not computed here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from meandiv._backend import kahan_sum
from meandiv.densities import DensityPair
from meandiv.divergences import require_comparable
from meandiv.errors import DimensionMismatch, DomainError, NonPositiveInput
from meandiv.means import Generator, WeightedMeanSpec, e_term


@dataclass(frozen=True)
class ConvexGenerator:
    """Scalar convex function with its derivative (a Bregman generator)."""

    eval: Callable
    derivative: Callable


def compose_convex(f: Generator, g: Generator) -> ConvexGenerator:
    """F = f o g^{-1} with F'(t) = f'(g^{-1}(t)) / g'(g^{-1}(t));
    strictly convex exactly when (f, g) are strictly comparable."""

    def _eval(t):
        return f.eval(g.inverse(t))

    def _deriv(t):
        u = g.inverse(t)
        return f.derivative(u) / g.derivative(u)

    return ConvexGenerator(_eval, _deriv)


def bregman_div(F: ConvexGenerator, x, y):
    """B_F(x:y) = F(x) - F(y) - (x - y) F'(y); >= 0 for convex F."""
    return F.eval(x) - F.eval(y) - (x - y) * F.derivative(y)


def conformal_i1(f: Generator, g: Generator, pair: DensityPair) -> float:
    """I_1^{f,g} computed through its conformal Bregman representation.

    Independent of the E-term path in qa_alpha_div(alpha=1); their
    agreement is the representation theorem made executable.
    """
    require_comparable(f, g)
    F = compose_convex(f, g)
    p, q, w = pair.p.values, pair.q.values, pair.weights
    terms = bregman_div(F, g.eval(q), g.eval(p)) / f.derivative(p)
    return kahan_sum(w * terms)


def skew_jensen_mn(
    F: ConvexGenerator,
    M: WeightedMeanSpec,
    N: WeightedMeanSpec,
    alpha: float,
    p: float,
    q: float,
) -> float:
    """Skew (M,N)-Jensen divergence
    1/(alpha(1-alpha)) (N_alpha(F(p), F(q)) - F(M_alpha(p, q))).

    Nonnegative when F is (M,N)-convex (g o F o f^{-1} ordinary convex for
    QAM means).
    """
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must be in (0, 1), got {alpha}")
    if p <= 0 or q <= 0:
        raise NonPositiveInput("arguments must be > 0")
    n_val = N.evaluate(alpha, F.eval(p), F.eval(q))
    m_val = F.eval(M.evaluate(alpha, p, q))
    return (n_val - m_val) / (alpha * (1.0 - alpha))


def mn_bregman(f: Generator, g: Generator, F: ConvexGenerator, p: float, q: float) -> float:
    """(M^f, M^g)-Bregman divergence of a generator F (g o F o f^{-1} convex):

        B(p:q) = (g(F(p)) - g(F(q))) / g'(F(q)) - ((f(p) - f(q)) / f'(q)) F'(q)
               = E_g(F(q), F(p)) - E_f(q, p) F'(q).
    """
    if p <= 0 or q <= 0:
        raise NonPositiveInput("arguments must be > 0")
    Fp, Fq = F.eval(p), F.eval(q)
    return e_term(g, Fq, Fp) - e_term(f, q, p) * F.derivative(q)


def mn_bregman_conformal(f: Generator, g: Generator, F: ConvexGenerator, p: float, q: float) -> float:
    """Independent dual form of :func:`mn_bregman`:

        B(p:q) = (1/g'(F(q))) B_{g o F o f^{-1}}(f(p) : f(q)).

    The conformal factor is 1/g'(F(q)), the self-consistent expansion of
    the primary form (cross-checked as a test oracle).
    """
    if p <= 0 or q <= 0:
        raise NonPositiveInput("arguments must be > 0")

    def G_eval(t):
        return g.eval(F.eval(f.inverse(t)))

    def G_deriv(t):
        u = f.inverse(t)
        return g.derivative(F.eval(u)) * F.derivative(u) / f.derivative(u)

    G = ConvexGenerator(G_eval, G_deriv)
    return bregman_div(G, f.eval(p), f.eval(q)) / g.derivative(F.eval(q))


def skew_jensen_limit(
    F: ConvexGenerator,
    M: WeightedMeanSpec,
    N: WeightedMeanSpec,
    p: float,
    q: float,
    eps: float = 1e-6,
) -> float:
    """Numeric alpha -> 1 limit of the skew Jensen divergence (test
    utility for abstract regular means; QAM pairs have the closed form)."""
    return skew_jensen_mn(F, M, N, 1.0 - eps, p, q)


# ---------------------------------------------------------------------------
# geometric divergence on the probability simplex


@dataclass(frozen=True)
class SimplexPoint:
    """Point of the open probability simplex: d+1 positive coordinates
    summing to 1 (within 1e-12)."""

    coordinates: tuple

    def __post_init__(self):
        coords = tuple(float(c) for c in self.coordinates)
        if any(c <= 0 for c in coords):
            raise NonPositiveInput("simplex coordinates must be > 0")
        if abs(math.fsum(coords) - 1.0) > 1e-12:
            raise DomainError(f"coordinates sum to {math.fsum(coords)}, not 1")
        object.__setattr__(self, "coordinates", coords)

    @property
    def dim(self) -> int:
        return len(self.coordinates) - 1

    def as_array(self) -> np.ndarray:
        return np.asarray(self.coordinates, dtype=float)


def _is_affine(L: Generator) -> bool:
    # affine L makes sum_i E_L(r_i, p_i) telescope to 0 on the simplex
    u = np.linspace(0.05, 0.95, 33)
    h = np.asarray(L.eval(u), dtype=float)
    second = h[2:] - 2.0 * h[1:-1] + h[:-2]
    scale = max(1.0, float(np.max(np.abs(h))))
    return bool(np.all(np.abs(second) <= 1e-12 * scale))


def geometric_divergence(
    L: Generator,
    p: SimplexPoint,
    r: SimplexPoint,
    literal_normalizer: bool = False,
) -> float:
    """Geometric divergence rho(p:r) = (1/Lambda(r)) sum_i E_L(r_i, p_i).

    The default normalizer is the self-consistent Lambda(r) =
    sum_i r_i / L'(r_i); ``literal_normalizer=True`` selects the variant
    with the first argument's coordinates inside the sum,
    sum_i p_i / L'(p_i) (both are exposed because the two readings differ;
    they coincide at p = r).  Nonnegativity holds for strictly convex L;
    affine L degenerates to 0 everywhere and is rejected.
    """
    if p.dim != r.dim:
        raise DimensionMismatch(f"simplex dimensions differ: {p.dim} vs {r.dim}")
    if _is_affine(L):
        raise DomainError("affine embedding generator is degenerate (divergence vanishes identically)")
    pv, rv = p.as_array(), r.as_array()
    num = math.fsum(e_term(L, rv, pv))
    base = pv if literal_normalizer else rv
    lam = math.fsum(base / L.derivative(base))
    return num / lam
