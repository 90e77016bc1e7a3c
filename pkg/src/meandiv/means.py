"""Generators, quasi-arithmetic and power means, E-terms, comparability.

A quasi-arithmetic mean is ``f^{-1}((1-alpha) f(x) + alpha f(y))`` for a
strictly increasing generator ``f``.  All generators are normalized to be
increasing (a mean is unchanged under ``f -> -f``), so dominance of two
means reduces to convexity of ``f o g^{-1}``, which we certify by sampling.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from meandiv.errors import (
    AlphaOutOfRange,
    GridTooSmall,
    NonPositiveInput,
)

# |r| at or below this uses the exact geometric branch of the power mean
POWER_R_GEOMETRIC_THRESHOLD = 1e-8

# default sampling grid for the comparability certificate
DEFAULT_COMPARABILITY_GRID = np.logspace(-3.0, 3.0, 256)

ArrayLike = "float | np.ndarray"


def _require_positive(**named) -> None:
    for name, value in named.items():
        arr = np.asarray(value, dtype=float)
        if arr.size == 0 or not np.all(arr > 0.0):
            raise NonPositiveInput(f"{name} must be > 0, got {value!r}")


def _require_alpha_closed(alpha: float) -> None:
    if not 0.0 <= alpha <= 1.0:
        raise AlphaOutOfRange(f"alpha must be in [0, 1], got {alpha}")


@dataclass(frozen=True, eq=False)
class Generator:
    """Strictly increasing scalar generator of a quasi-arithmetic mean.

    ``eval``, ``inverse`` and ``derivative`` must be vectorized (accept
    numpy arrays); ``derivative`` must be > 0 on (0, inf).  Hashed by
    identity so comparability certificates can be cached per pair.
    """

    name: str
    eval: Callable = field(repr=False)
    inverse: Callable = field(repr=False)
    derivative: Callable = field(repr=False)

    def affine(self, a: float, b: float) -> "Generator":
        """Generator a*f + b (a > 0); generates the identical mean."""
        if a <= 0:
            raise NonPositiveInput(f"affine scale must be > 0, got {a}")
        return Generator(
            name=f"{a}*{self.name}+{b}",
            eval=lambda u: a * self.eval(u) + b,
            inverse=lambda y: self.inverse((y - b) / a),
            derivative=lambda u: a * self.derivative(u),
        )

    @staticmethod
    def from_callables(
        name: str,
        eval: Callable,
        derivative: Callable,
        inverse: Optional[Callable] = None,
        bracket: tuple[float, float] = (1e-12, 1e12),
    ) -> "Generator":
        """Build a generator; a missing inverse is supplied by bisection
        over ``bracket`` at 1e-14 relative tolerance."""
        if inverse is None:
            from scipy.optimize import brentq

            lo, hi = bracket

            def _inv_scalar(y):
                return brentq(lambda u: eval(u) - y, lo, hi, rtol=1e-14)

            inverse = np.vectorize(_inv_scalar, otypes=[float])
        return Generator(name=name, eval=eval, inverse=inverse, derivative=derivative)


def _make_identity() -> Generator:
    return Generator(
        "identity",
        eval=lambda u: np.asarray(u, dtype=float) + 0.0,
        inverse=lambda y: np.asarray(y, dtype=float) + 0.0,
        derivative=lambda u: np.ones_like(np.asarray(u, dtype=float)),
    )


def _make_log() -> Generator:
    return Generator(
        "log",
        eval=np.log,
        inverse=np.exp,
        derivative=lambda u: 1.0 / np.asarray(u, dtype=float),
    )


def _make_recip() -> Generator:
    # harmonic generator normalized increasing: -1/u (mean unchanged)
    return Generator(
        "recip",
        eval=lambda u: -1.0 / np.asarray(u, dtype=float),
        inverse=lambda y: -1.0 / np.asarray(y, dtype=float),
        derivative=lambda u: np.asarray(u, dtype=float) ** -2.0,
    )


def power_generator(r: float) -> Generator:
    """Generator sign(r)*u^r of the power mean P_r; log for r = 0."""
    if r == 0.0:
        g = _make_log()
        return Generator("pow:0", g.eval, g.inverse, g.derivative)
    sgn = 1.0 if r > 0 else -1.0
    return Generator(
        f"pow:{r:g}",
        eval=lambda u: sgn * np.asarray(u, dtype=float) ** r,
        inverse=lambda y: (sgn * np.asarray(y, dtype=float)) ** (1.0 / r),
        derivative=lambda u: abs(r) * np.asarray(u, dtype=float) ** (r - 1.0),
    )


IDENTITY = _make_identity()
LOG = _make_log()
RECIP = _make_recip()

_REGISTRY = {
    "identity": IDENTITY,
    "log": LOG,
    "recip": RECIP,
}


def get_generator(gen_id: str) -> Generator:
    """Resolve a registry id: "identity", "log", "recip" or "pow:<r>"."""
    if gen_id in _REGISTRY:
        return _REGISTRY[gen_id]
    if gen_id.startswith("pow:"):
        try:
            r = float(gen_id.split(":", 1)[1])
        except ValueError as exc:
            raise KeyError(f"bad power generator id {gen_id!r}") from exc
        return power_generator(r)
    raise KeyError(f"unknown generator id {gen_id!r}")


def qam_weighted(f: Generator, alpha: float, x, y):
    """Weighted quasi-arithmetic mean f^{-1}((1-alpha) f(x) + alpha f(y))."""
    _require_positive(x=x, y=y)
    _require_alpha_closed(alpha)
    return f.inverse((1.0 - alpha) * f.eval(x) + alpha * f.eval(y))


def power_mean(r: float, alpha: float, x, y):
    """Weighted power mean ((1-alpha) x^r + alpha y^r)^(1/r).

    |r| <= 1e-8 switches to the exact weighted geometric mean; larger |r|
    is evaluated in log space to avoid cancellation and overflow.
    """
    _require_positive(x=x, y=y)
    _require_alpha_closed(alpha)
    lx = np.log(np.asarray(x, dtype=float))
    ly = np.log(np.asarray(y, dtype=float))
    if abs(r) <= POWER_R_GEOMETRIC_THRESHOLD:
        return np.exp((1.0 - alpha) * lx + alpha * ly)
    a = r * lx
    b = r * ly
    m = np.maximum(a, b)
    return np.exp((m + np.log((1.0 - alpha) * np.exp(a - m) + alpha * np.exp(b - m))) / r)


def e_term(f: Generator, p, q):
    """E_f(p, q) = (f(q) - f(p)) / f'(p); zero iff p = q."""
    _require_positive(p=p, q=q)
    return (f.eval(q) - f.eval(p)) / f.derivative(p)


def e_term_power(r: float, p, q):
    """E_r(p, q) = (q^r - p^r) / (r p^(r-1)) for r != 0, p*log(q/p) at r = 0.

    Evaluated as p * expm1(r * log(q/p)) / r, which is stable for small r
    and for q/p near 1.
    """
    _require_positive(p=p, q=q)
    p = np.asarray(p, dtype=float)
    d = np.log(np.asarray(q, dtype=float)) - np.log(p)
    if r == 0.0:
        return p * d
    return p * np.expm1(r * d) / r


@dataclass(frozen=True)
class ComparabilityResult:
    """Outcome of the sampled strict-comparability certificate.

    ``witness`` is the violating triple ((x_a, h_a), (x_b, h_b), (x_c, h_c))
    in the transformed coordinates, or None when comparable.
    """

    comparable: bool
    witness: Optional[tuple] = None

    def __bool__(self) -> bool:
        return self.comparable


def check_strict_comparability(
    f: Generator,
    g: Generator,
    grid: Optional[Sequence[float]] = None,
) -> ComparabilityResult:
    """Sampled certificate that h = f o g^{-1} is strictly convex.

    Evaluates h on the g-image of the grid and checks every adjacent
    triple lies strictly below its chord (margin 1e-12 * |h(b)|).  This
    certifies comparability on the samples only, not analytically.
    """
    u = DEFAULT_COMPARABILITY_GRID if grid is None else np.asarray(grid, dtype=float)
    if u.size < 3:
        raise GridTooSmall("comparability grid needs >= 3 points")
    if np.any(np.diff(u) <= 0) or np.any(u <= 0):
        raise GridTooSmall("grid must be strictly increasing and positive")
    x = np.asarray(g.eval(u), dtype=float)  # strictly increasing since g is
    h = np.asarray(f.eval(u), dtype=float)  # h(x_i) = f(g^{-1}(x_i)) = f(u_i)
    a, b, c = x[:-2], x[1:-1], x[2:]
    ha, hb, hc = h[:-2], h[1:-1], h[2:]
    chord = ((c - b) * ha + (b - a) * hc) / (c - a)
    margin = 1e-12 * np.abs(hb)
    bad = chord - hb <= margin
    if np.any(bad):
        i = int(np.argmax(bad))
        witness = ((a[i], ha[i]), (b[i], hb[i]), (c[i], hc[i]))
        return ComparabilityResult(False, witness)
    return ComparabilityResult(True)


def taylor_qam_approx(f: Generator, alpha: float, p, q):
    """First-order expansion p + alpha * E_f(p, q) of the weighted QAM
    around alpha = 0 (test helper; error is o(alpha))."""
    _require_positive(p=p, q=q)
    return p + alpha * e_term(f, p, q)


@dataclass(frozen=True)
class WeightedMeanSpec:
    """A weighted mean M_alpha(x, y): quasi-arithmetic or power family.

    ``symmetric`` means M_alpha(x, y) = M_{1-alpha}(y, x); ``homogeneous``
    means M_alpha(c x, c y) = c M_alpha(x, y).  Both hold for every
    built-in family.
    """

    kind: str  # "quasi-arithmetic" | "power"
    generator: Optional[Generator] = None
    r: Optional[float] = None
    symmetric: bool = True
    homogeneous: bool = False

    @staticmethod
    def quasi_arithmetic(generator: Generator) -> "WeightedMeanSpec":
        homogeneous = generator.name in ("identity", "log", "recip") or generator.name.startswith("pow:")
        return WeightedMeanSpec("quasi-arithmetic", generator=generator, homogeneous=homogeneous)

    @staticmethod
    def power(r: float) -> "WeightedMeanSpec":
        return WeightedMeanSpec("power", r=r, homogeneous=True)

    def as_generator(self) -> Generator:
        if self.kind == "power":
            return power_generator(self.r)
        assert self.generator is not None
        return self.generator

    def evaluate(self, alpha: float, x, y):
        if self.kind == "power":
            return power_mean(self.r, alpha, x, y)
        return qam_weighted(self.generator, alpha, x, y)


ARITHMETIC = WeightedMeanSpec.power(1.0)
GEOMETRIC = WeightedMeanSpec.power(0.0)
HARMONIC = WeightedMeanSpec.power(-1.0)
