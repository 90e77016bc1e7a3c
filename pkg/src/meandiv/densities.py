"""Positive densities on a finite support with base-measure weights.

Continuous densities are handled by carrying quadrature weights per point
(trapezoid by default), so every divergence integral becomes a finite
weighted sum over one shared execution path.
"""

from __future__ import annotations

import csv
import json
import math
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Optional

import numpy as np

from meandiv._backend import kahan_sum
from meandiv.errors import (
    BadGridSpec,
    DuplicateSupportLabel,
    MisalignedSupport,
    NonPositiveInput,
    NonPositiveValue,
    ParseError,
)


@dataclass(frozen=True)
class DiscreteDensity:
    """Positive density values over labelled support points.

    ``weights`` are per-point base-measure weights (1 for counting
    measure, quadrature weights for grids).  Values need not sum to 1.
    """

    support: tuple
    values: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        if len(self.support) != values.size or values.size != weights.size:
            raise ParseError("support, values and weights must have equal length")
        if values.size < 1:
            raise ParseError("density needs at least one support point")
        if not np.all(values > 0.0):
            raise NonPositiveInput("density values must be strictly positive")
        if not np.all(weights > 0.0):
            raise NonPositiveInput("weights must be strictly positive")
        values.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "support", tuple(self.support))
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "weights", weights)

    @property
    def n_points(self) -> int:
        return self.values.size

    def total_mass(self) -> float:
        return kahan_sum(self.weights * self.values)

    def scaled(self, lam: float) -> "DiscreteDensity":
        if lam <= 0:
            raise NonPositiveInput(f"scale must be > 0, got {lam}")
        return DiscreteDensity(self.support, lam * self.values, self.weights)


def counting_density(values: Iterable[float], support: Optional[Iterable] = None) -> DiscreteDensity:
    """Density over a counting measure (unit weights, labels '0', '1', ...)."""
    values = np.asarray(list(values), dtype=float)
    if support is None:
        support = tuple(str(i) for i in range(values.size))
    return DiscreteDensity(tuple(support), values, np.ones_like(values))


@dataclass(frozen=True)
class DensityPair:
    """Two densities aligned on identical support labels and weights."""

    p: DiscreteDensity
    q: DiscreteDensity

    def __post_init__(self):
        if self.p.support != self.q.support:
            raise MisalignedSupport("support labels differ")
        if not np.array_equal(self.p.weights, self.q.weights):
            raise MisalignedSupport("base-measure weights differ")

    @property
    def weights(self) -> np.ndarray:
        return self.p.weights

    @property
    def n_points(self) -> int:
        return self.p.n_points

    def swapped(self) -> "DensityPair":
        return DensityPair(self.q, self.p)

    def scaled(self, lam: float) -> "DensityPair":
        return DensityPair(self.p.scaled(lam), self.q.scaled(lam))


def integrate_pointwise(pair: DensityPair, integrand: Callable[[float, float], float]) -> float:
    """Sum_i w_i * integrand(p_i, q_i) with compensated accumulation."""
    terms = [
        w * integrand(pv, qv)
        for w, pv, qv in zip(pair.weights, pair.p.values, pair.q.values)
    ]
    return math.fsum(terms)


# ---------------------------------------------------------------------------
# file ingestion


def _clamp(values, rows, clamp_eps):
    values = np.asarray(values, dtype=float)
    if clamp_eps is None:
        bad = np.flatnonzero(values <= 0.0)
        if bad.size:
            i = int(bad[0])
            raise NonPositiveValue(
                f"non-positive value {values[i]} at row {rows[i]}", row=rows[i]
            )
        return values
    n_clamped = int(np.sum(values < clamp_eps))
    if n_clamped:
        warnings.warn(f"clamped {n_clamped} value(s) below {clamp_eps}", stacklevel=3)
        values = np.maximum(values, clamp_eps)
    return values


def load_density(path, format: Optional[str] = None, clamp_eps: Optional[float] = None) -> DiscreteDensity:
    """Load a density from CSV (header ``x,value[,weight]``) or JSON.

    Non-positive values are a hard error unless ``clamp_eps`` is given,
    in which case values below it are raised to it (with a warning).
    """
    path = Path(path)
    if format is None:
        format = "json" if path.suffix.lower() == ".json" else "csv"
    if format == "json":
        try:
            doc = json.loads(path.read_text())
            support = tuple(str(s) for s in doc["support"])
            values = doc["values"]
            weights = doc.get("weights") or [1.0] * len(values)
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise ParseError(f"bad JSON density file {path}: {exc}") from exc
        rows = list(range(len(support)))
    elif format == "csv":
        support, values, weights, rows = [], [], [], []
        with open(path, newline="") as fh:
            reader = csv.DictReader(fh)
            if reader.fieldnames is None or "x" not in reader.fieldnames or "value" not in reader.fieldnames:
                raise ParseError(f"{path}: expected header x,value[,weight]")
            for i, row in enumerate(reader, start=2):
                try:
                    support.append(row["x"])
                    values.append(float(row["value"]))
                    weights.append(float(row["weight"]) if row.get("weight") else 1.0)
                except (TypeError, ValueError) as exc:
                    raise ParseError(f"{path}: bad row {i}: {exc}") from exc
                rows.append(i)
        support = tuple(support)
    else:
        raise ParseError(f"unknown density format {format!r}")

    if len(set(support)) != len(support):
        seen = set()
        dup = next(s for s in support if s in seen or seen.add(s))
        raise DuplicateSupportLabel(f"{path}: duplicate support label {dup!r}")
    values = _clamp(values, rows, clamp_eps)
    return DiscreteDensity(support, values, np.asarray(weights, dtype=float))


def save_density(density: DiscreteDensity, path, format: Optional[str] = None) -> None:
    """Write a density as CSV or JSON (shortest round-trip floats)."""
    path = Path(path)
    if format is None:
        format = "json" if path.suffix.lower() == ".json" else "csv"
    if format == "json":
        doc = {
            "support": list(density.support),
            "values": [float(v) for v in density.values],
            "weights": [float(w) for w in density.weights],
        }
        path.write_text(json.dumps(doc))
    elif format == "csv":
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["x", "value", "weight"])
            for s, v, w in zip(density.support, density.values, density.weights):
                writer.writerow([s, repr(float(v)), repr(float(w))])
    else:
        raise ParseError(f"unknown density format {format!r}")


# ---------------------------------------------------------------------------
# Cauchy scale family


def trapezoid_weights(x: np.ndarray) -> np.ndarray:
    """Trapezoid quadrature weights for a sorted grid."""
    w = np.empty_like(x)
    w[1:-1] = 0.5 * (x[2:] - x[:-2])
    w[0] = 0.5 * (x[1] - x[0])
    w[-1] = 0.5 * (x[-1] - x[-2])
    return w


def cauchy_density(x, s: float):
    """Scale-Cauchy pdf p(x) = (1/pi) * s / (x^2 + s^2)."""
    x = np.asarray(x, dtype=float)
    return s / (np.pi * (x * x + s * s))


def cauchy_grid(s: float, half_width: float, n: int) -> DiscreteDensity:
    """Sample a scale-s Cauchy density on a symmetric trapezoid grid."""
    if s <= 0 or half_width <= 0:
        raise BadGridSpec("s and half_width must be > 0")
    if n < 3 or n % 2 == 0:
        raise BadGridSpec(f"n must be odd and >= 3, got {n}")
    x = np.linspace(-half_width, half_width, n)
    support = tuple(repr(float(v)) for v in x)
    return DiscreteDensity(support, cauchy_density(x, s), trapezoid_weights(x))


def cauchy_ah_alpha_closed_form(s1: float, s2: float, alpha: float) -> float:
    """Closed-form (A,H) alpha-divergence between scale-Cauchy densities.

    Derived by integrating the weighted harmonic mean of the two pdfs,
    which is itself a scaled Cauchy:

        I = (1/(alpha (1-alpha))) * (1 - s1 s2 / (D * S))
        D = alpha s2 + (1-alpha) s1
        S = sqrt((alpha s2 s1^2 + (1-alpha) s1 s2^2) / D)

    The index pairing was fixed against the quadrature oracle (reference
    duality I(s1,s2,alpha) = I(s2,s1,1-alpha) holds in this form).
    """
    if s1 <= 0 or s2 <= 0:
        raise NonPositiveInput("scales must be > 0")
    if not 0.0 < alpha < 1.0:
        raise BadGridSpec(f"alpha must be in (0, 1), got {alpha}")
    d = alpha * s2 + (1.0 - alpha) * s1
    s_mix = math.sqrt((alpha * s2 * s1 * s1 + (1.0 - alpha) * s1 * s2 * s2) / d)
    return (1.0 - s1 * s2 / (d * s_mix)) / (alpha * (1.0 - alpha))
