"""Seeded invariant suite behind the ``selftest`` CLI verb.

Each check runs the library's structural invariants (mean axioms,
divergence axioms, duality, limit consistency, dual code paths) on random
inputs drawn from a seeded generator, so a given seed is fully
deterministic.  ``break_duality`` injects a deliberate fault to prove the
harness can fail.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from meandiv import conformal, divergences, means, power
from meandiv.densities import DensityPair, counting_density


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def _random_pair(rng, n=12, spread=1.0):
    p = np.exp(rng.uniform(-spread, spread, n))
    q = np.exp(rng.uniform(-spread, spread, n))
    support = tuple(str(i) for i in range(n))
    return DensityPair(counting_density(p, support), counting_density(q, support))


_GEN_PAIRS = [
    (means.IDENTITY, means.LOG),
    (means.IDENTITY, means.RECIP),
    (means.LOG, means.RECIP),
    (means.power_generator(2.0), means.power_generator(1.0)),
]


def _check_mean_axioms(rng, _):
    worst = 0.0
    for _ in range(200):
        x, y = rng.uniform(1e-2, 100.0, 2)
        a = rng.uniform(0.0, 1.0)
        for f in (means.IDENTITY, means.LOG, means.RECIP, means.power_generator(3.0)):
            m = means.qam_weighted(f, a, x, y)
            lo, hi = min(x, y), max(x, y)
            worst = max(worst, lo - m, m - hi)
            worst = max(worst, abs(means.qam_weighted(f, a, x, x) - x) / x)
    ok = worst <= 1e-9 * 100.0
    return CheckResult("mean innerness/reflexivity", ok, f"worst violation {worst:.3e}")


def _check_dominance(rng, _):
    worst = 0.0
    for _ in range(200):
        x, y = rng.uniform(1e-2, 100.0, 2)
        a = rng.uniform(0.0, 1.0)
        for f, g in _GEN_PAIRS:
            worst = min(worst, means.qam_weighted(f, a, x, y) - means.qam_weighted(g, a, x, y))
    ok = worst >= -1e-10
    return CheckResult("QAM dominance for comparable pairs", ok, f"worst gap {worst:.3e}")


def _check_divergence_axioms(rng, _):
    worst = -0.0
    for _ in range(100):
        pair = _random_pair(rng)
        a = rng.uniform(0.05, 0.95)
        vals = [
            divergences.qa_alpha_div(means.IDENTITY, means.LOG, a, pair).value,
            power.power_alpha_div(power.PowerPair(1.0, -1.0), a, pair).value,
            divergences.zhang_rho_alpha_div(means.LOG, 1.0 - 2.0 * a, pair),
        ]
        worst = min(worst, min(vals))
        same = DensityPair(pair.p, pair.p)
        worst_same = abs(divergences.qa_alpha_div(means.IDENTITY, means.LOG, a, same).value)
        if worst_same > 1e-12 * pair.n_points:
            return CheckResult("divergence axioms D1/D2", False, f"identity violated: {worst_same:.3e}")
    ok = worst >= -1e-12 * 12
    return CheckResult("divergence axioms D1/D2", ok, f"most negative value {worst:.3e}")


def _check_reference_duality(rng, break_duality):
    worst = 0.0
    for _ in range(100):
        pair = _random_pair(rng)
        a = rng.uniform(0.05, 0.95)
        for f, g in _GEN_PAIRS:
            lhs = divergences.qa_alpha_div(f, g, a, pair).value
            rhs = divergences.qa_alpha_div(f, g, 1.0 - a, pair.swapped()).value
            if break_duality:
                rhs *= 1.0 + 1e-6
            worst = max(worst, abs(lhs - rhs) / max(abs(lhs), 1e-300))
    ok = worst <= 1e-12
    return CheckResult("reference duality", ok, f"worst relative gap {worst:.3e}")


def _check_limit_consistency(rng, _):
    worst = 0.0
    for _ in range(25):
        pair = _random_pair(rng, spread=0.7)
        for f, g in _GEN_PAIRS:
            i1 = divergences.qa_alpha_div(f, g, 1.0, pair).value
            for eps in (1e-2, 1e-3, 1e-4):
                near = divergences.qa_alpha_div(f, g, 1.0 - eps, pair).value
                worst = max(worst, abs(near - i1) / abs(i1) / eps)
    ok = worst <= 10.0
    return CheckResult("limit consistency", ok, f"worst |I_(1-eps)-I_1|/(I_1 eps) = {worst:.3f}")


def _check_conformal_identity(rng, _):
    worst = 0.0
    for _ in range(50):
        pair = _random_pair(rng)
        for f, g in _GEN_PAIRS:
            lhs = conformal.conformal_i1(f, g, pair)
            rhs = divergences.qa_alpha_div(f, g, 1.0, pair).value
            worst = max(worst, abs(lhs - rhs) / max(abs(rhs), 1e-300))
    ok = worst <= 1e-10
    return CheckResult("conformal Bregman identity", ok, f"worst relative gap {worst:.3e}")


def _check_decomposition(rng, _):
    for _ in range(50):
        pair = _random_pair(rng)
        for f, g in _GEN_PAIRS:
            kl = divergences.fg_kl(f, g, pair)
            decomposed = divergences.fg_cross_entropy(f, g, pair) - divergences.fg_entropy(f, g, pair.p)
            if kl != decomposed:
                return CheckResult("entropy decomposition", False, "not bitwise equal")
            i1 = divergences.qa_alpha_div(f, g, 1.0, pair).value
            if abs(kl - i1) > 1e-10 * max(abs(i1), 1e-300):
                return CheckResult("entropy decomposition", False, f"KL {kl} != I_1 {i1}")
    return CheckResult("entropy decomposition", True, "bitwise + matches I_1")


def _check_csiszar_homogeneity(rng, _):
    worst = 0.0
    for _ in range(30):
        pair = _random_pair(rng)
        a = rng.uniform(0.1, 0.9)
        rs = power.PowerPair(1.0, -1.0)
        direct = power.power_alpha_div(rs, a, pair).value
        via_f = power.csiszar_div(lambda u: power.csiszar_generator_rs(rs, a, u), pair)
        worst = max(worst, abs(direct - via_f) / max(abs(direct), 1e-300))
        worst = max(worst, power.homogeneity_check(rs, a, pair, 7.0) / 1e-12 * 1e-12)
        if power.homogeneity_check(rs, a, pair, 7.0) > 1e-12:
            return CheckResult("Csiszar form and homogeneity", False, "homogeneity > 1e-12")
    ok = worst <= 1e-10
    return CheckResult("Csiszar form and homogeneity", ok, f"worst relative gap {worst:.3e}")


def _check_bregman_dual_form(rng, _):
    worst = 0.0
    F = conformal.ConvexGenerator(lambda u: np.exp(u), lambda u: np.exp(u))
    for _ in range(100):
        p, q = rng.uniform(0.1, 3.0, 2)
        for f, g in ((means.IDENTITY, means.LOG), (means.power_generator(2.0), means.IDENTITY)):
            lhs = conformal.mn_bregman(f, g, F, p, q)
            rhs = conformal.mn_bregman_conformal(f, g, F, p, q)
            # mixed tolerance: near-coincident p, q drive lhs to 0 while the
            # two forms differ only by rounding noise
            worst = max(worst, abs(lhs - rhs) / (1e-3 + abs(lhs)))
    ok = worst <= 1e-10
    return CheckResult("(M,N)-Bregman dual forms", ok, f"worst relative gap {worst:.3e}")


_CHECKS = [
    _check_mean_axioms,
    _check_dominance,
    _check_divergence_axioms,
    _check_reference_duality,
    _check_limit_consistency,
    _check_conformal_identity,
    _check_decomposition,
    _check_csiszar_homogeneity,
    _check_bregman_dual_form,
]


def run_selftest(seed: int = 0, break_duality: bool = False) -> list[CheckResult]:
    results = []
    for i, check in enumerate(_CHECKS):
        rng = np.random.default_rng([seed, i])
        results.append(check(rng, break_duality))
    return results
