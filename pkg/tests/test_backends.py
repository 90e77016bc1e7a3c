"""Equivalence of the compiled and pure-Python kernel backends.

The compiled extension is optional; when it is absent the cross-checks
are skipped and only the fallback invariants run.
"""

import os
import subprocess
import sys

import numpy as np
import pytest

import meandiv
from meandiv import _core_py as pure

try:
    from meandiv import _core as compiled
except ImportError:
    compiled = None

needs_compiled = pytest.mark.skipif(compiled is None, reason="compiled extension not built")


def random_arrays(rng, n=5000):
    p = np.exp(rng.uniform(-4, 4, n))
    q = np.exp(rng.uniform(-4, 4, n))
    w = np.exp(rng.uniform(-1, 1, n))
    return p, q, w


class TestPureKernels:
    def test_kahan_sum_matches_fsum(self, rng):
        x = rng.uniform(-1, 1, 10_000) * 10.0 ** rng.integers(-8, 8, 10_000)
        import math

        assert pure.kahan_sum(x) == math.fsum(x)

    def test_power_terms_zero_when_r_equals_path(self, rng):
        p, q, w = random_arrays(rng, 100)
        total, min_term = pure.weighted_power_terms(1.0, -1.0, 0.5, p, p, w)
        assert total == pytest.approx(0.0, abs=1e-12)
        assert min_term == pytest.approx(0.0, abs=1e-15)


class TestBackendAgreement:
    @needs_compiled
    def test_kahan_sum(self, rng):
        x = rng.uniform(-1, 1, 50_000)
        assert compiled.kahan_sum(x) == pytest.approx(pure.kahan_sum(x), rel=1e-15)

    @needs_compiled
    def test_weighted_power_terms(self, rng):
        p, q, w = random_arrays(rng)
        for r, s, a in [(1.0, 0.0, 0.5), (1.0, -1.0, 0.3), (2.0, 1.0, 0.9),
                        (3.0, 0.5, 0.1), (0.0, -1.0, 0.7)]:
            tc, mc = compiled.weighted_power_terms(r, s, a, p, q, w)
            tp, mp = pure.weighted_power_terms(r, s, a, p, q, w)
            assert tc == pytest.approx(tp, rel=1e-12)
            assert mc == pytest.approx(mp, rel=1e-9, abs=1e-15)

    @needs_compiled
    def test_power_limit_terms(self, rng):
        p, q, w = random_arrays(rng)
        for r, s in [(1.0, 0.0), (1.0, -1.0), (2.0, 1.0), (0.0, -1.0)]:
            tc, mc = compiled.power_limit_terms(r, s, p, q, w)
            tp, mp = pure.power_limit_terms(r, s, p, q, w)
            assert tc == pytest.approx(tp, rel=1e-12)
            assert mc == pytest.approx(mp, rel=1e-9, abs=1e-15)

    @needs_compiled
    def test_readonly_arrays_accepted(self, rng):
        p, q, w = random_arrays(rng, 50)
        for arr in (p, q, w):
            arr.setflags(write=False)
        total, _ = compiled.weighted_power_terms(1.0, -1.0, 0.4, p, q, w)
        assert np.isfinite(total)


class TestEnvSelection:
    def test_env_var_forces_python_backend(self):
        code = (
            "import meandiv; print(meandiv.BACKEND)"
        )
        env = dict(os.environ, MEANDIV_PURE_PYTHON="1")
        out = subprocess.run(
            [sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True
        )
        assert out.stdout.strip() == "python"

    def test_default_backend_reported(self):
        assert meandiv.BACKEND in ("cython", "python")

    @needs_compiled
    def test_divergence_value_backend_independent(self, tmp_path):
        code = (
            "from meandiv.power import PowerPair, power_alpha_div\n"
            "from meandiv.densities import DensityPair, counting_density\n"
            "pair = DensityPair(counting_density([0.5, 1.5, 2.5]), counting_density([1.0, 1.0, 2.0]))\n"
            "print(repr(power_alpha_div(PowerPair(1.0, -1.0), 0.3, pair).value))\n"
        )
        outs = {}
        for name, extra in (("cython", {}), ("python", {"MEANDIV_PURE_PYTHON": "1"})):
            env = dict(os.environ)
            env.pop("MEANDIV_PURE_PYTHON", None)
            env.update(extra)
            res = subprocess.run(
                [sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True
            )
            outs[name] = float(res.stdout.strip())
        assert outs["cython"] == pytest.approx(outs["python"], rel=1e-14)
