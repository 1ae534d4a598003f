"""Simulation harness: bit determinism, chunk invariance, absorption
statistics against the analytic law, and put estimates against the
quadrature oracle."""

import math

import numpy as np
import pytest

from atomvol import CevParams, McConfig, mc_put_price, mc_smile, simulate_terminals
from atomvol.errors import DomainError
from atomvol.montecarlo import counter_normals

PRINTED = CevParams(s0=0.05, sigma=0.2, rho=0.6, T=1.2)


class TestConfig:
    def test_validation(self):
        with pytest.raises(DomainError):
            McConfig(n_paths=0, n_steps=10, seed=1)
        with pytest.raises(DomainError):
            McConfig(n_paths=10, n_steps=0, seed=1)


class TestCounterNormals:
    def test_pure_function(self):
        streams = np.arange(100, dtype=np.uint64)
        a = counter_normals(7, streams, 3, 100)
        b = counter_normals(7, streams, 3, 100)
        assert np.array_equal(a, b)

    def test_seed_and_step_sensitivity(self):
        streams = np.arange(100, dtype=np.uint64)
        base = counter_normals(7, streams, 3, 100)
        assert not np.array_equal(base, counter_normals(8, streams, 3, 100))
        assert not np.array_equal(base, counter_normals(7, streams, 4, 100))

    def test_moments_are_standard_normal(self):
        streams = np.arange(200_000, dtype=np.uint64)
        z = counter_normals(123, streams, 0, 1)
        assert abs(z.mean()) < 3.0 / math.sqrt(z.size)
        assert abs(z.std() - 1.0) < 3.0 / math.sqrt(z.size)
        assert abs((z**3).mean()) < 3.0 * math.sqrt(15.0 / z.size)


class TestSimulate:
    def test_bit_determinism(self):
        cfg = McConfig(n_paths=5000, n_steps=30, seed=42)
        a = simulate_terminals(PRINTED, cfg)
        b = simulate_terminals(PRINTED, cfg)
        assert a.tobytes() == b.tobytes()

    def test_chunk_invariance(self):
        cfg = McConfig(n_paths=3000, n_steps=25, seed=9)
        full = simulate_terminals(PRINTED, cfg, chunk_size=3000)
        odd = simulate_terminals(PRINTED, cfg, chunk_size=173)
        tiny = simulate_terminals(PRINTED, cfg, chunk_size=1)
        assert np.array_equal(full, odd)
        assert np.array_equal(full, tiny)

    def test_zero_vol_is_frozen(self):
        params = CevParams(s0=0.05, sigma=0.0, rho=0.6, T=1.2)
        out = simulate_terminals(params, McConfig(n_paths=500, n_steps=20, seed=3))
        assert np.all(out == 0.05)
        assert np.count_nonzero(out == 0.0) == 0

    def test_antithetic_pairing(self):
        # one Euler step: paired paths move symmetrically around the spot
        cfg = McConfig(n_paths=6, n_steps=1, seed=5, antithetic=True)
        out = simulate_terminals(PRINTED, cfg)
        for even in range(0, 6, 2):
            pair_sum = out[even] + out[even + 1]
            assert pair_sum == pytest.approx(2.0 * 0.05, rel=1e-12)

    def test_antithetic_odd_path_count(self):
        # trailing unpaired path uses its pair's draw with positive sign
        odd = simulate_terminals(PRINTED, McConfig(n_paths=7, n_steps=4, seed=5, antithetic=True))
        even = simulate_terminals(PRINTED, McConfig(n_paths=8, n_steps=4, seed=5, antithetic=True))
        assert np.array_equal(odd, even[:7])

    def test_absorption_frequency_matches_analytic(self, printed_model):
        # enough steps that the discretization bias is inside the noise band
        cfg = McConfig(n_paths=20_000, n_steps=512, seed=2024)
        out = simulate_terminals(PRINTED, cfg)
        frac = np.mean(out == 0.0)
        se = math.sqrt(printed_model.mass * (1 - printed_model.mass) / cfg.n_paths)
        assert abs(frac - printed_model.mass) <= 3.0 * se

    def test_martingale_mean(self):
        cfg = McConfig(n_paths=40_000, n_steps=100, seed=77)
        out = simulate_terminals(PRINTED, cfg)
        se = out.std(ddof=1) / math.sqrt(out.size)
        assert abs(out.mean() - 0.05) <= 4.0 * se


class TestPutPrice:
    def test_strike_below_all_paths(self):
        sample = np.array([1.0, 2.0, 3.0])
        price, se = mc_put_price(sample, 0.5)
        assert price == 0.0 and se == 0.0

    def test_large_strike_dominance(self):
        sample = np.array([0.5, 1.5, 2.0])
        K = 1e6
        price, _ = mc_put_price(sample, K)
        assert price / K == pytest.approx(1.0, abs=1e-5)

    def test_against_quadrature_oracle(self, printed_model):
        cfg = McConfig(n_paths=50_000, n_steps=512, seed=31)
        sample = simulate_terminals(PRINTED, cfg)
        K = 0.05 * math.exp(-4.0)
        price, se = mc_put_price(sample, K)
        assert abs(price - printed_model.put_price(K)) <= 3.0 * se

    def test_domain(self):
        with pytest.raises(DomainError):
            mc_put_price(np.array([1.0]), 0.0)


class TestMcSmile:
    def test_deterministic_estimates(self):
        cfg = McConfig(n_paths=4000, n_steps=50, seed=8)
        grid = [-2.0, -3.0, -4.0]
        a = mc_smile(PRINTED, cfg, grid)
        b = mc_smile(PRINTED, cfg, grid)
        assert a == b

    def test_undefined_marker_when_no_mass_below_strike(self):
        # halved vol: absorption is essentially impossible, so the deep
        # put prices at exactly zero and the entry is undefined
        params = CevParams(s0=0.05, sigma=0.1, rho=0.6, T=1.2)
        cfg = McConfig(n_paths=50, n_steps=20, seed=12)
        estimates = mc_smile(params, cfg, [-8.0])
        assert estimates[0].normalized_iv is None
        assert estimates[0].n_absorbed == 0

    def test_normalized_value_matches_inversion(self, printed_model):
        from atomvol import MarketSlice, OptionQuote, implied_vol

        cfg = McConfig(n_paths=30_000, n_steps=100, seed=4)
        grid = [-3.0]
        est = mc_smile(PRINTED, cfg, grid)[0]
        sample = simulate_terminals(PRINTED, cfg)
        K = 0.05 * math.exp(-3.0)
        price, _ = mc_put_price(sample, K)
        iv = implied_vol(MarketSlice(0.05, 1.2), OptionQuote(K, "put", price))
        assert est.normalized_iv == pytest.approx(iv * math.sqrt(1.2) / 3.0, rel=1e-12)

    def test_rejects_nonnegative_moneyness(self):
        cfg = McConfig(n_paths=10, n_steps=5, seed=1)
        with pytest.raises(DomainError):
            mc_smile(PRINTED, cfg, [-1.0, 0.0])
