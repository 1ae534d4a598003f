"""Euler-Maruyama simulation of the CEV SDE with absorption at zero.

Randomness comes from a stateless counter-based construction: the
SplitMix64 output function (golden-gamma Weyl increment followed by
Stafford's mix13 finalizer) evaluated at an index composed from
(seed, stream, step), pushed through the inverse normal CDF.  Every
draw is a pure function of those coordinates, so results are bit
reproducible, independent of chunking, and safe to evaluate in
parallel in any order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy.special import ndtri

from atomvol.blackscholes import MarketSlice, OptionQuote, implied_vol
from atomvol.cev import CevParams
from atomvol.errors import DomainError, NoSolutionError

__all__ = [
    "McConfig",
    "McSmileEstimate",
    "counter_normals",
    "simulate_terminals",
    "mc_put_price",
    "mc_smile",
]

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX_1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX_2 = np.uint64(0x94D049BB133111EB)


@dataclass(frozen=True)
class McConfig:
    """Reproducible simulation spec; identical config means identical output."""

    n_paths: int
    n_steps: int
    seed: int
    antithetic: bool = False

    def __post_init__(self):
        if self.n_paths < 1:
            raise DomainError(f"n_paths must be >= 1, got {self.n_paths}")
        if self.n_steps < 1:
            raise DomainError(f"n_steps must be >= 1, got {self.n_steps}")


@dataclass(frozen=True)
class McSmileEstimate:
    """One normalized-smile point: iv * sqrt(T) / |k| plus sampling info.

    normalized_iv is None where the sampled put price violates the
    no-arbitrage band (reported undefined rather than clamped).
    """

    k: float
    normalized_iv: Optional[float]
    std_err: float
    n_absorbed: int


def _mix64(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * _MIX_1
    z = (z ^ (z >> np.uint64(27))) * _MIX_2
    return z ^ (z >> np.uint64(31))


def counter_normals(
    seed: int, stream: np.ndarray, step: int, n_steps: int
) -> np.ndarray:
    """Standard normal draws for the given streams at one time step.

    Pure function of (seed, stream, step): draw = ndtri of the 53-bit
    uniform built from SplitMix64 evaluated at index stream*n_steps+step.
    """
    with np.errstate(over="ignore"):
        seed_u = np.uint64(int(seed) % (1 << 64))
        idx = stream.astype(np.uint64) * np.uint64(n_steps) + np.uint64(step)
        raw = _mix64(seed_u + _GOLDEN * (idx + np.uint64(1)))
    uniform = (raw >> np.uint64(11)).astype(np.float64) * 2.0**-53 + 2.0**-54
    return ndtri(uniform)


def simulate_terminals(
    params: CevParams, cfg: McConfig, chunk_size: int = 65536
) -> np.ndarray:
    """Terminal CEV values under Euler stepping with full absorption.

    A path is absorbed the first time its Euler update lands at or below
    zero and stays at zero afterwards.  chunk_size only controls memory
    and parallel granularity; the output is bit-identical for any value.
    """
    if chunk_size < 1:
        raise DomainError(f"chunk_size must be >= 1, got {chunk_size}")
    dt = params.T / cfg.n_steps
    sqdt = math.sqrt(dt)
    out = np.empty(cfg.n_paths, dtype=np.float64)
    for start in range(0, cfg.n_paths, chunk_size):
        stop = min(start + chunk_size, cfg.n_paths)
        paths = np.arange(start, stop, dtype=np.uint64)
        if cfg.antithetic:
            streams = paths >> np.uint64(1)
            signs = np.where(paths & np.uint64(1), -1.0, 1.0)
        else:
            streams = paths
            signs = None
        S = np.full(stop - start, params.s0)
        alive = np.ones(stop - start, dtype=bool)
        for step in range(cfg.n_steps):
            idx_alive = np.flatnonzero(alive)
            if idx_alive.size == 0:
                break
            z = counter_normals(cfg.seed, streams[idx_alive], step, cfg.n_steps)
            if signs is not None:
                z = z * signs[idx_alive]
            Sa = S[idx_alive]
            Sa = Sa + params.sigma * Sa**params.rho * sqdt * z
            dead = Sa <= 0.0
            Sa[dead] = 0.0
            S[idx_alive] = Sa
            alive[idx_alive[dead]] = False
        out[start:stop] = S
    return out


def mc_put_price(sample: np.ndarray, K: float) -> tuple[float, float]:
    """Sample mean and standard error of the put payoff (K - S)^+."""
    if not (K > 0.0 and math.isfinite(K)):
        raise DomainError(f"strike must be positive, got {K}")
    payoff = np.maximum(K - np.asarray(sample, dtype=float), 0.0)
    price = float(payoff.mean())
    if payoff.size > 1:
        std_err = float(payoff.std(ddof=1) / math.sqrt(payoff.size))
    else:
        std_err = 0.0
    return price, std_err


def mc_smile(
    params: CevParams, cfg: McConfig, k_grid: Sequence[float]
) -> list[McSmileEstimate]:
    """Normalized Monte Carlo smile k -> iv(k) * sqrt(T) / |k| on the left wing.

    One terminal sample serves the whole grid.  Strikes are K = s0*e^k
    with k < 0; put prices outside (0, K) yield undefined entries.
    """
    k_grid = [float(k) for k in k_grid]
    if any(k >= 0.0 for k in k_grid):
        raise DomainError("mc_smile expects negative log-moneyness values")
    sample = simulate_terminals(params, cfg)
    n_absorbed = int(np.count_nonzero(sample == 0.0))
    market = MarketSlice(x0=params.s0, T=params.T)
    sqT = math.sqrt(params.T)
    estimates = []
    for k in k_grid:
        K = params.s0 * math.exp(k)
        price, std_err = mc_put_price(sample, K)
        normalized = None
        if 0.0 < price < K:
            try:
                iv = implied_vol(market, OptionQuote(K, "put", price))
                normalized = iv * sqT / abs(k)
            except NoSolutionError:
                normalized = None
        estimates.append(
            McSmileEstimate(
                k=k, normalized_iv=normalized, std_err=std_err, n_absorbed=n_absorbed
            )
        )
    return estimates
