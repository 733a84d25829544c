"""Reproducible counter-based random streams.

Every stochastic operation draws from a stream identified by a 64-bit master
seed plus a tuple of context integers (the stream key, e.g. ``(n, replicate,
arm)``).  The t-th output of a stream is a pure function of (seed, key, t) --
a SplitMix64 sequence -- so results are identical across platforms, runs,
chunk sizes and thread counts.  Helper functions expose vectorized draws for
whole replicate batches without materializing stream objects.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np
from scipy.special import gammaln

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB

_U64_GAMMA = np.uint64(_GAMMA)
_U64_MIX1 = np.uint64(_MIX1)
_U64_MIX2 = np.uint64(_MIX2)

# (k + 0.5) * 2**-53 maps the top 53 bits to the open interval (0, 1),
# keeping log/inverse transforms finite.
_TO_UNIT = 2.0 ** -53


def _mix64(z: int) -> int:
    z &= _MASK
    z ^= z >> 30
    z = (z * _MIX1) & _MASK
    z ^= z >> 27
    z = (z * _MIX2) & _MASK
    z ^= z >> 31
    return z


def _mix64_array(z: np.ndarray) -> np.ndarray:
    z = z.astype(np.uint64, copy=True)
    with np.errstate(over="ignore"):
        z ^= z >> np.uint64(30)
        z *= _U64_MIX1
        z ^= z >> np.uint64(27)
        z *= _U64_MIX2
        z ^= z >> np.uint64(31)
    return z


def _absorb(state: int, component: int) -> int:
    return _mix64(state ^ ((component + _GAMMA) & _MASK))


def derive_state(seed: int, key: tuple[int, ...]) -> int:
    """Initial stream state for (seed, key); key components must be nonnegative ints."""
    if seed < 0:
        raise ValueError("seed must be a nonnegative integer")
    state = _mix64((seed + _GAMMA) & _MASK)
    for component in key:
        if component < 0:
            raise ValueError("stream key components must be nonnegative integers")
        state = _absorb(state, int(component))
    return state


class RngStream:
    """A deterministic uniform stream addressed by (seed, key).

    Successive calls continue the sequence; two streams constructed with the
    same seed and key always produce identical draws.
    """

    def __init__(self, seed: int, key: tuple[int, ...] = ()):
        self.seed = int(seed)
        self.key = tuple(int(k) for k in key)
        self._state0 = derive_state(self.seed, self.key)
        self._count = 0

    def uniforms(self, count: int) -> np.ndarray:
        """Next ``count`` uniforms in the open interval (0, 1)."""
        if count < 0:
            raise ValueError("count must be nonnegative")
        idx = np.arange(self._count + 1, self._count + count + 1, dtype=np.uint64)
        self._count += count
        with np.errstate(over="ignore"):
            raw = _mix64_array(np.uint64(self._state0) + idx * _U64_GAMMA)
        return ((raw >> np.uint64(11)).astype(np.float64) + 0.5) * _TO_UNIT

    def uniform(self) -> float:
        return float(self.uniforms(1)[0])


@lru_cache(maxsize=4096)
def _binomial_cdf_table(n: int, p: float) -> np.ndarray:
    """Cumulative Binomial(n, p) probabilities over k = 0..n, last entry exactly 1."""
    if n == 0 or p == 0.0:
        table = np.zeros(n + 1)
        table[:] = 1.0
        return table
    if p == 1.0:
        table = np.zeros(n + 1)
        table[-1] = 1.0
        return table
    k = np.arange(n + 1, dtype=float)
    log_pmf = (
        gammaln(n + 1.0)
        - gammaln(k + 1.0)
        - gammaln(n - k + 1.0)
        + k * np.log(p)
        + (n - k) * np.log1p(-p)
    )
    cdf = np.cumsum(np.exp(log_pmf))
    cdf = np.minimum(cdf, 1.0)
    cdf[-1] = 1.0
    cdf.setflags(write=False)
    return cdf


def binomial_from_uniforms(u: np.ndarray, n: int, p: float) -> np.ndarray:
    """Invert the Binomial(n, p) CDF at each uniform (one uniform per draw)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    table = _binomial_cdf_table(n, float(p))
    return np.searchsorted(table, np.asarray(u), side="left").astype(np.int64)


def binomial_sample(rng: RngStream, n: int, p: float, size: int | None = None):
    """Binomial draws by CDF inversion; deterministic given the stream."""
    count = 1 if size is None else size
    draws = binomial_from_uniforms(rng.uniforms(count), n, p)
    if size is None:
        return int(draws[0])
    return draws


def standard_normals(rng: RngStream, count: int) -> np.ndarray:
    """Standard normal draws via Box-Muller (two uniforms per pair)."""
    pairs = (count + 1) // 2
    u = rng.uniforms(2 * pairs)
    u1, u2 = u[:pairs], u[pairs:]
    r = np.sqrt(-2.0 * np.log(u1))
    theta = 2.0 * np.pi * u2
    z = np.concatenate([r * np.cos(theta), r * np.sin(theta)])
    return z[:count]


def _gamma_at_least_one(rng: RngStream, shape: float, count: int) -> np.ndarray:
    """Marsaglia-Tsang squeeze sampler for Gamma(shape) with shape >= 1."""
    d = shape - 1.0 / 3.0
    c = 1.0 / np.sqrt(9.0 * d)
    out = np.empty(count)
    remaining = np.arange(count)
    while remaining.size:
        z = standard_normals(rng, remaining.size)
        u = rng.uniforms(remaining.size)
        v = (1.0 + c * z) ** 3
        ok = (v > 0) & (np.log(u) < 0.5 * z * z + d - d * v + d * np.log(np.maximum(v, 1e-300)))
        out[remaining[ok]] = d * v[ok]
        remaining = remaining[~ok]
    return out


def gamma_sample(rng: RngStream, shape: float, count: int) -> np.ndarray:
    """Gamma(shape, 1) draws; shapes below 1 use the boost G(a) = G(a+1) * U^(1/a)."""
    if shape <= 0:
        raise ValueError("shape must be positive")
    if shape >= 1.0:
        return _gamma_at_least_one(rng, shape, count)
    g = _gamma_at_least_one(rng, shape + 1.0, count)
    u = rng.uniforms(count)
    return g * u ** (1.0 / shape)


def beta_sample(rng: RngStream, p, size: int | None = None):
    """Beta(p.alpha, p.beta) draws as a ratio of two gamma variates."""
    count = 1 if size is None else size
    x = gamma_sample(rng, p.alpha, count)
    y = gamma_sample(rng, p.beta, count)
    draws = x / (x + y)
    # ratio is in (0, 1) almost surely; clip guards exact-zero gamma underflow
    draws = np.clip(draws, _TO_UNIT * 0.5, 1.0 - 2.0 ** -53)
    if size is None:
        return float(draws[0])
    return draws


def replicate_binomials(
    seed: int,
    key_prefix: tuple[int, ...],
    replicates: int,
    key_suffix: tuple[int, ...],
    n: int,
    p: float,
) -> np.ndarray:
    """First binomial draw of each stream (seed, *key_prefix, j, *key_suffix).

    Equivalent to ``binomial_sample(RngStream(seed, key_prefix + (j,) +
    key_suffix), n, p)`` for j = 0..replicates-1, computed in one vectorized
    pass so large replicate batches stay cheap.
    """
    state = derive_state(seed, key_prefix)
    j = np.arange(replicates, dtype=np.uint64)
    with np.errstate(over="ignore"):
        states = _mix64_array(np.uint64(state) ^ (j + _U64_GAMMA))
        for component in key_suffix:
            if component < 0:
                raise ValueError("stream key components must be nonnegative integers")
            states = _mix64_array(states ^ (np.uint64(component) + _U64_GAMMA))
        raw = _mix64_array(states + _U64_GAMMA)
    u = ((raw >> np.uint64(11)).astype(np.float64) + 0.5) * _TO_UNIT
    return binomial_from_uniforms(u, n, p)
