"""Counter-based deterministic random streams.

Every draw is a pure function of (seed, counter): the counter is mixed
through splitmix64 and the resulting 53-bit uniform is mapped to a normal
deviate by the inverse CDF (Wichura's AS241 double-precision
approximation).  This makes any partitioning of the counter space --
across samples, vertices, or threads -- produce bit-identical values.
The mixing function and inverse-CDF transform are part of the stream
contract and must not change within a major version.

The kernels are numba-compiled; per-element purity keeps parallel
execution bit-identical to serial.
"""

from __future__ import annotations

import numba
import numpy as np

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)


@numba.njit(inline="always")
def _mix(x: np.uint64) -> np.uint64:
    z = x + np.uint64(0x9E3779B97F4A7C15)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


@numba.njit(inline="always")
def _to_uniform(z: np.uint64) -> np.float64:
    # 53-bit mantissa, offset half an ulp: result lies strictly in (0, 1)
    return (np.float64(z >> np.uint64(11)) + 0.5) * (2.0**-53)


@numba.njit(inline="always")
def _inv_normal_cdf(p: np.float64) -> np.float64:
    # AS241 (PPND16): max relative error about 1e-16 for p in (0, 1)
    q = p - 0.5
    if abs(q) <= 0.425:
        r = 0.180625 - q * q
        num = (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r
                    + 6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r
                  + 1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r
                + 1.3314166789178437745e2) * r + 3.3871328727963666080e0)
        den = (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r
                    + 3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r
                  + 5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r
                + 4.2313330701600911252e1) * r + 1.0)
        return q * num / den
    r = p if q < 0.0 else 1.0 - p
    r = np.sqrt(-np.log(r))
    if r <= 5.0:
        r = r - 1.6
        num = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r
                    + 2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r
                  + 3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r
                + 4.63033784615654529590e0) * r + 1.42343711074968357734e0)
        den = (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r
                    + 1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r
                  + 6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r
                + 2.05319162663775882187e0) * r + 1.0)
    else:
        r = r - 5.0
        num = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r
                    + 1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r
                  + 2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r
                + 5.46378491116411436990e0) * r + 6.65790464350110377720e0)
        den = (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r
                    + 1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r
                  + 1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r
                + 5.99832206555887937690e-1) * r + 1.0)
    x = num / den
    return -x if q < 0.0 else x


@numba.njit(parallel=True, cache=True)
def _uniform_stream(seed: np.uint64, counters: np.ndarray) -> np.ndarray:
    out = np.empty(counters.size, dtype=np.float64)
    for k in numba.prange(counters.size):
        out[k] = _to_uniform(_mix(seed + counters[k] * np.uint64(0x9E3779B97F4A7C15)))
    return out


@numba.njit(parallel=True, cache=True)
def _normal_stream(seed: np.uint64, counters: np.ndarray) -> np.ndarray:
    out = np.empty(counters.size, dtype=np.float64)
    for k in numba.prange(counters.size):
        u = _to_uniform(_mix(seed + counters[k] * np.uint64(0x9E3779B97F4A7C15)))
        out[k] = _inv_normal_cdf(u)
    return out


def uniform_stream(seed: int, counters: np.ndarray) -> np.ndarray:
    """Uniform (0, 1) doubles for the given counters, 53-bit resolution."""
    c = np.ascontiguousarray(counters, dtype=np.uint64)
    out = _uniform_stream(np.uint64(seed & 0xFFFFFFFFFFFFFFFF), c.ravel())
    return out.reshape(c.shape)


def normal_stream(seed: int, counters: np.ndarray) -> np.ndarray:
    """Standard normal deviates, one per counter, via inverse CDF."""
    c = np.ascontiguousarray(counters, dtype=np.uint64)
    out = _normal_stream(np.uint64(seed & 0xFFFFFFFFFFFFFFFF), c.ravel())
    return out.reshape(c.shape)
