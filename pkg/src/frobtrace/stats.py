"""Arithmetic statistics over trace archives."""
from __future__ import annotations

from dataclasses import dataclass
import math
from typing import Sequence

import numpy as np

from .curves import TraceArchive

GAUSSIAN_MOMENTS = {1: 0.0, 2: 1.0, 3: 0.0, 4: 3.0, 5: 0.0, 6: 15.0}


@dataclass(frozen=True)
class SpfSieve:
    """Smallest prime factor of every n <= bound."""
    bound: int
    spf: np.ndarray

    @classmethod
    def build(cls, bound: int) -> "SpfSieve":
        bound = max(int(bound), 2)
        spf = np.zeros(bound + 1, dtype=np.int64)
        for q in range(2, bound + 1):
            if spf[q]:
                continue
            block = spf[q::q]
            block[block == 0] = q
            spf[q::q] = block
        return cls(bound, spf)

    @classmethod
    def for_archive(cls, archive: TraceArchive) -> "SpfSieve":
        top = int(np.abs(archive.a1).max()) if len(archive) else 2
        return cls.build(top)


def nu(n: int, sieve: SpfSieve) -> int:
    """Number of distinct primes dividing |n|."""
    n = abs(int(n))
    if n == 0:
        raise ValueError("nu(0) is undefined; zero traces are excluded")
    if n > sieve.bound:
        raise ValueError(f"|n| = {n} exceeds sieve bound {sieve.bound}")
    count = 0
    while n > 1:
        q = int(sieve.spf[n])
        count += 1
        while n % q == 0:
            n //= q
    return count


def nu_array(values: np.ndarray, sieve: SpfSieve) -> np.ndarray:
    """Vectorised nu over nonzero integers."""
    n = np.abs(np.asarray(values, dtype=np.int64))
    if np.any(n == 0):
        raise ValueError("nu(0) is undefined; zero traces are excluded")
    if n.size and n.max() > sieve.bound:
        raise ValueError(f"values exceed sieve bound {sieve.bound}")
    count = np.zeros(n.shape, dtype=np.int64)
    active = n > 1
    while np.any(active):
        q = sieve.spf[n[active]]
        count[active] += 1
        m = n[active]
        while True:
            div = m % q == 0
            if not np.any(div):
                break
            m = np.where(div, m // q, m)
        n[active] = m
        active = n > 1
    return count


# -- pi_A(x, t) --------------------------------------------------------------

@dataclass(frozen=True)
class PiTable:
    t: int
    checkpoints: np.ndarray
    values: np.ndarray  # #{p <= x : a1 = t}
    values_neg: np.ndarray  # #{p <= x : a1 = -t}, the coefficient convention
    normalizer: np.ndarray  # sqrt(x) / log(x)


def default_checkpoints(x_max: int, start: int = 8) -> list[int]:
    out = [2**i for i in range(start, x_max.bit_length()) if 2**i <= x_max]
    return out or [x_max]


def pi_a(archive: TraceArchive, t: int, checkpoints: Sequence[int] | None = None) -> PiTable:
    cps = np.array(default_checkpoints(archive.x_max) if checkpoints is None else checkpoints,
                   dtype=np.int64)
    if np.any(cps > archive.x_max):
        raise ValueError(f"checkpoint {int(cps.max())} beyond archive x_max {archive.x_max}")
    p = archive.primes.astype(np.int64)

    def cumulative(target: int) -> np.ndarray:
        hits = np.sort(p[archive.a1 == target])
        return np.searchsorted(hits, cps, side="right").astype(np.int64)

    norm = np.sqrt(cps) / np.log(cps)
    return PiTable(t, cps, cumulative(t), cumulative(-t), norm)


def linear_fit(x: np.ndarray, y: np.ndarray) -> tuple[float, float, float]:
    """Least squares y ~ a x + b; returns (a, b, R^2)."""
    x, y = np.asarray(x, dtype=np.float64), np.asarray(y, dtype=np.float64)
    A = np.column_stack([x, np.ones_like(x)])
    (a, b), *_ = np.linalg.lstsq(A, y, rcond=None)
    resid = y - (a * x + b)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - float(np.sum(resid**2)) / ss_tot if ss_tot > 0 else 0.0
    return float(a), float(b), r2


# -- nu statistics -------------------------------------------------------------

def _nonzero(archive: TraceArchive, lo: int = 0, hi: int | None = None):
    p, a = archive.select(lo, archive.x_max if hi is None else hi)
    keep = a != 0
    return p[keep], a[keep]


def nu_histogram(archive: TraceArchive, p_range: tuple[int, int] | None = None,
                 sieve: SpfSieve | None = None) -> dict[int, int]:
    """nu(a1) bucket counts over lo <= p < hi, skipping a1 = 0."""
    lo, hi = p_range if p_range is not None else (0, archive.x_max + 1)
    p, a = _nonzero(archive, lo, hi - 1)
    if a.size == 0:
        return {}
    sieve = SpfSieve.for_archive(archive) if sieve is None else sieve
    values, counts = np.unique(nu_array(a, sieve), return_counts=True)
    return {int(v): int(c) for v, c in zip(values, counts)}


@dataclass(frozen=True)
class EKResult:
    tau: np.ndarray
    empirical: np.ndarray
    normal: np.ndarray

    @property
    def sup_distance(self) -> float:
        return float(np.max(np.abs(self.empirical - self.normal)))


def normal_cdf(x):
    return 0.5 * (1.0 + np.vectorize(math.erf)(np.asarray(x, dtype=np.float64) / math.sqrt(2)))


def ek_cdf(archive: TraceArchive, tau_grid: Sequence[float],
           sieve: SpfSieve | None = None) -> EKResult:
    """Fraction of p with nu(a1) <= loglog p + tau sqrt(loglog p), per tau."""
    if archive.x_max < 100:
        raise ValueError("x_max must be at least 100")
    p, a = _nonzero(archive)
    tau = np.asarray(tau_grid, dtype=np.float64)
    if a.size == 0:
        return EKResult(tau, np.zeros_like(tau), normal_cdf(tau))
    sieve = SpfSieve.for_archive(archive) if sieve is None else sieve
    v = nu_array(a, sieve).astype(np.float64)
    ll = np.log(np.log(p.astype(np.float64)))
    emp = np.array([np.mean(v <= ll + t * np.sqrt(ll)) for t in tau])
    return EKResult(tau, emp, normal_cdf(tau))


def ek_moments(archive: TraceArchive, k_max: int = 4,
               sieve: SpfSieve | None = None) -> dict[int, float]:
    """k -> mean of (nu - loglog x)^k / (loglog x)^(k/2), x = archive x_max."""
    if not 1 <= k_max <= 6:
        raise ValueError("k_max must be in 1..6")
    _, a = _nonzero(archive)
    if a.size == 0:
        return {k: 0.0 for k in range(1, k_max + 1)}
    sieve = SpfSieve.for_archive(archive) if sieve is None else sieve
    ll = math.log(math.log(archive.x_max))
    z = nu_array(a, sieve) - ll
    return {k: float(np.mean(z**k)) / ll ** (k / 2) for k in range(1, k_max + 1)}


def alpha(g: int) -> float:
    return 1.0 / (2 * g * g + g + 1)


def nonlacunarity(archive: TraceArchive, epsilon: float, mode: str = "log") -> float:
    """Fraction of primes with |a1| >= (log p)^(alpha - eps) or p^(alpha/2 - eps)."""
    a_g = alpha(archive.curve.genus)
    if mode == "log":
        if not 0 < epsilon < a_g:
            raise ValueError(f"epsilon must lie in (0, {a_g})")
        expo = a_g - epsilon
    elif mode == "power":
        if not 0 < epsilon < a_g / 2:
            raise ValueError(f"epsilon must lie in (0, {a_g / 2})")
        expo = a_g / 2 - epsilon
    else:
        raise ValueError(f"unknown mode {mode!r}")
    if len(archive) == 0:
        return 0.0
    p = archive.primes.astype(np.float64)
    base = np.log(p) if mode == "log" else p
    return float(np.mean(np.abs(archive.a1) >= base**expo))


def nu_dyadic_means(archive: TraceArchive, i_max: int | None = None,
                    sieve: SpfSieve | None = None) -> dict[int, float]:
    """i -> mean nu(a1) over p in [2^(i-1), 2^i], a1 != 0, for i = 2..i_max."""
    i_max = archive.x_max.bit_length() - 1 if i_max is None else i_max
    sieve = SpfSieve.for_archive(archive) if sieve is None else sieve
    out = {}
    for i in range(2, i_max + 1):
        _, a = _nonzero(archive, 2 ** (i - 1), 2**i)
        if a.size:
            out[i] = float(nu_array(a, sieve).mean())
    return out
