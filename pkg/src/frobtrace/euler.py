"""Euler products of normalised trace-class densities and Lang-Trotter constants."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
import math
from pathlib import Path
from typing import Callable

import numpy as np

from .ffield import is_prime
from .matcount import (ENUMERATION_LIMIT, TraceTable, closed_count, full_group_table,
                       gl2_trace_table, gsp_order, v_ell)
from .primes import primes_upto

Density = Callable[[np.ndarray], np.ndarray]

SAMPLE_PRIMES_UP_TO = 1000
SAFETY = 2.0


@dataclass(frozen=True)
class EulerProductEstimate:
    g: int
    t: int
    L: int
    partial: float
    log_partial: float
    tail_halfwidth: float  # bound on |log P - log partial|
    source: str = "closed-form"

    @property
    def interval(self) -> tuple[float, float]:
        return (math.exp(self.log_partial - self.tail_halfwidth),
                math.exp(self.log_partial + self.tail_halfwidth))


def euler_factor(g: int, ell: int, t: int) -> Fraction:
    """ell |C(ell, t)| / |GSp_2g(F_ell)|."""
    c = closed_count(g, ell, t)
    return Fraction(ell * c.count, c.group_order)


def _log_factor(g: int, ell: int, t: int) -> float:
    c = closed_count(g, ell, t)
    # exact numerator of h - 1 keeps full precision for factors near 1
    return math.log1p((ell * c.count - c.group_order) / c.group_order)


def factor_constant(g: int, t: int, sample_up_to: int = SAMPLE_PRIMES_UP_TO) -> float:
    """SAFETY * max over sampled ell of ell^2 |h(ell) - 1|."""
    worst = 0.0
    for ell in primes_upto(sample_up_to).tolist():
        h = euler_factor(g, ell, t)
        worst = max(worst, float(ell * ell * abs(h - 1)))
    return SAFETY * worst


def euler_product(g: int, t: int, L: int) -> EulerProductEstimate:
    """prod_{ell <= L} ell |C(ell, t)| / |GSp_2g(F_ell)| with a tail bound."""
    if g not in (1, 2):
        raise ValueError("Euler factors are available in closed form only for g in {1, 2}")
    if L < 10:
        raise ValueError("cutoff L must be >= 10")
    logs = [_log_factor(g, ell, t) for ell in primes_upto(L).tolist()]
    log_partial = math.fsum(logs)
    tail = factor_constant(g, t) / (L - 1)
    return EulerProductEstimate(g, t, L, math.exp(log_partial), log_partial, tail)


# -- Lang-Trotter constants -------------------------------------------------

@dataclass
class ImageData:
    """Mod-m image data: (m, t mod m) -> (|C(m, t)|, |Im|)."""
    m_A: int
    table: dict[tuple[int, int], tuple[int, int]] = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        for (m, t), (c, order) in self.table.items():
            if c > order:
                raise ValueError(f"|C({m},{t})| = {c} exceeds group order {order}")

    @classmethod
    def surjective(cls) -> "ImageData":
        return cls(1, {(1, 0): (1, 1)}, "surjective")

    @classmethod
    def none(cls) -> "ImageData":
        return cls(0, {}, "none")

    @classmethod
    def from_file(cls, path: str | Path, m_A: int) -> "ImageData":
        table = {}
        for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 4:
                raise ValueError(f"{path}:{lineno}: expected 'm t count group_order'")
            m, t, c, order = (int(x) for x in parts)
            table[(m, t % m)] = (c, order)
        return cls(m_A, table, str(path))

    def lookup(self, m: int, t: int) -> tuple[int, int]:
        key = (m, t % m)
        if key not in self.table:
            raise KeyError(f"image data missing |C({m}, {t % m})| and |G({m})|")
        return self.table[key]


def m_A_t(m_A: int, t: int) -> int:
    out = m_A
    for ell in _prime_factors(m_A):
        out *= ell ** v_ell(t, ell)
    return out


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class LTConstant:
    value: float
    tail_halfwidth: float  # on the log scale, 0 when value is 0
    leading: Fraction
    local: dict[int, Fraction]  # H_t(ell^(v+1)) for the primes dividing t

    @property
    def interval(self) -> tuple[float, float]:
        if self.value == 0:
            return (0.0, 0.0)
        return (self.value * math.exp(-self.tail_halfwidth),
                self.value * math.exp(self.tail_halfwidth))


def local_factor(g: int, ell: int, t: int, image: ImageData | None = None,
                 limit: int = ENUMERATION_LIMIT) -> Fraction:
    """H_t(ell^(v+1)) for the full group, v = v_ell(t)."""
    v = v_ell(t, ell)
    mod = ell ** (v + 1)
    if v == 0 and g in (1, 2):
        return euler_factor(g, ell, t)
    if image is not None and (mod, t % mod) in image.table:
        c, order = image.lookup(mod, t)
        return Fraction(mod * c, order)
    if g == 1:
        tab = gl2_trace_table(mod, limit)
        return Fraction(mod * tab.count(t), tab.group_order)
    raise KeyError(f"need |C({mod}, {t % mod})| for GSp_{2 * g}; supply it in the image table")


def lt_constant(g: int, t: int, phi0: float, image: ImageData, L: int,
                limit: int = ENUMERATION_LIMIT) -> LTConstant:
    """Phi(0)/g * m_At |C(m_At, t)| / |Im| * prod_{ell not | m_A} H_t(ell^(v+1))."""
    if t == 0:
        raise ValueError("t = 0 has no Lang-Trotter constant here; use euler_product")
    if image.m_A < 1:
        raise KeyError("no image data supplied (preset 'none')")
    mt = m_A_t(image.m_A, t)
    c, order = image.lookup(mt, t)
    leading = Fraction(mt * c, order)
    if leading == 0:
        return LTConstant(0.0, 0.0, leading, {})
    dividing = [ell for ell in _prime_factors(abs(t)) if image.m_A % ell]
    local = {ell: local_factor(g, ell, t, image, limit) for ell in dividing}
    logs = [math.log(float(f)) for f in local.values()]
    for ell in primes_upto(L).tolist():
        if image.m_A % ell == 0 or t % ell == 0:
            continue
        logs.append(_log_factor(g, ell, t))
    if any(f == 0 for f in local.values()):
        return LTConstant(0.0, 0.0, leading, local)
    log_value = math.log(phi0 / g) + math.log(float(leading)) + math.fsum(logs)
    tail = factor_constant(g, 1) / (L - 1)
    return LTConstant(math.exp(log_value), tail, leading, local)


# -- heuristic densities f_p^(m) -------------------------------------------

def _taus(p: int, g: int) -> np.ndarray:
    """All integers tau with |tau| < 2 g sqrt(p)."""
    bound = math.isqrt(4 * g * g * p)
    if bound * bound == 4 * g * g * p:
        bound -= 1
    return np.arange(-bound, bound + 1, dtype=np.int64)


def _class_counts(table: TraceTable, taus: np.ndarray) -> np.ndarray:
    per_residue = np.array([table.counts[r] for r in range(table.m)], dtype=np.float64)
    return per_residue[taus % table.m]


def c_pm(p: int, m: int, g: int, phi: Density, table: TraceTable | None = None) -> float:
    """|G(m)| / (m sum_{|tau| < 2g sqrt p} Phi(tau / 2g sqrt p) |C(m, tau)|)."""
    table = full_group_table(g, m) if table is None else table
    taus = _taus(p, g)
    w = np.asarray(phi(taus / (2 * g * math.sqrt(p))), dtype=np.float64)
    s = math.fsum((w * _class_counts(table, taus)).tolist())
    return table.group_order / (m * s)


def f_pm(p: int, m: int, g: int, phi: Density, tau: int,
         table: TraceTable | None = None) -> float:
    if tau * tau >= 4 * g * g * p:
        return 0.0
    table = full_group_table(g, m) if table is None else table
    cnt = table.count(tau)
    if cnt == 0:
        return 0.0
    x = tau / (2 * g * math.sqrt(p))
    val = float(np.asarray(phi(np.array([x])))[0])
    return val * (m * cnt / table.group_order) * c_pm(p, m, g, phi, table)


def f_pm_all(p: int, m: int, g: int, phi: Density,
             table: TraceTable | None = None) -> tuple[np.ndarray, np.ndarray]:
    """(taus, f_p^(m)(tau)) over the whole support."""
    table = full_group_table(g, m) if table is None else table
    taus = _taus(p, g)
    w = np.asarray(phi(taus / (2 * g * math.sqrt(p))), dtype=np.float64)
    vals = w * (m * _class_counts(table, taus) / table.group_order)
    return taus, vals * c_pm(p, m, g, phi, table)


def riemann_sum(m: int, tau0: int, g: int, phi: Density, p: int) -> float:
    taus = _taus(p, g)
    taus = taus[(taus - tau0) % m == 0]
    B = 2 * g * math.sqrt(p)
    return m / B * math.fsum(np.asarray(phi(taus / B), dtype=np.float64).tolist())


def riemann_sum_check(m: int, tau0: int, g: int, phi: Density,
                      p_list) -> tuple[float, list[float]]:
    """(max deviation, per-p deviations) of the Riemann sums from 1."""
    devs = [abs(riemann_sum(m, tau0, g, phi, p) - 1.0) for p in p_list]
    return max(devs), devs
