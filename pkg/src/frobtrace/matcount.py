"""Trace-class counts in GSp_2g(Z/mZ), Kloosterman moments, class dimensions.

Counts here are always for the full group G(m) = GSp_2g(Z/mZ).  A smaller
Galois image can be supplied from outside as a :class:`TraceTable` built by
hand (see ``euler.ImageData``).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
import itertools
import math
from typing import Iterator

import numpy as np

from . import _kernels
from .errors import check_budget
from .ffield import is_prime

ENUMERATION_LIMIT = 10**8


def symplectic_form(g: int) -> np.ndarray:
    """J_2g = [[0, I_g], [-I_g, 0]]."""
    J = np.zeros((2 * g, 2 * g), dtype=np.int64)
    J[:g, g:] = np.eye(g, dtype=np.int64)
    J[g:, :g] = -np.eye(g, dtype=np.int64)
    return J


@dataclass(frozen=True)
class SymplecticSpec:
    g: int
    m: int

    @property
    def J(self) -> np.ndarray:
        return symplectic_form(self.g)

    def multiplier(self, M) -> int | None:
        """mu with M^T J M = mu J and mu a unit mod m, or None."""
        M = np.asarray(M, dtype=np.int64) % self.m
        A = (M.T @ self.J @ M) % self.m
        mu = int(A[0, self.g])
        if math.gcd(mu, self.m) != 1:
            return None
        if np.array_equal(A, (mu * self.J) % self.m):
            return mu
        return None

    def is_member(self, M) -> bool:
        return self.multiplier(M) is not None


@dataclass(frozen=True)
class TraceClassCount:
    g: int
    m: int
    t: int
    count: int
    group_order: int
    source: str  # "enumerated" or "closed-form"


@dataclass
class TraceTable:
    """|C(m, t)| for every residue t, plus |G(m)|."""
    g: int
    m: int
    counts: dict[int, int]
    group_order: int
    source: str
    by_multiplier: np.ndarray | None = field(default=None, repr=False)

    def count(self, t: int) -> int:
        return self.counts[t % self.m]

    def __iter__(self) -> Iterator[TraceClassCount]:
        for t in range(self.m):
            yield TraceClassCount(self.g, self.m, t, self.counts[t],
                                  self.group_order, self.source)


def gsp_order(g: int, ell: int) -> int:
    """|GSp_2g(F_ell)| = (ell - 1) ell^(g^2) prod_{i<=g} (ell^(2i) - 1)."""
    if not is_prime(ell):
        raise ValueError(f"{ell} is not prime")
    out = (ell - 1) * ell ** (g * g)
    for i in range(1, g + 1):
        out *= ell ** (2 * i) - 1
    return out


def _units(m: int) -> np.ndarray:
    return np.array([math.gcd(a, m) == 1 for a in range(m)], dtype=np.bool_)


def enumerate_trace_counts(g: int, m: int, limit: int = ENUMERATION_LIMIT) -> TraceTable:
    """Scan all m^(4g^2) matrices over Z/m and bucket members by trace."""
    n = 2 * g
    check_budget(f"GSp_{n}(Z/{m}) enumeration", m ** (n * n), limit)
    hist = np.zeros((m, m), dtype=np.int64)
    _kernels.similitude_histogram(g, m, _units(m), hist)
    counts = {t: int(c) for t, c in enumerate(hist.sum(axis=0))}
    return TraceTable(g, m, counts, int(hist.sum()), "enumerated", hist)


def gl2_trace_table(m: int, limit: int = ENUMERATION_LIMIT) -> TraceTable:
    """g = 1 counts over Z/m: for each trace t scan (a, b, c), d = t - a.

    GSp_2 = GL_2 (M^T J M = det(M) J), so this is the same set as the full
    scan at a cube of the cost.
    """
    check_budget(f"GL_2(Z/{m}) trace scan", m ** 3 * m, limit)
    hist = np.zeros(m, dtype=np.int64)
    _kernels.gl2_trace_histogram(m, _units(m), hist)
    counts = {t: int(c) for t, c in enumerate(hist)}
    return TraceTable(1, m, counts, int(hist.sum()), "enumerated")


def closed_count(g: int, ell: int, t: int) -> TraceClassCount:
    if g not in (1, 2):
        raise ValueError("closed forms exist only for g in {1, 2}")
    if not is_prime(ell):
        raise ValueError(f"{ell} is not prime")
    l = ell
    zero = t % l == 0
    if g == 1:
        c = l**3 - l**2 if zero else l**3 - l**2 - l
    elif zero:
        c = l**5 * (l - 1) * (l**4 - l - 1)
    else:
        c = l**4 * (l**6 - l**5 - l**4 + l + 1)
    return TraceClassCount(g, l, t % l, c, gsp_order(g, l), "closed-form")


def closed_table(g: int, ell: int) -> TraceTable:
    counts = {t: closed_count(g, ell, t).count for t in range(ell)}
    return TraceTable(g, ell, counts, gsp_order(g, ell), "closed-form")


def full_group_table(g: int, m: int, limit: int = ENUMERATION_LIMIT) -> TraceTable:
    """Closed form when available, otherwise the cheapest exhaustive scan."""
    if m == 1:
        return TraceTable(g, 1, {0: 1}, 1, "closed-form")
    if g in (1, 2) and is_prime(m):
        return closed_table(g, m)
    if g == 1:
        return gl2_trace_table(m, limit)
    return enumerate_trace_counts(g, m, limit)


def n_count(ell: int, t: int) -> int:
    """#{(x, y, d) in (F_ell^*)^3 : y != -d, (x + y/x)(1 + d/y) = t}."""
    if ell < 3 or not is_prime(ell):
        raise ValueError("ell must be an odd prime")
    inv = [0] + [pow(a, -1, ell) for a in range(1, ell)]
    t %= ell
    n = 0
    for x, y, d in itertools.product(range(1, ell), repeat=3):
        if (y + d) % ell == 0:
            continue
        if (x + y * inv[x]) * (1 + d * inv[y]) % ell == t:
            n += 1
    return n


def kloosterman(ell: int, alpha: int) -> float:
    """K(alpha) = sum_{a in F_ell^*} cos(2 pi (a alpha + a^-1) / ell)."""
    if alpha % ell == 0:
        raise ValueError("alpha must be nonzero mod ell")
    # a and -a give the same cosine
    terms = []
    for a in range(1, (ell - 1) // 2 + 1):
        arg = (a * alpha + pow(a, -1, ell)) % ell
        terms.append(2.0 * math.cos(2.0 * math.pi * arg / ell))
    return math.fsum(terms)


def m_count(ell: int, s: int, limit: int = ENUMERATION_LIMIT) -> int:
    """M_s = #{alpha in (F_ell^*)^s : sum alpha = 1 = sum alpha^-1}; M_0 = 1."""
    if s == 0:
        return 1
    check_budget(f"M_{s} scan over F_{ell}", (ell - 1) ** s, limit)
    inv = [0] + [pow(a, -1, ell) for a in range(1, ell)]
    n = 0
    for tup in itertools.product(range(1, ell), repeat=s):
        if sum(tup) % ell == 1 and sum(inv[a] for a in tup) % ell == 1:
            n += 1
    return n


def kloosterman_moment_check(ell: int, r: int, limit: int = ENUMERATION_LIMIT):
    """(lhs, rhs, pass) for sum_alpha K(alpha)^r = ell^2 M_{r-1} - (ell-1)^{r-1} + 2(-1)^{r-1}."""
    if r < 2:
        raise ValueError("moment identity needs r >= 2")
    lhs = math.fsum(kloosterman(ell, a) ** r for a in range(1, ell))
    rhs = ell**2 * m_count(ell, r - 1, limit) - (ell - 1) ** (r - 1) + 2 * (-1) ** (r - 1)
    return lhs, rhs, abs(lhs - rhs) < 1e-6 * ell ** (r / 2 + 1)


def f_ratio(table: TraceTable, t: int) -> Fraction:
    """m |C(m, t)| / |G(m)| (F_t for an image table, H_t for the full group)."""
    return Fraction(table.m * table.count(t), table.group_order)


def v_ell(t: int, ell: int) -> int:
    if t == 0:
        raise ValueError("valuation of 0 is undefined")
    v = 0
    while t % ell == 0:
        t //= ell
        v += 1
    return v


def f_stabilization_check(ell: int, t: int, k_max: int,
                          limit: int = ENUMERATION_LIMIT) -> bool:
    """g = 1: F_t(ell^(v+1)) == F_t(ell^(v+k)) for 1 <= k <= k_max, v = v_ell(t)."""
    v = v_ell(t, ell)
    top = ell ** (v + k_max)
    check_budget(f"GL_2(Z/{top}) scan", top ** 4, limit)
    base = f_ratio(enumerate_trace_counts(1, ell ** (v + 1), limit), t)
    return all(f_ratio(enumerate_trace_counts(1, ell ** (v + k), limit), t) == base
               for k in range(2, k_max + 1))


def crt_factorization_check(m1: int, m2: int, t: int, g: int = 1,
                            limit: int = ENUMERATION_LIMIT) -> bool:
    """|C(m1 m2, t)| == |C(m1, t)| |C(m2, t)| for coprime m1, m2."""
    if math.gcd(m1, m2) != 1:
        raise ValueError("moduli must be coprime")
    whole = enumerate_trace_counts(g, m1 * m2, limit)
    a = enumerate_trace_counts(g, m1, limit)
    b = enumerate_trace_counts(g, m2, limit)
    return (whole.count(t) == a.count(t) * b.count(t)
            and whole.group_order == a.group_order * b.group_order)


# -- conjugacy class dimensions in Sp_2n ------------------------------------

@dataclass(frozen=True)
class EigenProfile:
    """Eigenspace sizes: n_1 = 2x, n_-1 = 2y, and paired blocks n_lambda."""
    n: int
    x: int
    y: int
    blocks: tuple[int, ...] = ()

    def __post_init__(self):
        if min(self.x, self.y) < 0 or any(b <= 0 for b in self.blocks):
            raise ValueError("multiplicities must be nonnegative")
        if self.x + self.y + self.z != self.n:
            raise ValueError("x + y + z must equal n")

    @property
    def z(self) -> int:
        return sum(self.blocks)

    @property
    def central(self) -> bool:
        return self.z == 0 and (self.x == self.n or self.y == self.n)

    @property
    def trace_zero_feasible(self) -> bool:
        return self.z >= 1 or self.x == self.y


def centralizer_dim(profile: EigenProfile) -> tuple[int, int]:
    """(dim Z(g), dim G - dim Z(g)) in Sp_2n."""
    n1, nm1 = 2 * profile.x, 2 * profile.y
    dim_z = (n1 * n1 + n1 + nm1 * nm1 + nm1) // 2 + sum(b * b for b in profile.blocks)
    n = profile.n
    return dim_z, 2 * n * n + n - dim_z


def partitions(z: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    largest = z if largest is None else largest
    if z == 0:
        yield ()
        return
    for first in range(min(z, largest), 0, -1):
        for rest in partitions(z - first, first):
            yield (first,) + rest


def profiles(n: int) -> Iterator[EigenProfile]:
    for x in range(n + 1):
        for y in range(n + 1 - x):
            for blocks in partitions(n - x - y):
                yield EigenProfile(n, x, y, blocks)


def min_class_dim(n: int, trace_zero: bool = False) -> int:
    best = None
    for prof in profiles(n):
        if prof.central or (trace_zero and not prof.trace_zero_feasible):
            continue
        d = centralizer_dim(prof)[1]
        best = d if best is None else min(best, d)
    return best
