"""Hyperelliptic curves y^2 = f(x), their point counts and Frobenius traces.

Sign convention: ``a1`` is always the Frobenius trace p + 1 - #C(F_p), the
sum of the Weil roots.  The X^(2g-1) coefficient of the Weil polynomial is
therefore -a1.  Trace-class counts satisfy |C(m, t)| = |C(m, -t)|, so none of
the constants depend on this choice.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
import math
from typing import Iterator, Sequence

import mpmath
import numpy as np
from sympy import factorint

from . import _kernels
from .errors import check_budget
from .ffield import build_ext, poly_eval_vec, decode_vec, encode_vec, square_flags
from .primes import primes_between

POINT_COUNT_LIMIT = 10**8


def _det_bareiss(rows: list[list[int]]) -> int:
    """Exact determinant by fraction-free elimination."""
    a = [list(r) for r in rows]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _sylvester(f: Sequence[int], g: Sequence[int]) -> list[list[int]]:
    # inputs constant term first; Sylvester rows use descending order
    fd, gd = list(reversed(f)), list(reversed(g))
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    rows = []
    for i in range(n):
        rows.append([0] * i + fd + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gd + [0] * (size - n - 1 - i))
    return rows


def _strip(f: Sequence[int]) -> list[int]:
    f = [int(c) for c in f]
    while len(f) > 1 and f[-1] == 0:
        f.pop()
    return f


def discriminant(f: Sequence[int]) -> int:
    """disc(f) = (-1)^(d(d-1)/2) Res(f, f') / lc(f), exactly."""
    f = _strip(f)
    d = len(f) - 1
    if d < 2:
        raise ValueError("discriminant needs degree >= 2")
    df = [i * c for i, c in enumerate(f)][1:]
    res = _det_bareiss(_sylvester(f, df))
    q, r = divmod(res, f[-1])
    assert r == 0
    return -q if (d * (d - 1) // 2) % 2 else q


@dataclass(frozen=True)
class CurveModel:
    genus: int
    f: tuple[int, ...]
    label: str = ""
    bad_primes_override: frozenset[int] | None = None

    def __post_init__(self):
        f = tuple(_strip(self.f))
        object.__setattr__(self, "f", f)
        if self.bad_primes_override is not None:
            object.__setattr__(self, "bad_primes_override", frozenset(self.bad_primes_override))
        if self.genus < 1:
            raise ValueError("genus must be positive")
        if self.degree not in (2 * self.genus + 1, 2 * self.genus + 2):
            raise ValueError(f"deg f = {self.degree} does not match genus {self.genus}")
        if self.disc == 0:
            raise ValueError("f has a repeated root; the curve is singular")

    @property
    def degree(self) -> int:
        return len(self.f) - 1

    @property
    def leading_coefficient(self) -> int:
        return self.f[-1]

    @cached_property
    def disc(self) -> int:
        return discriminant(self.f)

    @cached_property
    def bad_primes(self) -> frozenset[int]:
        return bad_primes(self)

    def is_good(self, p: int) -> bool:
        return p not in self.bad_primes


def bad_primes(curve: CurveModel) -> frozenset[int]:
    if curve.bad_primes_override is not None:
        return curve.bad_primes_override
    n = abs(curve.leading_coefficient * curve.disc)
    return frozenset({2} | {q for q in factorint(n) if q != 2})


@dataclass(frozen=True)
class FrobeniusRecord:
    p: int
    a1: int
    higher: tuple[int, ...] | None = None

    def within_weil_bound(self, genus: int) -> bool:
        return self.a1 * self.a1 < 4 * genus * genus * self.p


@dataclass
class TraceArchive:
    curve: CurveModel
    x_max: int
    primes: np.ndarray = field(repr=False)
    a1: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.primes = np.asarray(self.primes, dtype=np.uint64)
        self.a1 = np.asarray(self.a1, dtype=np.int64)
        if self.primes.shape != self.a1.shape:
            raise ValueError("primes and traces differ in length")

    def __len__(self) -> int:
        return int(self.primes.shape[0])

    def records(self) -> Iterator[FrobeniusRecord]:
        for p, a in zip(self.primes.tolist(), self.a1.tolist()):
            yield FrobeniusRecord(p, a)

    def select(self, lo: int = 0, hi: int | None = None) -> tuple[np.ndarray, np.ndarray]:
        """(primes, traces) for lo <= p <= hi."""
        hi = self.x_max if hi is None else hi
        p = self.primes.astype(np.int64)
        mask = (p >= lo) & (p <= hi)
        return p[mask], self.a1[mask]


def _require_good(curve: CurveModel, p: int) -> None:
    if p == 2 or p in curve.bad_primes:
        raise ValueError(f"{p} is a bad prime for {curve.label or curve.f}")


def _points_at_infinity(curve: CurveModel, chi_lc: int) -> int:
    return 1 if curve.degree % 2 else 1 + chi_lc


def count_points(curve: CurveModel, p: int, i: int = 1,
                 limit: int = POINT_COUNT_LIMIT) -> int:
    """#C(F_{p^i}) for the smooth model of y^2 = f(x)."""
    _require_good(curve, p)
    if i < 1:
        raise ValueError("extension degree must be >= 1")
    q = p ** i
    check_budget(f"point count over F_{p}^{i}", q, limit)
    if i == 1:
        return p + 1 - frobenius_trace(curve, p)
    ctx = build_ext(p, i)
    squares = square_flags(ctx)
    affine = 0
    chunk = 1 << 20
    for start in range(0, q, chunk):
        x = decode_vec(np.arange(start, min(start + chunk, q)), ctx)
        v = encode_vec(poly_eval_vec(curve.f, x, ctx), ctx)
        zero = v == 0
        sq = squares[v] & ~zero
        affine += 2 * int(sq.sum()) + int(zero.sum())
    lc = ctx.embed(curve.leading_coefficient)
    chi_lc = 1 if squares[ctx.encode(lc)] else -1
    return affine + _points_at_infinity(curve, chi_lc)


def frobenius_trace(curve: CurveModel, p: int) -> int:
    _require_good(curve, p)
    out = np.empty(1, dtype=np.int64)
    _kernels.traces_for_primes(np.array(curve.f, dtype=np.int64),
                               np.array([p], dtype=np.int64),
                               curve.degree % 2 == 0, out)
    return int(out[0])


def frobenius_trace_euler(curve: CurveModel, p: int) -> int:
    """Independent slow route: Horner in Python plus Euler's criterion."""
    _require_good(curve, p)
    e = (p - 1) // 2
    s = 0
    for x in range(p):
        v = 0
        for c in reversed(curve.f):
            v = (v * x + c) % p
        if v:
            s += 1 if pow(v, e, p) == 1 else -1
    lc = curve.leading_coefficient % p
    chi_lc = 1 if pow(lc, e, p) == 1 else -1
    n1 = p + s + _points_at_infinity(curve, chi_lc)
    return p + 1 - n1


def newton_elementary(power_sums: Sequence[int]) -> list[int]:
    """e_1..e_n from power sums s_1..s_n, exactly."""
    e = [1]
    for k in range(1, len(power_sums) + 1):
        acc = 0
        for i in range(1, k + 1):
            acc += (-1) ** (i - 1) * e[k - i] * power_sums[i - 1]
        q, r = divmod(acc, k)
        assert r == 0, "non-integral elementary symmetric function"
        e.append(q)
    return e[1:]


def weil_polynomial(curve: CurveModel, p: int,
                    limit: int = POINT_COUNT_LIMIT) -> tuple[int, ...]:
    """(a1, a2, ..., ag): a1 the trace, a_i (i >= 2) the X^(2g-i) coefficient."""
    g = curve.genus
    check_budget(f"Weil polynomial over F_{p}^{g}", p ** g, limit)
    sums = [p ** i + 1 - count_points(curve, p, i, limit) for i in range(1, g + 1)]
    e = newton_elementary(sums)
    return (e[0],) + tuple((-1) ** i * e[i - 1] for i in range(2, g + 1))


def weil_coefficients(a: Sequence[int], p: int) -> list[int]:
    """Full coefficient list of P(X), highest degree first."""
    g = len(a)
    mid = [-a[0]] + list(a[1:])
    lower = [p ** (g - i) * mid[i - 1] for i in range(g - 1, 0, -1)]
    return [1] + mid + lower + [p ** g]


def weil_roots(a: Sequence[int], p: int, dps: int = 40) -> list[complex]:
    with mpmath.workdps(dps):
        return mpmath.polyroots(weil_coefficients(a, p), maxsteps=200, extraprec=4 * dps)


def roots_on_circle(a: Sequence[int], p: int, rtol: float = 1e-9) -> bool:
    r = math.sqrt(p)
    return all(abs(float(abs(z)) - r) <= rtol * r for z in weil_roots(a, p))


def good_primes(curve: CurveModel, lo: int, hi: int) -> np.ndarray:
    ps = primes_between(max(lo, 3), hi)
    bad = np.array(sorted(curve.bad_primes), dtype=np.int64)
    return ps[~np.isin(ps, bad)]


def _sweep_chunk(coeffs: np.ndarray, primes: np.ndarray, even: bool) -> np.ndarray:
    out = np.empty(primes.shape[0], dtype=np.int64)
    _kernels.traces_for_primes(coeffs, primes, even, out)
    return out


def _split_by_cost(primes: np.ndarray, parts: int) -> list[np.ndarray]:
    # work per prime is ~p, so balance on cumulative sum of p
    if parts <= 1 or primes.shape[0] == 0:
        return [primes]
    cost = np.cumsum(primes.astype(np.float64))
    cuts = np.searchsorted(cost, cost[-1] * np.arange(1, parts) / parts)
    return [c for c in np.split(primes, cuts) if c.shape[0]]


def trace_sweep(curve: CurveModel, x_max: int, worker_count: int = 1) -> TraceArchive:
    """Traces at every good prime <= x_max.

    Workers get disjoint prime intervals; results are concatenated in
    ascending order, so the archive does not depend on worker_count.
    """
    primes = good_primes(curve, 3, x_max)
    coeffs = np.array(curve.f, dtype=np.int64)
    even = curve.degree % 2 == 0
    chunks = _split_by_cost(primes, worker_count)
    if worker_count <= 1 or len(chunks) <= 1:
        traces = [_sweep_chunk(coeffs, c, even) for c in chunks]
    else:
        with ProcessPoolExecutor(max_workers=worker_count) as pool:
            traces = list(pool.map(_sweep_chunk, [coeffs] * len(chunks), chunks,
                                   [even] * len(chunks)))
    a1 = np.concatenate(traces) if traces else np.zeros(0, dtype=np.int64)
    g = curve.genus
    ok = a1 * a1 < 4 * g * g * primes
    if not np.all(ok):
        bad = primes[~ok][0]
        raise AssertionError(f"Weil bound violated at p = {bad}")
    return TraceArchive(curve, x_max, primes, a1)
