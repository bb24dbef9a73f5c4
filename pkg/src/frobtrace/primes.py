"""Segmented sieve of Eratosthenes."""
from __future__ import annotations

import math

import numpy as np

SEGMENT = 1 << 18


def small_primes(n: int) -> np.ndarray:
    """All primes <= n by a plain sieve (n should be modest)."""
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    s = np.ones(n + 1, dtype=bool)
    s[:2] = False
    for i in range(2, math.isqrt(n) + 1):
        if s[i]:
            s[i * i::i] = False
    return np.flatnonzero(s).astype(np.int64)


def primes_between(lo: int, hi: int, segment: int = SEGMENT) -> np.ndarray:
    """Primes p with lo <= p <= hi, sieved in fixed-size segments."""
    lo = max(lo, 2)
    if hi < lo:
        return np.zeros(0, dtype=np.int64)
    base = small_primes(math.isqrt(hi))
    chunks = []
    for start in range(lo, hi + 1, segment):
        stop = min(start + segment, hi + 1)
        seg = np.ones(stop - start, dtype=bool)
        for q in base:
            q = int(q)
            if q * q >= stop:
                break
            first = max(q * q, -(-start // q) * q)
            seg[first - start::q] = False
        if start < 2:
            seg[:2 - start] = False
        chunks.append(np.flatnonzero(seg) + start)
    return np.concatenate(chunks).astype(np.int64)


def primes_upto(n: int) -> np.ndarray:
    return primes_between(2, n)
