"""numba hot loops: quadratic character sums over F_p and GSp enumeration."""
import numpy as np
from numba import njit

# Independent forward-difference lanes per prime; keeps the adds pipelined.
LANES = 16


@njit(cache=True)
def fill_char_table(p, table):
    """table[a] = legendre(a, p) for 0 <= a < p, as int8."""
    for i in range(p):
        table[i] = -1
    table[0] = 0
    sq = 0
    for y in range(1, (p - 1) // 2 + 1):
        sq += 2 * y - 1
        if sq >= p:
            sq -= p
        table[sq] = 1


@njit(cache=True)
def _horner(coeffs, x, p):
    acc = 0
    for k in range(coeffs.shape[0] - 1, -1, -1):
        acc = (acc * x + coeffs[k]) % p
    return acc


@njit(cache=True)
def char_sum(coeffs, p, table):
    """sum_{x in F_p} legendre(f(x), p) given a filled table for p."""
    d = coeffs.shape[0] - 1
    S = (p + LANES - 1) // LANES
    D = np.empty((d + 1, LANES), np.int64)
    vals = np.empty(d + 1, np.int64)
    for l in range(LANES):
        x0 = l * S
        for j in range(d + 1):
            vals[j] = _horner(coeffs, (x0 + j) % p, p)
        for j in range(1, d + 1):
            for i in range(d, j - 1, -1):
                vals[i] = (vals[i] - vals[i - 1]) % p
        for j in range(d + 1):
            D[j, l] = vals[j]
    s = 0
    for _ in range(S):
        for l in range(LANES):
            s += table[D[0, l]]
        for j in range(d):
            for l in range(LANES):
                v = D[j, l] + D[j + 1, l] - p
                D[j, l] = v + ((v >> 63) & p)
    # lanes overrun past p - 1 and wrap around; remove the double counts
    for x in range(p, LANES * S):
        s -= table[_horner(coeffs, x % p, p)]
    return s


@njit(cache=True)
def traces_for_primes(coeffs, primes, even_degree, out):
    """out[i] = p + 1 - #C(F_p) for each p in primes (ascending)."""
    if primes.shape[0] == 0:
        return
    table = np.empty(primes[-1] + 1, np.int8)
    lc = coeffs[coeffs.shape[0] - 1]
    for i in range(primes.shape[0]):
        p = primes[i]
        fill_char_table(p, table)
        s = char_sum(coeffs, p, table)
        at_inf = 1
        if even_degree:
            at_inf = 1 + table[lc % p]
        out[i] = 1 - s - at_inf


@njit(cache=True)
def similitude_histogram(g, m, units, hist):
    """Scan every 2g x 2g matrix over Z/m; hist[mu, tr] += 1 for members.

    Membership: M^T J M = mu J with mu a unit.  ``units[a]`` flags units.
    Returns the number of matrices scanned.
    """
    n = 2 * g
    M = np.zeros((n, n), np.int64)
    total = m ** (n * n)
    for _ in range(total):
        mu = -1
        ok = True
        for i in range(n):
            if not ok:
                break
            for j in range(i + 1, n):
                s = 0
                for k in range(g):
                    s += M[k, i] * M[k + g, j] - M[k + g, i] * M[k, j]
                s %= m
                if j == i + g:
                    if mu < 0:
                        mu = s
                    elif s != mu:
                        ok = False
                        break
                elif s != 0:
                    ok = False
                    break
        if ok and units[mu]:
            tr = 0
            for i in range(n):
                tr += M[i, i]
            hist[mu, tr % m] += 1
        # odometer increment
        for idx in range(n * n):
            r = idx // n
            c = idx % n
            M[r, c] += 1
            if M[r, c] < m:
                break
            M[r, c] = 0
    return total


@njit(cache=True)
def gl2_trace_histogram(m, units, hist):
    """hist[t] = #{M in GL_2(Z/m) : tr M = t}, scanning (a, b, c) per trace."""
    for t in range(m):
        cnt = 0
        for a in range(m):
            d = (t - a) % m
            ad = a * d
            for b in range(m):
                for c in range(m):
                    if units[(ad - b * c) % m]:
                        cnt += 1
        hist[t] = cnt
