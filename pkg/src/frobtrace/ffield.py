"""Prime fields F_p and small extensions F_{p^k}.

Elements of F_p are plain ints in [0, p).  Elements of F_{p^k} are tuples of
k coefficients (constant term first) reduced modulo a fixed monic irreducible
polynomial.  The ``*_vec`` helpers work on int64 arrays of shape (n, k) and
are what point counting over extensions uses.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
import itertools

import numpy as np

DEFAULT_TABLE_THRESHOLD = 1 << 22

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for n < 3.3e24."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def squares_table(p: int) -> np.ndarray:
    """Boolean array t with t[a] True iff a is a square mod p (t[0] is True)."""
    y = np.arange(p, dtype=np.int64)
    t = np.zeros(p, dtype=bool)
    t[(y * y) % p] = True
    return t


@dataclass(frozen=True)
class PrimeFieldCtx:
    p: int
    squares: np.ndarray | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.p == 2 or not is_prime(self.p):
            raise ValueError(f"p must be an odd prime, got {self.p}")

    @classmethod
    def with_table(cls, p: int) -> "PrimeFieldCtx":
        return cls(p, squares_table(p))

    @classmethod
    def for_queries(cls, p: int, n_queries: int,
                    threshold: int = DEFAULT_TABLE_THRESHOLD) -> "PrimeFieldCtx":
        # a table only pays off when we will ask at least p questions
        if p <= threshold and n_queries >= p:
            return cls.with_table(p)
        return cls(p)

    @property
    def q(self) -> int:
        return self.p


@dataclass(frozen=True)
class ExtFieldCtx:
    p: int
    k: int
    modulus: tuple[int, ...]  # monic, constant term first, length k + 1

    def __post_init__(self):
        if self.p == 2 or not is_prime(self.p):
            raise ValueError(f"p must be an odd prime, got {self.p}")
        if len(self.modulus) != self.k + 1 or self.modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree k")
        if not is_irreducible(self.modulus, self.p):
            raise ValueError(f"modulus {self.modulus} is reducible mod {self.p}")

    @property
    def q(self) -> int:
        return self.p ** self.k

    @property
    def one(self) -> tuple[int, ...]:
        return (1,) + (0,) * (self.k - 1)

    @property
    def zero(self) -> tuple[int, ...]:
        return (0,) * self.k

    @property
    def gen(self) -> tuple[int, ...]:
        """The class of u modulo the modulus."""
        if self.k == 1:
            return ((-self.modulus[0]) % self.p,)
        return (0, 1) + (0,) * (self.k - 2)

    def embed(self, a: int) -> tuple[int, ...]:
        return (a % self.p,) + (0,) * (self.k - 1)

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def mul(self, a, b):
        return _polymod(_polymul(a, b, self.p), self.modulus, self.p, self.k)

    def pow(self, a, e: int):
        return ext_pow(a, e, self)

    def encode(self, a) -> int:
        return sum(c * self.p ** i for i, c in enumerate(a))

    def decode(self, n: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.k):
            n, r = divmod(n, self.p)
            out.append(r)
        return tuple(out)

    def elements(self):
        for n in range(self.q):
            yield self.decode(n)


# -- polynomial arithmetic over F_p, coefficient lists constant term first --

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _polymul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return [c % p for c in out]


def _polymod(a, m, p, k=None):
    """Remainder of a modulo monic m; returns a length-k tuple."""
    k = len(m) - 1 if k is None else k
    a = [c % p for c in a]
    for i in range(len(a) - 1, k - 1, -1):
        c = a[i]
        if c:
            for j in range(k + 1):
                a[i - k + j] = (a[i - k + j] - c * m[j]) % p
    a = a[:k] + [0] * max(0, k - len(a))
    return tuple(a)


def _polydivmod_general(a, b, p):
    a = _trim([c % p for c in a])
    b = _trim([c % p for c in b])
    inv = pow(b[-1], -1, p)
    q = [0] * max(1, len(a) - len(b) + 1)
    while len(a) >= len(b) and a:
        c = a[-1] * inv % p
        shift = len(a) - len(b)
        q[shift] = c
        for j, y in enumerate(b):
            a[shift + j] = (a[shift + j] - c * y) % p
        a = _trim(a)
    return q, a


def _polygcd(a, b, p):
    a, b = _trim(a), _trim(b)
    while b:
        _, r = _polydivmod_general(a, b, p)
        a, b = b, r
    return a


def _prime_divisors(n):
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


def _frobenius_power(m, p, e):
    """u^(p^e) reduced modulo m, as a list."""
    k = len(m) - 1
    x = _polymod([0, 1], m, p, k)
    for _ in range(e):
        x = _pow_poly(x, p, m, p)
    return list(x)


def _pow_poly(a, e, m, p):
    k = len(m) - 1
    result = _polymod([1], m, p, k)
    base = tuple(a)
    while e:
        if e & 1:
            result = _polymod(_polymul(result, base, p), m, p, k)
        base = _polymod(_polymul(base, base, p), m, p, k)
        e >>= 1
    return result


def is_irreducible(m, p: int) -> bool:
    """Rabin's test for a monic polynomial m over F_p."""
    k = len(m) - 1
    if k == 1:
        return True
    u = [0, 1] + [0] * (k - 2)
    if _trim(_frobenius_power(m, p, k)) != _trim(u):
        return False
    for q in _prime_divisors(k):
        h = _frobenius_power(m, p, k // q)
        diff = [(h[i] if i < len(h) else 0) - u[i] for i in range(k)]
        g = _polygcd(list(m), diff, p)
        if len(g) > 1:
            return False
    return True


@lru_cache(maxsize=None)
def build_ext(p: int, k: int) -> ExtFieldCtx:
    """First monic irreducible of degree k in lexicographic order.

    Candidates are enumerated as integers n = sum c_i p^i with the constant
    coefficient least significant, so u^2 + c is tried before u^2 + u.
    """
    if k < 1:
        raise ValueError("degree must be >= 1")
    for n in itertools.count():
        coeffs = []
        for _ in range(k):
            n, r = divmod(n, p)
            coeffs.append(r)
        m = tuple(coeffs) + (1,)
        if is_irreducible(m, p):
            return ExtFieldCtx(p, k, m)


def ext_pow(a, e: int, ctx: ExtFieldCtx):
    result = ctx.one
    base = tuple(c % ctx.p for c in a)
    while e:
        if e & 1:
            result = ctx.mul(result, base)
        base = ctx.mul(base, base)
        e >>= 1
    return result


def quad_char(a, ctx: PrimeFieldCtx | ExtFieldCtx) -> int:
    if isinstance(ctx, PrimeFieldCtx):
        a %= ctx.p
        if a == 0:
            return 0
        if ctx.squares is not None:
            return 1 if ctx.squares[a] else -1
        return 1 if pow(a, (ctx.p - 1) // 2, ctx.p) == 1 else -1
    if isinstance(a, int):
        a = ctx.embed(a)
    if not any(a):
        return 0
    r = ext_pow(a, (ctx.q - 1) // 2, ctx)
    return 1 if r == ctx.one else -1


# -- vectorised helpers over F_{p^k} --

def decode_vec(n: np.ndarray, ctx: ExtFieldCtx) -> np.ndarray:
    out = np.empty((n.shape[0], ctx.k), dtype=np.int64)
    n = n.astype(np.int64, copy=True)
    for i in range(ctx.k):
        out[:, i] = n % ctx.p
        n //= ctx.p
    return out


def encode_vec(a: np.ndarray, ctx: ExtFieldCtx) -> np.ndarray:
    out = np.zeros(a.shape[0], dtype=np.int64)
    for i in range(ctx.k - 1, -1, -1):
        out = out * ctx.p + a[:, i]
    return out


def mul_vec(a: np.ndarray, b: np.ndarray, ctx: ExtFieldCtx) -> np.ndarray:
    p, k, m = ctx.p, ctx.k, ctx.modulus
    prod = np.zeros((a.shape[0], 2 * k - 1), dtype=np.int64)
    for i in range(k):
        for j in range(k):
            prod[:, i + j] += a[:, i] * b[:, j]
    prod %= p
    for i in range(2 * k - 2, k - 1, -1):
        c = prod[:, i]
        for j in range(k):
            prod[:, i - k + j] = (prod[:, i - k + j] - c * m[j]) % p
    return prod[:, :k] % p


def poly_eval_vec(coeffs, x: np.ndarray, ctx: ExtFieldCtx) -> np.ndarray:
    """Horner evaluation of an integer polynomial at every row of x."""
    acc = np.zeros_like(x)
    for c in reversed(coeffs):
        acc = mul_vec(acc, x, ctx)
        acc[:, 0] = (acc[:, 0] + c) % ctx.p
    return acc


def square_flags(ctx: ExtFieldCtx, chunk: int = 1 << 20) -> np.ndarray:
    """Boolean array over encoded elements: True iff the element is a square."""
    flags = np.zeros(ctx.q, dtype=bool)
    for start in range(0, ctx.q, chunk):
        y = decode_vec(np.arange(start, min(start + chunk, ctx.q)), ctx)
        flags[encode_vec(mul_vec(y, y, ctx), ctx)] = True
    return flags
