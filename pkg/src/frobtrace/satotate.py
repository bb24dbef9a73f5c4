"""Sato-Tate densities of normalised traces a1 / (2g sqrt p) on [-1, 1].

g = 1 and g = 2 have closed forms (the g = 2 one up to a 1-d integral, done
by quadrature).  Any g can be estimated by Monte Carlo over USp(2g)
eigenangles with weight prod_{j<k} (cos t_j - cos t_k)^2 prod_j sin^2 t_j.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
import math
from typing import Callable

import numpy as np

from .curves import TraceArchive

GL_NODES, GL_WEIGHTS = np.polynomial.legendre.leggauss(10)
_VEC_NODES, _VEC_WEIGHTS = np.polynomial.legendre.leggauss(24)


def _check_domain(x, bound: float) -> np.ndarray:
    arr = np.asarray(x, dtype=np.float64)
    if np.any(np.abs(arr) > bound):
        raise ValueError(f"argument outside [-{bound}, {bound}]")
    return arr


def phi_g1(x):
    """(2/pi) sqrt(1 - x^2)."""
    arr = _check_domain(x, 1.0)
    out = (2.0 / math.pi) * np.sqrt(np.clip(1.0 - arr * arr, 0.0, None))
    return float(out) if out.ndim == 0 else out


def rho_g2(x1, x2):
    return (x1 * x1 - 4 * x2 + 8) * (x2 - 2 * x1 + 2) * (x2 + 2 * x1 + 2)


def _psi_integrand(phi, x):
    # x2 = mid - half cos(phi) maps [0, pi] onto R(x) = [b, c]; with
    # rho = 4 (c - x2)(x2 - b)(x2 - a) the square roots of the first two
    # factors cancel the Jacobian, leaving sin^2 phi sqrt(x2 - a).
    ax = abs(x)
    return np.sin(phi) ** 2 * np.sqrt(4 * ax + _width(ax) * np.sin(phi / 2) ** 2)


def _width(ax):
    # c - b = x^2/4 + 2 - (2|x| - 2), factored to avoid cancellation near |x| = 4
    return (4.0 - ax) ** 2 / 4


def _psi_scale(x):
    width = _width(abs(x))
    return width * width / 2 / (4 * math.pi ** 2)


def _gl(f, lo, hi):
    mid, half = (lo + hi) / 2, (hi - lo) / 2
    return half * float(np.dot(GL_WEIGHTS, f(mid + half * GL_NODES)))


def psi_g2(x: float, tol: float = 1e-12) -> float:
    """Density of a1/sqrt(p) on [-4, 4] for USp(4), by adaptive Gauss-Legendre."""
    x = float(_check_domain(x, 4.0))
    if abs(x) == 4.0:
        return 0.0
    f = lambda phi: _psi_integrand(phi, x)
    total = 0.0
    stack = [(0.0, math.pi, _gl(f, 0.0, math.pi), 0)]
    while stack:
        lo, hi, whole, depth = stack.pop()
        mid = (lo + hi) / 2
        left, right = _gl(f, lo, mid), _gl(f, mid, hi)
        if abs(left + right - whole) <= tol * (hi - lo) / math.pi or depth > 40:
            total += left + right
        else:
            stack.append((lo, mid, left, depth + 1))
            stack.append((mid, hi, right, depth + 1))
    return _psi_scale(x) * total


def psi_g2_composite(x: float, panels: int, order: int = 2) -> float:
    """Fixed composite Gauss-Legendre rule; used to check convergence."""
    x = float(_check_domain(x, 4.0))
    nodes, weights = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(0.0, math.pi, panels + 1)
    total = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        mid, half = (lo + hi) / 2, (hi - lo) / 2
        total += half * float(np.dot(weights, _psi_integrand(mid + half * nodes, x)))
    return _psi_scale(x) * total


def psi_g2_vec(x, panels: int = 8) -> np.ndarray:
    """psi_g2 on an array with a fixed 24-point composite rule per panel."""
    x = _check_domain(x, 4.0).reshape(-1)
    edges = np.linspace(0.0, math.pi, panels + 1)
    phis = ((edges[:-1, None] + edges[1:, None]) / 2
            + (edges[1:, None] - edges[:-1, None]) / 2 * _VEC_NODES[None, :]).reshape(-1)
    w = np.tile(_VEC_WEIGHTS, panels) * (math.pi / panels / 2)
    ax = np.abs(x)[:, None]
    vals = np.sin(phis) ** 2 * np.sqrt(4 * ax + _width(ax) * np.sin(phis / 2) ** 2)
    width = _width(ax)[:, 0]
    return width * width / 2 / (4 * math.pi ** 2) * (vals @ w)


def phi_g2(x):
    """Phi(x) = 4 Psi(4x) on [-1, 1]."""
    arr = _check_domain(x, 1.0)
    if arr.ndim == 0:
        return 4.0 * psi_g2(4.0 * float(arr))
    return 4.0 * psi_g2_vec(4.0 * arr).reshape(arr.shape)


@dataclass(frozen=True)
class DensitySpec:
    g: int
    kind: str  # closed-g1 | closed-g2 | monte-carlo
    eval: Callable

    def __call__(self, x):
        return self.eval(x)


def density_for(g: int, **mc_kwargs) -> DensitySpec:
    if g == 1:
        return DensitySpec(1, "closed-g1", phi_g1)
    if g == 2:
        return DensitySpec(2, "closed-g2", phi_g2)
    return mc_density_spec(g, **mc_kwargs)


def integrate(phi, lo: float = -1.0, hi: float = 1.0, panels: int = 64) -> float:
    """Composite Gauss-Legendre integral of a vectorised density."""
    edges = np.linspace(lo, hi, panels + 1)
    mids = (edges[:-1] + edges[1:]) / 2
    half = (edges[1:] - edges[:-1]) / 2
    pts = (mids[:, None] + half[:, None] * _VEC_NODES[None, :]).reshape(-1)
    vals = np.asarray(phi(pts), dtype=np.float64).reshape(panels, -1)
    return float(np.sum(half * (vals @ _VEC_WEIGHTS)))


# -- Monte Carlo over USp(2g) ------------------------------------------------

@dataclass(frozen=True)
class WeylSample:
    angles: np.ndarray
    weight: float
    trace: float


def weyl_weight(theta: np.ndarray) -> np.ndarray:
    """Unnormalised USp(2g) eigenangle density; theta has shape (n, g)."""
    c = np.cos(theta)
    w = np.prod(np.sin(theta) ** 2, axis=1)
    g = theta.shape[1]
    for j in range(g):
        for k in range(j + 1, g):
            w = w * (c[:, j] - c[:, k]) ** 2
    return w


def weyl_samples(g: int, n: int, seed: int) -> list[WeylSample]:
    rng = np.random.default_rng(seed)
    theta = rng.uniform(0.0, math.pi, size=(n, g))
    w = weyl_weight(theta)
    tr = 2 * np.cos(theta).sum(axis=1)
    return [WeylSample(theta[i], float(w[i]), float(tr[i])) for i in range(n)]


@dataclass(frozen=True)
class MCDensity:
    x: np.ndarray
    phi: np.ndarray
    stderr: np.ndarray
    n_samples: int
    bandwidth: float

    @property
    def lower(self) -> np.ndarray:
        return self.phi - 2 * self.stderr

    @property
    def upper(self) -> np.ndarray:
        return self.phi + 2 * self.stderr


N_BLOCKS = 100
BOOTSTRAP = 200
_SUBCHUNK = 1 << 19


def _block_sums(g, n, seed_seq, xs, h):
    rng = np.random.default_rng(seed_seq)
    num = np.zeros(xs.shape[0])
    den = 0.0
    done = 0
    while done < n:
        k = min(_SUBCHUNK, n - done)
        theta = rng.uniform(0.0, math.pi, size=(k, g))
        w = weyl_weight(theta)
        s = np.cos(theta).sum(axis=1) / g  # trace / 2g
        for i, x0 in enumerate(xs):
            u = (x0 - s) / h
            num[i] += float(np.dot(w, np.exp(-0.5 * u * u)))
        den += float(w.sum())
        done += k
    return num / (h * math.sqrt(2 * math.pi)), den


def mc_density(g: int, n_samples: int, seed: int, eval_points,
               workers: int = 1) -> MCDensity:
    """Self-normalised importance-sampling KDE of trace/(2g) under Haar measure.

    Samples are split into N_BLOCKS blocks with seeds spawned from ``seed``;
    standard errors come from a bootstrap over blocks, so the result does
    not depend on ``workers``.
    """
    if n_samples < 10**4:
        raise ValueError("need at least 10^4 samples")
    xs = np.atleast_1d(np.asarray(eval_points, dtype=np.float64))
    h = 0.5 * n_samples ** (-0.2)
    children = np.random.SeedSequence(seed).spawn(N_BLOCKS)
    sizes = [n_samples // N_BLOCKS + (i < n_samples % N_BLOCKS) for i in range(N_BLOCKS)]
    args = [(g, sizes[i], children[i], xs, h) for i in range(N_BLOCKS)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_block_sums, *zip(*args)))
    else:
        parts = [_block_sums(*a) for a in args]
    num = np.array([p[0] for p in parts])  # (blocks, points)
    den = np.array([p[1] for p in parts])
    est = num.sum(axis=0) / den.sum()
    boot_rng = np.random.default_rng(np.random.SeedSequence(seed).spawn(N_BLOCKS + 1)[-1])
    idx = boot_rng.integers(0, N_BLOCKS, size=(BOOTSTRAP, N_BLOCKS))
    boot = num[idx].sum(axis=1) / den[idx].sum(axis=1)[:, None]
    se = boot.std(axis=0, ddof=1)
    return MCDensity(xs, est, se, n_samples, h)


def mc_density_spec(g: int, n_samples: int = 10**6, seed: int = 0,
                    grid_size: int = 201) -> DensitySpec:
    grid = np.linspace(-1.0, 1.0, grid_size)
    est = mc_density(g, n_samples, seed, grid).phi
    est = np.clip(est, 0.0, None)
    # renormalise the tabulated estimate on its own grid
    est /= np.trapezoid(est, grid)
    return DensitySpec(g, "monte-carlo", lambda x: np.interp(x, grid, est))


# -- empirical densities from archives ----------------------------------------

def empirical_density(archive: TraceArchive, bins: int = 20) -> tuple[np.ndarray, np.ndarray]:
    """(edges, masses) for a1 / (2g sqrt p) over [-1, 1]; masses sum to 1."""
    if len(archive) == 0:
        raise ValueError("empty archive")
    g = archive.curve.genus
    x = archive.a1 / (2 * g * np.sqrt(archive.primes.astype(np.float64)))
    edges = np.linspace(-1.0, 1.0, bins + 1)
    counts, _ = np.histogram(x, bins=edges)
    return edges, counts / counts.sum()


def bin_integrals(phi, edges: np.ndarray) -> np.ndarray:
    return np.array([integrate(phi, lo, hi, panels=4) for lo, hi in zip(edges[:-1], edges[1:])])
