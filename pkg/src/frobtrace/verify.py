"""Named self-check suites behind ``frobtrace verify``."""
from __future__ import annotations

from dataclasses import dataclass
import math
from typing import Callable, Iterator

from sympy import primefactors

from . import matcount, satotate
from .archive import get_curve
from .curves import frobenius_trace_euler, trace_sweep
from .stats import nu_histogram


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


def formulas() -> Iterator[Check]:
    for ell in (2, 3, 5, 7):
        tab = matcount.enumerate_trace_counts(1, ell)
        ok = all(tab.count(t) == matcount.closed_count(1, ell, t).count for t in range(ell))
        ok &= tab.group_order == matcount.gsp_order(1, ell)
        yield Check(f"g=1 ell={ell} enumeration vs closed form", ok)
    tab = matcount.enumerate_trace_counts(2, 2)
    ok = all(tab.count(t) == matcount.closed_count(2, 2, t).count for t in range(2))
    ok &= tab.group_order == matcount.gsp_order(2, 2)
    yield Check("g=2 ell=2 enumeration vs closed form", ok, str(tab.counts))
    for ell in (3, 5, 7):
        ok = all(matcount.n_count(ell, t) == ((ell - 1) * (ell - 2) if t == 0 else (ell - 2) ** 2)
                 for t in range(ell))
        yield Check(f"N counts ell={ell}", ok)


def appendix_a() -> Iterator[Check]:
    for n in range(2, 9):
        d = matcount.min_class_dim(n)
        yield Check(f"n={n} min dim", d == 4 * n - 4, str(d))
        d0 = matcount.min_class_dim(n, trace_zero=True)
        want = 4 if n == 2 else 4 * n - 2
        yield Check(f"n={n} trace-zero min dim", d0 == want, str(d0))


def kloosterman() -> Iterator[Check]:
    for ell in (3, 5, 7, 11):
        for r in range(2, 6):
            lhs, rhs, ok = matcount.kloosterman_moment_check(ell, r)
            yield Check(f"ell={ell} r={r}", ok, f"{lhs:.6f} vs {rhs}")


def density() -> Iterator[Check]:
    psi0 = satotate.psi_g2(0.0)
    yield Check("psi_g2(0) = 64/(15 pi^2)", abs(psi0 - 64 / (15 * math.pi**2)) < 1e-8, f"{psi0:.12f}")
    phi0 = satotate.phi_g2(0.0)
    yield Check("phi_g2(0) = 256/(15 pi^2)", abs(phi0 - 256 / (15 * math.pi**2)) < 1e-8, f"{phi0:.12f}")
    total = satotate.integrate(satotate.phi_g2)
    yield Check("integral of phi_g2 = 1", abs(total - 1) < 1e-6, f"{total:.12f}")
    total = satotate.integrate(satotate.phi_g1)
    yield Check("integral of phi_g1 = 1", abs(total - 1) < 1e-6, f"{total:.12f}")


def histogram_small(x_max: int = 1 << 12) -> Iterator[Check]:
    curve = get_curve("J1")
    arch = trace_sweep(curve, x_max)
    slow = [frobenius_trace_euler(curve, p) for p in arch.primes.tolist()]
    yield Check(f"J1 traces to {x_max}: kernel vs Euler criterion", slow == arch.a1.tolist())
    want: dict[int, int] = {}
    for a in slow:
        if a:
            k = len(primefactors(abs(a)))
            want[k] = want.get(k, 0) + 1
    got = nu_histogram(arch)
    yield Check(f"J1 nu histogram to {x_max}", got == dict(sorted(want.items())), str(got))


SUITES: dict[str, Callable[[], Iterator[Check]]] = {
    "formulas": formulas,
    "appendixA": appendix_a,
    "kloosterman": kloosterman,
    "density": density,
    "histogram-small": histogram_small,
}


def run_suite(name: str) -> list[Check]:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return list(SUITES[name]())
