"""frobtrace command line.

Exit codes: 0 ok, 1 usage or bad parameter, 2 enumeration budget exceeded,
3 I/O or archive format error.  A failing ``verify`` also exits 1.
"""
from __future__ import annotations

import argparse
from dataclasses import asdict, dataclass, field
import hashlib
import io
import json
import math
import os
from pathlib import Path
import sys
from typing import Sequence

import numpy as np

from . import __version__, euler, matcount, satotate, stats
from .archive import ArchiveFormatError, load_curve, read_archive, write_archive
from .curves import trace_sweep
from .errors import BudgetExceeded
from .verify import SUITES, run_suite

WORKERS_ENV = "FROBTRACE_WORKERS"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class RunConfig:
    """Everything that determines a command's output (worker count excluded)."""
    command: str
    params: dict = field(default_factory=dict)
    workers: int = 1

    def config_hash(self) -> str:
        blob = json.dumps({"command": self.command, "params": self.params},
                          sort_keys=True, default=str)
        return hashlib.sha256(blob.encode()).hexdigest()[:12]


def default_workers() -> int:
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"{WORKERS_ENV}={raw!r} is not an integer") from None
    if n < 1:
        raise UsageError(f"{WORKERS_ENV} must be >= 1")
    return n


def _csv(header: str, rows, cfg: RunConfig) -> str:
    buf = io.StringIO()
    buf.write(header + "\n")
    for row in rows:
        buf.write(",".join(_fmt(v) for v in row) + "\n")
    buf.write(f"# frobtrace {__version__} config={cfg.config_hash()}\n")
    return buf.getvalue()


def _fmt(v) -> str:
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _archive(args):
    return read_archive(args.input)


# -- subcommands --------------------------------------------------------------

def cmd_sweep(args, cfg):
    curve = load_curve(args.curve)
    if args.xmax < 3:
        raise UsageError("--xmax must be >= 3")
    arch = trace_sweep(curve, args.xmax, cfg.workers)
    write_archive(arch, args.out)
    print(f"sweep curve={curve.label or args.curve} x_max={args.xmax} records={len(arch)} out={args.out}")


def cmd_pi(args, cfg):
    arch = _archive(args)
    tab = stats.pi_a(arch, args.t, args.checkpoints)
    rows = zip(tab.checkpoints.tolist(), tab.values.tolist(), tab.values_neg.tolist(),
               tab.normalizer.tolist())
    print(f"pi t={args.t} x={int(tab.checkpoints[-1])} count={int(tab.values[-1])} "
          f"count_neg={int(tab.values_neg[-1])}")
    _emit(_csv("x,count,count_neg_t,sqrtx_over_logx", rows, cfg), args.out)


def cmd_nu_hist(args, cfg):
    arch = _archive(args)
    hi = arch.x_max + 1 if args.hi is None else args.hi
    hist = stats.nu_histogram(arch, (args.lo, hi))
    print(f"nu-hist range=[{args.lo},{hi}) " + " ".join(f"{k}:{v}" for k, v in hist.items()))
    _emit(_csv("nu,count", sorted(hist.items()), cfg), args.out)


def cmd_ek(args, cfg):
    arch = _archive(args)
    grid = np.round(np.arange(args.tau_min, args.tau_max + args.tau_step / 2, args.tau_step), 10)
    res = stats.ek_cdf(arch, grid)
    print(f"ek points={len(grid)} sup_distance={res.sup_distance:.6f}")
    _emit(_csv("tau,empirical,normal", zip(res.tau, res.empirical, res.normal), cfg), args.out)


def cmd_moments(args, cfg):
    arch = _archive(args)
    mom = stats.ek_moments(arch, args.k_max)
    print("moments " + " ".join(f"k{k}={v:.6f}" for k, v in mom.items()))
    rows = [(k, v, stats.GAUSSIAN_MOMENTS[k]) for k, v in mom.items()]
    _emit(_csv("k,moment,gaussian", rows, cfg), args.out)


def cmd_euler(args, cfg):
    est = euler.euler_product(args.g, args.t, args.L)
    lo, hi = est.interval
    print(f"euler g={args.g} t={args.t} L={args.L} partial={est.partial:.10f} "
          f"interval=[{lo:.10f},{hi:.10f}]")


def cmd_constant(args, cfg):
    if args.image == "surjective":
        image = euler.ImageData.surjective()
    elif args.image == "none":
        image = euler.ImageData.none()
    else:
        if args.m_a is None:
            raise UsageError("--m-A is required with an image file")
        image = euler.ImageData.from_file(args.image, args.m_a)
    phi0 = args.phi0
    if phi0 is None:
        phi0 = float(satotate.density_for(args.g)(np.array([0.0]))[0]) if args.g <= 2 else None
    if phi0 is None:
        raise UsageError("--phi0 is required for g >= 3")
    c = euler.lt_constant(args.g, args.t, phi0, image, args.L)
    lo, hi = c.interval
    print(f"constant g={args.g} t={args.t} L={args.L} value={c.value:.10f} "
          f"interval=[{lo:.10f},{hi:.10f}]")


def cmd_group_count(args, cfg):
    if args.enumerate:
        tab = (matcount.gl2_trace_table(args.m) if args.g == 1 and not args.full_scan
               else matcount.enumerate_trace_counts(args.g, args.m))
    else:
        tab = matcount.full_group_table(args.g, args.m)
    rows = []
    for c in tab:
        closed = ""
        if args.g in (1, 2) and matcount.is_prime(args.m):
            closed = matcount.closed_count(args.g, args.m, c.t).count
        rows.append((c.t, c.count, closed, c.group_order))
    print(f"group-count g={args.g} m={args.m} order={tab.group_order} source={tab.source} "
          + " ".join(f"{t}:{c}" for t, c in tab.counts.items()))
    _emit(_csv("t,count,closed_form,group_order", rows, cfg), args.out)


def cmd_kloosterman(args, cfg):
    rows = []
    all_ok = True
    for r in args.r:
        lhs, rhs, ok = matcount.kloosterman_moment_check(args.ell, r)
        all_ok &= ok
        rows.append((r, lhs, rhs, int(ok)))
    print(f"kloosterman ell={args.ell} r={','.join(map(str, args.r))} pass={all_ok}")
    _emit(_csv("r,sum_K_r,identity,pass", rows, cfg), args.out)
    return 0 if all_ok else 1


def cmd_density(args, cfg):
    spec = satotate.density_for(args.g) if args.g <= 2 else None
    if spec is None:
        raise UsageError("closed-form density exists for g in {1, 2}; use mc-density")
    xs = np.linspace(-1.0, 1.0, args.points)
    phi = np.asarray(spec(xs), dtype=np.float64)
    print(f"density g={args.g} kind={spec.kind} points={args.points} phi0={float(spec(np.array([0.0]))[0]):.10f}")
    _emit(_csv("x,phi,stderr", zip(xs, phi, np.zeros_like(xs)), cfg), args.out)


def cmd_mc_density(args, cfg):
    xs = np.linspace(-1.0, 1.0, args.points) if args.x is None else np.array(args.x)
    res = satotate.mc_density(args.g, args.samples, args.seed, xs, cfg.workers)
    mid = int(np.argmin(np.abs(res.x)))
    print(f"mc-density g={args.g} samples={args.samples} seed={args.seed} "
          f"phi({res.x[mid]:.4f})={res.phi[mid]:.6f} se={res.stderr[mid]:.6f}")
    _emit(_csv("x,phi,stderr", zip(res.x, res.phi, res.stderr), cfg), args.out)


def cmd_centralizer(args, cfg):
    rows = []
    for n in range(2, args.n_max + 1):
        rows.append((n, matcount.min_class_dim(n), matcount.min_class_dim(n, trace_zero=True)))
    print("centralizer " + " ".join(f"n{n}={d}/{d0}" for n, d, d0 in rows))
    _emit(_csv("n,min_dim,min_dim_trace_zero", rows, cfg), args.out)


def cmd_verify(args, cfg):
    checks = run_suite(args.suite)
    for c in checks:
        print(f"[{'PASS' if c.passed else 'FAIL'}] {c.name}" + (f"  {c.detail}" if c.detail else ""))
    failed = sum(not c.passed for c in checks)
    print(f"verify {args.suite}: {len(checks) - failed}/{len(checks)} passed")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="frobtrace", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"frobtrace {__version__}")
    p.add_argument("--workers", type=int, default=None,
                   help=f"worker processes (default ${WORKERS_ENV} or 1)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def archive_in(sp):
        sp.add_argument("--in", dest="input", required=True, help="FRTR archive")
        sp.add_argument("--out", help="CSV output (default stdout)")

    sp = sub.add_parser("sweep", help="compute traces at all good primes <= xmax")
    sp.add_argument("--curve", required=True, help="J1, J2, J3 or a curve spec file")
    sp.add_argument("--xmax", type=int, required=True)
    sp.add_argument("--out", required=True, help="archive path")
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("pi", help="pi_A(x, t) at checkpoints")
    archive_in(sp)
    sp.add_argument("--t", type=int, required=True)
    sp.add_argument("--checkpoints", type=int, nargs="+")
    sp.set_defaults(func=cmd_pi)

    sp = sub.add_parser("nu-hist", help="histogram of nu(a1)")
    archive_in(sp)
    sp.add_argument("--lo", type=int, default=0)
    sp.add_argument("--hi", type=int, default=None, help="exclusive upper bound on p")
    sp.set_defaults(func=cmd_nu_hist)

    sp = sub.add_parser("ek", help="Erdos-Kac empirical CDF")
    archive_in(sp)
    sp.add_argument("--tau-min", type=float, default=-2.0)
    sp.add_argument("--tau-max", type=float, default=2.0)
    sp.add_argument("--tau-step", type=float, default=0.25)
    sp.set_defaults(func=cmd_ek)

    sp = sub.add_parser("moments", help="normalised nu moments")
    archive_in(sp)
    sp.add_argument("--k-max", type=int, default=4)
    sp.set_defaults(func=cmd_moments)

    sp = sub.add_parser("euler", help="Euler product P_{g,t}")
    sp.add_argument("--g", type=int, required=True)
    sp.add_argument("--t", type=int, required=True)
    sp.add_argument("--L", type=int, default=100000)
    sp.set_defaults(func=cmd_euler)

    sp = sub.add_parser("constant", help="Lang-Trotter constant c(A, t)")
    sp.add_argument("--g", type=int, required=True)
    sp.add_argument("--t", type=int, required=True)
    sp.add_argument("--L", type=int, default=100000)
    sp.add_argument("--image", default="surjective",
                    help="'surjective', 'none' or a file of 'm t count order' lines")
    sp.add_argument("--m-A", dest="m_a", type=int)
    sp.add_argument("--phi0", type=float, help="Phi(0); defaults to the closed form for g <= 2")
    sp.set_defaults(func=cmd_constant)

    sp = sub.add_parser("group-count", help="|C(m, t)| in GSp_2g(Z/m)")
    sp.add_argument("--g", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--enumerate", action="store_true", help="count by exhaustive scan")
    sp.add_argument("--full-scan", action="store_true",
                    help="with g=1, scan all m^4 matrices instead of traces")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_group_count)

    sp = sub.add_parser("kloosterman", help="Kloosterman moment identity")
    sp.add_argument("--ell", type=int, required=True)
    sp.add_argument("--r", type=int, nargs="+", default=[2, 3, 4, 5])
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_kloosterman)

    sp = sub.add_parser("density", help="closed-form Sato-Tate density table")
    sp.add_argument("--g", type=int, required=True)
    sp.add_argument("--points", type=int, default=201)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_density)

    sp = sub.add_parser("mc-density", help="Monte Carlo Sato-Tate density")
    sp.add_argument("--g", type=int, required=True)
    sp.add_argument("--samples", type=int, default=10**6)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--points", type=int, default=41)
    sp.add_argument("--x", type=float, nargs="+", help="explicit evaluation points")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_mc_density)

    sp = sub.add_parser("centralizer", help="minimal conjugacy class dimensions in Sp_2n")
    sp.add_argument("--n-max", type=int, default=8)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_centralizer)

    sp = sub.add_parser("verify", help="run a named self-check suite")
    sp.add_argument("suite", help=" | ".join(SUITES))
    sp.set_defaults(func=cmd_verify)
    return p


def _config(args) -> RunConfig:
    params = {k: v for k, v in vars(args).items()
              if k not in ("func", "command", "workers", "out")}
    return RunConfig(args.command, params, args.workers)


def run(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.workers is None:
            args.workers = default_workers()
        elif args.workers < 1:
            raise UsageError("--workers must be >= 1")
        status = args.func(args, _config(args))
        return int(status or 0)
    except UsageError as e:
        print(f"frobtrace: usage error: {e}", file=sys.stderr)
        return 1
    except BudgetExceeded as e:
        print(f"frobtrace: budget exceeded: {e}", file=sys.stderr)
        return 2
    except (OSError, ArchiveFormatError) as e:
        print(f"frobtrace: I/O error: {e}", file=sys.stderr)
        return 3
    except (ValueError, KeyError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        print(f"frobtrace: invalid parameter: {msg}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
