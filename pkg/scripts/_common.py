"""Helpers shared by the reproduction scripts: cached sweeps and CSV output."""
from __future__ import annotations

import csv
from pathlib import Path

from frobtrace.archive import get_curve, read_archive, write_archive
from frobtrace.curves import trace_sweep


def cached_sweep(label: str, x_max: int, cache: Path, workers: int = 1):
    cache.mkdir(parents=True, exist_ok=True)
    path = cache / f"{label}_{x_max}.frtr"
    if path.exists():
        return read_archive(path)
    arch = trace_sweep(get_curve(label), x_max, workers)
    write_archive(arch, path)
    return arch


def write_csv(path: Path, header, rows) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        w.writerows(rows)
    print(f"wrote {path}")
