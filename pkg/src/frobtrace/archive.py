"""FRTR trace archive files and the curve registry.

Layout (all little-endian): b"FRTR", u16 version, u8 genus, u8 coefficient
count, i64 coefficients (constant term first), u64 x_max, u64 record count,
then records (u64 p, i64 a1) sorted by p.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
import struct

import numpy as np

from .curves import CurveModel, TraceArchive

MAGIC = b"FRTR"
VERSION = 1
RECORD = np.dtype([("p", "<u8"), ("a1", "<i8")])


class ArchiveFormatError(ValueError):
    pass


def to_bytes(archive: TraceArchive) -> bytes:
    f = archive.curve.f
    head = MAGIC + struct.pack("<HBB", VERSION, archive.curve.genus, len(f))
    head += struct.pack(f"<{len(f)}q", *f)
    head += struct.pack("<QQ", archive.x_max, len(archive))
    rec = np.empty(len(archive), dtype=RECORD)
    rec["p"] = archive.primes
    rec["a1"] = archive.a1
    return head + rec.tobytes()


def write_archive(archive: TraceArchive, path: str | Path) -> None:
    Path(path).write_bytes(to_bytes(archive))


def from_bytes(data: bytes, curve: CurveModel | None = None) -> TraceArchive:
    if data[:4] != MAGIC:
        raise ArchiveFormatError("bad magic; not an FRTR archive")
    version, genus, ncoef = struct.unpack_from("<HBB", data, 4)
    if version != VERSION:
        raise ArchiveFormatError(f"unsupported archive version {version}")
    off = 8
    coeffs = struct.unpack_from(f"<{ncoef}q", data, off)
    off += 8 * ncoef
    x_max, count = struct.unpack_from("<QQ", data, off)
    off += 16
    if len(data) - off != count * RECORD.itemsize:
        raise ArchiveFormatError("record section length does not match header count")
    rec = np.frombuffer(data, dtype=RECORD, count=count, offset=off)
    if curve is None:
        curve = lookup_curve_by_coeffs(genus, coeffs)
    elif curve.f != tuple(coeffs) or curve.genus != genus:
        raise ArchiveFormatError("archive header does not match the supplied curve")
    return TraceArchive(curve, int(x_max), rec["p"].copy(), rec["a1"].copy())


def read_archive(path: str | Path, curve: CurveModel | None = None) -> TraceArchive:
    return from_bytes(Path(path).read_bytes(), curve)


# -- registry -------------------------------------------------------------------

@dataclass(frozen=True)
class CurveRegistryEntry:
    label: str
    genus: int
    f: tuple[int, ...]
    bad: frozenset[int] | None = None

    def model(self) -> CurveModel:
        return CurveModel(self.genus, self.f, self.label, self.bad)


REGISTRY = {
    "J1": CurveRegistryEntry("J1", 2, (1, -1, 0, 0, 0, 1), frozenset({2, 19, 151})),
    "J2": CurveRegistryEntry("J2", 3, (-35, -12, 0, 0, 0, 0, 0, 4)),
    "J3": CurveRegistryEntry("J3", 4, (-39, -8, 0, 0, 0, 0, 0, 0, 0, 4)),
}


def get_curve(label: str) -> CurveModel:
    try:
        return REGISTRY[label].model()
    except KeyError:
        raise KeyError(f"unknown curve {label!r}; built-ins are {', '.join(REGISTRY)}") from None


def lookup_curve_by_coeffs(genus: int, coeffs) -> CurveModel:
    for entry in REGISTRY.values():
        if entry.genus == genus and entry.f == tuple(coeffs):
            return entry.model()
    return CurveModel(genus, tuple(coeffs))


def parse_curve_spec(text: str) -> CurveModel:
    """Parse ``genus=``, ``f=`` (constant first), optional ``bad=`` and ``label=``."""
    fields = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ValueError(f"line {lineno}: expected key=value")
        fields[key.strip()] = value.strip()
    missing = {"genus", "f"} - fields.keys()
    if missing:
        raise ValueError(f"curve spec missing {', '.join(sorted(missing))}")
    unknown = fields.keys() - {"genus", "f", "bad", "label"}
    if unknown:
        raise ValueError(f"unknown curve spec keys: {', '.join(sorted(unknown))}")
    f = tuple(int(c) for c in fields["f"].split(","))
    bad = frozenset(int(b) for b in fields["bad"].split(",")) if "bad" in fields else None
    return CurveModel(int(fields["genus"]), f, fields.get("label", ""), bad)


def load_curve(label_or_path: str) -> CurveModel:
    if label_or_path in REGISTRY:
        return get_curve(label_or_path)
    path = Path(label_or_path)
    if path.exists():
        return parse_curve_spec(path.read_text())
    raise KeyError(f"unknown curve {label_or_path!r}: not a built-in label or a spec file")
