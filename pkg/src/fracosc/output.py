"""Report, CSV and state-dump writers (atomic: temp file + rename).

CSV files start with ``# key = value`` metadata lines (schema version,
norm conventions, run parameters) so every number in a table can be
recomputed from the file alone.  The binary state dump has the layout

    magic   8 bytes  b"FRACOSC\\0"
    version u32      1
    dim     u32
    modes   u32
    alpha   f64
    count   u64
    then count records of: t f64, u[K] f64, v[K] f64   (K = modes^dim)

all little-endian.
"""

from __future__ import annotations

import json
import os
import struct
import tempfile
from pathlib import Path

import numpy as np

__all__ = [
    "atomic_write_text",
    "write_csv",
    "write_report",
    "write_error_json",
    "write_state_dump",
    "read_state_dump",
]

SCHEMA = "fracosc-1"
MAGIC = b"FRACOSC\x00"
DUMP_VERSION = 1


def atomic_write_text(path: Path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "1" if x else "0"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".17g")
    return str(x)


def write_csv(path: Path, columns: list[str], rows, meta: dict | None = None) -> None:
    lines = [f"# schema = {SCHEMA}"]
    for key, val in (meta or {}).items():
        lines.append(f"# {key} = {_fmt(val)}")
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(_fmt(x) for x in row))
    atomic_write_text(path, "\n".join(lines) + "\n")


def write_report(path: Path, lines: list[str]) -> None:
    atomic_write_text(path, "\n".join(lines) + "\n")


def write_error_json(out_dir: Path | None, payload: dict) -> str:
    text = json.dumps(payload, indent=2, sort_keys=True)
    if out_dir is not None:
        try:
            atomic_write_text(Path(out_dir) / "error.json", text + "\n")
        except OSError:
            pass
    return text


def write_state_dump(path: Path, dim: int, modes: int, alpha: float, times, U, V) -> None:
    times = np.asarray(times, dtype="<f8")
    U = np.asarray(U, dtype="<f8")
    V = np.asarray(V, dtype="<f8")
    k = modes**dim
    if U.shape != (times.size, k) or V.shape != U.shape:
        raise ValueError("dump arrays are inconsistent with the declared geometry")
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(MAGIC)
            fh.write(struct.pack("<I", DUMP_VERSION))
            fh.write(struct.pack("<I", dim))
            fh.write(struct.pack("<I", modes))
            fh.write(struct.pack("<d", float(alpha)))
            fh.write(struct.pack("<Q", times.size))
            for i in range(times.size):
                fh.write(struct.pack("<d", float(times[i])))
                fh.write(U[i].tobytes())
                fh.write(V[i].tobytes())
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_state_dump(path: Path):
    with open(path, "rb") as fh:
        magic = fh.read(8)
        if magic != MAGIC:
            raise ValueError("not a state dump (bad magic)")
        (version,) = struct.unpack("<I", fh.read(4))
        if version != DUMP_VERSION:
            raise ValueError(f"unsupported dump version {version}")
        (dim,) = struct.unpack("<I", fh.read(4))
        (modes,) = struct.unpack("<I", fh.read(4))
        (alpha,) = struct.unpack("<d", fh.read(8))
        (count,) = struct.unpack("<Q", fh.read(8))
        k = modes**dim
        times = np.empty(count)
        U = np.empty((count, k))
        V = np.empty((count, k))
        for i in range(count):
            (times[i],) = struct.unpack("<d", fh.read(8))
            U[i] = np.frombuffer(fh.read(8 * k), dtype="<f8")
            V[i] = np.frombuffer(fh.read(8 * k), dtype="<f8")
    return dim, modes, alpha, times, U, V
