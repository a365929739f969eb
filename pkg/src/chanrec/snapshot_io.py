"""Binary velocity snapshot format.

Little-endian layout, version 1:

    magic   4 bytes   b"CHRC"
    version u32       1
    L_x     f64
    a       f64
    b       f64
    N_x     u32
    N_y     u32
    t       f64
    u       N_x*N_y f64, row-major (x-major)
    v       N_x*N_y f64, row-major (x-major)

Write-then-read is bit-exact.  Wrong magic, wrong version, and a
short or overlong file are distinct errors.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from .fields import VectorField
from .grid import ChannelGrid

MAGIC = b"CHRC"
VERSION = 1
_HEADER = struct.Struct("<4sI3d2Id")


class SnapshotFormatError(ValueError):
    """Base class for snapshot file format errors."""


class SnapshotTruncatedError(SnapshotFormatError):
    pass


class SnapshotMagicError(SnapshotFormatError):
    pass


class SnapshotVersionError(SnapshotFormatError):
    pass


def write_snapshot(path: str | Path, vel: VectorField, t: float) -> None:
    grid = vel.grid
    header = _HEADER.pack(MAGIC, VERSION, grid.L_x, grid.a, grid.b, grid.N_x, grid.N_y, t)
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(np.ascontiguousarray(vel.u.values, dtype="<f8").tobytes())
        fh.write(np.ascontiguousarray(vel.v.values, dtype="<f8").tobytes())


def read_snapshot(path: str | Path) -> tuple[VectorField, float]:
    raw = Path(path).read_bytes()
    if len(raw) < _HEADER.size:
        raise SnapshotTruncatedError(f"{path}: file shorter than the {_HEADER.size}-byte header")
    magic, version, L_x, a, b, N_x, N_y, t = _HEADER.unpack_from(raw, 0)
    if magic != MAGIC:
        raise SnapshotMagicError(f"{path}: bad magic {magic!r}, expected {MAGIC!r}")
    if version != VERSION:
        raise SnapshotVersionError(f"{path}: unsupported format version {version}, expected {VERSION}")
    count = N_x * N_y
    expected = _HEADER.size + 2 * 8 * count
    if len(raw) < expected:
        raise SnapshotTruncatedError(f"{path}: expected {expected} bytes, found {len(raw)}")
    if len(raw) > expected:
        raise SnapshotFormatError(f"{path}: {len(raw) - expected} trailing bytes past the payload")
    grid = ChannelGrid(L_x=L_x, a=a, b=b, N_x=N_x, N_y=N_y)
    u = np.frombuffer(raw, dtype="<f8", count=count, offset=_HEADER.size).reshape(N_x, N_y)
    v = np.frombuffer(raw, dtype="<f8", count=count, offset=_HEADER.size + 8 * count).reshape(N_x, N_y)
    return VectorField.from_arrays(grid, u, v), t
