"""
SPGF binary grid format.

Layout (little-endian):
    magic   4 bytes  b'SPGF'
    version u32      = 1
    n       u8
    J       u8
    flags   u16      bit 0 = nonneg
    values  2^(nJ) IEEE-754 f64, row-major
"""
import struct
from pathlib import Path
from typing import Union

import numpy as np

from config.exceptions import GridFormatError
from apps.grid.services.grid import GridFunction


MAGIC = b'SPGF'
VERSION = 1
HEADER = struct.Struct('<4sIBBH')
FLAG_NONNEG = 0x1


def encode_spgf(f: GridFunction) -> bytes:
    flags = FLAG_NONNEG if f.nonneg else 0
    header = HEADER.pack(MAGIC, VERSION, f.n, f.J, flags)
    return header + np.ascontiguousarray(f.flat, dtype='<f8').tobytes()


def decode_spgf(payload: bytes) -> GridFunction:
    if len(payload) < HEADER.size:
        raise GridFormatError(f"SPGF payload too short: {len(payload)} bytes")
    magic, version, n, J, flags = HEADER.unpack_from(payload)
    if magic != MAGIC:
        raise GridFormatError(f"Bad SPGF magic {magic!r}")
    if version != VERSION:
        raise GridFormatError(f"Unsupported SPGF version {version}")
    if flags & ~FLAG_NONNEG:
        raise GridFormatError(f"Unknown SPGF flags 0x{flags:04x}")
    expected = (1 << (n * J)) * 8
    body = payload[HEADER.size:]
    if len(body) != expected:
        raise GridFormatError(
            f"SPGF body holds {len(body)} bytes, expected {expected} for n={n}, J={J}"
        )
    values = np.frombuffer(body, dtype='<f8').astype(np.float64)
    return GridFunction.from_flat(n, J, values, nonneg=bool(flags & FLAG_NONNEG))


def load_spgf(path: Union[str, Path]) -> GridFunction:
    return decode_spgf(Path(path).read_bytes())


def save_spgf(f: GridFunction, path: Union[str, Path]) -> None:
    Path(path).write_bytes(encode_spgf(f))
