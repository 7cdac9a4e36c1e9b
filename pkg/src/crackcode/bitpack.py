"""Two-bit packing of direction codes.

Four codes share a byte.  The first code sits in the most significant bit
pair, so ``[0, 1, 2, 3]`` packs to ``0b00_01_10_11 == 0x1B``.  Unused bit pairs
of the final byte are zero.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadLength

_SHIFTS = np.array([6, 4, 2, 0], dtype=np.uint8)


@dataclass(frozen=True)
class PackedCodes:
    data: bytes
    count: int


def packed_size(count: int) -> int:
    return (count + 3) // 4


def pack(codes) -> PackedCodes:
    if isinstance(codes, (list, tuple)) and len(codes) <= 64:
        # short chains dominate noisy images; numpy setup costs more than the loop
        out = bytearray(packed_size(len(codes)))
        for k, c in enumerate(codes):
            if not 0 <= c <= 3:
                raise ValueError("direction codes must be in 0..3")
            out[k >> 2] |= c << (6 - 2 * (k & 3))
        return PackedCodes(bytes(out), len(codes))
    arr = np.asarray(codes, dtype=np.int64).ravel()
    if arr.size and (arr.min() < 0 or arr.max() > 3):
        raise ValueError("direction codes must be in 0..3")
    quads = np.zeros(packed_size(arr.size) * 4, dtype=np.uint8)
    quads[:arr.size] = arr
    packed = np.bitwise_or.reduce(quads.reshape(-1, 4) << _SHIFTS, axis=1)
    return PackedCodes(packed.astype(np.uint8).tobytes(), int(arr.size))


def unpack(packed: PackedCodes) -> list[int]:
    if len(packed.data) != packed_size(packed.count):
        raise BadLength(
            f"{len(packed.data)} bytes cannot hold exactly {packed.count} codes"
        )
    raw = np.frombuffer(packed.data, dtype=np.uint8)
    codes = (raw[:, None] >> _SHIFTS) & 3
    return codes.ravel()[:packed.count].tolist()
