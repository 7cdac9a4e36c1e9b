"""Row-wise run-length coding of 8-bit images, used as a comparison baseline.

Each row is coded independently as ``(count, value)`` byte pairs with counts
from 1 to 255; longer runs are split.
"""
from __future__ import annotations

import numpy as np

from .errors import CorruptStream, UnsupportedDepth


def rle_encode(matrix, bits_per_pixel: int = 8) -> bytes:
    if bits_per_pixel != 8:
        raise UnsupportedDepth(f"run-length baseline handles 8-bit images only, got {bits_per_pixel}")
    matrix = np.asarray(matrix)
    if matrix.size and (matrix.min() < 0 or matrix.max() > 255):
        raise UnsupportedDepth("values do not fit in a byte")
    out = bytearray()
    for row in matrix.tolist():
        k = 0
        while k < len(row):
            value = row[k]
            run = 1
            while k + run < len(row) and row[k + run] == value and run < 255:
                run += 1
            out += bytes((run, value))
            k += run
    return bytes(out)


def rle_decode(data: bytes, rows: int, cols: int) -> np.ndarray:
    if len(data) % 2:
        raise CorruptStream("run-length data must hold whole (count, value) pairs")
    out = np.empty((rows, cols), dtype=np.uint8)
    pairs = iter(zip(data[0::2], data[1::2]))
    for i in range(rows):
        j = 0
        while j < cols:
            try:
                count, value = next(pairs)
            except StopIteration:
                raise CorruptStream(f"run-length data ends inside row {i}") from None
            if count == 0 or j + count > cols:
                raise CorruptStream(f"run of {count} does not fit row {i} at column {j}")
            out[i, j:j + count] = value
            j += count
    if next(pairs, None) is not None:
        raise CorruptStream("run-length data continues past the last row")
    return out
