"""Per-file compression metrics."""
from __future__ import annotations

import statistics
import time
from dataclasses import asdict, dataclass

from .bmp import parse_bmp
from .codec import ChainSet, encode
from .container import decompress, serialize


@dataclass(frozen=True)
class CompressionReport:
    original_size: int
    compressed_size: int
    compression_percentage: float
    computation_time: float
    bytes_differed: int

    def as_dict(self) -> dict:
        return asdict(self)

    def describe(self) -> str:
        return (
            f"original size:     {self.original_size} bytes\n"
            f"compressed size:   {self.compressed_size} bytes\n"
            f"compression:       {self.compression_percentage:.2f} %\n"
            f"computation time:  {self.computation_time:.3f} s\n"
            f"bytes differed:    {self.bytes_differed}"
        )


def compression_percentage(original_size: int, compressed_size: int) -> float:
    """Space saved relative to the original file; negative when the output grew."""
    if original_size <= 0:
        raise ValueError("original size must be positive")
    return (1.0 - compressed_size / original_size) * 100.0


def bytes_differed(original: bytes, restored: bytes) -> int:
    """Positions where the two files disagree; a length mismatch counts every missing byte."""
    common = min(len(original), len(restored))
    diff = sum(a != b for a, b in zip(original[:common], restored[:common]))
    return diff + abs(len(original) - len(restored))


def compress_with_report(bmp_bytes: bytes, repeats: int = 1) -> tuple[bytes, ChainSet, CompressionReport]:
    """Compress, restore in memory and measure.

    Computation time is the median wall clock of ``repeats`` encoder runs and
    excludes parsing, serialization and I/O.
    """
    image = parse_bmp(bmp_bytes)
    timings = []
    for _ in range(max(1, repeats)):
        t0 = time.perf_counter()
        chains = encode(image.matrix)
        timings.append(time.perf_counter() - t0)
    stream = serialize(chains, image)
    restored = decompress(stream)
    report = CompressionReport(
        original_size=len(bmp_bytes),
        compressed_size=len(stream),
        compression_percentage=compression_percentage(len(bmp_bytes), len(stream)),
        computation_time=statistics.median(timings),
        bytes_differed=bytes_differed(bmp_bytes, restored),
    )
    return stream, chains, report
