"""Compress a BMP file and get the identical file back.

Run: python demos/02_bmp_round_trip.py [path/to/image.bmp]
Without an argument a synthetic 8-bit image is used.
"""
import sys
from pathlib import Path

from crackcode import SyntheticSpec, generate_synthetic, parse_bmp, write_bmp
from crackcode.container import decompress
from crackcode.report import bytes_differed, compress_with_report

if len(sys.argv) > 1:
    original = Path(sys.argv[1]).read_bytes()
else:
    spec = SyntheticSpec(120, 80, depth=8, kind="blobs", region_count=10, seed=2011)
    original = write_bmp(generate_synthetic(spec))

image = parse_bmp(original)
print(f"{image.width}x{image.height}, {image.bits_per_pixel} bits per pixel, "
      f"{len(image.palette)} palette entries, pixel data at byte {image.file_header.pixel_data_offset}")

stream, chains, report = compress_with_report(original, repeats=5)
print(report.describe())
print(f"chains: {len(chains.chains)}, codes: {chains.code_count}")

restored = decompress(stream)
print("bytes differed after restore:", bytes_differed(original, restored))
