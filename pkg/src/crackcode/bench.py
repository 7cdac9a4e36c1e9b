"""Corpus benchmark producing one CSV row per image."""
from __future__ import annotations

import csv
import io
from pathlib import Path
from typing import Iterable, Iterator

from .bmp import parse_bmp, write_bmp
from .errors import CrackCodeError
from .report import compress_with_report, compression_percentage
from .rle import rle_encode
from .synthetic import SyntheticSpec, generate_synthetic

COLUMNS = (
    "name",
    "original_size",
    "compressed_size",
    "compression_pct",
    "time_s",
    "bytes_differed",
    "chain_count",
    "code_count",
    "rle_size",
    "rle_pct",
    "error",
)
TIMING_COLUMNS = ("time_s",)


def corpus_from_dir(path) -> Iterator[tuple[str, bytes]]:
    for p in sorted(Path(path).iterdir()):
        if p.is_file() and p.suffix.lower() == ".bmp":
            yield p.name, p.read_bytes()


def corpus_from_specs(specs: Iterable[SyntheticSpec]) -> Iterator[tuple[str, bytes]]:
    for spec in specs:
        yield spec.label, write_bmp(generate_synthetic(spec))


def bench_one(name: str, data: bytes, repeats: int = 5) -> dict:
    row = dict.fromkeys(COLUMNS, "")
    row["name"] = name
    row["original_size"] = len(data)
    try:
        image = parse_bmp(data)
        stream, chains, report = compress_with_report(data, repeats=repeats)
    except CrackCodeError as exc:
        row["error"] = f"{type(exc).__name__}: {exc}"
        return row
    row.update(
        compressed_size=report.compressed_size,
        compression_pct=f"{report.compression_percentage:.2f}",
        time_s=f"{report.computation_time:.3f}",
        bytes_differed=report.bytes_differed,
        chain_count=len(chains.chains),
        code_count=chains.code_count,
    )
    if image.bits_per_pixel == 8:
        # header blob plus runs, so the figure is comparable to the CRK1 size
        rle_size = image.file_header.pixel_data_offset + len(rle_encode(image.matrix))
        row["rle_size"] = rle_size
        row["rle_pct"] = f"{compression_percentage(len(data), rle_size):.2f}"
    return row


def run_bench(corpus: Iterable[tuple[str, bytes]], repeats: int = 5) -> list[dict]:
    return [bench_one(name, data, repeats) for name, data in corpus]


def to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()
