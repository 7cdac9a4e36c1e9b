"""Command line front end: ``crackcode compress|decompress|inspect|bench|gen``."""
from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from pathlib import Path

from . import errors
from .bench import corpus_from_dir, corpus_from_specs, run_bench, to_csv
from .bmp import BmpFileHeader, BmpInfoHeader, parse_bmp, parse_header, write_bmp
from .codec import encode
from .container import MAGIC, decompress, deserialize, dump_text
from .report import bytes_differed, compress_with_report
from .synthetic import generate_synthetic, load_specs

EXIT_IO = 3
EXIT_USAGE = 2


def _exit_code_table() -> str:
    lines = ["exit codes:", "  0   success", f"  {EXIT_USAGE}   usage error", f"  {EXIT_IO}   file could not be read or written"]
    for cls in errors.ALL_ERRORS:
        lines.append(f"  {cls.exit_code:<3d} {cls.__name__}")
    lines.append("  1   any other codec error")
    return "\n".join(lines)


def _write_atomic(path: Path, data: bytes) -> None:
    # no partial output file if anything fails midway
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "wb") as f:
            f.write(data)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def cmd_compress(args) -> int:
    data = Path(args.input).read_bytes()
    stream, chains, report = compress_with_report(data)
    _write_atomic(Path(args.output), stream)
    print(report.describe())
    print(json.dumps(report.as_dict()))
    return 0


def cmd_decompress(args) -> int:
    restored = decompress(Path(args.input).read_bytes())
    _write_atomic(Path(args.output), restored)
    if args.verify:
        diff = bytes_differed(Path(args.verify).read_bytes(), restored)
        print(f"bytes_differed={diff}")
        if diff:
            raise errors.VerifyFailed(f"restored file differs from {args.verify} in {diff} bytes")
    return 0


_FIELD_NAMES = (
    ("bfType", "file_type"),
    ("bfSize", "file_size"),
    ("bfReserved1", "reserved1"),
    ("bfReserved2", "reserved2"),
    ("bfOffBits", "pixel_data_offset"),
    ("biSize", "header_size"),
    ("biWidth", "width"),
    ("biHeight", "height"),
    ("biPlanes", "planes"),
    ("biBitCount", "bits_per_pixel"),
    ("biCompression", "compression"),
    ("biSizeImage", "image_data_size"),
    ("biXPelsPerMeter", "x_pixels_per_meter"),
    ("biYPelsPerMeter", "y_pixels_per_meter"),
    ("biClrUsed", "colors_used"),
    ("biClrImportant", "colors_important"),
)


def _header_lines(fh: BmpFileHeader, ih: BmpInfoHeader) -> list[str]:
    out = []
    for label, attr in _FIELD_NAMES:
        source = fh if hasattr(fh, attr) else ih
        out.append(f"# {label} = {getattr(source, attr)}")
    return out


def cmd_inspect(args) -> int:
    data = Path(args.input).read_bytes()
    if data[:4] == MAGIC:
        chains, blob = deserialize(data)
        fh, ih, _, _ = parse_header(blob)
        print(f"# CRK1 stream, {len(chains.chains)} chains, {chains.code_count} codes")
    else:
        image = parse_bmp(data)
        fh, ih = image.file_header, image.info_header
        chains = encode(image.matrix)
    print("\n".join(_header_lines(fh, ih)))
    sys.stdout.write(dump_text(chains, rgb=ih.bits_per_pixel == 24))
    return 0


def cmd_bench(args) -> int:
    if args.corpus:
        corpus = corpus_from_dir(args.corpus)
    else:
        corpus = corpus_from_specs(load_specs(args.spec))
    rows = run_bench(corpus, repeats=args.repeats)
    text = to_csv(rows)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def cmd_gen(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for spec in load_specs(args.spec):
        path = out / f"{spec.label}.bmp"
        path.write_bytes(write_bmp(generate_synthetic(spec)))
        print(path)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crackcode",
        description="Lossless BMP compression with 4-connected crack codes.",
        epilog=_exit_code_table(),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compress", help="BMP -> CRK1 stream")
    p.add_argument("input")
    p.add_argument("output")
    p.set_defaults(func=cmd_compress)

    p = sub.add_parser("decompress", help="CRK1 stream -> BMP")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--verify", metavar="ORIGINAL", help="compare the restored file with ORIGINAL")
    p.set_defaults(func=cmd_decompress)

    p = sub.add_parser("inspect", help="print header fields and the chain dump of a BMP or CRK1 file")
    p.add_argument("input")
    p.set_defaults(func=cmd_inspect)

    p = sub.add_parser("bench", help="benchmark a corpus and write a CSV")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--corpus", metavar="DIR", help="directory of .bmp files")
    src.add_argument("--spec", metavar="FILE", help="JSON list of synthetic image specs")
    p.add_argument("--out", metavar="CSV", help="output path (default: stdout)")
    p.add_argument("--repeats", type=int, default=5, help="timing runs per image (median is reported)")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("gen", help="write synthetic BMPs from a spec file")
    p.add_argument("--spec", metavar="FILE", required=True)
    p.add_argument("--out", metavar="DIR", required=True)
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except errors.CrackCodeError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
