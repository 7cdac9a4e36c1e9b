"""The CRK1 compressed stream.

Layout, all integers little-endian::

    magic           4 bytes  b"CRK1"
    width           uint32
    height          uint32
    bits_per_pixel  uint8    1, 4, 8 or 24
    blob_length     uint32
    blob            blob_length bytes, the source BMP up to its pixel array
    chain_count     uint32
    chain_count records of:
        row         uint16
        col         uint16
        value       1 byte (palette index) or 3 bytes R, G, B
        code_count  uint32
        codes       ceil(code_count / 4) bytes, see :mod:`crackcode.bitpack`

Keeping the original header blob lets :func:`decompress` rebuild the source
file byte for byte.
"""
from __future__ import annotations

import struct

import numpy as np

from . import bitpack
from .bmp import BmpImage, parse_bmp, parse_header, write_bmp
from .codec import Chain, ChainSet, decode, encode
from .errors import (
    BadMagic,
    BoundsViolation,
    CorruptStream,
    CoverageMismatch,
    CrackCodeError,
    InvalidImage,
    TooLarge,
    Truncated,
)

MAGIC = b"CRK1"
MAX_DIMENSION = 0xFFFF

_PREAMBLE = struct.Struct("<4sIIBI")
_U32 = struct.Struct("<I")
_POS = struct.Struct("<HH")


def value_size(bits_per_pixel: int) -> int:
    return 3 if bits_per_pixel == 24 else 1


def serialize(chains: ChainSet, source: BmpImage) -> bytes:
    width, height, bpp = source.width, source.height, source.bits_per_pixel
    if width > MAX_DIMENSION or height > MAX_DIMENSION:
        raise TooLarge(f"{width}x{height} exceeds the {MAX_DIMENSION} pixel record limit")
    if (chains.rows, chains.cols) != (height, width):
        raise InvalidImage(f"chains are {chains.rows}x{chains.cols} but image is {height}x{width}")
    if source.trailer:
        raise InvalidImage(f"{len(source.trailer)} bytes follow the pixel array; CRK1 cannot carry them")

    blob = source.header_bytes()
    parts = [_PREAMBLE.pack(MAGIC, width, height, bpp, len(blob)), blob, _U32.pack(len(chains.chains))]
    pos = _POS.pack
    count = _U32.pack
    rgb = bpp == 24
    for chain in chains.chains:
        value = chain.value.to_bytes(3, "big") if rgb else bytes((chain.value,))
        parts.append(pos(chain.row, chain.col))
        parts.append(value)
        parts.append(count(len(chain.codes)))
        if chain.codes:
            parts.append(bitpack.pack(chain.codes).data)
    return b"".join(parts)


def deserialize(data: bytes) -> tuple[ChainSet, bytes]:
    """Parse and validate a CRK1 stream; returns the chains and the header blob."""
    data = bytes(data)
    if data[:4] != MAGIC[:len(data[:4])]:
        raise BadMagic(f"not a CRK1 stream (magic {data[:4]!r})")
    if len(data) < _PREAMBLE.size:
        raise Truncated(f"stream preamble needs {_PREAMBLE.size} bytes, got {len(data)}")
    _, width, height, bpp, blob_len = _PREAMBLE.unpack_from(data, 0)
    if bpp not in (1, 4, 8, 24):
        raise CorruptStream(f"bad bits per pixel {bpp}")
    if not (0 < width <= MAX_DIMENSION and 0 < height <= MAX_DIMENSION):
        raise CorruptStream(f"bad dimensions {width}x{height}")
    p = _PREAMBLE.size
    if len(data) < p + blob_len + 4:
        raise Truncated("stream ends inside the header blob")
    blob = data[p:p + blob_len]
    p += blob_len

    try:
        fh, ih, palette, _ = parse_header(blob)
    except CrackCodeError as exc:
        raise CorruptStream(f"embedded BMP header is invalid: {exc}") from exc
    if (ih.width, ih.height, ih.bits_per_pixel) != (width, height, bpp) or fh.pixel_data_offset != blob_len:
        raise CorruptStream("embedded BMP header disagrees with the stream preamble")

    (chain_count,) = _U32.unpack_from(data, p)
    p += 4
    vsize = value_size(bpp)
    fixed = 4 + vsize + 4
    if chain_count * fixed > len(data) - p:
        raise Truncated(f"{chain_count} records cannot fit in {len(data) - p} bytes")

    limit = (1 << 24) if bpp == 24 else len(palette)
    total = width * height
    covered = 0
    chains = []
    for k in range(chain_count):
        if len(data) - p < fixed:
            raise Truncated(f"record {k} is cut short")
        row, col = _POS.unpack_from(data, p)
        value = int.from_bytes(data[p + 4:p + 4 + vsize], "big")
        (n_codes,) = _U32.unpack_from(data, p + 4 + vsize)
        p += fixed
        if row >= height or col >= width:
            raise BoundsViolation(f"record {k} starts at ({row}, {col}) outside {height}x{width}")
        if value >= limit:
            raise BoundsViolation(f"record {k} value {value} is not valid at {bpp} bits per pixel")
        n_bytes = bitpack.packed_size(n_codes)
        if len(data) - p < n_bytes:
            raise Truncated(f"record {k} needs {n_bytes} code bytes")
        covered += n_codes + 1
        if covered > total:
            raise CoverageMismatch(f"records cover more than {total} pixels")
        packed = bitpack.PackedCodes(data[p:p + n_bytes], n_codes)
        p += n_bytes
        codes = bitpack.unpack(packed) if n_codes else []
        if n_codes % 4 and packed.data[-1] & (0xFF >> (2 * (n_codes % 4))):
            raise CorruptStream(f"record {k} has nonzero slack bits")
        chains.append(Chain(row, col, value, tuple(codes)))
    if covered != total:
        raise CoverageMismatch(f"records cover {covered} of {total} pixels")
    if p != len(data):
        raise CorruptStream(f"{len(data) - p} unexpected bytes after the last record")
    return ChainSet(height, width, chains), blob


def compress(bmp_bytes: bytes) -> bytes:
    """BMP file contents -> CRK1 stream."""
    image = parse_bmp(bmp_bytes)
    return serialize(encode(image.matrix), image)


def restore_image(stream: bytes) -> BmpImage:
    chains, blob = deserialize(stream)
    fh, ih, palette, gap = parse_header(blob)
    dtype = np.uint32 if ih.bits_per_pixel == 24 else np.uint8
    return BmpImage(fh, ih, palette, decode(chains, dtype=dtype), gap)


def decompress(stream: bytes) -> bytes:
    """CRK1 stream -> the original BMP file contents."""
    return write_bmp(restore_image(stream))


def dump_text(chains: ChainSet, rgb: bool = False) -> str:
    """One line per chain: ``row col value code ... -1``.

    With ``rgb`` set, values print as ``R,G,B``.
    """
    lines = []
    for chain in chains.chains:
        if rgb:
            v = chain.value
            value = f"{(v >> 16) & 0xFF},{(v >> 8) & 0xFF},{v & 0xFF}"
        else:
            value = str(chain.value)
        fields = [str(chain.row), str(chain.col), value, *map(str, chain.codes), "-1"]
        lines.append(" ".join(fields))
    return "".join(line + "\n" for line in lines)
