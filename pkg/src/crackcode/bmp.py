"""Reading and writing uncompressed Windows BMP files.

Only the classic layout is handled: a 14-byte file header, a 40-byte
``BITMAPINFOHEADER``, an optional colour table of ``RGBQUAD`` entries and a
bottom-up pixel array whose scanlines are zero padded to a multiple of four
bytes.  Supported depths are 1, 4, 8 and 24 bits per pixel.

The pixel matrix exposed to the rest of the package is top-down (row 0 is the
visually top row).  Indexed images hold palette indices; 24-bit images hold
``red << 16 | green << 8 | blue``.
"""
from __future__ import annotations

import struct
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    BadHeader,
    BadMagic,
    InvalidImage,
    Truncated,
    UnsupportedCompression,
    UnsupportedDepth,
)

BM_MAGIC = 19778  # b"BM" read as a little-endian uint16
FILE_HEADER_SIZE = 14
INFO_HEADER_SIZE = 40
HEADERS_SIZE = FILE_HEADER_SIZE + INFO_HEADER_SIZE
SUPPORTED_DEPTHS = (1, 4, 8, 24)

_FILE_HEADER = struct.Struct("<HIHHI")
_INFO_HEADER = struct.Struct("<IiiHHIIiiII")


@dataclass(frozen=True)
class BmpFileHeader:
    file_type: int = BM_MAGIC
    file_size: int = 0
    reserved1: int = 0
    reserved2: int = 0
    pixel_data_offset: int = HEADERS_SIZE

    def pack(self) -> bytes:
        return _FILE_HEADER.pack(
            self.file_type, self.file_size, self.reserved1, self.reserved2, self.pixel_data_offset
        )


@dataclass(frozen=True)
class BmpInfoHeader:
    width: int
    height: int
    bits_per_pixel: int
    header_size: int = INFO_HEADER_SIZE
    planes: int = 1
    compression: int = 0
    image_data_size: int = 0
    x_pixels_per_meter: int = 0
    y_pixels_per_meter: int = 0
    colors_used: int = 0
    colors_important: int = 0

    def pack(self) -> bytes:
        return _INFO_HEADER.pack(
            self.header_size,
            self.width,
            self.height,
            self.planes,
            self.bits_per_pixel,
            self.compression,
            self.image_data_size,
            self.x_pixels_per_meter,
            self.y_pixels_per_meter,
            self.colors_used,
            self.colors_important,
        )

    @property
    def palette_length(self) -> int:
        if self.bits_per_pixel == 24:
            return 0
        return self.colors_used or (1 << self.bits_per_pixel)


# (blue, green, red, reserved)
PaletteEntry = tuple[int, int, int, int]


def row_stride(width: int, bits_per_pixel: int) -> int:
    """Bytes per stored scanline, including the padding to a 32-bit boundary."""
    return (width * bits_per_pixel + 31) // 32 * 4


def pack_rgb(red: int, green: int, blue: int) -> int:
    return (red << 16) | (green << 8) | blue


def unpack_rgb(value: int) -> tuple[int, int, int]:
    return (value >> 16) & 0xFF, (value >> 8) & 0xFF, value & 0xFF


@dataclass(eq=False)
class BmpImage:
    file_header: BmpFileHeader
    info_header: BmpInfoHeader
    palette: tuple[PaletteEntry, ...]
    matrix: np.ndarray
    trailing_gap: bytes = b""
    # bytes after the pixel array; kept so that parse/write round trips exactly
    trailer: bytes = field(default=b"")

    @property
    def width(self) -> int:
        return self.info_header.width

    @property
    def height(self) -> int:
        return self.info_header.height

    @property
    def bits_per_pixel(self) -> int:
        return self.info_header.bits_per_pixel

    def header_bytes(self) -> bytes:
        """Everything before the pixel array: headers, colour table and slack."""
        palette = b"".join(bytes(entry) for entry in self.palette)
        return self.file_header.pack() + self.info_header.pack() + palette + self.trailing_gap

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BmpImage):
            return NotImplemented
        return (
            self.file_header == other.file_header
            and self.info_header == other.info_header
            and self.palette == other.palette
            and self.trailing_gap == other.trailing_gap
            and self.trailer == other.trailer
            and np.array_equal(self.matrix, other.matrix)
        )


def parse_header(data: bytes) -> tuple[BmpFileHeader, BmpInfoHeader, tuple[PaletteEntry, ...], bytes]:
    """Parse the part of a BMP file that precedes the pixel array.

    ``data`` may be the whole file or just its first ``pixel_data_offset``
    bytes.  Returns the two headers, the colour table and any slack bytes
    between the colour table and the pixel array.
    """
    if len(data) < 2:
        raise Truncated(f"need at least 2 bytes for the magic, got {len(data)}")
    if bytes(data[:2]) != b"BM":
        raise BadMagic(f"not a BMP file (magic {bytes(data[:2])!r})")
    if len(data) < HEADERS_SIZE:
        raise Truncated(f"file headers need {HEADERS_SIZE} bytes, got {len(data)}")

    fh = BmpFileHeader(*_FILE_HEADER.unpack_from(data, 0))
    (header_size, width, height, planes, bpp, compression, image_size,
     xppm, yppm, colors_used, colors_important) = _INFO_HEADER.unpack_from(data, FILE_HEADER_SIZE)
    ih = BmpInfoHeader(
        width=width,
        height=height,
        bits_per_pixel=bpp,
        header_size=header_size,
        planes=planes,
        compression=compression,
        image_data_size=image_size,
        x_pixels_per_meter=xppm,
        y_pixels_per_meter=yppm,
        colors_used=colors_used,
        colors_important=colors_important,
    )

    if fh.reserved1 or fh.reserved2:
        raise BadHeader("reserved fields must be zero")
    if header_size != INFO_HEADER_SIZE:
        raise BadHeader(f"unsupported info header size {header_size}")
    if planes != 1:
        raise BadHeader(f"planes must be 1, got {planes}")
    if compression != 0:
        raise UnsupportedCompression(f"compression type {compression} is not supported")
    if bpp not in SUPPORTED_DEPTHS:
        raise UnsupportedDepth(f"{bpp} bits per pixel is not supported")
    if width <= 0 or height <= 0:
        raise BadHeader(f"dimensions must be positive, got {width}x{height}")
    if bpp != 24 and colors_used > (1 << bpp):
        raise BadHeader(f"{colors_used} colours do not fit {bpp} bits per pixel")

    n_colors = ih.palette_length
    palette_end = HEADERS_SIZE + 4 * n_colors
    offset = fh.pixel_data_offset
    if offset < palette_end:
        raise BadHeader(f"pixel data offset {offset} overlaps the colour table ending at {palette_end}")
    if len(data) < offset:
        raise Truncated(f"pixel data offset {offset} is past the end of {len(data)} bytes")

    palette = tuple(
        tuple(data[p:p + 4]) for p in range(HEADERS_SIZE, palette_end, 4)
    )
    gap = bytes(data[palette_end:offset])
    return fh, ih, palette, gap


def _unpack_rows(raw: np.ndarray, width: int, bpp: int) -> np.ndarray:
    """Stored scanlines (bottom-up, padded) -> top-down value matrix."""
    if bpp == 8:
        rows = raw[:, :width]
    elif bpp == 24:
        bgr = raw[:, :3 * width].reshape(raw.shape[0], width, 3).astype(np.uint32)
        rows = (bgr[:, :, 2] << 16) | (bgr[:, :, 1] << 8) | bgr[:, :, 0]
    elif bpp == 4:
        nibbles = np.empty((raw.shape[0], raw.shape[1] * 2), dtype=np.uint8)
        nibbles[:, 0::2] = raw >> 4
        nibbles[:, 1::2] = raw & 0x0F
        rows = nibbles[:, :width]
    else:
        rows = np.unpackbits(raw, axis=1)[:, :width]
    return np.ascontiguousarray(rows[::-1])


def _pack_rows(matrix: np.ndarray, bpp: int, stride: int) -> bytes:
    """Top-down value matrix -> stored scanlines with zero padding."""
    rows = matrix[::-1]
    height, width = rows.shape
    out = np.zeros((height, stride), dtype=np.uint8)
    if bpp == 8:
        out[:, :width] = rows
    elif bpp == 24:
        rows = rows.astype(np.uint32)
        bgr = np.stack([rows & 0xFF, (rows >> 8) & 0xFF, (rows >> 16) & 0xFF], axis=-1)
        out[:, :3 * width] = bgr.reshape(height, 3 * width)
    elif bpp == 4:
        padded = np.zeros((height, width + (width & 1)), dtype=np.uint8)
        padded[:, :width] = rows
        packed = (padded[:, 0::2] << 4) | padded[:, 1::2]
        out[:, :packed.shape[1]] = packed
    else:
        packed = np.packbits(rows.astype(np.uint8), axis=1)
        out[:, :packed.shape[1]] = packed
    return out.tobytes()


def _check_values(matrix: np.ndarray, bpp: int, n_colors: int) -> None:
    if matrix.size == 0:
        return
    lo, hi = int(matrix.min()), int(matrix.max())
    if lo < 0:
        raise InvalidImage(f"negative pixel value {lo}")
    if bpp == 24:
        if hi >= 1 << 24:
            raise InvalidImage(f"pixel value {hi:#x} exceeds 24 bits")
    elif hi >= n_colors:
        raise InvalidImage(f"palette index {hi} out of range for {n_colors} colours")


def parse_bmp(data: bytes) -> BmpImage:
    """Parse a complete BMP file held in memory."""
    fh, ih, palette, gap = parse_header(data)
    stride = row_stride(ih.width, ih.bits_per_pixel)
    start = fh.pixel_data_offset
    end = start + stride * ih.height
    if len(data) < end:
        raise Truncated(f"pixel array needs {end} bytes, file has {len(data)}")

    raw = np.frombuffer(data, dtype=np.uint8, count=end - start, offset=start)
    matrix = _unpack_rows(raw.reshape(ih.height, stride), ih.width, ih.bits_per_pixel)
    _check_values(matrix, ih.bits_per_pixel, len(palette))
    return BmpImage(fh, ih, palette, matrix, gap, bytes(data[end:]))


def write_bmp(image: BmpImage) -> bytes:
    """Serialize ``image``; header fields are written exactly as stored."""
    fh, ih = image.file_header, image.info_header
    bpp = ih.bits_per_pixel
    if bpp not in SUPPORTED_DEPTHS:
        raise InvalidImage(f"{bpp} bits per pixel is not supported")
    matrix = np.asarray(image.matrix)
    if matrix.shape != (ih.height, ih.width):
        raise InvalidImage(f"matrix shape {matrix.shape} does not match {ih.height}x{ih.width} header")
    if len(image.palette) != ih.palette_length:
        raise InvalidImage(f"palette has {len(image.palette)} entries, header implies {ih.palette_length}")
    if any(len(entry) != 4 or not all(0 <= c < 256 for c in entry) for entry in image.palette):
        raise InvalidImage("palette entries must be four bytes")
    head = image.header_bytes()
    if len(head) != fh.pixel_data_offset:
        raise InvalidImage(
            f"headers, palette and gap take {len(head)} bytes but pixel data offset is {fh.pixel_data_offset}"
        )
    _check_values(matrix, bpp, len(image.palette))
    return head + _pack_rows(matrix, bpp, row_stride(ih.width, bpp)) + image.trailer


def matrix_of(image: BmpImage) -> np.ndarray:
    return image.matrix


def grayscale_palette(bits_per_pixel: int) -> tuple[PaletteEntry, ...]:
    count = 1 << bits_per_pixel
    step = 255 // (count - 1)
    return tuple((i * step, i * step, i * step, 0) for i in range(count))


def new_image(matrix, bits_per_pixel: int, palette=None) -> BmpImage:
    """Build a BmpImage around ``matrix`` with consistent, freshly computed headers.

    Indexed depths default to a full grey ramp palette.
    """
    matrix = np.asarray(matrix)
    if matrix.ndim != 2 or 0 in matrix.shape:
        raise InvalidImage(f"expected a nonempty 2-D matrix, got shape {matrix.shape}")
    if bits_per_pixel not in SUPPORTED_DEPTHS:
        raise UnsupportedDepth(f"{bits_per_pixel} bits per pixel is not supported")
    if bits_per_pixel == 24:
        palette = ()
        matrix = matrix.astype(np.uint32)
    else:
        palette = tuple(tuple(e) for e in (palette if palette is not None else grayscale_palette(bits_per_pixel)))
        if not 1 <= len(palette) <= 1 << bits_per_pixel:
            raise InvalidImage(f"palette of {len(palette)} entries does not suit {bits_per_pixel} bits")
        matrix = matrix.astype(np.uint8)
    height, width = matrix.shape
    full = bits_per_pixel != 24 and len(palette) == 1 << bits_per_pixel
    image_size = row_stride(width, bits_per_pixel) * height
    offset = HEADERS_SIZE + 4 * len(palette)
    ih = BmpInfoHeader(
        width=width,
        height=height,
        bits_per_pixel=bits_per_pixel,
        image_data_size=image_size,
        colors_used=0 if full or bits_per_pixel == 24 else len(palette),
    )
    fh = BmpFileHeader(file_size=offset + image_size, pixel_data_offset=offset)
    image = BmpImage(fh, ih, palette, matrix)
    _check_values(matrix, bits_per_pixel, len(palette))
    return image
