import struct

import numpy as np
import pytest

from oracles import stream_size
from crackcode.bmp import new_image, parse_bmp, write_bmp
from crackcode.codec import Chain, ChainSet, encode
from crackcode.container import compress, decompress, deserialize, dump_text, serialize
from crackcode.errors import (
    BadMagic,
    BoundsViolation,
    CorruptStream,
    CoverageMismatch,
    CrackCodeError,
    InvalidImage,
    TooLarge,
    Truncated,
)

PREAMBLE = 4 + 4 + 4 + 1 + 4


def records_of(stream, blob_len):
    """Bytes after the preamble, blob and chain count."""
    return stream[PREAMBLE + blob_len + 4:]


def test_single_pixel_record():
    image = new_image([[7]], 8)
    stream = serialize(encode(image.matrix), image)
    assert stream[:4] == b"CRK1"
    assert struct.unpack_from("<IIBI", stream, 4) == (1, 1, 8, 1078)
    assert struct.unpack_from("<I", stream, PREAMBLE + 1078) == (1,)
    assert records_of(stream, 1078) == struct.pack("<HHBI", 0, 0, 7, 0)


def test_uniform_2x2_record():
    image = new_image(np.full((2, 2), 42), 8)
    stream = serialize(encode(image.matrix), image)
    assert records_of(stream, 1078) == struct.pack("<HHBI", 0, 0, 42, 3) + b"\xb0"


def test_rgb_value_bytes():
    image = new_image([[0x0A0B0C]], 24)
    stream = serialize(encode(image.matrix), image)
    assert records_of(stream, 54) == struct.pack("<HH", 0, 0) + b"\x0a\x0b\x0c" + struct.pack("<I", 0)


def test_round_trip_fixture(fixture_path):
    data = fixture_path.read_bytes()
    image = parse_bmp(data)
    chains = encode(image.matrix)
    stream = serialize(chains, image)
    back, blob = deserialize(stream)
    assert back == chains
    assert blob == data[:image.file_header.pixel_data_offset]
    assert serialize(back, image) == stream
    assert decompress(stream) == data
    assert len(stream) == stream_size(
        [(c.row, c.col, c.value, c.codes) for c in chains.chains], len(blob), image.bits_per_pixel
    )


def test_deterministic():
    image = new_image(np.random.default_rng(0).integers(0, 3, (9, 11)), 8)
    assert serialize(encode(image.matrix), image) == serialize(encode(image.matrix.copy()), image)


def test_bad_magic():
    stream = compress(write_bmp(new_image([[1]], 8)))
    with pytest.raises(BadMagic):
        deserialize(b"CRK0" + stream[4:])
    with pytest.raises(BadMagic):
        deserialize(b"X")


def test_missing_pixel_is_coverage_mismatch():
    image = new_image(np.full((2, 3), 5), 8)
    chains = encode(image.matrix)
    (chain,) = chains.chains
    short = ChainSet(2, 3, [Chain(chain.row, chain.col, chain.value, chain.codes[:-1])])
    with pytest.raises(CoverageMismatch):
        deserialize(serialize(short, image))


def test_inflated_code_count():
    image = new_image(np.full((2, 3), 5), 8)
    stream = bytearray(compress(write_bmp(image)))
    at = PREAMBLE + 1078 + 4 + 5
    struct.pack_into("<I", stream, at, 9)
    with pytest.raises(CrackCodeError):
        deserialize(bytes(stream))


def test_bounds_violation():
    image = new_image([[1, 2]], 8)
    stream = bytearray(compress(write_bmp(image)))
    struct.pack_into("<H", stream, PREAMBLE + 1078 + 4, 3)  # first record's row
    with pytest.raises(BoundsViolation):
        deserialize(bytes(stream))


def test_palette_violation():
    image = new_image([[1, 0]], 1)
    stream = bytearray(compress(write_bmp(image)))
    stream[PREAMBLE + 62 + 4 + 4] = 2  # first record value, palette has two entries
    with pytest.raises(BoundsViolation):
        deserialize(bytes(stream))


def test_nonzero_slack_rejected():
    image = new_image(np.full((1, 2), 5), 8)
    stream = bytearray(compress(write_bmp(image)))
    stream[-1] |= 0x01
    with pytest.raises(CorruptStream):
        deserialize(bytes(stream))


def test_trailing_garbage():
    stream = compress(write_bmp(new_image([[1]], 8)))
    with pytest.raises(CorruptStream):
        deserialize(stream + b"\0")


def test_header_blob_mismatch():
    stream = bytearray(compress(write_bmp(new_image([[1, 1]], 8))))
    struct.pack_into("<I", stream, 4, 3)  # preamble width disagrees with blob
    with pytest.raises(CorruptStream):
        deserialize(bytes(stream))


def test_every_prefix_is_structured_error(fixture_path):
    stream = compress(fixture_path.read_bytes())
    for k in range(len(stream)):
        with pytest.raises(CrackCodeError):
            deserialize(stream[:k])


def test_random_byte_flips_never_crash():
    rng = np.random.default_rng(11)
    data = write_bmp(new_image(rng.integers(0, 3, (6, 7)), 4, palette=[(i, i, i, 0) for i in range(3)]))
    stream = compress(data)
    for _ in range(2000):
        corrupt = bytearray(stream)
        k = int(rng.integers(len(corrupt)))
        corrupt[k] ^= 1 << int(rng.integers(8))
        try:
            out = decompress(bytes(corrupt))
        except CrackCodeError:
            continue
        # a surviving flip must still yield a well-formed BMP
        parse_bmp(out)


def test_too_large():
    image = new_image(np.zeros((1, 2), dtype=np.uint8), 8)
    image.info_header = type(image.info_header)(width=70000, height=1, bits_per_pixel=8)
    with pytest.raises(TooLarge):
        serialize(ChainSet(1, 70000, []), image)


def test_trailer_rejected():
    data = write_bmp(new_image([[1]], 8)) + b"\0\0"
    with pytest.raises(InvalidImage):
        compress(data)


def test_truncated_blob():
    stream = compress(write_bmp(new_image([[1]], 8)))
    with pytest.raises(Truncated):
        deserialize(stream[:100])


def test_dump_paper_lines():
    chains = ChainSet(3, 10, [
        Chain(0, 0, 200, (3, 2, 2, 2, 2, 2, 3, 0, 0)),
        Chain(0, 9, 180, (2, 2, 2, 2)),
        Chain(1, 1, 5),
    ])
    assert dump_text(chains).splitlines() == [
        "0 0 200 3 2 2 2 2 2 3 0 0 -1",
        "0 9 180 2 2 2 2 -1",
        "1 1 5 -1",
    ]


def test_dump_rgb():
    chains = ChainSet(1, 1, [Chain(0, 0, 0x0A0B0C)])
    assert dump_text(chains, rgb=True) == "0 0 10,11,12 -1\n"
