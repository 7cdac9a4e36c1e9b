"""Lossless compression of BMP images with 4-connected crack codes."""
from .bitpack import PackedCodes, pack, unpack
from .bmp import BmpFileHeader, BmpImage, BmpInfoHeader, matrix_of, new_image, parse_bmp, write_bmp
from .codec import Chain, ChainSet, decode, encode, trace_chain
from .container import compress, decompress, deserialize, dump_text, serialize
from .errors import CrackCodeError
from .report import CompressionReport, compression_percentage
from .rle import rle_decode, rle_encode
from .synthetic import SyntheticSpec, generate_synthetic

__version__ = "0.1.0"
