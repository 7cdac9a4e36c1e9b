"""Exception classes shared by the BMP reader, the codec and the container.

Every class carries the process exit status the command line tool uses for it.
"""


class CrackCodeError(ValueError):
    exit_code = 1


class BadMagic(CrackCodeError):
    exit_code = 10


class Truncated(CrackCodeError):
    exit_code = 11


class UnsupportedCompression(CrackCodeError):
    exit_code = 12


class UnsupportedDepth(CrackCodeError):
    exit_code = 13


class BadHeader(CrackCodeError):
    exit_code = 14


class InvalidImage(CrackCodeError):
    exit_code = 15


class BadLength(CrackCodeError):
    exit_code = 16


class WalkOutOfBounds(CrackCodeError):
    exit_code = 20


class IncompleteCover(CrackCodeError):
    exit_code = 21


class OverlapWrite(CrackCodeError):
    exit_code = 22


class CorruptStream(CrackCodeError):
    """Structurally invalid CRK1 stream not covered by a narrower class."""

    exit_code = 30


class BoundsViolation(CorruptStream):
    exit_code = 31


class CoverageMismatch(CorruptStream):
    exit_code = 32


class TooLarge(CrackCodeError):
    exit_code = 33


class BadSpec(CrackCodeError):
    exit_code = 40


class VerifyFailed(CrackCodeError):
    exit_code = 50


#: Ordered for ``--help``; most specific first.
ALL_ERRORS = (
    BadMagic,
    Truncated,
    UnsupportedCompression,
    UnsupportedDepth,
    BadHeader,
    InvalidImage,
    BadLength,
    WalkOutOfBounds,
    IncompleteCover,
    OverlapWrite,
    CorruptStream,
    BoundsViolation,
    CoverageMismatch,
    TooLarge,
    BadSpec,
    VerifyFailed,
)
