"""Exception hierarchy shared by the protocol and serialization layers."""

from __future__ import annotations

import enum


class IdringError(Exception):
    """Base class for every error raised by this package."""


class InputError(IdringError, ValueError):
    """A caller supplied an argument that violates an operation's precondition."""


class StructureError(IdringError, ValueError):
    """A signature or ring is malformed (as opposed to merely invalid)."""


class DelegationError(IdringError):
    """A delegation token failed its pairing check."""


class DecodeErrorCode(enum.Enum):
    BAD_MAGIC = "bad-magic"
    UNSUPPORTED_VERSION = "unsupported-version"
    UNKNOWN_KIND = "unknown-kind"
    TRUNCATED = "truncated"
    TRAILING_DATA = "trailing-data"
    INVALID_POINT = "invalid-point"
    SCALAR_OUT_OF_RANGE = "scalar-out-of-range"
    UNKNOWN_CURVE = "unknown-curve"
    MALFORMED = "malformed"


class DecodeError(IdringError, ValueError):
    def __init__(self, code: DecodeErrorCode, detail: str = "") -> None:
        self.code = code
        self.detail = detail
        msg = code.value if not detail else f"{code.value}: {detail}"
        super().__init__(msg)
