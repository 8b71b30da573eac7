"""Protocol hash functions and the canonical byte encodings they consume.

Every hash prepends its own domain tag, so an identity, a warrant, a signing
input and a target-group element can never be confused with one another even
if their raw bytes coincide.
"""

from __future__ import annotations

import dataclasses
import hashlib
import struct
from typing import Iterable, Sequence

from petrelic.multiplicative.pairing import G2

from .counters import tally
from .errors import InputError, StructureError
from .groups import ORDER, KeyPoint, Scalar, TargetElem

H1_TAG = b"IDBRS-H1"
H2_TAG = b"IDBRS-H2"
H3_TAG = b"IDBRS-H3"
WARRANT_TAG = b"PROXY-W"
SIGN_INPUT_TAG = b"IDBRS-SIGN-INPUT"

_U64 = struct.Struct(">Q")


def u64(n: int) -> bytes:
    return _U64.pack(n)


def length_prefixed(data: bytes) -> bytes:
    return _U64.pack(len(data)) + data


@dataclasses.dataclass(frozen=True)
class RingDescriptor:
    """Ordered, duplicate-free list of ring member labels.

    For the identity-based scheme the labels are identity strings; for the
    proxy scheme they are encodings of the members' combined public keys.
    """

    members: tuple[bytes, ...]

    def __init__(self, members: Iterable[bytes]) -> None:
        members = tuple(bytes(m) for m in members)
        if not members:
            raise StructureError("empty ring")
        if len(set(members)) != len(members):
            raise StructureError("duplicate ring member")
        object.__setattr__(self, "members", members)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __getitem__(self, i: int) -> bytes:
        return self.members[i]

    def index(self, member: bytes) -> int:
        return self.members.index(member)


def _tagged(tag: bytes, counter: int, data: bytes) -> bytes:
    return bytes([len(tag)]) + tag + struct.pack(">I", counter) + data


def _hash_to_scalar(tag: bytes, data: bytes) -> Scalar:
    # 512-bit digest reduced mod q; bias is below 2^-250. Zero is skipped by
    # re-hashing with the next counter value.
    counter = 0
    while True:
        digest = hashlib.sha512(_tagged(tag, counter, data)).digest()
        value = int.from_bytes(digest, "big") % ORDER
        if value:
            return Scalar(value)
        counter += 1


def hash_to_key_point(tag: bytes, data: bytes) -> KeyPoint:
    counter = 0
    while True:
        pt = KeyPoint(G2.hash_to_point(_tagged(tag, counter, data)))
        if not pt.is_identity():
            return pt
        counter += 1


def h1_scalar(data: bytes) -> Scalar:
    tally("hash_calls")
    return _hash_to_scalar(H1_TAG, data)


def h2_point(data: bytes) -> KeyPoint:
    tally("h2_calls")
    return hash_to_key_point(H2_TAG, data)


def warrant_point(w: bytes) -> KeyPoint:
    """Hash of a warrant into the key group (the proxy scheme's ``H2(w)``)."""
    tally("h2_calls")
    return hash_to_key_point(WARRANT_TAG, w)


def h3_scalar(x: TargetElem) -> Scalar:
    tally("hash_calls")
    return _hash_to_scalar(H3_TAG, x.to_bytes())


def encode_sign_input(m: bytes, ring: RingDescriptor | Sequence[bytes]) -> bytes:
    """Injective encoding of ``m || L``.

    Layout: tag, u64 len(m), m, u64 member count, then each member as
    u64 length followed by its bytes.
    """
    members = ring.members if isinstance(ring, RingDescriptor) else tuple(ring)
    if not members:
        raise InputError("empty ring")
    parts = [SIGN_INPUT_TAG, length_prefixed(m), u64(len(members))]
    parts.extend(length_prefixed(x) for x in members)
    return b"".join(parts)


def decode_sign_input(data: bytes) -> tuple[bytes, tuple[bytes, ...]]:
    """Inverse of :func:`encode_sign_input`."""
    if not data.startswith(SIGN_INPUT_TAG):
        raise ValueError("missing sign-input tag")
    pos = len(SIGN_INPUT_TAG)

    def take(n: int) -> bytes:
        nonlocal pos
        if pos + n > len(data):
            raise ValueError("truncated sign input")
        chunk = data[pos : pos + n]
        pos += n
        return chunk

    m = take(_U64.unpack(take(8))[0])
    count = _U64.unpack(take(8))[0]
    members = tuple(take(_U64.unpack(take(8))[0]) for _ in range(count))
    if pos != len(data):
        raise ValueError("trailing bytes in sign input")
    return m, members
