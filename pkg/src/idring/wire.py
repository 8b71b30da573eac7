"""Versioned binary envelopes for every public artifact.

Layout: ``magic (4) | version (1) | kind (1) | payload``. All lengths and
counts are 8-byte big-endian; points use the fixed-length compressed form
from :mod:`idring.groups`. See FORMATS.md for the per-kind payloads.

Decoding validates every element (range, canonical encoding, subgroup
membership) before returning it, and any failure surfaces as
:class:`~idring.errors.DecodeError`, never as another exception type.
"""

from __future__ import annotations

import enum
import struct

from .errors import DecodeError, DecodeErrorCode, IdringError
from .groups import TARGET_BYTES, BasePoint, CurveId, KeyPoint, Scalar, TargetElem
from .hashing import RingDescriptor, length_prefixed, u64
from .kgc import IdentitySecretKey, MasterKey, SystemParams
from .proxy_ring import (
    DelegationToken,
    LongTermKeyPair,
    ProxyKeyPair,
    ProxyRingSignature,
)
from .ring_sig import RingSignature

MAGIC = b"IDRS"
VERSION = 1


class Kind(enum.IntEnum):
    PARAMS = 1
    IDENTITY_KEY = 2
    RING_SIG = 3
    TOKEN = 4
    PROXY_SIG = 5
    LONGTERM_KEY = 6
    MASTER_KEY = 7
    PUBLIC_KEY = 8
    PROXY_KEY = 9


_KIND_OF = {
    SystemParams: Kind.PARAMS,
    IdentitySecretKey: Kind.IDENTITY_KEY,
    RingSignature: Kind.RING_SIG,
    DelegationToken: Kind.TOKEN,
    ProxyRingSignature: Kind.PROXY_SIG,
    LongTermKeyPair: Kind.LONGTERM_KEY,
    MasterKey: Kind.MASTER_KEY,
    BasePoint: Kind.PUBLIC_KEY,
    ProxyKeyPair: Kind.PROXY_KEY,
}

_U64 = struct.Struct(">Q")


class _Reader:
    def __init__(self, data: bytes) -> None:
        self.data = data
        self.pos = 0

    def take(self, n: int) -> bytes:
        if n > len(self.data) - self.pos:
            raise DecodeError(DecodeErrorCode.TRUNCATED)
        chunk = self.data[self.pos : self.pos + n]
        self.pos += n
        return chunk

    def u64(self) -> int:
        return _U64.unpack(self.take(8))[0]

    def lp(self) -> bytes:
        return self.take(self.u64())

    def scalar(self) -> Scalar:
        return Scalar.from_bytes(self.take(32))

    def base_point(self) -> BasePoint:
        return BasePoint.from_bytes(self.take(BasePoint._size))

    def key_point(self) -> KeyPoint:
        return KeyPoint.from_bytes(self.take(KeyPoint._size))

    def target(self) -> TargetElem:
        return TargetElem.from_bytes(self.take(TARGET_BYTES))

    def finish(self) -> None:
        if self.pos != len(self.data):
            raise DecodeError(DecodeErrorCode.TRAILING_DATA)


def kind_of(value: object) -> Kind:
    try:
        return _KIND_OF[type(value)]
    except KeyError:
        raise TypeError(f"cannot serialize {type(value).__name__}") from None


def _encode_ring_sig(sig) -> bytes:
    parts = [u64(len(sig.ring))]
    parts += [length_prefixed(member) for member in sig.ring]
    parts += [c.to_bytes() for c in sig.c]
    parts.append(sig.T.to_bytes())
    return b"".join(parts)


def _payload(kind: Kind, value) -> bytes:
    if kind is Kind.PARAMS:
        return (
            bytes([value.curve_id])
            + value.base_gen.to_bytes()
            + value.key_gen.to_bytes()
            + value.master_pub.to_bytes()
        )
    if kind is Kind.MASTER_KEY:
        return value.s.to_bytes()
    if kind is Kind.IDENTITY_KEY:
        return length_prefixed(value.id) + value.S.to_bytes()
    if kind in (Kind.RING_SIG, Kind.PROXY_SIG):
        return _encode_ring_sig(value)
    if kind is Kind.TOKEN:
        return length_prefixed(value.warrant) + value.x_ow.to_bytes()
    if kind is Kind.LONGTERM_KEY:
        return value.x.to_bytes() + value.PK.to_bytes()
    if kind is Kind.PUBLIC_KEY:
        return value.to_bytes()
    if kind is Kind.PROXY_KEY:
        return (
            length_prefixed(value.warrant)
            + value.S_proxy.to_bytes()
            + value.combined_pub.to_bytes()
        )
    raise AssertionError(kind)


def encode(value) -> bytes:
    kind = kind_of(value)
    return MAGIC + bytes([VERSION, kind]) + _payload(kind, value)


def _malformed(detail: str) -> DecodeError:
    return DecodeError(DecodeErrorCode.MALFORMED, detail)


def _nonzero(s: Scalar, what: str) -> Scalar:
    if s.value == 0:
        raise DecodeError(DecodeErrorCode.SCALAR_OUT_OF_RANGE, f"{what} is zero")
    return s


def _decode_ring_sig(r: _Reader, proxy: bool):
    count = r.u64()
    if count == 0:
        raise _malformed("empty ring")
    members = []
    for _ in range(count):
        member = r.lp()
        if proxy:
            BasePoint.from_bytes(member)
        elif not member:
            raise _malformed("empty identity")
        members.append(member)
    c = tuple(r.target() for _ in range(count))
    T = r.key_point()
    try:
        ring = RingDescriptor(members)
    except IdringError as exc:
        raise _malformed(str(exc)) from exc
    cls = ProxyRingSignature if proxy else RingSignature
    return cls(ring=ring, c=c, T=T)


def _decode_payload(kind: Kind, r: _Reader):
    if kind is Kind.PARAMS:
        curve = r.take(1)[0]
        if curve not in CurveId._value2member_map_:
            raise DecodeError(DecodeErrorCode.UNKNOWN_CURVE, str(curve))
        base_gen, key_gen, master_pub = r.base_point(), r.key_point(), r.base_point()
        if base_gen != BasePoint.generator() or key_gen != KeyPoint.generator():
            raise _malformed("non-standard generator")
        if master_pub.is_identity():
            raise DecodeError(DecodeErrorCode.INVALID_POINT, "master public key")
        return SystemParams(CurveId(curve), base_gen, key_gen, master_pub)
    if kind is Kind.MASTER_KEY:
        return MasterKey(_nonzero(r.scalar(), "master secret"))
    if kind is Kind.IDENTITY_KEY:
        ident = r.lp()
        if not ident:
            raise _malformed("empty identity")
        return IdentitySecretKey(ident, r.key_point())
    if kind is Kind.RING_SIG:
        return _decode_ring_sig(r, proxy=False)
    if kind is Kind.PROXY_SIG:
        return _decode_ring_sig(r, proxy=True)
    if kind is Kind.TOKEN:
        w = r.lp()
        if not w:
            raise _malformed("empty warrant")
        return DelegationToken(w, r.key_point())
    if kind is Kind.LONGTERM_KEY:
        x = _nonzero(r.scalar(), "secret")
        PK = r.base_point()
        if x * BasePoint.generator() != PK:
            raise _malformed("public key does not match secret")
        return LongTermKeyPair(x, PK)
    if kind is Kind.PUBLIC_KEY:
        pk = r.base_point()
        if pk.is_identity():
            raise DecodeError(DecodeErrorCode.INVALID_POINT, "identity public key")
        return pk
    if kind is Kind.PROXY_KEY:
        w = r.lp()
        if not w:
            raise _malformed("empty warrant")
        return ProxyKeyPair(w, r.key_point(), r.base_point())
    raise AssertionError(kind)


def decode(data: bytes, expect: Kind | None = None) -> tuple[Kind, object]:
    """Parse and validate an envelope; returns ``(kind, value)``."""
    r = _Reader(bytes(data))
    if r.take(4) != MAGIC:
        raise DecodeError(DecodeErrorCode.BAD_MAGIC)
    version, raw_kind = r.take(2)
    if version != VERSION:
        raise DecodeError(DecodeErrorCode.UNSUPPORTED_VERSION, str(version))
    try:
        kind = Kind(raw_kind)
    except ValueError:
        raise DecodeError(DecodeErrorCode.UNKNOWN_KIND, str(raw_kind)) from None
    if expect is not None and kind is not expect:
        raise DecodeError(
            DecodeErrorCode.UNKNOWN_KIND, f"expected {expect.name}, got {kind.name}"
        )
    value = _decode_payload(kind, r)
    r.finish()
    return kind, value


def armor(data: bytes) -> str:
    return data.hex()


def dearmor(data: bytes) -> bytes:
    """Accept either a raw envelope or its lowercase-hex armor."""
    if data.startswith(MAGIC):
        return data
    try:
        return bytes.fromhex(data.decode("ascii").strip())
    except (UnicodeDecodeError, ValueError):
        raise DecodeError(DecodeErrorCode.BAD_MAGIC, "neither envelope nor hex armor") from None
