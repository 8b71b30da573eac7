"""Pairing groups over BLS12-381.

The protocols are written for a symmetric pairing ``e: G1 x G1 -> G2``. We
realize them on an asymmetric (type-3) curve and fix which source group each
protocol element lives in:

* the *base* group (BLS12-381 G1) holds the generator ``P``, the master public
  key and every long-term public key ``x*P``;
* the *key* group (BLS12-381 G2) holds identity points ``H2(ID)``, extracted
  secret keys, glue values ``A``, the ``T_i`` and warrant points;
* the *target* group (GT) holds pairing outputs and the ring values ``c_i``.

Every symmetric pairing ``e(X, Y)`` in the protocol maps to
``pairing(base_side, key_side)``; this assignment needs no element to cross
groups. Arithmetic is delegated to RELIC through :mod:`petrelic`.

All arithmetic on :class:`BasePoint`, :class:`KeyPoint`, :class:`TargetElem`
and :class:`Scalar` reports into the active :func:`idring.counters.counting`
tally.
"""

from __future__ import annotations

import enum
from typing import Iterable, Protocol

from petrelic.multiplicative.pairing import (
    G1,
    G1Element,
    G2,
    G2Element,
    GT,
    GTElement,
)

from .counters import tally
from .errors import DecodeError, DecodeErrorCode

ORDER = int(G1.order())
FIELD_MODULUS = 0x1A0111EA397FE69A4B1BA7B6434BACD764774B84F38512BF6730D2A0F6B0F6241EABFFFEB153FFFFB9FEFFFFFFFFAAAB

_FP_BYTES = 48
SCALAR_BYTES = 32
BASE_POINT_BYTES = 1 + _FP_BYTES
KEY_POINT_BYTES = 1 + 2 * _FP_BYTES
TARGET_BYTES = 8 * _FP_BYTES


class CurveId(enum.IntEnum):
    BLS12_381 = 1


class RandomSource(Protocol):
    def randrange(self, start: int, stop: int) -> int: ...


def _fp_chunks_in_range(data: bytes) -> bool:
    return all(
        int.from_bytes(data[i : i + _FP_BYTES], "big") < FIELD_MODULUS
        for i in range(0, len(data), _FP_BYTES)
    )


class Scalar:
    """An integer modulo the group order, kept in reduced form."""

    __slots__ = ("value",)

    def __init__(self, value: int) -> None:
        if not 0 <= value < ORDER:
            raise ValueError("scalar out of range [0, q)")
        self.value = value

    @classmethod
    def reduce(cls, value: int) -> "Scalar":
        return cls(value % ORDER)

    def __mul__(self, other: "Scalar") -> "Scalar":
        if not isinstance(other, Scalar):
            return NotImplemented
        tally("scalar_muls")
        return Scalar(self.value * other.value % ORDER)

    def __add__(self, other: "Scalar") -> "Scalar":
        if not isinstance(other, Scalar):
            return NotImplemented
        return Scalar((self.value + other.value) % ORDER)

    def __int__(self) -> int:
        return self.value

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Scalar) and other.value == self.value

    def __hash__(self) -> int:
        return hash(("Scalar", self.value))

    def __repr__(self) -> str:
        return f"Scalar({self.value:#x})"

    def to_bytes(self) -> bytes:
        return self.value.to_bytes(SCALAR_BYTES, "big")

    @classmethod
    def from_bytes(cls, data: bytes) -> "Scalar":
        if len(data) != SCALAR_BYTES:
            raise DecodeError(DecodeErrorCode.TRUNCATED, "scalar length")
        value = int.from_bytes(data, "big")
        if value >= ORDER:
            raise DecodeError(DecodeErrorCode.SCALAR_OUT_OF_RANGE)
        return cls(value)


class _Point:
    __slots__ = ("_pt",)
    _element_cls: type
    _group: object
    _size: int
    _mul_field: str
    _add_field: str

    def __init__(self, pt) -> None:
        self._pt = pt

    @classmethod
    def generator(cls):
        return cls(cls._group.generator())

    @classmethod
    def identity(cls):
        return cls(cls._group.neutral_element())

    def is_identity(self) -> bool:
        return self._pt.is_neutral_element()

    def __add__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        tally(self._add_field)
        return type(self)(self._pt * other._pt)

    def __sub__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        tally(self._add_field)
        return type(self)(self._pt * other._pt.inverse())

    def __neg__(self):
        return type(self)(self._pt.inverse())

    def __rmul__(self, k):
        if isinstance(k, Scalar):
            k = k.value
        elif not isinstance(k, int):
            return NotImplemented
        tally(self._mul_field)
        return type(self)(self._pt ** (k % ORDER))

    def __eq__(self, other: object) -> bool:
        return type(other) is type(self) and self._pt == other._pt

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.to_bytes()))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.to_bytes()[:8].hex()}..)"

    def to_bytes(self) -> bytes:
        """Fixed-length compressed encoding; the identity is all zero bytes."""
        if self.is_identity():
            return bytes(self._size)
        return self._pt.to_binary()

    @classmethod
    def from_bytes(cls, data: bytes):
        if len(data) != cls._size:
            raise DecodeError(DecodeErrorCode.TRUNCATED, f"{cls.__name__} length")
        if data == bytes(cls._size):
            return cls.identity()
        if data[0] not in (2, 3) or not _fp_chunks_in_range(data[1:]):
            raise DecodeError(DecodeErrorCode.INVALID_POINT, cls.__name__)
        try:
            pt = cls._element_cls.from_binary(data)
        except Exception as exc:  # backend raises assorted types on garbage
            raise DecodeError(DecodeErrorCode.INVALID_POINT, cls.__name__) from exc
        if (
            not pt.is_valid()
            or pt.to_binary() != data
            or not (pt**ORDER).is_neutral_element()
        ):
            raise DecodeError(DecodeErrorCode.INVALID_POINT, cls.__name__)
        return cls(pt)


class BasePoint(_Point):
    __slots__ = ()
    _element_cls = G1Element
    _group = G1
    _size = BASE_POINT_BYTES
    _mul_field = "base_muls"
    _add_field = "base_adds"


class KeyPoint(_Point):
    __slots__ = ()
    _element_cls = G2Element
    _group = G2
    _size = KEY_POINT_BYTES
    _mul_field = "key_muls"
    _add_field = "key_adds"


class TargetElem:
    """Element of the order-q multiplicative target group."""

    __slots__ = ("_v",)

    def __init__(self, v: GTElement) -> None:
        self._v = v

    @classmethod
    def identity(cls) -> "TargetElem":
        return cls(GT.neutral_element())

    def is_identity(self) -> bool:
        return self._v.is_neutral_element()

    def __mul__(self, other: "TargetElem") -> "TargetElem":
        if not isinstance(other, TargetElem):
            return NotImplemented
        tally("gt_muls")
        return TargetElem(self._v * other._v)

    def __pow__(self, k) -> "TargetElem":
        if isinstance(k, Scalar):
            k = k.value
        tally("gt_pows")
        return TargetElem(self._v ** (k % ORDER))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, TargetElem) and self._v == other._v

    def __hash__(self) -> int:
        return hash(("TargetElem", self.to_bytes()))

    def __repr__(self) -> str:
        return f"TargetElem({self.to_bytes()[:8].hex()}..)"

    def to_bytes(self) -> bytes:
        return self._v.to_binary()

    @classmethod
    def from_bytes(cls, data: bytes) -> "TargetElem":
        if len(data) != TARGET_BYTES:
            raise DecodeError(DecodeErrorCode.TRUNCATED, "TargetElem length")
        if not _fp_chunks_in_range(data):
            raise DecodeError(DecodeErrorCode.INVALID_POINT, "TargetElem")
        try:
            v = GTElement.from_binary(data)
        except Exception as exc:
            raise DecodeError(DecodeErrorCode.INVALID_POINT, "TargetElem") from exc
        if v.to_binary() != data or not (v**ORDER).is_neutral_element():
            raise DecodeError(DecodeErrorCode.INVALID_POINT, "TargetElem")
        return cls(v)


def pairing(a: BasePoint, b: KeyPoint) -> TargetElem:
    tally("pairings")
    return TargetElem(a._pt.pair(b._pt))


def base_mul(k: Scalar, p: BasePoint) -> BasePoint:
    return k * p


def key_mul(k: Scalar, p: KeyPoint) -> KeyPoint:
    return k * p


def key_add(p: KeyPoint, q: KeyPoint) -> KeyPoint:
    return p + q


def key_sub(p: KeyPoint, q: KeyPoint) -> KeyPoint:
    return p - q


def point_sum(points):
    """Sum of a non-empty iterable of points from one source group."""
    it = iter(points)
    total = next(it)
    for p in it:
        total = total + p
    return total


key_sum = point_sum


def gt_mul(x: TargetElem, y: TargetElem) -> TargetElem:
    return x * y


def gt_pow(x: TargetElem, k: Scalar) -> TargetElem:
    return x**k


def gt_prod(values: Iterable[TargetElem]) -> TargetElem:
    it = iter(values)
    total = next(it)
    for v in it:
        total = total * v
    return total


def random_scalar(rng: RandomSource) -> Scalar:
    """Uniform over [1, q-1]."""
    return Scalar(rng.randrange(1, ORDER))


def random_key_point(rng: RandomSource) -> KeyPoint:
    # Sampling is not a protocol operation; keep it out of the tallies.
    return KeyPoint(G2.generator() ** rng.randrange(1, ORDER))
