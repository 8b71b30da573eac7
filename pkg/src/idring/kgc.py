"""Key Generation Center: system setup and identity key extraction."""

from __future__ import annotations

import dataclasses

from .errors import InputError
from .groups import (
    BasePoint,
    CurveId,
    KeyPoint,
    RandomSource,
    Scalar,
    pairing,
    random_scalar,
)
from .hashing import h2_point


@dataclasses.dataclass(frozen=True)
class SystemParams:
    curve_id: CurveId
    base_gen: BasePoint
    key_gen: KeyPoint
    master_pub: BasePoint


@dataclasses.dataclass(frozen=True)
class MasterKey:
    s: Scalar

    def __repr__(self) -> str:
        return "MasterKey(<secret>)"


@dataclasses.dataclass(frozen=True)
class IdentitySecretKey:
    id: bytes
    S: KeyPoint

    def __repr__(self) -> str:
        return f"IdentitySecretKey(id={self.id!r}, S=<secret>)"


def _params_for(s: Scalar, curve_id: CurveId) -> tuple[SystemParams, MasterKey]:
    if s.value == 0:
        raise InputError("master secret must be non-zero")
    base_gen = BasePoint.generator()
    params = SystemParams(
        curve_id=CurveId(curve_id),
        base_gen=base_gen,
        key_gen=KeyPoint.generator(),
        master_pub=s * base_gen,
    )
    return params, MasterKey(s)


def setup(
    rng: RandomSource, curve_id: CurveId = CurveId.BLS12_381
) -> tuple[SystemParams, MasterKey]:
    """Draw a master secret ``s`` and publish ``P_pub = s*P``."""
    return _params_for(random_scalar(rng), curve_id)


def _setup_with_secret(
    s: int, curve_id: CurveId = CurveId.BLS12_381
) -> tuple[SystemParams, MasterKey]:
    # Test hook for deterministic vectors; not exported.
    return _params_for(Scalar(s), curve_id)


def public_key_of(id: bytes) -> KeyPoint:
    if not id:
        raise InputError("empty identity")
    return h2_point(id)


def extract(mk: MasterKey, id: bytes) -> IdentitySecretKey:
    if not id:
        raise InputError("empty identity")
    return IdentitySecretKey(id=bytes(id), S=mk.s * h2_point(id))


def key_is_valid(params: SystemParams, sk: IdentitySecretKey) -> bool:
    """Check ``e(P_pub, H2(id)) == e(P, S)``."""
    return pairing(params.master_pub, public_key_of(sk.id)) == pairing(
        params.base_gen, sk.S
    )
