"""Identity-based ring signatures.

A signer holding ``S_k = s*H2(ID_k)`` signs on behalf of an ordered ring
``L = (ID_1, ..., ID_r)``. Slots are 0-based; ``sig.c[i]`` is the ring value
that is hashed together with ``Q_i = H2(ring[i])``, and indices wrap mod r::

    K        = H1(m || L)
    c[k+1]   = e(P, A)^K                                   (glue)
    c[i+1]   = [e(P_pub, H3(c[i]) Q_i) * e(P, T_i)]^K      (i != k)
    T_k      = A - H3(c[k]) S_k
    T        = sum(T_i)

Verification checks the aggregate of all r link equations with two pairings::

    prod(c) == [e(P_pub, sum(H3(c[i]) Q_i)) * e(P, T)]^K

By default the exponent K is folded into the key-group scalars before
pairing (``e(X, Y)^K == e(X, K*Y)``), so signing performs no target-group
exponentiations; ``fold_exponent=False`` selects the literal formulation.
"""

from __future__ import annotations

import dataclasses
from typing import Optional, Sequence, Union

from .errors import InputError, StructureError
from .groups import (
    KeyPoint,
    RandomSource,
    Scalar,
    TargetElem,
    gt_prod,
    key_sum,
    pairing,
    random_key_point,
)
from .hashing import RingDescriptor, encode_sign_input, h1_scalar, h3_scalar
from .kgc import IdentitySecretKey, SystemParams, public_key_of

RingLike = Union[RingDescriptor, Sequence[bytes]]


@dataclasses.dataclass(frozen=True)
class RingSignature:
    ring: RingDescriptor
    c: tuple[TargetElem, ...]
    T: KeyPoint

    def __post_init__(self) -> None:
        if len(self.c) != len(self.ring):
            raise StructureError(
                f"ring has {len(self.ring)} members but signature carries {len(self.c)} values"
            )


@dataclasses.dataclass(frozen=True)
class SignDebugTrace:
    """Intermediate values of one signing run, for per-link checking in tests."""

    K: Scalar
    A: KeyPoint
    T_parts: tuple[KeyPoint, ...]
    signer: int


def as_ring(ring: RingLike) -> RingDescriptor:
    return ring if isinstance(ring, RingDescriptor) else RingDescriptor(ring)


def _link(
    params: SystemParams,
    K: Scalar,
    h: Scalar,
    Q: KeyPoint,
    T_i: KeyPoint,
    fold_exponent: bool,
) -> TargetElem:
    if fold_exponent:
        return pairing(params.master_pub, (K * h) * Q) * pairing(
            params.base_gen, K * T_i
        )
    return (pairing(params.master_pub, h * Q) * pairing(params.base_gen, T_i)) ** K


def ring_sign_traced(
    params: SystemParams,
    ring: RingLike,
    k: int,
    sk: IdentitySecretKey,
    m: bytes,
    rng: RandomSource,
    *,
    fold_exponent: bool = True,
) -> tuple[RingSignature, SignDebugTrace]:
    ring = as_ring(ring)
    r = len(ring)
    if not 0 <= k < r:
        raise InputError(f"signer index {k} out of range for ring of size {r}")
    if ring[k] != sk.id:
        raise InputError("signer identity does not match its ring slot")

    K = h1_scalar(encode_sign_input(m, ring))
    A = random_key_point(rng)
    c: list[Optional[TargetElem]] = [None] * r
    T_parts: list[Optional[KeyPoint]] = [None] * r

    nxt = (k + 1) % r
    if fold_exponent:
        c[nxt] = pairing(params.base_gen, K * A)
    else:
        c[nxt] = pairing(params.base_gen, A) ** K

    for step in range(1, r):
        i = (k + step) % r
        T_parts[i] = random_key_point(rng)
        h = h3_scalar(c[i])
        c[(i + 1) % r] = _link(
            params, K, h, public_key_of(ring[i]), T_parts[i], fold_exponent
        )

    T_parts[k] = A - h3_scalar(c[k]) * sk.S
    sig = RingSignature(ring=ring, c=tuple(c), T=key_sum(T_parts))
    return sig, SignDebugTrace(K=K, A=A, T_parts=tuple(T_parts), signer=k)


def ring_sign(
    params: SystemParams,
    ring: RingLike,
    k: int,
    sk: IdentitySecretKey,
    m: bytes,
    rng: RandomSource,
    *,
    fold_exponent: bool = True,
) -> RingSignature:
    sig, _ = ring_sign_traced(
        params, ring, k, sk, m, rng, fold_exponent=fold_exponent
    )
    return sig


def ring_verify(
    params: SystemParams,
    ring: Optional[RingLike],
    m: bytes,
    sig: RingSignature,
) -> bool:
    """Check the aggregate ring equation.

    ``ring=None`` verifies against the ring embedded in the signature.
    Raises :class:`StructureError` if ``sig`` does not carry one value per
    ring member; returns False for any well-formed but invalid signature.
    """
    ring = sig.ring if ring is None else as_ring(ring)
    if len(sig.c) != len(ring):
        raise StructureError("ring size and signature length differ")
    if sig.ring != ring:
        return False

    K = h1_scalar(encode_sign_input(m, ring))
    weighted = key_sum(
        (K * h3_scalar(c_i)) * public_key_of(member)
        for c_i, member in zip(sig.c, ring)
    )
    rhs = pairing(params.master_pub, weighted) * pairing(params.base_gen, K * sig.T)
    return gt_prod(sig.c) == rhs


def link_check(
    params: SystemParams,
    ring: RingLike,
    m: bytes,
    trace: SignDebugTrace,
    sig: RingSignature,
) -> bool:
    """Recompute every cyclic link individually from the trace.

    Uses the literal ``[...]^K`` form so it stays independent of the folded
    path used by signing and verification.
    """
    ring = as_ring(ring)
    r = len(ring)
    if len(sig.c) != r or len(trace.T_parts) != r:
        return False
    if trace.K != h1_scalar(encode_sign_input(m, ring)):
        return False
    for i in range(r):
        expected = _link(
            params,
            trace.K,
            h3_scalar(sig.c[i]),
            public_key_of(ring[i]),
            trace.T_parts[i],
            fold_exponent=False,
        )
        if expected != sig.c[(i + 1) % r]:
            return False
    return key_sum(trace.T_parts) == sig.T
