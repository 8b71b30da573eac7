"""Delegation by warrant and proxy ring signatures.

An original signer with key pair ``(x_o, PK_o = x_o*P)`` delegates to a group
of proxies by publishing a warrant ``w`` and handing out ``x_ow = x_o*W``
where ``W = H2(w)``. A proxy with ``(x_p, PK_p)`` checks
``e(P, x_ow) == e(PK_o, W)`` and derives the proxy key
``S = x_ow + x_p*W = (x_o + x_p)*W`` whose public counterpart is
``PK_o + PK_p``.

Any proxy can then sign anonymously among a chosen subset of proxies. With
``C_i = PK_o + PK_{p_i}`` and ``K = H1(m || L')``::

    c[k+1] = e(P, A)
    c[i+1] = e(C_i, H3(c[i]) W)^K * e(P, T_i)        (i != k)
    T_k    = A - K*H3(c[k]) S
    T      = sum(T_i)

Multiplying all n link equations gives the two-pairing check::

    prod(c) == e(sum(K*H3(c[i]) C_i), W) * e(P, T)

Only the first factor of each link carries the exponent K.
"""

from __future__ import annotations

import dataclasses
from typing import Optional, Sequence

from .errors import DelegationError, InputError, StructureError
from .groups import (
    BasePoint,
    KeyPoint,
    RandomSource,
    Scalar,
    TargetElem,
    gt_prod,
    key_sum,
    pairing,
    point_sum,
    random_key_point,
    random_scalar,
)
from .hashing import (
    RingDescriptor,
    encode_sign_input,
    h1_scalar,
    h3_scalar,
    warrant_point,
)
from .kgc import SystemParams


@dataclasses.dataclass(frozen=True)
class LongTermKeyPair:
    x: Scalar
    PK: BasePoint

    def __repr__(self) -> str:
        return f"LongTermKeyPair(x=<secret>, PK={self.PK!r})"


@dataclasses.dataclass(frozen=True)
class DelegationToken:
    warrant: bytes
    x_ow: KeyPoint


@dataclasses.dataclass(frozen=True)
class ProxyKeyPair:
    warrant: bytes
    S_proxy: KeyPoint
    combined_pub: BasePoint

    def __repr__(self) -> str:
        return f"ProxyKeyPair(warrant={self.warrant!r}, S_proxy=<secret>)"


@dataclasses.dataclass(frozen=True)
class ProxyRingSignature:
    ring: RingDescriptor
    c: tuple[TargetElem, ...]
    T: KeyPoint

    def __post_init__(self) -> None:
        if len(self.c) != len(self.ring):
            raise StructureError(
                f"ring has {len(self.ring)} members but signature carries {len(self.c)} values"
            )


@dataclasses.dataclass(frozen=True)
class ProxySignTrace:
    K: Scalar
    A: KeyPoint
    T_parts: tuple[KeyPoint, ...]
    signer: int


def keygen(rng: RandomSource) -> LongTermKeyPair:
    x = random_scalar(rng)
    return LongTermKeyPair(x=x, PK=x * BasePoint.generator())


def keypair_from_secret(x: int) -> LongTermKeyPair:
    s = Scalar(x)
    if s.value == 0:
        raise InputError("secret must be non-zero")
    return LongTermKeyPair(x=s, PK=s * BasePoint.generator())


def delegate(original: LongTermKeyPair, w: bytes) -> DelegationToken:
    if not w:
        raise InputError("empty warrant")
    return DelegationToken(warrant=bytes(w), x_ow=original.x * warrant_point(w))


def delegation_verify(PK_o: BasePoint, token: DelegationToken) -> bool:
    if not token.warrant:
        return False
    return pairing(BasePoint.generator(), token.x_ow) == pairing(
        PK_o, warrant_point(token.warrant)
    )


def proxy_key_gen(
    token: DelegationToken, proxy: LongTermKeyPair, PK_o: BasePoint
) -> ProxyKeyPair:
    if not delegation_verify(PK_o, token):
        raise DelegationError("invalid delegation")
    W = warrant_point(token.warrant)
    return ProxyKeyPair(
        warrant=token.warrant,
        S_proxy=token.x_ow + proxy.x * W,
        combined_pub=PK_o + proxy.PK,
    )


def proxy_key_is_valid(pkey: ProxyKeyPair) -> bool:
    return pairing(pkey.combined_pub, warrant_point(pkey.warrant)) == pairing(
        BasePoint.generator(), pkey.S_proxy
    )


def combined_keys(PK_o: BasePoint, proxies: Sequence[BasePoint]) -> list[BasePoint]:
    return [PK_o + pk for pk in proxies]


def proxy_ring(PK_o: BasePoint, proxies: Sequence[BasePoint]) -> RingDescriptor:
    """Ring descriptor over the encodings of ``PK_o + PK_{p_i}``, in order."""
    return RingDescriptor(c.to_bytes() for c in combined_keys(PK_o, proxies))


def find_signer_slot(
    PK_o: BasePoint, proxies: Sequence[BasePoint], pkey: ProxyKeyPair
) -> int:
    for i, c in enumerate(combined_keys(PK_o, proxies)):
        if c == pkey.combined_pub:
            return i
    raise InputError("proxy key does not belong to any ring member")


def _link(
    params: SystemParams,
    K: Scalar,
    h: Scalar,
    C_i: BasePoint,
    W: KeyPoint,
    T_i: KeyPoint,
    fold_exponent: bool,
) -> TargetElem:
    if fold_exponent:
        first = pairing(C_i, (K * h) * W)
    else:
        first = pairing(C_i, h * W) ** K
    return first * pairing(params.base_gen, T_i)


def proxy_ring_sign_traced(
    params: SystemParams,
    PK_o: BasePoint,
    proxies: Sequence[BasePoint],
    k: int,
    pkey: ProxyKeyPair,
    w: bytes,
    m: bytes,
    rng: RandomSource,
    *,
    fold_exponent: bool = True,
) -> tuple[ProxyRingSignature, ProxySignTrace]:
    n = len(proxies)
    if not 0 <= k < n:
        raise InputError(f"signer index {k} out of range for ring of size {n}")
    if pkey.warrant != bytes(w):
        raise InputError("proxy key was issued under a different warrant")
    C = combined_keys(PK_o, proxies)
    if C[k] != pkey.combined_pub:
        raise InputError("combined public key does not match signer slot")
    ring = RingDescriptor(c.to_bytes() for c in C)

    K = h1_scalar(encode_sign_input(m, ring))
    W = warrant_point(w)
    A = random_key_point(rng)
    c: list[Optional[TargetElem]] = [None] * n
    T_parts: list[Optional[KeyPoint]] = [None] * n

    c[(k + 1) % n] = pairing(params.base_gen, A)
    for step in range(1, n):
        i = (k + step) % n
        T_parts[i] = random_key_point(rng)
        h = h3_scalar(c[i])
        c[(i + 1) % n] = _link(params, K, h, C[i], W, T_parts[i], fold_exponent)

    T_parts[k] = A - (K * h3_scalar(c[k])) * pkey.S_proxy
    sig = ProxyRingSignature(ring=ring, c=tuple(c), T=key_sum(T_parts))
    return sig, ProxySignTrace(K=K, A=A, T_parts=tuple(T_parts), signer=k)


def proxy_ring_sign(
    params: SystemParams,
    PK_o: BasePoint,
    proxies: Sequence[BasePoint],
    k: int,
    pkey: ProxyKeyPair,
    w: bytes,
    m: bytes,
    rng: RandomSource,
    *,
    fold_exponent: bool = True,
) -> ProxyRingSignature:
    sig, _ = proxy_ring_sign_traced(
        params, PK_o, proxies, k, pkey, w, m, rng, fold_exponent=fold_exponent
    )
    return sig


def proxy_ring_verify(
    params: SystemParams,
    PK_o: BasePoint,
    proxies: Sequence[BasePoint],
    w: bytes,
    m: bytes,
    sig: ProxyRingSignature,
) -> bool:
    if len(sig.c) != len(proxies):
        raise StructureError("ring size and signature length differ")
    C = combined_keys(PK_o, proxies)
    try:
        ring = RingDescriptor(c.to_bytes() for c in C)
    except StructureError:
        return False
    if sig.ring != ring:
        return False

    K = h1_scalar(encode_sign_input(m, ring))
    W = warrant_point(w)
    weighted = point_sum((K * h3_scalar(c_i)) * C_i for c_i, C_i in zip(sig.c, C))
    rhs = pairing(weighted, W) * pairing(params.base_gen, sig.T)
    return gt_prod(sig.c) == rhs


def proxy_link_check(
    params: SystemParams,
    PK_o: BasePoint,
    proxies: Sequence[BasePoint],
    w: bytes,
    m: bytes,
    trace: ProxySignTrace,
    sig: ProxyRingSignature,
) -> bool:
    """Recompute every link individually (literal ``e(...)^K`` form)."""
    n = len(proxies)
    if len(sig.c) != n or len(trace.T_parts) != n:
        return False
    C = combined_keys(PK_o, proxies)
    ring = RingDescriptor(c.to_bytes() for c in C)
    if trace.K != h1_scalar(encode_sign_input(m, ring)):
        return False
    W = warrant_point(w)
    for i in range(n):
        expected = _link(
            params, trace.K, h3_scalar(sig.c[i]), C[i], W, trace.T_parts[i], False
        )
        if expected != sig.c[(i + 1) % n]:
            return False
    return key_sum(trace.T_parts) == sig.T
