"""Identity-based ring signatures and proxy ring signatures over BLS12-381."""

from .counters import OpCounts, counting
from .errors import (
    DecodeError,
    DecodeErrorCode,
    DelegationError,
    IdringError,
    InputError,
    StructureError,
)
from .hashing import RingDescriptor
from .kgc import IdentitySecretKey, MasterKey, SystemParams, extract, public_key_of, setup
from .proxy_ring import (
    DelegationToken,
    LongTermKeyPair,
    ProxyKeyPair,
    ProxyRingSignature,
    delegate,
    delegation_verify,
    keygen,
    proxy_key_gen,
    proxy_ring_sign,
    proxy_ring_verify,
)
from .ring_sig import RingSignature, ring_sign, ring_verify

__version__ = "0.1.0"
