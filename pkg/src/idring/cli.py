"""Command-line front end.

Exit codes: 0 success / valid signature, 1 invalid signature, 2 usage, I/O
or format errors. Secret artifacts are only ever written to files given by
``--out`` (or ``--master`` for setup), never to standard output.
"""

from __future__ import annotations

import argparse
import random
import secrets
import sys
from pathlib import Path

from . import cost_meter, kgc, proxy_ring, ring_sig, wire
from .errors import IdringError
from .wire import Kind

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_ERROR = 2


class CliError(Exception):
    pass


def _rng(args):
    if getattr(args, "seed", None):
        try:
            return random.Random(int(args.seed, 16))
        except ValueError:
            raise CliError(f"--seed must be hex, got {args.seed!r}") from None
    return secrets.SystemRandom()


def _read(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: str, data: bytes, secret: bool = False) -> None:
    p = Path(path)
    try:
        p.write_bytes(data)
        if secret:
            p.chmod(0o600)
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc.strerror}") from None


def _load(path: str, kind: Kind):
    return wire.decode(wire.dearmor(_read(path)), expect=kind)[1]


def _require(args, *names: str) -> None:
    for name in names:
        if getattr(args, name) is None:
            raise CliError(f"--{name.replace('_', '-')} is required")


def _emit(args, value, label: str) -> None:
    data = wire.encode(value)
    if args.out:
        _write(args.out, data)
        print(f"wrote {label} to {args.out}")
    else:
        print(wire.armor(data))


def _ring_arg(text: str) -> list[bytes]:
    members = [part.strip().encode() for part in text.split(",")]
    if any(not m for m in members):
        raise CliError("--ring contains an empty identity")
    return members


def cmd_setup(args) -> int:
    _require(args, "params", "master")
    params, mk = kgc.setup(_rng(args))
    _write(args.params, wire.encode(params))
    _write(args.master, wire.encode(mk), secret=True)
    print(f"wrote params to {args.params}, master key to {args.master}")
    return EXIT_OK


def cmd_extract(args) -> int:
    _require(args, "master", "id", "out")
    mk = _load(args.master, Kind.MASTER_KEY)
    sk = kgc.extract(mk, args.id.encode())
    _write(args.out, wire.encode(sk), secret=True)
    print(f"wrote secret key for {args.id!r} to {args.out}")
    return EXIT_OK


def cmd_keygen(args) -> int:
    _require(args, "out")
    pair = proxy_ring.keygen(_rng(args))
    _write(args.out, wire.encode(pair), secret=True)
    _write(args.out + ".pub", wire.encode(pair.PK))
    print(f"wrote key pair to {args.out}, public key to {args.out}.pub")
    return EXIT_OK


def cmd_sign(args) -> int:
    _require(args, "params", "ring", "signer", "key", "msg")
    params = _load(args.params, Kind.PARAMS)
    sk = _load(args.key, Kind.IDENTITY_KEY)
    ring = _ring_arg(args.ring)
    signer = args.signer.encode()
    if signer not in ring:
        raise CliError(f"signer {args.signer!r} is not in the ring")
    if sk.id != signer:
        raise CliError("key file does not belong to --signer")
    sig = ring_sig.ring_sign(
        params, ring, ring.index(signer), sk, _read(args.msg), _rng(args)
    )
    _emit(args, sig, "ring signature")
    return EXIT_OK


def _report(ok: bool) -> int:
    print("signature valid" if ok else "signature invalid")
    return EXIT_OK if ok else EXIT_INVALID


def cmd_verify(args) -> int:
    _require(args, "params", "msg", "sig")
    params = _load(args.params, Kind.PARAMS)
    sig = _load(args.sig, Kind.RING_SIG)
    ring = _ring_arg(args.ring) if args.ring else None
    if ring is not None and len(ring) != len(sig.c):
        return _report(False)
    return _report(ring_sig.ring_verify(params, ring, _read(args.msg), sig))


def cmd_delegate(args) -> int:
    _require(args, "key", "warrant", "out")
    original = _load(args.key, Kind.LONGTERM_KEY)
    token = proxy_ring.delegate(original, _read(args.warrant))
    _write(args.out, wire.encode(token), secret=True)
    print(f"wrote delegation token to {args.out}")
    return EXIT_OK


def cmd_proxy_keygen(args) -> int:
    _require(args, "token", "key", "original_pk", "out")
    token = _load(args.token, Kind.TOKEN)
    proxy = _load(args.key, Kind.LONGTERM_KEY)
    PK_o = _load(args.original_pk, Kind.PUBLIC_KEY)
    pkey = proxy_ring.proxy_key_gen(token, proxy, PK_o)
    _write(args.out, wire.encode(pkey), secret=True)
    print(f"wrote proxy key to {args.out}")
    return EXIT_OK


def _proxy_pks(args):
    return [_load(p.strip(), Kind.PUBLIC_KEY) for p in args.proxy_pks.split(",")]


def cmd_proxy_sign(args) -> int:
    _require(args, "params", "original_pk", "proxy_pks", "key", "warrant", "msg")
    params = _load(args.params, Kind.PARAMS)
    PK_o = _load(args.original_pk, Kind.PUBLIC_KEY)
    proxies = _proxy_pks(args)
    pkey = _load(args.key, Kind.PROXY_KEY)
    k = proxy_ring.find_signer_slot(PK_o, proxies, pkey)
    sig = proxy_ring.proxy_ring_sign(
        params, PK_o, proxies, k, pkey, _read(args.warrant), _read(args.msg), _rng(args)
    )
    _emit(args, sig, "proxy ring signature")
    return EXIT_OK


def cmd_proxy_verify(args) -> int:
    _require(args, "params", "original_pk", "proxy_pks", "warrant", "msg", "sig")
    params = _load(args.params, Kind.PARAMS)
    PK_o = _load(args.original_pk, Kind.PUBLIC_KEY)
    proxies = _proxy_pks(args)
    sig = _load(args.sig, Kind.PROXY_SIG)
    if len(sig.c) != len(proxies):
        return _report(False)
    ok = proxy_ring.proxy_ring_verify(
        params, PK_o, proxies, _read(args.warrant), _read(args.msg), sig
    )
    return _report(ok)


def cmd_bench(args) -> int:
    if args.max_n < 1:
        raise CliError("--max-n must be at least 1")
    rows = cost_meter.cost_report(args.max_n)
    out = cost_meter.format_csv(rows) if args.csv else cost_meter.format_table(rows)
    sys.stdout.write(out)
    return EXIT_OK if all(r.pairings_match for r in rows) else EXIT_INVALID


COMMANDS = {
    "setup": (cmd_setup, "generate system parameters and a master key"),
    "extract": (cmd_extract, "extract an identity secret key"),
    "keygen": (cmd_keygen, "generate a long-term key pair for delegation"),
    "sign": (cmd_sign, "ring-sign a message"),
    "verify": (cmd_verify, "verify a ring signature"),
    "delegate": (cmd_delegate, "issue a delegation token for a warrant"),
    "proxy-keygen": (cmd_proxy_keygen, "derive a proxy signing key from a token"),
    "proxy-sign": (cmd_proxy_sign, "proxy ring-sign a message"),
    "proxy-verify": (cmd_proxy_verify, "verify a proxy ring signature"),
    "bench": (cmd_bench, "report operation counts per ring size"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="idring", description="Identity-based and proxy ring signatures."
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        if name == "bench":
            p.add_argument("--max-n", type=int, default=8)
            p.add_argument("--csv", action="store_true")
            continue
        for flag in (
            "--params", "--master", "--id", "--ring", "--signer", "--key",
            "--msg", "--sig", "--warrant", "--token", "--original-pk",
            "--proxy-pks", "--out",
        ):
            p.add_argument(flag, metavar="VALUE")
        p.add_argument(
            "--seed", metavar="HEX", help="deterministic randomness (insecure; for test vectors)"
        )
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    handler = COMMANDS[args.command][0]
    try:
        return handler(args)
    except (CliError, IdringError) as exc:
        print(f"idring {args.command}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
