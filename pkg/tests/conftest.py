import random

import pytest

from idring import kgc, proxy_ring


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)


@pytest.fixture(scope="session")
def system():
    """(params, master_key) shared across the session."""
    return kgc.setup(random.Random(2024))


@pytest.fixture(scope="session")
def params(system):
    return system[0]


@pytest.fixture(scope="session")
def master(system):
    return system[1]


def make_ring(master, r, prefix="user"):
    ids = [f"{prefix}-{i}".encode() for i in range(r)]
    return ids, [kgc.extract(master, i) for i in ids]


def make_proxy_group(rng, n, warrant=b"delegate: proxies 0..n, until 2030-01-01"):
    original = proxy_ring.keygen(rng)
    proxies = [proxy_ring.keygen(rng) for _ in range(n)]
    token = proxy_ring.delegate(original, warrant)
    pkeys = [proxy_ring.proxy_key_gen(token, p, original.PK) for p in proxies]
    return original, proxies, token, pkeys


# One PASS/FAIL line per acceptance criterion in the terminal summary.
_acceptance_results = []


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance.py" not in report.nodeid:
        return
    _acceptance_results.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance_results:
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{status}  {name}")


def random_artifacts(kind, count, rng, params, master):
    """Yield ``count`` freshly generated artifacts of a given wire kind."""
    from idring import ring_sig
    from idring.wire import Kind

    for i in range(count):
        if kind is Kind.PARAMS:
            yield kgc.setup(rng)[0]
        elif kind is Kind.MASTER_KEY:
            yield kgc.setup(rng)[1]
        elif kind is Kind.IDENTITY_KEY:
            yield kgc.extract(master, rng.randbytes(rng.randrange(1, 40)))
        elif kind is Kind.LONGTERM_KEY:
            yield proxy_ring.keygen(rng)
        elif kind is Kind.PUBLIC_KEY:
            yield proxy_ring.keygen(rng).PK
        elif kind is Kind.TOKEN:
            yield proxy_ring.delegate(proxy_ring.keygen(rng), rng.randbytes(rng.randrange(1, 64)))
        elif kind is Kind.PROXY_KEY:
            w = rng.randbytes(rng.randrange(1, 64))
            original = proxy_ring.keygen(rng)
            token = proxy_ring.delegate(original, w)
            yield proxy_ring.proxy_key_gen(token, proxy_ring.keygen(rng), original.PK)
        elif kind is Kind.RING_SIG:
            r = rng.randrange(1, 5)
            ids, sks = make_ring(master, r, prefix=f"w{i}-{rng.randrange(1 << 30)}")
            k = rng.randrange(r)
            yield ring_sig.ring_sign(params, ids, k, sks[k], rng.randbytes(16), rng)
        elif kind is Kind.PROXY_SIG:
            n = rng.randrange(1, 5)
            w = rng.randbytes(12)
            original, proxies, _, pkeys = make_proxy_group(rng, n, w)
            k = rng.randrange(n)
            yield proxy_ring.proxy_ring_sign(
                params, original.PK, [p.PK for p in proxies], k, pkeys[k], w, rng.randbytes(16), rng
            )
        else:
            raise AssertionError(kind)


def mutate(data, rng):
    """One random corruption of a byte string: flip, truncate, extend or splice."""
    data = bytearray(data)
    choice = rng.randrange(5)
    if choice == 0 and data:
        pos = rng.randrange(len(data))
        data[pos] ^= 1 << rng.randrange(8)
    elif choice == 1:
        del data[rng.randrange(len(data) + 1) :]
    elif choice == 2:
        data += rng.randbytes(rng.randrange(1, 16))
    elif choice == 3 and data:
        pos = rng.randrange(len(data))
        data[pos : pos + 8] = rng.randbytes(8)
    else:
        data = bytearray(rng.randbytes(rng.randrange(0, 600)))
    return bytes(data)
