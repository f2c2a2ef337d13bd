import hashlib
import random

import pytest

from ctecc.errors import BadLength, OutOfRange, ZeroInverse
from ctecc.scalar import ScalarOps

Q256 = 0xFFFFFFFF00000000FFFFFFFFFFFFFFFFBCE6FAADA7179E84F3B9CAC2FC632551
Q521 = (1 << 521) - 0x51868783BF2F966B7FCC0148F709A5D03BB5C9B8899C47AEBB6FB71E91386409


def test_arithmetic_and_inverse():
    sc = ScalarOps(Q256)
    rng = random.Random(0xA5)
    for _ in range(50):
        a, b = rng.randrange(Q256), rng.randrange(1, Q256)
        assert sc.add(a, b) == (a + b) % Q256
        assert sc.mul(a, b) == a * b % Q256
        assert sc.mul(b, sc.inv(b)) == 1
        assert sc.inv(b) == pow(b, -1, Q256)
    with pytest.raises(ZeroInverse):
        sc.inv(0)


def test_digest_reduction_truncates_like_a_shift():
    # 521-bit order, 512-bit digest: no truncation, plain reduction
    sc = ScalarOps(Q521)
    d = hashlib.sha512(b"x").digest()
    assert sc.mod_wide(d) == int.from_bytes(d, "big") % Q521

    # 256-bit order, 512-bit digest: keep the leftmost qbits first
    sc = ScalarOps(Q256)
    x = int.from_bytes(d, "big")
    assert sc.mod_wide(d) == (x >> (512 - 256)) % Q256
    assert sc.mod_wide(b"") == 0
    with pytest.raises(BadLength):
        sc.mod_wide(b"\x00" * (2 * sc.qbytes + 1))
    with pytest.raises(ValueError):
        sc.mod_wide(d, mode="nonesuch")


def test_digest_reduction_gost_mode_maps_zero_to_one():
    sc = ScalarOps(Q256)
    assert sc.mod_wide(Q256.to_bytes(32, "big"), mode="gost") == 1
    assert sc.mod_wide(b"\x00" * 32, mode="gost") == 1
    assert sc.mod_wide((Q256 + 5).to_bytes(32, "big"), mode="gost") == 5
    d = hashlib.sha256(b"m").digest()
    assert sc.mod_wide(d, mode="gost") == int.from_bytes(d, "big") % Q256


def test_keyrange_and_fixed_width_codec():
    sc = ScalarOps(Q256)
    assert not sc.in_keyrange(0)
    assert sc.in_keyrange(1)
    assert sc.in_keyrange(Q256 - 1)
    assert not sc.in_keyrange(Q256)
    assert sc.in_keyrange((Q256 - 1).to_bytes(32, "big"))

    assert sc.encode(5) == (5).to_bytes(32, "big")
    assert sc.decode(sc.encode(Q256 - 1)) == Q256 - 1
    with pytest.raises(OutOfRange):
        sc.encode(Q256)
    with pytest.raises(OutOfRange):
        sc.decode(Q256.to_bytes(32, "big"))
    with pytest.raises(BadLength):
        sc.decode(b"\x01" * 31)
