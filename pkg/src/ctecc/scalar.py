"""Arithmetic modulo the group order q.

Scalars cross this API as plain Python ints in [0, q); their fixed-width
wire form is big-endian, ceil(bitlen(q)/8) bytes.  Multiplication and
addition use plain modular arithmetic (the value contract is all that
matters there); inversion runs through the same constant-time Fermat
ladder as the field layer, over a field context built for q.

Hash-to-scalar has two modes:
  * "ecdsa": keep the leftmost bitlen(q) bits of the digest, then reduce.
  * "gost":  reduce the whole digest, then map 0 to 1.
"""

from . import fp as _fp
from .errors import BadLength, OutOfRange


class ScalarOps:
    """Mod-q arithmetic bound to one group order."""

    def __init__(self, q, backend=None):
        self.q = q
        self.qbits = q.bit_length()
        self.qbytes = (self.qbits + 7) // 8
        self._fq = _fp.field(q, backend=backend)

    def add(self, a, b):
        return (a + b) % self.q

    def mul(self, a, b):
        return (a * b) % self.q

    def inv(self, a):
        """Constant-time inverse; raises ZeroInverse on 0."""
        return self._fq.dec(self._fq.inv(self._fq.enc(a % self.q)))

    def mod_wide(self, data, mode="ecdsa"):
        """Map a digest (up to 2*qbytes octets) to a scalar."""
        if len(data) > 2 * self.qbytes:
            raise BadLength(f"wide input longer than {2 * self.qbytes} bytes")
        x = int.from_bytes(data, "big")
        if mode == "ecdsa":
            extra = len(data) * 8 - self.qbits
            if extra > 0:
                x >>= extra
            return x % self.q
        if mode == "gost":
            x %= self.q
            return x if x != 0 else 1
        raise ValueError(f"unknown mode {mode!r}")

    def in_keyrange(self, value):
        """True iff 1 <= value <= q-1. Accepts int or fixed-width bytes."""
        if isinstance(value, (bytes, bytearray)):
            value = int.from_bytes(value, "big")
        return 1 <= value < self.q

    def encode(self, k):
        if not 0 <= k < self.q:
            raise OutOfRange("scalar outside [0, q)")
        return k.to_bytes(self.qbytes, "big")

    def decode(self, data):
        if len(data) != self.qbytes:
            raise BadLength(f"expected {self.qbytes} bytes, got {len(data)}")
        x = int.from_bytes(data, "big")
        if x >= self.q:
            raise OutOfRange("scalar >= q")
        return x
