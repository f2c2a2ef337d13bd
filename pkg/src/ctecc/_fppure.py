"""Pure-Python Montgomery field kernels over fixed-width limb vectors.

This is the fallback backend and the reference for the compiled one.  An
element is a list of `limb_count` ints, each in [0, 2^word_bits), holding
the Montgomery representation x*R mod p where R = 2^(word_bits*limb_count).

Every kernel runs a fixed schedule: loop bounds depend only on the limb
count, all carries and conditions are folded with mask arithmetic, and no
code path branches on element values.  Each kernel tallies the limb
operations it actually executed; the structural constant-time tests
assert the tally is value-independent.  The tally costs some speed, which
is acceptable here: the compiled backend is the fast path.

Word width is 64 by default; 32 is supported for the narrow-word build
(select with word_bits=32 or the CTECC_WORD_BITS environment variable).
"""

from . import instrumentation as _ins
from .errors import BadLength, OutOfRange, ZeroInverse


def _limbs_from_int(x, n, mask, word_bits):
    out = []
    for _ in range(n):
        out.append(x & mask)
        x >>= word_bits
    return out


def _int_from_limbs(a, word_bits):
    x = 0
    for limb in reversed(a):
        x = (x << word_bits) | limb
    return x


class PureFp:
    """Field context for one modulus. Elements are opaque limb lists."""

    backend_name = "pure"

    def __init__(self, p, word_bits=64):
        if p <= 3 or p % 2 == 0:
            raise ValueError("modulus must be an odd prime > 3")
        if word_bits not in (32, 64):
            raise ValueError("word_bits must be 32 or 64")
        self.p = p
        self.word_bits = word_bits
        self.mask = (1 << word_bits) - 1
        self.nbits = p.bit_length()
        self.nbytes = (self.nbits + 7) // 8
        self.limb_count = (self.nbits + word_bits - 1) // word_bits
        self.p_limbs = _limbs_from_int(p, self.limb_count, self.mask, word_bits)
        # n0 = -p^-1 mod 2^W, the Montgomery folding constant
        self.n0 = (-pow(p, -1, 1 << word_bits)) & self.mask
        r = (1 << (word_bits * self.limb_count)) % p
        self.r2_limbs = _limbs_from_int((r * r) % p, self.limb_count, self.mask, word_bits)
        self.zero = _limbs_from_int(0, self.limb_count, self.mask, word_bits)
        self.one = self.enc(1)
        self._exp_inv = p - 2

    # -- conversions ----------------------------------------------------

    def enc(self, x):
        """Plain integer in [0, p) -> Montgomery limbs."""
        if not 0 <= x < self.p:
            raise OutOfRange(f"value not a canonical residue mod p")
        return self.mul(_limbs_from_int(x, self.limb_count, self.mask, self.word_bits),
                        self.r2_limbs)

    def dec(self, a):
        """Montgomery limbs -> plain integer."""
        one = _limbs_from_int(1, self.limb_count, self.mask, self.word_bits)
        return _int_from_limbs(self.mul(a, one), self.word_bits)

    def decode(self, data):
        if len(data) != self.nbytes:
            raise BadLength(f"expected {self.nbytes} bytes, got {len(data)}")
        x = int.from_bytes(data, "big")
        if x >= self.p:
            raise OutOfRange("encoded value >= p")
        return self.enc(x)

    def encode(self, a):
        return self.dec(a).to_bytes(self.nbytes, "big")

    # -- kernels ---------------------------------------------------------

    def add(self, a, b):
        n = self.limb_count
        W = self.word_bits
        mask = self.mask
        p = self.p_limbs
        t = [0] * n
        ops = 0
        carry = 0
        for j in range(n):
            s = a[j] + b[j] + carry
            t[j] = s & mask
            carry = s >> W
            ops += 1
        borrow = 0
        u = [0] * n
        for j in range(n):
            s = t[j] - p[j] - borrow
            u[j] = s & mask
            borrow = (s >> W) & 1
            ops += 1
        # keep t - p when the sum overflowed the limb vector or t >= p
        sel = carry | (borrow ^ 1)
        fm = (0 - sel) & mask
        out = [0] * n
        for j in range(n):
            out[j] = t[j] ^ ((t[j] ^ u[j]) & fm)
            ops += 1
        if _ins.enabled:
            c = _ins.counters
            c.fp_add += 1
            c.limb_ops += ops
        return out

    def sub(self, a, b):
        n = self.limb_count
        W = self.word_bits
        mask = self.mask
        p = self.p_limbs
        t = [0] * n
        ops = 0
        borrow = 0
        for j in range(n):
            s = a[j] - b[j] - borrow
            t[j] = s & mask
            borrow = (s >> W) & 1
            ops += 1
        # add p back when the subtraction borrowed
        fm = (0 - borrow) & mask
        carry = 0
        out = [0] * n
        for j in range(n):
            s = t[j] + (p[j] & fm) + carry
            out[j] = s & mask
            carry = s >> W
            ops += 1
        if _ins.enabled:
            c = _ins.counters
            c.fp_sub += 1
            c.limb_ops += ops
        return out

    def neg(self, a):
        return self.sub(self.zero, a)

    def mul(self, a, b):
        """CIOS Montgomery product: returns a*b*R^-1 mod p."""
        n = self.limb_count
        W = self.word_bits
        mask = self.mask
        p = self.p_limbs
        n0 = self.n0
        t = [0] * (n + 2)
        ops = 0
        for i in range(n):
            ai = a[i]
            carry = 0
            for j in range(n):
                s = t[j] + ai * b[j] + carry
                t[j] = s & mask
                carry = s >> W
                ops += 1
            s = t[n] + carry
            t[n] = s & mask
            t[n + 1] = s >> W
            m = (t[0] * n0) & mask
            s = t[0] + m * p[0]
            carry = s >> W
            ops += 1
            for j in range(1, n):
                s = t[j] + m * p[j] + carry
                t[j - 1] = s & mask
                carry = s >> W
                ops += 1
            s = t[n] + carry
            t[n - 1] = s & mask
            t[n] = t[n + 1] + (s >> W)
        # conditional final subtraction: t may be in [0, 2p)
        borrow = 0
        u = [0] * n
        for j in range(n):
            s = t[j] - p[j] - borrow
            u[j] = s & mask
            borrow = (s >> W) & 1
            ops += 1
        sel = t[n] | (borrow ^ 1)
        fm = (0 - sel) & mask
        out = [0] * n
        for j in range(n):
            out[j] = t[j] ^ ((t[j] ^ u[j]) & fm)
            ops += 1
        if _ins.enabled:
            c = _ins.counters
            c.fp_mul += 1
            c.limb_ops += ops
        return out

    def sqr(self, a):
        out = self.mul(a, a)
        if _ins.enabled:
            c = _ins.counters
            c.fp_sqr += 1
            c.fp_mul -= 1
        return out

    def select(self, flag, a, b):
        """flag=1 -> a, flag=0 -> b; scans both operands either way."""
        mask = self.mask
        fm = (0 - (flag & 1)) & mask
        n = self.limb_count
        out = [0] * n
        for j in range(n):
            out[j] = b[j] ^ ((a[j] ^ b[j]) & fm)
        if _ins.enabled:
            c = _ins.counters
            c.fp_select += 1
            c.limb_ops += n
        return out

    def is_zero(self, a):
        """1 if a == 0 else 0, via a full-vector OR fold."""
        acc = 0
        for limb in a:
            acc |= limb
        if _ins.enabled:
            _ins.counters.limb_ops += self.limb_count
        # acc in [0, 2^W): (acc + mask) overflows the word iff acc != 0
        return 1 ^ ((acc + self.mask) >> self.word_bits) & 1

    def eq(self, a, b):
        acc = 0
        for x, y in zip(a, b):
            acc |= x ^ y
        if _ins.enabled:
            _ins.counters.limb_ops += self.limb_count
        return 1 ^ ((acc + self.mask) >> self.word_bits) & 1

    def inv(self, a):
        """Fermat inversion a^(p-2); the exponent is public, a is not."""
        if self.is_zero(a):
            raise ZeroInverse("inverse of zero")
        acc = self.one
        for i in range(self._exp_inv.bit_length() - 1, -1, -1):
            acc = self.mul(acc, acc)
            if (self._exp_inv >> i) & 1:
                acc = self.mul(acc, a)
        if _ins.enabled:
            _ins.counters.fp_inv += 1
        return acc

    def lookup_pair(self, xs, ys, idx):
        """Linear-scan fetch of (xs[idx], ys[idx]) without indexing on idx."""
        n = self.limb_count
        mask = self.mask
        W = self.word_bits
        outx = [0] * n
        outy = [0] * n
        for i in range(len(xs)):
            d = i ^ idx
            fm = (0 - (1 ^ ((d + mask) >> W) & 1)) & mask
            xi = xs[i]
            yi = ys[i]
            for j in range(n):
                outx[j] |= xi[j] & fm
                outy[j] |= yi[j] & fm
        if _ins.enabled:
            _ins.counters.limb_ops += 2 * n * len(xs)
        return outx, outy
