# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Montgomery field kernels: 64-bit limbs, 128-bit accumulator.

Mirror of _fppure with the same schedule and contracts; tests assert the
two backends agree limb-for-limb.  Elements are FpElt instances holding a
fixed uint64[9] vector (enough for 521-bit moduli).
"""

from libc.string cimport memset, memcpy

from ctecc.errors import BadLength, OutOfRange, ZeroInverse

cdef extern from *:
    ctypedef unsigned long long u64 "uint64_t"
    ctypedef unsigned long long u128 "unsigned __int128"

DEF MAX_LIMBS = 9

cdef bint _counting = False
cdef long long _c_add = 0, _c_sub = 0, _c_mul = 0, _c_sqr = 0, _c_inv = 0
cdef long long _c_sel = 0, _c_limb = 0


def set_counting(flag):
    global _counting
    _counting = bool(flag)


def reset_counters():
    global _c_add, _c_sub, _c_mul, _c_sqr, _c_inv, _c_sel, _c_limb
    _c_add = _c_sub = _c_mul = _c_sqr = _c_inv = _c_sel = _c_limb = 0


def peek_counters():
    return {
        "fp_add": _c_add, "fp_sub": _c_sub, "fp_mul": _c_mul,
        "fp_sqr": _c_sqr, "fp_inv": _c_inv, "fp_select": _c_sel,
        "limb_ops": _c_limb,
    }


cdef class FpElt:
    cdef u64 v[MAX_LIMBS]


cdef long long _mul_limbs(u64 *a, u64 *b, u64 *out, u64 *p, u64 n0, int n) noexcept nogil:
    """CIOS product a*b*R^-1 mod p. Safe when out aliases a or b."""
    cdef u64 t[MAX_LIMBS + 2]
    cdef u64 u[MAX_LIMBS]
    cdef u128 s
    cdef u64 carry64, m, borrow, sel, fm
    cdef u128 carry
    cdef int i, j
    cdef long long ops = 0
    memset(t, 0, sizeof(t))
    for i in range(n):
        carry = 0
        for j in range(n):
            s = <u128>t[j] + <u128>a[i] * b[j] + carry
            t[j] = <u64>s
            carry = s >> 64
            ops += 1
        s = <u128>t[n] + carry
        t[n] = <u64>s
        t[n + 1] = <u64>(s >> 64)
        m = t[0] * n0
        s = <u128>t[0] + <u128>m * p[0]
        carry = s >> 64
        ops += 1
        for j in range(1, n):
            s = <u128>t[j] + <u128>m * p[j] + carry
            t[j - 1] = <u64>s
            carry = s >> 64
            ops += 1
        s = <u128>t[n] + carry
        t[n - 1] = <u64>s
        t[n] = t[n + 1] + <u64>(s >> 64)
    borrow = 0
    for j in range(n):
        s = <u128>t[j] - p[j] - borrow
        u[j] = <u64>s
        borrow = <u64>(s >> 64) & 1
        ops += 1
    sel = t[n] | (borrow ^ 1)
    fm = 0 - sel
    for j in range(n):
        out[j] = t[j] ^ ((t[j] ^ u[j]) & fm)
        ops += 1
    return ops


cdef long long _add_limbs(u64 *a, u64 *b, u64 *out, u64 *p, int n) noexcept nogil:
    cdef u64 t[MAX_LIMBS]
    cdef u64 u[MAX_LIMBS]
    cdef u128 s
    cdef u64 carry = 0, borrow = 0, sel, fm
    cdef int j
    for j in range(n):
        s = <u128>a[j] + b[j] + carry
        t[j] = <u64>s
        carry = <u64>(s >> 64)
    for j in range(n):
        s = <u128>t[j] - p[j] - borrow
        u[j] = <u64>s
        borrow = <u64>(s >> 64) & 1
    sel = carry | (borrow ^ 1)
    fm = 0 - sel
    for j in range(n):
        out[j] = t[j] ^ ((t[j] ^ u[j]) & fm)
    return 3 * n


cdef long long _sub_limbs(u64 *a, u64 *b, u64 *out, u64 *p, int n) noexcept nogil:
    cdef u64 t[MAX_LIMBS]
    cdef u128 s
    cdef u64 borrow = 0, carry = 0, fm
    cdef int j
    for j in range(n):
        s = <u128>a[j] - b[j] - borrow
        t[j] = <u64>s
        borrow = <u64>(s >> 64) & 1
    fm = 0 - borrow
    for j in range(n):
        s = <u128>t[j] + (p[j] & fm) + carry
        out[j] = <u64>s
        carry = <u64>(s >> 64)
    return 2 * n


cdef class CoreFp:
    """Compiled field context; drop-in for _fppure.PureFp at 64-bit words."""

    cdef u64 p_limbs[MAX_LIMBS]
    cdef u64 ei[MAX_LIMBS]
    cdef u64 n0
    cdef int n, ei_bits
    cdef readonly object p
    cdef readonly int word_bits, limb_count, nbits, nbytes
    cdef readonly FpElt zero, one
    cdef FpElt r2

    backend_name = "compiled"

    def __init__(self, p, word_bits=64):
        if p <= 3 or p % 2 == 0:
            raise ValueError("modulus must be an odd prime > 3")
        if word_bits != 64:
            raise ValueError("compiled backend is 64-bit only")
        self.p = p
        self.word_bits = 64
        self.nbits = p.bit_length()
        self.nbytes = (self.nbits + 7) // 8
        self.n = (self.nbits + 63) // 64
        if self.n > MAX_LIMBS:
            raise ValueError("modulus too large for this build")
        self.limb_count = self.n
        cdef int i
        cdef object x = p
        for i in range(self.n):
            self.p_limbs[i] = <u64>(x & 0xFFFFFFFFFFFFFFFF)
            x >>= 64
        self.n0 = <u64>((-pow(p, -1, 1 << 64)) & 0xFFFFFFFFFFFFFFFF)
        cdef object e = p - 2
        self.ei_bits = e.bit_length()
        for i in range(self.n):
            self.ei[i] = <u64>(e & 0xFFFFFFFFFFFFFFFF)
            e >>= 64
        self.zero = FpElt()
        # R^2 mod p; keep the shift in Python-object arithmetic, a C shift
        # by 64*n overflows silently
        r2int = pow(2, 128 * self.limb_count, self.p)
        self.r2 = self._from_int(r2int)
        self.one = self.enc(1)

    cdef FpElt _from_int(self, object x):
        cdef FpElt r = FpElt.__new__(FpElt)
        cdef int i
        for i in range(self.n):
            r.v[i] = <u64>(x & 0xFFFFFFFFFFFFFFFF)
            x >>= 64
        return r

    cdef object _to_int(self, FpElt a):
        cdef object x = 0
        cdef int i
        for i in range(self.n - 1, -1, -1):
            x = (x << 64) | a.v[i]
        return x

    def enc(self, x):
        global _c_limb
        if not 0 <= x < self.p:
            raise OutOfRange("value not a canonical residue mod p")
        cdef FpElt t = self._from_int(x)
        cdef FpElt r = FpElt.__new__(FpElt)
        cdef long long ops = _mul_limbs(t.v, self.r2.v, r.v, self.p_limbs, self.n0, self.n)
        if _counting:
            _c_limb += ops
        return r

    def dec(self, FpElt a):
        cdef FpElt one_plain = self._from_int(1)
        cdef FpElt r = FpElt.__new__(FpElt)
        _mul_limbs(a.v, one_plain.v, r.v, self.p_limbs, self.n0, self.n)
        return self._to_int(r)

    def decode(self, data):
        if len(data) != self.nbytes:
            raise BadLength(f"expected {self.nbytes} bytes, got {len(data)}")
        x = int.from_bytes(data, "big")
        if x >= self.p:
            raise OutOfRange("encoded value >= p")
        return self.enc(x)

    def encode(self, FpElt a):
        return self.dec(a).to_bytes(self.nbytes, "big")

    def add(self, FpElt a, FpElt b):
        global _c_add, _c_limb
        cdef FpElt r = FpElt.__new__(FpElt)
        cdef long long ops = _add_limbs(a.v, b.v, r.v, self.p_limbs, self.n)
        if _counting:
            _c_add += 1
            _c_limb += ops
        return r

    def sub(self, FpElt a, FpElt b):
        global _c_sub, _c_limb
        cdef FpElt r = FpElt.__new__(FpElt)
        cdef long long ops = _sub_limbs(a.v, b.v, r.v, self.p_limbs, self.n)
        if _counting:
            _c_sub += 1
            _c_limb += ops
        return r

    def neg(self, FpElt a):
        global _c_sub, _c_limb
        cdef FpElt r = FpElt.__new__(FpElt)
        cdef long long ops = _sub_limbs(self.zero.v, a.v, r.v, self.p_limbs, self.n)
        if _counting:
            _c_sub += 1
            _c_limb += ops
        return r

    def mul(self, FpElt a, FpElt b):
        global _c_mul, _c_limb
        cdef FpElt r = FpElt.__new__(FpElt)
        cdef long long ops = _mul_limbs(a.v, b.v, r.v, self.p_limbs, self.n0, self.n)
        if _counting:
            _c_mul += 1
            _c_limb += ops
        return r

    def sqr(self, FpElt a):
        global _c_sqr, _c_limb
        cdef FpElt r = FpElt.__new__(FpElt)
        cdef long long ops = _mul_limbs(a.v, a.v, r.v, self.p_limbs, self.n0, self.n)
        if _counting:
            _c_sqr += 1
            _c_limb += ops
        return r

    def select(self, flag, FpElt a, FpElt b):
        global _c_sel, _c_limb
        cdef u64 fm = 0 - (<u64>flag & 1)
        cdef FpElt r = FpElt.__new__(FpElt)
        cdef int j
        for j in range(self.n):
            r.v[j] = b.v[j] ^ ((a.v[j] ^ b.v[j]) & fm)
        if _counting:
            _c_sel += 1
            _c_limb += self.n
        return r

    def is_zero(self, FpElt a):
        cdef u64 acc = 0
        cdef int j
        for j in range(self.n):
            acc |= a.v[j]
        # fold the OR to a single bit without comparisons
        acc = acc | (0 - acc)
        return 1 ^ <int>(acc >> 63)

    def eq(self, FpElt a, FpElt b):
        cdef u64 acc = 0
        cdef int j
        for j in range(self.n):
            acc |= a.v[j] ^ b.v[j]
        acc = acc | (0 - acc)
        return 1 ^ <int>(acc >> 63)

    def inv(self, FpElt a):
        global _c_inv, _c_mul, _c_limb
        if self.is_zero(a):
            raise ZeroInverse("inverse of zero")
        cdef FpElt acc = FpElt.__new__(FpElt)
        memcpy(acc.v, self.one.v, sizeof(acc.v))
        cdef int i
        cdef long long ops = 0, muls = 0
        cdef u64 bit
        for i in range(self.ei_bits - 1, -1, -1):
            ops += _mul_limbs(acc.v, acc.v, acc.v, self.p_limbs, self.n0, self.n)
            muls += 1
            bit = (self.ei[i >> 6] >> (i & 63)) & 1
            if bit:  # exponent p-2 is public
                ops += _mul_limbs(acc.v, a.v, acc.v, self.p_limbs, self.n0, self.n)
                muls += 1
        if _counting:
            _c_inv += 1
            _c_mul += muls
            _c_limb += ops
        return acc

    def limbs(self, FpElt a):
        """Raw limb view (testing/debugging only)."""
        return tuple(a.v[i] for i in range(self.n))

    def from_limbs(self, vals):
        """Build an element from raw limbs (testing/debugging only)."""
        cdef FpElt r = FpElt.__new__(FpElt)
        cdef int i
        for i in range(self.n):
            r.v[i] = <u64>vals[i]
        return r

    def lookup_pair(self, xs, ys, idx):
        """Linear-scan fetch of (xs[idx], ys[idx]): touches every entry."""
        global _c_limb
        cdef FpElt rx = FpElt.__new__(FpElt)
        cdef FpElt ry = FpElt.__new__(FpElt)
        cdef FpElt ex, ey
        cdef u64 fm, d
        cdef int i, j, count = len(xs)
        cdef u64 target = <u64>idx
        for i in range(count):
            d = (<u64>i) ^ target
            d = d | (0 - d)
            fm = 0 - (1 ^ (d >> 63))
            ex = <FpElt>xs[i]
            ey = <FpElt>ys[i]
            for j in range(self.n):
                rx.v[j] |= ex.v[j] & fm
                ry.v[j] |= ey.v[j] & fm
        if _counting:
            _c_limb += 2 * self.n * count
        return rx, ry
