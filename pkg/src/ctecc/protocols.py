"""Key generation, ECDH, two signature schemes, and the VKO key derivation.

Public keys and signatures travel as fixed-width big-endian byte strings:
points as 0x04 || X || Y (a single 0x00 byte for the identity), signatures
as r || s.  Hashing defaults to SHA-256 for group orders up to 256 bits
and SHA-512 above that; any hashlib algorithm name can be passed instead.

The first signature scheme hashes the message itself; the second takes an
externally computed digest, because its standard pairs it with a hash
family this package deliberately does not ship.  Deterministic nonces
follow the HMAC-DRBG construction of RFC 6979 and are the default; a
caller-supplied RNG or an injected nonce (test vectors) override it.

Scalar multiplications on secret data run inside the instrumentation
secret scope, so a variable-time path sneaking into them trips an
assertion during tests rather than shipping quietly.
"""

import hashlib
import hmac
import os
from dataclasses import dataclass

from . import instrumentation as _ins
from . import scalarmul, wpoint
from .affine import IDENTITY, AffinePoint
from .errors import (BadLength, InvalidPoint, OutOfRange, RngFailure,
                     SmallSubgroupResult, ZeroRS)

NONCE_ATTEMPTS = 64


# -- randomness --------------------------------------------------------------

class SystemRng:
    """Operating-system randomness."""

    def read(self, n):
        return os.urandom(n)


class DetRng:
    """Deterministic byte stream for reproducible key material in tests
    and the KAT generator: SHA-256 over seed || counter."""

    def __init__(self, seed):
        if isinstance(seed, int):
            seed = seed.to_bytes((seed.bit_length() + 7) // 8 or 1, "big")
        self._seed = bytes(seed)
        self._ctr = 0
        self._buf = b""

    def read(self, n):
        while len(self._buf) < n:
            block = hashlib.sha256(
                self._seed + self._ctr.to_bytes(8, "big")).digest()
            self._ctr += 1
            self._buf += block
        out, self._buf = self._buf[:n], self._buf[n:]
        return out


# -- containers ---------------------------------------------------------------

@dataclass(frozen=True)
class KeyPair:
    sk: int
    pk: AffinePoint


@dataclass(frozen=True)
class Signature:
    r: int
    s: int


def default_hash(curve):
    return "sha256" if curve.qbits <= 256 else "sha512"


def _digest(msg, hash_name):
    return hashlib.new(hash_name, msg).digest()


# -- wire formats --------------------------------------------------------------

def point_encode(curve, P):
    if P.is_identity:
        return b"\x00"
    n = curve.fp.nbytes
    return b"\x04" + P.x.to_bytes(n, "big") + P.y.to_bytes(n, "big")


def point_decode(curve, data):
    """Bytes -> on-curve affine point; raises BadLength / InvalidPoint."""
    if not isinstance(data, (bytes, bytearray)):
        raise InvalidPoint("point encoding must be bytes")
    data = bytes(data)
    if data == b"\x00":
        return IDENTITY
    n = curve.fp.nbytes
    if len(data) != 1 + 2 * n:
        raise BadLength(f"point encoding must be {1 + 2 * n} bytes")
    if data[0] != 0x04:
        raise InvalidPoint(f"unknown point format byte {data[0]:#04x}")
    x = int.from_bytes(data[1:1 + n], "big")
    y = int.from_bytes(data[1 + n:], "big")
    P = AffinePoint(x, y)
    if P.is_identity:
        raise InvalidPoint("uncompressed encoding of the identity")
    wpoint.check_affine(curve, P)
    return P


def sig_encode(curve, sig):
    n = curve.scalar.qbytes
    return sig.r.to_bytes(n, "big") + sig.s.to_bytes(n, "big")


def sig_decode(curve, data):
    n = curve.scalar.qbytes
    if len(data) != 2 * n:
        raise BadLength(f"signature must be {2 * n} bytes")
    return Signature(int.from_bytes(data[:n], "big"),
                     int.from_bytes(data[n:], "big"))


# -- deterministic nonces (HMAC-DRBG chain) -------------------------------------

def _bits2int(curve, data):
    v = int.from_bytes(data, "big")
    extra = 8 * len(data) - curve.qbits
    if extra > 0:
        v >>= extra
    return v


def _int2octets(curve, x):
    return x.to_bytes(curve.scalar.qbytes, "big")


def _bits2octets(curve, data):
    return _int2octets(curve, _bits2int(curve, data) % curve.q)


def _nonce_stream(curve, sk, h1, hash_name):
    """Yields candidate nonces; the chain advances between candidates."""
    mac = lambda key, data: hmac.new(key, data, hash_name).digest()
    hlen = hashlib.new(hash_name).digest_size
    V = b"\x01" * hlen
    K = b"\x00" * hlen
    seed = _int2octets(curve, sk) + _bits2octets(curve, h1)
    K = mac(K, V + b"\x00" + seed)
    V = mac(K, V)
    K = mac(K, V + b"\x01" + seed)
    V = mac(K, V)
    need = (curve.qbits + 7) // 8
    while True:
        T = b""
        while len(T) < need:
            V = mac(K, V)
            T += V
        yield _bits2int(curve, T)
        K = mac(K, V + b"\x00")
        V = mac(K, V)


def _rng_candidates(curve, rng):
    n = curve.scalar.qbytes
    while True:
        yield _bits2int(curve, rng.read(n))


def _nonces(curve, sk, h1, hash_name, k, rng):
    """Iterator of nonce candidates for the chosen mode.

    Injected k yields exactly once, so a degenerate signature surfaces as
    ZeroRS instead of silently resampling a test vector.
    """
    if k is not None:
        if not 1 <= k < curve.q:
            raise OutOfRange("injected nonce outside [1, q)")
        return iter((k,))
    if rng is not None:
        return _rng_candidates(curve, rng)
    return _nonce_stream(curve, sk, h1, hash_name)


# -- key generation -------------------------------------------------------------

def keygen(curve, rng=None):
    """Uniform secret in [1, q) by rejection, public key off the comb."""
    rng = rng or SystemRng()
    n = curve.scalar.qbytes
    for _ in range(NONCE_ATTEMPTS):
        sk = _bits2int(curve, rng.read(n))
        if 1 <= sk < curve.q:
            with _ins.secret_scope():
                pk = scalarmul.mul_fixedbase(curve, sk)
            return KeyPair(sk, pk)
    raise RngFailure(f"no key candidate in range after {NONCE_ATTEMPTS} draws")


def validate_pubkey_full(curve, P):
    """Range, curve membership, non-identity, and [q]P == identity.

    The order check runs through the wide constant-time entry, the same
    code path protocol work uses, not the test oracle.
    """
    if P.is_identity:
        raise InvalidPoint("identity is not a valid public key")
    wpoint.check_affine(curve, P)
    if not scalarmul.mul_wide(curve, P, curve.q).is_identity:
        raise InvalidPoint("point is not in the prime-order subgroup")


# -- Diffie-Hellman ---------------------------------------------------------------

def ecdh_derive(curve, sk, peer):
    """Cofactored shared secret: x-coordinate of [h*sk]peer.

    peer may be an encoded point or an affine one; it is validated for
    curve membership, and a derivation collapsing into the small subgroup
    raises SmallSubgroupResult instead of returning a low-entropy secret.
    """
    if not 1 <= sk < curve.q:
        raise OutOfRange("secret key outside [1, q)")
    if isinstance(peer, (bytes, bytearray)):
        peer = point_decode(curve, peer)
    else:
        wpoint.check_affine(curve, peer)
    m = scalarmul.clear_cofactor_scalar(sk, curve.h)
    with _ins.secret_scope():
        S = scalarmul.mul_wide(curve, peer, m)
    if S.is_identity:
        raise SmallSubgroupResult("peer point is in the small subgroup")
    return S.x.to_bytes(curve.fp.nbytes, "big")


def vko_derive(curve, sk, peer, ukm, kdf_hash=None):
    """UKM-salted cofactored derivation: hash of [h * (ukm*sk mod q)]peer.

    The cofactor multiplies the reduced product, never folding into the
    mod-q arithmetic, so a small-subgroup peer still collapses to the
    identity and is rejected.  The KDF hashes X || Y of the shared point.
    """
    if not 1 <= sk < curve.q:
        raise OutOfRange("secret key outside [1, q)")
    if ukm < 1:
        raise OutOfRange("ukm must be a positive integer")
    if isinstance(peer, (bytes, bytearray)):
        peer = point_decode(curve, peer)
    else:
        wpoint.check_affine(curve, peer)
    w = curve.scalar.mul(ukm % curve.q, sk)
    m = scalarmul.clear_cofactor_scalar(w, curve.h)
    with _ins.secret_scope():
        S = scalarmul.mul_wide(curve, peer, m)
    if S.is_identity:
        raise SmallSubgroupResult("peer point is in the small subgroup")
    n = curve.fp.nbytes
    material = S.x.to_bytes(n, "big") + S.y.to_bytes(n, "big")
    return _digest(material, kdf_hash or default_hash(curve))


# -- signatures --------------------------------------------------------------------

def _sign_loop(curve, candidates, compute_rs):
    """Shared resampling shell: skip out-of-range nonces and zero r/s."""
    attempts = 0
    for kc in candidates:
        attempts += 1
        if attempts > NONCE_ATTEMPTS:
            break
        if not 1 <= kc < curve.q:
            continue
        r, s = compute_rs(kc)
        if r == 0 or s == 0:
            continue
        return Signature(r, s)
    raise RngFailure(f"no usable nonce after {NONCE_ATTEMPTS} attempts")


def ecdsa_sign(curve, sk, msg, hash_name=None, k=None, rng=None):
    """Hash-and-sign; r = x([k]g) mod q, s = (z + r*sk)/k mod q.

    Nonce source: injected k > caller rng > deterministic chain.  With an
    injected nonce a zero r or s raises ZeroRS.
    """
    if not 1 <= sk < curve.q:
        raise OutOfRange("secret key outside [1, q)")
    hash_name = hash_name or default_hash(curve)
    h1 = _digest(msg, hash_name)
    z = _bits2int(curve, h1) % curve.q
    sc = curve.scalar

    def compute(kc):
        with _ins.secret_scope():
            R = scalarmul.mul_fixedbase(curve, kc)
        r = R.x % curve.q
        s = sc.mul(sc.inv(kc), sc.add(z, sc.mul(r, sk)))
        return r, s

    if k is not None:
        kc = next(_nonces(curve, sk, h1, hash_name, k, None))
        r, s = compute(kc)
        if r == 0 or s == 0:
            raise ZeroRS("injected nonce produces a degenerate signature")
        return Signature(r, s)
    return _sign_loop(curve, _nonces(curve, sk, h1, hash_name, None, rng),
                      compute)


def ecdsa_verify(curve, pk, msg, sig, hash_name=None):
    """Total verification: returns False on any defect, never raises."""
    try:
        if isinstance(sig, (bytes, bytearray)):
            sig = sig_decode(curve, sig)
        if isinstance(pk, (bytes, bytearray)):
            pk = point_decode(curve, pk)
        else:
            wpoint.check_affine(curve, pk)
        if pk.is_identity:
            return False
        r, s = sig.r, sig.s
        if not (1 <= r < curve.q and 1 <= s < curve.q):
            return False
        hash_name = hash_name or default_hash(curve)
        z = _bits2int(curve, _digest(msg, hash_name)) % curve.q
        sc = curve.scalar
        w = sc.inv(s)
        R = scalarmul.mul_double(curve, sc.mul(z, w), pk, sc.mul(r, w))
        if R.is_identity:
            return False
        return R.x % curve.q == r
    except Exception:
        return False


def gost_sign(curve, sk, digest, k=None, rng=None):
    """Digest-based scheme: r = x([k]g) mod q, s = (r*sk + k*e) mod q,
    with e = digest mod q forced to 1 when zero.  The digest is supplied
    by the caller (its standard hash family is not bundled here)."""
    if not 1 <= sk < curve.q:
        raise OutOfRange("secret key outside [1, q)")
    e = curve.scalar.mod_wide(digest, mode="gost")
    sc = curve.scalar

    def compute(kc):
        with _ins.secret_scope():
            R = scalarmul.mul_fixedbase(curve, kc)
        r = R.x % curve.q
        s = sc.add(sc.mul(r, sk), sc.mul(kc, e))
        return r, s

    if k is not None:
        kc = next(_nonces(curve, sk, digest, "sha256", k, None))
        r, s = compute(kc)
        if r == 0 or s == 0:
            raise ZeroRS("injected nonce produces a degenerate signature")
        return Signature(r, s)
    hash_name = "sha256" if curve.qbits <= 256 else "sha512"
    return _sign_loop(curve, _nonces(curve, sk, digest, hash_name, None, rng),
                      compute)


def gost_verify(curve, pk, digest, sig):
    """Total verification: R = [s/e]g + [-r/e]pk must have x == r mod q."""
    try:
        if isinstance(sig, (bytes, bytearray)):
            sig = sig_decode(curve, sig)
        if isinstance(pk, (bytes, bytearray)):
            pk = point_decode(curve, pk)
        else:
            wpoint.check_affine(curve, pk)
        if pk.is_identity:
            return False
        r, s = sig.r, sig.s
        if not (1 <= r < curve.q and 1 <= s < curve.q):
            return False
        sc = curve.scalar
        e = sc.mod_wide(digest, mode="gost")
        v = sc.inv(e)
        z1 = sc.mul(s, v)
        z2 = (curve.q - sc.mul(r, v)) % curve.q
        R = scalarmul.mul_double(curve, z1, pk, z2)
        if R.is_identity:
            return False
        return R.x % curve.q == r
    except Exception:
        return False
