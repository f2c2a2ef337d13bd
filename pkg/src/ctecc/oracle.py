"""Slow reference arithmetic used as ground truth by tests and the KAT
generator.

Everything here runs on arbitrary-precision ints with textbook affine
formulas and explicit branches — deliberately the opposite style of the
constant-time stack, and deliberately not sharing a single line of field
code with it.  Mismatches between the two are the defect signal the test
suite is built around, so keep this module independent of fp/wpoint/
tepoint.

Weierstrass identity convention: AffinePoint(0, 0).  Twisted Edwards
affine identity: (0, 1).
"""

import random

from .affine import IDENTITY, AffinePoint
from .errors import InvalidPoint, NotFound, Unsupported


def on_curve(P, p, a, b):
    if P.is_identity:
        return True
    return (P.y * P.y - (P.x * P.x * P.x + a * P.x + b)) % p == 0


def oracle_add(P, Q, p, a, b=None):
    """Chord-tangent addition. b only matters for the optional on-curve use."""
    if P.is_identity:
        return Q
    if Q.is_identity:
        return P
    if P.x == Q.x:
        if (P.y + Q.y) % p == 0:
            return IDENTITY
        lam = (3 * P.x * P.x + a) * pow(2 * P.y, -1, p) % p
    else:
        lam = (Q.y - P.y) * pow(Q.x - P.x, -1, p) % p
    x3 = (lam * lam - P.x - Q.x) % p
    y3 = (lam * (P.x - x3) - P.y) % p
    return AffinePoint(x3, y3)


def oracle_neg(P, p):
    if P.is_identity:
        return P
    return AffinePoint(P.x, (-P.y) % p)


def oracle_mul(k, P, p, a, b=None):
    """Double-and-add; k any non-negative integer."""
    if k < 0:
        raise ValueError("negative scalar")
    R = IDENTITY
    acc = P
    while k:
        if k & 1:
            R = oracle_add(R, acc, p, a)
        acc = oracle_add(acc, acc, p, a)
        k >>= 1
    return R


# -- twisted Edwards reference (affine (u, v), identity (0, 1)) ------------

def te_on_curve(u, v, p, e, d):
    return (e * u * u + v * v - 1 - d * u * u * v * v) % p == 0


def te_add(P1, P2, p, e, d):
    u1, v1 = P1
    u2, v2 = P2
    den = d * u1 * u2 * v1 * v2 % p
    u3 = (u1 * v2 + v1 * u2) * pow(1 + den, -1, p) % p
    v3 = (v1 * v2 - e * u1 * u2) * pow(1 - den, -1, p) % p
    return (u3, v3)


def te_mul(k, P, p, e, d):
    R = (0, 1)
    acc = P
    while k:
        if k & 1:
            R = te_add(R, acc, p, e, d)
        acc = te_add(acc, acc, p, e, d)
        k >>= 1
    return R


# -- map evaluation on ints (test-side mirror of the projective maps) ------

def map_w_to_te_int(P, p, s, t):
    if P.is_identity:
        return (0, 1)
    xt = (P.x - t) % p
    u = xt * pow(P.y, -1, p) % p
    v = (xt - s) * pow(xt + s, -1, p) % p
    return (u, v)


def map_te_to_w_int(T, p, s, t):
    u, v = T
    if u == 0 and v % p == 1:
        return IDENTITY
    x = (s * (1 + v) * pow(1 - v, -1, p) + t) % p
    y = s * (1 + v) * pow((1 - v) * u, -1, p) % p
    return AffinePoint(x, y)


# -- group-structure helpers ------------------------------------------------

def sqrt_mod(n, p):
    """Tonelli-Shanks; returns a root or None when n is a non-residue."""
    n %= p
    if n == 0:
        return 0
    if pow(n, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(n, (p + 1) // 4, p)
    # write p-1 = o * 2^r with o odd
    o, r = p - 1, 0
    while o % 2 == 0:
        o //= 2
        r += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    c = pow(z, o, p)
    x = pow(n, (o + 1) // 2, p)
    b = pow(n, o, p)
    m = r
    while b != 1:
        i, t2 = 0, b
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        g = pow(c, 1 << (m - i - 1), p)
        x = x * g % p
        c = g * g % p
        b = b * c % p
        m = i
    return x


def find_small_subgroup_point(desc, max_attempts=64):
    """Point of order dividing h (and != identity) for an h != 1 curve.

    Scalar-multiplies stored full-order generators by q.  Square-root
    point sampling is out of scope for the core, so the curve database
    carries a test-only full-order generator; random multiples of it give
    the attempt variety.
    """
    if desc.h == 1:
        raise Unsupported(f"{desc.name}: no small subgroup (h = 1)")
    base = desc.test_fullgen
    if base is None:
        raise NotFound(f"{desc.name}: no stored full-order generator")
    if not on_curve(base, desc.p, desc.a, desc.b):
        raise InvalidPoint(f"{desc.name}: stored full-order generator off-curve")
    rng = random.Random(0xEC)
    cand = base
    for _ in range(max_attempts):
        S = oracle_mul(desc.q, cand, desc.p, desc.a)
        if not S.is_identity:
            return S
        cand = oracle_mul(rng.randrange(1, desc.q), base, desc.p, desc.a)
    raise NotFound(f"{desc.name}: no small-subgroup point in {max_attempts} attempts")
