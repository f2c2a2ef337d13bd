"""Complete projective arithmetic on short Weierstrass curves.

Points are (X, Y, Z) triples of field handles satisfying
Y^2 Z = X^3 + a X Z^2 + b Z^3, identity (0:1:0).  The addition law is the
complete one: a single operation sequence valid for every input pair,
including P = Q, P = -Q, and the identity, with no value branches.  The
multiplications by the curve constant a are specialized per coefficient
class (general residue / a = -3 as an addition chain / a = 0 dropped),
which is the only difference between the three dispatch variants.

The affine convention (0, 0) = identity never appears inside the
projective formulas; mixed addition absorbs it with a constant-time
conditional copy, and normalization produces it from Z = 0.
"""

from . import instrumentation as _ins
from .affine import AffinePoint
from .errors import InvalidPoint


def identity(cv):
    F = cv.fp
    return (F.zero, F.one, F.zero)


def lift(cv, A):
    """Affine ints -> projective handles. (0,0) lifts to (0:1:0)."""
    F = cv.fp
    if A.is_identity:
        return identity(cv)
    return (F.enc(A.x), F.enc(A.y), F.one)


def entry_from_affine(cv, A):
    """Affine ints -> mixed-addition table entry (pair of handles)."""
    F = cv.fp
    return (F.enc(A.x), F.enc(A.y))


def _a_mul(cv, x):
    """a*x specialized per coefficient class."""
    F = cv.fp
    cls = cv.cclass
    if cls == "a_minus3":
        return F.neg(F.add(F.add(x, x), x))
    if cls == "a_zero":
        return F.zero
    return F.mul(cv.a_m, x)


def add(cv, P, Q):
    """Complete addition, correct for all pairs."""
    F = cv.fp
    X1, Y1, Z1 = P
    X2, Y2, Z2 = Q
    t0 = F.mul(X1, X2)
    t1 = F.mul(Y1, Y2)
    t2 = F.mul(Z1, Z2)
    t3 = F.sub(F.sub(F.mul(F.add(X1, Y1), F.add(X2, Y2)), t0), t1)
    t4 = F.sub(F.sub(F.mul(F.add(X1, Z1), F.add(X2, Z2)), t0), t2)
    t5 = F.sub(F.sub(F.mul(F.add(Y1, Z1), F.add(Y2, Z2)), t1), t2)
    out = _tail(cv, t0, t1, t2, t3, t4, t5)
    if _ins.enabled:
        _ins.counters.point_add += 1
    return out


def add_mixed(cv, P, QA):
    """P + lift(QA) for an affine entry QA = (x, y) in Montgomery form.

    Handles QA = (0, 0) by a constant-time conditional copy of P; the
    identity flag is derived inside, so callers may pass secret-selected
    entries.
    """
    F = cv.fp
    X1, Y1, Z1 = P
    x2, y2 = QA
    t0 = F.mul(X1, x2)
    t1 = F.mul(Y1, y2)
    t2 = Z1
    t3 = F.sub(F.sub(F.mul(F.add(X1, Y1), F.add(x2, y2)), t0), t1)
    t4 = F.add(X1, F.mul(Z1, x2))
    t5 = F.add(Y1, F.mul(Z1, y2))
    X3, Y3, Z3 = _tail(cv, t0, t1, t2, t3, t4, t5)
    idq = F.is_zero(x2) & F.is_zero(y2)
    out = (F.select(idq, X1, X3), F.select(idq, Y1, Y3), F.select(idq, Z1, Z3))
    if _ins.enabled:
        _ins.counters.point_add += 1
    return out


def dbl(cv, P):
    """Doubling: the addition sequence specialized to Q = P (squarings)."""
    F = cv.fp
    X1, Y1, Z1 = P
    t0 = F.sqr(X1)
    t1 = F.sqr(Y1)
    t2 = F.sqr(Z1)
    t3 = F.sub(F.sub(F.sqr(F.add(X1, Y1)), t0), t1)
    t4 = F.sub(F.sub(F.sqr(F.add(X1, Z1)), t0), t2)
    t5 = F.sub(F.sub(F.sqr(F.add(Y1, Z1)), t1), t2)
    out = _tail(cv, t0, t1, t2, t3, t4, t5)
    if _ins.enabled:
        _ins.counters.point_dbl += 1
    return out


def _tail(cv, t0, t1, t2, t3, t4, t5):
    # shared second half of the complete law; inputs are the six symmetric
    # products (X1X2, Y1Y2, Z1Z2, cross sums)
    F = cv.fp
    Z3 = F.add(_a_mul(cv, t4), F.mul(cv.b3_m, t2))
    X3 = F.sub(t1, Z3)
    Z3 = F.add(t1, Z3)
    Y3 = F.mul(X3, Z3)
    t1 = F.add(F.add(t0, t0), t0)
    t2 = _a_mul(cv, t2)
    t4 = F.mul(cv.b3_m, t4)
    t1 = F.add(t1, t2)
    t2 = F.sub(t0, t2)
    t2 = _a_mul(cv, t2)
    t4 = F.add(t4, t2)
    t0 = F.mul(t1, t4)
    Y3 = F.add(Y3, t0)
    t0 = F.mul(t5, t4)
    X3 = F.mul(t3, X3)
    X3 = F.sub(X3, t0)
    t0 = F.mul(t3, t1)
    Z3 = F.mul(t5, Z3)
    Z3 = F.add(Z3, t0)
    return (X3, Y3, Z3)


def neg(cv, P):
    X, Y, Z = P
    return (X, cv.fp.neg(Y), Z)


def normalize(cv, P):
    """Projective -> affine ints; identity -> (0, 0). No value branches."""
    F = cv.fp
    X, Y, Z = P
    zflag = F.is_zero(Z)
    zinv = F.inv(F.select(zflag, F.one, Z))
    x = F.select(zflag, F.zero, F.mul(X, zinv))
    y = F.select(zflag, F.zero, F.mul(Y, zinv))
    return AffinePoint(F.dec(x), F.dec(y))


def on_curve_proj(cv, P):
    """Y^2 Z == X^3 + a X Z^2 + b Z^3 (variable-time; test/validation use)."""
    F = cv.fp
    X, Y, Z = P
    lhs = F.mul(F.sqr(Y), Z)
    rhs = F.add(F.mul(F.sqr(X), X),
                F.mul(F.sqr(Z), F.add(_a_mul(cv, X), F.mul(cv.b_m, Z))))
    return bool(F.eq(lhs, rhs))


def eq_proj(cv, P, Q):
    """Projective equality across scalings (variable-time)."""
    F = cv.fp
    X1, Y1, Z1 = P
    X2, Y2, Z2 = Q
    return bool(F.eq(F.mul(X1, Z2), F.mul(X2, Z1)) &
                F.eq(F.mul(Y1, Z2), F.mul(Y2, Z1)))


def check_affine(cv, A):
    """Validate an affine int point (identity allowed); raises InvalidPoint."""
    p = cv.p
    if A.is_identity:
        return
    if not (0 <= A.x < p and 0 <= A.y < p):
        raise InvalidPoint("coordinate outside [0, p)")
    if (A.y * A.y - (A.x ** 3 + cv.desc.a * A.x + cv.desc.b)) % p != 0:
        raise InvalidPoint("point not on curve")


def table_lookup(cv, xs, ys, idx, neg_flag):
    """Constant-time fetch of entry idx with optional negation.

    Linear pass over the whole table; the y coordinate is conditionally
    negated without branching.
    """
    F = cv.fp
    x, y = F.lookup_pair(xs, ys, idx)
    y = F.select(neg_flag, F.neg(y), y)
    if _ins.enabled:
        _ins.counters.table_touch += len(xs)
    return (x, y)


def batch_normalize(cv, pts):
    """Projective points (all Z != 0) -> affine Montgomery entry pairs.

    One shared inversion; fixed sequence, no per-point branches.
    """
    F = cv.fp
    zs = [P[2] for P in pts]
    prefix = [zs[0]]
    for z in zs[1:]:
        prefix.append(F.mul(prefix[-1], z))
    inv_total = F.inv(prefix[-1])
    entries = [None] * len(pts)
    for i in range(len(pts) - 1, -1, -1):
        zinv = F.mul(inv_total, prefix[i - 1]) if i > 0 else inv_total
        inv_total = F.mul(inv_total, zs[i])
        X, Y, _ = pts[i]
        entries[i] = (F.mul(X, zinv), F.mul(Y, zinv))
    return entries
