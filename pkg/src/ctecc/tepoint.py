"""Extended-coordinate arithmetic on twisted Edwards curves.

Points are (X, Y, T, Z) handle quadruples with u = X/Z, v = Y/Z and the
auxiliary T = X*Y/Z; identity (0:1:0:1).  The unified addition is complete
whenever the quadratic coefficient is a square and the quartic one is not,
which curve validation guarantees for every Edwards-capable curve in the
database, so Z stays nonzero through any sequence of operations on valid
points.

Two addition sequences are used: the generic one, and the faster variant
available when the quadratic coefficient is -1.  Both are complete under
the same precondition.  The birational maps to and from the Weierstrass
model live here too; their only exceptional images are the 2-torsion
points, which callers detect through the returned flags.
"""

from . import instrumentation as _ins
from .errors import ExceptionalPoint


def identity(cv):
    F = cv.fp
    return (F.zero, F.one, F.zero, F.one)


def lift(cv, u, v):
    """Affine ints -> extended handles."""
    F = cv.fp
    um, vm = F.enc(u), F.enc(v)
    return (um, vm, F.mul(um, vm), F.one)


def entry_from_ints(cv, u, v):
    F = cv.fp
    return (F.enc(u), F.enc(v))


def _e_mul(cv, x):
    """Quadratic-coefficient multiple, folded for 1 and -1."""
    F = cv.fp
    if cv.e_is_one:
        return x
    if cv.e_is_minus1:
        return F.neg(x)
    return F.mul(cv.e_m, x)


def add(cv, P, Q):
    F = cv.fp
    X1, Y1, T1, Z1 = P
    X2, Y2, T2, Z2 = Q
    if cv.e_is_minus1:
        A = F.mul(F.sub(Y1, X1), F.sub(Y2, X2))
        B = F.mul(F.add(Y1, X1), F.add(Y2, X2))
        C = F.mul(cv.d2_m, F.mul(T1, T2))
        D = F.mul(Z1, Z2)
        D = F.add(D, D)
        E = F.sub(B, A)
        H = F.add(B, A)
    else:
        A = F.mul(X1, X2)
        B = F.mul(Y1, Y2)
        C = F.mul(cv.d_m, F.mul(T1, T2))
        D = F.mul(Z1, Z2)
        E = F.sub(F.sub(F.mul(F.add(X1, Y1), F.add(X2, Y2)), A), B)
        H = F.sub(B, _e_mul(cv, A))
    out = _finish(F, E, F.sub(D, C), F.add(D, C), H)
    if _ins.enabled:
        _ins.counters.point_add += 1
    return out


def add_mixed(cv, P, QA):
    """P + (u2, v2) with Z2 = 1; the T coordinate of the entry is computed
    on the fly so tables only store two coordinates per point."""
    F = cv.fp
    X1, Y1, T1, Z1 = P
    u2, v2 = QA
    t2 = F.mul(u2, v2)
    if cv.e_is_minus1:
        A = F.mul(F.sub(Y1, X1), F.sub(v2, u2))
        B = F.mul(F.add(Y1, X1), F.add(v2, u2))
        C = F.mul(cv.d2_m, F.mul(T1, t2))
        D = F.add(Z1, Z1)
        E = F.sub(B, A)
        H = F.add(B, A)
    else:
        A = F.mul(X1, u2)
        B = F.mul(Y1, v2)
        C = F.mul(cv.d_m, F.mul(T1, t2))
        D = Z1
        E = F.sub(F.sub(F.mul(F.add(X1, Y1), F.add(u2, v2)), A), B)
        H = F.sub(B, _e_mul(cv, A))
    out = _finish(F, E, F.sub(D, C), F.add(D, C), H)
    if _ins.enabled:
        _ins.counters.point_add += 1
    return out


def dbl(cv, P):
    F = cv.fp
    X1, Y1, _, Z1 = P
    A = F.sqr(X1)
    B = F.sqr(Y1)
    C = F.sqr(Z1)
    C = F.add(C, C)
    D = _e_mul(cv, A)
    E = F.sub(F.sub(F.sqr(F.add(X1, Y1)), A), B)
    G = F.add(D, B)
    out = _finish(F, E, F.sub(G, C), G, F.sub(D, B))
    if _ins.enabled:
        _ins.counters.point_dbl += 1
    return out


def _finish(F, E, Fv, G, H):
    return (F.mul(E, Fv), F.mul(G, H), F.mul(E, H), F.mul(Fv, G))


def neg(cv, P):
    F = cv.fp
    X, Y, T, Z = P
    return (F.neg(X), Y, F.neg(T), Z)


def normalize(cv, P):
    """Extended -> affine ints.  Valid points always have Z != 0."""
    F = cv.fp
    X, Y, _, Z = P
    zinv = F.inv(Z)
    return (F.dec(F.mul(X, zinv)), F.dec(F.mul(Y, zinv)))


def on_curve_ext(cv, P):
    """Curve equation and T consistency (variable-time; test use)."""
    F = cv.fp
    X, Y, T, Z = P
    x2, y2, z2 = F.sqr(X), F.sqr(Y), F.sqr(Z)
    lhs = F.mul(F.add(_e_mul(cv, x2), y2), z2)
    rhs = F.add(F.sqr(z2), F.mul(cv.d_m, F.mul(x2, y2)))
    return bool(F.eq(lhs, rhs) & F.eq(F.mul(T, Z), F.mul(X, Y)))


def table_lookup(cv, us, vs, idx, neg_flag):
    """Constant-time fetch with optional negation (u flips sign)."""
    F = cv.fp
    u, v = F.lookup_pair(us, vs, idx)
    u = F.select(neg_flag, F.neg(u), u)
    if _ins.enabled:
        _ins.counters.table_touch += len(us)
    return (u, v)


def batch_normalize(cv, pts):
    """Extended points -> (u, v) entry pairs via one shared inversion."""
    F = cv.fp
    zs = [P[3] for P in pts]
    prefix = [zs[0]]
    for z in zs[1:]:
        prefix.append(F.mul(prefix[-1], z))
    inv_total = F.inv(prefix[-1])
    entries = [None] * len(pts)
    for i in range(len(pts) - 1, -1, -1):
        zinv = F.mul(inv_total, prefix[i - 1]) if i > 0 else inv_total
        inv_total = F.mul(inv_total, zs[i])
        X, Y, _, _ = pts[i]
        entries[i] = (F.mul(X, zinv), F.mul(Y, zinv))
    return entries


# -- model change -----------------------------------------------------------
#
# With shift t and scale s, the rational maps are
#     u = (x - t)/y                v = (x - t - s)/(x - t + s)
#     x = s(1 + v)/(1 - v) + t     y = s(1 + v)/((1 - v) u)
# Undefined exactly on the 2-torsion: Weierstrass points with y = 0 going
# forward, the Edwards point (0, -1) going back.  The identity crosses
# cleanly in both directions.

def map_w_to_te_checked(cv, Pw):
    """Weierstrass projective -> extended, plus an exception flag.

    Returns (point, bad) where bad = 1 means Pw has no Edwards image (it
    is 2-torsion or lies on the exceptional conic); the point is then
    garbage and must not be used.  The identity maps to the identity with
    bad = 0.  No value branches: flags feed conditional selects.
    """
    F = cv.fp
    X, Y, Z = Pw
    A = F.sub(X, F.mul(cv.t_m, Z))
    C = F.sub(A, F.mul(cv.s_m, Z))
    D = F.add(A, F.mul(cv.s_m, Z))
    U = F.mul(A, D)
    V = F.mul(C, Y)
    T = F.mul(A, C)
    Zt = F.mul(Y, D)
    zin = F.is_zero(Z)
    U = F.select(zin, F.zero, U)
    V = F.select(zin, F.one, V)
    T = F.select(zin, F.zero, T)
    Zt = F.select(zin, F.one, Zt)
    bad = F.is_zero(Zt)
    return (U, V, T, Zt), bad


def map_w_to_te(cv, Pw):
    E, bad = map_w_to_te_checked(cv, Pw)
    if bad:
        raise ExceptionalPoint("no Edwards image for this point")
    return E


def map_te_to_w_parts(cv, P):
    """Extended -> Weierstrass projective triple, unreduced.

    The triple is (0 : * : 0) for the identity and (0 : 0 : 0) for the
    order-2 point; callers inspect Z and Y to classify.  Everything else
    comes out as an ordinary valid projective point.
    """
    F = cv.fp
    X, Y, _, Z = P
    A = F.add(Z, Y)
    B = F.sub(Z, Y)
    Xw = F.mul(F.add(F.mul(cv.s_m, A), F.mul(cv.t_m, B)), X)
    Yw = F.mul(cv.s_m, F.mul(A, Z))
    Zw = F.mul(B, X)
    return (Xw, Yw, Zw)


def map_te_to_w(cv, P):
    """Extended -> Weierstrass projective; raises on the order-2 point."""
    F = cv.fp
    Xw, Yw, Zw = map_te_to_w_parts(cv, P)
    if F.is_zero(Zw):
        if F.is_zero(Yw):
            raise ExceptionalPoint("order-2 point has no affine image here")
        return (F.zero, F.one, F.zero)
    return (Xw, Yw, Zw)
