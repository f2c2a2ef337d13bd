"""Scalar multiplication strategies.

Three entry points share one constant-time evaluation core:

  mul_varbase    fixed-window ladder over a per-call table of odd multiples
  mul_fixedbase  comb over precomputed generator tables
  mul_double     k*g + l*P, variable-time, for signature verification only

Scalars are recoded into a fixed-length string of odd signed digits, so
the operation schedule (doublings, table passes, mixed additions, the
final parity correction) depends only on the curve and the digit count,
never on scalar values.  Curves with an Edwards form run the core on the
Edwards model after mapping the base point over; the Weierstrass model is
the fallback when the base has no Edwards image, which is a property of
the public point, not of the scalar.
"""

from dataclasses import dataclass

from . import instrumentation as _ins
from . import oracle, tepoint, wpoint
from .affine import IDENTITY, AffinePoint
from .errors import OutOfRange, ValidationError

WINDOW = 5
TABLE_BUDGET = 16384
WIDE_MARGIN = 3


# -- recoding ---------------------------------------------------------------

@dataclass(frozen=True)
class RegularNafDigits:
    """Fixed-length all-odd signed-digit recoding.

    sum(digits[i] * 2**(w*i)) - parity_fix equals the recoded scalar;
    parity_fix is 1 for even inputs and is applied by the evaluators as an
    always-computed conditional subtraction of the base.
    """
    digits: tuple
    parity_fix: int
    w: int

    def value(self):
        acc = 0
        for i, d in enumerate(self.digits):
            acc += d << (self.w * i)
        return acc - self.parity_fix


def digit_count(nbits, w):
    """Digits needed for scalars below 2**nbits: ceil((nbits + 1)/w)."""
    return (nbits + w) // w


def recode_regular_naf(k, w=WINDOW, nbits=None, n_digits=None):
    """Recode k >= 0 into n_digits odd digits in [-(2^w - 1), 2^w - 1].

    Requesting more digits than the minimum is fine: the tail pads with a
    repeating pattern that keeps the reconstruction invariant.  k = 0 is
    served through the parity fix like any other even scalar.
    """
    if n_digits is None:
        n_digits = digit_count(nbits, w)
    parity_fix = 1 - (k & 1)
    v = k | 1
    base = 1 << w
    wide = base << 1
    digits = []
    for _ in range(n_digits - 1):
        d = (v % wide) - base
        v = (v - d) >> w
        digits.append(d)
    digits.append(v)
    return RegularNafDigits(tuple(digits), parity_fix, w)


def _sign_mag(d):
    # branch-free split of an odd digit into (sign bit, magnitude)
    s = (d >> 63) & 1
    return s, (d ^ -s) + s


# -- model dispatch ----------------------------------------------------------

class _Model:
    __slots__ = ("identity", "add", "add_mixed", "dbl",
                 "table_lookup", "batch_normalize", "entry_neg")

    def __init__(self, mod, entry_neg):
        self.identity = mod.identity
        self.add = mod.add
        self.add_mixed = mod.add_mixed
        self.dbl = mod.dbl
        self.table_lookup = mod.table_lookup
        self.batch_normalize = mod.batch_normalize
        self.entry_neg = entry_neg


def _w_entry_neg(cv, e):
    return (e[0], cv.fp.neg(e[1]))


def _te_entry_neg(cv, e):
    return (cv.fp.neg(e[0]), e[1])


_W = _Model(wpoint, _w_entry_neg)
_TE = _Model(tepoint, _te_entry_neg)


def _select_point(cv, flag, A, B):
    F = cv.fp
    return tuple(F.select(flag, a, b) for a, b in zip(A, B))


def _te_result_to_affine(cv, E):
    """Edwards result -> short Weierstrass affine ints.

    The inverse map sends the Edwards identity to (0 : y : 0) and the
    order-2 point to (0 : 0 : 0); both collapse to Z = 0 and are patched
    after a branch-free normalization.  Degenerate results only arise
    from inputs outside the prime-order subgroup, which are public
    conditions, so the final classification may branch.
    """
    F = cv.fp
    Xw, Yw, Zw = tepoint.map_te_to_w_parts(cv, E)
    z0 = F.is_zero(Zw)
    zinv = F.inv(F.select(z0, F.one, Zw))
    x = F.dec(F.select(z0, F.zero, F.mul(Xw, zinv)))
    y = F.dec(F.select(z0, F.zero, F.mul(Yw, zinv)))
    if z0 and F.is_zero(Yw):
        return AffinePoint(cv.t_int % cv.p, 0)
    return AffinePoint(x, y)


def _finalize(cv, model, acc):
    if model is _TE:
        return _te_result_to_affine(cv, acc)
    return wpoint.normalize(cv, acc)


def _route(cv, P):
    """Pick the internal model for base point P (affine ints, non-identity).

    Returns (model, internal point).  Falls back to the Weierstrass model
    when P has no Edwards image; the flag depends only on the public base.
    """
    Pw = wpoint.lift(cv, P)
    if cv.model == "te":
        E, bad = tepoint.map_w_to_te_checked(cv, Pw)
        if not bad:
            return _TE, E
    return _W, Pw


def _is_small_order(cv, P):
    """[h]P == identity, for public P on a cofactor > 1 curve."""
    return oracle.oracle_mul(cv.h, P, cv.p, cv.desc.a).is_identity


def _small_order_mul(cv, P, k):
    """[k]P when P generates a subgroup of order dividing h.

    Only k mod h matters; h is a power of two, so the result is one of h
    precomputed points fetched by a constant-time scan keyed on the low
    scalar bits.  The tiny table comes from the reference arithmetic: P
    and its multiples are public, only the index is secret.  This also
    keeps 2-torsion away from the ladder, where the otherwise-complete
    addition law genuinely fails (it is only complete on inputs whose
    difference is not of order 2).
    """
    F = cv.fp
    pts, Q = [], IDENTITY
    for _ in range(cv.h):
        pts.append(Q)
        Q = oracle.oracle_add(Q, P, cv.p, cv.desc.a)
    xs = [F.enc(pt.x) for pt in pts]
    ys = [F.enc(pt.y) for pt in pts]
    x, y = F.lookup_pair(xs, ys, k & (cv.h - 1))
    return AffinePoint(F.dec(x), F.dec(y))


# -- constant-time core -------------------------------------------------------

def _odd_multiple_entries(cv, model, P):
    """Affine entries for [1]P, [3]P, ..., [2^w - 1]P, via one inversion."""
    half = 1 << (WINDOW - 1)
    P2 = model.dbl(cv, P)
    pts = [P]
    for _ in range(half - 1):
        pts.append(model.add(cv, pts[-1], P2))
    return model.batch_normalize(cv, pts)


def _mul_core(cv, model, P, rec):
    """Evaluate [k]P from recoded digits; schedule fixed by len(digits)."""
    entries = _odd_multiple_entries(cv, model, P)
    xs = tuple(e[0] for e in entries)
    ys = tuple(e[1] for e in entries)
    acc = model.identity(cv)
    first = True
    for i in range(len(rec.digits) - 1, -1, -1):
        if not first:
            for _ in range(rec.w):
                acc = model.dbl(cv, acc)
        first = False
        s, mag = _sign_mag(rec.digits[i])
        entry = model.table_lookup(cv, xs, ys, mag >> 1, s)
        acc = model.add_mixed(cv, acc, entry)
    withfix = model.add_mixed(cv, acc, model.entry_neg(cv, entries[0]))
    return _select_point(cv, rec.parity_fix, withfix, acc)


def _check_scalar(cv, k):
    if not (0 <= k < cv.q):
        raise OutOfRange("scalar outside [0, q)")


def mul_varbase(curve, P, k):
    """[k]P for an arbitrary base, 0 <= k < q, constant time in k."""
    _check_scalar(curve, k)
    wpoint.check_affine(curve, P)
    if P.is_identity:
        return IDENTITY
    if curve.h > 1 and _is_small_order(curve, P):
        return _small_order_mul(curve, P, k)
    rec = recode_regular_naf(k, WINDOW, nbits=curve.qbits)
    model, Pi = _route(curve, P)
    return _finalize(curve, model, _mul_core(curve, model, Pi, rec))


def mul_wide(curve, P, m):
    """[m]P for 0 <= m < 2^(qbits + 3), constant time in m.

    The digit schedule is sized for the widened range, so cofactor-cleared
    scalars (h*k before any reduction) and the group order itself go
    through without modular preprocessing.
    """
    if not (0 <= m < (1 << (curve.qbits + WIDE_MARGIN))):
        raise OutOfRange("wide scalar outside [0, 2^(qbits + 3))")
    wpoint.check_affine(curve, P)
    if P.is_identity:
        return IDENTITY
    if curve.h > 1 and _is_small_order(curve, P):
        return _small_order_mul(curve, P, m)
    rec = recode_regular_naf(m, WINDOW, nbits=curve.qbits + WIDE_MARGIN)
    model, Pi = _route(curve, P)
    return _finalize(curve, model, _mul_core(curve, model, Pi, rec))


def clear_cofactor_scalar(k, h):
    """h*k as a plain integer, no reduction; feed the result to mul_wide."""
    if h not in (1, 4, 8):
        raise ValueError(f"unsupported cofactor {h}")
    return h * k


# -- fixed-base comb ----------------------------------------------------------

@dataclass(frozen=True)
class CombTables:
    """Generator tables: beta teeth of 2^(w-1) odd multiples each.

    Tooth j, entry index i, holds [(2i + 1) * 2^(w * j * cols)]g as an
    affine pair in the curve's internal model.  Built once per curve from
    the slow reference arithmetic and checked on-curve entry by entry.
    """
    w: int
    beta: int
    cols: int
    n_digits: int
    teeth_x: tuple
    teeth_y: tuple
    table_bytes: int
    model: str


def build_comb_tables(curve, w=WINDOW, l1_budget=TABLE_BUDGET):
    desc = curve.desc
    n = digit_count(curve.qbits, w)
    half = 1 << (w - 1)
    entry_bytes = 2 * curve.fp.nbytes
    beta = 8
    while beta > 1 and beta * half * entry_bytes > l1_budget:
        beta -= 1
    cols = -(-n // beta)

    p, a, b = desc.p, desc.a, desc.b
    base = desc.generator
    teeth_x, teeth_y = [], []
    for j in range(beta):
        two = oracle.oracle_add(base, base, p, a)
        pts = [base]
        for _ in range(half - 1):
            pts.append(oracle.oracle_add(pts[-1], two, p, a))
        for pt in pts:
            if not oracle.on_curve(pt, p, a, b):
                raise ValidationError(f"{desc.name}: comb entry off-curve")
        if curve.model == "te":
            ed = desc.edwards
            mapped = [oracle.map_w_to_te_int(pt, p, ed.s, ed.t) for pt in pts]
            for u, v in mapped:
                if not oracle.te_on_curve(u, v, p, ed.e, ed.d):
                    raise ValidationError(
                        f"{desc.name}: comb entry off-curve after model change")
            entries = [tepoint.entry_from_ints(curve, u, v) for u, v in mapped]
        else:
            entries = [wpoint.entry_from_affine(curve, pt) for pt in pts]
        teeth_x.append(tuple(e[0] for e in entries))
        teeth_y.append(tuple(e[1] for e in entries))
        if j < beta - 1:
            for _ in range(w * cols):
                base = oracle.oracle_add(base, base, p, a)

    return CombTables(w=w, beta=beta, cols=cols, n_digits=beta * cols,
                      teeth_x=tuple(teeth_x), teeth_y=tuple(teeth_y),
                      table_bytes=beta * half * entry_bytes,
                      model=curve.model)


def mul_fixedbase(curve, k, base=None):
    """[k]g through the comb tables; falls back to mul_varbase for other
    bases so callers can treat it as the generic signing-side entry."""
    if base is not None and base != curve.gen:
        return mul_varbase(curve, base, k)
    _check_scalar(curve, k)
    T = curve.comb
    model = _TE if T.model == "te" else _W
    rec = recode_regular_naf(k, T.w, n_digits=T.n_digits)
    acc = model.identity(curve)
    for i in range(T.cols - 1, -1, -1):
        if i < T.cols - 1:
            for _ in range(T.w):
                acc = model.dbl(curve, acc)
        for j in range(T.beta):
            s, mag = _sign_mag(rec.digits[j * T.cols + i])
            entry = model.table_lookup(curve, T.teeth_x[j], T.teeth_y[j],
                                       mag >> 1, s)
            acc = model.add_mixed(curve, acc, entry)
    g0 = (T.teeth_x[0][0], T.teeth_y[0][0])
    withfix = model.add_mixed(curve, acc, model.entry_neg(curve, g0))
    acc = _select_point(curve, rec.parity_fix, withfix, acc)
    return _finalize(curve, model, acc)


# -- double-base (verification) ----------------------------------------------

def _wnaf(k, width):
    out = []
    while k:
        if k & 1:
            d = k % (1 << width)
            if d >= 1 << (width - 1):
                d -= 1 << width
            k -= d
        else:
            d = 0
        out.append(d)
        k >>= 1
    return out


def _vartime_table(cv, model, P):
    half = 1 << (WINDOW - 1)
    P2 = model.dbl(cv, P)
    pts = [P]
    for _ in range(half - 1):
        pts.append(model.add(cv, pts[-1], P2))
    return model.batch_normalize(cv, pts)


def mul_double(curve, k, P, l):
    """[k]g + [l]P, variable time.  Verification only: never call this
    with secret scalars.  The instrumentation secret scope enforces that
    at test time."""
    if _ins.vartime_forbidden:
        raise AssertionError("variable-time mul_double inside a secret scope")
    if _ins.enabled:
        _ins.counters.mul_double_calls += 1
    _check_scalar(curve, k)
    _check_scalar(curve, l)
    wpoint.check_affine(curve, P)
    if P.is_identity:
        l = 0

    if l and curve.h > 1 and _is_small_order(curve, P):
        # [l]P collapses to one of h public points; fold it in at the end.
        # [k]g has odd order, so the closing addition stays off the
        # exceptional pairs of the Weierstrass law.
        Pe = oracle.oracle_mul(l % curve.h, P, curve.p, curve.desc.a)
        acc = mul_fixedbase(curve, k)
        if Pe.is_identity:
            return acc
        if acc.is_identity:
            return Pe
        S = wpoint.add(curve, wpoint.lift(curve, acc), wpoint.lift(curve, Pe))
        return wpoint.normalize(curve, S)

    # one model for the whole evaluation; Edwards only when P crosses over
    model, Ei = _W, None
    if curve.model == "te":
        if P.is_identity:
            model = _TE
        else:
            E, bad = tepoint.map_w_to_te_checked(curve, wpoint.lift(curve, P))
            if not bad:
                model, Ei = _TE, E
    if model is _TE:
        T = curve.comb
        g_entries = list(zip(T.teeth_x[0], T.teeth_y[0]))
        p_entries = _vartime_table(curve, model, Ei) if Ei is not None else []
    else:
        g_entries = _vartime_table(curve, model, wpoint.lift(curve, curve.gen))
        p_entries = (_vartime_table(curve, model, wpoint.lift(curve, P))
                     if not P.is_identity else [])

    width = WINDOW + 1
    naf_k = _wnaf(k, width)
    naf_l = _wnaf(l, width) if l else []
    top = max(len(naf_k), len(naf_l), 1)
    acc = model.identity(curve)
    for i in range(top - 1, -1, -1):
        acc = model.dbl(curve, acc)
        if i < len(naf_k) and naf_k[i]:
            d = naf_k[i]
            e = g_entries[abs(d) >> 1]
            acc = model.add_mixed(curve, acc,
                                  model.entry_neg(curve, e) if d < 0 else e)
        if i < len(naf_l) and naf_l[i]:
            d = naf_l[i]
            e = p_entries[abs(d) >> 1]
            acc = model.add_mixed(curve, acc,
                                  model.entry_neg(curve, e) if d < 0 else e)
    return _finalize(curve, model, acc)
