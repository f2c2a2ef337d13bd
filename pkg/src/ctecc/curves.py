"""Curve parameter database: loading, validation, and runtime contexts.

The bundled JSON (data/curves.json) stores every numeric field as a
lowercase 0x-prefixed hex string.  Loading validates each descriptor
against its invariants — generator on curve, [q]g = identity through the
reference oracle, cofactor in {1,4,8}, q a probable prime, Edwards and
twist consistency — and raises ValidationError naming both the curve and
the failed invariant.

A CurveDescriptor is immutable parameter data.  A Curve is the runtime
object protocol code works with: field contexts for p and q, curve
constants in Montgomery form, the internal-model dispatch (Weierstrass
everywhere, twisted Edwards for the curves that carry Edwards
parameters), and the fixed-base comb tables.
"""

import json
import random
from dataclasses import dataclass
from importlib import resources

from . import fp as _fp
from . import oracle
from .affine import AffinePoint
from .errors import InconsistentParameters, NotFound, ParseError, ValidationError
from .scalar import ScalarOps


@dataclass(frozen=True)
class EdwardsParams:
    e: int
    d: int
    s: int
    t: int
    ugen: int
    vgen: int


@dataclass(frozen=True)
class TwistParams:
    h_t: int
    q_t: int


@dataclass(frozen=True)
class CurveDescriptor:
    name: str
    p: int
    a: int
    b: int
    q: int
    h: int
    gx: int
    gy: int
    coefficient_class: str
    oid: str | None = None
    edwards: EdwardsParams | None = None
    twist: TwistParams | None = None
    test_fullgen: AffinePoint | None = None

    @property
    def generator(self):
        return AffinePoint(self.gx, self.gy)

    @property
    def qbits(self):
        return self.q.bit_length()


def _probable_prime(n, rounds=16):
    if n < 2:
        return False
    for sp in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % sp == 0:
            return n == sp
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    rng = random.Random(0xC0FFEE ^ (n & 0xFFFFFFFF))
    for _ in range(rounds):
        a = rng.randrange(2, n - 1)
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def derive_edwards(desc):
    """(s, t) for a descriptor carrying Edwards parameters.

    s = (e-d)/4, t = (e+d)/6; checks the Weierstrass coefficients the pair
    implies against the stored ones.
    """
    ed = desc.edwards
    if ed is None:
        raise ValueError(f"{desc.name}: no Edwards parameters")
    if desc.h % 4 != 0:
        raise ValueError(f"{desc.name}: Edwards form requires 4 | h")
    p = desc.p
    if (ed.e - ed.d) % p == 0:
        raise ValueError(f"{desc.name}: e = d is degenerate")
    s = (ed.e - ed.d) * pow(4, -1, p) % p
    t = (ed.e + ed.d) * pow(6, -1, p) % p
    a_derived = (s * s - 3 * t * t) % p
    b_derived = (2 * t * t * t - t * s * s) % p
    if a_derived != desc.a or b_derived != desc.b:
        raise InconsistentParameters(
            f"{desc.name}: (e, d) do not reproduce the Weierstrass coefficients")
    return s, t


def validate_twist(desc):
    """True iff h*q + h_t*q_t = 2(p+1)."""
    tw = desc.twist
    if tw is None:
        raise ValueError(f"{desc.name}: no twist parameters")
    return desc.h * desc.q + tw.h_t * tw.q_t == 2 * (desc.p + 1)


def _fail(name, invariant):
    raise ValidationError(f"{name}: {invariant}")


def validate_curve(desc):
    """Check every descriptor invariant; raises ValidationError."""
    p, a, b, q, h = desc.p, desc.a, desc.b, desc.q, desc.h
    name = desc.name
    if p <= 3 or p % 2 == 0:
        _fail(name, "p odd and > 3")
    if not (0 <= a < p and 0 < b < p):
        _fail(name, "coefficients canonical (and b != 0)")
    if (4 * a * a * a + 27 * b * b) % p == 0:
        _fail(name, "nonsingular")
    if h not in (1, 4, 8):
        _fail(name, "cofactor in {1,4,8}")
    if not _probable_prime(q):
        _fail(name, "q prime")
    if abs(q.bit_length() + h.bit_length() - 1 - p.bit_length()) > 2:
        _fail(name, "bitlen(q) ~ bitlen(p)")
    expected_class = ("a_minus3" if a == p - 3 else
                      "a_zero" if a == 0 else "general_a")
    if desc.coefficient_class != expected_class:
        _fail(name, f"coefficient_class (expected {expected_class})")
    g = desc.generator
    if g.is_identity or not oracle.on_curve(g, p, a, b):
        _fail(name, "on-curve")
    if not oracle.oracle_mul(q, g, p, a).is_identity:
        _fail(name, "[q]g = identity")
    ed = desc.edwards
    if ed is not None:
        s, t = derive_edwards(desc)  # raises InconsistentParameters itself
        if s != ed.s or t != ed.t:
            _fail(name, "edwards (s, t) derivation")
        if pow(ed.e % p, (p - 1) // 2, p) != 1:
            _fail(name, "edwards e square")
        if pow(ed.d % p, (p - 1) // 2, p) != p - 1:
            _fail(name, "edwards d nonsquare")
        if oracle.map_w_to_te_int(g, p, s, t) != (ed.ugen, ed.vgen):
            _fail(name, "edwards generator image")
        if oracle.map_te_to_w_int((ed.ugen, ed.vgen), p, s, t) != g:
            _fail(name, "edwards generator preimage")
        if not oracle.te_on_curve(ed.ugen, ed.vgen, p, ed.e, ed.d):
            _fail(name, "edwards generator on curve")
    elif desc.h != 1:
        # allowed (Weierstrass-only h != 1 curve), nothing extra to check
        pass
    if desc.twist is not None and not validate_twist(desc):
        _fail(name, "twist order sum 2(p+1)")
    fg = desc.test_fullgen
    if fg is not None:
        if not oracle.on_curve(fg, p, a, b):
            _fail(name, "full-order generator on curve")
        if oracle.oracle_mul(q, fg, p, a).is_identity:
            _fail(name, "full-order generator order > q")
        if not oracle.oracle_mul(h * q, fg, p, a).is_identity:
            _fail(name, "full-order generator annihilated by h*q")


def _hex_field(mapping, key, ctx):
    try:
        raw = mapping[key]
    except KeyError:
        raise ParseError(f"{ctx}: missing field {key!r}") from None
    try:
        return int(raw, 16)
    except (TypeError, ValueError):
        raise ParseError(f"{ctx}: field {key!r} is not a hex string") from None


def _parse_descriptor(obj):
    name = obj.get("name")
    if not isinstance(name, str) or not name:
        raise ParseError("curve entry without a name")
    kw = {k: _hex_field(obj, k, name) for k in ("p", "a", "b", "q", "h", "gx", "gy")}
    cls = obj.get("coefficient_class")
    if cls not in ("general_a", "a_minus3", "a_zero"):
        raise ParseError(f"{name}: bad coefficient_class {cls!r}")
    ed = None
    if "edwards" in obj:
        raw = obj["edwards"]
        e = _hex_field(raw, "e", name)
        d = _hex_field(raw, "d", name)
        p = kw["p"]
        # normalize e = p-1 style storage to a signed small value is not
        # needed; keep residues as stored
        s = (e - d) * pow(4, -1, p) % p
        t = (e + d) * pow(6, -1, p) % p
        ed = EdwardsParams(e=e, d=d, s=s, t=t,
                           ugen=_hex_field(raw, "ugen", name),
                           vgen=_hex_field(raw, "vgen", name))
    tw = None
    if "twist" in obj:
        raw = obj["twist"]
        tw = TwistParams(h_t=_hex_field(raw, "h_t", name),
                         q_t=_hex_field(raw, "q_t", name))
    fg = None
    if "test_fullgen" in obj:
        raw = obj["test_fullgen"]
        fg = AffinePoint(_hex_field(raw, "x", name), _hex_field(raw, "y", name))
    return CurveDescriptor(name=name, coefficient_class=cls, oid=obj.get("oid"),
                           edwards=ed, twist=tw, test_fullgen=fg, **kw)


class CurveDatabase:
    def __init__(self, descriptors):
        self._by_name = {}
        for desc in descriptors:
            if desc.name in self._by_name:
                raise ValidationError(f"duplicate curve name {desc.name}")
            self._by_name[desc.name] = desc

    def __getitem__(self, name):
        try:
            return self._by_name[name]
        except KeyError:
            raise NotFound(f"unknown curve {name!r}") from None

    def __iter__(self):
        return iter(self._by_name.values())

    def __len__(self):
        return len(self._by_name)

    def names(self):
        return list(self._by_name)


def load_database(path=None):
    """Parse and validate a curve database; defaults to the bundled one."""
    if path is None:
        text = resources.files("ctecc.data").joinpath("curves.json").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"curve database is not valid JSON: {exc}") from None
    if not isinstance(doc, dict) or not isinstance(doc.get("curves"), list):
        raise ParseError('curve database must be {"curves": [...]}')
    descs = [_parse_descriptor(entry) for entry in doc["curves"]]
    for desc in descs:
        validate_curve(desc)
    return CurveDatabase(descs)


_DEFAULT_DB = None


def default_database():
    global _DEFAULT_DB
    if _DEFAULT_DB is None:
        _DEFAULT_DB = load_database()
    return _DEFAULT_DB


class Curve:
    """Runtime context for one curve: field contexts plus cached constants.

    Immutable after construction; share freely across threads.
    """

    def __init__(self, desc, backend=None):
        self.desc = desc
        self.name = desc.name
        self.p = desc.p
        self.q = desc.q
        self.h = desc.h
        self.qbits = desc.qbits
        self.fp = _fp.field(desc.p, backend=backend)
        self.scalar = ScalarOps(desc.q, backend=backend)
        self.cclass = desc.coefficient_class
        F = self.fp
        self.a_m = F.enc(desc.a)
        self.b_m = F.enc(desc.b)
        self.b3_m = F.enc(3 * desc.b % desc.p)
        self.gen = desc.generator
        self.model = "te" if desc.edwards is not None else "w"
        if desc.edwards is not None:
            ed = desc.edwards
            self.e_int = ed.e
            self.e_is_minus1 = ed.e == desc.p - 1
            self.e_is_one = ed.e == 1
            self.d_m = F.enc(ed.d)
            self.e_m = F.enc(ed.e)
            self.d2_m = F.enc(2 * ed.d % desc.p)
            self.s_m = F.enc(ed.s)
            self.t_m = F.enc(ed.t)
            self.t_int = ed.t
            self.gen_te = (ed.ugen, ed.vgen)
        from . import scalarmul  # deferred: scalarmul sits above this module
        self.comb = scalarmul.build_comb_tables(self)

    def __repr__(self):
        return f"<Curve {self.name} ({self.fp.backend_name})>"


_CURVE_CACHE = {}


def get_curve(name, backend=None):
    key = (name, backend or _fp.default_backend())
    cur = _CURVE_CACHE.get(key)
    if cur is None:
        cur = Curve(default_database()[name], backend=backend)
        _CURVE_CACHE[key] = cur
    return cur
