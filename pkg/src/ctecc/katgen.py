"""Known-answer-test generation, parsing, and execution.

Expected values are produced by the slow reference arithmetic in
`oracle`, never by the constant-time stack, so a suite is an independent
check of the library rather than a snapshot of its own output.  Suites
serialize to JSON; results can be emitted as TAP for harness consumption.

Case kinds: keygen, derive, sign, verify, pubkey_validate, vko.  Inputs
are a hex map (d, Qx, Qy, peerX, peerY, ukm, msg, k, r, s, hash as
applicable); `expected` is either an output hex map or the literal
string "FAIL", meaning the hook must refuse (raise an EcError, or return
False for the boolean kinds).
"""

import hashlib
import json
import random
from dataclasses import asdict, dataclass, field

from . import oracle
from .affine import IDENTITY, AffinePoint
from .errors import EcError, NotFound, ParseError, Unsupported

FORMAT_NAME = "ecckat"
FORMAT_VERSION = 1

KINDS = ("keygen", "derive", "sign", "verify", "pubkey_validate", "vko")
SOURCES = ("cavp", "generated-positive", "generated-negative",
           "extreme-key", "small-subgroup", "x0-regression")

EXTREME_SPAN = 256


FAIL = "FAIL"


@dataclass
class KatCase:
    id: str
    curve: str
    kind: str
    source: str
    inputs: dict
    expected: dict | str  # output hex map, or the FAIL marker
    alg: str = ""


# -- serialization helpers -----------------------------------------------------

def _hx(value, width=None):
    if isinstance(value, (bytes, bytearray)):
        return bytes(value).hex()
    if width is None:
        width = max(1, (value.bit_length() + 7) // 8)
    return value.to_bytes(width, "big").hex()


def _point_fields(P, width, kx="Qx", ky="Qy"):
    if P.is_identity:
        return {kx: "", ky: ""}
    return {kx: _hx(P.x, width), ky: _hx(P.y, width)}


def emit_json(cases):
    doc = {"format": FORMAT_NAME, "version": FORMAT_VERSION,
           "cases": [asdict(c) for c in cases]}
    return json.dumps(doc, indent=1)


def load_cases(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as ex:
        raise ParseError(f"suite is not valid JSON: {ex}") from None
    if not isinstance(doc, dict) or doc.get("format") != FORMAT_NAME:
        raise ParseError("missing or wrong format marker")
    if doc.get("version") != FORMAT_VERSION:
        raise ParseError(f"unsupported suite version {doc.get('version')!r}")
    raw = doc.get("cases")
    if not isinstance(raw, list):
        raise ParseError("cases must be a list")
    cases = []
    for i, item in enumerate(raw):
        try:
            kind = item["kind"]
            if kind not in KINDS:
                raise ParseError(f"case {i}: unknown kind {kind!r}")
            expected = item["expected"]
            if expected == FAIL:
                pass
            elif isinstance(expected, dict):
                expected = dict(expected)
            else:
                raise ParseError(
                    f"case {i}: expected must be a hex map or {FAIL!r}")
            cases.append(KatCase(id=item["id"], curve=item["curve"],
                                 kind=kind, source=item["source"],
                                 inputs=dict(item["inputs"]),
                                 expected=expected,
                                 alg=item.get("alg", "")))
        except KeyError as ex:
            raise ParseError(f"case {i}: missing field {ex}") from None
    return cases


# -- generation ------------------------------------------------------------------

def _sign_reference(desc, alg, sk, k, data, hash_name):
    """(r, s) straight from integer arithmetic; returns None when this k
    degenerates (caller resamples)."""
    p, a, q = desc.p, desc.a, desc.q
    R = oracle.oracle_mul(k, desc.generator, p, a)
    r = R.x % q
    if r == 0:
        return None
    if alg == "ecdsa":
        h1 = hashlib.new(hash_name, data).digest()
        z = int.from_bytes(h1, "big")
        extra = 8 * len(h1) - q.bit_length()
        if extra > 0:
            z >>= extra
        s = pow(k, -1, q) * (z + r * sk) % q
    else:
        e = int.from_bytes(data, "big") % q or 1
        s = (r * sk + k * e) % q
    if s == 0:
        return None
    return r, s


def generate_suite(desc, seed=0, n=16):
    """Full KAT family for one curve descriptor.

    Everything routed through the reference arithmetic plus hashlib; no
    constant-time module is imported here, so defects there cannot leak
    into the expectations.
    """
    rng = random.Random(seed)
    p, a, b, q, h = desc.p, desc.a, desc.b, desc.q, desc.h
    qw = (q.bit_length() + 7) // 8
    fw = (p.bit_length() + 7) // 8
    hash_name = "sha256" if q.bit_length() <= 256 else "sha512"
    cases = []
    serial = {}

    def cid(kind, tag=""):
        key = kind + tag
        serial[key] = serial.get(key, 0) + 1
        suffix = f"-{tag}" if tag else ""
        return f"{desc.name}-{kind}{suffix}-{serial[key] - 1:03d}"

    def add(kind, source, inputs, expected, alg="", tag=""):
        cases.append(KatCase(id=cid(kind, tag), curve=desc.name, kind=kind,
                             source=source, inputs=inputs, expected=expected,
                             alg=alg))

    def ref_pk(sk):
        return oracle.oracle_mul(sk, desc.generator, p, a)

    def ref_shared(sk, peer):
        return oracle.oracle_mul(h * sk, peer, p, a)

    # keygen: positives, the extreme bands, and out-of-range rejections
    for _ in range(n):
        sk = rng.randrange(1, q)
        add("keygen", "generated-positive", {"d": _hx(sk, qw)},
            _point_fields(ref_pk(sk), fw))
    for sk in range(1, EXTREME_SPAN):
        add("keygen", "extreme-key", {"d": _hx(sk, qw)},
            _point_fields(ref_pk(sk), fw), tag="lo")
    for sk in range(q - EXTREME_SPAN, q):
        add("keygen", "extreme-key", {"d": _hx(sk, qw)},
            _point_fields(ref_pk(sk), fw), tag="hi")
    for sk in (0, q, q + 1, 2 * q):
        add("keygen", "generated-negative",
            {"d": _hx(sk, qw + 1)}, FAIL)

    # derive: honest peers, a full-group peer when one is stored, the
    # x = 0 peer when the curve has one, and small-subgroup rejections
    def peer_fields(P):
        return _point_fields(P, fw, kx="peerX", ky="peerY")

    for _ in range(n):
        sk = rng.randrange(1, q)
        peer = ref_pk(rng.randrange(1, q))
        add("derive", "generated-positive",
            {"d": _hx(sk, qw), **peer_fields(peer)},
            {"Z": _hx(ref_shared(sk, peer).x, fw)})
    if h > 1 and desc.test_fullgen is not None:
        sk = rng.randrange(1, q)
        add("derive", "generated-positive",
            {"d": _hx(sk, qw), **peer_fields(desc.test_fullgen)},
            {"Z": _hx(ref_shared(sk, desc.test_fullgen).x, fw)})
    y0 = oracle.sqrt_mod(b, p)
    if y0 is not None:
        peer = AffinePoint(0, y0)
        sk = rng.randrange(1, q)
        S = ref_shared(sk, peer)
        if S.is_identity:
            add("derive", "x0-regression",
                {"d": _hx(sk, qw), **peer_fields(peer)}, FAIL)
        else:
            add("derive", "x0-regression",
                {"d": _hx(sk, qw), **peer_fields(peer)},
                {"Z": _hx(S.x, fw)})
    if h > 1:
        try:
            S = oracle.find_small_subgroup_point(desc)
            for _ in range(2):
                sk = rng.randrange(1, q)
                add("derive", "small-subgroup",
                    {"d": _hx(sk, qw), **peer_fields(S)}, FAIL)
        except (NotFound, Unsupported):
            pass

    # signatures, both algorithms, nonce injected so cases are exact
    for alg in ("ecdsa", "gost"):
        for i in range(n):
            sk = rng.randrange(1, q)
            data = rng.randbytes(rng.randrange(16, 64)) if alg == "ecdsa" \
                else rng.randbytes(qw)
            while True:
                k = rng.randrange(1, q)
                rs = _sign_reference(desc, alg, sk, k, data, hash_name)
                if rs is not None:
                    break
            r, s = rs
            inputs = {"d": _hx(sk, qw), "k": _hx(k, qw), "msg": _hx(data),
                      "hash": hash_name}
            add("sign", "generated-positive", inputs,
                {"r": _hx(r, qw), "s": _hx(s, qw)}, alg=alg)
            pk = ref_pk(sk)
            vin = {**_point_fields(pk, fw), "msg": _hx(data),
                   "r": _hx(r, qw), "s": _hx(s, qw), "hash": hash_name}
            add("verify", "generated-positive", vin, {"valid": "01"}, alg=alg)
            if i == 0:
                # single-field mutations of the first good tuple
                for fld, mutate in (
                        ("r", lambda v: _hx(int(v, 16) ^ 1, qw)),
                        ("s", lambda v: _hx(int(v, 16) ^ 1, qw)),
                        ("msg", lambda v: _hx(bytes.fromhex(v)[:-1] +
                                              bytes([bytes.fromhex(v)[-1] ^ 1]))),
                        ("Qx", lambda v: _hx(int(v, 16) ^ 1, fw)),
                        ("Qy", lambda v: _hx(int(v, 16) ^ 1, fw))):
                    bad = dict(vin)
                    bad[fld] = mutate(vin[fld])
                    add("verify", "generated-negative", bad,
                        FAIL, alg=alg, tag="mut")
                for fld, val in (("r", _hx(0, qw)), ("s", _hx(0, qw)),
                                 ("r", _hx(q, qw)), ("s", _hx(q, qw))):
                    bad = dict(vin)
                    bad[fld] = val
                    add("verify", "generated-negative", bad,
                        FAIL, alg=alg, tag="rng")
        # digest congruent to 0 mod q must be treated as e = 1
        if alg == "gost":
            sk = rng.randrange(1, q)
            data = q.to_bytes(qw, "big")
            while True:
                k = rng.randrange(1, q)
                rs = _sign_reference(desc, alg, sk, k, data, hash_name)
                if rs is not None:
                    break
            r, s = rs
            add("sign", "generated-positive",
                {"d": _hx(sk, qw), "k": _hx(k, qw), "msg": _hx(data),
                 "hash": hash_name},
                {"r": _hx(r, qw), "s": _hx(s, qw)}, alg=alg, tag="e0")

    # public key validation
    for _ in range(4):
        pk = ref_pk(rng.randrange(1, q))
        add("pubkey_validate", "generated-positive",
            _point_fields(pk, fw), {"valid": "01"})
    good = ref_pk(rng.randrange(1, q))
    add("pubkey_validate", "generated-negative",
        {"Qx": "", "Qy": ""}, FAIL)
    add("pubkey_validate", "generated-negative",
        {"Qx": _hx(good.x, fw), "Qy": _hx((good.y + 1) % p, fw)}, FAIL)
    add("pubkey_validate", "generated-negative",
        {"Qx": _hx(p, fw), "Qy": _hx(good.y, fw)}, FAIL)
    if h > 1:
        try:
            S = oracle.find_small_subgroup_point(desc)
            add("pubkey_validate", "small-subgroup",
                _point_fields(S, fw), FAIL)
        except (NotFound, Unsupported):
            pass
        if desc.test_fullgen is not None:
            add("pubkey_validate", "small-subgroup",
                _point_fields(desc.test_fullgen, fw), FAIL)

    # vko
    for _ in range(max(2, n // 4)):
        sk = rng.randrange(1, q)
        peer = ref_pk(rng.randrange(1, q))
        ukm = rng.randrange(1, 1 << 64)
        S = oracle.oracle_mul(h * (ukm * sk % q), peer, p, a)
        material = S.x.to_bytes(fw, "big") + S.y.to_bytes(fw, "big")
        add("vko", "generated-positive",
            {"d": _hx(sk, qw), "ukm": _hx(ukm), "hash": hash_name,
             **peer_fields(peer)},
            {"kdf": hashlib.new(hash_name, material).hexdigest()})
    if h > 1:
        try:
            S = oracle.find_small_subgroup_point(desc)
            add("vko", "small-subgroup",
                {"d": _hx(rng.randrange(1, q), qw), "ukm": _hx(0x99),
                 "hash": hash_name, **peer_fields(S)}, FAIL)
        except (NotFound, Unsupported):
            pass

    return cases


# -- CAVP import -------------------------------------------------------------------

CAVP_CURVES = {
    "P-192": "secp192r1",
    "P-256": "secp256r1",
    "P-384": "secp384r1",
    "P-521": "secp521r1",
}


def parse_cavp(text):
    """One-pass parse of a CAVP ECC CDH response file into derive cases.

    Returns (cases, skipped) where skipped counts records in sections for
    curves this package does not carry.  Structural damage raises
    ParseError naming the line.
    """
    cases = []
    skipped = 0
    curve = None
    supported = False
    rec = {}
    rec_line = 0
    counter = {}

    def flush(lineno):
        nonlocal skipped, rec
        if not rec:
            return
        if not supported:
            skipped += 1
            rec = {}
            return
        missing = [k for k in ("dIUT", "QCAVSx", "QCAVSy", "ZIUT")
                   if k not in rec]
        if missing:
            raise ParseError(
                f"line {rec_line}: record missing field(s) {missing}")
        idx = counter.get(curve, 0)
        counter[curve] = idx + 1
        cases.append(KatCase(
            id=f"{curve}-derive-cavp-{idx:03d}", curve=curve, kind="derive",
            source="cavp",
            inputs={"d": rec["dIUT"], "peerX": rec["QCAVSx"],
                    "peerY": rec["QCAVSy"]},
            expected={"Z": rec["ZIUT"]}))
        rec = {}

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ParseError(f"line {lineno}: unterminated section header")
            flush(lineno)
            name = line[1:-1].strip()
            curve = CAVP_CURVES.get(name)
            supported = curve is not None
            continue
        if "=" not in line:
            raise ParseError(f"line {lineno}: expected 'key = value'")
        key, _, val = line.partition("=")
        key, val = key.strip(), val.strip()
        if key == "COUNT":
            flush(lineno)
            rec_line = lineno
            continue
        if key in ("dIUT", "QCAVSx", "QCAVSy", "ZIUT", "QIUTx", "QIUTy"):
            try:
                int(val, 16)
            except ValueError:
                raise ParseError(
                    f"line {lineno}: {key} is not hexadecimal") from None
            rec[key] = val.lower()
    flush(-1)
    return cases, skipped


# -- execution ----------------------------------------------------------------------

class LibraryHooks:
    """Default bindings from KAT cases onto the library under test."""

    def __init__(self, backend=None):
        self._backend = backend
        self._cache = {}

    def curve(self, name):
        if name not in self._cache:
            from .curves import get_curve
            self._cache[name] = get_curve(name, backend=self._backend)
        return self._cache[name]

    def keygen(self, curve, sk):
        from . import scalarmul
        from .errors import OutOfRange
        cv = self.curve(curve)
        if not 1 <= sk < cv.q:
            raise OutOfRange("secret key outside [1, q)")
        return scalarmul.mul_fixedbase(cv, sk)

    def derive(self, curve, sk, peer):
        from . import protocols
        return protocols.ecdh_derive(self.curve(curve), sk, peer)

    def sign(self, curve, alg, sk, data, k, hash_name):
        from . import protocols
        cv = self.curve(curve)
        if alg == "gost":
            sig = protocols.gost_sign(cv, sk, data, k=k)
        else:
            sig = protocols.ecdsa_sign(cv, sk, data, hash_name=hash_name, k=k)
        return sig.r, sig.s

    def verify(self, curve, alg, pk, data, r, s, hash_name):
        from . import protocols
        cv = self.curve(curve)
        sig = protocols.Signature(r, s)
        if alg == "gost":
            return protocols.gost_verify(cv, pk, data, sig)
        return protocols.ecdsa_verify(cv, pk, data, sig, hash_name=hash_name)

    def pubkey_validate(self, curve, pk):
        from . import protocols
        try:
            protocols.validate_pubkey_full(self.curve(curve), pk)
            return True
        except EcError:
            return False

    def vko(self, curve, sk, peer, ukm, hash_name):
        from . import protocols
        return protocols.vko_derive(self.curve(curve), sk, peer, ukm,
                                    kdf_hash=hash_name)


def _in_int(case, key):
    return int(case.inputs[key], 16)


def _point_from(mapping, kx, ky):
    x, y = mapping.get(kx, ""), mapping.get(ky, "")
    if x == "" and y == "":
        return IDENTITY
    return AffinePoint(int(x, 16), int(y, 16))


def _in_subject(case):
    return _point_from(case.inputs, "Qx", "Qy")


def _in_peer(case):
    return _point_from(case.inputs, "peerX", "peerY")


def _expects_failure(case):
    return case.expected == FAIL


def _dispatch(case, hooks):
    if case.kind == "keygen":
        return hooks.keygen(case.curve, _in_int(case, "d"))
    if case.kind == "derive":
        return hooks.derive(case.curve, _in_int(case, "d"), _in_peer(case))
    if case.kind == "sign":
        return hooks.sign(case.curve, case.alg, _in_int(case, "d"),
                          bytes.fromhex(case.inputs["msg"]),
                          _in_int(case, "k"), case.inputs.get("hash"))
    if case.kind == "verify":
        return hooks.verify(case.curve, case.alg, _in_subject(case),
                            bytes.fromhex(case.inputs["msg"]),
                            int(case.inputs["r"], 16),
                            int(case.inputs["s"], 16),
                            case.inputs.get("hash"))
    if case.kind == "pubkey_validate":
        return hooks.pubkey_validate(case.curve, _in_subject(case))
    if case.kind == "vko":
        return hooks.vko(case.curve, _in_int(case, "d"), _in_peer(case),
                         _in_int(case, "ukm"), case.inputs.get("hash"))
    raise ParseError(f"unknown kind {case.kind!r}")


def _compare(case, got):
    if case.kind == "keygen":
        want = _point_from(case.expected, "Qx", "Qy")
        return got == want, f"pk mismatch: got {got}"
    if case.kind == "derive":
        return got.hex() == case.expected["Z"], \
            f"shared mismatch: got {got.hex()}"
    if case.kind == "sign":
        r, s = got
        want = (int(case.expected["r"], 16), int(case.expected["s"], 16))
        return (r, s) == want, f"signature mismatch: got r={r:x} s={s:x}"
    if case.kind == "vko":
        return got.hex() == case.expected["kdf"], \
            f"kdf mismatch: got {got.hex()}"
    raise ParseError(f"unknown kind {case.kind!r}")


def run_case(case, hooks):
    """Execute one case; returns (ok, detail).

    Boolean kinds (verify, pubkey_validate) must return a bool: True for
    an expected hex map with valid = "01", False for FAIL; a raise there
    is a defect.  Valued kinds expecting FAIL must raise an EcError;
    returning anything is a defect.
    """
    boolean = case.kind in ("verify", "pubkey_validate")
    try:
        got = _dispatch(case, hooks)
    except EcError as ex:
        if _expects_failure(case) and not boolean:
            return True, ""
        return False, f"unexpected {type(ex).__name__}: {ex}"
    if boolean:
        want = not _expects_failure(case)
        ok = bool(got) == want
        return ok, "" if ok else (
            "expected FAIL, got success" if not want else
            f"returned {got}, wanted {want}")
    if _expects_failure(case):
        return False, "expected FAIL, got success"
    ok, detail = _compare(case, got)
    return ok, "" if ok else detail


def run_suite(cases, hooks=None):
    """Run every case; returns a list of (case, ok, detail) triples."""
    hooks = hooks or LibraryHooks()
    return [(case, *run_case(case, hooks)) for case in cases]


def emit_tap(results):
    lines = [f"1..{len(results)}"]
    for i, (case, ok, detail) in enumerate(results, 1):
        if ok:
            lines.append(f"ok {i} - {case.id}")
        else:
            suffix = f" # {detail}" if detail else ""
            lines.append(f"not ok {i} - {case.id}{suffix}")
    return "\n".join(lines) + "\n"


def emit_results_json(results):
    doc = {"total": len(results),
           "failed": sum(1 for _, ok, _ in results if not ok),
           "results": [{"id": c.id, "ok": ok, "detail": d}
                       for c, ok, d in results]}
    return json.dumps(doc, indent=1)
