"""Acceptance gate.

One test per shipping criterion, each at its stated tolerance.  Every
group-level expectation is recomputed through the slow affine reference
in oracle.py (or plain integer arithmetic), never through the code under
test, so a bug cannot hide by agreeing with itself.
"""

import hashlib
import hmac
import random
import time

import pytest

from ctecc import bench, curves, instrumentation as ins
from ctecc import katgen, oracle, protocols, scalarmul, tepoint, wpoint
from ctecc.affine import IDENTITY, AffinePoint
from ctecc.errors import SmallSubgroupResult

import mutants
from conftest import ALL_CURVES, TE_CURVES, get

EXTREME_SPAN = 256
RANDOM_SCALARS = 256
CT_SCALARS = 100
PERF_REPS = 1000
PERF_SLACK = 1.10

GOST_H4_TE = ("id_tc26_gost_3410_2012_256_paramSetA",
              "id_tc26_gost_3410_2012_512_paramSetC")
NIST = ("secp192r1", "secp256r1", "secp384r1", "secp521r1")


def ref(cv, k, P=None):
    P = cv.gen if P is None else P
    return oracle.oracle_mul(k, P, cv.p, cv.desc.a, cv.desc.b)


def ref_add(cv, A, B):
    return oracle.oracle_add(A, B, cv.p, cv.desc.a, cv.desc.b)


# --------------------------------------------------------------------------
# 1. all three strategies agree with the reference on every curve,
#    256 random scalars plus the full extreme bands, within five minutes


def test_strategies_match_reference_on_all_curves_within_budget():
    started = time.monotonic()
    for name in ALL_CURVES:
        cv = get(name)
        rng = random.Random(hashlib.sha256(name.encode()).digest())
        P = ref(cv, rng.randrange(1, cv.q))

        ks = [rng.randrange(1, cv.q) for _ in range(RANDOM_SCALARS)]
        want_g = {}
        want_p = {}
        for k in ks:
            want_g[k] = ref(cv, k)
            want_p[k] = ref(cv, k, P)
            assert scalarmul.mul_fixedbase(cv, k) == want_g[k], (name, k)
            assert scalarmul.mul_varbase(cv, cv.gen, k) == want_g[k], (name, k)
            assert scalarmul.mul_varbase(cv, P, k) == want_p[k], (name, k)
        for i, k in enumerate(ks):
            l = ks[(i + 7) % len(ks)]
            want = ref_add(cv, want_g[k], want_p[l])
            assert scalarmul.mul_double(cv, k, P, l) == want, (name, k, l)

        # extreme bands: [1, 256) and [q-256, q), exercised end to end;
        # the high band is checked against the negated small multiple
        lows = list(range(1, EXTREME_SPAN))
        for j in lows:
            want = ref(cv, j)
            assert scalarmul.mul_fixedbase(cv, j) == want, (name, j)
            assert scalarmul.mul_varbase(cv, cv.gen, j) == want, (name, j)
        for j in range(1, EXTREME_SPAN + 1):
            k = cv.q - j
            want = oracle.oracle_neg(ref(cv, j), cv.p)
            assert scalarmul.mul_fixedbase(cv, k) == want, (name, k)
            assert scalarmul.mul_varbase(cv, cv.gen, k) == want, (name, k)
        for j in rng.sample(lows, 8) + [cv.q - j for j in rng.sample(lows, 8)]:
            want = ref_add(cv, ref(cv, j), want_p[ks[0]])
            assert scalarmul.mul_double(cv, j, P, ks[0]) == want, (name, j)

    elapsed = time.monotonic() - started
    assert elapsed < 300, f"equivalence sweep took {elapsed:.0f}s"


# --------------------------------------------------------------------------
# 2. the exceptional-pair matrix is handled exactly, on both internal models


def _matrix_points(cv):
    g = cv.gen
    return (IDENTITY, g, oracle.oracle_neg(g, cv.p), ref(cv, 2))


@pytest.mark.parametrize("name", ALL_CURVES)
def test_exceptional_pairs_weierstrass(name):
    cv = get(name)
    pts = _matrix_points(cv)
    for A in pts:
        for B in pts:
            want = ref_add(cv, A, B)
            got = wpoint.add(cv, wpoint.lift(cv, A), wpoint.lift(cv, B))
            assert wpoint.normalize(cv, got) == want, (A, B)
            entry = wpoint.entry_from_affine(cv, B)
            mixed = wpoint.add_mixed(cv, wpoint.lift(cv, A), entry)
            assert wpoint.normalize(cv, mixed) == want, (A, B)
        want2 = ref_add(cv, A, A)
        assert wpoint.normalize(cv, wpoint.dbl(cv, wpoint.lift(cv, A))) == want2


@pytest.mark.parametrize("name", TE_CURVES)
def test_exceptional_pairs_edwards(name):
    cv = get(name)
    pts = _matrix_points(cv)
    lifted = []
    for A in pts:
        E, bad = tepoint.map_w_to_te_checked(cv, wpoint.lift(cv, A))
        assert bad == 0  # all four are odd-order or identity
        lifted.append(E)
    for A, Ea in zip(pts, lifted):
        for B, Eb in zip(pts, lifted):
            want = ref_add(cv, A, B)
            got = tepoint.add(cv, Ea, Eb)
            back = scalarmul._te_result_to_affine(cv, got)
            assert back == want, (A, B)
        want2 = ref_add(cv, A, A)
        assert scalarmul._te_result_to_affine(cv, tepoint.dbl(cv, Ea)) == want2


# --------------------------------------------------------------------------
# 3. a curve whose field carries x = 0 points: full cycle against the oracle


def test_x_zero_point_full_cycle():
    cv = get("id_GostR3410_2001_CryptoPro_C_ParamSet")
    desc = cv.desc
    y0 = oracle.sqrt_mod(desc.b, desc.p)
    assert y0 is not None, "curve must have a point with x = 0"
    P0 = AffinePoint(0, min(y0, desc.p - y0))
    assert oracle.on_curve(P0, desc.p, desc.a, desc.b)
    wpoint.check_affine(cv, P0)

    rng = random.Random(0x0C)
    for k in [1, 2, 3, cv.q - 1] + [rng.randrange(1, cv.q) for _ in range(24)]:
        want = ref(cv, k, P0)
        assert scalarmul.mul_varbase(cv, P0, k) == want, k
        assert scalarmul.mul_fixedbase(cv, k, base=P0) == want, k
        l = rng.randrange(1, cv.q)
        want_d = ref_add(cv, ref(cv, l), want)
        assert scalarmul.mul_double(cv, l, P0, k) == want_d, (l, k)

    # wire format: x = 0 serializes as a full-width zero coordinate
    blob = protocols.point_encode(cv, P0)
    assert blob[1:1 + cv.fp.nbytes] == b"\x00" * cv.fp.nbytes
    assert protocols.point_decode(cv, blob) == P0

    # protocol cycle with the x = 0 point as the peer
    kp = protocols.keygen(cv, rng=protocols.DetRng(0xC0))
    assert kp.pk == ref(cv, kp.sk)
    shared = protocols.ecdh_derive(cv, kp.sk, P0)
    assert shared == ref(cv, cv.h * kp.sk, P0).x.to_bytes(cv.fp.nbytes, "big")

    sig = protocols.ecdsa_sign(cv, kp.sk, b"x0 cycle", k=0xD00D)
    R = ref(cv, 0xD00D)
    z = protocols._bits2int(cv, hashlib.sha256(b"x0 cycle").digest()) % cv.q
    r = R.x % cv.q
    s = pow(0xD00D, -1, cv.q) * (z + r * kp.sk) % cv.q
    assert (sig.r, sig.s) == (r, s)
    assert protocols.ecdsa_verify(cv, kp.pk, b"x0 cycle", sig)

    # the generated KAT suite carries regression cases for this curve
    cases = [c for c in katgen.generate_suite(desc, seed=5, n=4)
             if c.source == "x0-regression"]
    assert cases
    assert all(ok for _, ok, _ in katgen.run_suite(cases))


# --------------------------------------------------------------------------
# 4. small-subgroup peers are rejected where the legacy formula leaks


@pytest.mark.parametrize("name", GOST_H4_TE + ("MDCurve201601",))
def test_small_subgroup_rejection_and_legacy_contrast(name):
    cv = get(name)
    assert cv.h == 4
    S = oracle.find_small_subgroup_point(cv.desc)
    assert ref(cv, cv.h, S).is_identity
    sk = protocols.keygen(cv, rng=protocols.DetRng(name.encode())).sk
    ukm = 0x1D

    with pytest.raises(SmallSubgroupResult):
        protocols.ecdh_derive(cv, sk, S)
    with pytest.raises(SmallSubgroupResult):
        protocols.vko_derive(cv, sk, S, ukm=ukm)

    # legacy shape: everything reduced mod q before the group operation,
    # so the cofactor never annihilates the small component
    m_legacy = cv.h * ukm * sk % cv.q
    assert m_legacy % cv.h != 0  # this instance does not collapse
    R = scalarmul.mul_varbase(cv, S, m_legacy)
    assert not R.is_identity
    n = cv.fp.nbytes
    legacy_key = hashlib.sha256(
        R.x.to_bytes(n, "big") + R.y.to_bytes(n, "big")).digest()

    # ... and the "secret" it derives lives in a three-element set
    low_entropy = set()
    for j in range(1, cv.h):
        T = ref(cv, j, S)
        low_entropy.add(hashlib.sha256(
            T.x.to_bytes(n, "big") + T.y.to_bytes(n, "big")).digest())
    assert legacy_key in low_entropy


# --------------------------------------------------------------------------
# 5. stored twist group orders satisfy h*q + h_t*q_t = 2(p + 1) exactly


@pytest.mark.parametrize("name", GOST_H4_TE)
def test_twist_order_identity_is_bit_exact(name):
    desc = curves.default_database()[name]
    assert desc.twist is not None
    assert desc.h == 4 and desc.twist.h_t == 4
    lhs = desc.h * desc.q + desc.twist.h_t * desc.twist.q_t
    assert lhs == 2 * (desc.p + 1)
    assert curves._probable_prime(desc.twist.q_t)
    assert curves.validate_twist(desc)


# --------------------------------------------------------------------------
# 6. deterministic signing equals an independent nonce chain pushed
#    through the reference group math


def _rfc6979_k(q, sk, h1, hash_name):
    """Nonce derivation rebuilt from scratch (no library code)."""
    hlen = hashlib.new(hash_name).digest_size
    qbits = q.bit_length()
    qbytes = (qbits + 7) // 8

    def bits2int(data):
        x = int.from_bytes(data, "big")
        extra = len(data) * 8 - qbits
        return x >> extra if extra > 0 else x

    def mac(key, msg):
        return hmac.new(key, msg, hash_name).digest()

    x_oct = sk.to_bytes(qbytes, "big")
    h_oct = (bits2int(h1) % q).to_bytes(qbytes, "big")
    V = b"\x01" * hlen
    K = b"\x00" * hlen
    K = mac(K, V + b"\x00" + x_oct + h_oct)
    V = mac(K, V)
    K = mac(K, V + b"\x01" + x_oct + h_oct)
    V = mac(K, V)
    while True:
        T = b""
        while len(T) < qbytes:
            V = mac(K, V)
            T += V
        k = bits2int(T)
        if 1 <= k < q:
            return k
        K = mac(K, V + b"\x00")
        V = mac(K, V)


def test_deterministic_signing_matches_independent_chain():
    # published anchors first: P-256 with SHA-256
    cv = get("secp256r1")
    sk = 0xC9AFA9D845BA75166B5C215767B1D6934E50C3DB36E89B127B8A622B120F6721
    sig = protocols.ecdsa_sign(cv, sk, b"sample", hash_name="sha256")
    assert sig.r == 0xEFD48B2AACB6A8FD1140DD9CD45E81D69D2C877B56AAF991C34D0EA84EAF3716
    assert sig.s == 0xF7CB1C942D657C41D436C7A1B6E29F65F3E900DBB9AFF4064DC4AB2F843ACDA8
    sig = protocols.ecdsa_sign(cv, sk, b"test", hash_name="sha256")
    assert sig.r == 0xF1ABB023518351CD71D881567B1EA663ED3EFCF6C5132B354F28D3B0B7D38367
    assert sig.s == 0x019F4113742A2B14BD25926B49C649155F267E60D3814B4C0CC84250E46F0083

    # every carried NIST curve: rebuild k locally, push it through the
    # reference scalar multiplication, finish with integer arithmetic
    for name in NIST:
        cv = get(name)
        hash_name = protocols.default_hash(cv)
        sk = 0xC9AFA9D845BA75166B5C215767B1D6934E50C3DB36E89B127B8A622B120F6721 % cv.q
        for msg in (b"sample", b"test", b"third message"):
            h1 = hashlib.new(hash_name, msg).digest()
            k = _rfc6979_k(cv.q, sk, h1, hash_name)
            R = ref(cv, k)
            r = R.x % cv.q
            assert r != 0
            hb = int.from_bytes(h1, "big")
            extra = len(h1) * 8 - cv.qbits
            z = (hb >> extra if extra > 0 else hb) % cv.q
            s = pow(k, -1, cv.q) * (z + r * sk) % cv.q
            sig = protocols.ecdsa_sign(cv, sk, msg, hash_name=hash_name)
            assert (sig.r, sig.s) == (r, s), (name, msg)


# --------------------------------------------------------------------------
# 7. operation counts are a function of the curve, never of the scalar


def test_operation_counts_are_scalar_independent_everywhere():
    for name in ALL_CURVES:
        cv = get(name)
        rng = random.Random(hashlib.sha256(b"ct" + name.encode()).digest())
        P = ref(cv, rng.randrange(1, cv.q))
        scalars = [1, 2, cv.q - 1, cv.q // 2]
        scalars += [rng.randrange(1, cv.q) for _ in range(CT_SCALARS - 4)]

        var_shapes = set()
        fix_shapes = set()
        for k in scalars:
            with ins.counting() as c:
                scalarmul.mul_varbase(cv, P, k)
            var_shapes.add((c.point_add, c.point_dbl, c.table_touch,
                            c.fp_mul, c.fp_sqr, c.fp_inv, c.fp_select))
            with ins.counting() as c:
                scalarmul.mul_fixedbase(cv, k)
            fix_shapes.add((c.point_add, c.point_dbl, c.table_touch,
                            c.fp_mul, c.fp_sqr, c.fp_inv, c.fp_select))
        assert len(var_shapes) == 1, (name, sorted(var_shapes))
        assert len(fix_shapes) == 1, (name, sorted(fix_shapes))


# --------------------------------------------------------------------------
# 8. performance shape on a 256-bit curve: the comb clearly beats the
#    generic ladder, and the two-scalar path stays near one ladder


def test_performance_shape_on_a_256_bit_curve():
    cv = get("secp256r1")
    rng = random.Random(88)
    scalars = [rng.randrange(1, cv.q) for _ in range(64)]
    P = ref(cv, scalars[0])
    state = {"i": 0}

    def next_k():
        state["i"] += 1
        return scalars[state["i"] % len(scalars)]

    t_fix = bench.measure(lambda: scalarmul.mul_fixedbase(cv, next_k()),
                          reps=PERF_REPS)["median_ns"]
    t_var = bench.measure(lambda: scalarmul.mul_varbase(cv, P, next_k()),
                          reps=PERF_REPS)["median_ns"]
    t_dbl = bench.measure(
        lambda: scalarmul.mul_double(cv, next_k(), P, next_k()),
        reps=PERF_REPS)["median_ns"]

    assert t_fix <= 0.7 * PERF_SLACK * t_var, (t_fix, t_var)
    assert t_dbl <= 1.5 * PERF_SLACK * t_var, (t_dbl, t_var)


# --------------------------------------------------------------------------
# 9. the generated KAT suite passes clean and catches every mutant


def test_kat_suite_passes_and_catches_all_mutants():
    db = curves.default_database()
    suite = []
    for name in ("secp256r1", "id_tc26_gost_3410_2012_256_paramSetA",
                 "id_GostR3410_2001_CryptoPro_C_ParamSet"):
        suite.extend(katgen.generate_suite(db[name], seed=11, n=16))

    results = katgen.run_suite(suite, katgen.LibraryHooks())
    failures = [(c.id, d) for c, ok, d in results if not ok]
    assert not failures, failures[:5]

    expected_marks = {
        mutants.CofactorSkippedDerive: "derive",
        mutants.OrderCheckSkippedValidate: "pubkey_validate",
        mutants.ZeroDigestGostSign: "sign",
    }
    for M, kind in expected_marks.items():
        res = katgen.run_suite(suite, M())
        caught = [c for c, ok, _ in res if not ok]
        assert caught, f"{M.__name__} survived the suite"
        assert any(c.kind == kind for c in caught), M.__name__
