import random

import pytest

from ctecc import instrumentation as ins
from ctecc import oracle, scalarmul
from ctecc.affine import IDENTITY, AffinePoint
from ctecc.errors import OutOfRange

from conftest import get

CURVE_MIX = ("secp256r1", "secp256k1", "brainpoolP192t1",
             "id_tc26_gost_3410_2012_256_paramSetA", "Wei25519")


def ref_mul(cv, k, P=None):
    P = cv.gen if P is None else P
    return oracle.oracle_mul(k, P, cv.p, cv.desc.a, cv.desc.b)


# ---------------------------------------------------------------- recoding

def test_recoding_reconstructs_every_scalar():
    rng = random.Random(0x5EED)
    for w in (2, 3, 5, 7):
        for k in [1, 2, 3, (1 << 64) - 1] + [rng.randrange(1, 1 << 192)
                                             for _ in range(60)]:
            rec = scalarmul.recode_regular_naf(k, w=w, nbits=k.bit_length())
            assert rec.value() == k
            half = 1 << (w - 1)
            for d in rec.digits[:-1]:
                assert d % 2 == 1 and -2 * half < d < 2 * half
            assert rec.digits[-1] >= 1


def test_recoding_pads_to_a_requested_length():
    k = 0xDEADBEEF
    short = scalarmul.recode_regular_naf(k, w=5, nbits=32)
    longer = scalarmul.recode_regular_naf(k, w=5, n_digits=len(short.digits) + 4)
    assert longer.value() == k
    assert len(longer.digits) == len(short.digits) + 4


def test_digit_count_covers_the_signed_top_digit():
    # one digit more than nbits/w whenever w divides nbits exactly
    assert scalarmul.digit_count(256, 5) == 52
    assert scalarmul.digit_count(255, 5) == 52
    assert scalarmul.digit_count(250, 5) == 51
    assert scalarmul.digit_count(521, 5) == 105


# ---------------------------------------------------------------- strategies

@pytest.mark.parametrize("name", CURVE_MIX)
def test_three_strategies_agree_with_reference(name):
    cv = get(name)
    rng = random.Random(name.encode()[0])
    P = ref_mul(cv, rng.randrange(1, cv.q))
    for _ in range(8):
        k = rng.randrange(1, cv.q)
        l = rng.randrange(1, cv.q)
        want_g = ref_mul(cv, k)
        assert scalarmul.mul_fixedbase(cv, k) == want_g
        assert scalarmul.mul_varbase(cv, cv.gen, k) == want_g
        want_p = ref_mul(cv, l, P)
        assert scalarmul.mul_varbase(cv, P, l) == want_p
        want_d = oracle.oracle_add(want_g, want_p, cv.p, cv.desc.a, cv.desc.b)
        assert scalarmul.mul_double(cv, k, P, l) == want_d


def test_scalar_range_is_enforced():
    cv = get("secp256r1")
    for bad in (-1, cv.q, cv.q + 1):
        with pytest.raises(OutOfRange):
            scalarmul.mul_varbase(cv, cv.gen, bad)
        with pytest.raises(OutOfRange):
            scalarmul.mul_fixedbase(cv, bad)
    assert scalarmul.mul_varbase(cv, cv.gen, 0) == IDENTITY
    assert scalarmul.mul_fixedbase(cv, 0) == IDENTITY
    assert scalarmul.mul_varbase(cv, IDENTITY, 5) == IDENTITY


def test_wide_multiplication_takes_unreduced_scalars():
    cv = get("id_tc26_gost_3410_2012_256_paramSetA")
    g = cv.gen
    rng = random.Random(77)
    for _ in range(6):
        m = rng.randrange(0, cv.h * cv.q)
        assert scalarmul.mul_wide(cv, g, m) == ref_mul(cv, m)
    assert scalarmul.mul_wide(cv, g, cv.q) == IDENTITY
    with pytest.raises(OutOfRange):
        scalarmul.mul_wide(cv, g, -1)
    with pytest.raises(OutOfRange):
        scalarmul.mul_wide(cv, g, 1 << (cv.qbits + 4))


def test_cofactor_scalar_helper():
    assert scalarmul.clear_cofactor_scalar(10, 1) == 10
    assert scalarmul.clear_cofactor_scalar(10, 4) == 40
    assert scalarmul.clear_cofactor_scalar(10, 8) == 80
    with pytest.raises(ValueError):
        scalarmul.clear_cofactor_scalar(10, 3)


@pytest.mark.parametrize("name", ("id_tc26_gost_3410_2012_256_paramSetA",
                                  "id_tc26_gost_3410_2012_512_paramSetC"))
def test_small_order_bases_are_handled_exactly(name):
    cv = get(name)
    desc = cv.desc
    S = oracle.oracle_mul(desc.q, desc.test_fullgen, cv.p, desc.a, desc.b)
    assert not S.is_identity  # order h
    pts = {0: IDENTITY}
    cur = S
    for i in range(1, desc.h):
        pts[i] = cur
        cur = oracle.oracle_add(cur, S, cv.p, desc.a, desc.b)
    rng = random.Random(5)
    for _ in range(10):
        k = rng.randrange(0, cv.q)
        assert scalarmul.mul_varbase(cv, S, k) == pts[k % desc.h]
        m = rng.randrange(0, cv.h * cv.q)
        assert scalarmul.mul_wide(cv, S, m) == pts[m % desc.h]


def test_varbase_rejects_points_off_the_curve():
    cv = get("secp256r1")
    from ctecc.errors import InvalidPoint
    with pytest.raises(InvalidPoint):
        scalarmul.mul_varbase(cv, AffinePoint(cv.gen.x, cv.gen.y ^ 1), 5)


# ---------------------------------------------------------------- comb table

def test_comb_table_entries_are_the_advertised_multiples():
    cv = get("secp256r1")
    comb = cv.comb
    assert comb.table_bytes <= scalarmul.TABLE_BUDGET
    assert comb.cols * comb.beta >= comb.n_digits
    half = 1 << (comb.w - 1)
    rng = random.Random(21)
    for j in (0, comb.beta - 1):
        stride = 1 << (comb.w * j * comb.cols)
        for i in (0, half - 1, rng.randrange(half)):
            want = ref_mul(cv, (2 * i + 1) * stride % cv.q)
            x = cv.fp.dec(comb.teeth_x[j][i])
            y = cv.fp.dec(comb.teeth_y[j][i])
            assert AffinePoint(x, y) == want


def test_fixedbase_falls_back_for_other_bases():
    cv = get("secp256k1")
    P = ref_mul(cv, 1234567)
    k = 987654321
    assert scalarmul.mul_fixedbase(cv, k, base=P) == ref_mul(cv, k, P)


# ---------------------------------------------------------------- regularity

@pytest.mark.parametrize("name", ("secp256r1", "Wei25519"))
def test_operation_counts_do_not_depend_on_the_scalar(name):
    cv = get(name)
    rng = random.Random(31)
    scalars = [1, 2, cv.q - 1, cv.q // 2] + [rng.randrange(1, cv.q)
                                             for _ in range(12)]
    P = ref_mul(cv, 0xABCDEF)

    def profile(fn):
        shapes = set()
        for k in scalars:
            with ins.counting() as c:
                fn(k)
            shapes.add((c.point_add, c.point_dbl, c.table_touch,
                        c.fp_mul, c.fp_sqr, c.fp_inv))
        return shapes

    assert len(profile(lambda k: scalarmul.mul_varbase(cv, P, k))) == 1
    assert len(profile(lambda k: scalarmul.mul_fixedbase(cv, k))) == 1


def test_pure_backend_agrees_with_compiled_end_to_end():
    from ctecc import curves, protocols
    fast = curves.get_curve("secp256r1", backend="compiled")
    slow = curves.get_curve("secp256r1", backend="pure")
    rng = random.Random(401)
    for k in (1, fast.q - 1, rng.randrange(1, fast.q)):
        assert (scalarmul.mul_varbase(fast, fast.gen, k)
                == scalarmul.mul_varbase(slow, slow.gen, k))
        assert (scalarmul.mul_fixedbase(fast, k)
                == scalarmul.mul_fixedbase(slow, k))
    sk = rng.randrange(1, fast.q)
    sig_f = protocols.ecdsa_sign(fast, sk, b"backend parity")
    sig_s = protocols.ecdsa_sign(slow, sk, b"backend parity")
    assert sig_f == sig_s


def test_double_mul_is_flagged_as_variable_time():
    cv = get("secp256r1")
    k = 12345
    P = ref_mul(cv, 777)
    with ins.secret_scope():
        with pytest.raises(AssertionError):
            scalarmul.mul_double(cv, k, P, 678)
    with ins.counting() as c:
        scalarmul.mul_double(cv, k, P, 678)
    assert c.mul_double_calls == 1
