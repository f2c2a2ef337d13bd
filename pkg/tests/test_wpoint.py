import random

import pytest

from ctecc import oracle, wpoint
from ctecc.affine import IDENTITY, AffinePoint
from ctecc.errors import InvalidPoint

from conftest import get

SAMPLE = ("secp256r1", "secp256k1", "brainpoolP256t1",
          "id_GostR3410_2001_TestParamSet", "secp521r1")


def rand_point(cv, rng):
    k = rng.randrange(1, cv.q)
    return oracle.oracle_mul(k, cv.gen, cv.p, cv.desc.a, cv.desc.b)


def norm(cv, P):
    return wpoint.normalize(cv, P)


@pytest.mark.parametrize("name", SAMPLE)
def test_add_dbl_mixed_match_reference(name):
    cv = get(name)
    rng = random.Random(hash(name) & 0xFFFF)
    for _ in range(25):
        A, B = rand_point(cv, rng), rand_point(cv, rng)
        Pa, Pb = wpoint.lift(cv, A), wpoint.lift(cv, B)
        want = oracle.oracle_add(A, B, cv.p, cv.desc.a, cv.desc.b)
        assert norm(cv, wpoint.add(cv, Pa, Pb)) == want
        entry = wpoint.entry_from_affine(cv, B)
        assert norm(cv, wpoint.add_mixed(cv, Pa, entry)) == want
        want2 = oracle.oracle_add(A, A, cv.p, cv.desc.a, cv.desc.b)
        assert norm(cv, wpoint.dbl(cv, Pa)) == want2
        assert norm(cv, wpoint.add(cv, Pa, Pa)) == want2


@pytest.mark.parametrize("name", ("secp256r1", "brainpoolP320t1"))
def test_identity_and_negation_edge_cases(name):
    cv = get(name)
    g = cv.gen
    Pg = wpoint.lift(cv, g)
    O = wpoint.identity(cv)
    assert norm(cv, wpoint.add(cv, Pg, O)) == g
    assert norm(cv, wpoint.add(cv, O, Pg)) == g
    assert norm(cv, wpoint.add(cv, O, O)) == IDENTITY
    assert norm(cv, wpoint.dbl(cv, O)) == IDENTITY
    assert norm(cv, wpoint.add(cv, Pg, wpoint.neg(cv, Pg))) == IDENTITY
    id_entry = wpoint.entry_from_affine(cv, IDENTITY)
    assert norm(cv, wpoint.add_mixed(cv, Pg, id_entry)) == g
    ng = oracle.oracle_neg(g, cv.p)
    ng_entry = wpoint.entry_from_affine(cv, ng)
    assert norm(cv, wpoint.add_mixed(cv, Pg, ng_entry)) == IDENTITY


def test_projective_predicates_ignore_scaling():
    cv = get("secp256r1")
    F = cv.fp
    rng = random.Random(3)
    P = wpoint.lift(cv, rand_point(cv, rng))
    lam = F.enc(rng.randrange(2, cv.p))
    scaled = tuple(F.mul(c, lam) for c in P)
    assert wpoint.on_curve_proj(cv, P)
    assert wpoint.on_curve_proj(cv, scaled)
    assert wpoint.eq_proj(cv, P, scaled)
    assert not wpoint.eq_proj(cv, P, wpoint.dbl(cv, P))
    assert norm(cv, scaled) == norm(cv, P)
    bad = (P[0], F.add(P[1], F.one), P[2])
    assert not wpoint.on_curve_proj(cv, bad)


def test_check_affine_rejects_garbage():
    cv = get("secp256r1")
    g = cv.gen
    wpoint.check_affine(cv, g)
    wpoint.check_affine(cv, IDENTITY)
    with pytest.raises(InvalidPoint):
        wpoint.check_affine(cv, AffinePoint(g.x, g.y + 1))
    with pytest.raises(InvalidPoint):
        wpoint.check_affine(cv, AffinePoint(cv.p, 1))
    with pytest.raises(InvalidPoint):
        wpoint.check_affine(cv, AffinePoint(-1, 1))


def test_table_lookup_fetches_and_negates():
    cv = get("secp256k1")
    rng = random.Random(9)
    pts = [rand_point(cv, rng) for _ in range(8)]
    xs = tuple(cv.fp.enc(P.x) for P in pts)
    ys = tuple(cv.fp.enc(P.y) for P in pts)
    for idx in (0, 3, 7):
        x, y = wpoint.table_lookup(cv, xs, ys, idx, 0)
        assert (cv.fp.dec(x), cv.fp.dec(y)) == (pts[idx].x, pts[idx].y)
        x, y = wpoint.table_lookup(cv, xs, ys, idx, 1)
        assert cv.fp.dec(y) == (cv.p - pts[idx].y) % cv.p


def test_batch_normalize_matches_individual():
    cv = get("secp384r1")
    rng = random.Random(11)
    pts = [wpoint.lift(cv, rand_point(cv, rng)) for _ in range(6)]
    doubled = [wpoint.dbl(cv, P) for P in pts]
    flat = wpoint.batch_normalize(cv, doubled)
    F = cv.fp
    got = [AffinePoint(F.dec(x), F.dec(y)) for x, y in flat]
    assert got == [norm(cv, P) for P in doubled]
