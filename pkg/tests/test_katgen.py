import json
import random

import pytest

from ctecc import curves, katgen, oracle
from ctecc.affine import IDENTITY
from ctecc.errors import ParseError

import mutants


def small_suite(names=("secp256r1",), seed=3, n=4):
    db = curves.default_database()
    cases = []
    for name in names:
        cases.extend(katgen.generate_suite(db[name], seed=seed, n=n))
    return cases


def test_generated_suite_is_well_formed():
    cases = small_suite(("secp256r1", "id_tc26_gost_3410_2012_256_paramSetA"))
    ids = [c.id for c in cases]
    assert len(ids) == len(set(ids))
    assert {c.kind for c in cases} <= set(katgen.KINDS)
    assert {c.source for c in cases} <= set(katgen.SOURCES)
    assert {c.curve for c in cases} == {"secp256r1",
                                        "id_tc26_gost_3410_2012_256_paramSetA"}
    # same seed, same suite
    again = small_suite(("secp256r1", "id_tc26_gost_3410_2012_256_paramSetA"))
    assert cases == again


def test_suite_round_trips_through_json():
    cases = small_suite(n=2)
    text = katgen.emit_json(cases)
    doc = json.loads(text)
    assert doc["format"] == "ecckat" and doc["version"] == 1
    assert katgen.load_cases(text) == cases


def test_suite_runs_clean_and_tap_is_well_formed():
    cases = small_suite(n=3)
    results = katgen.run_suite(cases)
    assert all(ok for _, ok, _ in results)
    tap = katgen.emit_tap(results)
    lines = tap.strip().splitlines()
    assert lines[0] == f"1..{len(cases)}"
    assert all(l.startswith("ok ") for l in lines[1:])

    doc = json.loads(katgen.emit_results_json(results))
    assert doc["total"] == len(cases) and doc["failed"] == 0


def test_failing_cases_show_up_as_not_ok():
    cases = small_suite(n=2)
    broken = [c for c in cases if c.kind == "keygen"][0]
    broken.expected["Qx"] = "00"
    results = katgen.run_suite(cases)
    failed = [(i, c) for i, (c, ok, _) in enumerate(results, 1) if not ok]
    assert len(failed) == 1
    i, c = failed[0]
    tap = katgen.emit_tap(results)
    assert f"not ok {i} - {c.id} # " in tap


def test_every_mutant_is_caught():
    cases = small_suite(("secp256r1", "id_tc26_gost_3410_2012_256_paramSetA"),
                        n=3)
    assert all(ok for _, ok, _ in katgen.run_suite(cases))
    for M in mutants.ALL_MUTANTS:
        results = katgen.run_suite(cases, M())
        assert any(not ok for _, ok, _ in results), M.__name__


def test_loader_rejects_malformed_suites():
    good = json.loads(katgen.emit_json(small_suite(n=1)))
    with pytest.raises(ParseError, match="JSON"):
        katgen.load_cases("{nope")
    with pytest.raises(ParseError, match="format"):
        katgen.load_cases(json.dumps({"format": "other", "version": 1,
                                      "cases": []}))
    bad = dict(good, version=2)
    with pytest.raises(ParseError, match="version"):
        katgen.load_cases(json.dumps(bad))
    bad = dict(good, cases=[{**good["cases"][0], "kind": "exotic"}])
    with pytest.raises(ParseError, match="kind"):
        katgen.load_cases(json.dumps(bad))
    entry = {k: v for k, v in good["cases"][0].items() if k != "inputs"}
    bad = dict(good, cases=[entry])
    with pytest.raises(ParseError, match="missing"):
        katgen.load_cases(json.dumps(bad))
    bad = dict(good, cases=[{**good["cases"][0], "expected": "BROKEN"}])
    with pytest.raises(ParseError, match="hex map"):
        katgen.load_cases(json.dumps(bad))


def test_rejection_cases_use_the_fail_marker():
    cases = small_suite(("id_tc26_gost_3410_2012_256_paramSetA",), n=2)
    negatives = [c for c in cases if c.source in ("generated-negative",
                                                  "small-subgroup")]
    assert negatives
    assert all(c.expected == "FAIL" for c in negatives)
    doc = json.loads(katgen.emit_json(negatives))
    assert all(item["expected"] == "FAIL" for item in doc["cases"])


def test_identity_points_serialize_as_empty_fields():
    fields = katgen._point_fields(IDENTITY, 32)
    assert fields == {"Qx": "", "Qy": ""}
    case = katgen.KatCase(id="t", curve="secp256r1", kind="pubkey_validate",
                          source="generated-negative", inputs=fields,
                          expected=katgen.FAIL)
    assert katgen._in_subject(case) == IDENTITY


def cavp_fixture():
    """Response-file text with true P-256 values and one foreign section."""
    db = curves.default_database()
    desc = db["secp256r1"]
    rng = random.Random(0xCAFE)
    lines = [
        "# synthetic response file",
        "# vectors recomputed from scratch",
        "",
        "[P-256]",
        "",
    ]
    for i in range(3):
        sk = rng.randrange(1, desc.q)
        t = rng.randrange(1, desc.q)
        peer = oracle.oracle_mul(t, desc.generator, desc.p, desc.a, desc.b)
        z = oracle.oracle_mul(sk, peer, desc.p, desc.a, desc.b)
        lines += [
            f"COUNT = {i}",
            f"QCAVSx = {peer.x:064x}",
            f"QCAVSy = {peer.y:064x}",
            f"dIUT = {sk:064x}",
            f"QIUTx = {0:064x}",
            f"ZIUT = {z.x:064x}",
            "",
        ]
    lines += [
        "[K-233]",
        "COUNT = 0",
        "QCAVSx = 0abc",
        "QCAVSy = 0abc",
        "dIUT = 0abc",
        "ZIUT = 0abc",
        "",
    ]
    return "\n".join(lines)


def test_cavp_parse_and_run():
    cases, skipped = katgen.parse_cavp(cavp_fixture())
    assert len(cases) == 3
    assert skipped == 1
    assert all(c.kind == "derive" and c.source == "cavp" for c in cases)
    assert all(c.curve == "secp256r1" for c in cases)
    results = katgen.run_suite(cases)
    assert all(ok for _, ok, _ in results)


def test_cavp_parse_errors_name_the_line():
    with pytest.raises(ParseError, match="line 3"):
        katgen.parse_cavp("[P-256]\nCOUNT = 0\nnonsense\n")
    with pytest.raises(ParseError, match="unterminated"):
        katgen.parse_cavp("[P-256\n")
    with pytest.raises(ParseError, match="hexadecimal"):
        katgen.parse_cavp("[P-256]\nCOUNT = 0\ndIUT = xyz\n")
    truncated = "\n".join([
        "[P-256]",
        "COUNT = 0",
        "dIUT = 0a",
        "QCAVSx = 0a",
        "QCAVSy = 0a",
    ])
    with pytest.raises(ParseError, match="missing"):
        katgen.parse_cavp(truncated)
