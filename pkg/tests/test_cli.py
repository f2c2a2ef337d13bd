import json

import pytest

from ctecc import cli, katgen


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_list_curves(capsys):
    code, out, _ = run(capsys, "list-curves")
    assert code == 0
    assert "secp256r1" in out and "MDCurve201601" in out
    code, out, _ = run(capsys, "list-curves", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert len(doc) == 23
    assert {"name", "pbits", "qbits", "h", "class", "model"} <= set(doc[0])


def test_keygen_sign_verify_cycle(capsys, tmp_path):
    code, out, _ = run(capsys, "keygen", "--curve", "secp256r1",
                       "--rng-seed", "aa55")
    assert code == 0
    key = json.loads(out)

    code, sig_hex, _ = run(capsys, "sign", "--curve", "secp256r1",
                           "--key", key["sk"], "--msg", "00112233")
    assert code == 0
    sig_hex = sig_hex.strip()
    assert len(sig_hex) == 128

    code, out, _ = run(capsys, "verify", "--curve", "secp256r1",
                       "--pub", key["pub"], "--sig", sig_hex,
                       "--msg", "00112233")
    assert code == 0 and out.strip() == "valid"

    code, out, _ = run(capsys, "verify", "--curve", "secp256r1",
                       "--pub", key["pub"], "--sig", sig_hex,
                       "--msg", "00112234")
    assert code == 1 and out.strip() == "invalid"

    # --in reads message bytes from a file
    msg = tmp_path / "msg.bin"
    msg.write_bytes(bytes.fromhex("00112233"))
    code, out, _ = run(capsys, "verify", "--curve", "secp256r1",
                       "--pub", key["pub"], "--sig", sig_hex,
                       "--in", str(msg))
    assert code == 0 and out.strip() == "valid"


def test_digest_scheme_signing(capsys):
    code, out, _ = run(capsys, "keygen", "--curve",
                       "id_tc26_gost_3410_2012_256_paramSetA",
                       "--rng-seed", "0badf00d")
    key = json.loads(out)
    digest = "11" * 32
    code, sig_hex, _ = run(capsys, "sign", "--curve",
                           "id_tc26_gost_3410_2012_256_paramSetA",
                           "--alg", "gost", "--key", key["sk"],
                           "--msg", digest, "--nonce", "1234567")
    assert code == 0
    code, out, _ = run(capsys, "verify", "--curve",
                       "id_tc26_gost_3410_2012_256_paramSetA",
                       "--alg", "gost", "--pub", key["pub"],
                       "--sig", sig_hex.strip(), "--msg", digest)
    assert code == 0 and out.strip() == "valid"


def test_derive_and_vko(capsys):
    _, out, _ = run(capsys, "keygen", "--curve",
                    "id_tc26_gost_3410_2012_256_paramSetA",
                    "--rng-seed", "01")
    a = json.loads(out)
    _, out, _ = run(capsys, "keygen", "--curve",
                    "id_tc26_gost_3410_2012_256_paramSetA",
                    "--rng-seed", "02")
    b = json.loads(out)

    code, s1, _ = run(capsys, "derive", "--curve",
                      "id_tc26_gost_3410_2012_256_paramSetA",
                      "--key", a["sk"], "--peer", b["pub"])
    code2, s2, _ = run(capsys, "derive", "--curve",
                       "id_tc26_gost_3410_2012_256_paramSetA",
                       "--key", b["sk"], "--peer", a["pub"])
    assert code == code2 == 0
    assert s1 == s2

    code, v1, _ = run(capsys, "vko", "--curve",
                      "id_tc26_gost_3410_2012_256_paramSetA",
                      "--key", a["sk"], "--peer", b["pub"], "--ukm", "beef")
    code2, v2, _ = run(capsys, "vko", "--curve",
                       "id_tc26_gost_3410_2012_256_paramSetA",
                       "--key", b["sk"], "--peer", a["pub"], "--ukm", "beef")
    assert code == code2 == 0
    assert v1 == v2 and v1 != s1

    # identity peer collapses and must fail loudly
    code, _, err = run(capsys, "derive", "--curve",
                       "id_tc26_gost_3410_2012_256_paramSetA",
                       "--key", a["sk"], "--peer", "00")
    assert code == 1 and "error" in err


def test_kat_gen_and_run(capsys, tmp_path):
    suite = tmp_path / "suite.json"
    code, _, _ = run(capsys, "kat-gen", "--curve", "secp192r1",
                     "--count", "2", "--out", str(suite))
    assert code == 0
    code, out, _ = run(capsys, "kat-run", "--in", str(suite))
    assert code == 0
    assert out.startswith("1..")
    assert "not ok" not in out

    # corrupt one expected value: run must fail with exit 1
    cases = katgen.load_cases(suite.read_text())
    target = [c for c in cases if c.kind == "keygen"][0]
    target.expected["Qx"] = "0" + target.expected["Qx"][1:] \
        if not target.expected["Qx"].startswith("0") \
        else "1" + target.expected["Qx"][1:]
    suite.write_text(katgen.emit_json(cases))
    code, out, _ = run(capsys, "kat-run", "--in", str(suite))
    assert code == 1
    assert "not ok" in out

    code, out, _ = run(capsys, "kat-run", "--in", str(suite),
                       "--format", "json")
    assert code == 1
    assert json.loads(out)["failed"] >= 1


def test_kat_run_reads_response_files(capsys, tmp_path):
    from test_katgen import cavp_fixture
    rsp = tmp_path / "cdh.rsp"
    rsp.write_text(cavp_fixture())
    code, out, _ = run(capsys, "kat-run", "--in", str(rsp))
    assert code == 0
    assert "# skipped 1 record(s)" in out


def test_bench_smoke(capsys):
    code, out, _ = run(capsys, "bench", "--curve", "secp192r1",
                       "--reps", "3", "--ops", "fixedbase,backends")
    assert code == 0
    assert "fixedbase" in out and "field[" in out
    code, out, _ = run(capsys, "bench", "--curve", "secp192r1",
                       "--reps", "3", "--ops", "varbase",
                       "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["ops"]["varbase"]["median_ns"] > 0
    assert doc["ops"]["varbase"]["counts"]["point_dbl"] > 0


def test_error_exit_codes(capsys):
    code, _, err = run(capsys, "keygen", "--curve", "nonesuch")
    assert code == 1 and "error" in err
    code, _, err = run(capsys, "sign", "--curve", "secp256r1",
                       "--key", "00", "--msg", "aa")
    assert code == 1
    with pytest.raises(SystemExit) as ex:
        cli.main(["sign", "--curve", "secp256r1"])  # --key missing
    assert ex.value.code == 2
    with pytest.raises(SystemExit) as ex:
        cli.main(["no-such-command"])
    assert ex.value.code == 2
