"""Command-line interface.

Exit codes: 0 on success, 1 for operational failures (bad key, invalid
signature, failing KAT cases, unknown curve), 2 for usage errors.

Points are hex-encoded in the uncompressed wire format, signatures as
r || s.  Message bytes come from --msg (hex), --in (path), or stdin.  The
digest-based signature algorithm treats those bytes as the digest itself;
the hash-and-sign algorithm hashes them first.
"""

import argparse
import json
import sys

from . import bench as bench_mod
from . import curves, katgen, protocols
from .errors import EcError


def _out(args, text):
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _msg_bytes(args):
    if getattr(args, "msg", None) is not None:
        return bytes.fromhex(args.msg)
    if getattr(args, "infile", None):
        with open(args.infile, "rb") as fh:
            return fh.read()
    return sys.stdin.buffer.read()


def _rng(args):
    seed = getattr(args, "rng_seed", None)
    if seed is not None:
        return protocols.DetRng(bytes.fromhex(seed))
    return protocols.SystemRng()


def _curve(args):
    return curves.get_curve(args.curve, backend=getattr(args, "backend", None))


def cmd_list_curves(args):
    db = curves.default_database()
    rows = []
    for name in db.names():
        d = db[name]
        rows.append({
            "name": name,
            "pbits": d.p.bit_length(),
            "qbits": d.q.bit_length(),
            "h": d.h,
            "class": d.coefficient_class,
            "model": "te" if d.edwards else "w",
            "oid": d.oid or "",
        })
    if args.format == "json":
        _out(args, json.dumps(rows, indent=1))
        return 0
    widths = {k: max(len(k), *(len(str(r[k])) for r in rows)) for k in rows[0]}
    head = "  ".join(k.ljust(widths[k]) for k in rows[0])
    lines = [head, "-" * len(head)]
    for r in rows:
        lines.append("  ".join(str(r[k]).ljust(widths[k]) for k in r))
    _out(args, "\n".join(lines))
    return 0


def cmd_keygen(args):
    cv = _curve(args)
    kp = protocols.keygen(cv, _rng(args))
    doc = {
        "curve": cv.name,
        "sk": kp.sk.to_bytes(cv.scalar.qbytes, "big").hex(),
        "pub": protocols.point_encode(cv, kp.pk).hex(),
    }
    _out(args, json.dumps(doc, indent=1))
    return 0


def cmd_sign(args):
    cv = _curve(args)
    sk = int(args.key, 16)
    data = _msg_bytes(args)
    k = int(args.nonce, 16) if args.nonce else None
    rng = protocols.DetRng(bytes.fromhex(args.rng_seed)) if args.rng_seed \
        else None
    if args.alg == "gost":
        sig = protocols.gost_sign(cv, sk, data, k=k, rng=rng)
    else:
        sig = protocols.ecdsa_sign(cv, sk, data, hash_name=args.hash,
                                   k=k, rng=rng)
    _out(args, protocols.sig_encode(cv, sig).hex())
    return 0


def cmd_verify(args):
    cv = _curve(args)
    pk = bytes.fromhex(args.pub)
    sig = bytes.fromhex(args.sig)
    data = _msg_bytes(args)
    if args.alg == "gost":
        ok = protocols.gost_verify(cv, pk, data, sig)
    else:
        ok = protocols.ecdsa_verify(cv, pk, data, sig, hash_name=args.hash)
    _out(args, "valid" if ok else "invalid")
    return 0 if ok else 1


def cmd_derive(args):
    cv = _curve(args)
    shared = protocols.ecdh_derive(cv, int(args.key, 16),
                                   bytes.fromhex(args.peer))
    _out(args, shared.hex())
    return 0


def cmd_vko(args):
    cv = _curve(args)
    out = protocols.vko_derive(cv, int(args.key, 16),
                               bytes.fromhex(args.peer),
                               int(args.ukm, 16), kdf_hash=args.hash)
    _out(args, out.hex())
    return 0


def cmd_kat_gen(args):
    db = curves.default_database()
    names = db.names() if args.curve == "all" else [args.curve]
    cases = []
    for name in names:
        cases.extend(katgen.generate_suite(db[name], seed=args.seed,
                                           n=args.count))
    _out(args, katgen.emit_json(cases))
    return 0


def cmd_kat_run(args):
    with open(args.infile) as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        cases = katgen.load_cases(text)
        skipped = 0
    else:
        cases, skipped = katgen.parse_cavp(text)
    hooks = katgen.LibraryHooks(backend=args.backend)
    results = katgen.run_suite(cases, hooks)
    failed = sum(1 for _, ok, _ in results if not ok)
    if args.format == "json":
        _out(args, katgen.emit_results_json(results))
    else:
        text = katgen.emit_tap(results)
        if skipped:
            text += f"# skipped {skipped} record(s) for unsupported curves\n"
        _out(args, text)
    return 0 if failed == 0 else 1


def cmd_bench(args):
    cv = _curve(args)
    ops = args.ops.split(",") if args.ops else None
    report = bench_mod.bench_curve(cv, ops=ops, reps=args.reps)
    if args.format == "json":
        _out(args, json.dumps(report, indent=1))
        return 0
    lines = [f"curve {report['curve']}  backend {report['backend']}  "
             f"reps {report['reps']}"]
    for op, entry in report["ops"].items():
        if op == "backends":
            for bk, t in entry.items():
                lines.append(f"  field[{bk}]: mul {t['mul_ns']} ns  "
                             f"sqr {t['sqr_ns']} ns  inv {t['inv_ns']} ns")
            continue
        c = entry["counts"]
        lines.append(
            f"  {op:<10} median {entry['median_ns']:>12} ns  "
            f"iqr {entry['iqr_ns']:>10} ns  "
            f"mul {c['fp_mul']:>6}  sqr {c['fp_sqr']:>5}  inv {c['fp_inv']:>2}  "
            f"padd {c['point_add']:>4}  pdbl {c['point_dbl']:>4}")
    _out(args, "\n".join(lines))
    return 0


def build_parser():
    ap = argparse.ArgumentParser(
        prog="ctecc",
        description="constant-time multi-curve EC toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    def curve_arg(p):
        p.add_argument("--curve", required=True, help="curve name")
        p.add_argument("--backend", choices=["compiled", "pure"],
                       help="field backend override")

    p = sub.add_parser("list-curves", help="show the curve database")
    p.add_argument("--format", choices=["table", "json"], default="table")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_list_curves)

    p = sub.add_parser("keygen", help="generate a key pair")
    curve_arg(p)
    p.add_argument("--rng-seed", help="hex seed for deterministic keys")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_keygen)

    p = sub.add_parser("sign", help="sign a message or digest")
    curve_arg(p)
    p.add_argument("--key", required=True, help="hex secret key")
    p.add_argument("--alg", choices=["ecdsa", "gost"], default="ecdsa")
    p.add_argument("--hash", help="hash algorithm (hash-and-sign only)")
    p.add_argument("--nonce", help="hex nonce override (test vectors)")
    p.add_argument("--rng-seed", help="hex seed for a deterministic rng")
    p.add_argument("--msg", help="message bytes as hex")
    p.add_argument("--in", dest="infile", help="read message bytes from file")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_sign)

    p = sub.add_parser("verify", help="verify a signature")
    curve_arg(p)
    p.add_argument("--pub", required=True, help="hex encoded public key")
    p.add_argument("--sig", required=True, help="hex r || s")
    p.add_argument("--alg", choices=["ecdsa", "gost"], default="ecdsa")
    p.add_argument("--hash")
    p.add_argument("--msg", help="message bytes as hex")
    p.add_argument("--in", dest="infile")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("derive", help="ECDH shared secret")
    curve_arg(p)
    p.add_argument("--key", required=True, help="hex secret key")
    p.add_argument("--peer", required=True, help="hex encoded peer point")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_derive)

    p = sub.add_parser("vko", help="UKM-salted key derivation")
    curve_arg(p)
    p.add_argument("--key", required=True, help="hex secret key")
    p.add_argument("--peer", required=True, help="hex encoded peer point")
    p.add_argument("--ukm", required=True, help="hex user key material")
    p.add_argument("--hash", help="KDF hash override")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_vko)

    p = sub.add_parser("kat-gen", help="generate a known-answer suite")
    p.add_argument("--curve", required=True, help="curve name or 'all'")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=16,
                   help="positive cases per family")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_kat_gen)

    p = sub.add_parser("kat-run", help="run a KAT suite (JSON or CAVP .rsp)")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--format", choices=["tap", "json"], default="tap")
    p.add_argument("--backend", choices=["compiled", "pure"])
    p.add_argument("--out")
    p.set_defaults(fn=cmd_kat_run)

    p = sub.add_parser("bench", help="measure point and protocol speed")
    curve_arg(p)
    p.add_argument("--reps", type=int, default=200)
    p.add_argument("--ops", help="comma list: " + ",".join(bench_mod.OPS))
    p.add_argument("--format", choices=["table", "json"], default="table")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_bench)

    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except EcError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
