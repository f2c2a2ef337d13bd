"""Wall-clock and operation-count measurement for the CLI bench command
and the performance-shape tests.

Timing reports median and interquartile range of per-call nanoseconds;
medians are robust against the allocator and scheduler noise that plagues
short cryptographic benchmarks.  Operation counts come from one
instrumented run and are deterministic for the constant-time paths.
"""

import random
import statistics
import time

from . import instrumentation as _ins
from . import fp, protocols, scalarmul

OPS = ("keygen", "sign", "verify", "derive",
       "varbase", "fixedbase", "double", "backends")


def measure(fn, reps, warmup=3):
    for _ in range(warmup):
        fn()
    times = []
    for _ in range(reps):
        t0 = time.perf_counter_ns()
        fn()
        times.append(time.perf_counter_ns() - t0)
    times.sort()
    if len(times) >= 4:
        q1, med, q3 = statistics.quantiles(times, n=4)
    else:
        q1 = med = q3 = times[len(times) // 2]
    return {"reps": reps, "median_ns": int(med), "iqr_ns": int(q3 - q1)}


def op_counts(fn):
    """Field and point operation tallies for one call of fn."""
    with _ins.counting():
        fn()
        snap = _ins.snapshot()
    keep = ("fp_add", "fp_sub", "fp_mul", "fp_sqr", "fp_inv", "fp_select",
            "point_add", "point_dbl", "table_touch")
    return {k: snap[k] for k in keep}


def _op_closures(curve, seed):
    """Callable per benchmark op, with inputs fixed up front so the loop
    measures only the operation itself."""
    rng = random.Random(seed)
    drng = protocols.DetRng(b"bench-" + curve.name.encode())
    kp = protocols.keygen(curve, drng)
    peer = protocols.keygen(curve, drng).pk
    msg = b"benchmark message, forty-two bytes long.."
    sig = protocols.ecdsa_sign(curve, kp.sk, msg)
    scalars = [rng.randrange(1, curve.q) for _ in range(64)]
    idx = [0]

    def next_scalar():
        idx[0] = (idx[0] + 1) % len(scalars)
        return scalars[idx[0]]

    return {
        "keygen": lambda: protocols.keygen(curve, drng),
        "sign": lambda: protocols.ecdsa_sign(curve, kp.sk, msg),
        "verify": lambda: protocols.ecdsa_verify(curve, kp.pk, msg, sig),
        "derive": lambda: protocols.ecdh_derive(curve, kp.sk, peer),
        "varbase": lambda: scalarmul.mul_varbase(curve, peer, next_scalar()),
        "fixedbase": lambda: scalarmul.mul_fixedbase(curve, next_scalar()),
        "double": lambda: scalarmul.mul_double(curve, next_scalar(), peer,
                                               next_scalar()),
    }


def bench_curve(curve, ops=None, reps=200, seed=0):
    """Measure the requested ops on one curve; returns a report dict."""
    ops = list(ops or [o for o in OPS if o != "backends"])
    closures = _op_closures(curve, seed)
    report = {"curve": curve.name, "backend": curve.fp.backend_name,
              "reps": reps, "ops": {}}
    for op in ops:
        if op == "backends":
            report["ops"][op] = bench_backends(curve.p, reps)
            continue
        fn = closures[op]
        entry = measure(fn, reps)
        entry["counts"] = op_counts(fn)
        report["ops"][op] = entry
    return report


def bench_backends(p, reps=200, seed=0):
    """Field multiply / square / invert medians for every built backend.

    This is the compiled-versus-pure comparison: same modulus, same
    random operands, same loop shape.
    """
    rng = random.Random(seed)
    xs = [rng.randrange(1, p) for _ in range(64)]
    out = {}
    for name in fp.available_backends():
        F = fp.field(p, backend=name)
        hs = [F.enc(x) for x in xs]

        def mul_loop():
            acc = hs[0]
            for h in hs:
                acc = F.mul(acc, h)
            return acc

        def sqr_loop():
            acc = hs[1]
            for _ in range(len(hs)):
                acc = F.sqr(acc)
            return acc

        def inv_one():
            return F.inv(hs[2])

        n = len(xs)
        mul = measure(mul_loop, reps)
        sqr = measure(sqr_loop, reps)
        inv = measure(inv_one, max(10, reps // 10))
        out[name] = {
            "mul_ns": mul["median_ns"] // n,
            "sqr_ns": sqr["median_ns"] // n,
            "inv_ns": inv["median_ns"],
        }
    return out
