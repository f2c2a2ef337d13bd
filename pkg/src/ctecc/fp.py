"""GF(p) context factory and backend selection.

Two interchangeable backends implement the field kernels: the compiled
extension (_fpcore, 64-bit limbs) and the pure-Python fallback (_fppure,
64- or 32-bit limbs).  Both expose the same surface:

    enc/dec, decode/encode, add, sub, neg, mul, sqr, inv, select,
    is_zero, eq, lookup_pair
    attributes: p, nbits, nbytes, limb_count, word_bits, zero, one,
    backend_name

The default is the compiled backend when present, overridable with the
CTECC_BACKEND environment variable ("compiled" or "pure") or per call,
so a single process can run both for differential tests and benchmarks.
Element handles are backend-specific and opaque; all code above this
module goes through the context methods.
"""

import os

from ._fppure import PureFp

try:
    from ._fpcore import CoreFp
except ImportError:
    CoreFp = None


def available_backends():
    names = ["pure"]
    if CoreFp is not None:
        names.insert(0, "compiled")
    return tuple(names)


def default_backend():
    env = os.environ.get("CTECC_BACKEND")
    if env:
        if env not in ("compiled", "pure"):
            raise ValueError(f"unknown CTECC_BACKEND {env!r}")
        if env == "compiled" and CoreFp is None:
            raise ValueError("CTECC_BACKEND=compiled but the extension is not built")
        return env
    return "compiled" if CoreFp is not None else "pure"


def default_word_bits():
    env = os.environ.get("CTECC_WORD_BITS")
    return int(env) if env else 64


def field(p, backend=None, word_bits=None):
    """Build a field context for the odd prime p."""
    backend = backend or default_backend()
    if backend == "compiled":
        if CoreFp is None:
            raise ValueError("compiled backend requested but not built")
        if word_bits not in (None, 64):
            raise ValueError("compiled backend is 64-bit only")
        return CoreFp(p)
    if backend == "pure":
        return PureFp(p, word_bits or default_word_bits())
    raise ValueError(f"unknown backend {backend!r}")
