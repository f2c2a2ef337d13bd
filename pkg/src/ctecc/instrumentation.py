"""Operation counters and the secret-path guard.

The counters exist to make constant-time claims testable: the structural
checks assert that the number of point additions, doublings, table-entry
touches, and (pure backend) limb operations does not depend on scalar
values.  Counting is off by default; the flag is checked once per
operation so the disabled cost is one attribute load.

secret_scope() arms a guard that makes any variable-time double-scalar
multiplication raise.  Protocol code wraps its secret-key paths in it, so
a refactor that accidentally routes a secret through the variable-time
code fails loudly in the test suite.
"""

from contextlib import contextmanager

enabled = False
vartime_forbidden = False


class Counters:
    __slots__ = (
        "fp_add", "fp_sub", "fp_mul", "fp_sqr", "fp_inv", "fp_select",
        "limb_ops", "point_add", "point_dbl", "table_touch", "mul_double_calls",
    )

    def __init__(self):
        self.reset()

    def reset(self):
        for name in self.__slots__:
            setattr(self, name, 0)

    def snapshot(self):
        return {name: getattr(self, name) for name in self.__slots__}


counters = Counters()


def _core():
    try:
        from . import _fpcore
    except ImportError:
        return None
    return _fpcore


def snapshot():
    """Merged view of the Python-side counters and the compiled backend's."""
    out = counters.snapshot()
    core = _core()
    if core is not None:
        for name, value in core.peek_counters().items():
            out[name] += value
    return out


@contextmanager
def counting():
    """Enable counters in every backend, reset them, and yield."""
    global enabled
    prev = enabled
    enabled = True
    counters.reset()
    core = _core()
    if core is not None:
        core.reset_counters()
        core.set_counting(True)
    try:
        yield counters
    finally:
        enabled = prev
        if core is not None:
            core.set_counting(prev)


@contextmanager
def secret_scope():
    global vartime_forbidden
    prev = vartime_forbidden
    vartime_forbidden = True
    try:
        yield
    finally:
        vartime_forbidden = prev
