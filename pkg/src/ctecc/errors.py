"""Exception hierarchy.

Everything raised on purpose by this package derives from EcError, so
callers can catch one type at protocol boundaries.  KAT execution relies
on that: an expected-failure case passes iff the library raises some
EcError subclass.
"""


class EcError(Exception):
    """Base class for all library errors."""


class ZeroInverse(EcError):
    """Inversion of zero requested (mod p or mod q)."""


class OutOfRange(EcError):
    """Integer outside its required interval (field element, scalar, key)."""


class BadLength(EcError):
    """Octet string has the wrong length for its fixed-width encoding."""


class InvalidPoint(EcError):
    """Point fails range or curve-equation validation."""


class ExceptionalPoint(EcError):
    """Input outside the domain of a birational map (2-torsion)."""


class SmallSubgroupResult(EcError):
    """Cofactor-cleared key agreement collapsed to the identity.

    This is the mandated protocol failure for adversarial low-order peers.
    """


class ValidationError(EcError):
    """A curve descriptor violates one of its stated invariants."""


class ParseError(EcError):
    """Malformed input file (curve database or CAVP vectors)."""


class InconsistentParameters(EcError):
    """Derived curve constants disagree with stored ones."""


class NotFound(EcError):
    """Bounded search exhausted (e.g. small-subgroup point sampling)."""


class Unsupported(EcError):
    """Operation not applicable to this curve (e.g. h = 1)."""


class RngFailure(EcError):
    """Random source failed or rejection sampling exceeded its bound."""


class ZeroRS(EcError):
    """Injected nonce produced r = 0 or s = 0 and cannot be resampled."""
