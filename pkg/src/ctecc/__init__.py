"""Constant-time elliptic-curve toolkit over prime fields.

Short Weierstrass and twisted Edwards arithmetic under one API, three
scalar-multiplication strategies, signature and key-agreement protocols,
and a self-checking known-answer-test pipeline.  A compiled field core is
used when built; a pure-Python backend is always available (select with
CTECC_BACKEND=pure|compiled).
"""

from .affine import IDENTITY, AffinePoint
from .curves import (Curve, CurveDatabase, default_database, get_curve,
                     load_database, validate_curve)
from .errors import (BadLength, EcError, ExceptionalPoint, InconsistentParameters,
                     InvalidPoint, NotFound, OutOfRange, ParseError, RngFailure,
                     SmallSubgroupResult, Unsupported, ValidationError,
                     ZeroInverse, ZeroRS)
from .fp import available_backends, default_backend, field
from .protocols import (DetRng, KeyPair, Signature, SystemRng, ecdh_derive,
                        ecdsa_sign, ecdsa_verify, gost_sign, gost_verify,
                        keygen, point_decode, point_encode, sig_decode,
                        sig_encode, validate_pubkey_full, vko_derive)
from .scalarmul import (clear_cofactor_scalar, mul_double, mul_fixedbase,
                        mul_varbase, mul_wide, recode_regular_naf)

__version__ = "0.1.0"

__all__ = [
    "AffinePoint", "IDENTITY",
    "Curve", "CurveDatabase", "default_database", "get_curve",
    "load_database", "validate_curve",
    "EcError", "ZeroInverse", "OutOfRange", "BadLength", "InvalidPoint",
    "ExceptionalPoint", "SmallSubgroupResult", "ValidationError",
    "ParseError", "InconsistentParameters", "NotFound", "Unsupported",
    "RngFailure", "ZeroRS",
    "available_backends", "default_backend", "field",
    "KeyPair", "Signature", "SystemRng", "DetRng",
    "keygen", "ecdh_derive", "vko_derive", "ecdsa_sign", "ecdsa_verify",
    "gost_sign", "gost_verify", "point_encode", "point_decode",
    "sig_encode", "sig_decode", "validate_pubkey_full",
    "mul_varbase", "mul_fixedbase", "mul_double", "mul_wide",
    "clear_cofactor_scalar", "recode_regular_naf",
    "__version__",
]
