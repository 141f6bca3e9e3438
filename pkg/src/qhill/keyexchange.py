"""ElGamal-style agreement on the pair (k, lambda) that selects a key matrix.

The receiver publishes (p, e1, e2 = e1^d). A sender with ephemeral ``e``
transmits ``k = e1^e`` and keys with ``lambda = e2^e``; the receiver gets
the same lambda back as ``k^d``.
"""

import json
from dataclasses import dataclass

from . import multinacci
from .errors import InvalidArgument, LambdaDegenerate, LambdaTooLarge
from .modmath import check_prime_modulus, find_primitive_root, is_primitive_root, mod_pow
from .qmatrix import q_power

LAMBDA_CAP = multinacci.MAX_ORDER
FORMAT_VERSION = 1


@dataclass(frozen=True)
class PublicKey:
    p: int
    e1: int
    e2: int

    def to_json(self):
        return _dump({"v": FORMAT_VERSION, "p": self.p, "e1": self.e1, "e2": self.e2})

    @classmethod
    def from_json(cls, text):
        obj = _load(text, ("p", "e1", "e2"))
        p = check_prime_modulus(obj["p"])
        for field in ("e1", "e2"):
            if not 1 <= obj[field] < p:
                raise InvalidArgument(f"public key field {field} out of range")
        if not is_primitive_root(obj["e1"], p):
            raise InvalidArgument(f"e1={obj['e1']} is not a primitive root of {p}")
        return cls(p, obj["e1"], obj["e2"])


@dataclass(frozen=True)
class PrivateKey:
    p: int
    e1: int
    d: int

    def public_key(self):
        return PublicKey(self.p, self.e1, mod_pow(self.e1, self.d, self.p))

    def to_json(self):
        return _dump({"v": FORMAT_VERSION, "p": self.p, "e1": self.e1, "d": self.d})

    @classmethod
    def from_json(cls, text):
        obj = _load(text, ("p", "e1", "d"))
        _, sk = make_keypair(obj["p"], obj["d"], obj["e1"])
        return sk


@dataclass(frozen=True)
class SessionKey:
    k: int
    lam: int


def _dump(obj):
    return json.dumps(obj, separators=(",", ":")) + "\n"


def _load(text, fields):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidArgument(f"not valid JSON: {exc}") from None
    if not isinstance(obj, dict) or obj.get("v") != FORMAT_VERSION:
        raise InvalidArgument(f"expected a version-{FORMAT_VERSION} key object")
    for field in fields:
        value = obj.get(field)
        if not isinstance(value, int) or isinstance(value, bool):
            raise InvalidArgument(f"key field {field!r} must be an integer")
    return obj


def check_lambda(lam, cap=LAMBDA_CAP):
    if lam < multinacci.MIN_ORDER:
        raise LambdaDegenerate(lam, f"derived lambda={lam} is degenerate; choose another exponent")
    if lam > cap:
        raise LambdaTooLarge(lam, f"derived lambda={lam} exceeds the cap {cap}; choose another exponent")
    return lam


def make_keypair(p, d, alpha=None):
    check_prime_modulus(p)
    if not isinstance(d, int) or not 1 < d < p - 1:
        raise InvalidArgument(f"private exponent must satisfy 1 < d < {p - 1}, got {d}")
    if alpha is None:
        alpha = find_primitive_root(p)
    elif not 1 <= alpha < p or not is_primitive_root(alpha, p):
        raise InvalidArgument(f"{alpha} is not a primitive root of {p}")
    sk = PrivateKey(p, alpha, d)
    return sk.public_key(), sk


def derive_session(pk, e, cap=LAMBDA_CAP):
    """Sender side: (k, lambda) = (e1^e, e2^e) mod p."""
    if not isinstance(e, int) or not 1 < e < pk.p - 1:
        raise InvalidArgument(f"ephemeral exponent must satisfy 1 < e < {pk.p - 1}, got {e}")
    k = mod_pow(pk.e1, e, pk.p)
    lam = check_lambda(mod_pow(pk.e2, e, pk.p), cap)
    return SessionKey(k, lam)


def recover_session(sk, k, cap=LAMBDA_CAP):
    """Receiver side: lambda = k^d mod p."""
    if not 1 <= k < sk.p:
        raise InvalidArgument(f"signature k must satisfy 1 <= k < {sk.p}, got {k}")
    return check_lambda(mod_pow(k, sk.d, sk.p), cap)


def session_to_keymatrix(session, p, inverse=False):
    return q_power(session.lam, -session.k if inverse else session.k, p)
