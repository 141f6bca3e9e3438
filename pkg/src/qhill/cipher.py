"""Affine-Hill block cipher keyed by multinacci matrices.

Blocks are row vectors: ``C = P K + B`` and ``P = (C - B) K^-1`` mod p.
Text maps to residues through an :class:`Alphabet`; when p exceeds the
alphabet size, ciphertext residues past the last symbol are written with
extra filler characters (see :meth:`Alphabet.extended`).
"""

import json
from dataclasses import dataclass
from typing import Tuple

from .errors import (
    DimensionMismatch,
    InvalidArgument,
    MalformedEnvelope,
    UnmappedCharacter,
    ValueOutOfRange,
)
from .keyexchange import SessionKey, derive_session, recover_session, session_to_keymatrix

FORMAT_VERSION = 1
DEFAULT_SYMBOLS = "ABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789 "

# Filler symbols for residues beyond a plaintext alphabet start here
# (Latin Extended-A), skipping anything unprintable, whitespace, or taken.
_FILLER_START = 0x100


@dataclass(frozen=True)
class Alphabet:
    symbols: str

    def __post_init__(self):
        if len(self.symbols) < 2:
            raise InvalidArgument("an alphabet needs at least two symbols")
        if len(set(self.symbols)) != len(self.symbols):
            raise InvalidArgument("alphabet symbols must be distinct")
        object.__setattr__(self, "_index", {c: i for i, c in enumerate(self.symbols)})

    @property
    def size(self):
        return len(self.symbols)

    @property
    def pad(self):
        """Padding residue: always the last symbol."""
        return self.size - 1

    def index(self, char):
        return self._index.get(char)

    def extended(self, p):
        """This alphabet followed by filler symbols up to ``p`` symbols total."""
        if p <= self.size:
            return self
        extra = []
        cp = _FILLER_START
        while len(extra) < p - self.size:
            if cp > 0x10FFFF:
                raise InvalidArgument(f"no text encoding for residues mod {p}")
            c = chr(cp)
            if c.isprintable() and not c.isspace() and c not in self._index and not 0xD800 <= cp <= 0xDFFF:
                extra.append(c)
            cp += 1
        return Alphabet(self.symbols + "".join(extra))

    def to_json(self):
        return json.dumps({"v": FORMAT_VERSION, "symbols": self.symbols},
                          separators=(",", ":"), ensure_ascii=False) + "\n"

    @classmethod
    def from_json(cls, text):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidArgument(f"not valid JSON: {exc}") from None
        if not isinstance(obj, dict) or obj.get("v") != FORMAT_VERSION or not isinstance(obj.get("symbols"), str):
            raise InvalidArgument("expected a version-1 alphabet object with a 'symbols' string")
        return cls(obj["symbols"])


DEFAULT_ALPHABET = Alphabet(DEFAULT_SYMBOLS)


def encode(text, alphabet=DEFAULT_ALPHABET):
    """Residues for ``text``; a character missing from the alphabet is retried upper-cased."""
    out = []
    for pos, ch in enumerate(text):
        i = alphabet.index(ch)
        if i is None:
            i = alphabet.index(ch.upper())
        if i is None:
            raise UnmappedCharacter(ch, pos)
        out.append(i)
    return out


def decode(vals, alphabet=DEFAULT_ALPHABET):
    chars = []
    for v in vals:
        if not 0 <= v < alphabet.size:
            raise ValueOutOfRange(f"residue {v} has no symbol in a {alphabet.size}-symbol alphabet")
        chars.append(alphabet.symbols[v])
    return "".join(chars)


def make_blocks(vals, lam, pad=DEFAULT_ALPHABET.pad):
    """Split into lam-length blocks, padding the last. Returns (blocks, true length)."""
    if lam < 2:
        raise InvalidArgument(f"block length must be >= 2, got {lam}")
    vals = list(vals)
    n = len(vals)
    vals += [pad] * (-n % lam)
    return [tuple(vals[i:i + lam]) for i in range(0, len(vals), lam)], n


def _check_dims(blocks, key, b):
    lam = key.rows
    if len(b) != lam:
        raise DimensionMismatch(f"shift vector has length {len(b)}, key order is {lam}")
    for blk in blocks:
        if len(blk) != lam:
            raise DimensionMismatch(f"block of length {len(blk)} against key order {lam}")


def _row_times(vec, key):
    m = key.modulus
    return [sum(v * key.entries[t][j] for t, v in enumerate(vec)) % m for j in range(key.cols)]


def encrypt_blocks(blocks, key, b):
    _check_dims(blocks, key, b)
    p = key.modulus
    return [tuple((x + s) % p for x, s in zip(_row_times(blk, key), b)) for blk in blocks]


def decrypt_blocks(cblocks, key_inv, b):
    _check_dims(cblocks, key_inv, b)
    p = key_inv.modulus
    return [tuple(_row_times([(c - s) % p for c, s in zip(blk, b)], key_inv)) for blk in cblocks]


@dataclass(frozen=True)
class Envelope:
    p: int
    k: int
    b: Tuple[int, ...]
    len: int
    cipher: str

    def to_json(self):
        obj = {"v": FORMAT_VERSION, "p": self.p, "k": self.k, "b": list(self.b),
               "len": self.len, "cipher": self.cipher}
        return json.dumps(obj, separators=(",", ":"), ensure_ascii=False) + "\n"

    @classmethod
    def from_json(cls, text):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MalformedEnvelope(f"not valid JSON: {exc}") from None
        if not isinstance(obj, dict) or obj.get("v") != FORMAT_VERSION:
            raise MalformedEnvelope("expected a version-1 envelope object")
        ints = [obj.get(f) for f in ("p", "k", "len")]
        b = obj.get("b")
        if (any(not isinstance(x, int) or isinstance(x, bool) for x in ints)
                or not isinstance(b, list) or any(not isinstance(x, int) or isinstance(x, bool) for x in b)
                or not isinstance(obj.get("cipher"), str)):
            raise MalformedEnvelope("envelope fields have the wrong types")
        env = cls(obj["p"], obj["k"], tuple(b), obj["len"], obj["cipher"])
        if env.len < 0 or env.len > len(env.cipher):
            raise MalformedEnvelope(f"len={env.len} does not fit a {len(env.cipher)}-symbol cipher")
        return env


def _shift_vector(b, p):
    return tuple(int(x) % p for x in b)


def encrypt_message(pk, e, b, text, alphabet=DEFAULT_ALPHABET):
    if alphabet.size > pk.p:
        raise InvalidArgument(f"alphabet has {alphabet.size} symbols but p={pk.p}")
    session = derive_session(pk, e)
    b = _shift_vector(b, pk.p)
    if len(b) != session.lam:
        raise DimensionMismatch(f"shift vector has length {len(b)} but the derived lambda is {session.lam}")
    key = session_to_keymatrix(session, pk.p)
    blocks, n = make_blocks(encode(text, alphabet), session.lam, alphabet.pad)
    cblocks = encrypt_blocks(blocks, key, b)
    cipher = decode([v for blk in cblocks for v in blk], alphabet.extended(pk.p))
    return Envelope(pk.p, session.k, b, n, cipher)


def decrypt_message(sk, env, alphabet=DEFAULT_ALPHABET):
    if env.p != sk.p:
        raise MalformedEnvelope(f"envelope is for p={env.p}, key is for p={sk.p}")
    lam = recover_session(sk, env.k)
    if len(env.cipher) % lam:
        raise MalformedEnvelope(f"cipher length {len(env.cipher)} is not a multiple of lambda={lam}")
    if len(env.b) != lam:
        raise MalformedEnvelope(f"shift vector has length {len(env.b)}, lambda={lam}")
    if not 0 <= env.len <= len(env.cipher):
        raise MalformedEnvelope(f"len={env.len} does not fit the cipher")
    key_inv = session_to_keymatrix(SessionKey(env.k, lam), sk.p, inverse=True)
    vals = encode(env.cipher, alphabet.extended(sk.p))
    blocks = [tuple(vals[i:i + lam]) for i in range(0, len(vals), lam)]
    plain = [v for blk in decrypt_blocks(blocks, key_inv, _shift_vector(env.b, sk.p)) for v in blk]
    return decode(plain[:env.len], alphabet)
