"""Keyspace measurements and a known-plaintext search over (lambda, k).

The general linear group bounds what a naive attacker would enumerate;
the matrices the scheme can actually produce are only the powers of one
companion matrix, which is what :func:`known_plaintext_attack` walks.
"""

import json
import math
import time
from dataclasses import dataclass, field
from decimal import Decimal
from typing import List, Optional, Tuple

from .errors import InsufficientPairs, InvalidArgument
from .modmath import check_prime_modulus
from .qmatrix import identity, mat_mul, q_matrix


def gl_order(lam, p):
    """|GL_lam(F_p)| = prod_{i=0}^{lam-1} (p^lam - p^i), exact."""
    if lam < 1:
        raise InvalidArgument(f"matrix order must be >= 1, got {lam}")
    top = p**lam
    return math.prod(top - p**i for i in range(lam))


def format_sci(n, digits=6):
    """``n`` in scientific notation with ``digits`` significant digits, e.g. ``1.82218e6``."""
    mantissa, exp = f"{Decimal(n):.{digits - 1}e}".split("e")
    return f"{mantissa}e{int(exp)}"


def structured_keyspace(p, lam, k_max):
    """Distinct Q_lam^k mod p over k in [1, k_max], and the period if it shows up.

    Returns ``(count, period)``; ``period`` is None when Q^k never returns
    to the identity within the bound.
    """
    if k_max < 1:
        raise InvalidArgument(f"k_max must be >= 1, got {k_max}")
    q = q_matrix(lam, p)
    eye = identity(lam, p).entries
    seen = set()
    cur = identity(lam, p)
    for k in range(1, k_max + 1):
        cur = mat_mul(cur, q)
        seen.add(cur.entries)
        if cur.entries == eye:
            return len(seen), k
    return len(seen), None


@dataclass(frozen=True)
class KeyspaceReport:
    p: int
    lam: int
    gl_order: int
    structured_count: int
    period: Optional[int]
    ratio_log10: float

    def to_dict(self):
        return {
            "p": self.p,
            "lambda": self.lam,
            "gl_order": str(self.gl_order),
            "structured_count": self.structured_count,
            "period": self.period,
            "ratio_log10": self.ratio_log10,
        }

    def to_json(self):
        return json.dumps(self.to_dict(), separators=(",", ":")) + "\n"


def keyspace_report(p, lam, k_max=None):
    """Compare |GL_lam(F_p)| with the reachable powers Q^k.

    ``k_max`` defaults to p - 1, the largest signature the exchange can
    produce, so the count is the scheme's real keyspace for this lambda.
    """
    check_prime_modulus(p)
    if k_max is None:
        k_max = p - 1
    order = gl_order(lam, p)
    count, period = structured_keyspace(p, lam, k_max)
    ratio = math.log10(order) - math.log10(count)
    return KeyspaceReport(p, lam, order, count, period, round(ratio, 6))


@dataclass
class AttackResult:
    candidates: List[Tuple[int, int]] = field(default_factory=list)
    tried: int = 0
    elapsed: float = 0.0
    # True when the try budget ran out before the search finished.
    truncated: bool = False

    def to_dict(self):
        return {
            "candidates": [list(c) for c in self.candidates],
            "tried": self.tried,
            "elapsed": round(self.elapsed, 6),
            "truncated": self.truncated,
        }

    def to_json(self):
        return json.dumps(self.to_dict(), separators=(",", ":")) + "\n"


def _chunk(vals, lam):
    return [tuple(vals[i:i + lam]) for i in range(0, len(vals) - lam + 1, lam)]


def _fits(key, blocks, p, b_known):
    """True if every (P, C) block pair satisfies C = P K + B for one B."""
    shift = b_known
    cols = list(zip(*key))
    for plain, ciph in blocks:
        pk = [sum(x * y for x, y in zip(plain, col)) % p for col in cols]
        diff = tuple((c - v) % p for c, v in zip(ciph, pk))
        if shift is None:
            shift = diff
        elif diff != shift:
            return False
    return True


def known_plaintext_attack(pairs, p, b_known=None, lambda_max=8, k_max=100, max_tries=None):
    """Search lambda in [2, lambda_max], k in [1, k_max] for keys matching every pair.

    ``pairs`` holds (plaintext residues, ciphertext residues); each side is
    cut into lambda-length blocks for every lambda tried, dropping an
    incomplete tail. Without ``b_known`` the shift is treated as unknown
    and only has to be the same across all blocks. ``max_tries`` caps the
    number of (lambda, k) candidates examined.
    """
    pairs = [(list(a), list(c)) for a, c in pairs]
    if b_known is None and len(pairs) < 2:
        raise InsufficientPairs("need at least two pairs when the shift vector is unknown")
    if not pairs:
        raise InsufficientPairs("need at least one plaintext/ciphertext pair")
    for a, c in pairs:
        if len(a) != len(c):
            raise InvalidArgument("plaintext and ciphertext of a pair differ in length")
    b = None if b_known is None else tuple(x % p for x in b_known)

    result = AttackResult()
    start = time.perf_counter()
    for lam in range(2, lambda_max + 1):
        if b is not None and len(b) != lam:
            continue
        blocks = [blk for a, c in pairs for blk in zip(_chunk(a, lam), _chunk(c, lam))]
        if not blocks or (b is None and len(blocks) < 2):
            continue
        q = q_matrix(lam, p)
        cur = identity(lam, p)
        for k in range(1, k_max + 1):
            if max_tries is not None and result.tried >= max_tries:
                result.truncated = True
                result.elapsed = time.perf_counter() - start
                return result
            cur = mat_mul(cur, q)
            result.tried += 1
            if _fits(cur.entries, blocks, p, b):
                result.candidates.append((lam, k))
    result.elapsed = time.perf_counter() - start
    return result
