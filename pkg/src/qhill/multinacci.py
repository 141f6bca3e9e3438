"""Order-lambda generalized Fibonacci ("multinacci") terms at signed indices.

The sequence is seeded with ``lambda - 1`` zeros followed by a one at
indices ``0 .. lambda-1``; each later term is the sum of the previous
``lambda`` terms, and the same rule solved for its oldest term runs the
sequence backwards below zero.
"""

from dataclasses import dataclass
from typing import Optional, Tuple

from .errors import InvalidArgument, InvalidModulus, InvalidRange, SequenceOverflow

MIN_ORDER = 2
MAX_ORDER = 64

_INT64_MAX = 2**63 - 1


def check_order(lam, cap=MAX_ORDER):
    if not isinstance(lam, int) or isinstance(lam, bool):
        raise InvalidArgument(f"order must be an integer, got {lam!r}")
    if not MIN_ORDER <= lam <= cap:
        raise InvalidArgument(f"order must lie in [{MIN_ORDER}, {cap}], got {lam}")
    return lam


@dataclass(frozen=True)
class SequenceWindow:
    """Terms ``f_lo .. f_hi``; ``terms[i]`` is ``f_(lo+i)``."""

    order: int
    lo: int
    terms: Tuple[int, ...]
    modulus: Optional[int] = None

    @property
    def hi(self):
        return self.lo + len(self.terms) - 1

    def __getitem__(self, n):
        if not self.lo <= n <= self.hi:
            raise IndexError(f"index {n} outside window [{self.lo}, {self.hi}]")
        return self.terms[n - self.lo]


def initial_values(lam):
    check_order(lam)
    return SequenceWindow(lam, 0, (0,) * (lam - 1) + (1,))


def _guard(value, modulus):
    if modulus is None:
        if abs(value) > _INT64_MAX:
            raise SequenceOverflow("exact term exceeds signed 64-bit; pass a modulus")
        return value
    return value % modulus


def _upward(lam, stop, modulus):
    """Yield f_lam .. f_stop. Keeps a running sum of the last lam terms."""
    window = [0] * (lam - 1) + [1]
    total = 1
    for _ in range(lam, stop + 1):
        nxt = _guard(total, modulus)
        oldest = window.pop(0)
        window.append(nxt)
        total = total + nxt - oldest
        if modulus:
            total %= modulus
        yield nxt


def _downward(lam, stop, modulus):
    """Yield f_-1, f_-2, .. f_stop (stop < 0).

    With ``w`` = f_(n+1) .. f_(n+lam) summing to ``total``,
    f_n = f_(n+lam) - (total - f_(n+lam)).
    """
    window = [0] * (lam - 1) + [1]
    total = 1
    for _ in range(-1, stop - 1, -1):
        newest = window.pop()
        nxt = _guard(2 * newest - total, modulus)
        window.insert(0, nxt)
        total = total - newest + nxt
        if modulus:
            total %= modulus
        yield nxt


def terms(lam, lo, hi, modulus=None):
    """Window ``f_lo .. f_hi``, exact or reduced mod ``modulus``."""
    check_order(lam)
    if lo > hi:
        raise InvalidRange(f"lo ({lo}) must not exceed hi ({hi})")
    if modulus is not None and modulus < 2:
        raise InvalidModulus(f"modulus must be >= 2, got {modulus}")

    values = {}
    for n, f in enumerate(initial_values(lam).terms):
        if lo <= n <= hi:
            values[n] = f if modulus is None else f % modulus
    if hi >= lam:
        for n, f in enumerate(_upward(lam, hi, modulus), start=lam):
            if n >= lo:
                values[n] = f
    if lo < 0:
        for n, f in enumerate(_downward(lam, lo, modulus)):
            idx = -1 - n
            if idx <= hi:
                values[idx] = f
    return SequenceWindow(lam, lo, tuple(values[n] for n in range(lo, hi + 1)), modulus)


def term_mod(lam, n, m):
    """Single term ``f_n mod m``."""
    return terms(lam, n, n, m).terms[0]
