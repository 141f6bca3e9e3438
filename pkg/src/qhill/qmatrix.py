"""Multinacci companion matrices and their powers, plus generic Z_m matrix algebra.

``q_power`` builds Q^k straight from one window of sequence terms; the
generic routines (``mat_mul``, ``mat_det``, ``mat_inverse_generic``) know
nothing about that structure and serve as its cross-check.
"""

from dataclasses import dataclass
from typing import Tuple

from . import multinacci
from .errors import DimensionMismatch, InvalidModulus, ModulusMismatch, NotInvertible
from .modmath import mod_inv

# Above this |k|, stepping the recurrence costs more than repeated squaring.
FAST_POWER_THRESHOLD = 10**6


@dataclass(frozen=True)
class ModMatrix:
    entries: Tuple[Tuple[int, ...], ...]
    modulus: int

    def __post_init__(self):
        if self.modulus < 2:
            raise InvalidModulus(f"modulus must be >= 2, got {self.modulus}")
        rows = tuple(tuple(v % self.modulus for v in row) for row in self.entries)
        if len({len(r) for r in rows}) > 1:
            raise DimensionMismatch("ragged matrix rows")
        object.__setattr__(self, "entries", rows)

    @property
    def rows(self):
        return len(self.entries)

    @property
    def cols(self):
        return len(self.entries[0]) if self.entries else 0

    def is_square(self):
        return self.rows == self.cols

    def format(self):
        """Row-major bracketed decimal, one row per line."""
        return "\n".join("[" + " ".join(str(v) for v in row) + "]" for row in self.entries)

    def __str__(self):
        return self.format()


@dataclass(frozen=True)
class QMatrix(ModMatrix):
    """Q_lambda^power mod m. ``power`` is a label only; nothing verifies it."""

    power: int = 1

    @property
    def order(self):
        return self.rows


def identity(n, m):
    return ModMatrix(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), m)


def q_matrix(lam, m):
    """Companion matrix: first row all ones, ones on the subdiagonal."""
    multinacci.check_order(lam)
    rows = [[1] * lam]
    for i in range(1, lam):
        rows.append([int(j == i - 1) for j in range(lam)])
    return QMatrix(tuple(map(tuple, rows)), m, power=1)


def _assemble(lam, k, window, m):
    # prefix[n] = f_lo + ... + f_(lo+n-1), so a run f_a..f_b is prefix[b-lo+1] - prefix[a-lo].
    lo = window.lo
    prefix = [0]
    for f in window.terms:
        prefix.append((prefix[-1] + f) % m)

    def run(a, b):
        return prefix[b - lo + 1] - prefix[a - lo]

    top = k + lam - 1
    rows = []
    for i in range(lam):
        row = [window[top - i]]
        for j in range(1, lam):
            # f_(top-i-(lam-j)) + ... + f_(top-i-1)
            row.append(run(top - i - (lam - j), top - i - 1))
        rows.append(tuple(row))
    return QMatrix(tuple(rows), m, power=k)


def _companion_inverse(lam, m):
    """Q^-1: shifted identity above a last row of (1, -1, ..., -1)."""
    rows = [[int(j == i + 1) for j in range(lam)] for i in range(lam - 1)]
    rows.append([1] + [-1] * (lam - 1))
    return ModMatrix(tuple(map(tuple, rows)), m)


def _square_and_multiply(base, exp):
    result = identity(base.rows, base.modulus)
    while exp:
        if exp & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        exp >>= 1
    return result


def q_power(lam, k, m):
    """Q_lambda^k mod m for any signed k."""
    multinacci.check_order(lam)
    if m < 2:
        raise InvalidModulus(f"modulus must be >= 2, got {m}")
    if abs(k) > FAST_POWER_THRESHOLD:
        base = q_matrix(lam, m) if k > 0 else _companion_inverse(lam, m)
        return QMatrix(_square_and_multiply(base, abs(k)).entries, m, power=k)
    window = multinacci.terms(lam, k - lam - 1, k + lam - 1, m)
    return _assemble(lam, k, window, m)


def _check_same_modulus(a, b):
    if a.modulus != b.modulus:
        raise ModulusMismatch(f"moduli differ: {a.modulus} vs {b.modulus}")


def mat_mul(a, b):
    _check_same_modulus(a, b)
    if a.cols != b.rows:
        raise DimensionMismatch(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    m = a.modulus
    cols = list(zip(*b.entries))
    return ModMatrix(
        tuple(tuple(sum(x * y for x, y in zip(row, col)) % m for col in cols) for row in a.entries),
        m,
    )


def int_det(rows):
    """Exact determinant of an integer matrix (Bareiss fraction-free elimination)."""
    a = [list(r) for r in rows]
    n = len(a)
    if any(len(r) != n for r in a):
        raise DimensionMismatch("determinant needs a square matrix")
    if n == 0:
        return 1
    sign, prev = 1, 1
    for c in range(n - 1):
        if a[c][c] == 0:
            swap = next((r for r in range(c + 1, n) if a[r][c] != 0), None)
            if swap is None:
                return 0
            a[c], a[swap] = a[swap], a[c]
            sign = -sign
        for r in range(c + 1, n):
            for j in range(c + 1, n):
                a[r][j] = (a[r][j] * a[c][c] - a[r][c] * a[c][j]) // prev
        prev = a[c][c]
    return sign * a[n - 1][n - 1]


def mat_det(a):
    """Determinant mod m. Exact over the integers first, so any modulus works."""
    if not a.is_square():
        raise DimensionMismatch("determinant needs a square matrix")
    return int_det(a.entries) % a.modulus


def mat_inverse_generic(a):
    """Adjugate over determinant; valid in Z_m whenever the determinant is a unit."""
    if not a.is_square():
        raise DimensionMismatch("inverse needs a square matrix")
    m, n = a.modulus, a.rows
    det = mat_det(a)
    try:
        det_inv = mod_inv(det, m)
    except NotInvertible:
        raise NotInvertible(f"determinant {det} is not a unit mod {m}") from None
    if n == 1:
        return ModMatrix(((det_inv,),), m)
    e = a.entries
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1:] for r, row in enumerate(e) if r != i]
            adj[j][i] = (-1) ** (i + j) * int_det(minor)
    return ModMatrix(tuple(tuple(v * det_inv for v in row) for row in adj), m)
