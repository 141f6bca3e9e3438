"""Affine-Hill cipher keyed by powers of multinacci companion matrices.

A receiver publishes an ElGamal-style key; a sender derives a matrix order
lambda and power k from it, encrypts blocks with ``C = P Q^k + B`` mod p,
and ships only k (plus B) so the receiver can rebuild ``Q^-k``.
"""

from .errors import QHillError

__version__ = "0.1.0"

__all__ = ["QHillError", "__version__"]
