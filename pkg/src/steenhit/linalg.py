"""Exact linear algebra over the prime field F_p.

Matrices are plain ``numpy.int64`` arrays whose entries lie in ``[0, p)``;
the modulus travels alongside as an explicit argument.  Columns are indexed
by whatever ordering the caller chose; nothing here orders monomials.
"""

from __future__ import annotations

from functools import lru_cache
from typing import NamedTuple

import numpy as np

from . import _backend
from .errors import ConfigurationError, UsageError


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def check_modulus(p: int) -> int:
    if not isinstance(p, (int, np.integer)) or p < 3 or not is_prime(int(p)):
        raise ConfigurationError(f"modulus must be an odd prime, got {p!r}")
    return int(p)


def inverse(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError(f"0 has no inverse mod {p}")
    return pow(a, p - 2, p)


def as_matrix(entries, p: int, ncols: int | None = None) -> np.ndarray:
    """Copy ``entries`` into a fresh C-contiguous int64 array reduced mod p."""
    a = np.array(entries, dtype=np.int64)
    if a.ndim == 1 and a.size == 0:
        a = a.reshape(0, ncols or 0)
    if a.ndim != 2:
        raise UsageError(f"expected a 2-d matrix, got shape {a.shape}")
    if ncols is not None and a.shape[1] != ncols:
        raise UsageError(f"expected {ncols} columns, got {a.shape[1]}")
    return np.ascontiguousarray(a % p)


class RREF(NamedTuple):
    reduced: np.ndarray
    pivot_cols: tuple
    rank: int


def rref(m, p: int) -> RREF:
    """Reduced row-echelon form over F_p.

    Zero rows are dropped from ``reduced``, so it has exactly ``rank`` rows.
    """
    p = check_modulus(p)
    a = as_matrix(m, p)
    pivots = _backend.rref_inplace(a, p)
    rank = len(pivots)
    return RREF(a[:rank].copy(), tuple(int(c) for c in pivots), rank)


def rank(m, p: int) -> int:
    return rref(m, p).rank


def matmul(a, b, p: int) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    # entries < p and inner dimensions are small, so int64 never overflows here
    return (a @ b) % p


def solve(a, b, p: int):
    """Some x with a·x = b over F_p, or None if the system is inconsistent."""
    p = check_modulus(p)
    a = as_matrix(a, p)
    b = np.asarray(b, dtype=np.int64).reshape(-1)
    rows, cols = a.shape
    if b.shape[0] != rows:
        raise UsageError(f"matrix has {rows} rows but right-hand side has length {b.shape[0]}")
    aug = np.ascontiguousarray(np.concatenate([a, (b % p).reshape(-1, 1)], axis=1))
    pivots = _backend.rref_inplace(aug, p)
    if pivots and pivots[-1] == cols:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for r, c in enumerate(pivots):
        x[c] = aug[r, cols]
    return x


def kernel(m, p: int) -> np.ndarray:
    """Basis (as rows) of the right null space {x : m·x = 0}."""
    p = check_modulus(p)
    a = as_matrix(m, p)
    ncols = a.shape[1]
    red = rref(a, p)
    pivots = red.pivot_cols
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for i, fc in enumerate(free):
        basis[i, fc] = 1
        for r, pc in enumerate(pivots):
            basis[i, pc] = (-red.reduced[r, fc]) % p
    return basis


def left_kernel(m, p: int) -> np.ndarray:
    """Basis (as rows) of {y : y·m = 0}."""
    return kernel(np.asarray(m, dtype=np.int64).T, p)


def cokernel_complement(span_rows, ambient_dim: int, p: int) -> list:
    """Standard coordinates whose images form a basis of F_p^d / rowspace(span_rows)."""
    a = as_matrix(span_rows, p, ncols=ambient_dim) if len(span_rows) else np.zeros((0, ambient_dim), np.int64)
    pivots = set(rref(a, p).pivot_cols)
    return [c for c in range(ambient_dim) if c not in pivots]


def reduce_vector(v, reduced: np.ndarray, pivot_cols, p: int) -> np.ndarray:
    """Normal form of ``v`` modulo the row space of an RREF matrix.

    The result is zero at every pivot column.
    """
    v = np.asarray(v, dtype=np.int64) % p
    if len(pivot_cols) == 0:
        return v
    coeffs = v[list(pivot_cols)]
    return (v - coeffs @ reduced) % p


def in_rowspace(v, reduced: np.ndarray, pivot_cols, p: int) -> bool:
    return not reduce_vector(v, reduced, pivot_cols, p).any()
