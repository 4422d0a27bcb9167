"""Hit subspaces and the quotient F_p (x)_{A_p} P_h, one degree at a time."""

from __future__ import annotations

import os
import tempfile
import threading
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import linalg
from .errors import BudgetExceeded, UsageError
from .poly import Polynomial, enumerate_monomials, monomial_count, poly_degree
from .steenrod import HitDecomposition, _p_k_monomial_terms

DEFAULT_BUDGET = 10000  # max ambient monomials per degree
CACHE_ENV = "STEENHIT_CACHE_DIR"


class WitnessAuditError(AssertionError):
    """A hit witness failed re-evaluation; always an engine bug."""


_audit_lock = threading.Lock()
_audit_count = 0


def audited_witnesses() -> int:
    """How many hit witnesses have been re-verified in this process."""
    return _audit_count


def audit_witness(dec: HitDecomposition) -> HitDecomposition:
    global _audit_count
    if not dec.verify():
        raise WitnessAuditError(f"witness does not reproduce {dec.target}")
    with _audit_lock:
        _audit_count += 1
    return dec


def operation_indices(p: int, n: int, which: str = "all") -> list:
    """Values k >= 1 for which P^k can land nonzero in topological degree n.

    The source has exponent sum n/2 - k(p-1), which must be >= k by
    unstability, so k <= n/(2p).  ``which="powers"`` keeps only k = p^i;
    those already span the hit subspace because every positive-degree
    element of A_p is a left multiple of some P^(p^i) (or of the Bockstein,
    which is zero here).
    """
    d = poly_degree(n)
    kmax = d // p
    if which == "all":
        return list(range(1, kmax + 1))
    if which == "powers":
        out, k = [], 1
        while k <= kmax:
            out.append(k)
            k *= p
        return out
    raise UsageError(f"unknown operation set {which!r}")


def generator_sources(p: int, h: int, n: int, which: str = "all"):
    """Pairs (k, source monomial) indexing the hit generators in degree n."""
    d = poly_degree(n)
    out = []
    for k in operation_indices(p, n, which):
        src_n = 2 * (d - k * (p - 1))
        for m in enumerate_monomials(h, src_n):
            out.append((k, m))
    return out


def hit_generators(p: int, h: int, n: int, which: str = "all") -> list:
    """The polynomials P^k(m) spanning the hit subspace of degree n."""
    linalg.check_modulus(p)
    return [
        Polynomial(p, h, dict(_p_k_monomial_terms(m, k, p)), _trusted=True)
        for k, m in generator_sources(p, h, n, which)
    ]


def _generator_matrix(p, h, n, sources, index):
    mat = np.zeros((len(sources), len(index)), dtype=np.int64)
    for row, (k, m) in enumerate(sources):
        for mono, c in _p_k_monomial_terms(m, k, p):
            mat[row, index[mono]] = c
    return mat


@dataclass(frozen=True)
class HitReport:
    query: Polynomial
    verdict: str  # "hit" or "not-hit"
    witness: HitDecomposition | None
    residue: tuple | None

    @property
    def is_hit(self) -> bool:
        return self.verdict == "hit"

    def to_json(self) -> dict:
        return {
            "kind": "hit_report",
            "p": self.query.p,
            "h": self.query.h,
            "query": self.query.serialize(),
            "verdict": self.verdict,
            "witness": None if self.witness is None else self.witness.to_json(),
            "residue": None if self.residue is None else list(self.residue),
        }


class QuotientPresentation:
    """Degree-n slice of P_h modulo hit elements.

    ``hit_basis`` is the RREF of the hit generators in ``ambient``
    coordinates; the quotient basis is the set of ambient monomials at the
    non-pivot columns.  Instances are treated as immutable.
    """

    def __init__(self, p, h, n, order, which, ambient, hit_basis, pivots):
        self.p = p
        self.h = h
        self.n = n
        self.order = order
        self.which = which
        self.ambient = ambient
        self.index = {m: i for i, m in enumerate(ambient)}
        hit_basis.setflags(write=False)
        self.hit_basis = hit_basis
        self.pivots = tuple(pivots)
        pivset = set(self.pivots)
        self.quotient_cols = tuple(c for c in range(len(ambient)) if c not in pivset)
        self.quotient_monomials = tuple(ambient[c] for c in self.quotient_cols)
        self._gen_lock = threading.Lock()
        self._gens = None

    @property
    def rank(self) -> int:
        return len(self.pivots)

    @property
    def dim(self) -> int:
        return len(self.ambient) - self.rank

    def __repr__(self):
        return f"QuotientPresentation(p={self.p}, h={self.h}, n={self.n}, dim={self.dim})"

    def vector(self, f: Polynomial) -> np.ndarray:
        self._check(f)
        return f.to_vector(self.index, len(self.ambient))

    def _check(self, f):
        if f.p != self.p or f.h != self.h:
            raise UsageError(f"polynomial lives in (p={f.p}, h={f.h}), quotient in (p={self.p}, h={self.h})")
        for m in f.monomials():
            if 2 * sum(m) != self.n:
                raise UsageError(f"polynomial has a term of degree {2 * sum(m)}, quotient is in degree {self.n}")

    def normal_form(self, f: Polynomial) -> np.ndarray:
        return linalg.reduce_vector(self.vector(f), self.hit_basis, self.pivots, self.p)

    def reduce(self, f: Polynomial) -> tuple:
        """Coordinates of f's class on ``quotient_monomials``."""
        nf = self.normal_form(f)
        return tuple(int(nf[c]) for c in self.quotient_cols)

    def generators(self):
        """(sources, matrix) of the generating set; built lazily and kept."""
        with self._gen_lock:
            if self._gens is None:
                sources = generator_sources(self.p, self.h, self.n, self.which)
                mat = _generator_matrix(self.p, self.h, self.n, sources, self.index)
                mat.setflags(write=False)
                self._gens = (sources, mat)
            return self._gens

    def witness(self, f: Polynomial) -> HitDecomposition | None:
        """Solve for f as a combination of generators, grouped by k."""
        sources, mat = self.generators()
        if not sources:
            return HitDecomposition(f, {}) if f.is_zero() else None
        x = linalg.solve(mat.T, self.vector(f), self.p)
        if x is None:
            return None
        parts = {}
        for (k, m), c in zip(sources, x):
            c = int(c)
            if c:
                parts.setdefault(k, {})[m] = c
        return HitDecomposition(f, {k: Polynomial(self.p, self.h, t) for k, t in sorted(parts.items())})

    def to_json(self) -> dict:
        return {
            "kind": "quotient",
            "p": self.p,
            "h": self.h,
            "n": self.n,
            "order": self.order,
            "ambient_size": len(self.ambient),
            "rank": self.rank,
            "dim": self.dim,
            "basis": [list(m) for m in self.quotient_monomials],
        }


_cache: dict = {}
_cache_lock = threading.Lock()


def clear_cache():
    with _cache_lock:
        _cache.clear()


def _disk_path(key):
    root = os.environ.get(CACHE_ENV)
    if not root:
        return None
    p, h, n, order, which = key
    return Path(root) / f"q-p{p}-h{h}-n{n}-{order}-{which}.npz"


def _load_disk(key):
    path = _disk_path(key)
    if path is None or not path.exists():
        return None
    with np.load(path) as data:
        return np.array(data["hit_basis"], dtype=np.int64), [int(c) for c in data["pivots"]]


def _store_disk(key, hit_basis, pivots):
    path = _disk_path(key)
    if path is None:
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            np.savez(fh, hit_basis=hit_basis, pivots=np.array(pivots, dtype=np.int64))
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def quotient(p: int, h: int, n: int, order: str = "grevlex", which: str = "powers",
             budget: int = DEFAULT_BUDGET) -> QuotientPresentation:
    """Presentation of (F_p (x)_{A_p} P_h)_n; cached per (p, h, n, order, which)."""
    linalg.check_modulus(p)
    poly_degree(n)
    size = monomial_count(h, n)
    if size > budget:
        raise BudgetExceeded(f"ambient degree {n} for h={h}", size, budget)
    key = (p, h, n, order, which)
    with _cache_lock:
        q = _cache.get(key)
    if q is not None:
        return q
    ambient = enumerate_monomials(h, n, order)
    loaded = _load_disk(key)
    if loaded is not None:
        hit_basis, pivots = loaded
    else:
        index = {m: i for i, m in enumerate(ambient)}
        sources = generator_sources(p, h, n, which)
        mat = _generator_matrix(p, h, n, sources, index)
        if mat.shape[0]:
            red = linalg.rref(mat, p)
            hit_basis, pivots = red.reduced, list(red.pivot_cols)
        else:
            hit_basis, pivots = np.zeros((0, len(ambient)), dtype=np.int64), []
        _store_disk(key, hit_basis, pivots)
    q = QuotientPresentation(p, h, n, order, which, ambient, hit_basis, pivots)
    with _cache_lock:
        # duplicate computations from concurrent callers are identical; first wins
        return _cache.setdefault(key, q)


def _resolve_quotient(f: Polynomial, q: QuotientPresentation | None):
    if q is not None:
        return q
    n = f.degree
    if n is None:
        raise UsageError("cannot infer the degree of the zero polynomial; pass a quotient")
    return quotient(f.p, f.h, n)


def is_hit(f: Polynomial, q: QuotientPresentation | None = None) -> HitReport:
    """Decide hit membership; a hit verdict always carries an audited witness."""
    if not f.is_homogeneous():
        raise UsageError("is_hit needs a homogeneous polynomial")
    q = _resolve_quotient(f, q)
    residue = q.reduce(f)
    if any(residue):
        return HitReport(f, "not-hit", None, residue)
    dec = q.witness(f)
    if dec is None:
        raise WitnessAuditError(f"{f} reduces to zero but no generator combination was found")
    audit_witness(dec)
    return HitReport(f, "hit", dec, None)


def reduce(f: Polynomial, q: QuotientPresentation | None = None) -> tuple:
    return _resolve_quotient(f, q).reduce(f)


__all__ = [
    "HitReport",
    "QuotientPresentation",
    "audited_witnesses",
    "clear_cache",
    "generator_sources",
    "hit_generators",
    "is_hit",
    "operation_indices",
    "quotient",
    "reduce",
]
