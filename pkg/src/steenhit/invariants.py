"""GL(h, F_p)-fixed vectors in the hit quotient of a single degree.

Linear substitution commutes with every P^k, so the action descends to the
quotient.  Fixed points are solved for directly as a kernel; no averaging
is used anywhere since p divides the group order.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import BudgetExceeded, UsageError
from .hit import QuotientPresentation, quotient
from .poly import Polynomial, substitute_linear

FULL_GROUP_BUDGET = 20000


def primitive_root(p: int) -> int:
    linalg.check_modulus(p)
    factors = {f for f in range(2, p) if (p - 1) % f == 0 and linalg.is_prime(f)}
    for g in range(2, p):
        if all(pow(g, (p - 1) // f, p) != 1 for f in factors):
            return g
    raise AssertionError(f"no primitive root mod {p}")


def det_mod(m, p: int) -> int:
    a = [[int(x) % p for x in row] for row in m]
    n = len(a)
    det = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det = det * a[c][c] % p
        inv = pow(a[c][c], p - 2, p)
        for r in range(c + 1, n):
            f = a[r][c] * inv % p
            if f:
                a[r] = [(x - f * y) % p for x, y in zip(a[r], a[c])]
    return det % p


def gl_order(h: int, p: int) -> int:
    out = 1
    for i in range(h):
        out *= p**h - p**i
    return out


def gl_generators(h: int, p: int) -> list:
    """diag(g, 1, ..., 1) for a primitive root g, the transvection t_1 -> t_1 + t_2
    (in matrix form E + e_12) and the cyclic permutation of the variables.

    Conjugates of the transvection by powers of the cycle give the elementary
    transvections between neighbours, whose commutators give all of them, so
    together they generate SL(h, p); the diagonal element reaches every
    determinant.
    """
    g = primitive_root(p)
    if h == 1:
        return [((g,),)]
    diag = [[int(i == j) for j in range(h)] for i in range(h)]
    diag[0][0] = g
    trans = [[int(i == j) for j in range(h)] for i in range(h)]
    trans[0][1] = 1
    cycle = [[int(i == (j + 1) % h) for j in range(h)] for i in range(h)]
    return [_freeze(diag), _freeze(trans), _freeze(cycle)]


def _freeze(m):
    return tuple(tuple(int(x) for x in row) for row in m)


def matmul_mod(a, b, p):
    return _freeze(linalg.matmul(a, b, p))


def group_closure(gens, p: int, limit: int = FULL_GROUP_BUDGET) -> list:
    """All products of the generators (breadth first), sorted."""
    h = len(gens[0])
    ident = _freeze(np.eye(h, dtype=np.int64))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = matmul_mod(a, g, p)
                if b not in seen:
                    seen.add(b)
                    if len(seen) > limit:
                        raise BudgetExceeded("group closure", len(seen), limit)
                    nxt.append(b)
        frontier = nxt
    return sorted(seen)


def all_group_elements(h: int, p: int, budget: int = FULL_GROUP_BUDGET) -> list:
    order = gl_order(h, p)
    if order > budget:
        raise BudgetExceeded(f"|GL({h},{p})|", order, budget)
    out = []
    for entries in itertools.product(range(p), repeat=h * h):
        m = tuple(tuple(entries[i * h:(i + 1) * h]) for i in range(h))
        if det_mod(m, p):
            out.append(m)
    return out


def random_group_element(rng: random.Random, h: int, p: int):
    while True:
        m = tuple(tuple(rng.randrange(p) for _ in range(h)) for _ in range(h))
        if det_mod(m, p):
            return m


def induced_action(q: QuotientPresentation, a) -> np.ndarray:
    """dim x dim matrix; column j is the class of a acting on quotient monomial j."""
    a = _freeze(a)
    if len(a) != q.h or any(len(r) != q.h for r in a):
        raise UsageError(f"group element must be {q.h}x{q.h}")
    if not det_mod(a, q.p):
        raise UsageError("group element is not invertible mod p")
    mat = np.zeros((q.dim, q.dim), dtype=np.int64)
    for j, m in enumerate(q.quotient_monomials):
        image = substitute_linear(Polynomial.monomial(q.p, q.h, m), a)
        mat[:, j] = q.reduce(image)
    return mat


@dataclass(frozen=True)
class InvariantReport:
    p: int
    h: int
    n: int
    dim: int
    basis: tuple  # vectors in quotient coordinates
    quotient_monomials: tuple
    method: str
    elements: tuple  # the group elements whose fixed points were intersected

    def to_json(self) -> dict:
        return {
            "kind": "invariants",
            "p": self.p,
            "h": self.h,
            "n": self.n,
            "dim": self.dim,
            "method": self.method,
            "quotient_basis": [list(m) for m in self.quotient_monomials],
            "basis": [list(v) for v in self.basis],
            "generators": [[list(r) for r in g] for g in self.elements] if self.method == "generators" else None,
            "group_size": len(self.elements),
        }

    def polynomials(self):
        """Representatives of the fixed classes as polynomials."""
        return [Polynomial(self.p, self.h, dict(zip(self.quotient_monomials, v))) for v in self.basis]


def fixed_subspace(matrices, dim: int, p: int) -> np.ndarray:
    if dim == 0:
        return np.zeros((0, 0), dtype=np.int64)
    eye = np.eye(dim, dtype=np.int64)
    if not matrices:
        return eye
    stacked = np.concatenate([(m - eye) % p for m in matrices], axis=0)
    return linalg.kernel(stacked, p)


def invariant_subspace(p: int, h: int, n: int, method: str = "generators",
                       budget: int = FULL_GROUP_BUDGET) -> InvariantReport:
    q = quotient(p, h, n)
    if method == "generators":
        elements = gl_generators(h, p)
    elif method == "full-group":
        elements = all_group_elements(h, p, budget)
    else:
        raise UsageError(f"unknown method {method!r}; use 'generators' or 'full-group'")
    mats = [induced_action(q, a) for a in elements]
    basis = fixed_subspace(mats, q.dim, p)
    return InvariantReport(
        p, h, n, int(basis.shape[0]),
        tuple(tuple(int(x) for x in v) for v in basis),
        q.quotient_monomials, method, tuple(elements),
    )
