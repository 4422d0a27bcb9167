"""Reduced power operations P^k acting on F_p[t_1..t_h].

On a generator t, P^0 t = t, P^1 t = t^p and P^k t = 0 for k >= 2; the
Cartan formula extends this multiplicatively.  Iterating it gives the closed
form used here:

    P^k(t_1^a_1 ... t_h^a_h) = sum over k_1+...+k_h = k of
        prod_i C(a_i, k_i) * t_i^(a_i + k_i (p-1))

The Bockstein acts as zero on this algebra, so the hit elements are exactly
the sums of images of P^k with k >= 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .errors import UsageError
from .poly import Polynomial


@lru_cache(maxsize=1 << 16)
def lucas_binom(n: int, k: int, p: int) -> int:
    """C(n, k) mod p as the product of base-p digit binomials."""
    if k < 0 or n < 0 or k > n:
        return 0
    result = 1
    while k:
        nd, kd = n % p, k % p
        if kd > nd:
            return 0
        result = result * _small_binom(nd, kd, p) % p
        n //= p
        k //= p
    return result


@lru_cache(maxsize=None)
def _small_binom(n, k, p):
    num = den = 1
    for i in range(k):
        num = num * (n - i) % p
        den = den * (i + 1) % p
    return num * pow(den, p - 2, p) % p


def _compositions(k, bounds):
    """Tuples (k_1..k_h) summing to k with 0 <= k_i <= bounds[i]."""
    h = len(bounds)
    suffix = [0] * (h + 1)
    for i in range(h - 1, -1, -1):
        suffix[i] = suffix[i + 1] + bounds[i]
    out = []
    parts = [0] * h

    def rec(i, rest):
        if i == h - 1:
            if rest <= bounds[i]:
                parts[i] = rest
                out.append(tuple(parts))
            return
        lo = max(0, rest - suffix[i + 1])
        for ki in range(lo, min(bounds[i], rest) + 1):
            parts[i] = ki
            rec(i + 1, rest - ki)

    if k <= suffix[0]:
        rec(0, k)
    return out


@lru_cache(maxsize=1 << 18)
def _p_k_monomial_terms(mono: tuple, k: int, p: int) -> tuple:
    if k == 0:
        return ((mono, 1),)
    terms = []
    for ks in _compositions(k, mono):
        c = 1
        for a, ki in zip(mono, ks):
            c = c * lucas_binom(a, ki, p) % p
            if not c:
                break
        if c:
            terms.append((tuple(a + ki * (p - 1) for a, ki in zip(mono, ks)), c))
    return tuple(terms)


def p_k_monomial(mono, k: int, p: int) -> Polynomial:
    """P^k of a single monomial (coefficient 1)."""
    mono = tuple(mono)
    if k < 0:
        raise UsageError("P^k needs k >= 0")
    return Polynomial(p, len(mono), dict(_p_k_monomial_terms(mono, k, p)), _trusted=True)


def p_k(f: Polynomial, k: int, p: int | None = None) -> Polynomial:
    """P^k extended linearly."""
    if p is None:
        p = f.p
    elif p != f.p:
        raise UsageError(f"operation prime {p} does not match polynomial prime {f.p}")
    if k < 0:
        raise UsageError("P^k needs k >= 0")
    if k == 0:
        return f
    out = {}
    for mono, c in f.items():
        for m, v in _p_k_monomial_terms(mono, k, p):
            out[m] = (out.get(m, 0) + c * v) % p
    return Polynomial(p, f.h, {m: c for m, c in out.items() if c}, _trusted=True)


def cartan_check(f: Polynomial, g: Polynomial, k: int, p: int | None = None) -> bool:
    """Whether P^k(fg) equals sum_i P^i(f) P^(k-i)(g)."""
    p = f.p if p is None else p
    lhs = p_k(f * g, k, p)
    rhs = Polynomial.zero(p, f.h)
    for i in range(k + 1):
        rhs = rhs + p_k(f, i, p) * p_k(g, k - i, p)
    return lhs == rhs


@dataclass(frozen=True)
class HitDecomposition:
    """Witness that ``target`` equals sum_k P^k(parts[k]) with k >= 1."""

    target: Polynomial
    parts: dict = field(default_factory=dict)

    @property
    def p(self):
        return self.target.p

    def evaluate(self) -> Polynomial:
        total = Polynomial.zero(self.target.p, self.target.h)
        for k, fk in self.parts.items():
            total = total + p_k(fk, k)
        return total

    def verify(self) -> bool:
        if any(k < 1 for k in self.parts):
            return False
        n = self.target.degree
        p = self.target.p
        for k, fk in self.parts.items():
            if fk.is_zero():
                continue
            if not fk.is_homogeneous():
                return False
            if n is not None and fk.degree != n - 2 * k * (p - 1):
                return False
        return self.evaluate() == self.target

    def to_json(self) -> dict:
        return {
            "p": self.target.p,
            "h": self.target.h,
            "target": self.target.serialize(),
            "parts": {str(k): fk.serialize() for k, fk in sorted(self.parts.items())},
        }

    @classmethod
    def from_json(cls, data) -> "HitDecomposition":
        p, h = int(data["p"]), int(data["h"])
        target = Polynomial.deserialize(data["target"], p, h)
        parts = {int(k): Polynomial.deserialize(v, p, h) for k, v in data["parts"].items()}
        return cls(target, parts)


def pth_power_witness(g: Polynomial) -> HitDecomposition:
    """Decomposition g^p = P^d(g) for g homogeneous of exponent sum d >= 1."""
    if g.is_zero():
        raise UsageError("zero has no positive degree; nothing to witness")
    d = g.polydeg
    if d == 0:
        raise UsageError("constants have degree 0: P^0 is the identity, not a hit witness")
    p = g.p
    target = g**p
    dec = HitDecomposition(target, {d: g})
    if p_k(g, d) != target:
        raise AssertionError(f"P^{d}(g) != g^p for g = {g}")
    return dec
