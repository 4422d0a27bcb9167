"""Sparse polynomials over F_p in generators t_1..t_h of degree 2.

All public degree arguments are topological (twice the exponent sum).
Monomials are exponent tuples; the fixed global order is graded reverse
lexicographic with t_1 > t_2 > ... > t_h.
"""

from __future__ import annotations

import re
from functools import lru_cache
from itertools import combinations
from math import comb

from .errors import UsageError
from .linalg import check_modulus

ORDERS = ("grevlex", "lex")


def _grevlex_key(m):
    return tuple(reversed(m))


def _lex_key(m):
    return tuple(-a for a in m)


def order_key(order: str = "grevlex"):
    """Sort key putting larger monomials (same degree) first."""
    if order == "grevlex":
        return _grevlex_key
    if order == "lex":
        return _lex_key
    raise UsageError(f"unknown monomial order {order!r}; choose from {ORDERS}")


def sort_monomials(monomials, order: str = "grevlex"):
    key = order_key(order)
    return sorted(monomials, key=lambda m: (sum(m), key(m)))


def poly_degree(n: int) -> int:
    """Exponent sum for a topological degree."""
    if n < 0 or n % 2:
        raise UsageError(f"topological degree must be even and non-negative, got {n}")
    return n // 2


@lru_cache(maxsize=None)
def enumerate_monomials(h: int, n: int, order: str = "grevlex") -> tuple:
    """All monomials of topological degree n in h variables, largest first."""
    if h < 1:
        raise UsageError("need at least one variable")
    d = poly_degree(n)
    out = []
    # stars and bars: choose h-1 bar positions among d+h-1 slots
    for bars in combinations(range(d + h - 1), h - 1):
        prev = -1
        exps = []
        for b in bars:
            exps.append(b - prev - 1)
            prev = b
        exps.append(d + h - 2 - prev)
        out.append(tuple(exps))
    key = order_key(order)
    out.sort(key=key)
    return tuple(out)


def monomial_count(h: int, n: int) -> int:
    return comb(poly_degree(n) + h - 1, h - 1)


class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps exponent tuples to nonzero residues."""

    __slots__ = ("p", "h", "_terms", "_hash")

    def __init__(self, p: int, h: int, terms=None, *, _trusted=False):
        self.p = p
        self.h = h
        if _trusted:
            self._terms = terms
        else:
            check_modulus(p)
            clean = {}
            for mono, c in (terms or {}).items():
                mono = tuple(int(e) for e in mono)
                if len(mono) != h or min(mono, default=0) < 0:
                    raise UsageError(f"bad exponent vector {mono} for h={h}")
                c = int(c) % p
                if c:
                    clean[mono] = (clean.get(mono, 0) + c) % p
                    if not clean[mono]:
                        del clean[mono]
            self._terms = clean
        self._hash = None

    # construction helpers
    @classmethod
    def zero(cls, p, h):
        return cls(p, h, {})

    @classmethod
    def constant(cls, p, h, c=1):
        return cls(p, h, {(0,) * h: c})

    @classmethod
    def monomial(cls, p, h, exps, c=1):
        return cls(p, h, {tuple(exps): c})

    @classmethod
    def variable(cls, p, h, i, power=1):
        """The generator t_{i+1} (0-indexed ``i``) raised to ``power``."""
        e = [0] * h
        e[i] = power
        return cls(p, h, {tuple(e): 1})

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def monomials(self):
        return self._terms.keys()

    def coeff(self, mono) -> int:
        return self._terms.get(tuple(mono), 0)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def polydegrees(self) -> set:
        return {sum(m) for m in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.polydegrees) <= 1

    @property
    def polydeg(self):
        """Exponent sum of a homogeneous polynomial; None for zero."""
        degs = self.polydegrees
        if not degs:
            return None
        if len(degs) > 1:
            raise UsageError("polynomial is not homogeneous")
        return next(iter(degs))

    @property
    def degree(self):
        """Topological degree of a homogeneous polynomial; None for zero."""
        d = self.polydeg
        return None if d is None else 2 * d

    def homogeneous_part(self, n: int) -> "Polynomial":
        d = poly_degree(n)
        return Polynomial(self.p, self.h, {m: c for m, c in self._terms.items() if sum(m) == d}, _trusted=True)

    def _compatible(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        if other.p != self.p or other.h != self.h:
            raise UsageError(f"mismatched rings: (p={self.p}, h={self.h}) vs (p={other.p}, h={other.h})")
        return True

    def _coerce(self, other):
        if isinstance(other, int):
            return Polynomial.constant(self.p, self.h, other)
        return other

    def __add__(self, other):
        other = self._coerce(other)
        if self._compatible(other) is NotImplemented:
            return NotImplemented
        p = self.p
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = (out.get(m, 0) + c) % p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial(p, self.h, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        p = self.p
        return Polynomial(p, self.h, {m: p - c for m, c in self._terms.items()}, _trusted=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if self._compatible(other) is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: int) -> "Polynomial":
        p = self.p
        c %= p
        if c == 0:
            return Polynomial(p, self.h, {}, _trusted=True)
        return Polynomial(p, self.h, {m: (v * c) % p for m, v in self._terms.items()}, _trusted=True)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if self._compatible(other) is NotImplemented:
            return NotImplemented
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, e: int):
        if e < 0:
            raise UsageError("negative powers are not polynomials")
        result = Polynomial.constant(self.p, self.h)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = Polynomial.constant(self.p, self.h, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.p == other.p and self.h == other.h and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.p, self.h, frozenset(self._terms.items())))
        return self._hash

    def sorted_terms(self, order: str = "grevlex"):
        key = order_key(order)
        return sorted(self._terms.items(), key=lambda mc: (-sum(mc[0]), key(mc[0])))

    def serialize(self) -> list:
        """Canonical form: ``[[exponents, coeff], ...]`` in the global monomial order."""
        return [[list(m), c] for m, c in self.sorted_terms()]

    @classmethod
    def deserialize(cls, data, p: int, h: int) -> "Polynomial":
        terms = {}
        for exps, c in data:
            if len(exps) != h:
                raise UsageError(f"exponent vector {exps} has wrong length for h={h}")
            m = tuple(int(e) for e in exps)
            if m in terms:
                raise UsageError(f"duplicate monomial {m} in serialized polynomial")
            terms[m] = int(c)
        return cls(p, h, terms)

    def to_vector(self, index: dict, length: int):
        import numpy as np

        v = np.zeros(length, dtype=np.int64)
        for m, c in self._terms.items():
            try:
                v[index[m]] = c
            except KeyError:
                raise UsageError(f"monomial {m} is outside the given basis") from None
        return v

    @classmethod
    def from_vector(cls, v, monomials, p: int, h: int):
        return cls(p, h, {m: int(c) for m, c in zip(monomials, v) if int(c) % p}, _trusted=False)

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"Polynomial(p={self.p}, h={self.h}, {render(self)!r})"


def multiply(f: Polynomial, g: Polynomial) -> Polynomial:
    if f.p != g.p or f.h != g.h:
        raise UsageError(f"mismatched rings: (p={f.p}, h={f.h}) vs (p={g.p}, h={g.h})")
    p = f.p
    out = {}
    for m1, c1 in f.items():
        for m2, c2 in g.items():
            m = tuple(a + b for a, b in zip(m1, m2))
            out[m] = (out.get(m, 0) + c1 * c2) % p
    return Polynomial(p, f.h, {m: c for m, c in out.items() if c}, _trusted=True)


def substitute_linear(f: Polynomial, matrix) -> Polynomial:
    """Replace each t_j by sum_i matrix[i][j] * t_i (column convention).

    With this convention ``substitute_linear(f, a @ b)`` equals
    ``substitute_linear(substitute_linear(f, b), a)``.
    """
    p, h = f.p, f.h
    rows = [[int(x) % p for x in row] for row in matrix]
    if len(rows) != h or any(len(r) != h for r in rows):
        raise UsageError(f"substitution matrix must be {h}x{h}")
    images = [Polynomial(p, h, {tuple(int(i == k) for k in range(h)): rows[i][j] for i in range(h)}) for j in range(h)]
    power_cache = {}

    def image_power(j, e):
        key = (j, e)
        if key not in power_cache:
            power_cache[key] = images[j] ** e
        return power_cache[key]

    result = Polynomial.zero(p, h)
    for m, c in f.items():
        term = Polynomial.constant(p, h, c)
        for j, e in enumerate(m):
            if e:
                term = term * image_power(j, e)
        result = result + term
    return result


def _render_monomial(m, names):
    parts = []
    for name, e in zip(names, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def render(f: Polynomial, names=None) -> str:
    """Text form such as ``3*t1^12*t2 + t1^8*t2^5``."""
    if f.is_zero():
        return "0"
    names = names or [f"t{i + 1}" for i in range(f.h)]
    out = []
    for m, c in f.sorted_terms():
        mono = _render_monomial(m, names)
        if not mono:
            out.append(str(c))
        elif c == 1:
            out.append(mono)
        else:
            out.append(f"{c}*{mono}")
    return " + ".join(out)


class ParseError(UsageError):
    def __init__(self, msg, text, pos):
        super().__init__(f"{msg} at position {pos}: {text!r}")
        self.text = text
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<var>t(?P<idx>\d+)|[xyz])|(?P<op>[-+*^]))")
_ALIASES = {"x": 1, "y": 2, "z": 3}


def _tokenize(text):
    pos = 0
    tokens = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            stripped = len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError("unexpected character", text, pos + stripped)
        if m.group("int") is not None:
            tokens.append(("int", int(m.group("int")), m.start("int")))
        elif m.group("var") is not None:
            var = m.group("var")
            idx = int(m.group("idx")) if m.group("idx") else _ALIASES[var]
            tokens.append(("var", idx, m.start("var")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


def parse_polynomial(text: str, p: int, h: int) -> Polynomial:
    """Parse terms joined by ``+``/``-``, factors ``tI^E`` or integers joined by ``*``.

    ``x``, ``y``, ``z`` are accepted as aliases for ``t1``, ``t2``, ``t3``.
    """
    check_modulus(p)
    tokens = _tokenize(text)
    i = 0

    def peek():
        return tokens[i]

    def take():
        nonlocal i
        tok = tokens[i]
        i += 1
        return tok

    def factor():
        kind, val, pos = take()
        if kind == "int":
            if peek()[:2] == ("op", "^"):
                take()
                ekind, eval_, epos = take()
                if ekind != "int":
                    raise ParseError("expected exponent", text, epos)
                return val**eval_, None
            return val, None
        if kind == "var":
            if not 1 <= val <= h:
                raise ParseError(f"variable index {val} out of range 1..{h}", text, pos)
            e = 1
            if peek()[:2] == ("op", "^"):
                take()
                ekind, eval_, epos = take()
                if ekind != "int":
                    raise ParseError("expected exponent", text, epos)
                e = eval_
            exps = [0] * h
            exps[val - 1] = e
            return 1, exps
        raise ParseError("expected a coefficient or variable", text, pos)

    def term():
        coeff = 1
        exps = [0] * h
        c, e = factor()
        coeff *= c
        if e:
            exps = [a + b for a, b in zip(exps, e)]
        while peek()[:2] == ("op", "*"):
            take()
            c, e = factor()
            coeff *= c
            if e:
                exps = [a + b for a, b in zip(exps, e)]
        return coeff, tuple(exps)

    terms = {}
    sign = 1
    if peek()[0] == "op" and peek()[1] in "+-":
        sign = -1 if take()[1] == "-" else 1
    while True:
        c, m = term()
        terms[m] = (terms.get(m, 0) + sign * c) % p
        kind, val, pos = peek()
        if kind == "end":
            break
        if kind == "op" and val in "+-":
            take()
            sign = -1 if val == "-" else 1
            continue
        raise ParseError("expected '+', '-' or end of input", text, pos)
    return Polynomial(p, h, terms)
