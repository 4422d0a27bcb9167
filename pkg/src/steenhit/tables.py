"""Crossley's monomial bases for M^*(2) (Table 1) and M^*(1) (Table 2).

Each row is a degree family with a parametrized monomial set.  For a given
topological degree n we solve the row's degree equation for its parameters
instead of searching; every matching (row, parameters) pair becomes one
``TableEntry``.  Monomials are exponent tuples ``(a,)`` or ``(a, b)`` for
``x^a`` and ``x^a y^b``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import UsageError
from .poly import poly_degree


@dataclass(frozen=True)
class TableEntry:
    table: int
    row: int
    n: int
    params: tuple  # sorted (name, value) pairs
    monomials: frozenset

    def to_json(self) -> dict:
        return {
            "table": self.table,
            "row": self.row,
            "n": self.n,
            "params": dict(self.params),
            "monomials": sorted(list(m) for m in self.monomials),
        }


def _scales(p, m):
    """Pairs (s, m / p^s) for every s >= 0 with p^s dividing m."""
    s = 0
    while m > 0:
        yield s, m
        if m % p:
            break
        m //= p
        s += 1


def _x_power_monomial(a, d):
    return (a, d - a)


def table1_entries(p: int, n: int) -> list:
    d = poly_degree(n)
    out = []

    def add(row, params, monos):
        for m in monos:
            if sum(m) != d or min(m) < 0:
                raise AssertionError(f"table 1 row {row} produced {m} outside degree {n}")
        out.append(TableEntry(1, row, n, tuple(sorted(params.items())), frozenset(monos)))

    if n <= 2 * (p - 2):
        add(1, {}, [(i, d - i) for i in range(d + 1)])

    for s, m in _scales(p, d + 2):
        ps = p**s
        # row 2: m = (i+1)p + j + 1 with 0 <= i, j <= p-1
        if m - 1 >= p:
            i1, j = divmod(m - 1, p)
            if 1 <= i1 <= p:
                i = i1 - 1
                monos = {_x_power_monomial((k + 1) * ps - 1, d) for k in range(min(i + 1, j), p)}
                monos |= {_x_power_monomial((k + 1) * ps * p - 1, d) for k in range(i + 1)}
                add(2, {"i": i, "j": j, "s": s}, monos)
        # row 3: m = (i+1)p^r + j + 1 with 1 <= i <= p-1, 0 <= j <= p-2, r >= 2
        j = m % p - 1
        if 0 <= j <= p - 2:
            rest = m - j - 1
            r = 0
            while rest > 0 and rest % p == 0:
                rest //= p
                r += 1
                if r >= 2 and 2 <= rest <= p:
                    i = rest - 1
                    monos = {_x_power_monomial((k + 1) * ps * p - 1, d) for k in range(1, p)}
                    monos.add(((j + 1) * ps - 1, (i + 1) * p ** (r + s) - 1))
                    monos.add(((i + 1) * p ** (r + s) - 1, (j + 1) * ps - 1))
                    add(3, {"i": i, "j": j, "r": r, "s": s}, monos)
        # row 4: m = p^2 + ip + j + 1 with 1 <= i <= j <= p-2
        rest = m - p * p - 1
        if rest >= 0:
            i, j = divmod(rest, p)
            if 1 <= i <= j <= p - 2:
                monos = {_x_power_monomial((k + 1) * ps * p - 1, d) for k in range(i, j + 1)}
                add(4, {"i": i, "j": j, "s": s}, monos)
    return out


def table2_entries(p: int, n: int) -> list:
    d = poly_degree(n)
    out = []

    def add(row, params, a):
        out.append(TableEntry(2, row, n, tuple(sorted(params.items())), frozenset({(a,)})))

    if n <= 2 * (p - 2):
        add(1, {}, d)
    m = d + 1
    # row 2: m = (i+1)p with 0 <= i <= p-1
    if m % p == 0 and 1 <= m // p <= p:
        add(2, {"i": m // p - 1}, d)
    # row 3: m = (i+1)p^r with 1 <= i <= p-1, r >= 2
    r = 0
    rest = m
    while rest % p == 0:
        rest //= p
        r += 1
        if r >= 2 and 2 <= rest <= p:
            add(3, {"i": rest - 1, "r": r}, d)
    return out


def table_entries(p: int, h: int, n: int) -> list:
    if h == 1:
        return table2_entries(p, n)
    if h == 2:
        return table1_entries(p, n)
    raise UsageError(f"the tables cover h in {{1, 2}}, got h={h}")


def table_basis(p: int, h: int, n: int) -> frozenset:
    """Union of all table monomial sets claimed for degree n."""
    out = set()
    for e in table_entries(p, h, n):
        out |= e.monomials
    return frozenset(out)
