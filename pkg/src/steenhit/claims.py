"""Mechanical checks of the claims about the hit problem for P_h at odd primes.

Every check returns a ``ClaimReport``.  "verified-in-range" means the claim
held on the finite configuration that was examined, nothing more.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from . import certificates, linalg
from .errors import BudgetExceeded, UsageError
from .hit import DEFAULT_BUDGET, audit_witness, is_hit, quotient
from .poly import Polynomial, enumerate_monomials, monomial_count
from .steenrod import HitDecomposition, p_k, p_k_monomial, pth_power_witness
from .tables import table_entries

VERIFIED = "verified-in-range"
REFUTED = "refuted-with-certificate"
UNDETERMINED = "undetermined"

THM24_READING = (
    "universal form: for every even n in range, ker(P^1 on degree n) is contained in "
    "the image of P^1 from degree n - 2(p-1)"
)


@dataclass
class ClaimReport:
    claim: str
    config: dict
    verdict: str
    certificates: list = field(default_factory=list)
    details: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "claim": self.claim,
            "config": self.config,
            "verdict": self.verdict,
            "certificates": self.certificates,
            "details": self.details,
            "notes": self.notes,
        }

    def document(self) -> dict:
        return {
            "schema": certificates.SCHEMA,
            "schema_version": certificates.SCHEMA_VERSION,
            "type": "claim_report",
            "report": self.to_json(),
        }

    def dumps(self) -> str:
        return certificates.dumps(self.document())


def _even_degrees(n_max, n_min=0):
    if n_max % 2 or n_min % 2:
        raise UsageError("degree bounds must be even")
    return range(n_min, n_max + 1, 2)


def _map_workers(fn, items, jobs):
    if jobs and jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(fn, items))
    return [fn(x) for x in items]


# Crossley's tables


def _crossley_degree(args):
    p, h, n = args
    q = quotient(p, h, n)
    entries = table_entries(p, h, n)
    claimed = set()
    for e in entries:
        claimed |= e.monomials
    row = {"n": n, "dim": q.dim, "rows": sorted({(e.table, e.row) for e in entries}), "table_size": len(claimed)}
    if claimed:
        vecs = np.array([q.reduce(Polynomial.monomial(p, h, m)) for m in sorted(claimed)], dtype=np.int64)
        independent_rank = linalg.rank(vecs, p) if q.dim else 0
        ok = len(claimed) == q.dim and independent_rank == q.dim
    else:
        ok = q.dim == 0
    row["ok"] = ok
    cert = None
    if not ok:
        cert = certificates.make(
            "crossley_failure", p=p, h=h, n=n, monomials=sorted(list(m) for m in claimed), computed_dim=q.dim
        )
    return row, cert


def verify_crossley(p: int, h: int, n_max: int, jobs: int = 1) -> ClaimReport:
    """Check that the table sets are quotient bases, and the quotient vanishes elsewhere."""
    linalg.check_modulus(p)
    if h not in (1, 2):
        raise UsageError(f"Crossley's tables cover h in {{1, 2}}, got h={h}")
    results = _map_workers(_crossley_degree, [(p, h, n) for n in _even_degrees(n_max)], jobs)
    details = [r for r, _ in results]
    certs = [c for _, c in results if c is not None]
    verdict = VERIFIED if not certs else REFUTED
    for c in certs:
        ok, msg = certificates.recheck(c)
        if not ok:
            raise AssertionError(f"crossley failure certificate does not recheck: {msg}")
    return ClaimReport(
        "crossley",
        {"p": p, "h": h, "n_max": n_max, "table": 1 if h == 2 else 2},
        verdict,
        certs,
        details,
        ["Bockstein acts as zero on P_h; hit elements are sums of images of P^k, k >= 1"],
    )


# disputed kernel/image claim for P^1


def _p1_matrix(p, h, src_n):
    """P^1 from degree src_n to src_n + 2(p-1), rows indexed by source monomials."""
    sources = enumerate_monomials(h, src_n)
    targets = enumerate_monomials(h, src_n + 2 * (p - 1))
    index = {m: i for i, m in enumerate(targets)}
    mat = np.zeros((len(sources), len(targets)), dtype=np.int64)
    for r, m in enumerate(sources):
        for mono, c in p_k_monomial(m, 1, p).items():
            mat[r, index[mono]] = c
    return sources, mat


def _thm24_degree(args):
    p, h, n = args
    sources, mat = _p1_matrix(p, h, n)
    ker = linalg.left_kernel(mat, p)
    src_n = n - 2 * (p - 1)
    if src_n >= 0:
        _, img = _p1_matrix(p, h, src_n)
        img_red = linalg.rref(img, p)
    else:
        img_red = linalg.RREF(np.zeros((0, len(sources)), np.int64), (), 0)
    outside = [v for v in ker if not linalg.in_rowspace(v, img_red.reduced, img_red.pivot_cols, p)]
    if len(ker):
        meet = img_red.rank + len(ker) - linalg.rank(np.concatenate([img_red.reduced, ker]), p)
    else:
        meet = 0
    row = {"n": n, "kernel_dim": int(len(ker)), "image_dim": img_red.rank, "kernel_in_image_dim": int(meet),
           "counterexample": bool(outside)}
    cert = None
    if outside:
        f = Polynomial.from_vector(outside[0], sources, p, h)
        cert = certificates.make("thm24_counterexample", p=p, h=h, n=n, f=f.serialize())
        ok, msg = certificates.recheck(cert)
        if not ok:
            raise AssertionError(f"counterexample at n={n} failed its own recheck: {msg}")
    return row, cert


def thm24_search(p: int, h: int, n_max: int, n_min: int = 2, jobs: int = 1) -> ClaimReport:
    """Look for f with P^1(f) = 0 that is not P^1 of anything.

    Degree 0 is skipped by default: constants are killed by P^1 and never hit.
    """
    linalg.check_modulus(p)
    results = _map_workers(_thm24_degree, [(p, h, n) for n in _even_degrees(n_max, n_min)], jobs)
    details = [r for r, _ in results]
    certs = [c for _, c in results if c is not None]
    return ClaimReport(
        "thm24",
        {"p": p, "h": h, "n_min": n_min, "n_max": n_max},
        REFUTED if certs else VERIFIED,
        certs,
        details,
        [THM24_READING, "verified-in-range is a finite check, not a proof"],
    )


# the phi and psi maps


@dataclass(frozen=True)
class MapParams:
    t: int
    q: tuple
    r: tuple = ()
    i: int = 0
    allow_zero_q: bool = False

    def validate(self, p: int, h: int, kind: str):
        if len(self.q) != h:
            raise UsageError(f"need {h} values of q, got {len(self.q)}")
        qmin = 0 if self.allow_zero_q else 1
        if any(qj < qmin for qj in self.q):
            raise UsageError(f"q must be {'non-negative' if qmin == 0 else 'positive'} integers, got {self.q}")
        if kind == "phi":
            if self.t < 1:
                raise UsageError("phi needs t >= 1")
        elif kind == "psi":
            if self.t < 2 and not self.allow_zero_q:
                raise UsageError("psi needs t >= 2")
            if not 1 <= self.i <= h:
                raise UsageError(f"psi needs 1 <= i <= h, got i={self.i}")
            if len(self.r) != self.i:
                raise UsageError(f"psi needs {self.i} residues r, got {len(self.r)}")
            if any(not 1 <= rj <= p - 1 for rj in self.r):
                raise UsageError(f"residues r must lie in [1, {p - 1}], got {self.r}")
        else:
            raise UsageError(f"unknown map {kind!r}")

    def to_json(self) -> dict:
        return {"t": self.t, "q": list(self.q), "r": list(self.r), "i": self.i, "allow_zero_q": self.allow_zero_q}

    @classmethod
    def from_json(cls, data) -> "MapParams":
        return cls(int(data["t"]), tuple(data["q"]), tuple(data.get("r", ())), int(data.get("i", 0)),
                   bool(data.get("allow_zero_q", False)))


def phi_multiplier(p: int, h: int, params: MapParams) -> tuple:
    return tuple(qj * p ** (params.t + 1) for qj in params.q)


def psi_multiplier(p: int, h: int, params: MapParams) -> tuple:
    base = p ** (params.t + 1)
    return tuple(qj * base + (params.r[j] if j < params.i else 0) for j, qj in enumerate(params.q))


def phi_map(f: Polynomial, params: MapParams) -> Polynomial:
    """f -> t_1^(q_1 p^(t+1)) ... t_h^(q_h p^(t+1)) f^p."""
    params.validate(f.p, f.h, "phi")
    return Polynomial.monomial(f.p, f.h, phi_multiplier(f.p, f.h, params)) * f**f.p


def psi_map(g: Polynomial, params: MapParams) -> Polynomial:
    """g -> prod_{j<=i} t_j^(q_j p^(t+1) + r_j) prod_{j>i} t_j^(q_j p^(t+1)) g^p."""
    params.validate(g.p, g.h, "psi")
    return Polynomial.monomial(g.p, g.h, psi_multiplier(g.p, g.h, params)) * g**g.p


def random_homogeneous(rng: random.Random, p: int, h: int, polydeg: int, density: float = 1.0) -> Polynomial:
    terms = {}
    for m in enumerate_monomials(h, 2 * polydeg):
        if density >= 1.0 or rng.random() < density:
            terms[m] = rng.randrange(p)
    return Polynomial(p, h, terms)


def phi_always_hit(p: int, h: int, params: MapParams, samples: int = 100, seed: int = 0,
                   max_polydeg: int = 3, budget: int = DEFAULT_BUDGET) -> ClaimReport:
    """phi(f) = (t_1^(q_1 p^t)...t_h^(q_h p^t) f)^p, so it is hit by P^(deg u)."""
    linalg.check_modulus(p)
    params.validate(p, h, "phi")
    rng = random.Random(seed)
    lift = tuple(qj * p**params.t for qj in params.q)
    details, certs, failures = [], [], []
    for idx in range(samples):
        f = random_homogeneous(rng, p, h, rng.randint(0, max_polydeg))
        while f.is_zero():
            f = random_homogeneous(rng, p, h, rng.randint(0, max_polydeg))
        phi_f = phi_map(f, params)
        u = Polynomial.monomial(p, h, lift) * f
        row = {"sample": idx, "f": f.serialize()}
        if f.is_zero():
            dec = HitDecomposition(phi_f, {})
        else:
            dec = pth_power_witness(u)
        syntactic = dec.target == phi_f
        if syntactic:
            audit_witness(dec)
        row["u_polydeg"] = u.polydeg
        row["phi_equals_u_to_p"] = syntactic
        hit_ok = syntactic
        if syntactic and not phi_f.is_zero():
            n = phi_f.degree
            q = quotient(p, h, n, budget=budget)
            rep = is_hit(phi_f, q)
            row["degree"] = n
            row["engine_verdict"] = rep.verdict
            hit_ok = rep.is_hit
        row["ok"] = hit_ok
        details.append(row)
        if hit_ok:
            certs.append(certificates.hit_witness(dec))
        else:
            failures.append(certificates.make("phi_failure", p=p, h=h, params=params.to_json(), f=f.serialize()))
    verdict = VERIFIED if not failures else REFUTED
    return ClaimReport(
        "phi",
        {"p": p, "h": h, "params": params.to_json(), "samples": samples, "seed": seed, "max_polydeg": max_polydeg},
        verdict,
        failures + certs,
        details,
        ["each certificate is a p-th power witness u^p = P^(deg u)(u)"],
    )


def random_hit(rng: random.Random, p: int, h: int, polydeg: int, ks=(1,)):
    """A hit polynomial sum_k P^k(u_k) of the given exponent sum, with its construction."""
    parts = {}
    total = Polynomial.zero(p, h)
    for k in ks:
        src = polydeg - k * (p - 1)
        if src < k:
            continue
        u = random_homogeneous(rng, p, h, src)
        parts[k] = u
        total = total + p_k(u, k)
    return total, parts


def psi_preserves_hit_probe(p: int, h: int, params: MapParams, samples: int = 20, seed: int = 0,
                            max_polydeg: int | None = None, budget: int = DEFAULT_BUDGET) -> ClaimReport:
    """Empirical probe of: g hit implies psi(g) hit.  Never claims the statement."""
    linalg.check_modulus(p)
    params.validate(p, h, "psi")
    rng = random.Random(seed)
    lo = p  # smallest exponent sum with a nonzero P^1 image
    hi = max_polydeg if max_polydeg is not None else lo + p
    mult = psi_multiplier(p, h, params)
    top = 2 * (p * hi + sum(mult))
    if monomial_count(h, top) > budget:
        raise BudgetExceeded(f"psi image degree {top} for h={h}", monomial_count(h, top), budget)
    details, certs = [], []
    for idx in range(samples):
        d = rng.randint(lo, hi)
        ks = [k for k in (1, p) if d - k * (p - 1) >= k]
        g, parts = random_hit(rng, p, h, d, ks)
        psi_g = psi_map(g, params)
        row = {"sample": idx, "g": g.serialize(), "construction": {str(k): u.serialize() for k, u in parts.items()}}
        if psi_g.is_zero():
            row["verdict"] = "hit"
            row["degree"] = None
        else:
            n = psi_g.degree
            q = quotient(p, h, n, budget=budget)
            rep = is_hit(psi_g, q)
            row["degree"] = n
            row["verdict"] = rep.verdict
            if not rep.is_hit:
                cert = certificates.make(
                    "psi_counterexample", p=p, h=h, params=params.to_json(),
                    construction={str(k): u.serialize() for k, u in parts.items()},
                    g=g.serialize(), psi_g=psi_g.serialize(), n=n, residue=list(rep.residue),
                )
                ok, msg = certificates.recheck(cert)
                if not ok:
                    raise AssertionError(f"psi counterexample failed its own recheck: {msg}")
                certs.append(cert)
        details.append(row)
    return ClaimReport(
        "psi",
        {"p": p, "h": h, "params": params.to_json(), "samples": samples, "seed": seed,
         "polydeg_range": [lo, hi]},
        REFUTED if certs else VERIFIED,
        certs,
        details,
        ["empirical probe only; the general statement is not established by sampling"],
    )

