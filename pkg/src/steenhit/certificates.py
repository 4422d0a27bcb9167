"""Serialized witnesses and their independent re-checking.

Re-checks only use the P^k evaluator and ``linalg.solve`` against the full
generating set {P^k(m) : k >= 1}; they never consult a cached quotient.
"""

from __future__ import annotations

import json

import numpy as np

from . import linalg
from .errors import UsageError
from .poly import Polynomial, enumerate_monomials
from .steenrod import HitDecomposition, p_k, p_k_monomial

SCHEMA = "steenhit"
SCHEMA_VERSION = 1
KINDS = ("hit_witness", "thm24_counterexample", "psi_counterexample", "crossley_failure", "phi_failure")


def make(kind: str, **payload) -> dict:
    if kind not in KINDS:
        raise UsageError(f"unknown certificate kind {kind!r}")
    return {"kind": kind, **payload}


def hit_witness(dec: HitDecomposition) -> dict:
    return make("hit_witness", **dec.to_json())


def dumps(obj) -> str:
    """Canonical JSON text: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=1, separators=(",", ": ")) + "\n"


def wrap(certificate: dict) -> dict:
    return {"schema": SCHEMA, "schema_version": SCHEMA_VERSION, "type": "certificate", "certificate": certificate}


def _image_matrix(p, h, src_n, k, target_index):
    """Rows P^k(m) for every monomial m of degree src_n, in target coordinates."""
    sources = enumerate_monomials(h, src_n)
    mat = np.zeros((len(sources), len(target_index)), dtype=np.int64)
    for row, m in enumerate(sources):
        for mono, c in p_k_monomial(m, k, p).items():
            mat[row, target_index[mono]] = c
    return mat


def in_span_of_powers(f: Polynomial, n: int, ks) -> bool:
    """Whether f (degree n) is a sum of P^k(g_k) over the given k, by direct solving."""
    p, h = f.p, f.h
    d = n // 2
    ambient = enumerate_monomials(h, n)
    index = {m: i for i, m in enumerate(ambient)}
    blocks = []
    for k in ks:
        src_d = d - k * (p - 1)
        if src_d < k:
            continue
        blocks.append(_image_matrix(p, h, 2 * src_d, k, index))
    v = f.to_vector(index, len(ambient))
    if not blocks:
        return not v.any()
    mat = np.concatenate(blocks, axis=0)
    return linalg.solve(mat.T, v, p) is not None


def is_hit_direct(f: Polynomial, n: int) -> bool:
    return in_span_of_powers(f, n, range(1, n // 2 + 1))


def _poly(data, p, h):
    return Polynomial.deserialize(data, p, h)


def recheck(cert: dict) -> tuple:
    """Return (passed, message) for one certificate."""
    kind = cert.get("kind")
    try:
        p, h = int(cert["p"]), int(cert["h"])
        linalg.check_modulus(p)
        if kind == "hit_witness":
            dec = HitDecomposition.from_json(cert)
            if dec.verify():
                return True, f"sum of P^k(f_k) reproduces the target ({len(dec.parts)} parts)"
            return False, "witness does not evaluate to the target"
        if kind == "thm24_counterexample":
            f = _poly(cert["f"], p, h)
            n = int(cert["n"])
            if f.is_zero() or f.degree != n:
                return False, "counterexample must be nonzero of the stated degree"
            if not p_k(f, 1).is_zero():
                return False, "P^1(f) is not zero"
            if in_span_of_powers(f, n, [1]):
                return False, "f is in the image of P^1"
            return True, "P^1(f) = 0 and P^1(g) = f has no solution"
        if kind == "psi_counterexample":
            from .claims import MapParams, psi_map

            params = MapParams.from_json(cert["params"])
            parts = {int(k): _poly(v, p, h) for k, v in cert["construction"].items()}
            g = _poly(cert["g"], p, h)
            total = Polynomial.zero(p, h)
            for k, u in parts.items():
                if k < 1:
                    return False, "construction uses P^0"
                total = total + p_k(u, k)
            if total != g:
                return False, "construction does not produce g"
            psi_g = psi_map(g, params)
            if psi_g != _poly(cert["psi_g"], p, h):
                return False, "stored psi(g) does not match the map"
            if psi_g.is_zero() or is_hit_direct(psi_g, psi_g.degree):
                return False, "psi(g) is hit"
            return True, "g is hit by construction and psi(g) is not hit"
        if kind == "phi_failure":
            from .claims import MapParams, phi_map

            params = MapParams.from_json(cert["params"])
            f = _poly(cert["f"], p, h)
            phi_f = phi_map(f, params)
            if phi_f.is_zero() or is_hit_direct(phi_f, phi_f.degree):
                return False, "phi(f) is hit"
            return True, "phi(f) is not hit"
        if kind == "crossley_failure":
            from .tables import table_basis

            n = int(cert["n"])
            claimed = {tuple(m) for m in cert["monomials"]}
            if claimed != set(table_basis(p, h, n)):
                return False, "monomial set differs from the table"
            ambient = enumerate_monomials(h, n)
            index = {m: i for i, m in enumerate(ambient)}
            gens = []
            d = n // 2
            for k in range(1, d // p + 1):
                gens.append(_image_matrix(p, h, 2 * (d - k * (p - 1)), k, index))
            hit = np.concatenate(gens, axis=0) if gens else np.zeros((0, len(ambient)), np.int64)
            hit_rank = linalg.rank(hit, p) if len(hit) else 0
            dim = len(ambient) - hit_rank
            vecs = [Polynomial.monomial(p, h, m).to_vector(index, len(ambient)) for m in sorted(claimed)]
            joint = linalg.rank(np.concatenate([hit] + [np.array(vecs).reshape(-1, len(ambient))]), p) if claimed else hit_rank
            spans_basis = len(claimed) == dim and joint - hit_rank == dim
            if spans_basis:
                return False, "the table set is a basis after all"
            return True, f"table set of size {len(claimed)} is not a basis of a {dim}-dimensional quotient"
    except (KeyError, TypeError, ValueError) as exc:
        return False, f"malformed certificate: {exc}"
    return False, f"unknown certificate kind {kind!r}"


def certificates_in(doc: dict) -> list:
    """Certificates contained in a certificate file or a claim report."""
    if not isinstance(doc, dict) or doc.get("schema") != SCHEMA:
        raise UsageError("not a steenhit document (missing schema tag)")
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise UsageError(f"unsupported schema version {doc.get('schema_version')!r}")
    if doc.get("type") == "certificate":
        return [doc["certificate"]]
    if doc.get("type") == "claim_report":
        return list(doc["report"]["certificates"])
    if doc.get("type") == "hit_report":
        w = doc["report"].get("witness")
        return [] if w is None else [make("hit_witness", **w)]
    raise UsageError(f"document type {doc.get('type')!r} carries no certificates")


def recheck_document(doc: dict) -> list:
    return [(c.get("kind"), *recheck(c)) for c in certificates_in(doc)]
