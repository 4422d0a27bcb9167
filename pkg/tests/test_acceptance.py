"""Exit criteria for the engine, one test per criterion.

Each test records a PASS/FAIL line that is printed in the pytest terminal
summary (and directly when this file is run as a script).
"""

import json
import random
import time

import numpy as np
import pytest

from steenhit import certificates, hit
from steenhit.claims import VERIFIED, MapParams, phi_always_hit, psi_preserves_hit_probe, thm24_search, verify_crossley
from steenhit.cli import main
from steenhit.hit import audited_witnesses, is_hit, quotient
from steenhit.invariants import induced_action, invariant_subspace, random_group_element
from steenhit.linalg import matmul
from steenhit.poly import Polynomial, enumerate_monomials, parse_polynomial
from steenhit.steenrod import HitDecomposition, cartan_check, p_k
from steenhit.tables import table2_entries

from conftest import ACCEPTANCE_LINES


class record:
    """Context manager logging one criterion's outcome."""

    def __init__(self, number, title):
        self.number = number
        self.title = title
        self.extra = ""

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        status = "PASS" if exc_type is None else "FAIL"
        line = f"[{status}] criterion {self.number:2d}: {self.title} ({elapsed:.2f}s){' ' + self.extra if self.extra else ''}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return False


def _phi_report():
    return phi_always_hit(3, 2, MapParams(1, (1, 1)), samples=100, seed=7)


def test_criterion_01_explicit_example(capsys):
    with record(1, "P^1(t1^4 t2^5 + t1^8 t2) = 3 t1^12 t2 at p=5") as r:
        start = time.perf_counter()
        code = main(["apply", "-p", "5", "-h", "2", "-k", "1", "t1^4*t2^5 + t1^8*t2"])
        out = capsys.readouterr().out
        elapsed = time.perf_counter() - start
        assert code == 0 and out.strip() == "3*t1^12*t2"
        assert elapsed < 1.0
        r.extra = f"output {out.strip()!r}"


@pytest.mark.parametrize("p,n_max", [(3, 200), (5, 400)])
def test_criterion_02_crossley_table1(p, n_max):
    with record(2, f"Table 1 + hit example sweep p={p}, n<={n_max}") as r:
        rep = verify_crossley(p, 2, n_max)
        assert rep.verdict == VERIFIED
        assert len(rep.details) == n_max // 2 + 1
        covered = [row for row in rep.details if row["rows"]]
        assert all(row["table_size"] == row["dim"] and row["ok"] for row in covered)
        assert all(row["dim"] == 0 for row in rep.details if not row["rows"])
        r.extra = f"{len(covered)} covered degrees"


@pytest.mark.parametrize("p", [3, 5, 7])
def test_criterion_03_crossley_table2(p):
    with record(3, f"Table 2 sweep h=1 p={p}, n<=600") as r:
        rep = verify_crossley(p, 1, 600)
        assert rep.verdict == VERIFIED
        dims = {row["dim"] for row in rep.details}
        assert dims <= {0, 1}
        nonzero = {row["n"] for row in rep.details if row["dim"]}
        families = {n for n in range(0, 601, 2) if table2_entries(p, n)}
        assert nonzero == families
        r.extra = f"{len(nonzero)} nonzero degrees"


def test_criterion_04_pth_power_identity():
    with record(4, "g^p = P^(deg g / 2)(g), 200 samples per (p,h)") as r:
        count = 0
        for p in (3, 5):
            for h in (1, 2, 3):
                rng = random.Random(p * 100 + h)
                done = 0
                while done < 200:
                    d = rng.randint(1, 5)
                    g = Polynomial(p, h, {m: rng.randrange(p) for m in enumerate_monomials(h, 2 * d)})
                    if g.is_zero():
                        continue
                    assert p_k(g, d) == g**p
                    done += 1
                count += done
        r.extra = f"{count} exact identities"


def test_criterion_05_phi_trivial():
    with record(5, "phi(f) hit for 100 samples, p=3 h=2 t=1 q=(1,1)") as r:
        rep = _phi_report()
        assert rep.verdict == VERIFIED
        assert len(rep.details) == 100
        assert all(row["ok"] for row in rep.details)
        witnesses = [c for c in rep.certificates if c["kind"] == "hit_witness"]
        assert len(witnesses) == 100
        assert all(certificates.recheck(c)[0] for c in witnesses)
        r.extra = f"{sum(1 for row in rep.details if row.get('engine_verdict') == 'hit')} engine hit verdicts"


def test_criterion_06_cartan():
    with record(6, "Cartan formula: exhaustive small grid + 500 random cases") as r:
        p, h = 3, 2
        monos = [m for d in range(5) for m in enumerate_monomials(h, 2 * d)]
        grid = 0
        for a in monos:
            for b in monos:
                f, g = Polynomial.monomial(p, h, a), Polynomial.monomial(p, h, b)
                for k in range(5):
                    assert cartan_check(f, g, k)
                    grid += 1
        # the identity is bilinear in (f, g), so the monomial grid covers all f, g of degree <= 4
        rng = random.Random(2024)
        for _ in range(500):
            pp = rng.choice([3, 5, 7])
            hh = rng.randint(1, 3)
            f = Polynomial(pp, hh, {m: rng.randrange(pp) for m in enumerate_monomials(hh, 2 * rng.randint(3, 7))})
            g = Polynomial(pp, hh, {m: rng.randrange(pp) for m in enumerate_monomials(hh, 2 * rng.randint(3, 7))})
            assert cartan_check(f, g, rng.randint(0, 8))
        r.extra = f"{grid} grid cases"


def test_criterion_07_thm24(tmp_path, capsys):
    with record(7, "kernel/image search for P^1, p in {3,5}, h in {1,2,3}, n<=60") as r:
        thm24_reports = {(p, h): thm24_search(p, h, 60) for p in (3, 5) for h in (1, 2, 3)}
        found = []
        for (p, h), rep in sorted(thm24_reports.items()):
            assert [row["n"] for row in rep.details] == list(range(2, 61, 2))
            for row in rep.details:
                assert {"kernel_dim", "image_dim", "kernel_in_image_dim"} <= set(row)
            if rep.certificates:
                path = tmp_path / f"thm24-{p}-{h}.json"
                path.write_text(rep.dumps())
                assert main(["recheck", str(path)]) == 0
                out = capsys.readouterr().out
                assert out.count("PASS") == len(rep.certificates) and "FAIL" not in out
                found.append(f"p={p},h={h}:{len(rep.certificates)}")
            else:
                assert rep.verdict == VERIFIED
                assert rep.config["n_min"] == 2 and rep.config["n_max"] == 60
        r.extra = "counterexamples " + " ".join(found) if found else "none found"


def test_criterion_08_invariants():
    with record(8, "GL invariants: generators vs full group, p=3, h<=2, n<=30") as r:
        rng = random.Random(88)
        checked = 0
        for h in (1, 2):
            for n in range(0, 31, 2):
                gen = invariant_subspace(3, h, n, "generators")
                full = invariant_subspace(3, h, n, "full-group")
                assert gen.dim == full.dim
                if h == 2:
                    assert len(full.elements) == 48
                q = quotient(3, h, n)
                extra = [random_group_element(rng, h, 3) for _ in range(20)]
                for v in gen.basis:
                    for a in extra:
                        assert np.array_equal(matmul(induced_action(q, a), v, 3), np.array(v))
                checked += 1
        r.extra = f"{checked} degrees"


def test_criterion_09_witness_soundness(monkeypatch):
    with record(9, "every hit verdict carries a re-verified witness") as r:
        start = audited_witnesses()
        phi_report = _phi_report()
        before = audited_witnesses()
        # every hit verdict in the phi sweep went through the audit
        engine_hits = sum(1 for row in phi_report.details if row.get("engine_verdict") == "hit")
        # one audit for the p-th power witness and one for the engine verdict per sample
        assert before - start == len(phi_report.details) + engine_hits
        assert engine_hits == 100
        rep = is_hit(parse_polynomial("t1^12*t2", 5, 2))
        assert rep.is_hit and rep.witness.evaluate() == rep.query
        assert audited_witnesses() == before + 1
        # the audit is always on: a corrupted witness path raises instead of returning
        q = quotient(5, 2, 26)
        monkeypatch.setattr(q, "witness", lambda f: HitDecomposition(f, {1: parse_polynomial("t1^4*t2^5", 5, 2)}))
        with pytest.raises(hit.WitnessAuditError):
            is_hit(parse_polynomial("t1^12*t2", 5, 2), q)
        r.extra = f"{audited_witnesses()} witnesses audited"


def test_criterion_10_determinism():
    with record(10, "same seed gives byte-identical reports") as r:
        def sweep():
            hit.clear_cache()
            return [
                verify_crossley(3, 2, 60).dumps(),
                thm24_search(5, 2, 40).dumps(),
                phi_always_hit(3, 2, MapParams(1, (1, 1)), samples=20, seed=11).dumps(),
                psi_preserves_hit_probe(3, 2, MapParams(2, (1, 1), (1, 1), 2), samples=5, seed=11).dumps(),
            ]

        first, second = sweep(), sweep()
        assert first == second
        assert all(json.loads(doc)["schema_version"] == certificates.SCHEMA_VERSION for doc in first)
        r.extra = f"{len(first)} report kinds"


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
