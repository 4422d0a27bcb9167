import random

import numpy as np
import pytest

from steenhit.errors import BudgetExceeded, UsageError
from steenhit.hit import quotient
from steenhit.invariants import (
    all_group_elements,
    det_mod,
    gl_generators,
    gl_order,
    group_closure,
    induced_action,
    invariant_subspace,
    random_group_element,
)
from steenhit.linalg import matmul
from steenhit.poly import Polynomial, substitute_linear


def test_gl_generators_examples():
    assert gl_generators(1, 3) == [((2,),)]
    assert len(group_closure(gl_generators(1, 3), 3)) == 2
    assert len(group_closure(gl_generators(2, 3), 3)) == 48 == gl_order(2, 3)
    for h, p in [(1, 5), (2, 3), (2, 5), (3, 3), (4, 3)]:
        assert all(det_mod(g, p) for g in gl_generators(h, p))


@pytest.mark.parametrize("h,p", [(1, 5), (1, 7), (2, 5), (3, 3)])
def test_generators_generate(h, p):
    assert len(group_closure(gl_generators(h, p), p)) == gl_order(h, p)


def test_full_group_enumeration():
    els = all_group_elements(2, 3)
    assert len(els) == 48 and len(set(els)) == 48
    assert set(els) == set(group_closure(gl_generators(2, 3), 3))
    with pytest.raises(BudgetExceeded):
        all_group_elements(3, 5, budget=1000)


def test_induced_action_examples():
    q = quotient(3, 2, 10)
    assert np.array_equal(induced_action(q, ((1, 0), (0, 1))), np.eye(q.dim, dtype=np.int64))
    q = quotient(3, 1, 4)
    assert induced_action(q, ((2,),)).tolist() == [[1]]
    with pytest.raises(UsageError):
        induced_action(q, ((1, 0), (0, 1)))
    with pytest.raises(UsageError):
        induced_action(quotient(3, 2, 4), ((1, 1), (1, 1)))


def test_induced_action_homomorphism():
    rng = random.Random(5)
    for n in range(0, 21, 2):
        q = quotient(3, 2, n)
        for _ in range(5):
            a = random_group_element(rng, 2, 3)
            b = random_group_element(rng, 2, 3)
            ab = matmul(a, b, 3).tolist()
            lhs = induced_action(q, ab)
            rhs = matmul(induced_action(q, a), induced_action(q, b), 3)
            assert np.array_equal(lhs, rhs)


def test_action_commutes_with_steenrod():
    from steenhit.steenrod import p_k

    rng = random.Random(9)
    for _ in range(20):
        a = random_group_element(rng, 3, 3)
        f = Polynomial(3, 3, {(rng.randrange(4), rng.randrange(4), rng.randrange(4)): 1})
        for k in range(3):
            assert substitute_linear(p_k(f, k), a) == p_k(substitute_linear(f, a), k)


def test_invariant_examples():
    rep = invariant_subspace(3, 2, 0)
    assert rep.dim == 1
    rep = invariant_subspace(3, 1, 4)
    assert rep.dim == 1 and rep.quotient_monomials == ((2,),)
    assert invariant_subspace(3, 2, 4).dim == invariant_subspace(3, 2, 4, "full-group").dim
    with pytest.raises(UsageError):
        invariant_subspace(3, 2, 4, "averaging")


@pytest.mark.parametrize("p,h", [(3, 1), (3, 2), (5, 1), (5, 2)])
def test_methods_agree_and_vectors_fixed(p, h):
    rng = random.Random(p + h)
    for n in range(0, 31, 2):
        gen = invariant_subspace(p, h, n)
        full = invariant_subspace(p, h, n, "full-group")
        assert gen.dim == full.dim
        q = quotient(p, h, n)
        for _ in range(20):
            a = random_group_element(rng, h, p)
            m = induced_action(q, a)
            for v in gen.basis:
                assert np.array_equal(matmul(m, v, p), np.array(v))


def test_report_json():
    rep = invariant_subspace(3, 1, 4)
    data = rep.to_json()
    assert data["dim"] == 1 and data["generators"] == [[[2]]] and data["basis"] == [[1]]
