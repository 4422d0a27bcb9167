import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from steenhit import _backend, linalg
from steenhit.errors import ConfigurationError, UsageError

from oracles import brute_rowspace, brute_solve


@pytest.fixture(params=sorted(_backend.IMPLEMENTATIONS))
def backend(request, monkeypatch):
    monkeypatch.setattr(_backend, "rref_inplace", _backend.IMPLEMENTATIONS[request.param])
    return request.param


def test_rref_examples(backend):
    red = linalg.rref([[1, 2], [2, 1]], 3)
    assert red.reduced.tolist() == [[1, 2]]
    assert red.pivot_cols == (0,) and red.rank == 1
    # brute-force re-check: same row space
    assert brute_rowspace(red.reduced, 3) == brute_rowspace([[1, 2], [2, 1]], 3)

    eye = np.eye(3, dtype=np.int64)
    red = linalg.rref(eye, 5)
    assert red.reduced.tolist() == eye.tolist() and red.rank == 3

    red = linalg.rref(np.zeros((2, 4)), 5)
    assert red.rank == 0 and red.pivot_cols == () and red.reduced.shape == (0, 4)


@pytest.mark.parametrize("p", [1, 2, 4, 9, -3])
def test_bad_modulus(p):
    with pytest.raises(ConfigurationError):
        linalg.rref([[1]], p)


def test_solve_examples(backend):
    assert linalg.solve([[1]], [3], 5).tolist() == [3]
    assert brute_solve([[1, 1], [2, 2]], [1, 1], 3) == []
    assert linalg.solve([[1, 1], [2, 2]], [1, 1], 3) is None
    x = linalg.solve([[0]], [0], 3)
    assert x is not None and (np.array([[0]]) @ x % 3 == 0).all()
    with pytest.raises(UsageError):
        linalg.solve([[1, 2]], [1, 2], 3)


def test_cokernel_complement_examples():
    assert linalg.cokernel_complement([[1, 0, 2]], 3, 3) == [1, 2]
    # images of e1, e2 are independent modulo the span
    assert linalg.rank([[1, 0, 2], [0, 1, 0], [0, 0, 1]], 3) == 3
    assert linalg.cokernel_complement([], 4, 5) == [0, 1, 2, 3]
    assert linalg.cokernel_complement(np.eye(4, dtype=np.int64), 4, 7) == []


def test_kernel_small():
    m = [[1, 1, 0], [0, 1, 1]]
    ker = linalg.kernel(m, 3)
    assert ker.shape == (1, 3)
    assert not (np.array(m) @ ker[0] % 3).any()
    assert linalg.left_kernel(np.array(m).T, 3).tolist() == ker.tolist()


matrices = st.tuples(st.sampled_from([3, 5, 7]), st.integers(1, 6), st.integers(1, 6)).flatmap(
    lambda t: st.tuples(
        st.just(t[0]),
        st.lists(st.lists(st.integers(0, t[0] - 1), min_size=t[2], max_size=t[2]), min_size=t[1], max_size=t[1]),
    )
)


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_rref_properties(data):
    p, m = data
    m = np.array(m, dtype=np.int64)
    red = linalg.rref(m, p)
    r = red.reduced
    # echelon shape: pivots strictly increase, pivot entries 1, pivot columns clean
    assert list(red.pivot_cols) == sorted(set(red.pivot_cols))
    for i, c in enumerate(red.pivot_cols):
        assert r[i, c] == 1
        assert (r[:, c] == np.eye(red.rank, dtype=np.int64)[:, i]).all()
        assert not r[i, :c].any()
    # row space preserved, by mutual membership
    for row in m:
        assert linalg.in_rowspace(row, r, red.pivot_cols, p)
    for row in r:
        assert linalg.solve(m.T, row, p) is not None
    # idempotent
    again = linalg.rref(r, p)
    assert again.reduced.tolist() == r.tolist()
    # rank-nullity
    assert red.rank + len(linalg.cokernel_complement(m, m.shape[1], p)) == m.shape[1]
    assert red.rank + len(linalg.kernel(m, p)) == m.shape[1]


@settings(max_examples=200, deadline=None)
@given(matrices, st.data())
def test_solve_sound(data, draw):
    p, m = data
    m = np.array(m, dtype=np.int64)
    b = np.array(draw.draw(st.lists(st.integers(0, p - 1), min_size=len(m), max_size=len(m))))
    x = linalg.solve(m, b, p)
    if x is None:
        if m.shape[1] <= 4:
            assert brute_solve(m, b, p) == []
        else:
            assert linalg.rank(np.column_stack([m, b]), p) > linalg.rank(m, p)
    else:
        assert not ((m @ x - b) % p).any()


def test_backends_agree():
    rng = np.random.default_rng(1)
    impls = _backend.IMPLEMENTATIONS
    for p in (3, 5, 7):
        for shape in [(1, 1), (5, 9), (40, 30), (30, 40), (80, 80)]:
            m = rng.integers(0, p, size=shape)
            m[rng.random(shape) < 0.6] = 0
            results = []
            for fn in impls.values():
                a = np.ascontiguousarray(m.astype(np.int64))
                piv = fn(a, p)
                results.append((list(piv), a.tolist()))
            assert all(r == results[0] for r in results)
