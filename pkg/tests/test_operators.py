import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from cubelat.errors import CapExceeded, DimensionError
from cubelat.operators import DenseOperator, ExactSpan, check_dense_cap, exact_rank, kron

small_ints = hnp.arrays(np.int64, (4, 4), elements=st.integers(-3, 3))


def exact(re, im=None, k=0):
    return DenseOperator(2, re=re, im=np.zeros_like(re) if im is None else im, k=k)


@settings(max_examples=100, deadline=None)
@given(small_ints, small_ints, small_ints, small_ints, st.integers(-3, 3), st.integers(-3, 3))
def test_exact_arithmetic_matches_numpy(a, b, c, d, k1, k2):
    x, y = exact(a, b, k1), exact(c, d, k2)
    X, Y = x.to_numpy(), y.to_numpy()
    assert np.allclose((x @ y).to_numpy(), X @ Y)
    assert np.allclose((x + y).to_numpy(), X + Y)
    assert np.allclose((x - y).to_numpy(), X - Y)
    assert np.allclose(x.adjoint().to_numpy(), X.conj().T)
    assert np.allclose((x * (2 - 1j)).to_numpy(), X * (2 - 1j))


@settings(max_examples=100, deadline=None)
@given(small_ints, small_ints)
def test_normal_form_makes_equality_exact(a, b):
    x = exact(a, b)
    assert x * 2 / 2 == x
    assert x.scaled_sqrt2(2) == x * 2
    assert x.scaled_sqrt2(1).scaled_sqrt2(-1) == x


def test_sqrt2_arithmetic_is_exact():
    h = DenseOperator.exact([[1, 1], [1, -1]], sqrt2_power=-1)
    assert h @ h == DenseOperator.identity(1)
    assert h.is_unitary() and h.is_symmetry()


def test_float_mode_tolerance():
    a = DenseOperator.from_array(np.eye(2) + 1e-12)
    assert a == DenseOperator.identity(1)
    assert a.mode == "float"
    assert DenseOperator.from_array(np.eye(2) + 1e-6) != DenseOperator.identity(1)


def test_shape_checked():
    with pytest.raises(DimensionError):
        DenseOperator(1, re=np.zeros((3, 3), dtype=int))
    with pytest.raises(TypeError):
        DenseOperator(1, re=np.zeros((2, 2)))


def test_large_entries_widen_instead_of_overflow():
    big = DenseOperator(1, re=np.array([[2**40, 0], [0, 1]]))
    sq = big @ big @ big
    assert int(sq.to_json_dict()["entries"][0][0][0].split("/")[0]) == 2**120


def test_kron_matches_numpy():
    rng = np.random.default_rng(0)
    a = DenseOperator(1, re=rng.integers(-2, 3, (2, 2)), im=rng.integers(-2, 3, (2, 2)))
    b = DenseOperator(2, re=rng.integers(-2, 3, (4, 4)), im=rng.integers(-2, 3, (4, 4)))
    assert np.allclose(kron(a, b).to_numpy(), np.kron(a.to_numpy(), b.to_numpy()))


def test_permutation_and_diagonal():
    p = DenseOperator.permutation([1, 2, 3, 0], n=2)
    assert p.is_unitary() and not p.is_hermitian()
    e0 = np.zeros(4)
    e0[0] = 1
    assert np.allclose(p.to_numpy() @ e0, np.eye(4)[1])
    d = DenseOperator.diagonal([1, 0, 0, 1], n=2)
    assert d.is_projection() and d.rank() == 2 and d.is_diagonal()


@settings(max_examples=60, deadline=None)
@given(hnp.arrays(np.int64, (5, 6), elements=st.integers(-2, 2)),
       hnp.arrays(np.int64, (5, 6), elements=st.integers(-2, 2)))
def test_exact_rank_matches_numpy(re, im):
    rows = [list(zip(re[i].tolist(), im[i].tolist())) for i in range(5)]
    assert exact_rank(rows) == np.linalg.matrix_rank(re + 1j * im)


def test_exact_rank_sees_complex_dependence():
    span = ExactSpan()
    assert span.add([(1, 0), (0, 1)])
    assert not span.add([(0, 1), (-1, 0)])  # i times the first row
    assert span.rank == 1


def test_dense_cap_env(monkeypatch):
    monkeypatch.setenv("CUBELAT_DENSE_CAP", "3")
    with pytest.raises(CapExceeded, match="4\\^4"):
        check_dense_cap(4)
    check_dense_cap(3)


def test_json_dump_exact():
    h = DenseOperator.exact([[1, 1], [1, -1]], sqrt2_power=-1)
    dump = h.to_json_dict()
    assert dump["sqrt2_power"] == 1
    assert dump["entries"][1][1] == ["-1/2", "0/1"]
