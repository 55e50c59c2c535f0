import itertools

import numpy as np
import pytest

from cubelat import hilbert_embed as he
from cubelat import signed_lattice as sl
from cubelat.errors import DomainError, PreconditionError
from cubelat.operators import DenseOperator

X = np.array([[0, 1], [1, 0]])
Z = np.array([[1, 0], [0, -1]])


def ex(a):
    a = np.asarray(a)
    return DenseOperator.exact(a.real.astype(int), a.imag.astype(int))


def test_pauli_matrices_exact_at_n1():
    (r, s, t), report = he.cartesian_triple(1, 1)
    assert report.passed
    assert r == ex(X) and r == he.u_delta(1)
    assert s == ex(Z)
    assert t == ex(np.array([[0, -1j], [1j, 0]]))


def test_triple_sign_variants():
    # i s U and i U s differ by a sign; both are valid third members
    r, s = he.u_delta(1), he.s(1, 1)
    t1, t2 = (s @ r) * 1j, (r @ s) * 1j
    assert t1 == ex(np.array([[0, 1j], [-1j, 0]]))
    assert t2 == ex(np.array([[0, -1j], [1j, 0]]))
    assert t1 == -t2
    for t in (t1, t2):
        assert t.is_symmetry()
        assert he.jordan(r, t).is_zero() and he.jordan(s, t).is_zero()
        for e in he.elementary_matrices(1):
            assert he.ad(r, he.ad(s, he.ad(t, e))) == e


@pytest.mark.parametrize("n", [1, 2, 3])
def test_face_projection_support_and_rank(n):
    for x in sl.faces(n):
        p = he.face_projection_dense(x)
        assert p.is_projection()
        assert p.rank() == len(he.face_support(x)) == 2 ** x.free_count


@pytest.mark.parametrize("n", [1, 2, 3])
def test_meet_is_product_for_all_pairs(n):
    fs = sl.faces(n)
    for x, y in itertools.product(fs, repeat=2):
        m = sl.meet(x, y)
        want = DenseOperator.zeros(n) if isinstance(m, sl.Zero) else he.face_projection_dense(m)
        assert he.face_projection_dense(x) @ he.face_projection_dense(y) == want


def test_join_is_not_hilbert_join_in_general():
    x, y = sl.parse("++"), sl.parse("--")
    P, Q = he.face_projection_dense(x), he.face_projection_dense(y)
    assert he.face_projection_dense(sl.join(x, y)) != he.hl_join(P, Q)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_perp_and_antipode_on_coatoms(n):
    ud = he.u_delta(n)
    for c in sl.coatoms(n):
        p = he.face_projection_dense(c)
        anti = he.face_projection_dense(sl.antipode(c))
        assert he.perp(p) == anti == ud @ p @ ud


def test_s_anticommutes_and_parity_rule_n3():
    ud = he.u_delta(3)
    for i in (1, 2, 3):
        assert he.s(3, i).anticommutes_with(ud)
    for size in range(4):
        for J in itertools.combinations((1, 2, 3), size):
            P = he.parity_product(3, J)
            assert P.anticommutes_with(ud) == (size % 2 == 1)
            assert P.commutes_with(ud) == (size % 2 == 0)


def test_coatom_symmetry_matches_s():
    for i in (1, 2, 3):
        c = sl.SignedSet.from_sets(3, plus=[i])
        assert he.coatom_symmetry(c) == he.s(3, i)
    with pytest.raises(DomainError):
        he.coatom_symmetry(sl.parse("++*"))


def test_balanced_decomposition():
    plus, minus = he.balanced_decomposition(he.u_delta(2))
    assert plus.is_projection() and minus.is_projection()
    assert plus.rank() == minus.rank() == 2
    with pytest.raises(PreconditionError):
        he.balanced_decomposition(DenseOperator.diagonal([1, 0], n=1))


@pytest.mark.parametrize("n,i", [(n, i) for n in (1, 2, 3) for i in range(1, n + 1)])
def test_matrix_units(n, i):
    report = he.verify_matrix_units(n, i)
    assert report.passed, report.failures


@pytest.mark.parametrize("n,i", [(1, 1), (2, 1), (2, 2)])
def test_cartesian_triple_on_full_basis(n, i):
    (r, s, t), report = he.cartesian_triple(n, i)
    assert report.passed
    basis = list(he.elementary_matrices(n))
    assert len(basis) == 4**n
    # independent float check of Ad_r Ad_s Ad_t = id
    R, S, T = r.to_numpy(), s.to_numpy(), t.to_numpy()
    for e in basis:
        E = e.to_numpy()
        assert np.allclose(R @ S @ T @ E @ T.conj().T @ S.conj().T @ R.conj().T, E)


def test_hadamard():
    T = he.hadamard()
    assert np.allclose(T.to_numpy(), np.array([[1, 1], [1, -1]]) / np.sqrt(2))
    assert he.ad(T, he.s(1, 1)) == he.u_delta(1)
    for n in (1, 2, 3):
        Tn = he.hadamard_all(n)
        for i in range(1, n + 1):
            assert he.ad(Tn, he.s(n, i)) == he.u_delta_single(n, i)


def _numpy_span(ops, length):
    words = [np.eye(ops[0].dim)]
    frontier = list(words)
    for _ in range(length):
        frontier = [w @ g.to_numpy() for w in frontier for g in ops]
        words += frontier
    return np.linalg.matrix_rank(np.array([w.ravel() for w in words]), tol=1e-8)


@pytest.mark.parametrize("n", [1, 2])
def test_span_dimensions_against_numpy(n):
    gens = he.conjugated_symmetries(n) + [he.s(n, i) for i in range(1, n + 1)]
    assert he.span_dimension(gens, 6) == 4**n == _numpy_span(gens, 4)
    diag = [he.s(n, i) for i in range(1, n + 1)]
    assert he.span_dimension(diag, 6) == 2**n == _numpy_span(diag, 3)


def test_span_float_path():
    gens = [g.to_float() for g in he.conjugated_symmetries(1)] + [he.s(1, 1).to_float()]
    assert he.span_dimension(gens, 4) == 4


def test_hl_join_and_meet():
    plus = (DenseOperator.identity(1) + he.u_delta(1)) / 2
    e0 = DenseOperator.diagonal([1, 0], n=1)
    assert he.hl_join(plus, e0) == DenseOperator.identity(1)
    assert he.hl_meet(plus, e0).is_zero()


def test_verify_embedding_and_generation():
    assert he.verify_embedding(3).passed
    assert he.verify_generation(2).passed


def test_labels():
    a = sl.parse("+-+")
    assert he.label_of_atom(a) == 0b010
    assert he.atom_of_label(3, 0b010) == a
    with pytest.raises(DomainError):
        he.label_of_atom(sl.parse("+*+"))
