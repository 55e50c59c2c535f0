import math
from fractions import Fraction

import numpy as np
import pytest
from scipy.linalg import expm

from cubelat import gates
from cubelat import hilbert_embed as he
from cubelat.errors import DimensionError, PreconditionError
from cubelat.operators import DenseOperator

X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]])
Z = np.array([[1, 0], [0, -1]], dtype=complex)


def test_rotation_pinned_values():
    assert np.allclose(gates.rotation("z", 0).matrix, np.eye(2))
    assert np.allclose(gates.rotation("x", math.pi).matrix, [[0, -1j], [-1j, 0]])
    r = 2**-0.5
    assert np.allclose(gates.rotation("y", math.pi / 2).matrix, [[r, -r], [r, r]])


@pytest.mark.parametrize("axis,sigma", [("x", X), ("y", Y), ("z", Z)])
def test_rotation_matches_expm(axis, sigma):
    for theta in np.linspace(-7, 7, 29):
        assert np.allclose(gates.rotation(axis, theta).matrix, expm(-0.5j * theta * sigma), atol=1e-12)


@pytest.mark.parametrize("axis,sigma", [("x", X), ("y", Y), ("z", Z)])
def test_positive_exponent_is_the_inverse_rotation(axis, sigma):
    theta = 0.9
    m = gates.rotation(axis, theta).matrix
    assert not np.allclose(m, expm(0.5j * theta * sigma))
    assert np.allclose(m.conj().T, expm(0.5j * theta * sigma))


def test_y_generator_is_i_u_s():
    assert np.allclose(gates.GENERATORS["y"], 1j * (he.u_delta(1) @ he.s(1, 1)).to_numpy())


def test_rotation_group_law():
    rng = np.random.default_rng(0)
    for axis in "xyz":
        for a, b in rng.uniform(-10, 10, (100, 2)):
            m = gates.rotation(axis, a).matrix @ gates.rotation(axis, b).matrix
            assert np.allclose(m, gates.rotation(axis, a + b).matrix, atol=1e-10)


def test_rotation_rejects_bad_input():
    with pytest.raises(ValueError):
        gates.rotation("w", 1.0)
    with pytest.raises(ValueError):
        gates.rotation("x", float("nan"))


def test_rotation_multi():
    assert gates.rotation_multi([0, 0], 2) == DenseOperator.identity(2)
    m = gates.rotation_multi([0.25], 1).to_numpy()
    assert np.allclose(m, np.diag([1j, -1j]))
    rng = np.random.default_rng(3)
    for _ in range(50):
        th = rng.uniform(-1, 1, 2).tolist()
        gen = sum(2 * np.pi * t * he.s(2, i + 1).to_numpy() for i, t in enumerate(th))
        assert np.allclose(gates.rotation_multi(th, 2).to_numpy(), expm(1j * gen))
    with pytest.raises(DimensionError):
        gates.rotation_multi([0.1], 2)


def test_conjugation_identity_examples():
    ud, s = he.u_delta(1), he.s(1, 1)
    assert gates.conjugation_identity_check(ud, s, "exp", 0.7, anticommuting=True)
    lhs = ud.to_numpy() @ expm(0.7 * s.to_numpy()) @ ud.to_numpy()
    assert np.allclose(lhs, expm(-0.7 * s.to_numpy()))
    assert gates.conjugation_identity_check(DenseOperator.identity(1), s, "exp", 2.0)
    assert gates.conjugation_identity_check(s, s, "exp", 0.4)
    assert gates.conjugation_identity_check(he.hadamard(), s, "polynomial", [1, 2, 3])


def test_conjugation_precondition_distinct_from_failure():
    s = he.s(1, 1)
    with pytest.raises(PreconditionError):
        gates.conjugation_identity_check(DenseOperator.diagonal([2, 1], n=1), s)
    with pytest.raises(PreconditionError):
        gates.conjugation_identity_check(he.u_delta(1), DenseOperator.exact([[1, 1], [0, 1]]))
    with pytest.raises(PreconditionError):
        gates.conjugation_identity_check(s, s, "exp", 1.0, anticommuting=True)


def test_triple_members_invert_each_others_rotations():
    (r, s, t), _ = he.cartesian_triple(2, 2)
    trip = [r, s, t]
    for U in trip:
        for A in trip:
            if U is A:
                continue
            for tt in (1, -1, 0.3, -0.3):
                assert gates.conjugation_identity_check(U, A, "exp", 1j * tt, anticommuting=True)


@pytest.mark.parametrize("theta,order", [(Fraction(1, 3), 6), (Fraction(1, 4), 8), (Fraction(1, 6), 12),
                                         (Fraction(1, 5), 10), (Fraction(2, 7), 14)])
def test_dihedral_orders(theta, order):
    res = gates.dihedral_closure(theta)
    assert res.closed and res.order == order and res.classification == f"D_{order}"
    assert res.presentation_ok
    std = gates.dihedral_standard_form(theta, order)
    assert gates.same_element_set(res.elements, std)


def test_dihedral_irrational_exceeds_cap():
    res = gates.dihedral_closure(1 / math.sqrt(2), cap=1000)
    assert not res.closed and res.classification == "exceeded cap" and res.order is None


@pytest.mark.parametrize("theta", [Fraction(0), Fraction(1, 2), Fraction(1)])
def test_dihedral_degenerate(theta):
    res = gates.dihedral_closure(theta)
    assert res.closed and res.degenerate and res.classification == "degenerate"


def test_root_of_unity_order_matches_exact_arithmetic():
    for q in range(3, 25):
        for p in range(1, q):
            if math.gcd(p, q) != 1:
                continue
            r_order = gates.matrix_order(gates.phase_block(p / q))
            assert r_order == q  # e^{2 pi i p/q} is a primitive q-th root when gcd(p, q) = 1


def test_verify_dihedral():
    assert gates.verify_dihedral().passed


def test_universal_gate_set_n1():
    g = gates.universal_gate_set(1)
    assert set(g) == {"I", "X1", "sqrtZ1", "H"}
    assert np.allclose(g["X1"].to_numpy(), X)
    assert g["sqrtZ1"] == DenseOperator.exact([[1, 0], [0, 0]], [[0, 0], [0, 1]])
    assert g["sqrtZ1"] @ g["sqrtZ1"] == he.s(1, 1)
    assert np.allclose(g["H"].to_numpy(), np.array([[1, 1], [1, -1]]) / np.sqrt(2))


def test_universal_gates_unitary_n3():
    assert all(op.is_unitary() for op in gates.universal_gate_set(3).values())


def test_parse_theta():
    assert gates.parse_theta("1/3") == Fraction(1, 3)
    assert isinstance(gates.parse_theta("0.25"), float)


def test_function_of_normal_operator():
    s = he.s(1, 1)
    assert np.allclose(gates.function_of(s, np.exp), expm(s.to_numpy()))


def test_verify_gates():
    assert gates.verify_gates(2).passed
