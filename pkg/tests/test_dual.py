import itertools

import numpy as np
import pytest

from cubelat import dual
from cubelat import hilbert_embed as he
from cubelat import signed_lattice as sl
from cubelat.errors import CapExceeded, DomainError


def test_phi_examples():
    x = sl.SignedSet.from_sets(2, [1], [2])
    assert dual.phi(x) == {(1, "+"), (2, "-")}
    assert dual.phi(sl.top(3)) == frozenset()
    assert all(len(dual.phi(a)) == 3 for a in sl.atoms(3))


def test_theta_inv_examples():
    assert dual.theta_inv(sl.SignedSet.from_sets(2, [1])) == {(1, "-")}
    assert dual.theta_inv(sl.top(2)) == frozenset()


def test_zero_handling():
    with pytest.raises(DomainError):
        dual.phi(sl.Zero(2))
    assert len(dual.phi(sl.Zero(2), extended=True)) == 4


@pytest.mark.parametrize("n", [1, 2, 3])
def test_order_reversal_exhaustive(n):
    fs = sl.faces(n)
    images = {x: dual.theta_inv(x) for x in fs}
    assert len(set(images.values())) == len(fs)
    for x, y in itertools.product(fs, repeat=2):
        assert sl.leq(x, y) == (images[y] <= images[x])


@pytest.mark.parametrize("n,count", [(1, 3), (2, 9), (3, 27), (4, 81)])
def test_verify_anti_isomorphism(n, count):
    report = dual.verify_anti_isomorphism(n)
    assert report.passed
    assert report["injective"].detail == f"{count} faces"


def test_verify_capped():
    with pytest.raises(CapExceeded):
        dual.verify_anti_isomorphism(5)


def test_mutant_without_antipode_is_caught():
    report = dual.verify_anti_isomorphism(2, theta_inv=dual.phi)
    assert not report["functionals_annihilate_face"].passed


def test_numeric_annihilation_n2():
    for x in sl.faces(2):
        p = he.face_projection_dense(x).to_numpy()
        for i, sgn in dual.theta_inv(x):
            # trace of P against the diagonal functional
            assert np.trace(np.diag(dual.epsilon(2, i, sgn)) @ p) == 0


def test_serialization():
    f = dual.theta_inv(sl.parse("-+*"))
    assert dual.serialize(f) == ["1+", "2-"]
    assert dual.deserialize(dual.serialize(f)) == f
    with pytest.raises(ValueError):
        dual.deserialize(["1x"])
