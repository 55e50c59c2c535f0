"""The hyperoctahedral group Z2 wr S_n acting on the cubic lattice.

An element is stored in normal form ``g = P . F``: first flip the signs at
the indices marked in ``flip``, then move index ``i`` to ``perm[i]``. On a
sign vector this reads ``(g x)[perm[i]] = (-1)**flip[i] * x[i]``, which is
exactly the compact matrix with entry ``(perm[i], i) = -1 if flip[i] else 1``.

Composition ``g * h`` applies ``h`` first. Internally the element is packed
as one integer array ``code[i] = perm[i] << 1 | flip[i]`` (0-based indices)
so that a composition is a single gather plus an xor, which keeps the
compact backend linear in n with a small constant.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Sequence

import numpy as np

from . import signed_lattice as sl
from .errors import CapExceeded, DimensionError, DomainError, PreconditionError
from .operators import DenseOperator, check_dense_cap
from .signed_lattice import CubicElement, SignedSet, Zero


class SignedPermutation:
    __slots__ = ("n", "_code", "_perm", "_flip")

    def __init__(self, perm: Sequence[int], flip: Sequence[bool] | None = None, *, check: bool = True):
        """``perm`` is 0-based: index ``i`` goes to ``perm[i]``."""
        perm = np.asarray(perm, dtype=np.intp)
        n = perm.shape[0]
        if n < 1:
            raise ValueError("n must be positive")
        flip = np.zeros(n, dtype=np.intp) if flip is None else np.asarray(flip, dtype=np.intp)
        if flip.shape != (n,):
            raise DimensionError("perm and flip lengths differ")
        if check:
            seen = np.zeros(n, dtype=bool)
            if perm.min() < 0 or perm.max() >= n:
                raise ValueError("perm entries outside 0..n-1")
            seen[perm] = True
            if not seen.all():
                raise ValueError("perm is not a bijection")
            if ((flip != 0) & (flip != 1)).any():
                raise ValueError("flip flags must be 0/1")
        self.n = n
        self._perm = perm
        self._flip = flip
        self._code = None

    @classmethod
    def _from_code(cls, code: np.ndarray) -> "SignedPermutation":
        g = cls.__new__(cls)
        g.n = code.shape[0]
        g._code = code
        g._perm = None
        g._flip = None
        return g

    @property
    def code(self) -> np.ndarray:
        if self._code is None:
            self._code = (self._perm << 1) | self._flip
        return self._code

    @property
    def perm(self) -> np.ndarray:
        if self._perm is None:
            self._perm = self._code >> 1
        return self._perm

    @property
    def flip(self) -> np.ndarray:
        if self._flip is None:
            self._flip = self._code & 1
        return self._flip

    # -- named elements ----------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "SignedPermutation":
        return cls(np.arange(n), check=False)

    @classmethod
    def delta(cls, n: int) -> "SignedPermutation":
        """The central all-flip element (the antipodal map)."""
        return cls(np.arange(n), np.ones(n, dtype=np.intp), check=False)

    @classmethod
    def flip_at(cls, n: int, i: int) -> "SignedPermutation":
        """Single sign flip at 1-based index ``i``."""
        flip = np.zeros(n, dtype=np.intp)
        flip[i - 1] = 1
        return cls(np.arange(n), flip, check=False)

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> "SignedPermutation":
        perm = np.arange(n)
        perm[i - 1], perm[j - 1] = j - 1, i - 1
        return cls(perm, check=False)

    @classmethod
    def random(cls, n: int, rng: np.random.Generator) -> "SignedPermutation":
        return cls(rng.permutation(n), rng.integers(0, 2, size=n), check=False)

    # -- group structure ---------------------------------------------------

    def __mul__(self, other: "SignedPermutation") -> "SignedPermutation":
        return compose(self, other)

    def inverse(self) -> "SignedPermutation":
        inv = np.empty(self.n, dtype=np.intp)
        inv[self.perm] = np.arange(self.n)
        # g^-1 flips at perm[i] whatever g flipped at i
        return SignedPermutation(inv, self.flip[inv], check=False)

    def __eq__(self, other):
        if not isinstance(other, SignedPermutation):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.code, other.code)

    def __hash__(self):
        return hash(self.code.tobytes())

    def is_identity(self) -> bool:
        return bool((self.code == (np.arange(self.n) << 1)).all())

    def __str__(self):
        """Cycle-plus-signs form, e.g. ``(1 2)(3)·flips{2}``."""
        perm = self.perm.tolist()
        seen = set()
        cycles = []
        for start in range(self.n):
            if start in seen:
                continue
            cyc = []
            i = start
            while i not in seen:
                seen.add(i)
                cyc.append(i + 1)
                i = perm[i]
            cycles.append("(" + " ".join(map(str, cyc)) + ")")
        flips = ",".join(str(i + 1) for i in range(self.n) if self.flip[i])
        return "".join(cycles) + "·flips{" + flips + "}"

    def __repr__(self):
        return f"SignedPermutation({self})"


def compose(g: SignedPermutation, h: SignedPermutation) -> SignedPermutation:
    """``g * h``: apply ``h``, then ``g``."""
    if g.n != h.n:
        raise DimensionError(f"compose on n={g.n} and n={h.n}")
    code = np.take(g.code, h.perm)
    code ^= h.flip
    return SignedPermutation._from_code(code)


def all_elements(n: int, cap: int = 4) -> list[SignedPermutation]:
    """Every element of Z2 wr S_n (2^n n! of them) in a fixed order."""
    if n > cap:
        raise CapExceeded(f"enumerating 2^{n}*{n}! group elements exceeds cap n <= {cap}")
    out = []
    for perm in itertools.permutations(range(n)):
        for flips in itertools.product((0, 1), repeat=n):
            out.append(SignedPermutation(perm, flips, check=False))
    return out


# --- actions ------------------------------------------------------------------

def act_signs(g: SignedPermutation, signs: np.ndarray) -> np.ndarray:
    """Action on a sign vector in {-1, 0, 1}^n (compact backend)."""
    signs = np.asarray(signs)
    if signs.shape != (g.n,):
        raise DimensionError("sign vector length differs from n")
    out = np.empty_like(signs)
    out[g.perm] = signs * (1 - 2 * g.flip)
    return out


def _signs_of(x: SignedSet) -> np.ndarray:
    return np.array([x.sign(i) for i in range(1, x.n + 1)], dtype=np.int64)


def _face_of(signs: np.ndarray) -> SignedSet:
    n = len(signs)
    plus = minus = 0
    for i, s in enumerate(signs.tolist()):
        if s > 0:
            plus |= 1 << i
        elif s < 0:
            minus |= 1 << i
    return SignedSet(n, plus, minus)


def act(g: SignedPermutation, x: CubicElement) -> CubicElement:
    """Lattice automorphism induced by ``g``; fixes Zero."""
    if g.n != x.n:
        raise DimensionError(f"group element on n={g.n}, element on n={x.n}")
    if isinstance(x, Zero):
        return x
    return _face_of(act_signs(g, _signs_of(x)))


def compact_matrix(g: SignedPermutation) -> np.ndarray:
    m = np.zeros((g.n, g.n), dtype=np.int64)
    m[g.perm, np.arange(g.n)] = 1 - 2 * g.flip
    return m


# --- dense representation -----------------------------------------------------
#
# Basis label of an atom: bit for index i (1-based) at position n - i, so
# index 1 is the most significant bit; bit 0 = e+ and bit 1 = e-.

def label_images(g: SignedPermutation) -> np.ndarray:
    """``images[L]`` = label of ``g`` applied to the atom with label ``L``."""
    n = g.n
    labels = np.arange(2**n, dtype=np.int64)
    out = np.zeros_like(labels)
    perm, flip = g.perm, g.flip
    for i in range(n):
        bit = (labels >> (n - 1 - i)) & 1
        bit ^= int(flip[i])
        out |= bit << (n - 1 - int(perm[i]))
    return out


def dense_unitary(g: SignedPermutation, cap: int | None = None) -> DenseOperator:
    """The 2^n x 2^n permutation matrix of g on the atom basis."""
    check_dense_cap(g.n, cap)
    return DenseOperator.permutation(label_images(g), n=g.n)


def dense_matrix_float(g: SignedPermutation) -> np.ndarray:
    """Float64 permutation matrix, used as the naive dense benchmark baseline."""
    images = label_images(g)
    m = np.zeros((2**g.n, 2**g.n))
    m[images, np.arange(2**g.n)] = 1.0
    return m


# --- group facts --------------------------------------------------------------

def center(n: int) -> list[SignedPermutation]:
    """Exact center of Z2 wr S_n by brute force (n <= 4)."""
    elems = all_elements(n)
    return [z for z in elems if all(compose(z, g) == compose(g, z) for g in elems)]


def transitivity_witness(u: SignedSet, v: SignedSet) -> list[SignedPermutation]:
    """Single-index flips, one per index where the atoms disagree."""
    if u.n != v.n:
        raise DimensionError("atoms over different n")
    for a in (u, v):
        if not isinstance(a, SignedSet) or not a.is_atom:
            raise DomainError(f"{a} is not an atom")
    differ = u.plus ^ v.plus
    return [SignedPermutation.flip_at(u.n, i) for i in range(1, u.n + 1) if differ >> (i - 1) & 1]


def compose_all(elements: Iterable[SignedPermutation], n: int) -> SignedPermutation:
    out = SignedPermutation.identity(n)
    for g in elements:
        out = compose(g, out)
    return out


def commutes_with_delta_action(U: DenseOperator) -> bool:
    """Do Ad_U and Ad_{U_Delta} commute on every embedded face projection?"""
    if not U.is_unitary():
        raise PreconditionError("commutes_with_delta_action needs a unitary")
    from .hilbert_embed import face_projection_dense, u_delta

    ud = u_delta(U.n)
    Ustar = U.adjoint()
    for x in sl.faces(U.n):
        p = face_projection_dense(x)
        if U @ (ud @ p @ ud) @ Ustar != ud @ (U @ p @ Ustar) @ ud:
            return False
    return True


def verify_representation(n: int, *, seed: int = 0, pairs: int = 1000) -> "Report":
    """rho is a homomorphism, equivariant on face projections; center; backend agreement."""
    from .hilbert_embed import atom_of_label, face_projection_dense, label_of_atom
    from .report import Report

    report = Report(f"automorphism representation n={n}")
    anchor = "automorphism group of CL"
    if n <= 2:
        elems = all_elements(n)
        rho = {g: dense_unitary(g) for g in elems}
        bad = None
        for g in elems:
            for h in elems:
                if rho[compose(g, h)] != rho[g] @ rho[h]:
                    bad = [str(g), str(h)]
                    break
            if bad:
                break
        report.add("rho_homomorphism", bad is None, anchor, bad, f"{len(elems)**2} pairs")
        bad = None
        for g in elems:
            U = rho[g]
            for x in sl.faces(n):
                if U @ face_projection_dense(x) @ U.adjoint() != face_projection_dense(act(g, x)):
                    bad = [str(g), str(x)]
                    break
            if bad:
                break
        report.add("rho_equivariant", bad is None, anchor, bad)
    if n <= 3:
        z = center(n)
        ok = len(z) == 2 and SignedPermutation.identity(n) in z and SignedPermutation.delta(n) in z
        report.add("center_is_identity_and_delta", ok, "center of the hyperoctahedral group",
                   [str(g) for g in z])
    if n <= 8:
        rng = np.random.default_rng(seed)
        bad = None
        for _ in range(pairs):
            g = SignedPermutation.random(n, rng)
            label = int(rng.integers(0, 2**n))
            compact = label_of_atom(act(g, atom_of_label(n, label)))
            e = np.zeros(2**n)
            e[label] = 1.0
            dense = int(np.argmax(dense_matrix_float(g) @ e))
            if compact != dense:
                bad = [str(g), label]
                break
        report.add("compact_dense_agree", bad is None, "lower dimensional representation", bad,
                   f"{pairs} random (g, atom) pairs")
    return report
