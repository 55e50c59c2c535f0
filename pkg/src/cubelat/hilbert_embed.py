"""Cubic-lattice faces as projections on (C^2)^{tensor n}, plus the derived symmetries.

Basis labels follow :mod:`cubelat.hyperoctahedral`: index 1 is the most
significant bit, bit 0 is e+ and bit 1 is e-. All constructors here return
exact operators.
"""

from __future__ import annotations

import itertools

import numpy as np

from . import signed_lattice as sl
from .errors import DomainError, PreconditionError
from .operators import TAU, DenseOperator, ExactSpan, check_dense_cap, kron
from .report import Report
from .signed_lattice import CubicElement, SignedSet, Zero

GENERAL_PRODUCT_CAP = 8


def _check_index(n: int, i: int) -> None:
    if not 1 <= i <= n:
        raise IndexError(f"index {i} outside 1..{n}")


def _bit(n: int, i: int) -> int:
    return 1 << (n - i)


# --- labels -------------------------------------------------------------------

def label_of_atom(x: SignedSet) -> int:
    if not x.is_atom:
        raise DomainError(f"{x} is not an atom")
    return sum(_bit(x.n, i) for i in range(1, x.n + 1) if x.sign(i) < 0)


def atom_of_label(n: int, label: int) -> SignedSet:
    return sl.parse("".join("-" if label & _bit(n, i) else "+" for i in range(1, n + 1)))


def label_str(n: int, label: int) -> str:
    return format(label, f"0{n}b")


def face_support(x: CubicElement) -> frozenset[int]:
    """Labels of the atoms below ``x``."""
    if isinstance(x, Zero):
        return frozenset()
    n = x.n
    fixed_mask = want = 0
    for i in range(1, n + 1):
        s = x.sign(i)
        if s:
            fixed_mask |= _bit(n, i)
            if s < 0:
                want |= _bit(n, i)
    return frozenset(L for L in range(2**n) if L & fixed_mask == want)


def support_mask(x: CubicElement) -> np.ndarray:
    """Boolean indicator of :func:`face_support` over all 2^n labels."""
    n = x.n
    out = np.zeros(2**n, dtype=bool)
    if isinstance(x, Zero):
        return out
    labels = np.arange(2**n)
    out[:] = True
    for i in range(1, n + 1):
        s = x.sign(i)
        if s:
            bit = (labels >> (n - i)) & 1
            out &= bit == (1 if s < 0 else 0)
    return out


def face_projection_dense(x: CubicElement, cap: int | None = None) -> DenseOperator:
    check_dense_cap(x.n, cap)
    return DenseOperator.diagonal(support_mask(x).astype(np.int64), n=x.n)


# --- symmetries ---------------------------------------------------------------

def u_delta(n: int) -> DenseOperator:
    """The antipodal map as a permutation of the atom basis (flip every bit)."""
    check_dense_cap(n)
    labels = np.arange(2**n)
    return DenseOperator.permutation(labels ^ (2**n - 1), n=n)


def u_delta_single(n: int, i: int) -> DenseOperator:
    """Flip only the bit of index ``i``: X on factor i."""
    _check_index(n, i)
    check_dense_cap(n)
    labels = np.arange(2**n)
    return DenseOperator.permutation(labels ^ _bit(n, i), n=n)


def s(n: int, i: int) -> DenseOperator:
    """Coatom symmetry p_c - p_{antipode(c)} for the coatom pinning index i to +."""
    _check_index(n, i)
    check_dense_cap(n)
    labels = np.arange(2**n)
    return DenseOperator.diagonal(1 - 2 * ((labels >> (n - i)) & 1), n=n)


def coatom_symmetry(c: SignedSet) -> DenseOperator:
    """``p_c - p_{antipode(c)}`` for any coatom ``c``."""
    if not c.is_coatom:
        raise DomainError(f"{c} is not a coatom")
    return face_projection_dense(c) - face_projection_dense(sl.antipode(c))


def parity_product(n: int, indices) -> DenseOperator:
    out = DenseOperator.identity(n)
    for j in indices:
        out = out @ s(n, j)
    return out


def balanced_decomposition(U: DenseOperator) -> tuple[DenseOperator, DenseOperator]:
    """Split a symmetry into its +1 and -1 spectral projections."""
    if not U.is_symmetry():
        raise PreconditionError("balanced_decomposition needs a Hermitian involution")
    one = DenseOperator.identity(U.n)
    return (one + U) / 2, (one - U) / 2


def perp(P: DenseOperator) -> DenseOperator:
    if not P.is_projection():
        raise PreconditionError("perp needs an orthogonal projection")
    return DenseOperator.identity(P.n) - P


def jordan(a: DenseOperator, b: DenseOperator) -> DenseOperator:
    """Jordan product (ab + ba)/2."""
    return (a @ b + b @ a) / 2


def ad(u: DenseOperator, x: DenseOperator) -> DenseOperator:
    """Inner automorphism x -> u x u^-1 for a unitary u."""
    return u @ x @ u.adjoint()


def elementary_matrices(n: int):
    dim = 2**n
    for r in range(dim):
        for c in range(dim):
            e = np.zeros((dim, dim), dtype=np.int64)
            e[r, c] = 1
            yield DenseOperator(n, re=e)


# --- matrix units and Cartesian triples ---------------------------------------

def matrix_units(n: int, i: int):
    """(e11, e12, e21, e22) built from s_i and the single flip at i."""
    _check_index(n, i)
    check_dense_cap(n, GENERAL_PRODUCT_CAP)
    one = DenseOperator.identity(n)
    si = s(n, i)
    ui = u_delta_single(n, i)
    e11 = (one + si) / 2
    e12 = ((one + si) @ ui) / 2
    e21 = (ui @ (one + si)) / 2
    e22 = (one - si) / 2
    return e11, e12, e21, e22


def verify_matrix_units(n: int, i: int) -> Report:
    units = matrix_units(n, i)
    one = DenseOperator.identity(n)
    zero = DenseOperator.zeros(n)
    report = Report(f"matrix units n={n} i={i}")
    bad = []
    for a in range(2):
        for b in range(2):
            for c in range(2):
                for d in range(2):
                    got = units[2 * a + b] @ units[2 * c + d]
                    want = units[2 * a + d] if b == c else zero
                    if got != want:
                        bad.append(f"e{a+1}{b+1}*e{c+1}{d+1}")
    anchor = "isomorphism of B(H)"
    report.add("unit_relations", not bad, anchor, bad)
    report.add("units_sum_to_identity", units[0] + units[3] == one, anchor, "e11+e22 != I")
    report.add("e12_adjoint_is_e21", units[1].adjoint() == units[2], anchor, "e12* != e21")
    report.add("flip_is_e12_plus_e21", units[1] + units[2] == u_delta_single(n, i), anchor,
               "U_delta_i != e12+e21")
    report.add("s_is_e11_minus_e22", units[0] - units[3] == s(n, i), anchor, "s_i != e11-e22")
    return report


def cartesian_triple(n: int, i: int) -> tuple[tuple[DenseOperator, DenseOperator, DenseOperator], Report]:
    """(U_delta_i, s_i, i U_delta_i s_i) together with a validity report.

    Ad_r Ad_s Ad_t is tested on every elementary matrix, a basis of B(H).
    """
    _check_index(n, i)
    check_dense_cap(n, GENERAL_PRODUCT_CAP)
    r = u_delta_single(n, i)
    si = s(n, i)
    t = (r @ si) * 1j
    report = Report(f"Cartesian triple n={n} i={i}")
    anchor = "Cartesian triple"
    for name, a, b in (("r_s", r, si), ("s_t", si, t), ("t_r", t, r)):
        report.add(f"jordan_{name}_zero", jordan(a, b).is_zero(), anchor, name)
    for name, x in (("r", r), ("s", si), ("t", t)):
        report.add(f"{name}_is_symmetry", x.is_symmetry(), anchor, name)
    witness = None
    for e in elementary_matrices(n):
        if ad(r, ad(si, ad(t, e))) != e:
            witness = np.argwhere(e.to_numpy() != 0)[0].tolist()
            break
    report.add("ad_product_identity", witness is None, anchor, witness)
    return (r, si, t), report


# --- Hadamard ---------------------------------------------------------------

def hadamard() -> DenseOperator:
    return DenseOperator.exact([[1, 1], [1, -1]], sqrt2_power=-1)


def hadamard_all(n: int) -> DenseOperator:
    check_dense_cap(n, GENERAL_PRODUCT_CAP)
    return kron(*([hadamard()] * n))


# --- spans ----------------------------------------------------------------------

def span_dimension(generators, max_word_length: int) -> int:
    """Dimension of the span of all generator words of length <= the bound.

    Words are grown breadth first; only words that enlarged the span are
    extended, which loses nothing since extensions of dependent words are
    combinations of extensions of independent ones.
    """
    generators = list(generators)
    if not generators:
        return 1
    n = generators[0].n
    exact = all(g.is_exact for g in generators)
    one = DenseOperator.identity(n)
    if exact:
        span = ExactSpan()
        def add(op):
            re, im, _ = op.gaussian_parts
            return span.add(list(zip(re.ravel().tolist(), im.ravel().tolist())))
        def rank():
            return span.rank
    else:
        rows: list[np.ndarray] = []
        def add(op):
            cand = rows + [op.to_numpy().ravel()]
            if np.linalg.matrix_rank(np.array(cand), tol=1e-8) > len(rows):
                rows.append(cand[-1])
                return True
            return False
        def rank():
            return len(rows)
    add(one)
    frontier = [one]
    for _ in range(max_word_length):
        new = []
        for w in frontier:
            for g in generators:
                p = w @ g
                if add(p):
                    new.append(p)
        if not new:
            break
        frontier = new
    return rank()


def conjugated_symmetries(n: int) -> list[DenseOperator]:
    """U s_i U* for U the Hadamard on every factor."""
    u = hadamard_all(n)
    return [ad(u, s(n, i)) for i in range(1, n + 1)]


# --- Hilbert-lattice join -----------------------------------------------------

def hl_join(P: DenseOperator, Q: DenseOperator) -> DenseOperator:
    """Projection onto range(P) + range(Q).

    Basis projections (diagonal, exact) join exactly as the union of their
    supports; anything else is orthonormalized numerically.
    """
    if P.is_exact and Q.is_exact and P.is_diagonal() and Q.is_diagonal():
        d = np.maximum(np.real(P.diag_entries()), np.real(Q.diag_entries()))
        return DenseOperator.diagonal(np.rint(d).astype(np.int64), n=P.n)
    stacked = np.hstack([P.to_numpy(), Q.to_numpy()])
    u, sv, _ = np.linalg.svd(stacked)
    r = int((sv > 1e-8).sum())
    basis = u[:, :r]
    return DenseOperator.from_array(basis @ basis.conj().T, n=P.n)


def hl_meet(P: DenseOperator, Q: DenseOperator) -> DenseOperator:
    """Projection onto range(P) and range(Q), via complements."""
    one = DenseOperator.identity(P.n)
    return one - hl_join(one - P, one - Q)


# --- verifiers ------------------------------------------------------------------

def verify_embedding(n: int) -> Report:
    """Meet agreement, antipode/perp agreement, symmetry anticommutation, Hadamard."""
    check_dense_cap(n, GENERAL_PRODUCT_CAP)
    report = Report(f"Hilbert embedding n={n}")
    fs = sl.faces(n)
    proj = {x: face_projection_dense(x) for x in fs}
    zero = DenseOperator.zeros(n)

    bad = None
    for x in fs:
        for y in fs:
            m = sl.meet(x, y)
            want = zero if isinstance(m, Zero) else proj[m]
            if proj[x] @ proj[y] != want:
                bad = [str(x), str(y)]
                break
        if bad:
            break
    report.add("meet_is_product", bad is None, "meet agreement", bad, f"{len(fs)**2} face pairs")

    ud = u_delta(n)
    bad = None
    for c in sl.coatoms(n):
        pc = proj[c]
        anti = proj[sl.antipode(c)]
        if not (perp(pc) == anti == ud @ pc @ ud):
            bad = str(c)
            break
    report.add("perp_is_antipode", bad is None, "orthocomplement and Delta", bad, f"{2 * n} coatoms")

    bad = [i for i in range(1, n + 1) if not s(n, i).anticommutes_with(ud)]
    report.add("s_anticommutes_with_u_delta", not bad, "coatom symmetries", bad)

    bad = None
    for size in range(n + 1):
        for J in itertools.combinations(range(1, n + 1), size):
            if parity_product(n, J).anticommutes_with(ud) != (size % 2 == 1):
                bad = list(J)
                break
        if bad is not None:
            break
    report.add("parity_anticommutes_iff_odd", bad is None, "coatom symmetries", bad, f"{2**n} index sets")

    bad = None
    for c in sl.coatoms(n):
        plus, minus = balanced_decomposition(coatom_symmetry(c))
        if plus != proj[c] or minus != proj[sl.antipode(c)]:
            bad = str(c)
            break
    report.add("balanced_decomposition", bad is None, "balanced symmetry", bad)

    t1 = hadamard()
    report.add("hadamard_n1", ad(t1, s(1, 1)) == u_delta(1), "Hadamard", "T s T* != U_delta")
    T = hadamard_all(n)
    bad = [i for i in range(1, n + 1) if ad(T, s(n, i)) != u_delta_single(n, i)]
    report.add("hadamard_per_index", not bad, "Hadamard", bad)
    return report


def verify_generation(n: int, max_word_length: int = 6) -> Report:
    """Span of {U s_i U*, s_i} is all of B(H); span of {s_i} is the diagonal algebra."""
    report = Report(f"generation n={n}")
    full = span_dimension(conjugated_symmetries(n) + [s(n, i) for i in range(1, n + 1)], max_word_length)
    report.add(f"span={full}/{4**n}", full == 4**n, "minimal cubic lattice", full)
    diag = span_dimension([s(n, i) for i in range(1, n + 1)], max_word_length)
    report.add(f"diagonal_span={diag}/{2**n}", diag == 2**n, "minimal cubic lattice", diag)
    return report
