"""Rotation gates, functional-calculus conjugation checks and dihedral closures."""

from __future__ import annotations

import cmath
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np
from scipy.linalg import expm, schur

from . import hilbert_embed as he
from .errors import DimensionError, PreconditionError
from .operators import TAU, DenseOperator, check_dense_cap, kron
from .report import Report

_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)
# i * U_delta * s
_Y = 1j * _X @ _Z

GENERATORS = {"x": _X, "y": _Y, "z": _Z}


@dataclass(frozen=True)
class RotationGate:
    axis: str
    theta: float
    matrix: np.ndarray = field(repr=False, compare=False)

    def operator(self) -> DenseOperator:
        return DenseOperator.from_array(self.matrix, n=1)


def rotation(axis: str, theta: float, *, validate: bool = True) -> RotationGate:
    """Closed-form R_x, R_y, R_z in the cos/sin form, equal to exp(-i sigma theta/2)."""
    if axis not in GENERATORS:
        raise ValueError(f"axis must be one of x, y, z, got {axis!r}")
    theta = float(theta)
    if not math.isfinite(theta):
        raise ValueError("theta must be finite")
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    if axis == "x":
        m = np.array([[c, -1j * s], [-1j * s, c]])
    elif axis == "y":
        m = np.array([[c, -s], [s, c]], dtype=complex)
    else:
        m = np.array([[cmath.exp(-0.5j * theta), 0], [0, cmath.exp(0.5j * theta)]])
    if validate:
        ref = expm(-0.5j * theta * GENERATORS[axis])
        if not np.allclose(m, ref, rtol=0, atol=TAU):
            raise AssertionError(f"closed form R_{axis}({theta}) disagrees with expm")
    return RotationGate(axis, theta, m)


def phase_block(theta: float) -> np.ndarray:
    """exp(2 pi i theta s) for the 2x2 coatom symmetry s = diag(1, -1)."""
    w = cmath.exp(2j * math.pi * theta)
    return np.array([[w, 0], [0, w.conjugate()]])


def rotation_multi(thetas: Sequence[float], n: int) -> DenseOperator:
    """exp(i sum_i 2 pi theta_i s_i) as a tensor product of per-index blocks."""
    if len(thetas) != n:
        raise DimensionError(f"{len(thetas)} angles for n={n}")
    check_dense_cap(n)
    out = DenseOperator.from_array(phase_block(thetas[0]), n=1)
    for t in thetas[1:]:
        out = kron(out, DenseOperator.from_array(phase_block(t), n=1))
    return out


def rotation_multi_reference(thetas: Sequence[float], n: int) -> DenseOperator:
    """Same operator by exponentiating the summed diagonal generator."""
    gen = np.zeros(2**n)
    for i, t in enumerate(thetas, start=1):
        gen = gen + 2 * math.pi * t * np.real(he.s(n, i).diag_entries())
    return DenseOperator.from_array(np.diag(np.exp(1j * gen)), n=n)


# --- functional calculus ------------------------------------------------------

def apply_function(A: DenseOperator, f: str, param) -> np.ndarray:
    """f(A) for ``f = "exp"`` (param t: exp(tA)) or ``"polynomial"`` (param coefficients, low first)."""
    a = A.to_numpy()
    if f == "exp":
        return expm(complex(param) * a)
    if f == "polynomial":
        out = np.zeros_like(a)
        power = np.eye(a.shape[0], dtype=complex)
        for coef in param:
            out = out + coef * power
            power = power @ a
        return out
    raise ValueError(f"unknown function tag {f!r}")


def _is_normal(a: np.ndarray) -> bool:
    return np.allclose(a @ a.conj().T, a.conj().T @ a, atol=TAU)


def conjugation_identity_check(
    U: DenseOperator,
    A: DenseOperator,
    f: str = "exp",
    param=1.0,
    *,
    anticommuting: bool = False,
) -> bool:
    """U f(A) U* == f(U A U*); with ``anticommuting``, U exp(tA) U* == exp(-tA).

    Raises :class:`PreconditionError` when U is not unitary, A is not
    normal, or (anticommuting form) UA != -AU. A False return always means
    the identity itself failed.
    """
    u, a = U.to_numpy(), A.to_numpy()
    if not np.allclose(u @ u.conj().T, np.eye(u.shape[0]), atol=TAU):
        raise PreconditionError("U is not unitary")
    if not _is_normal(a):
        raise PreconditionError("A is not normal")
    lhs = u @ apply_function(A, f, param) @ u.conj().T
    if anticommuting:
        if f != "exp":
            raise ValueError("the anticommuting form is stated for exp(tA)")
        if not np.allclose(u @ a, -a @ u, atol=TAU):
            raise PreconditionError("U and A do not anticommute")
        rhs = apply_function(A, "exp", -complex(param))
    else:
        rhs = apply_function(DenseOperator.from_array(u @ a @ u.conj().T, n=A.n), f, param)
    return bool(np.allclose(lhs, rhs, rtol=0, atol=1e-9))


# --- dihedral closure ---------------------------------------------------------

@dataclass
class GroupClosureResult:
    theta: float | Fraction
    closed: bool
    order: int | None
    classification: str
    cap: int
    degenerate: bool = False
    elements_found: int = 0
    presentation_ok: bool | None = None
    elements: list[np.ndarray] = field(default_factory=list, repr=False)

    def to_dict(self) -> dict:
        return {
            "theta": str(self.theta),
            "closed": self.closed,
            "order": self.order,
            "classification": self.classification,
            "degenerate": self.degenerate,
            "elements_found": self.elements_found,
            "cap": self.cap,
        }


def _key(m: np.ndarray) -> tuple:
    q = np.round(np.concatenate([m.real.ravel(), m.imag.ravel()]) * 1e7).astype(np.int64)
    q[q == 0] = 0
    return tuple(q.tolist())


def dihedral_closure(theta, cap: int = 1000) -> GroupClosureResult:
    """Enumerate the group generated by U_delta and r = exp(2 pi i theta s) at one index.

    Elements are compared as matrices within TAU (no phase quotient), so
    r^k and -r^k count separately.
    """
    theta_value = float(theta)
    u = _X.copy()
    r = phase_block(theta_value)
    gens = [u, r]
    ident = np.eye(2, dtype=complex)
    found = {_key(ident): ident}
    frontier = [ident]
    exceeded = False
    while frontier and not exceeded:
        new = []
        for m in frontier:
            for g in gens:
                p = m @ g
                k = _key(p)
                if k not in found:
                    found[k] = p
                    new.append(p)
                    if len(found) > cap:
                        exceeded = True
                        break
            if exceeded:
                break
        frontier = new
    elements = list(found.values())
    if exceeded:
        return GroupClosureResult(theta, False, None, "exceeded cap", cap,
                                  elements_found=len(elements))
    order = len(elements)
    r_is_scalar = np.allclose(r, r[0, 0] * ident, atol=TAU)
    degenerate = bool(r_is_scalar)
    presentation_ok = bool(np.allclose(u @ r @ u, np.linalg.inv(r), atol=TAU))
    closed_ok = all(_key(a @ b) in found for a in elements for b in elements)
    label = "degenerate" if degenerate else f"D_{order}"
    return GroupClosureResult(theta, closed_ok, order, label, cap, degenerate,
                              len(elements), presentation_ok, elements)


def matrix_order(m: np.ndarray, limit: int = 10_000) -> int | None:
    ident = np.eye(m.shape[0])
    p = m.copy()
    for k in range(1, limit + 1):
        if np.allclose(p, ident, atol=TAU):
            return k
        p = p @ m
    return None


def dihedral_standard_form(theta, order: int) -> list[np.ndarray]:
    """{r^k, U r^k : 0 <= k < order/2}, the expected dihedral element list."""
    r = phase_block(float(theta))
    out = []
    p = np.eye(2, dtype=complex)
    for _ in range(order // 2):
        out.append(p)
        out.append(_X @ p)
        p = p @ r
    return out


def parse_theta(text: str) -> Fraction | float:
    """``"p/q"`` gives an exact Fraction; anything else parses as a float."""
    text = text.strip()
    try:
        return Fraction(text) if "/" in text or text.lstrip("-").isdigit() else float(text)
    except (ValueError, ZeroDivisionError):
        return float(text)


# --- gate set -------------------------------------------------------------------

def sqrt_s(n: int, i: int) -> DenseOperator:
    """Eigenvalue 1 on the s_i = +1 eigenspace and i on s_i = -1."""
    diag = np.real(he.s(n, i).diag_entries())
    minus = (diag < 0).astype(np.int64)
    return DenseOperator.diagonal(1 - minus, n=n, im=minus)


def universal_gate_set(n: int) -> dict[str, DenseOperator]:
    """I, the single-index flips, the sqrt(s_i) phases and the full Hadamard."""
    check_dense_cap(n, he.GENERAL_PRODUCT_CAP)
    gates = {"I": DenseOperator.identity(n)}
    for i in range(1, n + 1):
        gates[f"X{i}"] = he.u_delta_single(n, i)
    for i in range(1, n + 1):
        gates[f"sqrtZ{i}"] = sqrt_s(n, i)
    gates["H"] = he.hadamard_all(n)
    for i in range(1, n + 1):
        if gates[f"sqrtZ{i}"] @ gates[f"sqrtZ{i}"] != he.s(n, i):
            raise AssertionError(f"sqrt_s({n},{i}) does not square to s")
    return gates


def embed_single(op2: np.ndarray, n: int, i: int) -> DenseOperator:
    """A 2x2 gate acting on factor i of n."""
    mats = [np.eye(2, dtype=complex)] * n
    mats[i - 1] = op2
    out = mats[0]
    for m in mats[1:]:
        out = np.kron(out, m)
    return DenseOperator.from_array(out, n=n)


def function_of(A: DenseOperator, fn: Callable[[complex], complex]) -> np.ndarray:
    """Borel/continuous function of a normal operator via its eigendecomposition."""
    a = A.to_numpy()
    if not _is_normal(a):
        raise PreconditionError("A is not normal")
    t, z = schur(a, output="complex")
    d = np.array([fn(x) for x in np.diag(t)])
    return z @ np.diag(d) @ z.conj().T


# --- verifier -------------------------------------------------------------------

def verify_gates(n: int, *, seed: int = 0) -> Report:
    """Rotation closed forms and group law, multi-index rotations, triple conjugations, gate set."""
    rng = np.random.default_rng(seed)
    report = Report(f"gates n={n}")
    anchor = "phase rotations"

    r2 = 2**-0.5
    pinned = [
        ("z", 0.0, np.eye(2)),
        ("x", math.pi, np.array([[0, -1j], [-1j, 0]])),
        ("y", math.pi / 2, np.array([[r2, -r2], [r2, r2]])),
    ]
    bad = [f"R{a}({t})" for a, t, m in pinned if not np.allclose(rotation(a, t).matrix, m, atol=TAU)]
    report.add("rotation_pinned_values", not bad, anchor, bad)

    bad = None
    for axis in "xyz":
        for t1, t2 in rng.uniform(-2 * math.pi, 2 * math.pi, size=(100, 2)):
            a, b = rotation(axis, t1).matrix, rotation(axis, t2).matrix
            ab = rotation(axis, t1 + t2).matrix
            unitary = np.allclose(a @ a.conj().T, np.eye(2), atol=TAU) and abs(abs(np.linalg.det(a)) - 1) < TAU
            if not (unitary and np.allclose(a @ b, ab, atol=TAU)):
                bad = bad or [axis, float(t1), float(t2)]
    report.add("rotation_group_law", bad is None, anchor, bad, "100 random pairs per axis")

    m = min(n, 3)
    bad = None
    for _ in range(50):
        thetas = rng.uniform(-1, 1, size=m).tolist()
        if rotation_multi(thetas, m) != rotation_multi_reference(thetas, m):
            bad = bad or thetas
    report.add("rotation_multi_matches_exponential", bad is None, "dihedral corollary", bad,
               f"n={m}, 50 random angle vectors")

    tn = min(n, 2)
    (r, s_, t_), _ = he.cartesian_triple(tn, 1)
    triple = {"r": r, "s": s_, "t": t_}
    bad = None
    for un, U in triple.items():
        for an, A in triple.items():
            if un == an:
                continue
            for t in (1.0, -1.0, 0.3, -0.3):
                if not conjugation_identity_check(U, A, "exp", 1j * t, anticommuting=True):
                    bad = bad or [un, an, t]
    report.add("triple_conjugation_inverts_rotation", bad is None,
               "unitary similarity and continuous functions", bad)

    bad = None
    for i in range(1, n + 1):
        A = he.s(n, i)
        for U in (DenseOperator.identity(n), he.u_delta(n), he.hadamard_all(n) if n <= 8 else None):
            if U is None:
                continue
            if not (conjugation_identity_check(U, A, "exp", 0.7)
                    and conjugation_identity_check(U, A, "polynomial", [1, -2, 0.5, 3])):
                bad = bad or i
    report.add("conjugation_commutes_with_functions", bad is None,
               "unitary similarity and continuous functions", bad)

    gates = universal_gate_set(n)
    bad = [name for name, g in gates.items() if not g.is_unitary()]
    report.add("universal_gates_unitary", not bad, "universal quantum gates", bad, f"{len(gates)} gates")
    return report


DIHEDRAL_TARGETS = ((Fraction(1, 3), 6), (Fraction(1, 4), 8), (Fraction(1, 6), 12))


def same_element_set(found: list[np.ndarray], expected: list[np.ndarray]) -> bool:
    return len(found) == len(expected) and {_key(m) for m in found} == {_key(m) for m in expected}


def verify_dihedral(cap: int = 1000) -> Report:
    """Closure orders at the pinned angles, the presentation, and the irrational cap."""
    thetas = [t for t, _ in DIHEDRAL_TARGETS] + [Fraction(p, q) for q in (5, 7, 9, 10, 12) for p in (1, 2)]
    irrational = 2**-0.5
    with ThreadPoolExecutor() as pool:
        results = dict(zip(thetas, pool.map(lambda th: dihedral_closure(th, cap), thetas)))
        far = pool.submit(dihedral_closure, irrational, cap).result()
    report = Report("dihedral closure")
    anchor = "dihedral generation"
    for theta, want in DIHEDRAL_TARGETS:
        res = results[theta]
        ok = res.closed and res.order == want and not res.degenerate
        report.add(f"theta={theta}", ok, anchor, res.to_dict(), f"order {res.order}")
    bad = None
    for theta, res in results.items():
        std = dihedral_standard_form(theta, res.order or 0)
        r_order = matrix_order(phase_block(float(theta)))
        if not (res.closed and res.presentation_ok and same_element_set(res.elements, std)
                and res.order == 2 * r_order):
            bad = bad or str(theta)
    report.add("presentation_and_standard_form", bad is None, anchor, bad, f"{len(results)} rational angles")
    report.add("theta=1/sqrt2_exceeds_cap", not far.closed and far.classification == "exceeded cap",
               anchor, far.to_dict(), f"cap {cap}")
    return report
