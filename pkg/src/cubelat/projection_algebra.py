"""Projections onto subsets of the fixed atom basis, and finite logic checkers.

A :class:`BasisProjection` is the symbolic form of a diagonal 0/1 operator:
its support is a bitmap over the 2^n basis labels (bit ``L`` for label ``L``).
The ring operations are bit operations; :meth:`BasisProjection.dense` gives the
exact operator so the identities can be checked against matrix arithmetic.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from .errors import CapExceeded, DimensionError
from .operators import DenseOperator
from .report import Report

SYMBOLIC_CAP = 20


@dataclass(frozen=True, slots=True)
class BasisProjection:
    n: int
    support: int = 0

    def __post_init__(self):
        if self.n > SYMBOLIC_CAP:
            raise CapExceeded(f"bitmap over 2^{self.n} labels exceeds cap n <= {SYMBOLIC_CAP}")
        if self.support < 0 or self.support >> (2**self.n):
            raise ValueError("support has labels outside 0..2^n-1")

    @classmethod
    def from_labels(cls, n: int, labels: Iterable[int | str]) -> "BasisProjection":
        m = 0
        for L in labels:
            m |= 1 << (int(L, 2) if isinstance(L, str) else L)
        return cls(n, m)

    @classmethod
    def full(cls, n: int) -> "BasisProjection":
        return cls(n, (1 << 2**n) - 1)

    @classmethod
    def empty(cls, n: int) -> "BasisProjection":
        return cls(n, 0)

    @classmethod
    def from_dense(cls, op: DenseOperator) -> "BasisProjection":
        if not (op.is_diagonal() and op.is_projection()):
            raise ValueError("operator is not a diagonal projection")
        diag = np.rint(np.real(op.diag_entries())).astype(int)
        return cls.from_labels(op.n, [L for L, v in enumerate(diag) if v])

    def labels(self) -> list[int]:
        return [L for L in range(2**self.n) if self.support >> L & 1]

    def __len__(self):
        return self.support.bit_count()

    def dense(self) -> DenseOperator:
        diag = np.array([(self.support >> L) & 1 for L in range(2**self.n)], dtype=np.int64)
        return DenseOperator.diagonal(diag, n=self.n)

    def __str__(self):
        return "{" + ",".join(format(L, f"0{self.n}b") for L in self.labels()) + "}"


def _same(a: BasisProjection, b: BasisProjection) -> int:
    if a.n != b.n:
        raise DimensionError(f"projections on n={a.n} and n={b.n}")
    return a.n


def product(a: BasisProjection, b: BasisProjection) -> BasisProjection:
    return BasisProjection(_same(a, b), a.support & b.support)


def xor(a: BasisProjection, b: BasisProjection) -> BasisProjection:
    return BasisProjection(_same(a, b), a.support ^ b.support)


def join(a: BasisProjection, b: BasisProjection) -> BasisProjection:
    return BasisProjection(_same(a, b), a.support | b.support)


def complement(a: BasisProjection) -> BasisProjection:
    return BasisProjection(a.n, a.support ^ BasisProjection.full(a.n).support)


def leq(a: BasisProjection, b: BasisProjection) -> bool:
    _same(a, b)
    return a.support & ~b.support == 0


# dense counterparts of the symbolic operations

def dense_xor(A: DenseOperator, B: DenseOperator) -> DenseOperator:
    one = DenseOperator.identity(A.n)
    return (one - B) @ A + (one - A) @ B


def dense_join(A: DenseOperator, B: DenseOperator) -> DenseOperator:
    return A + B - A @ B


def all_projections(n: int) -> list[BasisProjection]:
    if n > 3:
        raise CapExceeded("enumerating all basis projections is limited to n <= 3")
    return [BasisProjection(n, m) for m in range(1 << 2**n)]


def random_projections(n: int, count: int, rng: np.random.Generator) -> list[BasisProjection]:
    bits = 2**n
    return [BasisProjection(n, int(rng.integers(0, 2, size=bits) @ (1 << np.arange(bits, dtype=object))))
            for _ in range(count)]


# --- Boolean ring verification ------------------------------------------------

def verify_boolean_ring(
    n: int,
    *,
    seed: int = 0,
    samples: int = 2000,
    product: Callable = product,
    xor: Callable = xor,
    join: Callable = join,
) -> Report:
    """Check the Boolean ring/algebra laws on basis projections.

    Exhaustive over all triples for n <= 2, ``samples`` random triples at
    n = 3. Operations are injectable so a broken join can be shown to fail.
    Both distributivity equivalences are checked in their symbolic and dense
    forms, the dense form using ``A + B - AB`` for the join.
    """
    if n <= 2:
        elems = all_projections(n)
        triples = itertools.product(elems, repeat=3)
    else:
        rng = np.random.default_rng(seed)
        triples = (tuple(random_projections(n, 3, rng)) for _ in range(samples))
    full = BasisProjection.full(n)
    empty = BasisProjection.empty(n)
    dense_cache: dict = {}

    def D(p):
        if p not in dense_cache:
            dense_cache[p] = p.dense()
        return dense_cache[p]

    laws = {
        "xor_associative": lambda a, b, c: xor(xor(a, b), c) == xor(a, xor(b, c)),
        "xor_commutative": lambda a, b, c: xor(a, b) == xor(b, a),
        "xor_identity_and_self_inverse": lambda a, b, c: xor(a, empty) == a and xor(a, a) == empty,
        "product_associative": lambda a, b, c: product(product(a, b), c) == product(a, product(b, c)),
        "product_commutative": lambda a, b, c: product(a, b) == product(b, a),
        "product_identity": lambda a, b, c: product(a, full) == a,
        "product_idempotent": lambda a, b, c: product(a, a) == a,
        "ring_distributive": lambda a, b, c: product(a, xor(b, c)) == xor(product(a, b), product(a, c)),
        "lattice_absorption": lambda a, b, c: (join(a, product(a, b)) == a
                                               and product(a, join(a, b)) == a),
        "meet_distributes_over_join": lambda a, b, c: (product(a, join(b, c))
                                                       == join(product(a, b), product(a, c))),
        "join_distributes_over_meet": lambda a, b, c: (join(a, product(b, c))
                                                       == product(join(a, b), join(a, c))),
        # distributivity equivalence (1): lattice form == multiplicative form
        "meet_distributivity_dense": lambda a, b, c: (
            D(product(a, join(b, c))) == D(a) @ (D(b) + D(c) - D(b) @ D(c))
            and D(join(product(a, b), product(a, c)))
            == D(a) @ D(b) + D(a) @ D(c) - D(a) @ D(b) @ D(c)),
        # distributivity equivalence (2): join distributivity == xor distributivity
        "xor_distributivity_dense": lambda a, b, c: (
            D(xor(a, b)) == D(join(a, b)) - D(product(a, b))
            and D(a) @ dense_xor(D(b), D(c)) == dense_xor(D(a) @ D(b), D(a) @ D(c))),
        "join_is_xor_xor_product": lambda a, b, c: join(a, b) == xor(xor(a, b), product(a, b)),
        "complement_laws": lambda a, b, c: (product(a, xor(a, full)) == empty
                                            and join(a, xor(a, full)) == full),
    }
    report = Report(f"Boolean ring of basis projections, n={n}")
    failures: dict[str, list] = {}
    for a, b, c in triples:
        for name, law in laws.items():
            if name not in failures and not law(a, b, c):
                failures[name] = [str(a), str(b), str(c)]
    anchor = "Boolean Hilbert sub lattice"
    for name in laws:
        report.add(name, name not in failures, anchor, failures.get(name))
    return report


# --- finite logics --------------------------------------------------------------

@dataclass
class FiniteLattice:
    """Explicit finite lattice fixture: elements, order pairs, complement map.

    ``leq_pairs`` need not be reflexively or transitively closed; the closure
    is taken on load.
    """

    elements: list[str]
    leq_pairs: list[tuple[str, str]]
    complement_map: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        names = set(self.elements)
        if len(names) != len(self.elements):
            raise ValueError("duplicate element names")
        for a, b in self.leq_pairs:
            if a not in names or b not in names:
                raise ValueError(f"order pair ({a}, {b}) names an unknown element")
        for a, b in self.complement_map.items():
            if a not in names or b not in names:
                raise ValueError(f"complement {a} -> {b} names an unknown element")
        self.leq_pairs = [tuple(p) for p in self.leq_pairs]

    @classmethod
    def from_json(cls, text: str) -> "FiniteLattice":
        try:
            raw = json.loads(text)
            return cls(list(raw["elements"]), [tuple(p) for p in raw["leq_pairs"]],
                       dict(raw.get("complement_map", {})))
        except (KeyError, TypeError, json.JSONDecodeError) as exc:
            raise ValueError(f"malformed lattice description: {exc}") from exc

    def to_json(self) -> str:
        return json.dumps({"elements": self.elements,
                           "leq_pairs": [list(p) for p in self.leq_pairs],
                           "complement_map": self.complement_map}, sort_keys=True)

    def order(self) -> dict[str, set[str]]:
        """Transitive, reflexive closure: element -> set of elements above it."""
        above = {e: {e} for e in self.elements}
        for a, b in self.leq_pairs:
            above[a].add(b)
        changed = True
        while changed:
            changed = False
            for e in self.elements:
                grown = set().union(*(above[x] for x in above[e]))
                if grown != above[e]:
                    above[e] = grown
                    changed = True
        return above


def lattice_from_projections(named: dict[str, DenseOperator]) -> FiniteLattice:
    """Fixture from a family of projections closed under complement."""
    names = list(named)
    pairs = [(a, b) for a in names for b in names if named[a].leq(named[b])]
    one = DenseOperator.identity(next(iter(named.values())).n)
    comp = {}
    for a in names:
        target = one - named[a]
        for b in names:
            if named[b] == target:
                comp[a] = b
    return FiniteLattice(names, pairs, comp)


def is_logic(lattice: FiniteLattice) -> Report:
    """Check a finite ortholattice against the definition of a logic.

    Condition 2 is read with ``b <= a1_perp`` and ``a1 <= a2``: the strict
    form fails every Boolean algebra with more than one element (a1 = 0,
    a2 = 1 forces b = 1 = a1_perp).
    """
    elems = lattice.elements
    above = lattice.order()
    report = Report("logic axioms")

    def le(a, b):
        return b in above[a]

    anti = [(a, b) for a in elems for b in elems if a != b and le(a, b) and le(b, a)]
    report.add("partial_order", not anti, "definition of a logic", anti[:1])

    def lub(a, b):
        ups = [z for z in elems if le(a, z) and le(b, z)]
        least = [z for z in ups if all(le(z, w) for w in ups)]
        return least[0] if len(least) == 1 else None

    def glb(a, b):
        downs = [z for z in elems if le(z, a) and le(z, b)]
        great = [z for z in downs if all(le(w, z) for w in downs)]
        return great[0] if len(great) == 1 else None

    missing = [(a, b) for a in elems for b in elems if lub(a, b) is None or glb(a, b) is None]
    report.add("cond1_meets_joins_exist", not missing, "definition of a logic (1)", missing[:1])
    bottoms = [z for z in elems if all(le(z, w) for w in elems)]
    tops = [z for z in elems if all(le(w, z) for w in elems)]
    bounded = len(bottoms) == 1 and len(tops) == 1
    report.add("bounded", bounded, "definition of a logic", None if bounded else "no 0 or 1")

    comp = lattice.complement_map
    ortho_witness = None
    if not bounded or missing:
        ortho_witness = "lattice structure missing"
    else:
        zero, one = bottoms[0], tops[0]
        for a in elems:
            c = comp.get(a)
            if c is None:
                ortho_witness = {"element": a, "why": "no complement"}
                break
            if comp.get(c) != a:
                ortho_witness = {"element": a, "why": "not involutive"}
                break
            if glb(a, c) != zero or lub(a, c) != one:
                ortho_witness = {"element": a, "why": "a^a' != 0 or ava' != 1"}
                break
            bad = next((b for b in elems if le(a, b) and comp.get(b) is not None
                        and not le(comp[b], c)), None)
            if bad is not None:
                ortho_witness = {"element": a, "above": bad, "why": "not order reversing"}
                break
    report.add("orthocomplementation", ortho_witness is None, "complete lattice with orthocomplementation",
               ortho_witness)

    cond2 = None
    if missing:
        cond2 = "lattice structure missing"
    else:
        for a1 in elems:
            for a2 in elems:
                if not le(a1, a2):
                    continue
                c = comp.get(a1)
                ok = c is not None and any(le(b, c) and lub(b, a1) == a2 for b in elems)
                if not ok:
                    cond2 = {"a1": a1, "a2": a2}
                    break
            if cond2:
                break
    report.add("cond2_relative_complement", cond2 is None, "definition of a logic (2)", cond2)
    return report


def cubic_lattice_fixture(n: int, complement=None) -> FiniteLattice:
    """L(S) as a fixture, with ``complement`` (default: antipode) as candidate."""
    from . import signed_lattice as sl

    complement = complement or sl.antipode
    elems = sl.enumerate_lattice(n)
    names = [str(e) for e in elems]
    pairs = [(str(a), str(b)) for a in elems for b in elems if sl.leq(a, b)]
    comp = {str(e): str(complement(e)) for e in elems}
    return FiniteLattice(names, pairs, comp)


def boolean_fixture(n: int) -> FiniteLattice:
    elems = all_projections(n)
    names = [str(p) for p in elems]
    pairs = [(str(a), str(b)) for a in elems for b in elems if leq(a, b)]
    comp = {str(a): str(complement(a)) for a in elems}
    return FiniteLattice(names, pairs, comp)


# --- superposition principle ----------------------------------------------------

def superposition_check(n: int) -> Report:
    """Superposition and unitary-transport criteria on atom pairs.

    For each pair of distinct basis atoms a, b: the Boolean sublattice has no
    third atom below a v b (criterion 3(a) fails there); the full Hilbert
    lattice has c = span(|a> + |b>) with c <= a v b (3(a) holds) and then
    a <= b v c (3(b)); a signed flip unitary moves a onto b (criterion 4).
    """
    from . import hyperoctahedral as ho
    from .hilbert_embed import atom_of_label, hl_join

    if n > 3:
        raise CapExceeded("superposition_check is limited to n <= 3")
    dim = 2**n
    report = Report(f"superposition criteria, n={n}")
    boolean_has_superposition = None
    hl_3a = hl_3b = unitary_4 = None
    for a, b in itertools.combinations(range(dim), 2):
        pa = BasisProjection.from_labels(n, [a])
        pb = BasisProjection.from_labels(n, [b])
        j = join(pa, pb)
        third = [L for L in j.labels() if L not in (a, b)]
        if third and boolean_has_superposition is None:
            boolean_has_superposition = [a, b, third[0]]

        Pa, Pb = pa.dense(), pb.dense()
        v = np.zeros((dim, dim), dtype=np.int64)
        for r in (a, b):
            for c in (a, b):
                v[r, c] = 1
        Pc = DenseOperator(n, re=v) / 2
        ab = hl_join(Pa, Pb)
        if not (Pc.leq(ab) and Pc != Pa and Pc != Pb and Pc.is_projection()):
            hl_3a = hl_3a or [a, b]
        bc = hl_join(Pb, Pc)
        if not Pa.leq(bc):
            hl_3b = hl_3b or [a, b]

        word = ho.transitivity_witness(atom_of_label(n, a), atom_of_label(n, b))
        U = ho.dense_unitary(ho.compose_all(word, n))
        if U @ Pa @ U.adjoint() != Pb:
            unitary_4 = unitary_4 or [a, b]

    anchor = "superposition principle"
    report.add("boolean_fails_3a", boolean_has_superposition is None, anchor, boolean_has_superposition,
               detail="no third atom below a v b in the basis sublattice")
    report.add("hilbert_satisfies_3a", hl_3a is None, anchor, hl_3a,
               detail="c = span(|a>+|b>)/sqrt2 lies below a v b")
    report.add("hilbert_satisfies_3b", hl_3b is None, anchor, hl_3b)
    report.add("unitary_transport_4", unitary_4 is None, "transitive action", unitary_4)
    return report


def verify_projection_identities(n: int, *, seed: int = 0, samples: int = 1000) -> Report:
    """P_F P_G = P_{F n G} = P_G P_F and the dense join/xor formulas.

    All subset pairs for n <= 2, ``samples`` random pairs above that.
    """
    if n <= 2:
        elems = all_projections(n)
        pairs = list(itertools.product(elems, repeat=2))
    else:
        rng = np.random.default_rng(seed)
        pairs = [tuple(random_projections(n, 2, rng)) for _ in range(samples)]
    bad_prod = bad_join = bad_xor = None
    for a, b in pairs:
        A, B = a.dense(), b.dense()
        AB = A @ B
        if bad_prod is None and not (AB == product(a, b).dense() == B @ A):
            bad_prod = [str(a), str(b)]
        if bad_join is None and join(a, b).dense() != dense_join(A, B):
            bad_join = [str(a), str(b)]
        diff = dense_join(A, B) - AB
        if bad_xor is None and not (xor(a, b).dense() == dense_xor(A, B) == diff):
            bad_xor = [str(a), str(b)]
    report = Report(f"projection identities n={n}")
    detail = f"{len(pairs)} pairs"
    report.add("commuting_product_is_intersection", bad_prod is None, "commuting projections", bad_prod, detail)
    report.add("join_is_a_plus_b_minus_ab", bad_join is None, "join of commuting projections", bad_join, detail)
    report.add("xor_is_join_minus_meet", bad_xor is None, "symmetric difference", bad_xor, detail)
    return report
