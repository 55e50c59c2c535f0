"""The cubic lattice L(S) of signed sets over the index set {1..n}.

A face of the n-cube is a pair (plus, minus) of disjoint index sets: indices
in ``plus`` are pinned to the +1 side, indices in ``minus`` to the -1 side,
and the remaining indices are free. Faces are ordered by reverse inclusion of
their signed pairs, which is ordinary inclusion of the geometric faces. A
distinguished :class:`Zero` sits below every face.

Index sets are stored as integer bitmasks (bit ``i - 1`` for index ``i``).

Text form: one symbol per index, ``+``, ``-`` or ``*`` (free), index 1 first.
``"+*-"`` is plus={1}, minus={3}. Zero prints as ``"0"``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce
from typing import Callable, Iterable, Union

from .errors import CapExceeded, DimensionError, DomainError
from .report import Report

ENUMERATION_CAP = 12

_SYMBOL_ORDER = "-*+"


def _mask(indices: Iterable[int], n: int) -> int:
    m = 0
    for i in indices:
        if not 1 <= i <= n:
            raise ValueError(f"index {i} outside 1..{n}")
        m |= 1 << (i - 1)
    return m


def _indices(mask: int) -> frozenset[int]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return frozenset(out)


@dataclass(frozen=True, slots=True)
class SignedSet:
    """A face of the n-cube, as disjoint plus/minus bitmasks."""

    n: int
    plus: int = 0
    minus: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        full = (1 << self.n) - 1
        if (self.plus | self.minus) & ~full:
            raise ValueError("mask has bits outside 1..n")
        if self.plus & self.minus:
            raise ValueError("plus and minus must be disjoint")

    @classmethod
    def from_sets(cls, n: int, plus: Iterable[int] = (), minus: Iterable[int] = ()) -> "SignedSet":
        return cls(n, _mask(plus, n), _mask(minus, n))

    @classmethod
    def top(cls, n: int) -> "SignedSet":
        return cls(n)

    @property
    def plus_set(self) -> frozenset[int]:
        return _indices(self.plus)

    @property
    def minus_set(self) -> frozenset[int]:
        return _indices(self.minus)

    @property
    def fixed(self) -> int:
        return self.plus | self.minus

    @property
    def free_count(self) -> int:
        return self.n - self.fixed.bit_count()

    @property
    def is_atom(self) -> bool:
        return self.fixed == (1 << self.n) - 1

    @property
    def is_top(self) -> bool:
        return self.fixed == 0

    @property
    def is_coatom(self) -> bool:
        return self.fixed.bit_count() == 1

    def sign(self, i: int) -> int:
        """+1, -1 or 0 (free) at index ``i``."""
        bit = 1 << (i - 1)
        if self.plus & bit:
            return 1
        if self.minus & bit:
            return -1
        return 0

    def __str__(self):
        return "".join("+" if s > 0 else "-" if s < 0 else "*"
                       for s in (self.sign(i) for i in range(1, self.n + 1)))

    def __repr__(self):
        return f"SignedSet({str(self)!r})"


@dataclass(frozen=True, slots=True)
class Zero:
    """The bottom element of L(S)."""

    n: int

    def __str__(self):
        return "0"

    def __repr__(self):
        return f"Zero(n={self.n})"


CubicElement = Union[SignedSet, Zero]


def parse(text: str, n: int | None = None) -> CubicElement:
    """Inverse of ``str``; ``"0"`` needs ``n`` since it carries no length."""
    if text == "0":
        if n is None:
            raise ValueError("n is required to parse Zero")
        return Zero(n)
    if n is not None and len(text) != n:
        raise DimensionError(f"expected {n} symbols, got {len(text)}")
    plus = minus = 0
    for pos, ch in enumerate(text):
        if ch == "+":
            plus |= 1 << pos
        elif ch == "-":
            minus |= 1 << pos
        elif ch != "*":
            raise ValueError(f"bad symbol {ch!r} in {text!r}")
    return SignedSet(len(text), plus, minus)


def top(n: int) -> SignedSet:
    return SignedSet(n)


def _same_n(*xs: CubicElement) -> int:
    n = xs[0].n
    for x in xs[1:]:
        if x.n != n:
            raise DimensionError(f"mixed index-set sizes {n} and {x.n}")
    return n


def leq(x: CubicElement, y: CubicElement) -> bool:
    _same_n(x, y)
    if isinstance(x, Zero):
        return True
    if isinstance(y, Zero):
        return False
    return (y.plus & ~x.plus) == 0 and (y.minus & ~x.minus) == 0


def lt(x: CubicElement, y: CubicElement) -> bool:
    return x != y and leq(x, y)


def meet(x: CubicElement, y: CubicElement) -> CubicElement:
    n = _same_n(x, y)
    if isinstance(x, Zero) or isinstance(y, Zero):
        return Zero(n)
    if (y.plus & x.minus) or (y.minus & x.plus):
        return Zero(n)
    return SignedSet(n, x.plus | y.plus, x.minus | y.minus)


def join(x: CubicElement, y: CubicElement) -> CubicElement:
    _same_n(x, y)
    if isinstance(x, Zero):
        return y
    if isinstance(y, Zero):
        return x
    return SignedSet(x.n, x.plus & y.plus, x.minus & y.minus)


def meet_all(xs: Iterable[CubicElement], n: int) -> CubicElement:
    return reduce(meet, xs, top(n))


def join_all(xs: Iterable[CubicElement], n: int) -> CubicElement:
    return reduce(join, xs, Zero(n))


def delta(x: CubicElement, y: CubicElement) -> CubicElement:
    """Reflect ``y`` inside the face ``x``; defined only for ``y <= x``."""
    n = _same_n(x, y)
    if isinstance(y, Zero):
        return Zero(n)
    if not leq(y, x):
        raise DomainError(f"delta({x}, {y}) needs {y} <= {x}")
    return SignedSet(n, x.plus | (y.minus & ~x.minus), x.minus | (y.plus & ~x.plus))


def antipode(x: CubicElement) -> CubicElement:
    if isinstance(x, Zero):
        return x
    return SignedSet(x.n, x.minus, x.plus)


def faces(n: int, cap: int = ENUMERATION_CAP) -> list[SignedSet]:
    if n > cap:
        raise CapExceeded(f"enumerating 3^{n} faces exceeds cap n <= {cap}")
    return [parse("".join(word)) for word in itertools.product(_SYMBOL_ORDER, repeat=n)]


def enumerate_lattice(n: int, cap: int = ENUMERATION_CAP) -> list[CubicElement]:
    """Zero followed by all 3**n faces in lexicographic (-, *, +) order."""
    return [Zero(n), *faces(n, cap)]


def atoms(n: int) -> list[SignedSet]:
    return [parse("".join(word)) for word in itertools.product("-+", repeat=n)]


def coatoms(n: int) -> list[SignedSet]:
    out = []
    for i in range(1, n + 1):
        out.append(SignedSet(n, 0, 1 << (i - 1)))
        out.append(SignedSet(n, 1 << (i - 1), 0))
    return out


def atoms_below(x: CubicElement) -> list[SignedSet]:
    if isinstance(x, Zero):
        return []
    free = [i for i in range(1, x.n + 1) if x.sign(i) == 0]
    out = []
    for signs in itertools.product((0, 1), repeat=len(free)):
        plus, minus = x.plus, x.minus
        for i, s in zip(free, signs):
            if s:
                minus |= 1 << (i - 1)
            else:
                plus |= 1 << (i - 1)
        out.append(SignedSet(x.n, plus, minus))
    return out


def filter_complement(a: CubicElement, x: CubicElement) -> CubicElement:
    """Complement of ``x`` inside the Boolean filter {y : a <= y}."""
    _same_n(a, x)
    if isinstance(a, Zero):
        raise DomainError("the filter above Zero is all of L(S) and is not Boolean")
    if not leq(a, x):
        raise DomainError(f"{x} is not above {a}")
    return join(a, antipode(delta(x, a)))


def filter_elements(a: SignedSet) -> list[SignedSet]:
    """All faces y with a <= y."""
    return [y for y in faces(a.n) if leq(a, y)]


# --- axiom checker -----------------------------------------------------------

def verify_cubic_axioms(
    n: int,
    *,
    leq: Callable = leq,
    meet: Callable = meet,
    join: Callable = join,
    delta: Callable = delta,
) -> Report:
    """Exhaustively check the five cubic-lattice axioms on L(S), |S| = n.

    The lattice operations are injectable so that a deliberately broken
    implementation can be shown to fail.
    """
    if n > 4:
        raise CapExceeded("exhaustive axiom check is limited to n <= 4")
    elems = enumerate_lattice(n)
    N = len(elems)
    bottom, one = Zero(n), top(n)
    index = {e: k for k, e in enumerate(elems)}
    up = [0] * N
    down = [0] * N
    for i, x in enumerate(elems):
        for j, y in enumerate(elems):
            if leq(x, y):
                up[i] |= 1 << j
                down[j] |= 1 << i
    report = Report(f"cubic lattice axioms, n={n}")

    def strictly_below(x):
        return [y for y in elems if y != x and leq(y, x)]

    # (1) delta_x is an order-preserving self-map of the principal ideal (x)
    witness = None
    for x in elems:
        if isinstance(x, Zero):
            continue
        ideal = [y for y in elems if leq(y, x)]
        images = {}
        for y in ideal:
            try:
                images[y] = delta(x, y)
            except DomainError:
                witness = {"x": str(x), "y": str(y), "why": "delta undefined"}
                break
            if not leq(images[y], x):
                witness = {"x": str(x), "y": str(y), "image": str(images[y])}
                break
        if witness:
            break
        for a in ideal:
            for b in ideal:
                if leq(a, b) and not leq(images[a], images[b]):
                    witness = {"x": str(x), "a": str(a), "b": str(b)}
                    break
            if witness:
                break
        if witness:
            break
    report.add("axiom1_delta_order_preserving", witness is None, "cubic lattice definition (1)", witness)

    # (2) for 0 < a, b < x: a v delta_x(b) < x  iff  a ^ b = 0
    witness = None
    for x in elems:
        if isinstance(x, Zero):
            continue
        inner = [y for y in strictly_below(x) if not isinstance(y, Zero)]
        for a in inner:
            for b in inner:
                lhs = lt(join(a, delta(x, b)), x)
                rhs = isinstance(meet(a, b), Zero)
                if lhs != rhs:
                    witness = {"x": str(x), "a": str(a), "b": str(b),
                               "join_below_x": lhs, "meet_is_zero": rhs}
                    break
            if witness:
                break
        if witness:
            break
    report.add("axiom2_delta_disjointness", witness is None, "cubic lattice definition (2)", witness)

    # (3) completeness: every pair has a glb and lub in the carrier and the
    # operations return them; with 0 and 1 present this covers all subsets.
    witness = None
    if up[index[bottom]] != (1 << N) - 1 or down[index[one]] != (1 << N) - 1:
        witness = {"why": "missing bounds"}
    for i in range(N):
        if witness:
            break
        for j in range(i, N):
            uppers = up[i] & up[j]
            lowers = down[i] & down[j]
            lub = [k for k in _bits(uppers) if uppers & ~up[k] == 0]
            glb = [k for k in _bits(lowers) if lowers & ~down[k] == 0]
            x, y = elems[i], elems[j]
            if len(lub) != 1 or len(glb) != 1:
                witness = {"x": str(x), "y": str(y), "why": "bound not unique"}
                break
            got_j, got_m = join(x, y), meet(x, y)
            if got_j != elems[lub[0]] or got_m != elems[glb[0]]:
                witness = {"x": str(x), "y": str(y),
                           "join": str(got_j), "lub": str(elems[lub[0]]),
                           "meet": str(got_m), "glb": str(elems[glb[0]])}
                break
    report.add("axiom3_complete", witness is None, "cubic lattice definition (3)", witness)

    # (4) atomistic: each element is the join of the atoms below it
    atom_list = [e for e in elems if isinstance(e, SignedSet) and e.is_atom]
    witness = None
    for x in elems:
        below = [a for a in atom_list if leq(a, x)]
        if reduce(join, below, bottom) != x:
            witness = {"x": str(x)}
            break
    report.add("axiom4_atomistic", witness is None, "cubic lattice definition (4)", witness)

    # (5) coatomistic: each element is the meet of the coatoms above it
    coatom_list = [e for e in elems if isinstance(e, SignedSet) and e.is_coatom]
    witness = None
    for x in elems:
        above = [c for c in coatom_list if leq(x, c)]
        if reduce(meet, above, one) != x:
            witness = {"x": str(x)}
            break
    report.add("axiom5_coatomistic", witness is None, "cubic lattice definition (5)", witness)
    return report


def _bits(mask: int):
    k = 0
    while mask:
        if mask & 1:
            yield k
        mask >>= 1
        k += 1
