"""The octahedral dual of the cubic lattice.

A dual face is the set of signed coordinate functionals ``(i, '+')`` or
``(i, '-')`` that are extreme in it. The functional ``eps(i, sigma)``
evaluates to 1 on an atom whose sign at ``i`` is ``sigma`` and 0 otherwise.
"""

from __future__ import annotations

import numpy as np

from . import signed_lattice as sl
from .errors import CapExceeded, DomainError
from .report import Report
from .signed_lattice import CubicElement, SignedSet, Zero

DualFace = frozenset  # of (index, "+" | "-")

VERIFY_CAP = 4


def phi(x: CubicElement, *, extended: bool = False) -> DualFace:
    """Extreme functionals of the face image: plus indices as '+', minus indices as '-'.

    Zero has no face image; ``extended=True`` maps it to all 2n functionals.
    """
    if isinstance(x, Zero):
        if not extended:
            raise DomainError("phi is undefined on Zero (pass extended=True for the full set)")
        return frozenset((i, sgn) for i in range(1, x.n + 1) for sgn in "+-")
    return frozenset([(i, "+") for i in sorted(x.plus_set)] + [(j, "-") for j in sorted(x.minus_set)])


def theta_inv(x: CubicElement, *, extended: bool = False) -> DualFace:
    """phi composed with the antipodal map."""
    return phi(sl.antipode(x), extended=extended)


def serialize(face: DualFace) -> list[str]:
    return [f"{i}{sgn}" for i, sgn in sorted(face)]


def deserialize(items) -> DualFace:
    out = set()
    for item in items:
        i, sgn = int(item[:-1]), item[-1]
        if sgn not in "+-":
            raise ValueError(f"bad functional {item!r}")
        out.add((i, sgn))
    return frozenset(out)


def epsilon(n: int, i: int, sign: str) -> np.ndarray:
    """The functional as a 0/1 vector over the 2^n atom labels."""
    labels = np.arange(2**n)
    bit = (labels >> (n - i)) & 1
    return (bit == (1 if sign == "-" else 0)).astype(np.int64)


def verify_anti_isomorphism(n: int, *, theta_inv=theta_inv) -> Report:
    """Exhaustive combinatorial checks plus a diagonal annihilation check."""
    if n > VERIFY_CAP:
        raise CapExceeded(f"exhaustive dual verification is capped at n <= {VERIFY_CAP}")
    from .hilbert_embed import face_projection_dense

    fs = sl.faces(n)
    images = {x: theta_inv(x) for x in fs}
    report = Report(f"dual anti-isomorphism n={n}")
    anchor = "theta inverse is phi and delta"

    seen: dict[DualFace, SignedSet] = {}
    clash = None
    for x, f in images.items():
        if f in seen:
            clash = [str(seen[f]), str(x)]
            break
        seen[f] = x
    report.add("injective", clash is None, anchor, clash, f"{len(fs)} faces")

    bad = None
    for x in fs:
        for y in fs:
            if sl.leq(x, y) != (images[y] <= images[x]):
                bad = [str(x), str(y)]
                break
        if bad:
            break
    report.add("order_reversing", bad is None, anchor, bad)

    # atoms go to the maximal images, and those are exactly the n-element sets
    maximal = {f for f in images.values() if not any(f < g for g in images.values())}
    atom_imgs = {images[a] for a in sl.atoms(n)}
    report.add("atoms_to_maximal_faces", atom_imgs == maximal and all(len(f) == n for f in maximal),
               "coatoms of OL", sorted(serialize(f) for f in maximal ^ atom_imgs) or None)

    roundtrip = None
    for x, f in images.items():
        back = sl.antipode(_face_from_dual(n, f))
        if back != x:
            roundtrip = str(x)
            break
    report.add("antipode_inverts_image", roundtrip is None, anchor, roundtrip)

    numeric = None
    for x in fs:
        diag = np.real(face_projection_dense(x).diag_entries())
        for i, sgn in images[x]:
            if float(epsilon(n, i, sgn) @ diag) != 0.0:
                numeric = [str(x), f"{i}{sgn}"]
                break
        if numeric:
            break
    report.add("functionals_annihilate_face", numeric is None, "sigma(p) = 0", numeric)
    return report


def _face_from_dual(n: int, face: DualFace) -> SignedSet:
    return SignedSet.from_sets(n, [i for i, s in face if s == "+"], [i for i, s in face if s == "-"])
