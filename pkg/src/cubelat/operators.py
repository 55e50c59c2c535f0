"""Dense 2^n x 2^n operators with an exact and a floating mode.

Exact mode stores a matrix as ``(re + i*im) * sqrt(2)**k`` with integer
arrays ``re``/``im`` and an integer ``k``. That covers every constant the
package needs (0, +-1, +-i, 1/2, 1/sqrt2) with zero tolerance. The
representation is kept canonical (``re``/``im`` not both even unless zero),
so exact equality is plain array comparison.

Float mode is a complex128 array compared within ``TAU``.
"""

from __future__ import annotations

import math
import os
from fractions import Fraction

import numpy as np

from .errors import CapExceeded, DimensionError, PreconditionError

TAU = 1e-10

_INT_LIMIT = 2**62


def dense_cap() -> int:
    return int(os.environ.get("CUBELAT_DENSE_CAP", "12"))


def check_dense_cap(n: int, cap: int | None = None) -> None:
    cap = dense_cap() if cap is None else min(cap, dense_cap())
    if n > cap:
        raise CapExceeded(
            f"dense operators at n={n} need 4^{n} entries; cap is n <= {cap} "
            "(set CUBELAT_DENSE_CAP to change)")


def _as_int_array(a) -> np.ndarray:
    a = np.asarray(a)
    if a.dtype == object:
        return a
    if not np.issubdtype(a.dtype, np.integer):
        raise TypeError(f"exact entries must be integers, got {a.dtype}")
    return a.astype(np.int64, copy=False)


def _maxabs(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    return int(max(abs(int(a.max())), abs(int(a.min()))))


def _widen(*arrays):
    """Switch to Python-int object arrays if int64 products could overflow."""
    bound = 1
    for a in arrays:
        bound *= max(_maxabs(a), 1)
    bound *= 2 * max(a.shape[-1] for a in arrays)
    if bound < _INT_LIMIT:
        return arrays
    return tuple(a.astype(object) for a in arrays)


def _matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    a, b = _widen(a, b)
    if a.dtype == object or b.dtype == object:
        return np.dot(a.astype(object), b.astype(object))
    return a @ b


def _add(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if _maxabs(a) + _maxabs(b) >= _INT_LIMIT:
        return a.astype(object) + b.astype(object)
    return a + b


class DenseOperator:
    """A square operator on (C^2)^{tensor n}.

    Build exact operators with :meth:`exact` and floating ones with
    :meth:`from_array`. Products, sums and adjoints stay exact when both
    operands are exact; mixing modes falls back to float.
    """

    __slots__ = ("n", "_re", "_im", "_k", "_data")

    def __init__(self, n, *, re=None, im=None, k=0, data=None):
        self.n = n
        self._re = self._im = self._data = None
        self._k = 0
        if data is not None:
            data = np.asarray(data, dtype=np.complex128)
            if data.shape != (2**n, 2**n):
                raise DimensionError(f"expected shape {(2**n, 2**n)}, got {data.shape}")
            self._data = data
            return
        re = _as_int_array(re)
        if re.shape != (2**n, 2**n):
            raise DimensionError(f"expected shape {(2**n, 2**n)}, got {re.shape}")
        im = np.zeros_like(re) if im is None else _as_int_array(im)
        self._re, self._im, self._k = re, im, int(k)
        self._normalize()

    # -- constructors ------------------------------------------------------

    @classmethod
    def exact(cls, re, im=None, sqrt2_power=0, n=None):
        re = np.asarray(re)
        if n is None:
            n = int(round(math.log2(re.shape[0])))
        return cls(n, re=re, im=im, k=sqrt2_power)

    @classmethod
    def from_array(cls, data, n=None):
        data = np.asarray(data, dtype=np.complex128)
        if n is None:
            n = int(round(math.log2(data.shape[0])))
        return cls(n, data=data)

    @classmethod
    def identity(cls, n):
        return cls(n, re=np.eye(2**n, dtype=np.int64))

    @classmethod
    def zeros(cls, n):
        return cls(n, re=np.zeros((2**n, 2**n), dtype=np.int64))

    @classmethod
    def diagonal(cls, diag, n=None, im=None):
        diag = np.asarray(diag)
        if n is None:
            n = int(round(math.log2(diag.shape[0])))
        re = np.diag(diag).astype(np.int64)
        imm = None if im is None else np.diag(np.asarray(im)).astype(np.int64)
        return cls(n, re=re, im=imm)

    @classmethod
    def permutation(cls, images, n=None):
        """Permutation matrix sending basis vector ``j`` to ``images[j]``."""
        images = np.asarray(images)
        dim = images.shape[0]
        if n is None:
            n = int(round(math.log2(dim)))
        if sorted(images.tolist()) != list(range(dim)):
            raise ValueError("images is not a permutation")
        re = np.zeros((dim, dim), dtype=np.int64)
        re[images, np.arange(dim)] = 1
        return cls(n, re=re)

    # -- representation ----------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return self._data is None

    @property
    def mode(self) -> str:
        return "exact" if self.is_exact else "float"

    @property
    def dim(self) -> int:
        return 2**self.n

    @property
    def sqrt2_power(self) -> int:
        return self._k

    @property
    def gaussian_parts(self):
        """``(re, im, k)`` with value ``(re + i im) * sqrt2**k`` (exact only)."""
        if not self.is_exact:
            raise TypeError("float operator has no exact parts")
        return self._re, self._im, self._k

    def _normalize(self):
        re, im = self._re, self._im
        if not re.any() and not im.any():
            self._k = 0
            return
        while not (re % 2).any() and not (im % 2).any():
            re = re // 2
            im = im // 2
            self._k += 2
        self._re, self._im = re, im

    def to_numpy(self) -> np.ndarray:
        if self._data is not None:
            return self._data
        scale = math.sqrt(2) ** self._k
        re = self._re.astype(np.float64)
        im = self._im.astype(np.float64)
        return (re + 1j * im) * scale

    def to_float(self) -> "DenseOperator":
        return DenseOperator(self.n, data=self.to_numpy())

    def __array__(self, dtype=None, copy=None):
        arr = self.to_numpy()
        return arr if dtype is None else arr.astype(dtype)

    def entry(self, row: int, col: int):
        """Entry as a complex number (float) for inspection."""
        return complex(self.to_numpy()[row, col])

    # -- arithmetic --------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, DenseOperator):
            return NotImplemented
        if other.n != self.n:
            raise DimensionError(f"operators on n={self.n} and n={other.n}")
        return None

    def __matmul__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        if self.is_exact and other.is_exact:
            a, b, c, d = self._re, self._im, other._re, other._im
            re = _matmul(a, c)
            im = _matmul(a, d) if d.any() else np.zeros_like(re)
            if b.any():
                re = _add(re, -_matmul(b, d)) if d.any() else re
                im = _add(im, _matmul(b, c))
            return DenseOperator(self.n, re=re, im=im, k=self._k + other._k)
        return DenseOperator(self.n, data=self.to_numpy() @ other.to_numpy())

    def _aligned(self, other):
        """Bring two exact operators to a common sqrt2 power."""
        if not other._re.any() and not other._im.any():
            return self._re, self._im, other._re * 0, other._im * 0, self._k
        if not self._re.any() and not self._im.any():
            return self._re * 0, self._im * 0, other._re, other._im, other._k
        diff = self._k - other._k
        if diff % 2:
            return None
        if diff >= 0:
            f = 2 ** (diff // 2)
            return self._re * f, self._im * f, other._re, other._im, other._k
        f = 2 ** (-diff // 2)
        return self._re, self._im, other._re * f, other._im * f, self._k

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        if self.is_exact and other.is_exact:
            aligned = self._aligned(other)
            if aligned is not None:
                a, b, c, d, k = aligned
                return DenseOperator(self.n, re=_add(a, c), im=_add(b, d), k=k)
        return DenseOperator(self.n, data=self.to_numpy() + other.to_numpy())

    def __neg__(self):
        if self.is_exact:
            return DenseOperator(self.n, re=-self._re, im=-self._im, k=self._k)
        return DenseOperator(self.n, data=-self._data)

    def __sub__(self, other):
        if not isinstance(other, DenseOperator):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar):
        """Scale by a Gaussian integer (exact) or any complex number (float)."""
        if isinstance(scalar, DenseOperator):
            return NotImplemented
        if self.is_exact:
            z = complex(scalar)
            if z.real.is_integer() and z.imag.is_integer():
                p, q = int(z.real), int(z.imag)
                re = _add(self._re * p, -(self._im * q)) if q else self._re * p
                im = _add(self._re * q, self._im * p) if q else self._im * p
                return DenseOperator(self.n, re=re, im=im, k=self._k)
        return DenseOperator(self.n, data=self.to_numpy() * complex(scalar))

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        if self.is_exact and isinstance(scalar, int) and scalar > 0 and scalar & (scalar - 1) == 0:
            return self.scaled_sqrt2(-2 * (scalar.bit_length() - 1))
        if self.is_exact and isinstance(scalar, (int, Fraction)) and scalar:
            raise TypeError("exact operators can only be divided by powers of two")
        return DenseOperator(self.n, data=self.to_numpy() / complex(scalar))

    def scaled_sqrt2(self, power: int) -> "DenseOperator":
        """Multiply by sqrt(2)**power."""
        if self.is_exact:
            return DenseOperator(self.n, re=self._re, im=self._im, k=self._k + power)
        return DenseOperator(self.n, data=self._data * math.sqrt(2) ** power)

    def adjoint(self) -> "DenseOperator":
        if self.is_exact:
            return DenseOperator(self.n, re=self._re.T.copy(), im=-self._im.T, k=self._k)
        return DenseOperator(self.n, data=self._data.conj().T)

    @property
    def H(self) -> "DenseOperator":
        return self.adjoint()

    def trace(self) -> complex:
        return complex(np.trace(self.to_numpy()))

    def conjugate_by(self, u: "DenseOperator") -> "DenseOperator":
        """``u @ self @ u*``."""
        return u @ self @ u.adjoint()

    # -- comparisons and predicates ----------------------------------------

    def __eq__(self, other):
        if not isinstance(other, DenseOperator):
            return NotImplemented
        if other.n != self.n:
            return False
        if self.is_exact and other.is_exact:
            return (self._k == other._k and np.array_equal(self._re, other._re)
                    and np.array_equal(self._im, other._im))
        return self.allclose(other)

    __hash__ = None

    def allclose(self, other, tol: float = TAU) -> bool:
        return bool(np.allclose(self.to_numpy(), np.asarray(other, dtype=np.complex128),
                                rtol=0.0, atol=tol))

    def is_zero(self) -> bool:
        if self.is_exact:
            return not self._re.any() and not self._im.any()
        return bool(np.allclose(self._data, 0, atol=TAU))

    def is_hermitian(self) -> bool:
        return self == self.adjoint()

    def is_unitary(self) -> bool:
        return self @ self.adjoint() == DenseOperator.identity(self.n)

    def is_projection(self) -> bool:
        return self.is_hermitian() and self @ self == self

    def is_symmetry(self) -> bool:
        """Hermitian involution."""
        return self.is_hermitian() and self @ self == DenseOperator.identity(self.n)

    def is_diagonal(self) -> bool:
        arr = self._re if self.is_exact else self._data
        off = arr - np.diag(np.diag(arr))
        if self.is_exact:
            off_im = self._im - np.diag(np.diag(self._im))
            return not off.any() and not off_im.any()
        return bool(np.allclose(off, 0, atol=TAU))

    def commutes_with(self, other) -> bool:
        return self @ other == other @ self

    def anticommutes_with(self, other) -> bool:
        return (self @ other + other @ self).is_zero()

    def leq(self, other: "DenseOperator") -> bool:
        """Projection order: range(self) inside range(other)."""
        return other @ self == self

    def rank(self) -> int:
        if self.is_exact:
            rows = [list(zip(self._re[i].tolist(), self._im[i].tolist())) for i in range(self.dim)]
            return exact_rank(rows)
        return int(np.linalg.matrix_rank(self._data, tol=1e-8))

    def diag_entries(self) -> np.ndarray:
        return np.diag(self.to_numpy())

    def __repr__(self):
        return f"DenseOperator(n={self.n}, mode={self.mode})\n{self.to_numpy()}"

    # -- serialization -----------------------------------------------------

    def to_json_dict(self) -> dict:
        """Matrix dump: exact entries as rational strings plus a sqrt2 power."""
        if not self.is_exact:
            arr = self._data
            return {"n": self.n, "mode": "float",
                    "entries": [[[float(z.real), float(z.imag)] for z in row] for row in arr]}
        half, odd = divmod(self._k, 2)
        scale = Fraction(2) ** half
        entries = [[[_frac_str(Fraction(int(r)) * scale), _frac_str(Fraction(int(i)) * scale)]
                    for r, i in zip(rrow, irow)]
                   for rrow, irow in zip(self._re.tolist(), self._im.tolist())]
        return {"n": self.n, "mode": "exact", "sqrt2_power": odd, "entries": entries}


def _frac_str(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


def kron(*ops: DenseOperator) -> DenseOperator:
    """Tensor product; factor 0 becomes the most significant qubit."""
    out = ops[0]
    for op in ops[1:]:
        n = out.n + op.n
        if out.is_exact and op.is_exact:
            a, b, c, d = out._re, out._im, op._re, op._im
            re = np.kron(a, c) - np.kron(b, d)
            im = np.kron(a, d) + np.kron(b, c)
            out = DenseOperator(n, re=re, im=im, k=out._k + op._k)
        else:
            out = DenseOperator(n, data=np.kron(out.to_numpy(), op.to_numpy()))
    return out


# --- exact rank over Q(i) -----------------------------------------------------

def _gmul(x, y):
    return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def _gsub(x, y):
    return (x[0] - y[0], x[1] - y[1])


def _nonzero(x):
    return x[0] != 0 or x[1] != 0


class ExactSpan:
    """Incremental row echelon basis over the Gaussian integers.

    Vectors are sequences of ``(re, im)`` integer pairs. Reduction is
    fraction-free (cross-multiplication by pivots), so rank is exact over
    Q(i) without any division.
    """

    def __init__(self):
        self._rows: list[tuple[int, list]] = []

    def __len__(self):
        return len(self._rows)

    @property
    def rank(self) -> int:
        return len(self._rows)

    def reduce(self, vec) -> list:
        v = [(int(a), int(b)) for a, b in vec]
        for pivot, row in self._rows:
            c = v[pivot]
            if _nonzero(c):
                p = row[pivot]
                v = [_gsub(_gmul(p, vi), _gmul(c, ri)) for vi, ri in zip(v, row)]
                v = _content_reduce(v)
        return v

    def add(self, vec) -> bool:
        """Insert ``vec``; return True iff it increased the rank."""
        v = self.reduce(vec)
        for k, x in enumerate(v):
            if _nonzero(x):
                self._rows.append((k, v))
                return True
        return False


def _content_reduce(v):
    g = 0
    for a, b in v:
        g = math.gcd(g, a, b)
    if g > 1:
        return [(a // g, b // g) for a, b in v]
    return v


def exact_rank(rows) -> int:
    span = ExactSpan()
    for r in rows:
        span.add(r)
    return span.rank
