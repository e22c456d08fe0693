"""Exact linear algebra over Q and Q(i).

Every scalar is a Gaussian rational ``re + im*i`` with ``re``, ``im`` stored as
normalized ``gmpy2.mpq``.  Matrices are immutable row tuples; subspaces are kept
in reduced row-echelon form so that equal subspaces compare equal.

Vectors are plain tuples of :class:`Scalar`.  A matrix acts on column vectors,
``M @ v``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from gmpy2 import mpq

__all__ = [
    "Scalar", "Matrix", "Subspace", "BilinearForm", "LinalgError",
    "as_scalar", "vector", "rref", "kernel", "image", "sum_spaces", "intersect",
    "quotient_basis", "annihilator", "solve", "is_positive_definite_hermitian",
    "exp_nilpotent",
]


class LinalgError(ValueError):
    pass


_MPQ = type(mpq(0))


class Scalar:
    """A Gaussian rational number.  Immutable, hashable, exact."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", re if type(re) is _MPQ else mpq(re))
        object.__setattr__(self, "im", im if type(im) is _MPQ else mpq(im))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    @staticmethod
    def _new(re, im):
        s = object.__new__(Scalar)
        object.__setattr__(s, "re", re)
        object.__setattr__(s, "im", im)
        return s

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = as_scalar(other)
        return Scalar._new(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = as_scalar(other)
        return Scalar._new(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return as_scalar(other) - self

    def __neg__(self):
        return Scalar._new(-self.re, -self.im)

    def __mul__(self, other):
        o = as_scalar(other)
        if not self.im and not o.im:
            return Scalar._new(self.re * o.re, _ZQ)
        return Scalar._new(self.re * o.re - self.im * o.im,
                           self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of zero scalar")
        if not self.im:
            return Scalar._new(1 / self.re, _ZQ)
        n = self.re * self.re + self.im * self.im
        return Scalar._new(self.re / n, -self.im / n)

    def __truediv__(self, other):
        return self * as_scalar(other).inverse()

    def __rtruediv__(self, other):
        return as_scalar(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conj(self) -> "Scalar":
        return Scalar._new(self.re, -self.im)

    def norm2(self):
        return self.re * self.re + self.im * self.im

    # predicates -------------------------------------------------------
    def __bool__(self):
        return bool(self.re) or bool(self.im)

    @property
    def is_real(self) -> bool:
        return not self.im

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.re == other.re and self.im == other.im
        try:
            o = as_scalar(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    # text -------------------------------------------------------------
    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}*i"

    def __repr__(self):
        return f"Scalar({self})"

    @classmethod
    def parse(cls, text: str | int) -> "Scalar":
        """Parse ``"a/b"``, ``"a/b+c/d*i"``, ``"i"``, ``"-3*i"`` and friends."""
        if isinstance(text, int):
            return cls(text)
        s = str(text).replace(" ", "")
        if not s:
            raise LinalgError("empty scalar literal")
        if not s.endswith("i"):
            try:
                return cls(mpq(s.lstrip("+")))
            except ValueError as exc:
                raise LinalgError(f"bad scalar literal {text!r}") from exc
        body = s[:-1]
        if body.endswith("*"):
            body = body[:-1]
        # split real part from imaginary coefficient at the last sign not at position 0
        cut = max(body.rfind("+"), body.rfind("-"))
        if cut > 0:
            re_part, im_part = body[:cut], body[cut:]
        else:
            re_part, im_part = "0", body
        if im_part in ("", "+"):
            im_part = "1"
        elif im_part == "-":
            im_part = "-1"
        try:
            return cls(mpq(re_part.lstrip("+")), mpq(im_part.lstrip("+")))
        except ValueError as exc:
            raise LinalgError(f"bad scalar literal {text!r}") from exc


_ZQ = mpq(0)
ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)


def as_scalar(x) -> Scalar:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, _MPQ)):
        return Scalar._new(mpq(x), _ZQ)
    if isinstance(x, str):
        return Scalar.parse(x)
    if isinstance(x, complex):
        raise TypeError("floating point complex numbers are not exact")
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a Fraction or string")
    try:
        return Scalar._new(mpq(x), _ZQ)  # Fraction and friends
    except (TypeError, ValueError) as exc:
        raise TypeError(f"cannot convert {x!r} to Scalar") from exc


def vector(entries: Iterable) -> tuple:
    return tuple(as_scalar(e) for e in entries)


def _dot(u: Sequence[Scalar], v: Sequence[Scalar]) -> Scalar:
    acc = ZERO
    for a, b in zip(u, v):
        if (a.re or a.im) and (b.re or b.im):
            acc = acc + a * b
    return acc


def _sparse(v: Sequence[Scalar]) -> tuple:
    return tuple((j, x) for j, x in enumerate(v) if x.re or x.im)


class Matrix:
    """Immutable dense matrix of :class:`Scalar`."""

    __slots__ = ("rows", "nrows", "ncols", "_hash", "_nz")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        rs = tuple(tuple(as_scalar(x) for x in r) for r in rows)
        if ncols is None:
            ncols = len(rs[0]) if rs else 0
        for r in rs:
            if len(r) != ncols:
                raise LinalgError("ragged matrix rows")
        object.__setattr__(self, "rows", rs)
        object.__setattr__(self, "nrows", len(rs))
        object.__setattr__(self, "ncols", ncols)
        object.__setattr__(self, "_hash", None)
        object.__setattr__(self, "_nz", None)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def _raw(cls, rows: tuple, ncols: int) -> "Matrix":
        m = object.__new__(cls)
        object.__setattr__(m, "rows", rows)
        object.__setattr__(m, "nrows", len(rows))
        object.__setattr__(m, "ncols", ncols)
        object.__setattr__(m, "_hash", None)
        object.__setattr__(m, "_nz", None)
        return m

    # constructors -----------------------------------------------------
    @classmethod
    def zeros(cls, r: int, c: int | None = None) -> "Matrix":
        c = r if c is None else c
        row = (ZERO,) * c
        return cls._raw((row,) * r, c)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls._raw(tuple(tuple(ONE if i == j else ZERO for j in range(n))
                              for i in range(n)), n)

    @classmethod
    def diag(cls, entries: Sequence) -> "Matrix":
        n = len(entries)
        es = [as_scalar(e) for e in entries]
        return cls._raw(tuple(tuple(es[i] if i == j else ZERO for j in range(n))
                              for i in range(n)), n)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], nrows: int | None = None) -> "Matrix":
        if not cols:
            return cls.zeros(nrows or 0, 0)
        return cls(zip(*cols), len(cols))

    @classmethod
    def from_blocks(cls, grid: Sequence[Sequence["Matrix"]]) -> "Matrix":
        rows: list = []
        for band in grid:
            h = band[0].nrows
            if any(b.nrows != h for b in band):
                raise LinalgError("blocks in one band must share a height")
            for i in range(h):
                rows.append(tuple(x for b in band for x in b.rows[i]))
        ncols = sum(b.ncols for b in grid[0])
        if any(len(r) != ncols for r in rows):
            raise LinalgError("block bands have different widths")
        return cls._raw(tuple(rows), ncols)

    @classmethod
    def unit(cls, n: int, i: int, j: int, value=1) -> "Matrix":
        v = as_scalar(value)
        return cls._raw(tuple(tuple(v if (a, b) == (i, j) else ZERO for b in range(n))
                              for a in range(n)), n)

    # basic protocol ---------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.shape, self.rows)))
        return self._hash

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.rows)
        return f"Matrix[{self.nrows}x{self.ncols}]({body})"

    def columns(self) -> list[tuple]:
        return [tuple(r[j] for r in self.rows) for j in range(self.ncols)]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    # arithmetic -------------------------------------------------------
    def _check_same(self, other: "Matrix"):
        if self.shape != other.shape:
            raise LinalgError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix._raw(tuple(tuple(a + b for a, b in zip(r, s))
                                 for r, s in zip(self.rows, other.rows)), self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix._raw(tuple(tuple(a - b for a, b in zip(r, s))
                                 for r, s in zip(self.rows, other.rows)), self.ncols)

    def __neg__(self) -> "Matrix":
        return Matrix._raw(tuple(tuple(-a for a in r) for r in self.rows), self.ncols)

    def scale(self, c) -> "Matrix":
        c = as_scalar(c)
        if not c:
            return Matrix.zeros(self.nrows, self.ncols)
        return Matrix._raw(tuple(tuple(c * a if a else ZERO for a in r) for r in self.rows),
                           self.ncols)

    def __rmul__(self, c) -> "Matrix":
        return self.scale(c)

    def sparse_rows(self) -> tuple:
        """Per row, the tuple of ``(column, entry)`` with nonzero entry (cached)."""
        if self._nz is None:
            object.__setattr__(self, "_nz", tuple(_sparse(r) for r in self.rows))
        return self._nz

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise LinalgError(f"cannot multiply {self.shape} by {other.shape}")
            out = []
            onz = other.sparse_rows()
            n = other.ncols
            for r in self.sparse_rows():
                acc = [ZERO] * n
                for k, a in r:
                    for j, b in onz[k]:
                        acc[j] = acc[j] + a * b
                out.append(tuple(acc))
            return Matrix._raw(tuple(out), n)
        v = tuple(other)
        if len(v) != self.ncols:
            raise LinalgError("vector length mismatch")
        out = []
        for r in self.sparse_rows():
            acc = ZERO
            for j, a in r:
                b = v[j]
                if b.re or b.im:
                    acc = acc + a * b
            out.append(acc)
        return tuple(out)

    def __pow__(self, k: int) -> "Matrix":
        if self.nrows != self.ncols:
            raise LinalgError("power of non-square matrix")
        if k < 0:
            raise LinalgError("negative matrix power")
        out = Matrix.identity(self.nrows)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def T(self) -> "Matrix":
        return Matrix._raw(tuple(zip(*self.rows)) if self.nrows else (), self.nrows) \
            if self.nrows else Matrix.zeros(self.ncols, 0)

    def conj(self) -> "Matrix":
        return Matrix._raw(tuple(tuple(a.conj() for a in r) for r in self.rows), self.ncols)

    def H(self) -> "Matrix":
        return self.conj().T()

    def is_zero(self) -> bool:
        return not any(a for r in self.rows for a in r)

    def is_real(self) -> bool:
        return all(not a.im for r in self.rows for a in r)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def rank(self) -> int:
        return len(_rref_rows(self.rows, self.ncols)[1])

    def trace(self) -> Scalar:
        acc = ZERO
        for i in range(min(self.nrows, self.ncols)):
            acc = acc + self.rows[i][i]
        return acc

    def block(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix._raw(tuple(tuple(self.rows[i][j] for j in cols) for i in rows),
                           len(cols))

    def inverse(self) -> "Matrix":
        n = self.nrows
        if n != self.ncols:
            raise LinalgError("inverse of non-square matrix")
        aug = [list(r) + [ONE if i == j else ZERO for j in range(n)]
               for i, r in enumerate(self.rows)]
        red, piv = _rref_rows(aug, 2 * n)
        if piv[:n] != list(range(n)):
            raise LinalgError("matrix is singular")
        return Matrix._raw(tuple(tuple(r[n:]) for r in red[:n]), n)

    def commutator(self, other: "Matrix") -> "Matrix":
        return self @ other - other @ self

    def nonzero_entries(self):
        for i, r in enumerate(self.rows):
            for j, a in enumerate(r):
                if a:
                    yield i, j, a


def _rref_rows(rows, ncols):
    """Row-reduce a list of rows; returns (rows_in_rref, pivot_columns)."""
    m = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        if r == nrows:
            break
        p = None
        for i in range(r, nrows):
            x = m[i][c]
            if x.re or x.im:
                p = i
                break
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        prow = m[r]
        inv = prow[c].inverse()
        if inv != ONE:
            prow = [x * inv if x else ZERO for x in prow]
            m[r] = prow
        nz = [(j, x) for j, x in enumerate(prow) if j >= c and (x.re or x.im)]
        for i in range(nrows):
            if i == r:
                continue
            f = m[i][c]
            if not (f.re or f.im):
                continue
            row = m[i]
            for j, x in nz:
                row[j] = row[j] - f * x
        pivots.append(c)
        r += 1
    return m, pivots


def rref(M: Matrix) -> Matrix:
    """Unique reduced row-echelon form of ``M`` (same shape, zero rows at the bottom)."""
    red, _ = _rref_rows(M.rows, M.ncols)
    return Matrix._raw(tuple(tuple(r) for r in red), M.ncols)


@dataclass(frozen=True)
class Subspace:
    """A subspace of the column space Q(i)^n, stored by a canonical RREF basis."""

    ambient_dim: int
    basis: tuple  # tuple of row vectors in RREF
    pivots: tuple

    # constructors -----------------------------------------------------
    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        vs = [tuple(x if type(x) is Scalar else as_scalar(x) for x in v) for v in vectors]
        for v in vs:
            if len(v) != ambient_dim:
                raise LinalgError("vector length does not match ambient dimension")
        if not vs:
            return cls(ambient_dim, (), ())
        red, piv = _rref_rows(vs, ambient_dim)
        return cls(ambient_dim, tuple(tuple(r) for r in red[:len(piv)]), tuple(piv))

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, (), ())

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, Matrix.identity(n).rows, tuple(range(n)))

    @classmethod
    def coordinate(cls, n: int, indices: Iterable[int]) -> "Subspace":
        idx = sorted(set(indices))
        return cls(n, tuple(tuple(ONE if j == i else ZERO for j in range(n)) for i in idx),
                   tuple(idx))

    # queries ----------------------------------------------------------
    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return self.dim

    def matrix(self) -> Matrix:
        """Basis as the rows of a matrix."""
        return Matrix._raw(self.basis, self.ambient_dim)

    @cached_property
    def _sparse_basis(self) -> tuple:
        return tuple(_sparse(r) for r in self.basis)

    def reduce(self, v: Sequence[Scalar]) -> list:
        w = list(v)
        for row, c in zip(self._sparse_basis, self.pivots):
            f = w[c]
            if f.re or f.im:
                for j, x in row:
                    w[j] = w[j] - f * x
        return w

    def contains(self, v: Sequence) -> bool:
        v = tuple(as_scalar(x) for x in v)
        if len(v) != self.ambient_dim:
            raise LinalgError("vector length does not match ambient dimension")
        return not any(self.reduce(v))

    __contains__ = contains

    def __le__(self, other: "Subspace") -> bool:
        _check_ambient(self, other)
        return all(other.contains(b) for b in self.basis)

    def __ge__(self, other: "Subspace") -> bool:
        return other <= self

    def __lt__(self, other: "Subspace") -> bool:
        return self <= other and self.dim < other.dim

    def __add__(self, other: "Subspace") -> "Subspace":
        _check_ambient(self, other)
        if not other.basis:
            return self
        if not self.basis:
            return other
        small, big = (self, other) if self.dim <= other.dim else (other, self)
        extra = [r for r in (big.reduce(b) for b in small.basis) if any(r)]
        if not extra:
            return big
        return Subspace.span(big.basis + tuple(tuple(r) for r in extra), self.ambient_dim)

    def __and__(self, other: "Subspace") -> "Subspace":
        _check_ambient(self, other)
        if self.dim == self.ambient_dim:
            return other
        if other.dim == self.ambient_dim:
            return self
        if not self.basis or not other.basis:
            return Subspace.zero(self.ambient_dim)
        small, big = (self, other) if self.dim <= other.dim else (other, self)
        # dependencies among residues of small's basis modulo big
        k, n = small.dim, self.ambient_dim
        rows = [big.reduce(a) + [ONE if t == i else ZERO for t in range(k)]
                for i, a in enumerate(small.basis)]
        red, piv = _rref_rows(rows, n + k)
        vecs = []
        for row in red:
            if any(row[:n]):
                continue
            c = row[n:]
            v = [ZERO] * n
            for ci, a in zip(c, small.basis):
                if ci:
                    for j, x in enumerate(a):
                        if x:
                            v[j] = v[j] + ci * x
            vecs.append(v)
        return Subspace.span(vecs, n)

    def perp(self) -> "Subspace":
        """Annihilator for the standard (bilinear, non-Hermitian) dot product."""
        return kernel(self.matrix())

    def conj(self) -> "Subspace":
        if all(not x.im for r in self.basis for x in r):
            return self
        return Subspace.span([tuple(x.conj() for x in r) for r in self.basis],
                             self.ambient_dim)

    def is_real(self) -> bool:
        return self.conj() == self

    def apply(self, M: Matrix) -> "Subspace":
        """Image of this subspace under ``M``."""
        if M.ncols != self.ambient_dim:
            raise LinalgError("operator does not act on this ambient space")
        return Subspace.span([M @ b for b in self.basis], M.nrows)

    def preimage(self, M: Matrix) -> "Subspace":
        """``{v : M v in self}``."""
        if M.nrows != self.ambient_dim:
            raise LinalgError("operator does not map into this ambient space")
        if self.dim == self.ambient_dim:
            return Subspace.full(M.ncols)
        P = self.perp().matrix()
        return kernel(P @ M)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def _check_ambient(a: Subspace, b: Subspace):
    if a.ambient_dim != b.ambient_dim:
        raise LinalgError(f"ambient dimensions differ: {a.ambient_dim} vs {b.ambient_dim}")


def kernel(M: Matrix) -> Subspace:
    red, piv = _rref_rows(M.rows, M.ncols)
    n = M.ncols
    free = [c for c in range(n) if c not in set(piv)]
    vecs = []
    for f in free:
        v = [ZERO] * n
        v[f] = ONE
        for row, c in zip(red, piv):
            if row[f]:
                v[c] = -row[f]
        vecs.append(v)
    return Subspace.span(vecs, n)


def image(M: Matrix) -> Subspace:
    """Column space of ``M``."""
    return Subspace.span(M.columns(), M.nrows)


def sum_spaces(A: Subspace, B: Subspace) -> Subspace:
    return A + B


def intersect(A: Subspace, B: Subspace) -> Subspace:
    return A & B


class _Echelon:
    """Incrementally grown set of sparse rows, each zero at the pivots of earlier rows."""

    def __init__(self, start: "Subspace"):
        self.rows = list(zip(start.pivots, start._sparse_basis))

    def add(self, v) -> bool:
        w = list(v)
        for c, row in self.rows:
            f = w[c]
            if f.re or f.im:
                for j, x in row:
                    w[j] = w[j] - f * x
        for c, x in enumerate(w):
            if x.re or x.im:
                inv = x.inverse()
                self.rows.append((c, _sparse([y * inv for y in w])))
                return True
        return False


def quotient_basis(A: Subspace, B: Subspace) -> list[tuple]:
    """Vectors of ``B`` whose classes form a basis of ``B/A``.  Requires ``A <= B``."""
    if not A <= B:
        raise LinalgError("quotient_basis: first subspace is not contained in the second")
    out = []
    ech = _Echelon(A)
    need = B.dim - A.dim
    for b in B.basis:
        if len(out) == need:
            break
        if ech.add(b):
            out.append(b)
    return out


def solve(M: Matrix, b: Sequence) -> tuple | None:
    """A particular solution of ``M x = b`` (free variables set to zero), or ``None``."""
    b = vector(b)
    if len(b) != M.nrows:
        raise LinalgError("right-hand side length mismatch")
    aug = [list(r) + [bi] for r, bi in zip(M.rows, b)]
    red, piv = _rref_rows(aug, M.ncols + 1)
    if piv and piv[-1] == M.ncols:
        return None
    x = [ZERO] * M.ncols
    for row, c in zip(red, piv):
        x[c] = row[M.ncols]
    return tuple(x)


class BilinearForm:
    """``S(u, v) = u^T G v`` with declared symmetry."""

    __slots__ = ("gram", "symmetry")

    SYMMETRIC = "symmetric"
    ANTISYMMETRIC = "antisymmetric"

    def __init__(self, gram: Matrix, symmetry: str):
        if not isinstance(gram, Matrix):
            gram = Matrix(gram)
        if not gram.is_square():
            raise LinalgError("Gram matrix must be square")
        if symmetry not in (self.SYMMETRIC, self.ANTISYMMETRIC):
            raise LinalgError(f"unknown symmetry {symmetry!r}")
        expected = gram if symmetry == self.SYMMETRIC else -gram
        if gram.T() != expected:
            raise LinalgError(f"Gram matrix is not {symmetry}")
        object.__setattr__(self, "gram", gram)
        object.__setattr__(self, "symmetry", symmetry)

    def __setattr__(self, name, value):
        raise AttributeError("BilinearForm is immutable")

    @classmethod
    def for_weight(cls, gram: Matrix, weight: int) -> "BilinearForm":
        """Form with the symmetry ``S(u,v) = (-1)^weight S(v,u)``."""
        return cls(gram, cls.SYMMETRIC if weight % 2 == 0 else cls.ANTISYMMETRIC)

    @property
    def dim(self) -> int:
        return self.gram.nrows

    @property
    def sign(self) -> int:
        return 1 if self.symmetry == self.SYMMETRIC else -1

    def __call__(self, u: Sequence, v: Sequence) -> Scalar:
        rows = self.gram.sparse_rows()
        if u and type(u[0]) is not Scalar:
            u = vector(u)
        if v and type(v[0]) is not Scalar:
            v = vector(v)
        acc = ZERO
        for i, a in enumerate(u):
            if not (a.re or a.im):
                continue
            for j, g in rows[i]:
                b = v[j]
                if b.re or b.im:
                    acc = acc + a * g * b
        return acc

    def __eq__(self, other):
        return (isinstance(other, BilinearForm) and self.gram == other.gram
                and self.symmetry == other.symmetry)

    def __hash__(self):
        return hash((self.gram, self.symmetry))

    def __neg__(self) -> "BilinearForm":
        return BilinearForm(-self.gram, self.symmetry)

    def scaled(self, c) -> "BilinearForm":
        return BilinearForm(self.gram.scale(c), self.symmetry)

    def is_nondegenerate(self) -> bool:
        return self.gram.rank() == self.dim

    def restricted_gram(self, us: Sequence[Sequence], vs: Sequence[Sequence]) -> Matrix:
        return Matrix([[self(u, v) for v in vs] for u in us], len(vs))

    def __repr__(self):
        return f"BilinearForm({self.symmetry}, dim={self.dim})"


def annihilator(form: BilinearForm, A: Subspace) -> Subspace:
    """``{v : S(v, a) = 0 for all a in A}``."""
    if not form.is_nondegenerate():
        raise LinalgError("annihilator requires a nondegenerate form")
    if A.ambient_dim != form.dim:
        raise LinalgError("form and subspace live on different spaces")
    if not A.basis:
        return Subspace.full(form.dim)
    # S(v, a) = v^T G a: v is orthogonal to the columns G a
    return kernel(Matrix([form.gram @ a for a in A.basis], form.dim))


def is_positive_definite_hermitian(M: Matrix) -> bool:
    """Exact test via LDL*: a Hermitian matrix is positive definite iff every pivot is > 0."""
    if not M.is_square():
        raise LinalgError("not square")
    if M.H() != M:
        return False
    n = M.nrows
    a = [list(r) for r in M.rows]
    for k in range(n):
        piv = a[k][k]
        if piv.im or piv.re <= 0:
            return False
        inv = piv.inverse()
        for i in range(k + 1, n):
            f = a[i][k] * inv
            if not f:
                continue
            for j in range(k + 1, n):
                if a[k][j]:
                    a[i][j] = a[i][j] - f * a[k][j]
    return True


def exp_nilpotent(N: Matrix, z=1) -> Matrix:
    """``exp(z N)`` for nilpotent ``N`` as a finite series (raises if ``N`` is not nilpotent)."""
    n = N.nrows
    z = as_scalar(z)
    out = Matrix.identity(n)
    term = Matrix.identity(n)
    for k in range(1, n + 1):
        term = (term @ N).scale(z / k)
        if term.is_zero():
            return out
        out = out + term
    if not (N ** n).is_zero():
        raise LinalgError("exp_nilpotent: operator is not nilpotent")
    return out
