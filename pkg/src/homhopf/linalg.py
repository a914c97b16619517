"""Exact dense linear algebra over a :class:`~homhopf.exactfield.FieldSpec`.

Conventions used everywhere in the package:

* a linear map ``V -> W`` is a ``dim W x dim V`` matrix whose column ``j``
  is the image of the basis vector ``e_j``;
* the tensor basis is flattened row-major, ``e_j (x) e_k -> j * n2 + k``,
  so the plain associator of vector spaces is the identity on coordinates.

Over GF(p) entries are int64 residues.  Over Q a matrix is stored as an
object array of Python integers plus one positive common denominator,
reduced so that the content of the numerators and the denominator are
coprime; this makes equality structural and keeps products in integer
arithmetic.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .exactfield import FieldMismatch, FieldSpec


class SingularMatrix(ValueError):
    pass


class SingularAutomorphism(SingularMatrix):
    """A twisting map that must be invertible is not."""


class AmbientMismatch(ValueError):
    pass


class NotInSubspace(ValueError):
    """Vectors expected to lie in a subspace do not; ``column`` names the first offender."""

    def __init__(self, message: str, column: int | None = None):
        super().__init__(message)
        self.column = column


def _lcm(a: int, b: int) -> int:
    return a // math.gcd(a, b) * b


def _int_obj(arr: np.ndarray) -> np.ndarray:
    return np.asarray(arr, dtype=np.int64).astype(object)


_SAFE = 2 ** 62


def _as_small_int(a: np.ndarray):
    """int64 copy of an object array plus its max abs entry, or None if too large."""
    if a.size == 0:
        return np.zeros(a.shape, dtype=np.int64), 0
    try:
        b = a.astype(np.int64)
    except OverflowError:
        return None
    return b, int(np.abs(b).max())


def _int_dot(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact product of integer object arrays, through int64 when no overflow is possible."""
    sa, sb = _as_small_int(a), _as_small_int(b)
    if sa is not None and sb is not None and a.shape[1] * sa[1] * sb[1] < _SAFE:
        out = sa[0] @ sb[0]
        return out.astype(object)
    return a.dot(b)


def _fraction_free_rref(a: np.ndarray):
    """Fraction-free Gauss-Jordan on an object array of ints.

    Every intermediate entry is a minor of the input, so each division by
    the previous pivot is exact.  On return all pivot entries equal the
    returned denominator.  Work happens in int64 while a bound on the next
    step rules out overflow, and in Python ints after that.
    """
    small = _as_small_int(a)
    if small is not None:
        a, big = small[0].copy(), small[1]
    else:
        a, big = a.copy(), None
    m, n = a.shape
    den = 1
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(a[r:, c] != 0)
        if not len(nz):
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        piv = a[r, c]
        if big is not None and 2 * big * big >= _SAFE:
            a, big = a.astype(object), None
        row = a[r].copy()
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col != 0)
        upd = a[hit] * piv - np.multiply.outer(col[hit], row)
        a = a * piv
        a[hit] = upd
        if den != 1:
            a //= den
        a[r] = row
        den = piv
        if big is not None:
            big = int(np.abs(a).max())
        pivots.append(c)
        r += 1
    if a.dtype != object:
        a = a.astype(object)
    return a, int(den), pivots


class Matrix:
    """Immutable exact matrix."""

    __slots__ = ("field", "data", "den")

    def __init__(self, field: FieldSpec, data: np.ndarray, den: int = 1):
        self.field = field
        if field.p is not None:
            self.data = np.asarray(data, dtype=np.int64) % field.p
            self.den = 1
            return
        data = np.asarray(data, dtype=object)
        if data.dtype != object:
            data = data.astype(object)
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            data, den = -data, -den
        if den != 1:
            if not data.any():
                den = 1
            else:
                g = reduce(math.gcd, data.flat, den)
                if g > 1:
                    data = data // g
                    den //= g
        self.data = data
        self.den = int(den)

    # -- construction -------------------------------------------------------
    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Sequence[Sequence], ncols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        nr = len(rows)
        nc = len(rows[0]) if rows else (ncols or 0)
        if any(len(r) != nc for r in rows):
            raise ValueError("ragged matrix rows")
        vals = [[field.coerce(x) for x in r] for r in rows]
        if field.p is not None:
            return cls(field, np.array(vals, dtype=np.int64).reshape(nr, nc))
        den = reduce(_lcm, (x.denominator for r in vals for x in r), 1)
        data = np.empty((nr, nc), dtype=object)
        for i, r in enumerate(vals):
            for j, x in enumerate(r):
                data[i, j] = x.numerator * (den // x.denominator)
        return cls(field, data, den)

    @classmethod
    def from_columns(cls, field: FieldSpec, cols: Sequence[Sequence], nrows: int | None = None) -> "Matrix":
        cols = [list(c) for c in cols]
        if not cols:
            return cls.zeros(field, nrows or 0, 0)
        return cls.from_rows(field, list(zip(*cols))).with_shape(len(cols[0]), len(cols))

    def with_shape(self, r: int, c: int) -> "Matrix":
        return Matrix(self.field, self.data.reshape(r, c), self.den)

    @classmethod
    def zeros(cls, field: FieldSpec, r: int, c: int) -> "Matrix":
        if field.p is not None:
            return cls(field, np.zeros((r, c), dtype=np.int64))
        data = np.empty((r, c), dtype=object)
        data.fill(0)
        return cls(field, data, 1)

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Matrix":
        eye = np.eye(n, dtype=np.int64)
        return cls(field, eye if field.p is not None else _int_obj(eye))

    @classmethod
    def unit_vector(cls, field: FieldSpec, n: int, i: int) -> "Matrix":
        v = np.zeros((n, 1), dtype=np.int64)
        v[i, 0] = 1
        return cls(field, v if field.p is not None else _int_obj(v))

    @classmethod
    def permutation(cls, field: FieldSpec, images: Sequence[int]) -> "Matrix":
        """Matrix sending ``e_j`` to ``e_{images[j]}``."""
        n = len(images)
        v = np.zeros((n, n), dtype=np.int64)
        v[list(images), list(range(n))] = 1
        return cls(field, v if field.p is not None else _int_obj(v))

    def _new(self, data: np.ndarray, den: int = 1) -> "Matrix":
        return Matrix(self.field, data, den)

    # -- shape and entries --------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    def entry(self, i: int, j: int):
        if self.field.p is not None:
            return int(self.data[i, j])
        return Fraction(int(self.data[i, j]), self.den)

    def __getitem__(self, key):
        if isinstance(key, tuple) and all(isinstance(k, (int, np.integer)) for k in key):
            return self.entry(*key)
        i, j = key
        i = [i] if isinstance(i, (int, np.integer)) else i
        j = [j] if isinstance(j, (int, np.integer)) else j
        sub = self.data[np.ix_(np.arange(self.rows)[i], np.arange(self.cols)[j])]
        return self._new(sub, self.den)

    def col(self, j: int) -> "Matrix":
        return self._new(self.data[:, j:j + 1], self.den)

    def columns(self, idx) -> "Matrix":
        return self._new(self.data[:, list(idx)], self.den)

    def row_block(self, idx) -> "Matrix":
        return self._new(self.data[list(idx), :], self.den)

    def to_lists(self) -> list[list]:
        return [[self.entry(i, j) for j in range(self.cols)] for i in range(self.rows)]

    def to_strings(self) -> list[list[str]]:
        return [[self.field.format(x) for x in row] for row in self.to_lists()]

    def vector(self) -> list:
        """Entries of a single column (or row) as a flat list."""
        return [x for row in self.to_lists() for x in row]

    def __repr__(self) -> str:
        return f"Matrix({self.field!r}, {self.to_strings()})"

    # -- comparisons --------------------------------------------------------
    def _check(self, other: "Matrix"):
        if not isinstance(other, Matrix):
            raise TypeError(f"expected Matrix, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.field == other.field and self.shape == other.shape
                and self.den == other.den and bool(np.array_equal(self.data, other.data)))

    __hash__ = None

    def is_zero(self) -> bool:
        return not np.any(self.data != 0) if self.data.size else True

    def is_identity(self) -> bool:
        return self.rows == self.cols and self == Matrix.identity(self.field, self.rows)

    def first_difference(self, other: "Matrix") -> int | None:
        """Index of the first column where two equal-shaped matrices differ."""
        self._check(other)
        if self.shape != other.shape:
            raise ValueError(f"shape {self.shape} vs {other.shape}")
        if self.field.p is not None:
            diff = self.data != other.data
        else:
            diff = self.data * other.den != other.data * self.den
        cols = np.flatnonzero(np.any(diff, axis=0)) if diff.size else []
        return int(cols[0]) if len(cols) else None

    # -- arithmetic ---------------------------------------------------------
    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"cannot compose {self.shape} with {other.shape}")
        if self.field.p is not None:
            return self._new(kernels.matmul_modp(self.data, other.data, self.field.p))
        if self.cols == 0:
            return Matrix.zeros(self.field, self.rows, other.cols)
        return self._new(_int_dot(self.data, other.data), self.den * other.den)

    def _aligned(self, other: "Matrix"):
        self._check(other)
        if self.shape != other.shape:
            raise ValueError(f"shape {self.shape} vs {other.shape}")
        den = _lcm(self.den, other.den)
        return self.data * (den // self.den), other.data * (den // other.den), den

    def __add__(self, other: "Matrix") -> "Matrix":
        a, b, den = self._aligned(other)
        return self._new(a + b, den)

    def __sub__(self, other: "Matrix") -> "Matrix":
        a, b, den = self._aligned(other)
        return self._new(a - b, den)

    def __neg__(self) -> "Matrix":
        return self._new(-self.data, self.den)

    def scale(self, c) -> "Matrix":
        c = self.field.coerce(c)
        if self.field.p is not None:
            return self._new(self.data * int(c))
        return self._new(self.data * c.numerator, self.den * c.denominator)

    @property
    def T(self) -> "Matrix":
        return self._new(self.data.T.copy(), self.den)

    def kron(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.field.p is not None:
            return self._new(np.kron(self.data, other.data))
        if self.data.size == 0 or other.data.size == 0:
            return Matrix.zeros(self.field, self.rows * other.rows, self.cols * other.cols)
        return self._new(np.kron(self.data, other.data), self.den * other.den)

    @staticmethod
    def hstack(mats: Sequence["Matrix"]) -> "Matrix":
        return Matrix._stack(mats, axis=1)

    @staticmethod
    def vstack(mats: Sequence["Matrix"]) -> "Matrix":
        return Matrix._stack(mats, axis=0)

    @staticmethod
    def _stack(mats, axis):
        mats = list(mats)
        field = mats[0].field
        for m in mats:
            mats[0]._check(m)
        if field.p is not None:
            return Matrix(field, np.concatenate([m.data for m in mats], axis=axis))
        den = reduce(_lcm, (m.den for m in mats), 1)
        return Matrix(field, np.concatenate([m.data * (den // m.den) for m in mats], axis=axis), den)

    # -- elimination --------------------------------------------------------
    def rref(self) -> tuple["Matrix", int, list[int]]:
        """Reduced row echelon form, rank and pivot columns.

        The pivot is the first nonzero entry at or below the current row in
        the leftmost remaining column.
        """
        if self.rows == 0 or self.cols == 0:
            return self, 0, []
        if self.field.p is not None:
            r, piv = kernels.rref_modp(self.data, self.field.p)
            return self._new(r), len(piv), [int(c) for c in piv]
        r, den, piv = _fraction_free_rref(self.data)
        return self._new(r, den), len(piv), piv

    def rank(self) -> int:
        return self.rref()[1]

    def kernel(self) -> "Subspace":
        return kernel(self)

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise SingularMatrix(f"non-square {self.shape} matrix has no inverse")
        n = self.rows
        if n == 0:
            return self
        r, rank, piv = Matrix.hstack([self, Matrix.identity(self.field, n)]).rref()
        if rank < n or piv[n - 1] >= n:
            raise SingularMatrix("matrix is singular")
        return r[:, n:]

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows

    def solve(self, b: "Matrix") -> "Matrix | None":
        """A solution ``x`` of ``self @ x == b`` with free variables set to 0, or None."""
        self._check(b)
        n = self.cols
        r, rank, piv = Matrix.hstack([self, b]).rref()
        if any(c >= n for c in piv):
            return None
        x = Matrix.zeros(self.field, n, b.cols)
        if rank == 0:
            return x
        sol = r[list(range(rank)), n:]
        rows = np.array(piv, dtype=np.int64)
        if self.field.p is not None:
            data = x.data.copy()
            data[rows] = sol.data
            return self._new(data)
        data = x.data.copy()
        data[rows] = sol.data
        return self._new(data, sol.den)


# ---------------------------------------------------------------------------
# subspaces

class Subspace:
    """A subspace of ``k^n`` held by its canonical basis.

    The basis columns are the nonzero rows of the RREF of any spanning set,
    so two subspaces are equal exactly when their bases are equal.  Each
    basis column has a 1 at its pivot coordinate and 0 at the others, which
    makes coordinates a lookup.
    """

    __slots__ = ("field", "ambient_dim", "basis", "pivots")

    def __init__(self, field: FieldSpec, ambient_dim: int, basis: Matrix, pivots: list[int]):
        self.field = field
        self.ambient_dim = ambient_dim
        self.basis = basis
        self.pivots = pivots

    @classmethod
    def span(cls, vectors: Matrix) -> "Subspace":
        """Subspace spanned by the columns of ``vectors``."""
        n = vectors.rows
        if vectors.cols == 0:
            return cls.zero(vectors.field, n)
        r, rank, piv = vectors.T.rref()
        basis = r.row_block(range(rank)).T if rank else Matrix.zeros(vectors.field, n, 0)
        return cls(vectors.field, n, basis, piv)

    @classmethod
    def zero(cls, field: FieldSpec, n: int) -> "Subspace":
        return cls(field, n, Matrix.zeros(field, n, 0), [])

    @classmethod
    def full(cls, field: FieldSpec, n: int) -> "Subspace":
        return cls(field, n, Matrix.identity(field, n), list(range(n)))

    @property
    def dim(self) -> int:
        return self.basis.cols

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, {self.field!r})"

    def _check(self, other: "Subspace"):
        if other.field != self.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
        if other.ambient_dim != self.ambient_dim:
            raise AmbientMismatch(f"ambient {self.ambient_dim} vs {other.ambient_dim}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        self._check(other)
        return self.basis == other.basis

    __hash__ = None

    def coordinates(self, vectors: Matrix) -> Matrix:
        """Coordinates of the columns of ``vectors`` in the canonical basis.

        Raises :class:`NotInSubspace` if some column is outside.
        """
        if vectors.rows != self.ambient_dim:
            raise AmbientMismatch(f"vectors of length {vectors.rows} in ambient {self.ambient_dim}")
        coords = vectors.row_block(self.pivots) if self.pivots else Matrix.zeros(self.field, 0, vectors.cols)
        back = self.basis @ coords
        bad = back.first_difference(vectors)
        if bad is not None:
            raise NotInSubspace(f"column {bad} is not in the subspace", bad)
        return coords

    def contains(self, vectors: Matrix) -> bool:
        try:
            self.coordinates(vectors)
        except NotInSubspace:
            return False
        return True

    def contains_subspace(self, other: "Subspace") -> bool:
        self._check(other)
        return self.contains(other.basis)

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.field, self.ambient_dim)
        ker = Matrix.hstack([self.basis, -other.basis]).kernel()
        coeffs = ker.basis.row_block(range(self.dim))
        return Subspace.span(self.basis @ coeffs)

    def image(self, f: Matrix) -> "Subspace":
        return Subspace.span(f @ self.basis)


class NotWellDefined(ValueError):
    """A map out of a quotient does not vanish on the relations."""

    def __init__(self, message: str, column: int | None = None):
        super().__init__(message)
        self.column = column


class Quotient:
    """``k^n / R`` with canonical coordinates.

    With ``R`` in canonical form, every class has a unique representative
    vanishing at the pivots of ``R``; its non-pivot entries are the
    coordinates.  ``proj`` is ``k^n -> k^n/R`` and ``section`` embeds the
    quotient back as those representatives.
    """

    __slots__ = ("relations", "free", "proj", "section")

    def __init__(self, relations: Subspace):
        self.relations = relations
        F, n = relations.field, relations.ambient_dim
        piv = set(relations.pivots)
        self.free = [j for j in range(n) if j not in piv]
        eye = Matrix.identity(F, n)
        reduce_ = eye - relations.basis @ eye.row_block(relations.pivots) if relations.dim else eye
        self.proj = reduce_.row_block(self.free)
        self.section = eye.columns(self.free)

    @classmethod
    def of(cls, relation_vectors: Matrix) -> "Quotient":
        return cls(Subspace.span(relation_vectors))

    @property
    def field(self) -> FieldSpec:
        return self.relations.field

    @property
    def ambient_dim(self) -> int:
        return self.relations.ambient_dim

    @property
    def dim(self) -> int:
        return len(self.free)

    def __repr__(self) -> str:
        return f"Quotient(dim={self.dim}, ambient={self.ambient_dim}, {self.field!r})"

    def descend(self, f: Matrix, what: str = "map") -> Matrix:
        """``f`` on the ambient space, as a map out of the quotient; it must kill the relations."""
        if self.relations.dim:
            bad = (f @ self.relations.basis).first_difference(Matrix.zeros(f.field, f.rows, self.relations.dim))
            if bad is not None:
                raise NotWellDefined(f"{what} does not vanish on relation {bad}", bad)
        return f @ self.section


def kernel(m: Matrix) -> Subspace:
    """Canonical basis of ``{x : m x = 0}``."""
    n = m.cols
    r, rank, piv = m.rref()
    free = [c for c in range(n) if c not in set(piv)]
    if not free:
        return Subspace.zero(m.field, n)
    vecs = Matrix.zeros(m.field, n, len(free)).data.copy()
    den = r.den
    for t, f in enumerate(free):
        vecs[f, t] = den if m.field.p is None else 1
        for i, c in enumerate(piv):
            vecs[c, t] = -r.data[i, f]
    return Subspace.span(Matrix(m.field, vecs, den if m.field.p is None else 1))


def image(m: Matrix) -> Subspace:
    return Subspace.span(m)


def subspace_ops(op: str, *args):
    """``intersect | image | equal | contains`` dispatcher."""
    if op == "intersect":
        return args[0].intersect(args[1])
    if op == "image":
        return Subspace.span(args[0]) if len(args) == 1 else args[1].image(args[0])
    if op == "equal":
        return args[0] == args[1]
    if op == "contains":
        target = args[1]
        if isinstance(target, Subspace):
            return args[0].contains_subspace(target)
        return args[0].contains(target)
    raise ValueError(f"unknown subspace op {op!r}")


def restrict(f: Matrix, domain: Subspace | None = None, codomain: Subspace | None = None) -> Matrix:
    """Matrix of ``f`` between canonical bases of ``domain`` and ``codomain``.

    Raises :class:`NotInSubspace` when ``f(domain)`` leaves ``codomain``.
    """
    g = f @ domain.basis if domain is not None else f
    return codomain.coordinates(g) if codomain is not None else g


# ---------------------------------------------------------------------------
# tensor bookkeeping

def kron(a: Matrix, b: Matrix) -> Matrix:
    return a.kron(b)


def kron_all(mats: Iterable[Matrix]) -> Matrix:
    return reduce(kron, mats)


def flip(field: FieldSpec, m: int, n: int) -> Matrix:
    """The swap ``V_m (x) V_n -> V_n (x) V_m``."""
    return Matrix.permutation(field, [k * m + j for j in range(m) for k in range(n)])


def associator(mu: Matrix, nu: Matrix, sigma: Matrix) -> Matrix:
    """Hom-category associator ``(M N) L -> M (N L)``.

    Equals ``mu (x) id_N (x) sigma^-1`` because the underlying associator
    of vector spaces is the identity on row-major coordinates.  ``nu`` only
    fixes the middle dimension.
    """
    for name, m in (("mu", mu), ("nu", nu), ("sigma", sigma)):
        if m.rows != m.cols:
            raise SingularAutomorphism(f"{name} is not square")
    if not mu.is_invertible():
        raise SingularAutomorphism("mu is singular")
    try:
        sig_inv = sigma.inverse()
    except SingularMatrix:
        raise SingularAutomorphism("sigma is singular") from None
    return kron_all([mu, Matrix.identity(mu.field, nu.rows), sig_inv])


class TensorMap:
    """A linear map whose codomain is a tensor product ``V_0 (x) ... (x) V_{r-1}``.

    :meth:`then` post-composes with a map acting on a contiguous run of
    factors and the identity elsewhere; :meth:`permute` reorders factors.
    Neither ever forms a Kronecker product with an identity.
    """

    __slots__ = ("dims", "_field", "_data", "_den", "_big", "_matrix")

    def __init__(self, matrix: Matrix, dims: Sequence[int]):
        dims = tuple(int(d) for d in dims)
        if math.prod(dims) != matrix.rows:
            raise ValueError(f"dims {dims} do not match {matrix.rows} rows")
        self.dims = dims
        self._field = matrix.field
        self._matrix = matrix
        self._den = matrix.den
        self._data, self._big = matrix.data, None
        if matrix.field.p is None:
            small = _as_small_int(matrix.data)
            if small is not None:
                self._data, self._big = small

    @classmethod
    def _raw(cls, field, data, den, big, dims) -> "TensorMap":
        # Over Q, ``data`` stays int64 between steps while ``big`` bounds
        # its entries; ``big is None`` means Python ints.
        t = cls.__new__(cls)
        t.dims, t._field, t._data, t._den, t._big = dims, field, data, den, big
        t._matrix = None
        return t

    @classmethod
    def identity(cls, field: FieldSpec, dims: Sequence[int]) -> "TensorMap":
        dims = tuple(int(d) for d in dims)
        n = math.prod(dims)
        if field.p is not None:
            return cls(Matrix.identity(field, n), dims)
        return cls._raw(field, np.eye(n, dtype=np.int64), 1, 1 if n else 0, dims)

    @property
    def field(self) -> FieldSpec:
        return self._field

    @property
    def matrix(self) -> Matrix:
        if self._matrix is None:
            data = self._data if self._big is None else self._data.astype(object)
            self._matrix = Matrix(self._field, data, self._den)
        return self._matrix

    def then(self, f: Matrix, at: int, width: int = 1, out: Sequence[int] | None = None) -> "TensorMap":
        if not isinstance(f, Matrix):
            raise TypeError(f"expected Matrix, got {type(f).__name__}")
        if f.field != self._field:
            raise FieldMismatch(f"{self._field!r} vs {f.field!r}")
        dims = self.dims
        legs = dims[at:at + width]
        if math.prod(legs) != f.cols:
            raise ValueError(f"map with {f.cols} columns applied to factors {legs}")
        out = (f.rows,) if out is None else tuple(out)
        if math.prod(out) != f.rows:
            raise ValueError(f"out dims {out} do not match {f.rows} rows")
        ncols = self._data.shape[1]
        t = self._data.reshape(dims + (ncols,))
        t = np.moveaxis(t, list(range(at, at + width)), list(range(width)))
        rest = t.shape[width:]
        flat = t.reshape(f.cols, math.prod(rest))
        big = None
        if self._field.p is not None:
            prod = kernels.matmul_modp(f.data, flat, self._field.p)
            den = 1
        else:
            den = f.den * self._den
            fs = _as_small_int(f.data)
            if self._big is not None and fs is not None and f.cols * fs[1] * self._big < _SAFE:
                prod = fs[0] @ flat
                big = int(np.abs(prod).max()) if prod.size else 0
            else:
                fd = f.data
                if self._big is not None:
                    flat = flat.astype(object)
                prod = fd.dot(flat) if f.cols else np.zeros((f.rows, flat.shape[1]), dtype=object)
        t = prod.reshape(out + rest)
        t = np.moveaxis(t, list(range(len(out))), list(range(at, at + len(out))))
        new_dims = dims[:at] + out + dims[at + width:]
        data = np.ascontiguousarray(t).reshape(math.prod(new_dims), ncols)
        if self._field.p is not None:
            return TensorMap(Matrix(self._field, data), new_dims)
        return TensorMap._raw(self._field, data, den, big, new_dims)

    def permute(self, perm: Sequence[int]) -> "TensorMap":
        """New factor ``i`` is old factor ``perm[i]``."""
        ncols = self._data.shape[1]
        t = self._data.reshape(self.dims + (ncols,))
        t = np.transpose(t, list(perm) + [len(self.dims)])
        dims = tuple(self.dims[i] for i in perm)
        data = np.ascontiguousarray(t).reshape(math.prod(dims), ncols)
        if self._field.p is not None:
            return TensorMap(Matrix(self._field, data), dims)
        return TensorMap._raw(self._field, data, self._den, self._big, dims)


def tensor_chain(field: FieldSpec, dims: Sequence[int]) -> TensorMap:
    return TensorMap.identity(field, dims)
