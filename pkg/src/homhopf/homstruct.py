"""Monoidal Hom-algebras, Hom-coalgebras and Hom-Hopf algebras by structure constants.

Every verifier evaluates each axiom on all basis tuples at once: both sides
are built as matrices on the domain tensor power and compared column by
column.  A failing check records the first offending basis tuple together
with both sides evaluated there.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Callable, Sequence

import numpy as np

from .exactfield import FieldMismatch, FieldSpec
from .linalg import Matrix, SingularAutomorphism, SingularMatrix, TensorMap, flip


class NotAnAutomorphism(ValueError):
    def __init__(self, prop: str):
        super().__init__(f"not a bialgebra automorphism: {prop} fails")
        self.property = prop


class MissingAntipodeInverse(ValueError):
    pass


# ---------------------------------------------------------------------------
# reports

@dataclass
class Witness:
    indices: tuple[int, ...]
    lhs: list[str]
    rhs: list[str]

    def to_json(self) -> dict:
        return {"indices": list(self.indices), "lhs": self.lhs, "rhs": self.rhs}


@dataclass
class Check:
    axiom: str
    passed: bool
    witness: Witness | None = None
    detail: str = ""

    def to_json(self) -> dict:
        out = {"axiom": self.axiom, "passed": self.passed}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class VerificationReport:
    subject: str
    checks: list[Check] = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def failed_axioms(self) -> list[str]:
        return [c.axiom for c in self.checks if not c.passed]

    def get(self, axiom: str) -> Check:
        for c in self.checks:
            if c.axiom == axiom:
                return c
        raise KeyError(axiom)

    def extend(self, other: "VerificationReport") -> "VerificationReport":
        self.checks.extend(other.checks)
        return self

    def flag(self, axiom: str, passed: bool, detail: str = "") -> None:
        self.checks.append(Check(axiom, bool(passed), None, detail))

    def compare(self, axiom: str, lhs: Matrix, rhs: Matrix, dims: Sequence[int] = ()) -> bool:
        """Record ``lhs == rhs`` as maps on a tensor power with factor ``dims``."""
        bad = lhs.first_difference(rhs)
        if bad is None:
            self.checks.append(Check(axiom, True))
            return True
        idx = tuple(int(i) for i in np.unravel_index(bad, tuple(dims))) if dims else ()
        fmt = lhs.field.format
        w = Witness(idx, [fmt(x) for x in lhs.col(bad).vector()], [fmt(x) for x in rhs.col(bad).vector()])
        self.checks.append(Check(axiom, False, w))
        return False

    def to_json(self) -> dict:
        return {"subject": self.subject, "passed": self.passed,
                "checks": [c.to_json() for c in self.checks]}


def _safe_inverse(m: Matrix) -> Matrix | None:
    try:
        return m.inverse()
    except SingularMatrix:
        return None


def _tm(field: FieldSpec, *dims: int) -> TensorMap:
    return TensorMap.identity(field, dims)


# ---------------------------------------------------------------------------
# structures

@dataclass(frozen=True, eq=False)
class HomAlgebra:
    """``(A, m, 1_A, alpha)``; ``mul`` is ``n x n^2`` with column ``i*n+j`` = ``e_i e_j``."""

    field: FieldSpec
    mul: Matrix
    unit: Matrix
    alpha: Matrix
    basis: tuple[str, ...] | None = None

    def __post_init__(self):
        n = self.alpha.rows
        if n == 0:
            raise ValueError("dimension 0 is not allowed")
        for name, m, shape in (("mul", self.mul, (n, n * n)), ("unit", self.unit, (n, 1)),
                               ("alpha", self.alpha, (n, n))):
            if m.field != self.field:
                raise FieldMismatch(f"{name} over {m.field!r}, algebra over {self.field!r}")
            if m.shape != shape:
                raise ValueError(f"{name} has shape {m.shape}, expected {shape}")

    @classmethod
    def from_tensor(cls, field: FieldSpec, mul, unit, alpha, basis=None) -> "HomAlgebra":
        """``mul[i][j][k]`` is the coefficient of ``e_k`` in ``e_i e_j``; ``alpha`` column j = alpha(e_j)."""
        n = len(unit)
        cols = [[mul[i][j][k] for k in range(n)] for i in range(n) for j in range(n)]
        return cls(field, Matrix.from_columns(field, cols, n),
                   Matrix.from_columns(field, [unit], n),
                   Matrix.from_rows(field, alpha), tuple(basis) if basis else None)

    @property
    def dim(self) -> int:
        return self.alpha.rows

    @cached_property
    def alpha_inv(self) -> Matrix:
        try:
            return self.alpha.inverse()
        except SingularMatrix:
            raise SingularAutomorphism("twisting map is singular") from None

    def mul_tensor(self) -> list:
        n = self.dim
        return [[[self.mul.entry(k, i * n + j) for k in range(n)] for j in range(n)] for i in range(n)]

    def left_mult(self, u: Matrix) -> Matrix:
        """Matrix of ``a -> u a``."""
        return self.mul @ u.kron(Matrix.identity(self.field, self.dim))

    def right_mult(self, u: Matrix) -> Matrix:
        return self.mul @ Matrix.identity(self.field, self.dim).kron(u)

    def replace(self, **kw) -> "HomAlgebra":
        args = dict(field=self.field, mul=self.mul, unit=self.unit, alpha=self.alpha, basis=self.basis)
        args.update(kw)
        return HomAlgebra(**args)


@dataclass(frozen=True, eq=False)
class HomCoalgebra:
    """``(C, Delta, eps, gamma)``; ``comul`` is ``n^2 x n``, ``counit`` is ``1 x n``."""

    field: FieldSpec
    comul: Matrix
    counit: Matrix
    gamma: Matrix
    basis: tuple[str, ...] | None = None

    def __post_init__(self):
        n = self.gamma.rows
        if n == 0:
            raise ValueError("dimension 0 is not allowed")
        for name, m, shape in (("comul", self.comul, (n * n, n)), ("counit", self.counit, (1, n)),
                               ("gamma", self.gamma, (n, n))):
            if m.field != self.field:
                raise FieldMismatch(f"{name} over {m.field!r}, coalgebra over {self.field!r}")
            if m.shape != shape:
                raise ValueError(f"{name} has shape {m.shape}, expected {shape}")

    @property
    def dim(self) -> int:
        return self.gamma.rows

    @cached_property
    def gamma_inv(self) -> Matrix:
        try:
            return self.gamma.inverse()
        except SingularMatrix:
            raise SingularAutomorphism("twisting map is singular") from None

    def replace(self, **kw) -> "HomCoalgebra":
        args = dict(field=self.field, comul=self.comul, counit=self.counit, gamma=self.gamma, basis=self.basis)
        args.update(kw)
        return HomCoalgebra(**args)


@dataclass(frozen=True, eq=False)
class HomHopfAlgebra:
    algebra: HomAlgebra
    coalgebra: HomCoalgebra
    antipode: Matrix
    antipode_inverse: Matrix | None = None

    def __post_init__(self):
        a, c = self.algebra, self.coalgebra
        if a.field != c.field:
            raise FieldMismatch("algebra and coalgebra over different fields")
        if a.dim != c.dim:
            raise ValueError("algebra and coalgebra of different dimension")
        for name, m in (("antipode", self.antipode), ("antipode_inverse", self.antipode_inverse)):
            if m is not None and (m.shape != (a.dim, a.dim) or m.field != a.field):
                raise ValueError(f"{name} must be a {a.dim}x{a.dim} matrix over {a.field!r}")

    @classmethod
    def build(cls, field: FieldSpec, mul: Matrix, unit: Matrix, comul: Matrix, counit: Matrix,
              alpha: Matrix, antipode: Matrix, antipode_inverse: Matrix | None = None,
              basis=None) -> "HomHopfAlgebra":
        basis = tuple(basis) if basis else None
        return cls(HomAlgebra(field, mul, unit, alpha, basis),
                   HomCoalgebra(field, comul, counit, alpha, basis), antipode, antipode_inverse)

    # shorthands
    field = property(lambda self: self.algebra.field)
    dim = property(lambda self: self.algebra.dim)
    mul = property(lambda self: self.algebra.mul)
    unit = property(lambda self: self.algebra.unit)
    alpha = property(lambda self: self.algebra.alpha)
    comul = property(lambda self: self.coalgebra.comul)
    counit = property(lambda self: self.coalgebra.counit)
    basis = property(lambda self: self.algebra.basis)

    @property
    def alpha_inv(self) -> Matrix:
        return self.algebra.alpha_inv

    @property
    def S(self) -> Matrix:
        return self.antipode

    @property
    def S_inv(self) -> Matrix:
        if self.antipode_inverse is None:
            raise MissingAntipodeInverse("this operation needs a bijective antipode with S^-1 supplied")
        return self.antipode_inverse

    def with_antipode_inverse(self) -> "HomHopfAlgebra":
        """Attach ``S^-1`` computed by inversion when it is missing."""
        if self.antipode_inverse is not None:
            return self
        try:
            inv = self.antipode.inverse()
        except SingularMatrix:
            raise MissingAntipodeInverse("antipode is not bijective") from None
        return HomHopfAlgebra(self.algebra, self.coalgebra, self.antipode, inv)


# ---------------------------------------------------------------------------
# verifiers

def verify_algebra(a: HomAlgebra, report: VerificationReport | None = None) -> VerificationReport:
    rep = report if report is not None else VerificationReport("algebra")
    F, n, m, u, al = a.field, a.dim, a.mul, a.unit, a.alpha
    rep.flag("alpha_invertible", al.is_invertible())
    lhs = _tm(F, n, n, n).then(m, 1, 2).then(al, 0).then(m, 0, 2).matrix
    rhs = _tm(F, n, n, n).then(m, 0, 2).then(al, 1).then(m, 0, 2).matrix
    rep.compare("hom_associativity", lhs, rhs, (n, n, n))
    eye = Matrix.identity(F, n)
    rep.compare("right_unit", m @ eye.kron(u), al, (n,))
    rep.compare("left_unit", m @ u.kron(eye), al, (n,))
    rep.compare("alpha_multiplicative", al @ m, m @ al.kron(al), (n, n))
    rep.compare("alpha_unital", al @ u, u)
    return rep


def verify_coalgebra(c: HomCoalgebra, report: VerificationReport | None = None) -> VerificationReport:
    """Inverse-free forms: ``c1 (x) c21 (x) g(c22) = g(c11) (x) c12 (x) c2`` and ``g(c1) eps(c2) = c``."""
    rep = report if report is not None else VerificationReport("coalgebra")
    F, n, d, e, g = c.field, c.dim, c.comul, c.counit, c.gamma
    rep.flag("gamma_invertible", g.is_invertible())
    lhs = _tm(F, n).then(d, 0, out=(n, n)).then(d, 1, out=(n, n)).then(g, 2).matrix
    rhs = _tm(F, n).then(d, 0, out=(n, n)).then(d, 0, out=(n, n)).then(g, 0).matrix
    rep.compare("hom_coassociativity", lhs, rhs, (n,))
    eye = Matrix.identity(F, n)
    rep.compare("right_counit", g @ eye.kron(e) @ d, eye, (n,))
    rep.compare("left_counit", g @ e.kron(eye) @ d, eye, (n,))
    rep.compare("gamma_comultiplicative", d @ g, g.kron(g) @ d, (n,))
    rep.compare("gamma_counital", e @ g, e, (n,))
    return rep


def _bialgebra_checks(h: HomHopfAlgebra, rep: VerificationReport) -> None:
    F, n = h.field, h.dim
    m, u, d, e = h.mul, h.unit, h.comul, h.counit
    rep.compare("shared_automorphism", h.algebra.alpha, h.coalgebra.gamma, (n,))
    lhs = _tm(F, n, n).then(m, 0, 2).then(d, 0, out=(n, n)).matrix
    rhs = (_tm(F, n, n).then(d, 0, out=(n, n)).then(d, 2, out=(n, n))
           .permute((0, 2, 1, 3)).then(m, 0, 2).then(m, 1, 2).matrix)
    rep.compare("comul_multiplicative", lhs, rhs, (n, n))
    rep.compare("comul_unital", d @ u, u.kron(u))
    rep.compare("counit_multiplicative", e @ m, e.kron(e), (n, n))
    rep.compare("counit_unital", e @ u, Matrix.identity(F, 1))


def _antipode_checks(h: HomHopfAlgebra, rep: VerificationReport) -> None:
    F, n = h.field, h.dim
    m, u, d, e, S = h.mul, h.unit, h.comul, h.counit, h.antipode
    rep.compare("antipode_commutes_alpha", S @ h.alpha, h.alpha @ S, (n,))
    target = u @ e
    rep.compare("antipode_left", _tm(F, n).then(d, 0, out=(n, n)).then(S, 0).then(m, 0, 2).matrix, target, (n,))
    rep.compare("antipode_right", _tm(F, n).then(d, 0, out=(n, n)).then(S, 1).then(m, 0, 2).matrix, target, (n,))
    if h.antipode_inverse is not None:
        eye = Matrix.identity(F, n)
        rep.compare("antipode_inverse_right", S @ h.antipode_inverse, eye, (n,))
        rep.compare("antipode_inverse_left", h.antipode_inverse @ S, eye, (n,))


def verify_hopf(h: HomHopfAlgebra) -> VerificationReport:
    """Algebra, coalgebra, bialgebra and antipode axioms; never short-circuits."""
    rep = VerificationReport("hopf")
    verify_algebra(h.algebra, rep)
    verify_coalgebra(h.coalgebra, rep)
    _bialgebra_checks(h, rep)
    _antipode_checks(h, rep)
    return rep


def antipode_anti_morphism_report(h: HomHopfAlgebra) -> VerificationReport:
    """``S(hg) = S(g)S(h)`` and ``Delta S = tau (S (x) S) Delta``; not among the defining axioms."""
    rep = VerificationReport("antipode_anti_morphism")
    F, n, m, d, S = h.field, h.dim, h.mul, h.comul, h.antipode
    tau = flip(F, n, n)
    rep.compare("antipode_anti_multiplicative", S @ m, m @ tau @ S.kron(S), (n, n))
    rep.compare("antipode_anti_comultiplicative", d @ S, tau @ S.kron(S) @ d, (n,))
    rep.compare("antipode_unital", S @ h.unit, h.unit)
    rep.compare("antipode_counital", h.counit @ S, h.counit, (n,))
    return rep


# ---------------------------------------------------------------------------
# constructions

def automorphism_failures(h: HomHopfAlgebra, auto: Matrix) -> list[str]:
    """Names of the bialgebra-automorphism properties ``auto`` violates."""
    F, n = h.field, h.dim
    if auto.shape != (n, n) or auto.field != F:
        return ["shape"]
    bad = []
    if not auto.is_invertible():
        bad.append("invertible")
    if auto @ h.mul != h.mul @ auto.kron(auto):
        bad.append("multiplicative")
    if auto @ h.unit != h.unit:
        bad.append("unital")
    if h.comul @ auto != auto.kron(auto) @ h.comul:
        bad.append("comultiplicative")
    if h.counit @ auto != h.counit:
        bad.append("counital")
    if auto @ h.antipode != h.antipode @ auto:
        bad.append("commutes_with_antipode")
    return bad


def twist_hopf(classical: HomHopfAlgebra, auto: Matrix) -> HomHopfAlgebra:
    """Deform a classical Hopf algebra by a bialgebra automorphism.

    Returns ``(H, auto m, 1, Delta auto^-1, eps, S, auto)``.
    """
    n = classical.dim
    if not classical.alpha.is_identity() or not classical.coalgebra.gamma.is_identity():
        raise ValueError("twist_hopf expects a classical Hopf algebra (alpha = id)")
    bad = automorphism_failures(classical, auto)
    if bad:
        raise NotAnAutomorphism(bad[0])
    inv = auto.inverse()
    F = classical.field
    s_inv = classical.antipode_inverse
    return HomHopfAlgebra.build(
        F, auto @ classical.mul, classical.unit, classical.comul @ inv, classical.counit,
        auto, classical.antipode, s_inv, classical.basis)


def dual_hopf(h: HomHopfAlgebra, antipode: str = "transpose") -> HomHopfAlgebra:
    """The dual Hom-Hopf algebra on the dual basis.

    Products and coproducts are transposed, the twisting map is
    ``h* -> h* alpha^-1``.  The antipode of the dual is ``h* -> h* S``; pass
    ``antipode="inverse"`` for ``h* -> h* S^-1`` instead, which agrees
    whenever ``S^2 = id``.
    """
    s_inv = h.S_inv
    a_dual = h.alpha_inv.T
    names = tuple(f"{b}*" for b in h.basis) if h.basis else None
    if antipode == "transpose":
        S, S_inv = h.antipode.T, s_inv.T
    elif antipode == "inverse":
        S, S_inv = s_inv.T, h.antipode.T
    else:
        raise ValueError(antipode)
    return HomHopfAlgebra.build(h.field, h.comul.T, h.counit.T, h.mul.T, h.unit.T, a_dual, S, S_inv, names)
