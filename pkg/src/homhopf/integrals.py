"""Total integrals and the maps built from them.

A total integral is a colinear map ``phi: H -> A`` with ``phi alpha = beta phi``
and ``phi(1_H) = 1_A``.  From it come the trace ``t: A -> B``, the inverse of
the adjunction unit on ``(M (x)_B A)^coH``, and a colinear section of the
coaction ``A -> A (x) H``.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .galois import ComoduleAlgebra, unit_map
from .homrep import (QUOTIENT, HomComodule, HomModule, RelativeHopfModule, coinvariants, cotensor,
                     same_algebra)
from .linalg import Matrix, NotInSubspace, Subspace, TensorMap, flip, kernel


class ImageNotInCoinvariants(ValueError):
    def __init__(self, column: int):
        super().__init__(f"t(e_{column}) is not coinvariant")
        self.column = column


class NotInverse(ValueError):
    def __init__(self, which: str, column: int | None):
        super().__init__(f"{which} is not the identity (witness column {column})")
        self.which = which
        self.column = column


class SectionFails(ValueError):
    def __init__(self, which: str, column: int | None):
        super().__init__(f"{which} fails (witness column {column})")
        self.which = which
        self.column = column


class NotWellDefined(ValueError):
    def __init__(self, which: str, column: int | None):
        super().__init__(f"{which} (witness column {column})")
        self.which = which
        self.column = column


# ---------------------------------------------------------------------------
# total integrals

def _residuals(ca: ComoduleAlgebra, phi: Matrix) -> tuple[Matrix, Matrix]:
    A, H = ca.algebra, ca.hopf
    colin = ca.coaction @ phi - phi.kron(Matrix.identity(ca.field, H.dim)) @ H.comul
    twist = phi @ H.alpha - A.alpha @ phi
    return colin, twist


def _flatten(m: Matrix) -> Matrix:
    return Matrix(m.field, m.data.reshape(-1, 1), m.den)


def _constraint_matrix(ca: ComoduleAlgebra) -> Matrix:
    """Columns indexed by the entries ``phi[i, j]`` (row-major); rows are the linear equations."""
    F, a, h = ca.field, ca.dim, ca.hopf.dim
    cols = []
    for i in range(a):
        for j in range(h):
            e = Matrix.unit_vector(F, a, i) @ Matrix.unit_vector(F, h, j).T
            colin, twist = _residuals(ca, e)
            cols.append(Matrix.vstack([_flatten(colin), _flatten(twist)]))
    return Matrix.hstack(cols)


def _unfold(vec: Matrix, a: int, h: int) -> Matrix:
    return Matrix(vec.field, vec.data.reshape(a, h), vec.den)


@dataclass
class TotalIntegral:
    phi: Matrix
    colinear: bool
    unital: bool
    invertible_at_one: bool

    @property
    def total(self) -> bool:
        return self.colinear and self.unital

    def to_json(self) -> dict:
        return {"phi": self.phi.to_strings(), "colinear": self.colinear, "unital": self.unital,
                "invertible_at_one": self.invertible_at_one}


def _invertible_left_mult(ca: ComoduleAlgebra, u: Matrix) -> bool:
    return ca.algebra.left_mult(u).is_invertible()


def check_integral(ca: ComoduleAlgebra, phi: Matrix) -> TotalIntegral:
    if phi.shape != (ca.dim, ca.hopf.dim):
        raise ValueError(f"phi has shape {phi.shape}, expected {(ca.dim, ca.hopf.dim)}")
    colin, twist = _residuals(ca, phi)
    one = phi @ ca.hopf.unit
    return TotalIntegral(phi, colin.is_zero() and twist.is_zero(), one == ca.algebra.unit,
                         _invertible_left_mult(ca, one))


def solve_total_integral(ca: ComoduleAlgebra) -> TotalIntegral | None:
    """Canonical total integral (free parameters of the RREF set to 0), or None."""
    F, a, h = ca.field, ca.dim, ca.hopf.dim
    L = _constraint_matrix(ca)
    U = Matrix.hstack([Matrix.unit_vector(F, a, i) @ Matrix.unit_vector(F, h, j).T @ ca.hopf.unit
                       for i in range(a) for j in range(h)])
    system = Matrix.vstack([L, U])
    rhs = Matrix.vstack([Matrix.zeros(F, L.rows, 1), ca.algebra.unit])
    x = system.solve(rhs)
    if x is None:
        return None
    result = check_integral(ca, _unfold(x, a, h))
    if not result.total:
        raise AssertionError("solver returned a map that is not a total integral")
    return result


@dataclass
class Lemma42Result:
    status: str          # "exists" | "none" | "unknown"
    witness: Matrix | None
    checked: int
    exhaustive: bool

    def to_json(self) -> dict:
        return {"status": self.status, "checked": self.checked, "exhaustive": self.exhaustive,
                "witness": self.witness.to_strings() if self.witness is not None else None}


def colinear_maps(ca: ComoduleAlgebra) -> Subspace:
    """All ``phi`` with ``rho phi = (phi (x) id) Delta`` and ``phi alpha = beta phi``, flattened row-major."""
    return kernel(_constraint_matrix(ca))


def lemma42_item4(ca: ComoduleAlgebra, samples: int = 64, bound: int = 2**16, seed: int = 0) -> Lemma42Result:
    """Search the colinear maps for one whose value at ``1_H`` is invertible.

    Over GF(p) the search is exhaustive when the space has at most ``bound``
    elements; otherwise ``samples`` seeded random points are tried and a
    miss is reported as ``unknown``.
    """
    F, a, h = ca.field, ca.dim, ca.hopf.dim
    K = colinear_maps(ca)
    k = K.dim

    def test(coeffs) -> Matrix | None:
        c = Matrix.from_rows(F, [[x] for x in coeffs]) if k else Matrix.zeros(F, 0, 1)
        phi = _unfold(K.basis @ c, a, h)
        return phi if _invertible_left_mult(ca, phi @ ca.hopf.unit) else None

    if F.p is not None and F.p ** k <= bound:
        checked = 0
        for coeffs in itertools.product(range(F.p), repeat=k):
            checked += 1
            phi = test(coeffs)
            if phi is not None:
                return Lemma42Result("exists", phi, checked, True)
        return Lemma42Result("none", None, checked, True)
    rng = random.Random(seed)
    hi = F.p - 1 if F.p is not None else 10
    lo = 0 if F.p is not None else -10
    for t in range(samples):
        phi = test([rng.randint(lo, hi) for _ in range(k)])
        if phi is not None:
            return Lemma42Result("exists", phi, t + 1, False)
    return Lemma42Result("unknown", None, samples, False)


# ---------------------------------------------------------------------------
# maps built from an integral

def _phi_matrix(phi) -> Matrix:
    return phi.phi if isinstance(phi, TotalIntegral) else phi


def trace_map(ca: ComoduleAlgebra, phi) -> Matrix:
    """``t(a) = a0 phi(S(a1))``; every value is checked to be coinvariant."""
    p = _phi_matrix(phi)
    A, H = ca.algebra, ca.hopf
    a, h = A.dim, H.dim
    t = (TensorMap(ca.coaction, (a, h)).then(H.S, 1).then(p, 1).then(A.mul, 0, 2).matrix)
    bad = (ca.coaction @ t).first_difference(A.alpha_inv.kron(H.unit) @ t)
    if bad is not None:
        raise ImageNotInCoinvariants(bad)
    return t


def phi_M_inverse(m: HomModule, ca: ComoduleAlgebra, phi, reading: str = QUOTIENT) -> Matrix:
    """``phi_M(x (x) a) = x.t(a)`` on ``(M (x)_B A)^coH``, checked to invert ``eta_M``.

    The domain is in coordinates of the coinvariants of ``F(M)`` as returned
    by :func:`homhopf.galois.unit_map`.
    """
    F = ca.field
    t = trace_map(ca, phi)
    t_B = ca.coinvariants.coordinates(t)
    eta, fm, V = unit_map(m, ca, reading=reading)
    full = m.action @ Matrix.identity(F, m.dim).kron(t_B)
    phi_M = fm.space.map_from(full, what="phi_M") @ V.basis
    left = phi_M @ eta
    bad = left.first_difference(Matrix.identity(F, m.dim))
    if bad is not None:
        raise NotInverse("phi_M o eta_M", bad)
    right = eta @ phi_M
    bad = right.first_difference(Matrix.identity(F, V.dim))
    if bad is not None:
        raise NotInverse("eta_M o phi_M", bad)
    return phi_M


def lambda_literal(ca: ComoduleAlgebra, phi) -> Matrix:
    """``a (x) h -> beta(a0) phi(S(a1 alpha^-1(h)))``, with the antipode applied to the product.

    Kept for comparison: since ``S`` reverses products this is
    ``beta(a0) phi(S(alpha^-1(h)) S(a1))``, which is not a section of the
    coaction in general (already for k[C_3] acting on itself).
    """
    p = _phi_matrix(phi)
    A, H = ca.algebra, ca.hopf
    return (TensorMap.identity(ca.field, (A.dim, H.dim)).then(H.alpha_inv, 1)
            .then(ca.coaction, 0, out=(A.dim, H.dim)).then(H.mul, 1, 2).then(H.S, 1)
            .then(p, 1).then(A.alpha, 0).then(A.mul, 0, 2).matrix)


def lambda_section(ca: ComoduleAlgebra, phi) -> Matrix:
    """``lambda(a (x) h) = beta(a0) phi(S(a1) alpha^-1(h))``.

    Checked: ``lambda rho_A = id`` and colinearity against
    ``a (x) h -> (beta^-1(a) (x) h1) (x) alpha(h2)``.
    """
    p = _phi_matrix(phi)
    A, H = ca.algebra, ca.hopf
    F, a, h = ca.field, A.dim, H.dim
    lam = (TensorMap.identity(F, (a, h)).then(H.alpha_inv, 1).then(ca.coaction, 0, out=(a, h))
           .then(H.S, 1).then(H.mul, 1, 2).then(p, 1).then(A.alpha, 0).then(A.mul, 0, 2).matrix)
    return check_section(ca, lam)


def check_section(ca: ComoduleAlgebra, lam: Matrix) -> Matrix:
    A, H = ca.algebra, ca.hopf
    F, h = ca.field, H.dim
    bad = (lam @ ca.coaction).first_difference(Matrix.identity(F, A.dim))
    if bad is not None:
        raise SectionFails("lambda o rho_A = id", bad)
    rho_AH = A.alpha_inv.kron((Matrix.identity(F, h).kron(H.alpha)) @ H.comul)
    bad = (ca.coaction @ lam).first_difference(lam.kron(Matrix.identity(F, h)) @ rho_AH)
    if bad is not None:
        raise SectionFails("lambda colinearity", bad)
    return lam


# ---------------------------------------------------------------------------
# cotensor identifications

@dataclass
class Lemma43Result:
    coinvariants: Subspace
    cotensor: Subspace

    @property
    def equal(self) -> bool:
        return self.coinvariants == self.cotensor

    def __bool__(self) -> bool:
        return self.equal

    def to_json(self) -> dict:
        return {
            "equal": self.equal,
            "dim_coinvariants": self.coinvariants.dim,
            "dim_cotensor": self.cotensor.dim,
            "note": "checked on A (x) M with the coaction (a0 (x) m0) (x) a1 S(m-1); "
                    "the statement is phrased with A (x) H in place of A (x) M",
        }


def lemma43_check(ca: ComoduleAlgebra, m: HomComodule) -> Lemma43Result:
    """Compare ``(A (x) M)^coH`` with ``A []_H M`` for a left H-comodule ``M``.

    ``A (x) M`` coacts by ``a (x) x -> (a0 (x) x0) (x) a1 S(x-1)`` and its
    twisting map is ``beta (x) mu``.
    """
    if m.side != "left":
        raise ValueError("lemma43_check needs a left comodule")
    A, H = ca.algebra, ca.hopf
    F, a, d, h = ca.field, A.dim, m.dim, H.dim
    rho_r = (TensorMap.identity(F, (a, d)).then(ca.coaction, 0, out=(a, h)).then(m.coaction, 2, out=(h, d))
             .permute((0, 3, 1, 2)).then(H.S, 3).then(H.mul, 2, 2).matrix)
    tw = A.alpha.kron(m.mu)
    comod = HomComodule(H, rho_r, tw, "right")
    return Lemma43Result(coinvariants(comod), cotensor(ca.comodule, m, H))


def antipode_left_coaction(n: RelativeHopfModule) -> HomComodule:
    """``x -> S(x1) (x) x0``."""
    H = n.comodule.over
    d, h = n.dim, H.dim
    rho = TensorMap(n.coaction, (d, h)).then(H.S, 1).permute((1, 0)).matrix
    return HomComodule(H, rho, n.mu, "left")


def lemma44_ip(n: RelativeHopfModule, ca: ComoduleAlgebra) -> tuple[Matrix, Matrix]:
    """``i(x) = 1_A (x) nu^-1(x)`` and ``p(a (x) x) = x.a`` between ``N^coH`` and ``A []_H N``.

    Both are returned in canonical coordinates (``i: N^coH -> A []_H N`` and
    ``p: A []_H N -> N^coH``); landing in the target is checked.
    """
    if not same_algebra(n.module.over, ca.algebra):
        raise ValueError("relative Hopf module over a different algebra")
    F, a, d = ca.field, ca.dim, n.dim
    U = coinvariants(n.comodule)
    C = cotensor(ca.comodule, antipode_left_coaction(n), ca.hopf)
    i_full = ca.algebra.unit.kron(n.comodule.mu_inv) @ U.basis
    try:
        i = C.coordinates(i_full)
    except NotInSubspace as exc:
        raise NotWellDefined("i does not land in the cotensor product", exc.column) from None
    p_full = n.action @ flip(F, a, d) @ C.basis
    try:
        p = U.coordinates(p_full)
    except NotInSubspace as exc:
        raise NotWellDefined("p does not land in the coinvariants", exc.column) from None
    return i, p
