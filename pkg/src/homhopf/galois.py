"""Hom-comodule algebras, canonical maps, the Galois criterion and the (F, G) adjunction.

``M (x)_B A`` has two realisations: the equalizer subspace of ``M (x) A``
cut out by the ``B``-balancing condition, used by the Galois criterion, and
the quotient of ``M (x) A`` by the balancing relations, used by the functor
``F`` and the adjunction since the unit only lands in the quotient in
general.  ``G(N) = N^coH`` is the coinvariant subspace.  Maps between such
spaces are stored in the coordinates of their canonical bases.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .homrep import (EQUALIZER, QUOTIENT, BalancedTensor, HomComodule, HomModule, MismatchedBase,
                     NotClosed, RelativeHopfModule, build_MtensorH, coinvariants, direct_sum,
                     regular_module, same_algebra, verify_comodule)
from .homstruct import (HomAlgebra, HomHopfAlgebra, VerificationReport, automorphism_failures,
                        twist_hopf)
from .linalg import Matrix, NotInSubspace, NotWellDefined, Subspace, TensorMap, image, kernel


class NotCompatible(ValueError):
    def __init__(self, condition: str):
        super().__init__(f"twist data incompatible: {condition}")
        self.condition = condition


class NotGalois(ValueError):
    pass


class SubspaceNotClosed(NotClosed):
    pass


# ---------------------------------------------------------------------------
# comodule algebras

@dataclass(frozen=True, eq=False)
class ComoduleAlgebra:
    """``(A, beta)`` with a right coaction ``rho: A -> A (x) H`` (a ``dim_A*dim_H x dim_A`` matrix)."""

    algebra: HomAlgebra
    hopf: HomHopfAlgebra
    coaction: Matrix

    def __post_init__(self):
        a, h = self.algebra.dim, self.hopf.dim
        if self.coaction.shape != (a * h, a):
            raise ValueError(f"coaction has shape {self.coaction.shape}, expected {(a * h, a)}")
        if self.algebra.field != self.hopf.field or self.coaction.field != self.hopf.field:
            raise ValueError("comodule algebra and Hopf algebra over different fields")

    @property
    def field(self):
        return self.algebra.field

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def beta(self) -> Matrix:
        return self.algebra.alpha

    @cached_property
    def coinvariants(self) -> Subspace:
        return coinvariants(self.comodule)

    @property
    def inclusion(self) -> Matrix:
        """``B -> A`` in canonical coordinates of the coinvariants."""
        return self.coinvariants.basis

    @cached_property
    def coinvariant_algebra(self) -> HomAlgebra:
        """``(B, beta|_B)`` with the induced multiplication; raises NotClosed when ``B`` is not a subalgebra."""
        B, A = self.coinvariants, self.algebra
        inc = B.basis
        if B.dim == 0:
            raise NotClosed("coinvariants do not contain the unit")
        try:
            unit = B.coordinates(A.unit)
        except NotInSubspace:
            raise NotClosed("coinvariants do not contain the unit") from None
        try:
            mul = B.coordinates(A.mul @ inc.kron(inc))
        except NotInSubspace as exc:
            raise NotClosed("coinvariants not closed under multiplication", exc.column) from None
        try:
            beta = B.coordinates(A.alpha @ inc)
        except NotInSubspace as exc:
            raise NotClosed("coinvariants not closed under beta", exc.column) from None
        return HomAlgebra(self.field, mul, unit, beta)

    @property
    def comodule(self) -> HomComodule:
        return HomComodule(self.hopf, self.coaction, self.beta)

    def as_relative_hopf(self) -> RelativeHopfModule:
        """``A`` itself in the category of relative Hopf modules."""
        return RelativeHopfModule(regular_module(self.algebra), self.comodule)

    def right_over_B(self) -> HomModule:
        return HomModule(self.coinvariant_algebra, self.algebra.mul @ Matrix.identity(self.field, self.dim).kron(self.inclusion),
                         self.beta, "right")

    def left_over_B(self) -> HomModule:
        return HomModule(self.coinvariant_algebra, self.algebra.mul @ self.inclusion.kron(Matrix.identity(self.field, self.dim)),
                         self.beta, "left")

    def regular_B(self) -> HomModule:
        """``B`` as a right module over itself."""
        Bal = self.coinvariant_algebra
        return HomModule(Bal, Bal.mul, Bal.alpha, "right")


def verify_comodule_algebra(ca: ComoduleAlgebra) -> VerificationReport:
    rep = VerificationReport("comodule_algebra")
    A, H, rho = ca.algebra, ca.hopf, ca.coaction
    F, a, h = ca.field, A.dim, H.dim
    verify_comodule(ca.comodule, rep)
    lhs = rho @ A.mul
    rhs = (TensorMap.identity(F, (a, a)).then(rho, 0, out=(a, h)).then(rho, 2, out=(a, h))
           .permute((0, 2, 1, 3)).then(A.mul, 0, 2).then(H.mul, 1, 2).matrix)
    rep.compare("coaction_multiplicative", lhs, rhs, (a, a))
    rep.compare("coaction_unital", rho @ A.unit, A.unit.kron(H.unit))
    rep.compare("coaction_commutes_beta", rho @ A.alpha, A.alpha.kron(H.alpha) @ rho, (a,))
    B = ca.coinvariants
    rep.flag("coinvariants_contain_unit", B.contains(A.unit))
    inc = B.basis
    rep.flag("coinvariants_closed_multiplication", B.contains(A.mul @ inc.kron(inc)) if B.dim else True)
    rep.flag("coinvariants_closed_beta", B.contains(A.alpha @ inc) if B.dim else True)
    return rep


def twist_comodule_algebra(classical: ComoduleAlgebra, alpha: Matrix, beta: Matrix) -> ComoduleAlgebra:
    """``A_beta = (A, beta m, 1, beta)`` over ``H_alpha`` with coaction ``rho beta^-1``."""
    A, H, rho = classical.algebra, classical.hopf, classical.coaction
    if not A.alpha.is_identity() or not H.alpha.is_identity():
        raise ValueError("twist_comodule_algebra expects classical input (beta = alpha = id)")
    bad = automorphism_failures(H, alpha)
    if bad:
        raise NotCompatible(f"alpha is not a bialgebra automorphism ({bad[0]})")
    if beta.shape != (A.dim, A.dim) or not beta.is_invertible():
        raise NotCompatible("beta is not invertible")
    if beta @ A.mul != A.mul @ beta.kron(beta):
        raise NotCompatible("beta is not multiplicative")
    if beta @ A.unit != A.unit:
        raise NotCompatible("beta is not unital")
    if rho @ beta != beta.kron(alpha) @ rho:
        raise NotCompatible("rho beta = (beta (x) alpha) rho fails")
    twisted = A.replace(mul=beta @ A.mul, alpha=beta)
    return ComoduleAlgebra(twisted, twist_hopf(H, alpha), rho @ beta.inverse())


# ---------------------------------------------------------------------------
# canonical maps

def can_full(ca: ComoduleAlgebra) -> Matrix:
    """``a (x) b -> beta^-1(a) b0 (x) alpha(b1)`` on all of ``A (x) A``."""
    A, H = ca.algebra, ca.hopf
    a, h = A.dim, H.dim
    return (TensorMap.identity(ca.field, (a, a)).then(A.alpha_inv, 0).then(ca.coaction, 1, out=(a, h))
            .then(A.mul, 0, 2).then(H.alpha, 1).matrix)


def can_prime(ca: ComoduleAlgebra) -> Matrix:
    """``a (x) b -> a0 beta^-1(b) (x) alpha(a1)``."""
    A, H = ca.algebra, ca.hopf
    a, h = A.dim, H.dim
    return (TensorMap.identity(ca.field, (a, a)).then(A.alpha_inv, 1).then(ca.coaction, 0, out=(a, h))
            .permute((0, 2, 1)).then(A.mul, 0, 2).then(H.alpha, 1).matrix)


def comparison_f(ca: ComoduleAlgebra) -> tuple[Matrix, Matrix]:
    """``f(a (x) h) = beta(a0) (x) a1 S alpha^-1(h)`` and its inverse built from ``S^-1``."""
    A, H = ca.algebra, ca.hopf
    a, h = A.dim, H.dim
    S_inv = H.S_inv
    f = (TensorMap.identity(ca.field, (a, h)).then(H.alpha_inv, 1).then(H.S, 1)
         .then(ca.coaction, 0, out=(a, h)).then(H.mul, 1, 2).then(A.alpha, 0).matrix)
    f_inv = (TensorMap.identity(ca.field, (a, h)).then(H.alpha_inv, 1).then(S_inv, 1)
             .then(ca.coaction, 0, out=(a, h)).permute((0, 2, 1)).then(H.mul, 1, 2).then(A.alpha, 0).matrix)
    return f, f_inv


def tensor_over_B(ca: ComoduleAlgebra, reading: str = EQUALIZER) -> BalancedTensor:
    """``A (x)_B A``."""
    return BalancedTensor(ca.right_over_B(), ca.left_over_B(), ca.coinvariant_algebra, reading)


@dataclass
class GaloisCertificate:
    dim_A: int
    dim_B: int
    dim_tensor_over: int
    dim_target: int
    rank: int
    injective: bool
    surjective: bool
    inverse: Matrix | None = None
    image_in_A_one: bool = False
    missing: tuple[int, int] | None = None
    kernel_witness: list[str] | None = None

    @property
    def galois(self) -> bool:
        return self.injective and self.surjective

    def to_json(self) -> dict:
        out = {
            "dim_A": self.dim_A,
            "dim_B": self.dim_B,
            "dim_A_tensor_B_A": self.dim_tensor_over,
            "dim_A_tensor_H": self.dim_target,
            "rank": self.rank,
            "injective": self.injective,
            "surjective": self.surjective,
            "galois": self.galois,
        }
        if not self.surjective:
            out["image_in_A_tensor_unit"] = self.image_in_A_one
            out["missing_basis_pair"] = list(self.missing) if self.missing else None
        if not self.injective:
            out["kernel_witness"] = self.kernel_witness
        if self.inverse is not None:
            out["inverse"] = self.inverse.to_strings()
        return out


def galois_check(ca: ComoduleAlgebra, reading: str = EQUALIZER) -> GaloisCertificate:
    """Restrict ``can`` to ``A (x)_B A`` and decide bijectivity onto ``A (x) H``."""
    F, a, h = ca.field, ca.dim, ca.hopf.dim
    D = BalancedTensor(ca.right_over_B(), ca.left_over_B(), ca.coinvariant_algebra, reading)
    C = D.map_from(can_full(ca), what="can")
    r = C.rank()
    injective, surjective = r == D.dim, r == a * h
    cert = GaloisCertificate(a, ca.coinvariants.dim, D.dim, a * h, r, injective, surjective)
    if injective and surjective:
        inv = D.emb @ C.inverse()
        if can_full(ca) @ inv != Matrix.identity(F, a * h):
            raise AssertionError("computed inverse of can is wrong")
        cert.inverse = inv
    if not surjective:
        img = image(C)
        cert.image_in_A_one = image(Matrix.identity(F, a).kron(ca.hopf.unit)).contains_subspace(img)
        for j in range(a * h):
            if not img.contains(Matrix.unit_vector(F, a * h, j)):
                cert.missing = divmod(j, h)
                break
    if not injective:
        K = kernel(C)
        cert.kernel_witness = [F.format(x) for x in (D.emb @ K.basis.col(0)).vector()]
    return cert


def can_X_full(x: HomModule, ca: ComoduleAlgebra) -> Matrix:
    """``x (x) a -> x a0 (x) alpha(a1)`` on all of ``X (x) A``."""
    d, a, h = x.dim, ca.dim, ca.hopf.dim
    return (TensorMap.identity(ca.field, (d, a)).then(ca.coaction, 1, out=(a, h))
            .then(x.action, 0, 2).then(ca.hopf.alpha, 1).matrix)


def can_X(x: HomModule, ca: ComoduleAlgebra, cert: GaloisCertificate | None = None,
          reading: str = EQUALIZER) -> tuple[Matrix, BalancedTensor]:
    """``can_X`` on ``X (x)_B A``; returns the matrix (columns in its coordinates) and the domain."""
    if x.side != "right" or not same_algebra(x.over, ca.algebra):
        raise MismatchedBase("can_X needs a right module over the comodule algebra")
    cert = cert or galois_check(ca, reading)
    if not cert.galois:
        raise NotGalois("can is not bijective for this comodule algebra")
    D = BalancedTensor(x.restrict_scalars(ca.coinvariant_algebra, ca.inclusion), ca.left_over_B(),
                       ca.coinvariant_algebra, reading)
    return D.map_from(can_X_full(x, ca), what="can_X"), D


# ---------------------------------------------------------------------------
# the functors F and G

@dataclass
class Induced:
    """``F(M)``: the balanced tensor ``M (x)_B A`` and the relative Hopf module on its coordinates."""

    space: BalancedTensor
    module: RelativeHopfModule


def induce(m: HomModule, ca: ComoduleAlgebra, reading: str = QUOTIENT) -> Induced:
    Bal = ca.coinvariant_algebra
    if m.side != "right" or not same_algebra(m.over, Bal):
        raise MismatchedBase("F is defined on right modules over the coinvariants")
    A, H = ca.algebra, ca.hopf
    F, d, a, h = ca.field, m.dim, A.dim, H.dim
    W = BalancedTensor(m, ca.left_over_B(), Bal, reading)
    act_full = TensorMap.identity(F, (d, a, a)).then(A.alpha_inv, 2).then(A.mul, 1, 2).then(m.mu, 0).matrix
    rho_full = (TensorMap.identity(F, (d, a)).then(ca.coaction, 1, out=(a, h)).then(m.mu_inv, 0)
                .then(H.alpha, 2).matrix)
    try:
        act = W.map_from(act_full, extra=a, into=W, what="the A-action")
        rho = W.map_from(rho_full, into=W, rest=h, what="the H-coaction")
        mu = W.map_from(m.mu.kron(A.alpha), into=W, what="mu (x) beta")
    except NotClosed as exc:
        raise SubspaceNotClosed(exc.what, exc.column) from None
    return Induced(W, RelativeHopfModule(HomModule(A, act, mu, "right"), HomComodule(H, rho, mu, "right")))


def functor_F(m: HomModule, ca: ComoduleAlgebra, reading: str = QUOTIENT) -> RelativeHopfModule:
    return induce(m, ca, reading).module


@dataclass
class CoinvariantPart:
    """``G(N)``: the coinvariant subspace of ``N`` and the right ``B``-module on its coordinates."""

    space: Subspace
    module: HomModule


def coinvariant_part(n: RelativeHopfModule, ca: ComoduleAlgebra) -> CoinvariantPart:
    if not same_algebra(n.module.over, ca.algebra):
        raise MismatchedBase("G is defined on relative Hopf modules over the comodule algebra")
    Bal = ca.coinvariant_algebra
    U = coinvariants(n.comodule)
    try:
        act = U.coordinates(n.action @ U.basis.kron(ca.inclusion))
    except NotInSubspace as exc:
        raise NotClosed("N^coH not closed under the B-action", exc.column) from None
    try:
        mu = U.coordinates(n.mu @ U.basis)
    except NotInSubspace as exc:
        raise NotClosed("N^coH not closed under nu", exc.column) from None
    return CoinvariantPart(U, HomModule(Bal, act, mu, "right"))


def functor_G(n: RelativeHopfModule, ca: ComoduleAlgebra) -> HomModule:
    return coinvariant_part(n, ca).module


# ---------------------------------------------------------------------------
# unit and counit

def unit_map(m: HomModule, ca: ComoduleAlgebra, fm: Induced | None = None,
             reading: str = QUOTIENT) -> tuple[Matrix, Induced, Subspace]:
    """``eta_M(m) = mu^-1(m) (x) 1_A`` as a map ``M -> G F(M)``.

    Returns the matrix (target in coordinates of the coinvariants of
    ``F(M)``), ``F(M)`` and that coinvariant subspace.
    """
    fm = fm or induce(m, ca, reading)
    in_w = fm.space.to(m.mu_inv.kron(ca.algebra.unit), what="eta_M")
    V = coinvariants(fm.module.comodule)
    try:
        eta = V.coordinates(in_w)
    except NotInSubspace as exc:
        raise NotClosed("eta_M does not land in the coinvariants", exc.column) from None
    return eta, fm, V


def counit_map(n: RelativeHopfModule, ca: ComoduleAlgebra, gn: CoinvariantPart | None = None,
               reading: str = QUOTIENT) -> tuple[Matrix, CoinvariantPart, Induced]:
    """``eps_N(n (x) a) = n.a`` as a map ``F G(N) -> N``."""
    gn = gn or coinvariant_part(n, ca)
    fgn = induce(gn.module, ca, reading)
    full = n.action @ gn.space.basis.kron(Matrix.identity(ca.field, ca.dim))
    return fgn.space.map_from(full, what="eps_N"), gn, fgn


@dataclass
class Adjunction:
    eta: Matrix
    eps: Matrix
    triangle_F: bool
    triangle_G: bool

    def __iter__(self):
        return iter((self.eta, self.eps))


def adjunction_maps(m: HomModule, n: RelativeHopfModule, ca: ComoduleAlgebra,
                    reading: str = QUOTIENT) -> Adjunction:
    """``eta_M``, ``eps_N`` and both triangle identities.

    ``eps_F(M) o F(eta_M) = id`` is checked on ``F(M)`` and
    ``G(eps_N) o eta_G(N) = id`` on ``G(N)``.
    """
    F = ca.field
    eta, fm, V = unit_map(m, ca, reading=reading)
    eps, gn, fgn = counit_map(n, ca, reading=reading)

    # F(eta_M): F(M) -> F(GF(M)), then eps_F(M): F(GF(M)) -> F(M)
    gfm = CoinvariantPart(V, coinvariant_part(fm.module, ca).module)
    eps_fm, _, fgfm = counit_map(fm.module, ca, gfm, reading)
    f_eta = fm.space.map_from(eta.kron(Matrix.identity(F, ca.dim)), into=fgfm.space, what="F(eta_M)")
    tri_F = (eps_fm @ f_eta).is_identity()

    # eta_G(N): G(N) -> GF(G(N)), then G(eps_N)
    eta_g, _, V2 = unit_map(gn.module, ca, fgn, reading)
    try:
        g_eps = gn.space.coordinates(eps @ V2.basis)
    except NotInSubspace as exc:
        raise NotClosed("G(eps_N) leaves N^coH", exc.column) from None
    tri_G = (g_eps @ eta_g).is_identity()
    return Adjunction(eta, eps, tri_F, tri_G)


def is_bijective(m: Matrix) -> bool:
    return m.rows == m.cols and m.rank() == m.rows


# ---------------------------------------------------------------------------
# reports

FLATNESS_NOTE = ("faithful flatness of A over B is not decided; the report substitutes its "
                 "checkable consequences, bijectivity of eta_M and eps_N on the supplied objects")


def default_modules(ca: ComoduleAlgebra) -> list[tuple[str, HomModule]]:
    b = ca.regular_B()
    return [("B", b), ("B+B", direct_sum(b, b))]


def default_hopf_modules(ca: ComoduleAlgebra) -> list[tuple[str, RelativeHopfModule]]:
    return [("A", ca.as_relative_hopf()), ("A(x)H", build_MtensorH(regular_module(ca.algebra), ca))]


def equivalence_report(ca: ComoduleAlgebra, modules=None, hopf_modules=None, reading: str = QUOTIENT) -> dict:
    """Instance-level check that ``(F, G)`` is an equivalence.

    ``modules`` and ``hopf_modules`` are lists of ``(name, object)`` pairs;
    they default to ``B, B+B`` and ``A, A (x) H``.  A unit or counit that
    cannot even be formed (it leaves its target) is reported as a failure
    with the reason.
    """
    from .integrals import solve_total_integral

    modules = default_modules(ca) if modules is None else modules
    hopf_modules = default_hopf_modules(ca) if hopf_modules is None else hopf_modules
    cert = galois_check(ca)
    integral = solve_total_integral(ca)
    bijective_S = ca.hopf.antipode_inverse is not None or ca.hopf.antipode.is_invertible()
    units, counits, failures = [], [], []
    for name, m in modules:
        entry = {"name": name, "dim": m.dim}
        try:
            eta, fm, V = unit_map(m, ca, reading=reading)
            entry.update(dim_GF=V.dim, bijective=is_bijective(eta))
        except (NotClosed, NotWellDefined) as exc:
            entry.update(dim_GF=None, bijective=False, error=str(exc))
        units.append(entry)
        if not entry["bijective"]:
            failures.append(f"eta_{name}")
    for name, n in hopf_modules:
        entry = {"name": name, "dim": n.dim}
        try:
            eps, gn, fgn = counit_map(n, ca, reading=reading)
            entry.update(dim_FG=fgn.space.dim, bijective=is_bijective(eps))
        except (NotClosed, NotWellDefined) as exc:
            entry.update(dim_FG=None, bijective=False, error=str(exc))
        counits.append(entry)
        if not entry["bijective"]:
            failures.append(f"eps_{name}")
    galois = cert.to_json()
    galois.pop("inverse", None)
    all_units = all(u["bijective"] for u in units)
    all_counits = all(c["bijective"] for c in counits)
    return {
        "reading": reading,
        "galois": galois,
        "hypotheses": {
            "hopf_galois": cert.galois,
            "total_integral": integral is not None,
            "bijective_antipode": bijective_S,
            "faithful_flatness": "not decided",
        },
        "units": units,
        "counits": counits,
        "conclusion": {
            "all_units_bijective": all_units,
            "all_counits_bijective": all_counits,
            "equivalence_on_instances": all_units and all_counits,
        },
        "failures": failures,
        "note": FLATNESS_NOTE,
    }
