"""Deterministic test instances: cyclic group algebras, their twists, and extensions."""
from __future__ import annotations

import json
import math
from importlib import resources

from .exactfield import FieldSpec
from .galois import ComoduleAlgebra
from .homstruct import HomAlgebra, HomHopfAlgebra, twist_hopf
from .linalg import Matrix


class NotCoprime(ValueError):
    pass


def gen_cyclic(n: int, field: FieldSpec) -> HomHopfAlgebra:
    """Group algebra k[C_n] on the basis ``g^0 .. g^{n-1}`` with alpha = id."""
    if n < 1:
        raise ValueError("n must be >= 1")
    mul = Matrix.from_columns(field, [[int(k == (i + j) % n) for k in range(n)]
                                      for i in range(n) for j in range(n)], n)
    unit = Matrix.unit_vector(field, n, 0)
    comul = Matrix.from_columns(field, [[int(r == i * n + i) for r in range(n * n)] for i in range(n)], n * n)
    counit = Matrix.from_rows(field, [[1] * n])
    S = Matrix.permutation(field, [(-i) % n for i in range(n)])
    basis = [f"g^{i}" for i in range(n)]
    return HomHopfAlgebra.build(field, mul, unit, comul, counit, Matrix.identity(field, n), S, S, basis)


def power_map(n: int, s: int, field: FieldSpec) -> Matrix:
    """The group automorphism ``g -> g^s`` of C_n extended linearly."""
    if math.gcd(s, n) != 1:
        raise NotCoprime(f"gcd({s}, {n}) != 1")
    return Matrix.permutation(field, [(s * i) % n for i in range(n)])


def gen_cyclic_twist(n: int, s: int, field: FieldSpec) -> HomHopfAlgebra:
    return twist_hopf(gen_cyclic(n, field), power_map(n, s, field))


def gen_self_extension(h: HomHopfAlgebra) -> ComoduleAlgebra:
    """H coacting on itself by its comultiplication."""
    return ComoduleAlgebra(h.algebra, h, h.comul)


def gen_trivial_extension(a: HomAlgebra, h: HomHopfAlgebra) -> ComoduleAlgebra:
    """``rho(x) = beta^-1(x) (x) 1_H``; never Galois once dim H > 1."""
    return ComoduleAlgebra(a, h, a.alpha_inv.kron(h.unit))


def coprime_twists(n: int) -> list[int]:
    return [s for s in range(1, max(n, 2)) if math.gcd(s, n) == 1] if n > 1 else [0]


def sweedler(field: FieldSpec) -> HomHopfAlgebra:
    """Sweedler's 4-dimensional Hopf algebra, loaded from the bundled data file."""
    from .io import hopf_from_json

    if field.p == 2:
        raise ValueError("Sweedler's algebra needs characteristic != 2")
    text = resources.files("homhopf.data").joinpath("sweedler.json").read_text()
    obj = json.loads(text)
    obj["field"] = field.to_json()
    return hopf_from_json(obj)


def sweedler_scaling(field: FieldSpec, c) -> Matrix:
    """Hopf automorphism ``g -> g, x -> c x`` of Sweedler's algebra (basis 1, g, x, gx)."""
    c = field.coerce(c)
    return Matrix.from_rows(field, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, c, 0], [0, 0, 0, c]])
