"""Independent reference evaluators used by the tests.

Nothing here imports the package.  Structures are read straight from the
JSON file format into nested lists and evaluated element by element with
dict-based vectors, so the oracle shares no code path with the matrix
machinery it checks.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product


@lru_cache(maxsize=4096)
def _parse(x: str) -> Fraction:
    return Fraction(x)


class Field:
    def __init__(self, spec: dict):
        self.p = int(spec["p"]) if spec["kind"].upper() == "GF" else None

    def __call__(self, x):
        q = _parse(x) if isinstance(x, str) else Fraction(x)
        if self.p is None:
            return q
        return q.numerator * pow(q.denominator, -1, self.p) % self.p

    def fmt(self, x) -> str:
        if self.p is None:
            x = Fraction(x)
            return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
        return str(int(x) % self.p)

    def norm(self, x):
        return x % self.p if self.p is not None else x


# ---------------------------------------------------------------------------
# sparse vectors: dict key -> scalar

def vadd(F, *vs):
    out = {}
    for v in vs:
        for k, c in v.items():
            out[k] = F.norm(out.get(k, 0) + c)
    return {k: c for k, c in out.items() if c != 0}


def vscale(F, c, v):
    return {k: F.norm(c * x) for k, x in v.items() if F.norm(c * x) != 0}


def linear(F, f, v):
    """Extend ``f`` (basis key -> vector) linearly to ``v``."""
    out = {}
    for k, c in v.items():
        out = vadd(F, out, vscale(F, c, f(k)))
    return out


def bilinear(F, f, v, w):
    out = {}
    for (k, c), (l, d) in product(v.items(), w.items()):
        out = vadd(F, out, vscale(F, F.norm(c * d), f(k, l)))
    return out


def tensor(F, *vs):
    """``v_1 (x) ... (x) v_r`` with tuple keys."""
    out = {(): F(1)}
    for v in vs:
        nxt = {}
        for (k, c), (l, d) in product(out.items(), v.items()):
            key = k + (l if isinstance(l, tuple) else (l,))
            nxt[key] = F.norm(nxt.get(key, 0) + c * d)
        out = {k: c for k, c in nxt.items() if c != 0}
    return out


def flat(v, dims):
    """Dense coordinate list in row-major order of the tensor basis."""
    size = 1
    for d in dims:
        size *= d
    out = [0] * size
    for key, c in v.items():
        key = key if isinstance(key, tuple) else (key,)
        idx = 0
        for k, d in zip(key, dims):
            idx = idx * d + k
        out[idx] = c
    return out


# ---------------------------------------------------------------------------
# Hom-Hopf algebras from the file format

class RawHopf:
    def __init__(self, obj: dict):
        F = self.F = Field(obj["field"])
        n = self.n = int(obj["dim"])
        self.m = [[{k: F(c) for k, c in enumerate(obj["mul"][i][j]) if F(c) != 0} for j in range(n)]
                  for i in range(n)]
        self.u = {k: F(c) for k, c in enumerate(obj["unit"]) if F(c) != 0}
        self.al = self._cols(obj["alpha"])
        self.d = [{divmod(t, n): F(c) for t, c in enumerate(obj["delta"][i]) if F(c) != 0} for i in range(n)]
        self.e = [F(c) for c in obj["counit"]]
        self.S = self._cols(obj["antipode"])
        self.Sinv = self._cols(obj["antipode_inverse"]) if obj.get("antipode_inverse") is not None else None

    def _cols(self, rows):
        F, n = self.F, self.n
        return [{i: F(rows[i][j]) for i in range(n) if F(rows[i][j]) != 0} for j in range(n)]

    # elementwise maps on sparse vectors
    def mul(self, x, y):
        return bilinear(self.F, lambda i, j: self.m[i][j], x, y)

    def alpha(self, x):
        return linear(self.F, lambda i: self.al[i], x)

    def anti(self, x):
        return linear(self.F, lambda i: self.S[i], x)

    def anti_inv(self, x):
        return linear(self.F, lambda i: self.Sinv[i], x)

    def comul(self, x):
        return linear(self.F, lambda i: self.d[i], x)

    def counit(self, x):
        return self.F.norm(sum(c * self.e[k] for k, c in x.items()))

    def on_legs(self, f, v, leg):
        """Apply ``f`` (vector -> vector, keys ints or tuples) to one tensor leg."""
        F = self.F
        out = {}
        for key, c in v.items():
            img = f({key[leg]: 1})
            for k2, c2 in img.items():
                k2 = k2 if isinstance(k2, tuple) else (k2,)
                nk = key[:leg] + k2 + key[leg + 1:]
                out[nk] = F.norm(out.get(nk, 0) + c * c2)
        return {k: c for k, c in out.items() if c != 0}

    def e_(self, i):
        return {i: self.F(1)}

    # ------------------------------------------------------------------
    def axiom(self, name: str, idx: tuple):
        """Both sides of axiom ``name`` at basis tuple ``idx`` as dense coordinate lists."""
        F, n = self.F, self.n
        e = self.e_
        one = self.u
        if name == "hom_associativity":
            i, j, k = idx
            return (flat(self.mul(self.alpha(e(i)), self.mul(e(j), e(k))), (n,)),
                    flat(self.mul(self.mul(e(i), e(j)), self.alpha(e(k))), (n,)))
        if name == "right_unit":
            (i,) = idx
            return flat(self.mul(e(i), one), (n,)), flat(self.alpha(e(i)), (n,))
        if name == "left_unit":
            (i,) = idx
            return flat(self.mul(one, e(i)), (n,)), flat(self.alpha(e(i)), (n,))
        if name == "alpha_multiplicative":
            i, j = idx
            return (flat(self.alpha(self.mul(e(i), e(j))), (n,)),
                    flat(self.mul(self.alpha(e(i)), self.alpha(e(j))), (n,)))
        if name == "alpha_unital":
            return flat(self.alpha(one), (n,)), flat(one, (n,))
        if name == "hom_coassociativity":
            (i,) = idx
            d = self.comul(e(i))
            lhs = self.on_legs(self.alpha, self.on_legs(self.comul, d, 1), 2)
            rhs = self.on_legs(self.alpha, self.on_legs(self.comul, d, 0), 0)
            return flat(lhs, (n, n, n)), flat(rhs, (n, n, n))
        if name in ("right_counit", "left_counit"):
            (i,) = idx
            out = {}
            for (a, b), c in self.comul(e(i)).items():
                keep, drop = (a, b) if name == "right_counit" else (b, a)
                out = vadd(F, out, vscale(F, F.norm(c * self.e[drop]), self.alpha(e(keep))))
            return flat(out, (n,)), flat(e(i), (n,))
        if name == "gamma_comultiplicative":
            (i,) = idx
            lhs = self.comul(self.alpha(e(i)))
            rhs = self.on_legs(self.alpha, self.on_legs(self.alpha, self.comul(e(i)), 0), 1)
            return flat(lhs, (n, n)), flat(rhs, (n, n))
        if name == "gamma_counital":
            (i,) = idx
            return [self.counit(self.alpha(e(i)))], [self.e[i]]
        if name == "shared_automorphism":
            (i,) = idx
            return flat(self.alpha(e(i)), (n,)), flat(self.alpha(e(i)), (n,))
        if name == "comul_multiplicative":
            i, j = idx
            lhs = self.comul(self.mul(e(i), e(j)))
            rhs = {}
            for ((a, b), c), ((x, y), d) in product(self.comul(e(i)).items(), self.comul(e(j)).items()):
                rhs = vadd(F, rhs, vscale(F, F.norm(c * d), tensor(F, self.m[a][x], self.m[b][y])))
            return flat(lhs, (n, n)), flat(rhs, (n, n))
        if name == "comul_unital":
            return flat(self.comul(one), (n, n)), flat(tensor(F, one, one), (n, n))
        if name == "counit_multiplicative":
            i, j = idx
            return [self.counit(self.mul(e(i), e(j)))], [F.norm(self.e[i] * self.e[j])]
        if name == "counit_unital":
            return [self.counit(one)], [F(1)]
        if name == "antipode_commutes_alpha":
            (i,) = idx
            return flat(self.anti(self.alpha(e(i))), (n,)), flat(self.alpha(self.anti(e(i))), (n,))
        if name in ("antipode_left", "antipode_right"):
            (i,) = idx
            out = {}
            for (a, b), c in self.comul(e(i)).items():
                x, y = (self.anti(e(a)), e(b)) if name == "antipode_left" else (e(a), self.anti(e(b)))
                out = vadd(F, out, vscale(F, c, self.mul(x, y)))
            return flat(out, (n,)), flat(vscale(F, self.e[i], one), (n,))
        if name == "antipode_inverse_right":
            (i,) = idx
            return flat(self.anti(self.anti_inv(e(i))), (n,)), flat(e(i), (n,))
        if name == "antipode_inverse_left":
            (i,) = idx
            return flat(self.anti_inv(self.anti(e(i))), (n,)), flat(e(i), (n,))
        raise KeyError(name)

    def arity(self, name: str) -> int:
        return {"hom_associativity": 3, "alpha_multiplicative": 2, "comul_multiplicative": 2,
                "counit_multiplicative": 2, "alpha_unital": 0, "comul_unital": 0,
                "counit_unital": 0}.get(name, 1)

    def failing(self) -> set[str]:
        """Every equational axiom that fails somewhere, by brute force over basis tuples."""
        names = ["hom_associativity", "right_unit", "left_unit", "alpha_multiplicative", "alpha_unital",
                 "hom_coassociativity", "right_counit", "left_counit", "gamma_comultiplicative",
                 "gamma_counital", "comul_multiplicative", "comul_unital", "counit_multiplicative",
                 "counit_unital", "antipode_commutes_alpha", "antipode_left", "antipode_right"]
        if self.Sinv is not None:
            names += ["antipode_inverse_right", "antipode_inverse_left"]
        bad = set()
        for name in names:
            for idx in product(range(self.n), repeat=self.arity(name)):
                lhs, rhs = self.axiom(name, idx)
                if lhs != rhs:
                    bad.add(name)
                    break
        return bad


# ---------------------------------------------------------------------------
# exact linear algebra over Fractions / GF(p), row lists

def rref(F, rows):
    """Textbook Gauss-Jordan; returns (reduced rows, pivot columns)."""
    a = [[F(x) for x in r] for r in rows]
    m = len(a)
    n = len(a[0]) if m else 0
    pivots = []
    r = 0
    for c in range(n):
        k = next((i for i in range(r, m) if a[i][c] != 0), None)
        if k is None:
            continue
        a[r], a[k] = a[k], a[r]
        inv = (1 / a[r][c]) if F.p is None else pow(int(a[r][c]), -1, F.p)
        a[r] = [F.norm(x * inv) for x in a[r]]
        for i in range(m):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [F.norm(x - f * y) for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return a, pivots


def nullspace_dim(F, rows, ncols) -> int:
    return ncols - len(rref(F, rows)[1]) if rows else ncols


# ---------------------------------------------------------------------------
# modules and comodules, element by element

class RawMap:
    """A linear map given by nested row lists; columns become sparse dicts.

    ``src`` and ``dst`` are the factor dimensions of domain and codomain, so
    basis keys are tuples (or ints for a single factor).
    """

    def __init__(self, F: Field, rows, src, dst):
        self.F, self.src, self.dst = F, tuple(src), tuple(dst)
        ncols = 1
        for d in self.src:
            ncols *= d
        self.cols = []
        for j in range(ncols):
            v = {}
            for i, row in enumerate(rows):
                c = F(row[j])
                if c != 0:
                    v[self._key(i, self.dst)] = c
            self.cols.append(v)

    @staticmethod
    def _key(i, dims):
        if len(dims) == 1:
            return i
        out = []
        for d in reversed(dims):
            i, r = divmod(i, d)
            out.append(r)
        return tuple(reversed(out))

    def _index(self, key):
        key = key if isinstance(key, tuple) else (key,)
        idx = 0
        for k, d in zip(key, self.src):
            idx = idx * d + k
        return idx

    def __call__(self, *args):
        """Apply to one vector (single factor domain) or to one vector per factor."""
        v = args[0] if len(args) == 1 else tensor(self.F, *args)
        return linear(self.F, lambda k: self.cols[self._index(k)], v)


def _e(F, i):
    return {i: F(1)}


def right_module_failures(F, act: RawMap, mu: RawMap, mul: RawMap, unit, alpha: RawMap, d, n):
    """Failing laws of a right module ``(x.a).alpha(b) = mu(x).(ab)``, ``x.1 = mu(x)``,
    ``mu(x.a) = mu(x).alpha(a)`` over basis tuples."""
    bad = set()
    for x in range(d):
        if act(_e(F, x), unit) != mu(_e(F, x)):
            bad.add("module_unit")
        for a in range(n):
            xa = act(_e(F, x), _e(F, a))
            if mu(xa) != act(mu(_e(F, x)), alpha(_e(F, a))):
                bad.add("module_mu_compatible")
            for b in range(n):
                lhs = act(xa, alpha(_e(F, b)))
                rhs = act(mu(_e(F, x)), mul(_e(F, a), _e(F, b)))
                if lhs != rhs:
                    bad.add("module_hom_associativity")
    return bad


def left_module_failures(F, act: RawMap, mu: RawMap, mul: RawMap, unit, alpha: RawMap, d, n):
    bad = set()
    for x in range(d):
        if act(unit, _e(F, x)) != mu(_e(F, x)):
            bad.add("module_unit")
        for a in range(n):
            ax = act(_e(F, a), _e(F, x))
            if mu(ax) != act(alpha(_e(F, a)), mu(_e(F, x))):
                bad.add("module_mu_compatible")
            for b in range(n):
                lhs = act(alpha(_e(F, b)), ax)
                rhs = act(mul(_e(F, b), _e(F, a)), mu(_e(F, x)))
                if lhs != rhs:
                    bad.add("module_hom_associativity")
    return bad


def _legs(F, f, v, leg):
    out = {}
    for key, c in v.items():
        for k2, c2 in f({key[leg]: F(1)}).items():
            k2 = k2 if isinstance(k2, tuple) else (k2,)
            nk = key[:leg] + k2 + key[leg + 1:]
            out[nk] = F.norm(out.get(nk, 0) + c * c2)
    return {k: c for k, c in out.items() if c != 0}


def right_comodule_failures(F, rho: RawMap, mu: RawMap, comul: RawMap, counit, gamma: RawMap, d):
    """``mu^-1(x0) (x) D(x1) = (x00 (x) x01) (x) g^-1(x1)`` in the form with both sides
    multiplied out by ``mu (x) id (x) gamma``, counit ``x0 eps(x1) = mu^-1(x)`` as
    ``mu(x0) eps(x1) = x``, and ``rho mu = (mu (x) gamma) rho``."""
    bad = set()
    for x in range(d):
        r = rho(_e(F, x))
        lhs = _legs(F, gamma, _legs(F, comul, r, 1), 2)
        rhs = _legs(F, mu, _legs(F, rho, r, 0), 0)
        if lhs != rhs:
            bad.add("comodule_coassociativity")
        c = {}
        for (y, k), v in r.items():
            c = vadd(F, c, vscale(F, F.norm(v * counit[k]), mu(_e(F, y))))
        if c != _e(F, x):
            bad.add("comodule_counit")
        if rho(mu(_e(F, x))) != _legs(F, gamma, _legs(F, mu, r, 0), 1):
            bad.add("comodule_mu_compatible")
    return bad


def hopf_module_failures(F, act: RawMap, rho: RawMap, act_a: RawMap, rho_a: RawMap, mul_h: RawMap, d, a):
    """Pairs ``(x, b)`` where ``rho(x.b) != x0.b0 (x) x1 b1``."""
    bad = []
    for x in range(d):
        for b in range(a):
            lhs = rho(act(_e(F, x), _e(F, b)))
            rhs = {}
            for (y, k), c in rho(_e(F, x)).items():
                for (z, l), c2 in rho_a(_e(F, b)).items():
                    rhs = vadd(F, rhs, vscale(F, F.norm(c * c2),
                                              tensor(F, act(_e(F, y), _e(F, z)), mul_h(_e(F, k), _e(F, l)))))
            if lhs != rhs:
                bad.append((x, b))
    return bad
