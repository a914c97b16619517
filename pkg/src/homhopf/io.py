"""JSON structure files.

Scalars are written as strings (``"3"``, ``"-1/2"``) and read from strings or
integers.  Matrices are nested row lists; ``alpha``, ``mu`` and ``antipode``
are stored as the matrix itself (column j is the image of ``e_j``), while
``delta`` and ``coaction`` store one row per basis element (row i is the
image of ``e_i``).  A reference field such as ``hopf`` or ``over`` holds a
path, resolved relative to the referencing file, or an inline object.
"""
from __future__ import annotations

import json
import os
from pathlib import Path

from .exactfield import FieldMismatch, FieldSpec
from .homstruct import HomAlgebra, HomCoalgebra, HomHopfAlgebra
from .linalg import Matrix


class SchemaError(ValueError):
    """Malformed structure file; ``where`` names the offending field."""

    def __init__(self, message: str, where: str = "", line: int | None = None):
        loc = where + (f" (line {line})" if line is not None else "")
        super().__init__(f"{loc}: {message}" if loc else message)
        self.where = where
        self.line = line


KINDS = ("matrix", "algebra", "hopf", "comodule_algebra", "module", "comodule", "relative_hopf_module")


def infer_kind(obj) -> str:
    if isinstance(obj, list) or (isinstance(obj, dict) and "matrix" in obj and "mul" not in obj):
        return "matrix"
    if not isinstance(obj, dict):
        raise SchemaError("expected a JSON object or a matrix")
    if "kind" in obj:
        if obj["kind"] not in KINDS:
            raise SchemaError(f"unknown kind {obj['kind']!r}", "kind")
        return obj["kind"]
    if "action" in obj and "coaction" in obj:
        return "relative_hopf_module"
    if "action" in obj:
        return "module"
    if "coaction" in obj:
        return "comodule_algebra" if "mul" in obj else "comodule"
    if "delta" in obj:
        return "hopf"
    if "mul" in obj:
        return "algebra"
    raise SchemaError("cannot infer the structure kind; add a 'kind' field")


# ---------------------------------------------------------------------------
# low-level readers

def _get(obj: dict, key: str, where: str):
    if key not in obj:
        raise SchemaError("missing field", f"{where}.{key}" if where else key)
    return obj[key]


def _field(obj: dict, where: str = "") -> FieldSpec:
    raw = _get(obj, "field", where)
    try:
        return FieldSpec.from_json(raw) if isinstance(raw, dict) else FieldSpec.from_name(str(raw))
    except (ValueError, TypeError, KeyError) as exc:
        raise SchemaError(str(exc), f"{where}.field" if where else "field") from None


def _rows(field: FieldSpec, raw, name: str, shape: tuple[int, int] | None = None) -> Matrix:
    if isinstance(raw, dict) and "matrix" in raw:
        raw = raw["matrix"]
    if not isinstance(raw, list) or any(not isinstance(r, list) for r in raw):
        raise SchemaError("expected a list of rows", name)
    try:
        m = Matrix.from_rows(field, raw, shape[1] if shape else None)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise SchemaError(str(exc), name) from None
    if shape is not None and m.shape != shape:
        raise SchemaError(f"shape {m.shape}, expected {shape}", name)
    return m


def _vector(field: FieldSpec, raw, name: str, n: int) -> list:
    if not isinstance(raw, list) or len(raw) != n:
        raise SchemaError(f"expected a list of length {n}", name)
    try:
        return [field.coerce(x) for x in raw]
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise SchemaError(str(exc), name) from None


def _tensor3(field: FieldSpec, raw, name: str, shape: tuple[int, int, int]) -> list:
    a, b, c = shape
    if not isinstance(raw, list) or len(raw) != a or any(
            not isinstance(r, list) or len(r) != b or any(not isinstance(s, list) or len(s) != c for s in r)
            for r in raw):
        raise SchemaError(f"expected a {a}x{b}x{c} nested array", name)
    try:
        return [[[field.coerce(x) for x in s] for s in r] for r in raw]
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise SchemaError(str(exc), name) from None


def _dim(obj: dict, where: str = "") -> int:
    n = _get(obj, "dim", where)
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise SchemaError("dim must be a non-negative integer", f"{where}.dim" if where else "dim")
    return n


def _basis(obj: dict, n: int):
    b = obj.get("basis")
    if b is None:
        return None
    if not isinstance(b, list) or len(b) != n:
        raise SchemaError(f"expected {n} basis names", "basis")
    return tuple(str(x) for x in b)


def _fmt_rows(m: Matrix) -> list[list[str]]:
    return m.to_strings()


def _fmt_vec(m: Matrix) -> list[str]:
    return [m.field.format(x) for x in m.vector()]


# ---------------------------------------------------------------------------
# algebras and Hopf algebras

def algebra_from_json(obj: dict) -> HomAlgebra:
    F, n = _field(obj), _dim(obj)
    if n == 0:
        raise SchemaError("dimension 0 is not allowed", "dim")
    mul = _tensor3(F, _get(obj, "mul", ""), "mul", (n, n, n))
    unit = _vector(F, _get(obj, "unit", ""), "unit", n)
    alpha = _rows(F, _get(obj, "alpha", ""), "alpha", (n, n))
    cols = [[mul[i][j][k] for k in range(n)] for i in range(n) for j in range(n)]
    return HomAlgebra(F, Matrix.from_columns(F, cols, n), Matrix.from_columns(F, [unit], n),
                      alpha, _basis(obj, n))


def algebra_to_json(a: HomAlgebra, kind: str | None = "algebra") -> dict:
    F, n = a.field, a.dim
    out = {"kind": kind} if kind else {}
    out.update({
        "field": F.to_json(),
        "dim": n,
        "basis": list(a.basis) if a.basis else [f"e{i}" for i in range(n)],
        "mul": [[[F.format(x) for x in a.mul.col(i * n + j).vector()] for j in range(n)] for i in range(n)],
        "unit": _fmt_vec(a.unit),
        "alpha": _fmt_rows(a.alpha),
    })
    return out


def hopf_from_json(obj: dict) -> HomHopfAlgebra:
    alg = algebra_from_json(obj)
    F, n = alg.field, alg.dim
    delta = _rows(F, _get(obj, "delta", ""), "delta", (n, n * n))
    counit = Matrix.from_rows(F, [_vector(F, _get(obj, "counit", ""), "counit", n)])
    S = _rows(F, _get(obj, "antipode", ""), "antipode", (n, n))
    S_inv = _rows(F, obj["antipode_inverse"], "antipode_inverse", (n, n)) if obj.get("antipode_inverse") else None
    coalg = HomCoalgebra(F, delta.T, counit, alg.alpha, alg.basis)
    return HomHopfAlgebra(alg, coalg, S, S_inv)


def hopf_to_json(h: HomHopfAlgebra) -> dict:
    out = algebra_to_json(h.algebra, "hopf")
    out["delta"] = _fmt_rows(h.comul.T)
    out["counit"] = _fmt_vec(h.counit)
    out["antipode"] = _fmt_rows(h.antipode)
    if h.antipode_inverse is not None:
        out["antipode_inverse"] = _fmt_rows(h.antipode_inverse)
    return out


# ---------------------------------------------------------------------------
# references

def _resolve(ref, base_dir: Path, where: str, kinds: tuple[str, ...]):
    if isinstance(ref, str):
        path = base_dir / ref
        try:
            obj = json.loads(path.read_text())
        except OSError as exc:
            raise SchemaError(f"cannot read {path}: {exc.strerror}", where) from None
        except json.JSONDecodeError as exc:
            raise SchemaError(f"{path}: {exc.msg}", where, exc.lineno) from None
        sub_dir = path.parent
    elif isinstance(ref, dict):
        obj, sub_dir = ref, base_dir
    else:
        raise SchemaError("expected a file path or an inline object", where)
    kind = infer_kind(obj)
    if kind not in kinds:
        raise SchemaError(f"referenced {kind}, expected one of {kinds}", where)
    return from_json(obj, sub_dir), kind


def _check_field(F: FieldSpec, other: FieldSpec, where: str):
    if F != other:
        raise FieldMismatch(f"{where}: field {other.name} does not match {F.name}")


def comodule_algebra_from_json(obj: dict, base_dir: Path | str = ".") -> "ComoduleAlgebra":
    from .galois import ComoduleAlgebra

    alg = algebra_from_json(obj)
    hopf, _ = _resolve(_get(obj, "hopf", ""), Path(base_dir), "hopf", ("hopf",))
    _check_field(alg.field, hopf.field, "hopf")
    rho = _rows(alg.field, _get(obj, "coaction", ""), "coaction", (alg.dim, alg.dim * hopf.dim))
    return ComoduleAlgebra(alg, hopf, rho.T)


def comodule_algebra_to_json(ca, hopf_ref: str | None = None) -> dict:
    out = algebra_to_json(ca.algebra, "comodule_algebra")
    out["hopf"] = hopf_ref if hopf_ref is not None else hopf_to_json(ca.hopf)
    out["coaction"] = _fmt_rows(ca.coaction.T)
    return out


def _side(obj: dict) -> str:
    side = obj.get("side", "right")
    if side not in ("left", "right"):
        raise SchemaError("side must be 'left' or 'right'", "side")
    return side


def _module_base(obj: dict, base_dir: Path):
    """The acting algebra of a module file.

    ``over`` may reference an algebra, a Hopf algebra, or a comodule algebra;
    for the latter ``base`` selects ``"A"`` or its coinvariants ``"B"`` (default).
    """
    target, kind = _resolve(_get(obj, "over", ""), base_dir, "over", ("algebra", "hopf", "comodule_algebra"))
    if kind != "comodule_algebra":
        return target
    base = obj.get("base", "B")
    if base == "A":
        return target.algebra
    if base == "B":
        return target.coinvariant_algebra
    raise SchemaError("base must be 'A' or 'B'", "base")


def _action_matrix(F: FieldSpec, raw, d: int, a: int, side: str) -> Matrix:
    t = _tensor3(F, raw, "action", (d, a, d))
    if side == "right":
        cols = [t[i][x] for i in range(d) for x in range(a)]
    else:
        cols = [t[i][x] for x in range(a) for i in range(d)]
    return Matrix.from_columns(F, cols, d) if cols else Matrix.zeros(F, d, d * a)


def _action_tensor(m) -> list:
    F, d, a = m.field, m.dim, m.algebra.dim
    def col(i, x):
        return m.action.col(i * a + x if m.side == "right" else x * d + i).vector()
    return [[[F.format(v) for v in col(i, x)] for x in range(a)] for i in range(d)]


def _coaction_rows(c) -> Matrix:
    return c.coaction.T


def module_from_json(obj: dict, base_dir: Path | str = "."):
    from .homrep import HomModule

    over = _module_base(obj, Path(base_dir))
    alg = over.algebra if isinstance(over, HomHopfAlgebra) else over
    F, d, side = _field(obj), _dim(obj), _side(obj)
    _check_field(F, alg.field, "over")
    act = _action_matrix(F, _get(obj, "action", ""), d, alg.dim, side)
    mu = _rows(F, _get(obj, "mu", ""), "mu", (d, d)) if d else Matrix.zeros(F, 0, 0)
    return HomModule(over, act, mu, side)


def module_to_json(m, over_ref) -> dict:
    return {"kind": "module", "field": m.field.to_json(), "dim": m.dim, "side": m.side,
            "over": over_ref, "action": _action_tensor(m), "mu": _fmt_rows(m.mu)}


def comodule_from_json(obj: dict, base_dir: Path | str = "."):
    from .homrep import HomComodule

    hopf, _ = _resolve(_get(obj, "over", ""), Path(base_dir), "over", ("hopf",))
    F, d, side = _field(obj), _dim(obj), _side(obj)
    _check_field(F, hopf.field, "over")
    rho = _rows(F, _get(obj, "coaction", ""), "coaction", (d, d * hopf.dim)) if d else Matrix.zeros(F, 0, 0)
    mu = _rows(F, _get(obj, "mu", ""), "mu", (d, d)) if d else Matrix.zeros(F, 0, 0)
    return HomComodule(hopf, rho.T, mu, side)


def comodule_to_json(c, over_ref) -> dict:
    return {"kind": "comodule", "field": c.field.to_json(), "dim": c.dim, "side": c.side,
            "over": over_ref, "coaction": _fmt_rows(_coaction_rows(c)), "mu": _fmt_rows(c.mu)}


def relative_hopf_from_json(obj: dict, base_dir: Path | str = "."):
    """A relative Hopf module together with the comodule algebra it lives over."""
    from .homrep import HomComodule, HomModule, RelativeHopfModule

    ca, _ = _resolve(_get(obj, "over", ""), Path(base_dir), "over", ("comodule_algebra",))
    F, d = _field(obj), _dim(obj)
    _check_field(F, ca.field, "over")
    act = _action_matrix(F, _get(obj, "action", ""), d, ca.algebra.dim, "right")
    rho = _rows(F, _get(obj, "coaction", ""), "coaction", (d, d * ca.hopf.dim)) if d else Matrix.zeros(F, 0, 0)
    mu = _rows(F, _get(obj, "mu", ""), "mu", (d, d)) if d else Matrix.zeros(F, 0, 0)
    return RelativeHopfModule(HomModule(ca.algebra, act, mu, "right"), HomComodule(ca.hopf, rho.T, mu, "right"))


def relative_hopf_to_json(n, over_ref) -> dict:
    return {"kind": "relative_hopf_module", "field": n.field.to_json(), "dim": n.dim, "over": over_ref,
            "action": _action_tensor(n.module), "coaction": _fmt_rows(_coaction_rows(n.comodule)),
            "mu": _fmt_rows(n.mu)}


# ---------------------------------------------------------------------------
# entry points

def load_over(path: str | os.PathLike):
    """The structure named by the ``over`` field of a module-like file."""
    obj = read_json(path)
    target, _ = _resolve(_get(obj, "over", ""), Path(path).parent, "over",
                         ("algebra", "hopf", "comodule_algebra"))
    return target


def matrix_from_json(obj, field: FieldSpec | None = None) -> Matrix:
    if isinstance(obj, dict):
        if field is None and "field" in obj:
            field = _field(obj)
        obj = _get(obj, "matrix", "")
    if field is None:
        raise SchemaError("matrix file without a field; pass one explicitly", "field")
    return _rows(field, obj, "matrix")


def matrix_to_json(m: Matrix) -> dict:
    return {"kind": "matrix", "field": m.field.to_json(), "matrix": _fmt_rows(m)}


def from_json(obj, base_dir: Path | str = "."):
    kind = infer_kind(obj)
    if kind == "matrix":
        return matrix_from_json(obj)
    if kind == "algebra":
        return algebra_from_json(obj)
    if kind == "hopf":
        return hopf_from_json(obj)
    if kind == "comodule_algebra":
        return comodule_algebra_from_json(obj, base_dir)
    if kind == "module":
        return module_from_json(obj, base_dir)
    if kind == "comodule":
        return comodule_from_json(obj, base_dir)
    return relative_hopf_from_json(obj, base_dir)


def read_json(path: str | os.PathLike):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: {exc.msg}", "", exc.lineno) from None


def load(path: str | os.PathLike, kind: str | None = None):
    """Parse a structure file; ``kind`` restricts what is accepted."""
    obj = read_json(path)
    found = infer_kind(obj)
    if kind is not None and found != kind:
        raise SchemaError(f"expected a {kind} file, found {found}", "kind")
    return from_json(obj, Path(path).parent)


def load_matrix(path: str | os.PathLike, field: FieldSpec) -> Matrix:
    obj = read_json(path)
    if isinstance(obj, dict) and "field" in obj:
        _check_field(field, _field(obj), str(path))
    return matrix_from_json(obj, field)


def dumps(obj) -> str:
    return json.dumps(obj, indent=1) + "\n"


def to_json(x, ref=None) -> dict:
    """Serialize any supported structure; ``ref`` fills ``over``/``hopf`` references."""
    from .galois import ComoduleAlgebra
    from .homrep import HomComodule, HomModule, RelativeHopfModule

    if isinstance(x, Matrix):
        return matrix_to_json(x)
    if isinstance(x, HomHopfAlgebra):
        return hopf_to_json(x)
    if isinstance(x, HomAlgebra):
        return algebra_to_json(x)
    if isinstance(x, ComoduleAlgebra):
        return comodule_algebra_to_json(x, ref)
    if ref is None:
        raise ValueError("modules and comodules need an 'over' reference")
    if isinstance(x, RelativeHopfModule):
        return relative_hopf_to_json(x, ref)
    if isinstance(x, HomModule):
        return module_to_json(x, ref)
    if isinstance(x, HomComodule):
        return comodule_to_json(x, ref)
    raise TypeError(f"cannot serialize {type(x).__name__}")


def save(x, path: str | os.PathLike, ref=None) -> None:
    Path(path).write_text(dumps(to_json(x, ref)))
