"""Command-line front end: ``homhopf <command> ...``.

Every command prints a JSON report.  Exit status 0 means every check ran and
the input was valid (a negative answer such as ``"galois": false`` is still
0), 1 means an input claimed to be valid violates an axiom or an identity,
and 2 means a usage or parse error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import io
from .exactfield import FieldMismatch, FieldSpec
from .examples import NotCoprime, gen_cyclic, gen_cyclic_twist, gen_self_extension, gen_trivial_extension, sweedler
from .galois import (ComoduleAlgebra, NotCompatible, equivalence_report, galois_check, twist_comodule_algebra,
                     verify_comodule_algebra)
from .homrep import (HomComodule, HomModule, NotClosed, RelativeHopfModule, verify_comodule, verify_module,
                     verify_relative_hopf)
from .homstruct import (HomAlgebra, HomHopfAlgebra, NotAnAutomorphism, twist_hopf, verify_algebra,
                        verify_hopf)
from .integrals import (ImageNotInCoinvariants, SectionFails, check_integral, check_section, lambda_section,
                        lemma42_item4, solve_total_integral, trace_map)

OK, FAILED, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(report, out: str | None = None) -> None:
    text = io.dumps(report)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load(path: str, kind: type):
    obj = io.load(path)
    if not isinstance(obj, kind):
        raise UsageError(f"{path}: expected a {kind.__name__} file")
    return obj


def _failure(name: str, message: str, **extra) -> dict:
    return {"ok": False, "error": name, "message": message, **extra}


# ---------------------------------------------------------------------------
# commands

def cmd_verify(args) -> int:
    x = io.load(args.file)
    if isinstance(x, HomHopfAlgebra):
        rep = verify_hopf(x)
    elif isinstance(x, HomAlgebra):
        rep = verify_algebra(x)
    elif isinstance(x, ComoduleAlgebra):
        rep = verify_hopf(x.hopf).extend(verify_comodule_algebra(x))
    elif isinstance(x, RelativeHopfModule):
        rep = verify_relative_hopf(x, io.load_over(args.file))
    elif isinstance(x, HomModule):
        rep = verify_module(x)
    elif isinstance(x, HomComodule):
        rep = verify_comodule(x)
    else:
        raise UsageError(f"{args.file}: nothing to verify in a bare matrix")
    _emit(rep.to_json())
    return OK if rep.passed else FAILED


def cmd_twist(args) -> int:
    if args.what == "hopf":
        h = _load(args.file, HomHopfAlgebra)
        if args.auto is None:
            raise UsageError("twist hopf needs --auto")
        try:
            out = twist_hopf(h, io.load_matrix(args.auto, h.field))
        except NotAnAutomorphism as exc:
            _emit(_failure("NotAnAutomorphism", str(exc), property=exc.property))
            return FAILED
    else:
        ca = _load(args.file, ComoduleAlgebra)
        if args.alpha is None or args.beta is None:
            raise UsageError("twist comodalg needs --alpha and --beta")
        alpha = io.load_matrix(args.alpha, ca.field)
        beta = io.load_matrix(args.beta, ca.field)
        try:
            out = twist_comodule_algebra(ca, alpha, beta)
        except NotCompatible as exc:
            _emit(_failure("NotCompatible", str(exc)))
            return FAILED
    _emit(io.to_json(out), args.output)
    return OK


def _checked(ca: ComoduleAlgebra):
    rep = verify_hopf(ca.hopf).extend(verify_comodule_algebra(ca))
    if not rep.passed:
        _emit(rep.to_json())
        return None
    return ca


def cmd_coinv(args) -> int:
    ca = _checked(_load(args.file, ComoduleAlgebra))
    if ca is None:
        return FAILED
    B = ca.coinvariants
    try:
        b = io.algebra_to_json(ca.coinvariant_algebra)
    except NotClosed as exc:
        _emit(_failure("NotClosed", str(exc), column=exc.column))
        return FAILED
    _emit({"dim_A": ca.dim, "dim_B": B.dim, "basis": [[ca.field.format(x) for x in B.basis.col(j).vector()]
                                                      for j in range(B.dim)], "algebra": b})
    return OK


def cmd_galois(args) -> int:
    ca = _checked(_load(args.file, ComoduleAlgebra))
    if ca is None:
        return FAILED
    cert = galois_check(ca)
    out = cert.to_json()
    if not args.inverse:
        out.pop("inverse", None)
    _emit(out)
    return OK


def cmd_integral(args) -> int:
    ca = _checked(_load(args.file, ComoduleAlgebra))
    if ca is None:
        return FAILED
    phi = solve_total_integral(ca)
    _emit({"total_integral": phi.to_json() if phi is not None else "none"})
    return OK


def cmd_lemma42(args) -> int:
    ca = _checked(_load(args.file, ComoduleAlgebra))
    if ca is None:
        return FAILED
    _emit(lemma42_item4(ca, samples=args.samples).to_json())
    return OK


def _integral_arg(ca: ComoduleAlgebra, path: str):
    phi = check_integral(ca, io.load_matrix(path, ca.field))
    if not phi.total:
        _emit(_failure("NotTotalIntegral", "the supplied phi is not a total integral", **phi.to_json()))
        return None
    return phi


def cmd_trace(args) -> int:
    ca = _checked(_load(args.file, ComoduleAlgebra))
    if ca is None:
        return FAILED
    phi = _integral_arg(ca, args.phi)
    if phi is None:
        return FAILED
    try:
        t = trace_map(ca, phi)
    except ImageNotInCoinvariants as exc:
        _emit(_failure("ImageNotInCoinvariants", str(exc), column=exc.column))
        return FAILED
    _emit({"trace": t.to_strings(), "image_in_B": True})
    return OK


def cmd_section(args) -> int:
    ca = _checked(_load(args.file, ComoduleAlgebra))
    if ca is None:
        return FAILED
    phi = _integral_arg(ca, args.phi)
    if phi is None:
        return FAILED
    lam = lambda_section(ca, phi)
    try:
        check_section(ca, lam)
    except SectionFails as exc:
        _emit(_failure("SectionFails", exc.which, column=exc.column, section=lam.to_strings()))
        return FAILED
    _emit({"section": lam.to_strings(), "splits_coaction": True, "colinear": True})
    return OK


def _dir_objects(path: str | None, kind: type):
    if path is None:
        return None
    files = sorted(Path(path).glob("*.json"))
    out = []
    for f in files:
        x = io.load(f)
        if not isinstance(x, kind):
            raise UsageError(f"{f}: expected a {kind.__name__}")
        out.append((f.stem, x))
    return out


def cmd_equiv(args) -> int:
    ca = _checked(_load(args.file, ComoduleAlgebra))
    if ca is None:
        return FAILED
    modules = _dir_objects(args.modules, HomModule)
    hopf_modules = _dir_objects(args.hopfmodules, RelativeHopfModule)
    for name, m in modules or []:
        rep = verify_module(m)
        if not rep.passed:
            _emit(rep.to_json())
            return FAILED
    for name, n in hopf_modules or []:
        rep = verify_relative_hopf(n, ca)
        if not rep.passed:
            _emit(rep.to_json())
            return FAILED
    _emit(equivalence_report(ca, modules, hopf_modules))
    return OK


def cmd_example(args) -> int:
    F = FieldSpec.from_name(args.field)
    if args.name == "sweedler":
        x = sweedler(F)
    else:
        h = gen_cyclic_twist(args.n, args.s, F) if args.s is not None else gen_cyclic(args.n, F)
        if args.name == "cyclic":
            x = h
        elif args.name == "self-extension":
            x = gen_self_extension(h)
        else:
            base = gen_cyclic_twist(args.m, args.t, F) if args.t is not None else gen_cyclic(args.m, F)
            x = gen_trivial_extension(base.algebra, h)
    _emit(io.to_json(x), args.output)
    return OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="homhopf", description="Verify and compute with monoidal Hom-Hopf algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify", help="run the axiom checks for any structure file")
    s.add_argument("file")
    s.set_defaults(run=cmd_verify)

    s = sub.add_parser("twist", help="twist a classical Hopf algebra or comodule algebra")
    s.add_argument("what", choices=["hopf", "comodalg"])
    s.add_argument("file")
    s.add_argument("--auto", help="matrix file of a bialgebra automorphism")
    s.add_argument("--alpha", help="matrix file of the Hopf algebra automorphism")
    s.add_argument("--beta", help="matrix file of the algebra automorphism")
    s.add_argument("-o", "--output")
    s.set_defaults(run=cmd_twist)

    for name, fn, helptext in [("coinv", cmd_coinv, "coinvariant subalgebra B"),
                               ("galois", cmd_galois, "Galois certificate"),
                               ("integral", cmd_integral, "canonical total integral"),
                               ("lemma42", cmd_lemma42, "search for a colinear phi with phi(1) invertible")]:
        s = sub.add_parser(name, help=helptext)
        s.add_argument("file")
        s.set_defaults(run=fn)
        if name == "galois":
            s.add_argument("--inverse", action="store_true", help="include the inverse of can")
        if name == "lemma42":
            s.add_argument("--samples", type=int, default=64)

    for name, fn, helptext in [("trace", cmd_trace, "trace map a -> a0 phi(S(a1))"),
                               ("section", cmd_section, "section of the coaction built from phi")]:
        s = sub.add_parser(name, help=helptext)
        s.add_argument("file")
        s.add_argument("--phi", required=True, help="matrix file of a total integral")
        s.set_defaults(run=fn)

    s = sub.add_parser("equiv", help="instance-level equivalence report")
    s.add_argument("file")
    s.add_argument("--modules", help="directory of module files over B")
    s.add_argument("--hopfmodules", help="directory of relative Hopf module files")
    s.set_defaults(run=cmd_equiv)

    s = sub.add_parser("example", help="write a generated instance")
    s.add_argument("name", choices=["cyclic", "self-extension", "trivial", "sweedler"])
    s.add_argument("--n", type=int, default=2, help="order of the cyclic group H")
    s.add_argument("--s", type=int, default=None, help="twist g -> g^s of H")
    s.add_argument("--m", type=int, default=2, help="order of the cyclic group algebra A (trivial)")
    s.add_argument("--t", type=int, default=None, help="twist of A (trivial)")
    s.add_argument("--field", default="q", help="gf<p> or q")
    s.add_argument("-o", "--output")
    s.set_defaults(run=cmd_example)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        return args.run(args)
    except (UsageError, io.SchemaError, FieldMismatch, NotCoprime, ValueError) as exc:
        sys.stderr.write(f"homhopf: error: {exc}\n")
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
