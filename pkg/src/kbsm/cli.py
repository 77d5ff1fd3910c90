"""Command-line front end: ``kbsm <subcommand> ...``.

Exit status is 0 on success, 1 for domain errors (bad diagrams, parse
errors, relations out of range, failed checks) and 2 for usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Callable, Optional, Sequence

from . import arrowdiag as ad
from . import bracket as br
from .certificates import verify_certificate, write_certificate
from .chebyshev import Basis, chebyshev_S
from .grammar import parse, parse_laurent, parse_poly  # noqa: F401
from .modpres import (
    manifold_catalog,
    marche_type_check,
    normal_form,
    rank_over_QA,
    relation,
    split_obstruction,
    torsion_witness,
)


class DomainError(Exception):
    pass


def _emit(args, data: dict, lines: Sequence[str]) -> None:
    if args.json:
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        for line in lines:
            print(line)


def _banner(basis: Basis) -> str:
    return f"# {basis.value} basis"


def _load_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise DomainError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise DomainError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}") from None


# -- subcommands ---------------------------------------------------------------


def cmd_bracket(args) -> int:
    d = br.PlanarDiagram.from_dict(_load_json(args.diagram))
    if args.method == "statesum":
        value = br.bracket_statesum(d, workers=args.threads)
    elif args.method == "recursive":
        value = br.bracket_recursive(d)
    else:
        value = br.bracket_statesum(d, workers=args.threads)
        if br.bracket_recursive(d) != value:
            raise DomainError("state sum and recursion disagree")
    _emit(args, {"bracket": str(value), "crossings": d.n_crossings, "method": args.method}, [str(value)])
    return 0


def cmd_cheb(args) -> int:
    s = chebyshev_S(args.n)
    _emit(args, {"n": args.n, "basis": "monomial", "S": str(s)}, [_banner(Basis.MONOMIAL), str(s)])
    return 0


def cmd_relation(args) -> int:
    r = relation(args.n)
    family = "even" if r.eps == 0 else "odd"
    data = {
        "n": r.n,
        "c": str(r.c),
        "d": str(r.d),
        "chebyshev": str(r.expression),
        "monomial": str(r.monomial()),
    }
    _emit(args, data, [
        f"n = {r.n} ({family}; reduces S_{r.n} into S_{r.eps})",
        f"c = {r.c}",
        f"d = {r.d}",
        f"{_banner(Basis.CHEBYSHEV)}: {r.expression}",
        f"{_banner(Basis.MONOMIAL)}: {r.monomial()}",
    ])
    return 0


def cmd_nf(args) -> int:
    nf = normal_form(parse(args.expr))
    lines = [_banner(Basis.CHEBYSHEV), str(nf), f"zero: {'yes' if nf.is_zero() else 'no'}"]
    _emit(args, {**nf.to_dict(), "expression": str(nf), "zero": nf.is_zero()}, lines)
    return 0


def _write(args, data: dict, default: str) -> Optional[Path]:
    target = args.out or default
    if target == "-":
        return None
    return write_certificate(data, target)


def cmd_torsion(args) -> int:
    w = torsion_witness(args.n)
    if w is None:
        r = relation(args.n)
        _emit(args, {"n": args.n, "witness": None},
              [f"n = {args.n}: gcd(c, d) is a unit, no torsion witness ({r.c} ; {r.d})"])
        return 0
    cert = w.to_dict()
    path = _write(args, cert, f"torsion-{args.n}.json")
    lines = [
        f"n = {args.n}: torsion witness",
        f"{_banner(Basis.CHEBYSHEV)}: element = {w.element}",
        f"annihilator = {w.annihilator}",
        "nf(element) != 0, nf(annihilator * element) = 0",
    ]
    if path:
        lines.append(f"certificate written to {path}")
    _emit(args, cert, lines)
    return 0


def cmd_obstruction(args) -> int:
    v = split_obstruction(args.n, args.degree_bound)
    if not v.verify():
        raise DomainError("verdict failed its own re-check")
    cert = v.to_dict()
    path = _write(args, cert, f"obstruction-{args.n}.json")
    lines = [f"n = {args.n}: ideal {v.ideal}", f"verdict: {v.status.value}", f"gcd = {v.gcd}"]
    if v.certificate is not None:
        c = v.certificate
        lines.append(f"mod {c.prime}: both generators divisible by {c.factor}")
    if v.cofactors is not None:
        lines.append(f"cofactors: {v.cofactors[0]} ; {v.cofactors[1]}")
    lines.extend(v.notes)
    if path:
        lines.append(f"certificate written to {path}")
    _emit(args, cert, lines)
    return 0


def cmd_rank(args) -> int:
    if args.bound < 2:
        raise DomainError("--bound must be at least 2")
    rep = rank_over_QA(args.bound)
    lines = [str(rep.rank), f"free: {', '.join(rep.free_generators)}; quotient basis: {', '.join(rep.quotient_basis)}"]
    for e in rep.entries:
        lines.append(f"S_{e.n} = ({e.ratio.numerator})/({e.ratio.denominator}) * S_{e.eps}")
    _emit(args, rep.to_dict(), lines)
    return 0


def cmd_catalog(args) -> int:
    profiles = manifold_catalog(args.k_max)
    lines = []
    for p in profiles:
        lines.append(f"{p.name}: d = {p.d}; torsion {p.torsion_family}")
        for r in p.torsion:
            ok = "ok" if r.identity_verified else "FAILED"
            lines.append(f"  k = {r.k}: {r.annihilator} = -A^{r.k}(A^{r.k} - A^-{r.k}) [{ok}], type k = {r.marche_type}")
    _emit(args, {"profiles": [p.to_dict() for p in profiles]}, lines)
    return 0


def cmd_typecheck(args) -> int:
    ann = parse_laurent(args.expr)
    k = marche_type_check(ann, args.k_bound, args.m_bound)
    bounds = f"k <= {args.k_bound}, m <= {args.m_bound}"
    line = f"k = {k}" if k is not None else f"NotOfType ({bounds})"
    _emit(args, {"annihilator": str(ann), "k": k, "k_bound": args.k_bound, "m_bound": args.m_bound}, [line])
    return 0


def cmd_verify(args) -> int:
    ok = verify_certificate(_load_json(args.certificate))
    _emit(args, {"verified": ok}, ["verified" if ok else "NOT verified"])
    return 0 if ok else 1


def cmd_arrow(args) -> int:
    if args.arrow_cmd == "generator":
        d = ad.generator(args.name)
        _emit(args, d.to_dict(), [d.to_json()])
        return 0
    d = ad.ArrowDiagram.from_dict(_load_json(args.diagram))
    if args.arrow_cmd == "validate":
        problems = ad.validate(d)
        _emit(args, {"valid": not problems, "violations": problems}, problems or ["valid"])
        return 1 if problems else 0
    if args.arrow_cmd == "parity":
        par = ad.arrow_count_parity(d)
        _emit(args, {"parity": list(par)}, [" ".join(map(str, par)) or "(no components)"])
        return 0
    move = ad.MoveSpec.from_dict(json.loads(args.move))
    out = ad.apply_move(d, move)
    if args.out:
        Path(args.out).write_text(out.to_json() + "\n")
    _emit(args, out.to_dict(), [out.to_json()])
    return 0


def cmd_selftest(args) -> int:
    from .acceptance import run_all

    results = run_all()
    _emit(
        args,
        {"results": [{"criterion": r.number, "title": r.title, "passed": r.passed, "detail": r.detail}
                     for r in results]},
        [r.line() for r in results],
    )
    return 0 if all(r.passed for r in results) else 1


# -- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    p = argparse.ArgumentParser(prog="kbsm", description="Skein-module computations for RP^3 # RP^3.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name: str, fn: Callable, help: str, flags: bool = True) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, parents=[common] if flags else [], help=help)
        sp.set_defaults(func=fn)
        return sp

    sp = add("bracket", cmd_bracket, "Kauffman bracket of a planar diagram JSON file")
    sp.add_argument("diagram")
    sp.add_argument("--method", choices=("statesum", "recursive", "both"), default="both")
    sp.add_argument("--threads", type=int, default=1, help="worker processes for the state sum (default 1)")

    sp = add("cheb", cmd_cheb, "print S_n(t)")
    sp.add_argument("n", type=int)

    sp = add("relation", cmd_relation, "print the n-th relation")
    sp.add_argument("n", type=int)

    sp = add("nf", cmd_nf, "normal form of an expression")
    sp.add_argument("expr")

    for name, fn, text in (("torsion", cmd_torsion, "torsion witness at n"),
                           ("obstruction", cmd_obstruction, "splitting obstruction at n")):
        sp = add(name, fn, text)
        sp.add_argument("n", type=int)
        sp.add_argument("--out", help=f"certificate path (default {name}-<n>.json, '-' for none)")
        if name == "obstruction":
            sp.add_argument("--degree-bound", type=int, default=None)

    sp = add("rank", cmd_rank, "rank over Q(A)")
    sp.add_argument("--bound", type=int, default=30, help="largest n in the report (default 30)")

    sp = add("catalog", cmd_catalog, "profiles of known manifolds")
    sp.add_argument("--k-max", type=int, default=12)

    sp = add("typecheck", cmd_typecheck, "is an annihilator of (A^k - A^-k)-type?")
    sp.add_argument("expr")
    sp.add_argument("--k-bound", type=int, default=64)
    sp.add_argument("--m-bound", type=int, default=4)

    sp = add("verify", cmd_verify, "re-verify a certificate file")
    sp.add_argument("certificate")

    # --json lives on the arrow sub-subcommands only
    sp = add("arrow", cmd_arrow, "arrow-diagram tools", flags=False)
    asub = sp.add_subparsers(dest="arrow_cmd", required=True)
    a = asub.add_parser("validate", parents=[common])
    a.add_argument("diagram")
    a = asub.add_parser("parity", parents=[common])
    a.add_argument("diagram")
    a = asub.add_parser("apply", parents=[common])
    a.add_argument("diagram")
    a.add_argument("move", help='move as JSON, e.g. \'{"kind": "ARROW+", "strand": 0, "pos": 0}\'')
    a.add_argument("--out")
    a = asub.add_parser("generator", parents=[common])
    a.add_argument("name", choices=ad.GENERATORS)

    add("selftest", cmd_selftest, "run the acceptance checks")
    return p


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Run one command; returns the exit status (argparse exits with 2 on usage errors)."""
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, ValueError, ArithmeticError) as exc:
        # ParseError, DiagramError, PatternMismatch and BasisError are ValueErrors
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except KeyError as exc:
        print(f"error: missing field {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc.filename}: {exc.strerror}", file=sys.stderr)
        return 1


main = run


if __name__ == "__main__":
    sys.exit(main())
