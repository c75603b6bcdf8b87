"""Command-line front end: ``k3lattice <command> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import divisibility as dv
from . import fibration as fb
from .constructors import parse_expression
from .discriminant import discriminant_group, p_length
from .lattice import Lattice, LatticeError, determinant, signature
from .overlattice import GlueSpec, glue, orthogonal_complement_basis, primitive_closure
from .report import FAIL, SECTIONS, VerificationReport, format_markdown, format_table, verify_paper
from .roots import root_decomposition, short_vectors
from .supersingular import artin_bound, entries_for, verify_lambda_entry


class InputError(Exception):
    pass


def parse_lattice_file(source: str) -> Lattice:
    """A lattice from a JSON file/string ``{"rank", "gram", "labels"?}`` or an expression."""
    text = source
    path = Path(source)
    if not source.lstrip().startswith("{") and path.suffix == ".json":
        if not path.is_file():
            raise InputError(f"no such file: {source}")
        text = path.read_text()
    if text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON: {exc}") from None
        gram = data.get("gram")
        if not isinstance(gram, list) or any(not isinstance(r, list) for r in gram):
            raise InputError("'gram' must be a list of rows")
        if any(len(r) != len(gram) for r in gram):
            raise InputError("gram rows are ragged or not square")
        if "rank" in data and data["rank"] != len(gram):
            raise InputError(f"declared rank {data['rank']} does not match gram size {len(gram)}")
        if any(not isinstance(x, int) or isinstance(x, bool) for r in gram for x in r):
            raise InputError("gram entries must be integers")
        try:
            return Lattice(tuple(map(tuple, gram)), tuple(data.get("labels", ())))
        except LatticeError as exc:
            raise InputError(str(exc)) from None
    try:
        return parse_expression(text)
    except LatticeError as exc:
        raise InputError(str(exc)) from None


def _fraction_list(text: str) -> list[Fraction]:
    try:
        return [Fraction(x.strip()) for x in text.split(",") if x.strip()]
    except (ValueError, ZeroDivisionError):
        raise InputError(f"cannot parse vector {text!r}") from None


def _int_rows(text: str) -> list[list[int]]:
    try:
        rows = json.loads(text)
    except json.JSONDecodeError:
        rows = [[int(x) for x in r.split(",")] for r in text.split(";")]
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise InputError("vectors must be a list of rows")
    return rows


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else x.numerator
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (int, str, bool)) or x is None:
        return x
    return str(x)


def _lattice_summary(lat: Lattice) -> dict:
    pos, neg, zero = signature(lat)
    return {"rank": lat.rank, "determinant": determinant(lat), "signature": [pos, neg, zero], "even": lat.is_even}


# -- commands -----------------------------------------------------------------

def cmd_info(args) -> tuple[dict, int]:
    return _lattice_summary(parse_lattice_file(args.lattice)), 0


def cmd_disc(args):
    lat = parse_lattice_file(args.lattice)
    data = discriminant_group(lat)
    out = {
        "invariant_factors": list(data.invariant_factors),
        "order": data.order,
        "generators": [list(g.coords) for g in data.generators],
        "q_values": list(data.qvalues) if lat.is_even else None,
    }
    if args.p:
        out[f"length_{args.p}"] = p_length(data, args.p)
    return out, 0


def cmd_glue(args):
    lat = parse_lattice_file(args.lattice)
    vecs = [_fraction_list(v) for v in args.vector]
    res = glue(GlueSpec(lat, tuple(lat.vector(v) for v in vecs)))
    out = _lattice_summary(res.lattice)
    out.update({"index": res.index, "gram": [list(r) for r in res.lattice.gram], "basis": res.basis})
    return out, 0


def cmd_closure(args):
    lat = parse_lattice_file(args.lattice)
    res = primitive_closure(lat, _int_rows(args.vectors))
    return {"index": res.index, "closure_basis": res.closure_basis,
            "closure": _lattice_summary(res.closure), "complement": _lattice_summary(res.complement)}, 0


def cmd_complement(args):
    lat = parse_lattice_file(args.lattice)
    basis = orthogonal_complement_basis(lat, _int_rows(args.vectors))
    from .lattice import change_basis
    comp = change_basis(lat, basis) if basis else Lattice(())
    out = _lattice_summary(comp)
    out["basis"] = basis
    return out, 0


def cmd_roots(args):
    lat = parse_lattice_file(args.lattice)
    if args.norm != -2:
        vecs = short_vectors(lat, args.norm, workers=args.workers)
        out = {"norm": args.norm, "count": len(vecs)}
        if args.dump:
            out["vectors"] = vecs
        return out, 0
    rep = root_decomposition(lat, workers=args.workers)
    out = {"norm": -2, "count": rep.count, "type": rep.ade_string}
    if args.dump:
        out["vectors"] = list(rep.vectors)
    return out, 0


def cmd_ledger(args):
    return dv.cohomology_ledger(args.n).as_dict(), 0


def cmd_milnor(args):
    d = dv.local_jacobian_dimension(args.poly, truncation=args.truncation)
    return {"poly": args.poly, "dimension": d if isinstance(d, int) else "Infinite"}, 0


def _load_model(path: str) -> fb.FibrationModel:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read fibration file: {exc}") from None
    return fb.model_from_dict(data)


def cmd_fib(args):
    if args.fib_cmd == "gap":
        res = fb.section_gap_analysis(args.m)
        return {
            "m": res.m, "n": res.n, "verdict": res.verdict, "section_product": res.section_product,
            "configurations": [
                {"class": str(cls), "witness": str(r.witness), "certificate": r.certificate_holds}
                for cls, r in res.configurations
            ],
        }, 0
    model = _load_model(args.model)
    base = {"assumptions": list(model.assumptions)}
    if args.fib_cmd == "solve":
        cls = fb.solve_cusp_class(model)
        pair = fb.cusp_pairings(model, cls) if not model.cusp_is_generator else {}
        base.update({"xi": str(cls), "xi_square": pair.get(fb.CUSP, -2), "coefficients": cls.combination})
        return base, 0
    if args.fib_cmd == "divis":
        d = fb.parse_divisor(args.cls)
        w = fb.parse_divisor(args.witness) if args.witness else None
        r = fb.check_divisor_divisibility(model, d, n=args.n, witness=w)
        base.update({"divisible": r.divisible, "n": r.n, "witness": str(r.witness) if r.witness else None,
                     "d_square": r.d_square, "witness_square": r.witness_square,
                     "certificate_holds": r.certificate_holds if r.divisible else None})
        return base, 0
    h = fb.hyperplane_degrees(model)
    base.update({"h_square": h.h_square, "degrees": h.degrees})
    return base, 0


def cmd_lambda(args):
    entries = entries_for(args.sigma)
    rows, code = [], 0
    for e in entries:
        rep = verify_lambda_entry(e)
        code = code or (0 if rep.passed else 1)
        rows.append({"key": e.key, "expression": e.expression, "passed": rep.passed,
                     "checks": {c.name: c.passed for c in rep.checks}})
    return {"sigma": args.sigma, "entries": rows,
            "note": "invariant checks only; uniqueness of the lattice is assumed, not computed"}, code


def cmd_bound(args):
    return {"l3": args.l3, "rank": args.rank, "sigma_max": artin_bound(args.l3, args.rank, args.ambient)}, 0


def cmd_verify(args):
    if args.section is not None and args.section not in SECTIONS:
        raise InputError(f"unknown section {args.section!r}; choose from {', '.join(SECTIONS)}")
    report = verify_paper(args.section)
    return report, report.exit_code


# -- plumbing -----------------------------------------------------------------

def _global_flags(parser, suppress: bool) -> None:
    default = argparse.SUPPRESS if suppress else False
    g = parser.add_mutually_exclusive_group()
    g.add_argument("--json", action="store_true", default=default, help="emit JSON")
    g.add_argument("--md", action="store_true", default=default, help="emit markdown")
    parser.add_argument("--quiet", action="store_true", default=default, help="print nothing; exit code only")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="k3lattice", description="Exact lattice and fibration checks.")
    _global_flags(p, suppress=False)
    sub = p.add_subparsers(dest="cmd", required=True)

    def add(name, func, help_text):
        sp = sub.add_parser(name, help=help_text)
        _global_flags(sp, suppress=True)
        sp.set_defaults(func=func)
        return sp

    for name, func, h in (("info", cmd_info, "rank, determinant, signature"),
                          ("disc", cmd_disc, "discriminant group")):
        sp = add(name, func, h)
        sp.add_argument("lattice", help="JSON file, JSON string or expression like 'U(3)+6A2'")
        if name == "disc":
            sp.add_argument("--p", type=int, default=3, help="prime for the length (default 3)")
    sp = add("glue", cmd_glue, "overlattice from glue vectors")
    sp.add_argument("lattice")
    sp.add_argument("--vector", action="append", required=True, help="comma-separated rationals")
    for name, func in (("closure", cmd_closure), ("complement", cmd_complement)):
        sp = add(name, func, f"primitive {name}" if name == "closure" else "orthogonal complement")
        sp.add_argument("lattice")
        sp.add_argument("--vectors", required=True, help="JSON rows or '1,0;0,1'")
    sp = add("roots", cmd_roots, "short vectors and root system type")
    sp.add_argument("lattice")
    sp.add_argument("--norm", type=int, default=-2)
    sp.add_argument("--dump", action="store_true", help="list the vectors")
    sp.add_argument("--workers", type=int, default=1)
    sp = add("ledger", cmd_ledger, "cohomology ledger of the triple cover")
    sp.add_argument("--n", type=int, required=True)
    sp = add("milnor", cmd_milnor, "Jacobian quotient dimension over F3")
    sp.add_argument("--poly", required=True)
    sp.add_argument("--truncation", type=int, default=12)
    sp = add("fib", cmd_fib, "fibration models")
    fsub = sp.add_subparsers(dest="fib_cmd", required=True)
    for name in ("solve", "divis", "hdeg"):
        f = fsub.add_parser(name)
        _global_flags(f, suppress=True)
        f.add_argument("model", help="fibration JSON file")
        if name == "divis":
            f.add_argument("--class", dest="cls", required=True, help="e.g. '2*g1.C12 + g1.C11'")
            f.add_argument("--n", type=int, default=3)
            f.add_argument("--witness")
    f = fsub.add_parser("gap")
    _global_flags(f, suppress=True)
    f.add_argument("--m", type=int, required=True)
    sp = add("lambda", cmd_lambda, "shipped decompositions for an Artin invariant")
    sp.add_argument("--sigma", type=int, required=True)
    sp = add("bound", cmd_bound, "Artin invariant bound")
    sp.add_argument("--l3", type=int, required=True)
    sp.add_argument("--rank", type=int, required=True)
    sp.add_argument("--ambient", type=int, default=22)
    sp = add("verify-paper", cmd_verify, "run every golden check")
    sp.add_argument("--section", help=f"one of {', '.join(SECTIONS)}")
    return p


def _render_text(payload: dict) -> str:
    lines = []
    for k, v in payload.items():
        if isinstance(v, (list, dict)):
            v = json.dumps(_jsonable(v))
        lines.append(f"{k}: {_jsonable(v) if not isinstance(v, str) else v}")
    return "\n".join(lines)


def _render_md(payload: dict) -> str:
    lines = ["| field | value |", "|---|---|"]
    for k, v in payload.items():
        val = json.dumps(_jsonable(v)) if isinstance(v, (list, dict)) else str(_jsonable(v))
        val = val.replace("|", "\\|")
        lines.append(f"| {k} | {val} |")
    return "\n".join(lines)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        result, code = args.func(args)
    except (InputError, LatticeError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.quiet:
        return code
    if isinstance(result, VerificationReport):
        if args.json:
            print(json.dumps(result.as_dict(), indent=2))
        elif args.md:
            print(format_markdown(result))
        else:
            print(format_table(result))
        if code and not args.json:
            fails = [i.key for i in result.items if i.status == FAIL]
            print("failed: " + ", ".join(fails), file=sys.stderr)
        return code
    if args.json:
        print(json.dumps(_jsonable(result), indent=2))
    elif args.md:
        print(_render_md(result))
    else:
        print(_render_text(result))
    return code


if __name__ == "__main__":
    sys.exit(main())
