"""Command-line surface tying the pipeline together.

Exit codes: 0 on success, 1 when a requested verification fails, 2 on input
or configuration errors.  All outputs are deterministic: identical inputs
produce byte-identical files.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .algebra import ConfigurationError, FreeAlgebra, ParseError
from .free_module import FreeModule, normalize_vector
from .groebner import complete
from .reduction import ReducerSet, TruncatedContext, normal_form
from .resolution import (ModulePresentation, Resolution, ext_chart,
                         resolution_from_json, resolve)
from .steenrod import adem_relations, steenrod_algebra, steenrod_context
from .syzygy import SyzygyProblem, lift_syzygies
from .oracle import verify_resolution

PRESETS = ("steenrod2",)


class CliError(Exception):
    """Input/configuration problem; maps to exit code 2."""


def _load_algebra_spec(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(f"cannot read algebra spec {path}: {exc}") from exc


def build_context(args, needed_degree: int | None = None) -> TruncatedContext:
    """Context from --preset or an algebra spec file; relations are completed
    to the working degree."""
    k = getattr(args, "max_degree", None)
    if k is None:
        k = needed_degree
    if k is None:
        raise CliError("a truncation degree is required (-k/--max-degree)")
    preset = getattr(args, "preset", None)
    spec = None
    if getattr(args, "algebra", None):
        spec = _load_algebra_spec(args.algebra)
        preset = spec.get("preset", preset)
    if preset is not None:
        if preset != "steenrod2":
            raise CliError(f"unknown preset {preset!r}; available: {PRESETS}")
        if getattr(args, "field", None) not in (None, 2):
            raise CliError("the steenrod2 preset is F2-only")
        return steenrod_context(k)
    if spec is None:
        raise CliError("either --preset or --algebra FILE is required")
    p = getattr(args, "field", None) or int(spec.get("field", 2))
    order = getattr(args, "order", None) or spec.get("order", "left-length-lex")
    try:
        algebra = FreeAlgebra(
            [(g["name"], int(g["degree"])) for g in spec["generators"]],
            p=p, order=order)
        relations = [algebra.parse(s) for s in spec.get("relations", [])]
    except (KeyError, ParseError, ConfigurationError) as exc:
        raise CliError(f"bad algebra spec: {exc}") from exc
    if relations:
        basis = complete(relations, k).basis
    else:
        basis = ReducerSet.empty(algebra)
    return TruncatedContext(basis, k)


def _write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


def _json_text(data: dict) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


# -- subcommands ---------------------------------------------------------------


def _needed_degree(args) -> int:
    """Degree bound for `nf` when -k is absent: parse against the spec's
    fixed table, or bound the preset's Sq-word degrees from the text."""
    spec = None
    preset = getattr(args, "preset", None)
    if getattr(args, "algebra", None):
        spec = _load_algebra_spec(args.algebra)
        preset = spec.get("preset", preset)
    if preset is not None:
        import re
        return max(1, sum(int(n) for n in re.findall(r"Sq(\d+)", args.polynomial)))
    if spec is None:
        raise CliError("either --preset or --algebra FILE is required")
    p = getattr(args, "field", None) or int(spec.get("field", 2))
    order = getattr(args, "order", None) or spec.get("order", "left-length-lex")
    try:
        algebra = FreeAlgebra(
            [(g["name"], int(g["degree"])) for g in spec["generators"]],
            p=p, order=order)
        f = algebra.parse(args.polynomial)
    except (KeyError, ParseError, ConfigurationError) as exc:
        raise CliError(f"cannot parse polynomial: {exc}") from exc
    return max(1, f.degree() or 1)


def cmd_nf(args) -> int:
    if args.max_degree is None:
        args.max_degree = _needed_degree(args)
    ctx = build_context(args)
    algebra = ctx.algebra
    try:
        f = algebra.parse(args.polynomial)
    except ParseError as exc:
        raise CliError(f"cannot parse polynomial: {exc}") from exc
    if args.emit_trace:
        trace: list = []
        r = normal_form(f, ctx.omega, trace=trace)
        fmt = algebra.format_word
        print(_json_text({
            "input": str(f),
            "normal_form": str(r),
            "trace": [{"reducer": i, "u": fmt(u), "v": fmt(v), "coeff": c}
                      for i, u, v, c in trace],
        }), end="")
    else:
        print(normal_form(f, ctx.omega))
    return 0


def cmd_groebner(args) -> int:
    ctx = build_context(args)
    data = {
        "order": ctx.algebra.order.kind,
        "k": ctx.k,
        "basis": [str(g) for g in ctx.omega],
    }
    text = _json_text(data)
    if args.out:
        _write(Path(args.out) / "groebner.json", text)
    else:
        print(text, end="")
    return 0


def cmd_adem(args) -> int:
    if args.max_degree < 2:
        print("", end="")
        return 0
    algebra = steenrod_algebra(args.max_degree)
    for rel in adem_relations(algebra, args.max_degree):
        print(rel.polynomial)
    return 0


def cmd_basis(args) -> int:
    ctx = build_context(args, needed_degree=args.degree)
    from .oracle import reduced_words
    for word in reduced_words(ctx.omega, args.degree):
        print(ctx.algebra.format_word(word))
    return 0


def _load_presentation(args, ctx: TruncatedContext) -> ModulePresentation:
    module_spec = "trivial-K"
    if getattr(args, "job", None):
        try:
            with open(args.job, "r", encoding="utf-8") as fh:
                job = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise CliError(f"cannot read job file: {exc}") from exc
        module_spec = job.get("module", "trivial-K")
    if module_spec == "trivial-K":
        return ModulePresentation.trivial_module()
    try:
        target = FreeModule(ctx.algebra, module_spec["signature"])
        rows = [target.parse(s) for s in module_spec["rows"]]
    except (KeyError, ParseError, ConfigurationError) as exc:
        raise CliError(f"bad module presentation: {exc}") from exc
    return ModulePresentation.cokernel(target, rows, ctx)


def cmd_resolve(args) -> int:
    if args.job:
        try:
            with open(args.job, "r", encoding="utf-8") as fh:
                job = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise CliError(f"cannot read job file: {exc}") from exc
        if args.max_degree is None and "k" in job:
            args.max_degree = int(job["k"])
        if args.s_max is None and "s_max" in job:
            args.s_max = int(job["s_max"])
    if args.s_max is None:
        raise CliError("--s-max is required (or provide it in the job file)")
    ctx = build_context(args)
    presentation = _load_presentation(args, ctx)
    res = resolve(presentation, ctx, args.s_max)
    chart = ext_chart(res)
    out = Path(args.out)
    _write(out / "resolution.json", _json_text(res.to_json_dict()))
    _write(out / "chart.tsv", chart.to_tsv())
    if args.svg:
        _write(out / "chart.svg", chart.to_svg())
    if args.verify:
        report = verify_resolution(res, max_workers=args.threads)
        _write(out / "verify.json", _json_text(report.to_json_dict()))
        if not report.ok:
            print(_json_text(report.to_json_dict()), end="")
            return 1
    return 0


def _load_resolution(path: str) -> Resolution:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        return resolution_from_json(data)
    except (OSError, json.JSONDecodeError, KeyError, ParseError,
            ConfigurationError) as exc:
        raise CliError(f"cannot load resolution {path}: {exc}") from exc


def cmd_verify(args) -> int:
    res = _load_resolution(args.resolution)
    report = verify_resolution(res, max_workers=args.threads)
    print(_json_text(report.to_json_dict()), end="")
    return 0 if report.ok else 1


def cmd_chart(args) -> int:
    res = _load_resolution(args.resolution)
    chart = ext_chart(res)
    if args.out:
        out = Path(args.out)
        _write(out / "chart.tsv", chart.to_tsv())
        if args.svg:
            _write(out / "chart.svg", chart.to_svg())
    else:
        print(chart.to_svg() if args.svg else chart.to_tsv(), end="")
    return 0


def cmd_syzygy(args) -> int:
    ctx = build_context(args)
    try:
        with open(args.rows, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        target = FreeModule(ctx.algebra, data["signature"])
        rows = [normalize_vector(target.parse(s), ctx) for s in data["rows"]]
    except (OSError, json.JSONDecodeError, KeyError, ParseError,
            ConfigurationError) as exc:
        raise CliError(f"cannot read rows file: {exc}") from exc
    rows = [r for r in rows if not r.is_zero()]
    if not rows:
        result = {"source_degrees": [], "generators": []}
    else:
        gens = lift_syzygies(SyzygyProblem(tuple(rows), ctx))
        result = {
            "source_degrees": list(gens.module.degrees),
            "generators": [{"row": str(r), "degree": r.degree(), "provenance": p}
                           for r, p in zip(gens.rows, gens.provenance)],
        }
    text = _json_text(result)
    if args.out:
        _write(Path(args.out) / "syzygy.json", text)
    else:
        print(text, end="")
    return 0


# -- parser ---------------------------------------------------------------------


def _add_algebra_options(sub):
    sub.add_argument("--preset", choices=PRESETS, default=None,
                     help="built-in algebra instance")
    sub.add_argument("--algebra", metavar="FILE", default=None,
                     help="JSON algebra spec {field, generators, relations, order}")
    sub.add_argument("--field", type=int, default=None,
                     help="override the coefficient prime (spec files only)")
    sub.add_argument("--order", default=None,
                     choices=["left-length-lex", "right-length-lex"],
                     help="override the monomial order (spec files only)")
    sub.add_argument("-k", "--max-degree", type=int, default=None,
                     help="internal truncation degree")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ncresolve",
        description="Noncommutative Groebner bases, syzygies, minimal "
                    "resolutions and Ext charts over R/<Omega>.")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("nf", help="normal form of a polynomial")
    _add_algebra_options(p)
    p.add_argument("--emit-trace", action="store_true",
                   help="print a JSON reduction trace instead of the bare result")
    p.add_argument("polynomial")
    p.set_defaults(func=cmd_nf)

    p = subs.add_parser("groebner", help="complete relations to a Groebner basis")
    _add_algebra_options(p)
    p.add_argument("--out", default=None, help="write groebner.json here")
    p.set_defaults(func=cmd_groebner)

    p = subs.add_parser("adem", help="dump Adem relations, one per line")
    p.add_argument("--max-degree", type=int, required=True)
    p.set_defaults(func=cmd_adem)

    p = subs.add_parser("basis", help="reduced monomials of one degree")
    _add_algebra_options(p)
    p.add_argument("--degree", type=int, required=True)
    p.set_defaults(func=cmd_basis)

    p = subs.add_parser("resolve", help="compute a minimal resolution and chart")
    _add_algebra_options(p)
    p.add_argument("--s-max", type=int, default=None, help="homological bound")
    p.add_argument("--job", default=None, help="JSON job spec {module, k, s_max}")
    p.add_argument("--out", default=".", help="output directory")
    p.add_argument("--svg", action="store_true", help="also write chart.svg")
    p.add_argument("--verify", action="store_true",
                   help="run the oracle; nonzero exit on failure")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_resolve)

    p = subs.add_parser("verify", help="audit a stored resolution")
    p.add_argument("--resolution", required=True, help="resolution.json path")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = subs.add_parser("chart", help="render the Ext chart of a resolution")
    p.add_argument("--resolution", required=True)
    p.add_argument("--svg", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_chart)

    p = subs.add_parser("syzygy", help="syzygy generators of module rows")
    _add_algebra_options(p)
    p.add_argument("--rows", required=True,
                   help="JSON file {signature: [...], rows: ['[...]', ...]}")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_syzygy)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(_json_text({"error": str(exc)}), end="", file=sys.stderr)
        return 2
    except (ParseError, ConfigurationError, ValueError) as exc:
        print(_json_text({"error": str(exc)}), end="", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
