"""Command-line front end.  Results go to stdout as JSON.

Exit codes: 0 on success, 1 on a domain error, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import acceptance, block_getzler as bg, dl_params, gln_blocks, steinberg_sl2
from .errors import DomainError
from .hecke import HeckeElement, center_element, specialize_q, theta
from .root_weyl import available_data, load_datum, reduced_word, wa_length, wa_multiply


class UsageError(Exception):
    pass


# -- JSON helpers ------------------------------------------------------------------

def _plain(obj):
    """Make ``obj`` JSON-safe: Fractions become strings, tuple keys become strings."""
    if isinstance(obj, dict):
        return {(k if isinstance(k, str) else _key(k)): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, Fraction):
        return str(obj) if obj.denominator != 1 else int(obj)
    if isinstance(obj, (bool, int, float, str)) or obj is None:
        return obj
    if hasattr(obj, "to_json"):
        return _plain(obj.to_json())
    return str(obj)


def _key(k) -> str:
    if isinstance(k, tuple):
        return ",".join(str(x) for x in k)
    return str(k)


def dumps(obj) -> str:
    return json.dumps(_plain(obj), sort_keys=True, ensure_ascii=False, indent=2)


def _read_json(arg):
    """An inline JSON string, ``-`` for stdin, or a file path."""
    if arg is None:
        raise UsageError("missing JSON input (--json FILE|- or an inline value)")
    if arg == "-":
        text = sys.stdin.read()
    elif arg.lstrip().startswith(("{", "[")):
        text = arg
    else:
        path = Path(arg)
        if not path.exists():
            raise UsageError(f"no such file: {arg}")
        text = path.read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"invalid JSON: {exc}") from exc


def _q_value(raw):
    if raw is None or raw == "generic":
        return None
    return raw


def _element(datum, spec):
    if not isinstance(spec, dict):
        raise UsageError("an element is {\"lambda\": [...], \"word\": [...]}")
    return datum.from_word(spec.get("lambda"), spec.get("word", ()))


def _hecke(datum, spec):
    """Either a HeckeElement JSON ({"terms": [...]}) or a single basis element."""
    if isinstance(spec, dict) and "terms" in spec:
        return HeckeElement.from_json(dict(spec, datum=datum.name), datum)
    return HeckeElement.T(_element(datum, spec))


# -- subcommands ---------------------------------------------------------------------

def cmd_weyl(args):
    datum = load_datum(args.datum, args.data)
    if args.action == "datum":
        return dict(datum.to_json(), cartan_matrix=[list(r) for r in datum.cartan_matrix],
                    positive_roots=[list(r) for r in datum.positive_roots],
                    weyl_order=len(datum.weyl_elements),
                    omega_generators=[om.to_json() for om in datum.omega_generators])
    if args.action == "list":
        return {"data": available_data(args.data)}
    x = _element(datum, _read_json(args.element))
    if args.action == "length":
        return {"length": wa_length(x)}
    if args.action == "reduced-word":
        om, word = reduced_word(x)
        return {"omega": om.to_json(), "word": list(word), "length": len(word)}
    if args.action == "multiply":
        y = _element(datum, _read_json(args.other))
        z = wa_multiply(x, y)
        return {"product": z.to_json(), "length": wa_length(z)}
    raise UsageError(f"unknown weyl action {args.action}")


def cmd_hecke(args):
    datum = load_datum(args.datum, args.data)
    if args.action == "mul":
        a = _hecke(datum, _read_json(args.left))
        b = _hecke(datum, _read_json(args.right))
        return (a * b).to_json()
    if args.action == "theta":
        return theta(datum, _read_json(args.lam)).to_json()
    if args.action == "center":
        return center_element(datum, _read_json(args.lam)).to_json()
    if args.action == "specialize":
        q = _q_value(args.q)
        if q is None:
            raise UsageError("specialize needs --q VALUE")
        h = _hecke(datum, _read_json(args.json))
        return specialize_q(h, q=q).to_json()
    raise UsageError(f"unknown hecke action {args.action}")


def cmd_hh(args):
    if args.action == "dg":
        spec = bg.DgAlgebraSpec.from_json(_read_json(args.json)) if args.json else bg.shifted_dual_numbers(args.n)
        table = bg.dg_cohomology(spec, args.window)
        return {"algebra": spec.to_json(), "cohomology": bg.rank_table_json(table)}
    alg = bg.sym_algebra(args.rank, args.window, args.degree)
    q = _q_value(args.q)
    if args.mode == "twisted" and q is None:
        raise UsageError("twisted mode needs --q VALUE")
    cx = bg.build_bg_complex(alg, args.mode, args.N, args.window, q=q)
    out = {"algebra": f"Sym of rank {args.rank} in degree {args.degree}", "N": args.N,
           "window": args.window, "hochschild": bg.hh_ranks(cx)}
    if args.cyclic and args.mode != "twisted":
        out["negative_cyclic"] = bg.cyclic_ranks(cx, "negative")
        out["periodic"] = bg.cyclic_ranks(cx, "periodic")
    return out


def cmd_steinberg(args):
    return steinberg_sl2.hecke_model_check(args.q_convention, strict=False, directory=args.data)


def cmd_params(args):
    if args.action == "sl2-table":
        points = [(args.lam, args.q)] if args.lam is not None else dl_params.sl2_reference_points()
        if args.lam is not None and _q_value(args.q) is None:
            raise UsageError("sl2-table with --lambda needs --q VALUE")
        return {"rows": [r.to_json() for lam, q in points for r in dl_params.sl2_table(lam, q)]}
    q = _q_value(args.q)
    if args.json:
        raw = _read_json(args.json)
        eigen = {(e["orbit"], int(e["k"])): int(e["multiplicity"]) for e in raw}
        params = dl_params.enumerate_gln(q=q, eigenvalues=eigen)
    else:
        if args.n is None:
            raise UsageError("params enumerate needs --n or --json")
        params = dl_params.enumerate_gln(args.n, q=q, eigenvalue_budget=args.budget)
    return {"count": len(params), "parameters": [p.to_json() for p in params]}


def cmd_blocks(args):
    if args.action == "decompose":
        nu = gln_blocks.InertialTypeSpec.from_json(_read_json(args.json))
        return gln_blocks.block_decompose(nu).to_json()
    if args.action == "enumerate":
        if args.n is None:
            raise UsageError("blocks enumerate needs --n")
        catalog = _read_json(args.catalog) if args.catalog else [[1, 1]]
        types = gln_blocks.enumerate_types(args.n, catalog)
        return {"count": len(types), "types": [t.to_json() for t in types]}
    if args.action == "embed":
        source = _read_json(args.source)
        target = _read_json(args.target) if args.target else None
        emb = gln_blocks.hecke_embedding(source, target)
        return dict(emb.to_json(), checks=gln_blocks.check_embedding(emb))
    raise UsageError(f"unknown blocks action {args.action}")


def cmd_verify_all(args):
    only = [int(k) for k in args.only.split(",")] if args.only else None
    if only and any(k not in acceptance.CHECKS for k in only):
        raise UsageError(f"--only takes criterion numbers from {sorted(acceptance.CHECKS)}")
    results = acceptance.run_all(only, threads=args.threads)
    print(acceptance.format_table(results), file=sys.stderr)
    report = {"results": [r.to_json() for r in results], "all_pass": all(r.passed for r in results)}
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "acceptance.json").write_text(dumps(report) + "\n")
        (out / "acceptance.txt").write_text(acceptance.format_table(results) + "\n")
    return report


# -- parser --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--data", help="presets directory (default: $HECKE_SPRINGER_DATA, then the bundled one)")
    common.add_argument("--datum", default="SL2", help="root datum name, e.g. SL2, GL3, GL2xGL1")
    common.add_argument("--q", help="a value for q, or 'generic'")
    common.add_argument("--json", help="JSON input: a file, '-' for stdin, or inline")
    common.add_argument("--out", help="directory for output files")
    common.add_argument("--threads", type=int, default=1)

    parser = argparse.ArgumentParser(prog="hecke-springer", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    parser.subcommands = sub.choices

    p = sub.add_parser("weyl", parents=[common], help="extended affine Weyl group")
    p.add_argument("action", choices=["length", "reduced-word", "multiply", "datum", "list"])
    p.add_argument("--element", help='{"lambda": [...], "word": [...]}')
    p.add_argument("--other", help="right factor for multiply")
    p.set_defaults(func=cmd_weyl)

    p = sub.add_parser("hecke", parents=[common], help="affine Hecke algebra")
    p.add_argument("action", choices=["mul", "theta", "center", "specialize"])
    p.add_argument("--left")
    p.add_argument("--right")
    p.add_argument("--lambda", dest="lam", help="cocharacter as a JSON list")
    p.set_defaults(func=cmd_hecke)

    p = sub.add_parser("hh", parents=[common], help="Hochschild homology")
    p.add_argument("action", choices=["bg", "dg"])
    p.add_argument("--mode", choices=list(bg.MODES), default="plain")
    p.add_argument("--rank", type=int, default=1)
    p.add_argument("--degree", type=int, default=2)
    p.add_argument("--N", type=int, default=8)
    p.add_argument("--window", type=int, default=6)
    p.add_argument("--n", default="0", help="dg example: d(et) = n t")
    p.add_argument("--cyclic", action="store_true", help="also report negative cyclic and periodic ranks")
    p.set_defaults(func=cmd_hh)

    p = sub.add_parser("steinberg", parents=[common], help="SL2 localization model")
    p.add_argument("action", choices=["verify-sl2"])
    p.add_argument("--q-convention", choices=["a", "b"], default=None)
    p.set_defaults(func=cmd_steinberg)

    p = sub.add_parser("params", parents=[common], help="Deligne-Langlands parameters")
    p.add_argument("action", choices=["enumerate", "sl2-table"])
    p.add_argument("--n", type=int)
    p.add_argument("--budget", type=int, help="maximal number of eigenvalue q-orbits")
    p.add_argument("--lambda", dest="lam", help="SL2 eigenvalue, e.g. 'sqrt(2)'")
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("blocks", parents=[common], help="GL_n blocks")
    p.add_argument("action", choices=["decompose", "enumerate", "embed"])
    p.add_argument("--n", type=int)
    p.add_argument("--catalog", help="JSON list of [d, r] pairs")
    p.add_argument("--source", help="JSON composition")
    p.add_argument("--target", help="JSON composition (default: one block)")
    p.set_defaults(func=cmd_blocks)

    p = sub.add_parser("verify-all", parents=[common], help="run every acceptance check")
    p.add_argument("--only", help="comma-separated criterion numbers")
    p.set_defaults(func=cmd_verify_all)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args, extra = parser.parse_known_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if extra:
        sub = parser.subcommands[args.command]
        print(sub.format_help(), file=sys.stderr)
        print(f"error: unrecognized arguments: {' '.join(extra)}", file=sys.stderr)
        return 2
    if args.threads < 1:
        parser.print_usage(sys.stderr)
        print("error: --threads must be positive", file=sys.stderr)
        return 2
    try:
        result = args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(dumps({"error": type(exc).__name__, "message": str(exc)}))
        return 1
    except (ValueError, KeyError, TypeError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    print(dumps(result))
    if args.command == "verify-all" and not result["all_pass"]:
        return 1
    return 0


def main():
    sys.exit(run())
