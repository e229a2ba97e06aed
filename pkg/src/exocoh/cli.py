"""Command-line interface: ``exocoh`` (or ``python -m exocoh``).

Exit status is 0 on success, 1 when a verification fails or a computation
does not stabilize, and 2 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Callable, Sequence

from . import sl2
from .characters import (
    DecompositionError, StabilizationError, aj_character, aj_weyl_coefficients,
    alternating_aj_identity, lusztig_q, partition_q, weyl_character, weyl_dimension,
)
from .qalg import LaurentPoly
from .rootdatum import RootDatum, RootDatumError, build_root_datum
from .suites import run_suite

DEFAULT_TRUNCATION = 12
FORMATS = ("text", "json", "latex")
CONFIG_KEYS = {
    "rootDatumSpec": "type",
    "truncation": "trunc",
    "outputFormat": "format",
    "lusztigVariable": "lusztig_variable",
}


class UsageError(ValueError):
    """Malformed command-line input (exit status 2)."""


def _parse_weight(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x != "")
    except ValueError:
        raise UsageError(f"not an integer vector: {text!r}") from None


def _datum(spec: str) -> RootDatum:
    if spec.lstrip().startswith("["):
        return build_root_datum(json.loads(spec))
    if spec.endswith(".json"):
        with open(spec, encoding="utf-8") as fh:
            data = json.load(fh)
        return build_root_datum(data)
    return build_root_datum(spec)


def _sort_key(datum: RootDatum, w: Sequence[int]):
    return (datum.pairing_2rhovee(w), tuple(w))


def _poly_out(p: LaurentPoly, fmt: str, var: str = "q") -> Any:
    if fmt == "json":
        return p.to_json()
    if fmt == "latex":
        return p.latex(var)
    return str(p) if var == "q" else str(p).replace("q", var)


def _weight_text(w: Sequence[int]) -> str:
    return ",".join(str(c) for c in w)


def _to_lusztig_variable(p: LaurentPoly) -> LaurentPoly:
    if any(e % 2 for e in p.coeffs):
        raise StabilizationError(f"{p} has odd powers of q and cannot be written in q_L = q^2")
    return LaurentPoly({e // 2: a for e, a in p.coeffs.items()})


def _emit_table(rows: list[tuple[str, Any]], fmt: str, header: tuple[str, str], payload: Any) -> str:
    if fmt == "json":
        return json.dumps(payload, sort_keys=True)
    if fmt == "latex":
        body = " \\\\\n".join(f"{a} & {b}" for a, b in rows)
        return f"\\begin{{array}}{{ll}}\n{header[0]} & {header[1]} \\\\\n\\hline\n{body}\n\\end{{array}}"
    width = max([len(header[0])] + [len(a) for a, _ in rows])
    lines = [f"{header[0]:<{width}}  {header[1]}"]
    lines += [f"{a:<{width}}  {b}" for a, b in rows]
    return "\n".join(lines)


# -- root-datum level commands -----------------------------------------------

def cmd_partition(args) -> int:
    datum = _datum(args.type)
    nu = _parse_weight(args.nu)
    p = partition_q(datum, nu)
    payload = {"nu": list(nu), "poly": p.to_json()}
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    elif args.format == "latex":
        print(f"P_{{{_weight_text(nu)}}}(q) = {p.latex()}")
    else:
        print(p)
    return 0


def cmd_lusztig(args) -> int:
    datum = _datum(args.type)
    lam, mu = _parse_weight(args.lam), _parse_weight(args.mu)
    p = lusztig_q(datum, lam, mu)
    if args.format == "json":
        print(json.dumps({"lambda": list(lam), "mu": list(mu), "poly": p.to_json()}, sort_keys=True))
    elif args.format == "latex":
        print(f"M_{{{_weight_text(lam)}}}^{{{_weight_text(mu)}}}(q) = {p.latex()}")
    else:
        print(p)
    return 0


def cmd_weyl_char(args) -> int:
    datum = _datum(args.type)
    lam = _parse_weight(args.lam)
    ch = weyl_character(datum, lam)
    weights = sorted(ch.terms, key=lambda w: _sort_key(datum, w))
    rows = [(_weight_text(w), str(ch[w].eval_at_one())) for w in weights]
    payload: dict[str, Any] = {
        "lambda": list(lam),
        "weights": [{"weight": list(w), "mult": ch[w].eval_at_one()} for w in weights],
    }
    if args.dim:
        total = sum(ch[w].eval_at_one() for w in weights)
        dim = weyl_dimension(datum, lam)
        payload["dimension"] = dim
        payload["sum_of_multiplicities"] = total
        rows.append(("dim", f"{dim} (sum of multiplicities {total})"))
    print(_emit_table(rows, args.format, ("weight", "mult"), payload))
    if args.dim and payload["dimension"] != payload["sum_of_multiplicities"]:
        print(f"dimension mismatch for {lam}", file=sys.stderr)
        return 1
    return 0


def cmd_aj_char(args) -> int:
    datum = _datum(args.type)
    lam = _parse_weight(args.lam)
    var = "q_L" if args.lusztig_variable else "q"
    convert = _to_lusztig_variable if args.lusztig_variable else (lambda p: p)
    if args.decompose:
        coeffs = aj_weyl_coefficients(datum, lam, args.trunc)
        keys = sorted(coeffs, key=lambda w: _sort_key(datum, w))
        polys = {w: convert(coeffs[w]) for w in keys}
        rows = [(f"chi({_weight_text(w)})", _poly_out(polys[w], "latex" if args.format == "latex" else "text", var))
                for w in keys]
        payload = {"lambda": list(lam), "trunc": args.trunc,
                   "weyl_coefficients": [{"weight": list(w), "poly": polys[w].to_json()} for w in keys]}
        print(_emit_table(rows, args.format, ("character", "coefficient"), payload))
        return 0
    ch = aj_character(datum, lam, args.trunc)
    keys = sorted(ch.terms, key=lambda w: _sort_key(datum, w))
    polys = {w: convert(ch[w]) for w in keys}
    rows = [(_weight_text(w), _poly_out(polys[w], "latex" if args.format == "latex" else "text", var)) for w in keys]
    payload = ch.to_json() if not args.lusztig_variable else {
        "terms": [{"weight": list(w), "poly": polys[w].to_json()} for w in keys], "trunc": args.trunc}
    print(_emit_table(rows, args.format, ("weight", "poly"), payload))
    return 0


def cmd_verify_aj(args) -> int:
    datum = _datum(args.type)
    lam = _parse_weight(args.lam)
    residual = alternating_aj_identity(datum, lam, args.trunc)
    if args.format == "json":
        print(json.dumps({"lambda": list(lam), "trunc": args.trunc,
                          "residual": [{"weight": list(w), "value": v} for w, v in sorted(residual.items())]},
                         sort_keys=True))
    elif residual:
        for w, v in sorted(residual.items()):
            print(f"FAIL chi({_weight_text(w)}) coefficient off by {v}")
    else:
        print(f"PASS alternating sum reproduces chi({_weight_text(lam)}) at truncation {args.trunc}")
    if residual:
        print(f"aj-alternating lambda={_weight_text(lam)}", file=sys.stderr)
        return 1
    return 0


# -- SL2 commands ------------------------------------------------------------

def _object_parts(kind: str, n: int, trunc: int) -> list[sl2.SL2Object]:
    builders: dict[str, Callable[[int, int], Any]] = {
        "costd": sl2.costd, "std": sl2.std, "simple": sl2.simple, "tilting": sl2.tilting,
        "line": sl2.line_bundle, "bar-costd": sl2.bar_costd, "bar-std": sl2.bar_std,
        "mn": sl2.mn_polynomial_model, "true-costd": sl2.true_costd, "true-std": sl2.true_std,
        "psi": lambda m, t: sl2.psi_line_bundle(m, t)[0],
    }
    made = builders[kind](n, trunc)
    parts = list(made) if isinstance(made, tuple) else [made]
    return [p for p in parts if p is not None]


def _object_rows(obj: sl2.SL2Object) -> list[tuple[int, list[int]]]:
    rows = []
    for d in obj.degrees():
        if d <= obj.trunc:
            ws = []
            for w in obj.weights_at(d):
                ws += [w] * obj.points[(d, w)]
            rows.append((d, ws))
    return rows


def cmd_sl2_object(args) -> int:
    parts = _object_parts(args.kind, args.n, args.trunc)
    if args.format == "json":
        print(json.dumps([p.to_json() for p in parts], sort_keys=True))
        return 0
    for p in parts:
        rows = _object_rows(p)
        if args.format == "latex":
            cols = "c" * len(rows)
            degrees = " & ".join(str(d) for d, _ in rows)
            weights = " & ".join(",".join(str(w) for w in ws) for _, ws in rows)
            print(f"% {p.label}, homological degree {p.hom_degree}")
            print(f"\\begin{{array}}{{r|{cols}}}\n\\text{{degree}} & {degrees} \\\\\n\\hline\n"
                  f"\\text{{weights}} & {weights}\n\\end{{array}}")
        else:
            print(f"{p.label}  (homological degree {p.hom_degree}, truncation {p.trunc})")
            for d, ws in rows:
                print(f"  {d:>4}: {' '.join(str(w) for w in ws)}")
    return 0


def cmd_sl2_hom(args) -> int:
    src = _object_parts(args.source_kind, args.m, args.trunc)
    dst = _object_parts(args.target_kind, args.n, args.trunc + max(args.k, 0) + 6)
    if len(src) != 1 or len(dst) != 1:
        raise UsageError("Hom is computed between sheaves, not two-term complexes")
    res = sl2.hom_dim(src[0], dst[0], args.k)
    if args.format == "json":
        print(json.dumps(res.to_json(), sort_keys=True))
    else:
        print(f"dim Hom = {res.dimension}, surjective = {res.surjective}")
    return 0


def cmd_sl2_comp(args) -> int:
    if args.kind == "bar-costd":
        mult = sl2.bar_composition_multiplicities(args.n, args.trunc)
        name = "IC"
    else:
        obj = sl2.costd(args.n, args.trunc) if args.kind == "costd" else sl2.line_bundle(args.n, args.trunc)
        mult = sl2.composition_multiplicities(obj)
        name = "E"
    keys = sorted(mult, key=lambda lt: (lt[1], -abs(lt[0]), -lt[0]))
    rows = [(f"{name}_{label}<{twist}>", str(mult[(label, twist)])) for label, twist in keys]
    payload = [{"label": label, "twist": twist, "mult": mult[(label, twist)]} for label, twist in keys]
    print(_emit_table(rows, args.format, ("factor", "mult"), payload))
    return 0


def cmd_sl2_verify(args) -> int:
    cases = run_suite(args.suite)
    failed = [c for c in cases if not c.ok]
    if args.format == "json":
        print(json.dumps({"suite": args.suite, "cases": len(cases),
                          "failed": [{"case": c.ident, "detail": c.detail} for c in failed]}, sort_keys=True))
    else:
        for c in failed:
            print(f"FAIL {c.ident}: {c.detail}")
        status = "PASS" if not failed else "FAIL"
        print(f"{status} {len(cases) - len(failed)}/{len(cases)} cases" if failed else f"PASS {len(cases)} cases")
    for c in failed:
        print(c.ident, file=sys.stderr)
    return 1 if failed else 0


# -- parser ------------------------------------------------------------------

class _Subparsers:
    """Adds the shared global options to every subcommand parser."""

    def __init__(self, action, common: argparse.ArgumentParser):
        self._action, self._common = action, common

    def add_parser(self, name: str, **kwargs) -> argparse.ArgumentParser:
        return self._action.add_parser(name, parents=[self._common], **kwargs)


def _add_common(p: argparse.ArgumentParser, with_type: bool = True) -> None:
    if with_type:
        p.add_argument("--type", help="root datum: type name, Cartan matrix as JSON, or a .json file")
    p.add_argument("--trunc", type=int, help=f"truncation degree (default {DEFAULT_TRUNCATION})")


def _global_options(parser: argparse.ArgumentParser, default: Any) -> None:
    parser.add_argument("--format", choices=FORMATS, default=default, help="output format (default text)")
    parser.add_argument("--lusztig-variable", action="store_true", default=default,
                        help="write AJ coefficients in q_L = q^2")
    parser.add_argument("--config", default=default, help="JSON file with default settings")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="exocoh", description="Graded characters and SL2 exotic sheaves.")
    _global_options(parser, None)
    # accepted after the subcommand as well; SUPPRESS keeps the top-level value otherwise
    common = argparse.ArgumentParser(add_help=False)
    _global_options(common, argparse.SUPPRESS)
    sub = _Subparsers(parser.add_subparsers(dest="command", required=True), common)

    p = sub.add_parser("partition", help="q-analogue of Kostant's partition function")
    _add_common(p)
    p.add_argument("--nu", required=True, help="element of the root lattice, simple-root coordinates")
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("lusztig", help="Lusztig q-analogue M_lambda^mu (in q_L)")
    _add_common(p)
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--mu", required=True)
    p.set_defaults(func=cmd_lusztig)

    p = sub.add_parser("weyl-char", help="weight multiplicities of H^0(lambda)")
    _add_common(p)
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--dim", action="store_true", help="cross-check against the dimension formula")
    p.set_defaults(func=cmd_weyl_char)

    p = sub.add_parser("aj-char", help="truncated graded character of A_lambda")
    _add_common(p)
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--decompose", action="store_true", help="print coefficients in the Weyl basis")
    p.set_defaults(func=cmd_aj_char)

    p = sub.add_parser("verify", help="character identities")
    vsub = _Subparsers(p.add_subparsers(dest="identity", required=True), common)
    q = vsub.add_parser("aj-alternating", help="alternating sum of A characters at q = 1")
    _add_common(q)
    q.add_argument("--lambda", dest="lam", required=True)
    q.set_defaults(func=cmd_verify_aj)

    p = sub.add_parser("sl2", help="explicit SL2 models")
    ssub = _Subparsers(p.add_subparsers(dest="sl2_command", required=True), common)
    kinds = ["costd", "std", "simple", "tilting", "line", "psi", "bar-costd", "bar-std", "mn",
             "true-costd", "true-std"]
    q = ssub.add_parser("object", help="print an object degree by degree")
    _add_common(q, with_type=False)
    q.add_argument("--kind", choices=kinds, required=True)
    q.add_argument("--n", type=int, required=True)
    q.set_defaults(func=cmd_sl2_object)

    sheaf_kinds = ["costd", "simple", "tilting", "line", "psi"]
    q = ssub.add_parser("hom", help="dimension of Hom(X_m, Y_n<k>)")
    _add_common(q, with_type=False)
    q.add_argument("--m", type=int, required=True)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--k", type=int, default=0)
    q.add_argument("--source-kind", choices=sheaf_kinds, default="costd")
    q.add_argument("--target-kind", choices=sheaf_kinds, default="costd")
    q.set_defaults(func=cmd_sl2_hom)

    q = ssub.add_parser("comp-series", help="composition multiplicities")
    _add_common(q, with_type=False)
    q.add_argument("--kind", choices=["costd", "line", "bar-costd"], required=True)
    q.add_argument("--n", type=int, required=True)
    q.set_defaults(func=cmd_sl2_comp)

    q = ssub.add_parser("verify", help="bundled verification suites")
    q.add_argument("--suite", choices=["ses", "homdim", "tilting-positivity", "minuscule", "exercise1", "all"],
                   required=True)
    q.set_defaults(func=cmd_sl2_verify)
    return parser


def _apply_config(args: argparse.Namespace) -> None:
    config: dict[str, Any] = {}
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                config = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from None
        unknown = set(config) - set(CONFIG_KEYS)
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
    defaults = {"type": "SL2", "trunc": DEFAULT_TRUNCATION, "format": "text", "lusztig_variable": False}
    for key, attr in CONFIG_KEYS.items():
        if key in config:
            value = config[key]
            defaults[attr] = json.dumps(value) if attr == "type" and isinstance(value, list) else value
    for attr, value in defaults.items():
        if getattr(args, attr, None) is None:
            setattr(args, attr, value)
    if args.format not in FORMATS:
        raise UsageError(f"unknown output format {args.format!r}")
    if args.trunc < 0:
        raise UsageError("truncation must be nonnegative")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _apply_config(args)
        return args.func(args)
    except (UsageError, RootDatumError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (StabilizationError, DecompositionError, sl2.HomInstabilityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
