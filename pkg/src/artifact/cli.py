"""Command-line front end.

    artifact table weyl
    artifact gk --weyl w212 --weight "s*b2"
    artifact constant-term --parabolic siegel
    artifact residue --path S2:z=1/2 --relations "chi=mu, chi^2=1"
    artifact spectrum --parabolic borel --relations "chi=mu, chi^2=1"
    artifact arthur --type hps
    artifact verify --suite paper

Every command takes --format text|json and --out PATH.  Exit status is 0 on
success, 2 when the request falls outside what the engine handles (a pole of
higher order, an expansion it cannot do) and 1 for usage errors or a failed
verification.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction as Q
from typing import List, Optional, Sequence, Tuple

from .affine import Affine, fmt_rat
from .arthur_params import (
    EXPECTED_FAMILIES,
    HPS_POINT_NOTE,
    PARAM_TYPES,
    TypeConstraint,
    make_param,
    satake_of_param,
)
from .characters import CharacterSyntaxError, InconsistentRelations, RelationSet, TorusCharacter
from .gk_coefficients import constant_term, gk_product, normalizing_factor, sym2_ratio_text
from .lseries import NonInvertible, UnsupportedExpansion
from .operator_algebra import UnsupportedOrder
from .residue_engine import PRESETS, UnsupportedPole, derivative_constant, iterated_residue, parse_path
from .root_data import ROOT_NAMES, Weight, WeylElement, basis_weight, weyl_table
from .spectrum_classifier import (
    EXHAUSTIVENESS_NOTE,
    BorelDatum,
    NonSiegelDatum,
    SiegelDatum,
    classify_borel,
    classify_nonsiegel,
    classify_siegel,
)

UNSUPPORTED = (UnsupportedPole, UnsupportedExpansion, UnsupportedOrder, NonInvertible)
USAGE = (ValueError, CharacterSyntaxError, InconsistentRelations, TypeConstraint)


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# weights: expr := term (('+'|'-') term)* ; a term is a product of a rational,
# at most one variable and exactly one basis symbol, optionally over an int

BASIS = set(ROOT_NAMES) | {"b1", "b2"}


class WeightSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def _tokens(src: str) -> List[Tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m.group(0).strip() == "":
            break
        start = m.start(m.lastindex)
        if m.group(1):
            out.append(("int", m.group(1), start))
        elif m.group(2):
            out.append(("name", m.group(2), start))
        else:
            if m.group(3) not in "+-*/":
                raise WeightSyntaxError(f"unexpected character {m.group(3)!r}", start)
            out.append(("op", m.group(3), start))
        pos = m.end()
    return out


def parse_weight(src: str) -> Weight:
    """Parse e.g. "1/2*a1 + a3", "s*b2" or "t*a2/2 + z*a4/2"."""
    toks = _tokens(src)
    if not toks:
        raise WeightSyntaxError("empty weight", 0)
    i = 0
    total = Weight(0, 0)
    sign = 1
    if toks[0][:2] == ("op", "-"):
        sign, i = -1, 1
    elif toks[0][:2] == ("op", "+"):
        i = 1
    while True:
        coeff = Affine(sign)
        basis = None
        var_seen = False
        expect_factor = True
        while i < len(toks):
            kind, text, pos = toks[i]
            if expect_factor:
                if kind == "int":
                    coeff = coeff * int(text)
                elif kind == "name" and text in BASIS:
                    if basis is not None:
                        raise WeightSyntaxError("two basis symbols in one term", pos)
                    basis = text
                elif kind == "name":
                    if var_seen:
                        raise WeightSyntaxError("a term is linear in at most one variable", pos)
                    coeff = Affine.var(text) * coeff.constant_value()
                    var_seen = True
                else:
                    raise WeightSyntaxError(f"expected a number or symbol, found {text!r}", pos)
                expect_factor = False
                i += 1
                continue
            if kind == "op" and text == "*":
                expect_factor = True
                i += 1
                continue
            if kind == "op" and text == "/":
                if i + 1 >= len(toks) or toks[i + 1][0] != "int":
                    raise WeightSyntaxError("expected an integer after '/'", pos)
                d = int(toks[i + 1][1])
                if d == 0:
                    raise WeightSyntaxError("division by zero", toks[i + 1][2])
                coeff = coeff / d
                i += 2
                continue
            break
        if expect_factor:
            pos = toks[i][2] if i < len(toks) else len(src)
            raise WeightSyntaxError("unexpected end of term", pos)
        if basis is None:
            pos = toks[i - 1][2]
            raise WeightSyntaxError("term has no basis symbol (a1..a4, b1, b2)", pos)
        total = total + basis_weight(basis) * coeff
        if i >= len(toks):
            return total
        kind, text, pos = toks[i]
        if kind == "op" and text in "+-":
            sign = 1 if text == "+" else -1
            i += 1
            if i >= len(toks):
                raise WeightSyntaxError("unexpected end after sign", len(src))
            continue
        raise WeightSyntaxError(f"unexpected {text!r}", pos)


# ---------------------------------------------------------------------------
# reports: each command returns (text, json-able object)

Report = Tuple[str, object]


def _rel(text: Optional[str]) -> RelationSet:
    rel = RelationSet.parse(text)
    rel.check_consistent()
    return rel


def _chars(text: str) -> TorusCharacter:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2 or not all(parts):
        raise UsageError("--chars takes two names, e.g. chi,mu")
    return TorusCharacter.of(*parts)


def cmd_table(args) -> Report:
    if args.which != "weyl":
        raise UsageError("only 'table weyl' is available")
    rows = weyl_table()
    cols = ["weyl", "a1", "a2", "a3", "a4", "torus"]
    widths = {c: max(len(c), *(len(r[c]) for r in rows)) for c in cols}
    header = "  ".join(c.ljust(widths[c]) for c in cols)
    lines = [header.replace("torus", "w^-1 t(a,b) w").rstrip()]
    lines += ["  ".join(r[c].ljust(widths[c]) for c in cols).rstrip() for r in rows]
    return "\n".join(lines), {"table": "weyl", "rows": rows}


def cmd_gk(args) -> Report:
    w = WeylElement.parse(args.weyl)
    lam = parse_weight(args.weight)
    tc = _chars(args.chars)
    prod = (normalizing_factor if args.normalized else gk_product)(w, lam, tc)
    lines = [f"w = {w}", f"Lambda = {lam}", f"coefficient = {prod}"]
    sym2 = sym2_ratio_text(prod, tc)
    if sym2:
        lines.append(f"as Sym2 ratio = {sym2}")
    data = {"weyl": w.name, "weight": str(lam), "normalized": args.normalized,
            "factors": prod.to_json(), "text": str(prod), "sym2": sym2}
    return "\n".join(lines), data


def cmd_constant_term(args) -> Report:
    tc = _chars(args.chars)
    lam = parse_weight(args.weight) if args.weight else None
    terms = constant_term(args.parabolic, lam, tc, args.normalized)
    lines = [f"constant term along {args.parabolic}:"]
    data = []
    for w, prod in terms:
        extra = sym2_ratio_text(prod, tc) if args.parabolic == "siegel" else None
        text = f"  {w.name:6s} {prod}" + (f"   [{extra}]" if extra else "")
        lines.append(text)
        data.append({"weyl": w.name, "factors": prod.to_json(), "text": str(prod), "sym2": extra})
    return "\n".join(lines), {"parabolic": args.parabolic, "terms": data}


def cmd_residue(args) -> Report:
    path = parse_path(args.path, Q(args.multiplicity))
    rel = _rel(args.relations)
    res = iterated_residue(path, rel, normalization=args.normalization)
    lines = [
        f"path: {path.label}",
        f"point: {res.point}",
        f"relations: {rel}",
        f"normalization: {res.normalization} (scale {fmt_rat(res.scale)})",
        "per Weyl element:",
    ]
    for t in res.per_weyl:
        if t.hyperplane_residue.is_zero:
            continue
        lines.append(f"  {t.weyl.name}: along {path.hyperplane.name}: {t.hyperplane_residue}")
        if t.scalar is not None:
            lines.append(f"      scalar: {t.scalar}")
        if t.operator is not None:
            lines.append(f"      operator: {t.operator}")
            lines.append(f"      residue: {t.residue}")
    lines += [
        f"total: {res.total}",
        f"square integrable: {res.square_integrable}",
        f"trace re-multiplies to total: {res.verify_trace()}",
    ]
    data = res.to_json()
    data["verify_trace"] = res.verify_trace()
    try:
        native = iterated_residue(path, rel, normalization="native")
        const = derivative_constant(native)
    except ValueError:
        const = None
    if const is not None:
        lines.append(f"derived constant in front of Rx(-a3/2,w1)R(a3/2,w212): c = {const['c']}")
        lines.append(f"matches closed form(s): {', '.join(const['matches']) or 'none'}")
        data["derivative_constant"] = const
    return "\n".join(lines), data


def cmd_spectrum(args) -> Report:
    if args.parabolic == "siegel":
        d = SiegelDatum(args.self_dual, args.nontrivial_quadratic)
        points = classify_siegel(d)
    elif args.parabolic == "nonsiegel":
        d = NonSiegelDatum(_rel(args.relations), args.sigma, args.s_sigma_size,
                           args.chi_ne_eta, args.central_value_nonzero)
        points = classify_nonsiegel(d)
    else:
        points = classify_borel(BorelDatum(_rel(args.relations)))
    lines = [f"residual spectrum for {args.parabolic}:"]
    if not points:
        lines.append("  (none)")
    for p in points:
        lines.append(f"  [{p.family}] {p.quotient_label} at {p.point}; square integrable {p.square_integrable}")
        if p.residue is not None:
            lines.append(f"      residue: {p.residue}  (paths {', '.join(p.paths)})")
    lines.append(f"note: {EXHAUSTIVENESS_NOTE}")
    return "\n".join(lines), {"parabolic": args.parabolic, "points": [p.to_json() for p in points],
                              "note": EXHAUSTIVENESS_NOTE}


def cmd_arthur(args) -> Report:
    names = tuple(n.strip() for n in args.chars.split(",")) if args.chars else None
    p = make_param(args.type, names, args.local)
    sat = satake_of_param(p)
    lines = [f"type {p.kind}: {p.describe()}", f"relations: {p.relations}", f"Satake parameter: {sat}"]
    families = list(EXPECTED_FAMILIES.get(p.kind, ()))
    lines.append(f"residual families: {', '.join(families) if families else 'none'}")
    if p.kind == "hps":
        lines.append(f"note: {HPS_POINT_NOTE}")
    data = {"type": p.kind, "description": p.describe(), "satake": sat.to_json(), "families": families}
    if p.kind == "hps":
        data["note"] = HPS_POINT_NOTE
    return "\n".join(lines), data


def cmd_verify(args) -> Report:
    from .checks import run_suite

    if args.suite != "paper":
        raise UsageError("only the 'paper' suite exists")
    results = run_suite()
    lines = [r.line() + f"  ({r.seconds:.2f}s)" for r in results]
    if args.verbose:
        lines = []
        for r in results:
            lines.append(r.line() + f"  ({r.seconds:.2f}s)")
            lines += [f"    {d}" for d in r.detail]
    passed = sum(r.passed for r in results)
    lines.append(f"{passed}/{len(results)} passed")
    data = {"suite": args.suite, "results": [r.to_json() for r in results], "passed": passed,
            "total": len(results)}
    args._failed = passed != len(results)
    return "\n".join(lines), data


# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--out", metavar="PATH", help="write the report to PATH instead of stdout")

    parser = _Parser(prog="artifact", description="constant terms and residues on the metaplectic Sp4 cover")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("table", parents=[common], help="the Weyl group table")
    p.add_argument("which", choices=("weyl",))
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("gk", parents=[common], help="Gindikin-Karpelevich coefficient of one Weyl element")
    p.add_argument("--weyl", required=True, help="e.g. w212")
    p.add_argument("--weight", required=True, help='e.g. "s*b2" or "x*a1/2 + y*a3/2"')
    p.add_argument("--chars", default="chi,mu")
    p.add_argument("--normalized", action="store_true", help="include the eps factors")
    p.set_defaults(func=cmd_gk)

    p = sub.add_parser("constant-term", parents=[common], help="all coefficients of a constant term")
    p.add_argument("--parabolic", choices=("siegel", "nonsiegel", "borel"), required=True)
    p.add_argument("--weight")
    p.add_argument("--chars", default="chi,mu")
    p.add_argument("--normalized", action="store_true")
    p.set_defaults(func=cmd_constant_term)

    p = sub.add_parser("residue", parents=[common], help="iterated residue of the Borel constant term")
    p.add_argument("--path", required=True, help=f"one of {', '.join(PRESETS)} or e.g. S2:z=1/2")
    p.add_argument("--relations", default="", help='e.g. "chi=mu, chi^2=1"')
    p.add_argument("--multiplicity", default="1", choices=("1", "1/2"))
    p.add_argument("--normalization", choices=("xy", "native"), default="xy")
    p.set_defaults(func=cmd_residue)

    p = sub.add_parser("spectrum", parents=[common], help="residual spectrum contributions")
    p.add_argument("--parabolic", choices=("siegel", "nonsiegel", "borel"), required=True)
    p.add_argument("--relations", default="")
    p.add_argument("--self-dual", action="store_true")
    p.add_argument("--nontrivial-quadratic", action="store_true",
                   help="central character nontrivial and quadratic")
    p.add_argument("--sigma", choices=("ETF", "Lpi"), default="ETF")
    p.add_argument("--s-sigma-size", type=int, default=2)
    p.add_argument("--chi-ne-eta", action="store_true", help="chi_v != eta_v for every v in S_sigma")
    p.add_argument("--central-value-nonzero", action="store_true")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("arthur", parents=[common], help="Satake parameter of an Arthur-parameter type")
    p.add_argument("--type", choices=PARAM_TYPES, required=True)
    p.add_argument("--chars", help="character names, e.g. chi,mu")
    p.add_argument("--local", help="extra relations among the local characters")
    p.set_defaults(func=cmd_arthur)

    p = sub.add_parser("verify", parents=[common], help="run the reference identity suite")
    p.add_argument("--suite", default="paper")
    p.add_argument("--verbose", action="store_true")
    p.set_defaults(func=cmd_verify)
    return parser


def emit(report: Report, fmt: str) -> str:
    text, data = report
    if fmt == "json":
        return json.dumps(data, sort_keys=True, indent=2) + "\n"
    return text + "\n"


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        report = args.func(args)
    except UNSUPPORTED as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return 2
    except (UsageError, *USAGE) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    out = emit(report, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return 1 if getattr(args, "_failed", False) else 0


if __name__ == "__main__":
    sys.exit(main())
