"""Command-line interface: ``cyclic-cubics <subcommand> [flags]``.

Single-object queries print JSON, scans print CSV in ascending n. Exit
status is 0 on success, 1 on bad usage or invalid input, and 2 when
``--strict`` meets an incomplete factorization, an undetermined prime 3,
or a point off the surface.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from math import isqrt
from typing import Any, Callable, Iterable, Optional, Sequence

import mpmath

from . import __version__
from .discriminant import disc_Bn_closed_form, ramified_primes, report_to_json
from .errors import CubicFamilyError, IncompleteFactorization, OffSurface
from .factoring import DEFAULT_RHO_BUDGET
from .family import FamilyPair, family_to_json, get_family, instantiate, iterate_chain, make_family, registry
from .intpoly import parse
from .roots import DEFAULT_PRECISION, isolate_roots
from .surface import WPoint, X3Point, family_to_w, on_w, on_x3, point_to_json, reconstruct_from_cubic, w_to_x3, x3_to_family
from .units import analyze_units, cusick_lower_bound, index_verdict, regulator_RP, squarefree_at, unit_report_to_json

__all__ = ["main", "build_parser", "scan_row", "SCAN_HEADER", "PLOTSCAN_HEADER"]

SCAN_HEADER = ["n", "3a+lambda^2", "squarefree", "b", "c", "D", "R_P", "bound", "verdict"]
PLOTSCAN_HEADER = ["a", "lambda", "sqrt_disc", "f", "g", "h", "a_integral"]


class UsageError(Exception):
    pass


class StrictFailure(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse exits with 2 by default; usage errors are 1 here
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def parse_range(text: str) -> range:
    """'A..B', inclusive at both ends; B < A gives an empty range."""
    try:
        lo, hi = text.split("..")
        return range(int(lo), int(hi) + 1)
    except ValueError:
        raise UsageError(f"bad range {text!r}; expected A..B") from None


def _add_family_flags(p: argparse.ArgumentParser):
    p.add_argument("--name", help="registry family (S_n, L_n, K_n, K'_n, B_n, K_{-n,n-1})")
    p.add_argument("--f", "-f", dest="f", help="polynomial f(n), e.g. '-n^2'")
    p.add_argument("--g", "-g", dest="g", help="polynomial g(n)")
    p.add_argument("--lambda-override", help="lambda(n), required when f*g = 0")


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--precision", type=int, default=DEFAULT_PRECISION, metavar="BITS")
    p.add_argument("--factor-budget", type=int, default=DEFAULT_RHO_BUDGET, metavar="N",
                   help="Pollard rho iteration budget per composite")
    p.add_argument("--format", choices=["json", "csv", "text"], default=None)
    p.add_argument("--strict", action="store_true", help="exit 2 on any incomplete result")
    p.add_argument("--threads", type=int, default=1)


_VALUE_FLAGS = {
    "-f": "--f", "--f": "--f", "-g": "--g", "--g": "--g", "--lambda-override": "--lambda-override",
    "--lambda": "--lambda", "--range": "--range", "--a-range": "--a-range", "--lambda-range": "--lambda-range",
    "--point": "--point", "--w-point": "--w-point", "--n": "--n", "--steps": "--steps",
}


def _glue_values(argv: Sequence[str]) -> list[str]:
    """Attach values to their flags so that '-g -n' or '--range -5..5' is not read as two options."""
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok in _VALUE_FLAGS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{_VALUE_FLAGS[tok]}={nxt}")
        else:
            out.append(tok)
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cyclic-cubics", description="Families of cyclic cubic fields from polynomial pairs.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", help="check the integrality condition for an explicit pair")
    _add_family_flags(p)
    _add_common(p)

    p = sub.add_parser("family", help="show a family, optionally specialized at --n")
    _add_family_flags(p)
    p.add_argument("--n", type=int)
    _add_common(p)

    p = sub.add_parser("registry", help="list the named families")
    _add_common(p)

    for name, text in (("disc", "field discriminant at --n or over --range"),
                       ("units", "regulator and fundamental-unit verdict at --n or over --range")):
        p = sub.add_parser(name, help=text)
        _add_family_flags(p)
        p.add_argument("--n", type=int)
        p.add_argument("--range", dest="n_range")
        _add_common(p)

    p = sub.add_parser("scan", help="CSV sweep over --range")
    _add_family_flags(p)
    p.add_argument("--range", dest="n_range", required=True)
    p.add_argument("--density-only", action="store_true", help="skip discriminants and regulators")
    _add_common(p)

    p = sub.add_parser("iterate", help="apply the family map --steps times (negative: backwards)")
    _add_family_flags(p)
    p.add_argument("--steps", type=int, default=1)
    _add_common(p)

    p = sub.add_parser("surface", help="W and X(3) coordinates of a family or a point")
    _add_family_flags(p)
    p.add_argument("--n", type=int)
    p.add_argument("--point", help="X(3) point 'x,y,z' (needs --lambda)")
    p.add_argument("--w-point", help="W point 'a,b,c' (needs --lambda)")
    p.add_argument("--lambda", dest="lam", help="lambda for --point / --w-point")
    _add_common(p)

    p = sub.add_parser("plotscan", help="(a, lambda) window with square discriminant, as CSV")
    p.add_argument("--a-range", required=True)
    p.add_argument("--lambda-range", required=True)
    _add_common(p)
    return parser


# -- helpers -----------------------------------------------------------------


def resolve_family(args) -> FamilyPair:
    explicit = args.f is not None or args.g is not None
    if args.name and explicit:
        raise UsageError("give either --name or --f/--g, not both")
    if args.name:
        try:
            return get_family(args.name)
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from None
    if args.f is None or args.g is None:
        raise UsageError("need --name or both --f and --g")
    override = parse(args.lambda_override) if args.lambda_override else None
    return make_family(parse(args.f), parse(args.g), override)


def _ns(args) -> list[int]:
    if getattr(args, "n_range", None) is not None:
        if args.n is not None:
            raise UsageError("give either --n or --range")
        return list(parse_range(args.n_range))
    if args.n is None:
        raise UsageError("need --n or --range")
    return [args.n]


def _pmap(fn: Callable, items: Sequence, threads: int) -> list:
    """Ordered map, optionally over worker processes."""
    if threads > 1 and len(items) > 1:
        chunk = max(1, len(items) // (8 * threads))
        with ProcessPoolExecutor(max_workers=threads) as ex:
            return list(ex.map(fn, items, chunksize=chunk))
    return [fn(x) for x in items]


def _num(x, digits: int = 15) -> str:
    return mpmath.nstr(mpmath.mpf(x), digits)


def _emit_json(obj: Any, out) -> None:
    out.write(json.dumps(obj, indent=2) + "\n")


def _emit_text(obj: Any, out, indent: str = "") -> None:
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                out.write(f"{indent}{k}:\n")
                _emit_text(v, out, indent + "  ")
            else:
                out.write(f"{indent}{k}: {v}\n")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)):
                out.write(f"{indent}-\n")
                _emit_text(v, out, indent + "  ")
            else:
                out.write(f"{indent}- {v}\n")
    else:
        out.write(f"{indent}{obj}\n")


def _emit(obj: Any, fmt: Optional[str], out) -> None:
    if fmt == "text":
        _emit_text(obj, out)
    else:
        _emit_json(obj, out)


def _emit_csv(header: list[str], rows: Iterable[list], out) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow(r)


# -- per-n workers (module level so they pickle) ------------------------------


def _disc_one(job) -> dict:
    pair, n, budget = job
    inst = instantiate(pair, n)
    if not inst.irreducible:
        return {"n": n, "skipped": "reducible"}
    try:
        rep = ramified_primes(pair, n, rho_budget=budget)
    except IncompleteFactorization as exc:
        return {"n": n, "incomplete": str(exc)}
    out = report_to_json(rep)
    if pair.name == "B_n":
        closed = disc_Bn_closed_form(n, rho_budget=budget)
        out["closed_form_D"] = str(closed)
        out["closed_form_agrees"] = closed == rep.D
    return out


def _units_one(job) -> dict:
    pair, n, precision = job
    inst = instantiate(pair, n)
    if not inst.irreducible:
        return {"family": pair.label, "n": n, "skipped": "reducible"}
    try:
        rep = analyze_units(pair, n, precision)
    except IncompleteFactorization as exc:
        return {"family": pair.label, "n": n, "incomplete": str(exc)}
    out = unit_report_to_json(rep)
    if not pair.unit_certificate_applicable:
        out["note"] = "unit-index certificate inapplicable for this pair; verdict is numeric only"
    return out


def scan_row(job) -> list:
    """One CSV row: n, 3a+lambda^2, squarefree?, b, c, D or '?', R_P, bound, verdict."""
    pair, n, precision, budget, density_only = job
    inst = instantiate(pair, n)
    if not inst.irreducible:
        return [n, inst.value_3a_l2, "skip", "", "", "", "", "", "reducible"]
    value = inst.value_3a_l2
    try:
        sf = "yes" if squarefree_at(pair, n, rho_budget=budget) else "no"
    except IncompleteFactorization:
        sf = "?"
    if density_only:
        return [n, value, sf, "", "", "", "", "", ""]
    b = c = D = "?"
    try:
        rep = ramified_primes(pair, n, rho_budget=budget)
        b, c = rep.cubefree_b, rep.cube_c
        if rep.D is not None:
            D = rep.D
    except IncompleteFactorization:
        pass
    rp = regulator_RP(isolate_roots(inst, precision))
    bound, verdict = "", "inconclusive"
    if isinstance(D, int) and D > 4:
        k, v = index_verdict(rp, cusick_lower_bound(D))
        bound = k
        verdict = f"IndexAtMost({k})" if v.value == "index-at-most" else v.value
    return [n, value, sf, b, c, D, _num(rp), bound, verdict]


# -- subcommands ----------------------------------------------------------------


def cmd_validate(args, out) -> int:
    if args.name:
        raise UsageError("validate takes an explicit pair: --f and --g")
    pair = resolve_family(args)
    obj = family_to_json(pair)
    for known in registry().values():
        if known.same_pair(pair) and known.lam == pair.lam:
            obj = {"name": known.name, **obj}
            obj["notes"] = list(dict.fromkeys(list(known.notes) + obj["notes"]))
            break
    _emit(obj, args.format, out)
    return 0


def cmd_family(args, out) -> int:
    pair = resolve_family(args)
    obj = family_to_json(pair)
    if args.n is not None:
        inst = instantiate(pair, args.n)
        obj["instance"] = {
            "n": args.n,
            "a": str(inst.a_val),
            "lambda": str(inst.lambda_val),
            "cubic": inst.poly.to_str("X"),
            "irreducible": inst.irreducible,
            "3a+lambda^2": str(inst.value_3a_l2),
        }
    _emit(obj, args.format, out)
    return 0


def cmd_registry(args, out) -> int:
    _emit([family_to_json(p) for p in registry().values()], args.format, out)
    return 0


def _strict_check(rows: list[dict], strict: bool) -> int:
    bad = [r for r in rows if "incomplete" in r or r.get("D") == "undetermined"]
    if bad and strict:
        raise StrictFailure(f"{len(bad)} incomplete result(s), first at n={bad[0]['n']}")
    return 0


def cmd_disc(args, out) -> int:
    pair = resolve_family(args)
    ns = _ns(args)
    rows = _pmap(_disc_one, [(pair, n, args.factor_budget) for n in ns], args.threads)
    _strict_check(rows, args.strict)
    if args.format == "csv":
        header = ["n", "3a+lambda^2", "factorization", "b", "c", "ramified", "three", "D"]
        _emit_csv(header, ([r["n"], r.get("value_3a_l2", ""), r.get("factorization", ""), r.get("cubefree_b", ""),
                            r.get("cube_c", ""), " ".join(str(x["p"]) for x in r.get("ramified", [])),
                            r.get("three_status", ""), r.get("D", r.get("skipped", "?"))] for r in rows), out)
        return 0
    if len(ns) == 1 and args.n_range is None:
        _emit(rows[0], args.format, out)
        return 0
    summary: dict = {"family": pair.label, "count": len(rows)}
    compared = [r for r in rows if "closed_form_agrees" in r]
    if compared:
        summary["closed_form_agreement"] = f"{sum(r['closed_form_agrees'] for r in compared)}/{len(compared)}"
    _emit({"summary": summary, "reports": rows}, args.format, out)
    return 0


def cmd_units(args, out) -> int:
    pair = resolve_family(args)
    ns = _ns(args)
    rows = _pmap(_units_one, [(pair, n, args.precision) for n in ns], args.threads)
    _strict_check(rows, args.strict)
    _emit(rows[0] if len(rows) == 1 and args.n_range is None else rows, args.format, out)
    return 0


def cmd_scan(args, out) -> int:
    pair = resolve_family(args)
    ns = list(parse_range(args.n_range))
    jobs = [(pair, n, args.precision, args.factor_budget, args.density_only) for n in ns]
    rows = _pmap(scan_row, jobs, args.threads)
    _emit_csv(SCAN_HEADER, rows, out)
    sf = sum(1 for r in rows if r[2] == "yes")
    total = sum(1 for r in rows if r[2] in ("yes", "no"))
    unknown = sum(1 for r in rows if r[2] == "?" or r[5] == "?")
    frac = f"{sf / total:.6f}" if total else "absent"
    sys.stderr.write(f"# {pair.label}: squarefree {sf}/{total} = {frac}; skipped {len(rows) - total}; "
                     f"incomplete {unknown}\n")
    if unknown and args.strict:
        raise StrictFailure(f"{unknown} row(s) with incomplete results")
    return 0


def cmd_iterate(args, out) -> int:
    pair = resolve_family(args)
    chain = iterate_chain(pair, args.steps)
    obj = {
        "steps": args.steps,
        "chain": [family_to_json(p) for p in chain.families],
        "degrees": [[df, dg] for df, dg in chain.degrees()],
        "degree_ratios": [None if r is None else round(r, 6) for r in chain.ratios],
        "unit_certificate_applicable": [p.unit_certificate_applicable for p in chain.families],
        "stopped": chain.stopped,
    }
    _emit(obj, args.format, out)
    return 0


def _triple(text: str) -> tuple[int, int, int]:
    try:
        parts = [int(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"bad point {text!r}; expected three integers 'x,y,z'") from None
    if len(parts) != 3:
        raise UsageError(f"bad point {text!r}; expected three integers 'x,y,z'")
    return parts[0], parts[1], parts[2]


def cmd_surface(args, out) -> int:
    if args.point or args.w_point:
        if args.lam is None:
            raise UsageError("--point/--w-point need --lambda")
        lam = int(args.lam)
        if args.w_point:
            w = WPoint(*_triple(args.w_point), lam=lam)
            if not on_w(w):
                raise OffSurface(f"[{args.w_point}; {lam}] is not on W")
            obj = {"W": point_to_json(w), "X3": point_to_json(w_to_x3(w))}
        else:
            q = X3Point(*_triple(args.point), lam=lam)
            if not on_x3(q):
                raise OffSurface(f"[{args.point}; {lam}] is not on X(3)")
            obj = {"X3": point_to_json(q)}
            if q.x and q.y and q.z:
                gen = x3_to_family(q.x, q.y, q.z, lam)
                obj["cubic"] = {"a": None if gen.a is None else str(gen.a),
                                "a_fraction": f"{gen.a_num}/{gen.a_den}", "lambda": str(lam),
                                "integral": gen.integral}
        _emit(obj, args.format, out)
        return 0
    pair = resolve_family(args)
    w = family_to_w(pair)
    q = w_to_x3(w)
    obj = {"family": pair.label, "W": point_to_json(w), "X3": point_to_json(q),
           "X3_expected": point_to_json(X3Point(pair.f, pair.g, 1, pair.lam))}
    if args.n is not None:
        n = args.n
        obj["at_n"] = {"n": n,
                       "W": [str(t(n)) for t in w.coords] + [str(pair.lam(n))],
                       "X3": [str(t(n)) for t in q.coords] + [str(pair.lam(n))]}
    _emit(obj, args.format, out)
    return 0


def cmd_plotscan(args, out) -> int:
    rows = []
    for a in parse_range(args.a_range):
        for lam in parse_range(args.lambda_range):
            t = reconstruct_from_cubic(a, lam)
            if t is None:
                continue
            disc = 4 * a**3 + lam**2 * a**2 - 18 * lam * a - 4 * lam**3 - 27
            f, g, h = t
            integral = ""
            if f and g and h:
                integral = "yes" if x3_to_family(f, g, h, lam).integral else "no"
            rows.append([a, lam, isqrt(disc), f, g, h, integral])
    _emit_csv(PLOTSCAN_HEADER, rows, out)
    return 0


COMMANDS = {
    "validate": cmd_validate,
    "family": cmd_family,
    "registry": cmd_registry,
    "disc": cmd_disc,
    "units": cmd_units,
    "scan": cmd_scan,
    "iterate": cmd_iterate,
    "surface": cmd_surface,
    "plotscan": cmd_plotscan,
}


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    args = parser.parse_args(_glue_values(sys.argv[1:] if argv is None else argv))
    buf = io.StringIO()  # write nothing on failure
    try:
        code = COMMANDS[args.command](args, buf)
    except UsageError as exc:
        sys.stderr.write(f"cyclic-cubics: usage error: {exc}\n")
        return 1
    except (StrictFailure, OffSurface) as exc:
        out.write(buf.getvalue())
        sys.stderr.write(f"cyclic-cubics: {exc}\n")
        return 2
    except CubicFamilyError as exc:
        sys.stderr.write(f"cyclic-cubics: {type(exc).__name__}: {exc}\n")
        return 1
    out.write(buf.getvalue())
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
