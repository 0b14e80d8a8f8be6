"""Command-line front end.

Every command prints a report ``{"ok": ..., "data": ..., "notes": [...]}``.
With ``--json`` the report is emitted as canonical JSON (sorted keys, compact
separators) so identical inputs give byte-identical output; otherwise a short
human summary is printed.

Exit codes: 0 success, 1 a verification failed, 2 bad usage or input.

Cycle notation on the command line is 1-indexed, e.g. ``"(2 5 3)(4 6 7)"``.
Polynomials are accepted as strings (``"x^3-x^2-2"``) or as comma separated
coefficients, constant term first (``-2,0,-1,1``); coefficients are reduced
mod p.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

from . import __version__
from .algebra import (
    FieldSpec,
    Poly,
    enumerate_primitive,
    euler_phi,
    field_make,
    field_to_json,
    poly_from_taps,
    taps_from_poly,
)
from .ddf import (
    DifferenceFamily,
    application_predicates,
    classify,
    ddf_equivalent,
    spectrum,
)
from .fhs import (
    Fhs,
    Permutation,
    conjugate_shift,
    correlation_table,
    fhs_equivalent,
    is_in_normalizer,
    max_auto,
    max_correlation,
    max_cross,
    min_distance,
    phi_gamma,
    rotational_closure,
    _shift_exponent,
)
from .geometry import (
    Projectivity,
    coordinate_frame,
    fmm_construct,
    frame_for_direction,
    projectivity_from_poly,
)
from .golden import timed_golden, LFSR_TAPS
from .lfsr import default_primitive, lg_construct


class UsageError(ValueError):
    pass


def _report(ok: bool, data: Any, notes: Sequence[str] = ()) -> dict:
    return {"ok": ok, "data": data, "notes": list(notes)}


def emit(report: dict, as_json: bool, out=None) -> None:
    out = out or sys.stdout
    if as_json:
        out.write(json.dumps(report, sort_keys=True, separators=(",", ":")) + "\n")
        return
    if "error" in report:
        out.write(f"error: {report['error']['type']}: {report['error']['message']}\n")
        return
    out.write(("ok" if report["ok"] else "FAILED") + "\n")
    out.write(json.dumps(report["data"], sort_keys=True, indent=2) + "\n")
    for note in report["notes"]:
        out.write(f"note: {note}\n")


# --------------------------------------------------------------------------
# argument parsing helpers
# --------------------------------------------------------------------------

def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t != ""]
    except ValueError:
        raise UsageError(f"expected comma separated integers, got {text!r}") from None


def _field(args) -> FieldSpec:
    modulus = _int_list(args.modulus) if getattr(args, "modulus", None) else None
    return field_make(args.p, args.m, modulus)


def parse_poly(field: FieldSpec, text: str) -> Poly:
    if "x" in text:
        return Poly.parse(field, text)
    return Poly.from_list(field, _int_list(text))


def _load_json(path: str | None, stdin=None) -> Any:
    try:
        if path is None or path == "-":
            return json.load(stdin or sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON: {exc}") from None


def _load_scheme(args) -> Fhs:
    if args.word:
        return Fhs.of([_int_list(w) for w in args.word], args.q)
    obj = _load_json(args.input)
    if isinstance(obj, list):
        return Fhs.of(obj if obj and isinstance(obj[0], list) else [obj], args.q)
    if "symbols" in obj:
        return Fhs.of([obj["symbols"]], obj.get("q", args.q))
    return Fhs.from_json(obj)


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------

def cmd_construct(args) -> tuple[dict, int]:
    F = _field(args)
    notes = []
    if args.kind == "lg":
        if args.taps and args.poly:
            raise UsageError("give either --taps or --poly")
        if args.taps:
            f = poly_from_taps(F, _int_list(args.taps))
        elif args.poly:
            f = parse_poly(F, args.poly)
        else:
            f = default_primitive(F, args.n)
            notes.append(f"no polynomial given; using the first primitive {f}")
        u, fam = lg_construct(F, args.n, args.k, f, order=args.order)
        data = {
            "field": field_to_json(F),
            "poly": f.to_list(),
            "taps": list(taps_from_poly(f)),
            "sequence": {"q": u.q, "symbols": list(u.symbols)},
            "family": fam.to_json(),
        }
        return _report(True, data, notes), 0

    tau = None
    if args.matrix:
        rows = json.loads(args.matrix)
        tau = Projectivity.from_rows(F, rows)
        notes.append("projectivity taken from --matrix")
        f = None
    else:
        if args.poly:
            f = parse_poly(F, args.poly)
        else:
            f = default_primitive(F, args.n)
            notes.append(f"no polynomial given; using the first primitive {f}")
        tau = projectivity_from_poly(f)
    if tau.dim != args.n:
        raise UsageError(f"projectivity acts on PG({tau.dim}, q), not PG({args.n}, q)")
    base = _int_list(args.base) if args.base else None
    frame = None
    if args.frame:
        frame = frame_for_direction(F, args.n, _int_list(args.frame))
    elif args.order:
        frame = coordinate_frame(F, args.n, _int_list(args.order))
    fam = fmm_construct(F, args.n, args.k, base=base, frame=frame, tau=tau)
    data = {
        "field": field_to_json(F),
        "poly": f.to_list() if f is not None else None,
        "matrix": tau.matrix.to_list(),
        "base": list(base) if base else [0] * (args.n - 1) + [1, 1],
        "family": fam.to_json(),
    }
    return _report(True, data, notes), 0


def _family_from(obj: dict) -> DifferenceFamily:
    if "family" in obj and isinstance(obj["family"], dict):
        obj = obj["family"]
    return DifferenceFamily.from_json(obj)


def cmd_analyze(args) -> tuple[dict, int]:
    fam = _family_from(_load_json(args.input))
    sp = spectrum(fam)
    cl = classify(fam, sp)
    data = {
        "family": fam.to_json(),
        "sizes": list(fam.sizes),
        "spectrum": sp.rows(),
        "internal_by_class": [
            [sp.internal_by_class[(i, d)] for d in range(1, fam.v)] for i in range(fam.q)
        ],
        "external_by_class": [
            [sp.external_by_class[(i, d)] for d in range(1, fam.v)] for i in range(fam.q)
        ],
        "classification": cl.to_json(),
        "applications": application_predicates(fam, sp).to_json(),
    }
    notes = []
    if cl.perfect_external and fam.v > 1:
        notes.append(f"perfect external with |E(d)| = {cl.external_min}")
    if cl.perfect_internal and fam.v > 1:
        notes.append(f"perfect internal with |I(d)| = {cl.internal_max}")
    return _report(True, data, notes), 0


def cmd_correlate(args) -> tuple[dict, int]:
    S = _load_scheme(args)
    words = S.sorted_words()
    pairs = []
    for i, x in enumerate(words):
        for j, y in enumerate(words):
            pairs.append({"x": i, "y": j, "H": correlation_table(x, y).tolist()})
    data = {
        "scheme": S.to_json(),
        "max_auto": [max_auto(w) for w in words],
        "max_cross": max((max_cross(x, y) for i, x in enumerate(words) for y in words[i + 1 :]), default=None),
        "M": max_correlation(S),
        "tables": pairs,
    }
    return _report(True, data), 0


def cmd_closure(args) -> tuple[dict, int]:
    S = _load_scheme(args)
    rot = rotational_closure(S)
    data = {"size": rot.M, "words": [list(w) for w in rot.sorted_words()]}
    notes = []
    if rot.M >= 2:
        data["min_distance"] = min_distance(rot)
        data["M"] = max_correlation(S)
    else:
        data["min_distance"] = None
        notes.append(f"H(w)=n: a single rotation class of one word, out-of-phase correlation {S.n}")
    return _report(True, data, notes), 0


def cmd_equiv(args) -> tuple[dict, int]:
    if args.kind == "perm":
        if args.n is None or len(args.items) != 1:
            raise UsageError('usage: equiv perm --n N "(1 2 ...)(...)"')
        g = Permutation.from_cycles(args.items[0], args.n)
        member = is_in_normalizer(g)
        data = {"permutation": g.cycle_string(), "member": member}
        if member:
            conj = conjugate_shift(g)
            ap = phi_gamma(g)
            fwd = g * Permutation.rho(args.n) * g.inverse()
            data.update(
                {
                    "conjugate": conj.cycle_string(),
                    "conjugate_exponent": _shift_exponent(conj),
                    "forward_conjugate": fwd.cycle_string(),
                    "forward_exponent": _shift_exponent(fwd),
                    "phi": ap.to_json(),
                }
            )
        return _report(True, data), 0

    if len(args.items) != 2:
        raise UsageError(f"equiv {args.kind} needs two input files")
    a, b = (_load_json(p) for p in args.items)
    if args.kind == "ddf":
        hit = ddf_equivalent(_family_from(a), _family_from(b))
        data = {"equivalent": hit is not None, "a": hit[0] if hit else None, "b": hit[1] if hit else None}
    else:
        S1 = Fhs.from_json(a if "words" in a else {"words": [a["symbols"]], **({"q": a["q"]} if "q" in a else {})})
        S2 = Fhs.from_json(b if "words" in b else {"words": [b["symbols"]], **({"q": b["q"]} if "q" in b else {})})
        hit = fhs_equivalent(S1, S2)
        data = {"equivalent": hit is not None}
        if hit:
            data["symbol_map"] = list(hit[0])
            data["position_map"] = hit[1].to_json()
    notes = [] if data["equivalent"] else ["not equivalent"]
    return _report(True, data, notes), 0


def cmd_primitive(args) -> tuple[dict, int]:
    F = _field(args)
    polys = enumerate_primitive(F, args.n)
    data = {
        "field": field_to_json(F),
        "n": args.n,
        "count": len(polys),
        "expected": euler_phi(F.q ** args.n - 1) // args.n,
        "polys": [{"coeffs": f.to_list(), "text": str(f)} for f in polys],
    }
    return _report(True, data), 0


def cmd_verify_paper(args) -> tuple[dict, int]:
    taps = _int_list(args.taps) if args.taps else LFSR_TAPS
    results, elapsed = timed_golden(taps)
    failed = [r.ident for r in results if not r.ok]
    data = {"results": [r.to_json() for r in results], "failed": failed}
    notes = [f"{len(results) - len(failed)}/{len(results)} reference vectors reproduced in {elapsed:.2f}s"]
    if args.json:
        # keep output byte-identical across runs
        notes = [f"{len(results) - len(failed)}/{len(results)} reference vectors reproduced"]
    return _report(not failed, data, notes), 0 if not failed else 1


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------

def _globals(parser: argparse.ArgumentParser, suppress: bool) -> None:
    kw = {"default": argparse.SUPPRESS} if suppress else {}
    parser.add_argument("--json", action="store_true", help="machine-readable output", **kw)
    parser.add_argument("--seed", type=int, help="accepted for compatibility; every algorithm is deterministic", **kw)


def _field_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--p", type=int, required=True, help="field characteristic")
    parser.add_argument("--m", type=int, default=1, help="extension degree (q = p^m)")
    parser.add_argument("--modulus", help="irreducible modulus for GF(p^m), constant first")


def _scheme_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("input", nargs="?", help="scheme JSON (path or - for stdin)")
    parser.add_argument("--word", action="append", help="a word as comma separated symbols (repeatable)")
    parser.add_argument("--q", type=int, help="alphabet size (defaults to max symbol + 1)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ddfkit",
        description="Difference families, hopping sequences, LFSR and geometric constructions.",
        epilog="Cycle notation is 1-indexed; internal positions are 0-indexed.",
    )
    ap.add_argument("--version", action="version", version=__version__)
    _globals(ap, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _globals(common, suppress=True)
    sub = ap.add_subparsers(dest="command", required=True)

    con = sub.add_parser("construct", help="build a family")
    csub = con.add_subparsers(dest="kind", required=True)
    lg = csub.add_parser("lg", parents=[common], help="sigma_k transform of an m-sequence")
    _field_args(lg)
    lg.add_argument("--n", type=int, required=True)
    lg.add_argument("--k", type=int, required=True)
    lg.add_argument("--taps", help="feedback taps c_0..c_{n-1}: s_{t+n} = sum c_i s_{t+i}")
    lg.add_argument("--poly", help="characteristic polynomial")
    lg.add_argument("--order", choices=("symbol", "window"), default="symbol", help="class order")
    lg.set_defaults(func=cmd_construct)
    geo = csub.add_parser("geometry", parents=[common], help="parallel class of affine flats in PG(n,q)")
    _field_args(geo)
    geo.add_argument("--n", type=int, required=True)
    geo.add_argument("--k", type=int, required=True)
    geo.add_argument("--poly", help="primitive polynomial (companion projectivity)")
    geo.add_argument("--matrix", help="explicit (n+1)x(n+1) projectivity as a JSON list of rows")
    geo.add_argument("--base", help="base point P_0, e.g. 1,0,0,1")
    geo.add_argument("--frame", help="point of H_inf the lines run through (k = n-1), e.g. 1,0,0,0")
    geo.add_argument("--order", help="coordinate order for the fibre map, e.g. 1,2,0")
    geo.set_defaults(func=cmd_construct)

    an = sub.add_parser("analyze", parents=[common], help="spectra, classification, applications")
    an.add_argument("input", nargs="?", help='family JSON {"v":..,"classes":[..]} (path or -)')
    an.set_defaults(func=cmd_analyze)

    co = sub.add_parser("correlate", parents=[common], help="Hamming correlation tables")
    _scheme_args(co)
    co.set_defaults(func=cmd_correlate)

    cl = sub.add_parser("closure", parents=[common], help="rotational closure and minimum distance")
    _scheme_args(cl)
    cl.set_defaults(func=cmd_closure)

    eq = sub.add_parser("equiv", parents=[common], help="equivalence witnesses")
    eq.add_argument("kind", choices=("ddf", "fhs", "perm"))
    eq.add_argument("items", nargs="+", help="two JSON files, or one cycle string for perm")
    eq.add_argument("--n", type=int, help="degree for perm mode")
    eq.set_defaults(func=cmd_equiv)

    pr = sub.add_parser("primitive", parents=[common], help="list primitive polynomials")
    _field_args(pr)
    pr.add_argument("--n", type=int, required=True)
    pr.set_defaults(func=cmd_primitive)

    vp = sub.add_parser("verify-paper", parents=[common], help="recompute every reference vector")
    vp.add_argument("--taps", help=argparse.SUPPRESS)
    vp.set_defaults(func=cmd_verify_paper)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    as_json = bool(getattr(args, "json", False))
    try:
        report, code = args.func(args)
    except (ValueError, KeyError, TypeError, OSError) as exc:
        msg = f"missing field {exc.args[0]!r}" if isinstance(exc, KeyError) else str(exc)
        err = {"type": type(exc).__name__, "message": msg}
        emit({"ok": False, "data": None, "notes": [], "error": err}, as_json)
        return 2
    emit(report, as_json)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
