"""Command-line front end.

Three subcommands: `semigroup` reports the combinatorics of a numerical
semigroup (gaps, standard basis, trace monomials, Young diagram),
`curve` runs the exact pipeline described by a curve-spec file, and
`fixtures` lists or emits ready-to-run spec files for the built-in
example curves.

Exit codes: 0 success, 1 verification failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import specfile
from .curve import (
    DegreeAnomaly,
    DegreeBoundViolated,
    IdentityViolation,
    NonPolynomialTrace,
    NoSolutionBelowCap,
    Reducible,
    TableInvalid,
)
from .fixtures import default_params, fixture_names
from .monomial import InvalidTraceDegree, MonomialRing
from .numverify import NearBranchPoint, ToleranceExceeded, verification_suite
from .semigroup import NumericalSemigroup

_VERIFY_FAIL = (
    IdentityViolation,
    TableInvalid,
    NoSolutionBelowCap,
    NonPolynomialTrace,
    DegreeAnomaly,
    ToleranceExceeded,
    NearBranchPoint,
)
_INPUT_FAIL = (
    specfile.SpecError,
    InvalidTraceDegree,
    DegreeBoundViolated,
    Reducible,
    KeyError,
    ValueError,
)


def _emit_json(obj):
    print(json.dumps(obj, indent=2, default=str))


def _columns(rows) -> str:
    widths = [max(len(r[c]) for r in rows) for c in range(len(rows[0]))]
    return "\n".join(
        "  ".join(cell.rjust(w) for cell, w in zip(row, widths)).rstrip()
        for row in rows
    )


def _run_length(vals) -> str:
    groups = []
    for v in vals:
        if groups and groups[-1][0] == v:
            groups[-1][1] += 1
        else:
            groups.append([v, 1])
    inner = ", ".join(f"{v}^{n}" if n > 1 else f"{v}" for v, n in groups)
    return "{" + inner + "}"


def _young_ascii(young) -> str:
    if not young:
        return "(empty)"
    return "\n".join("#" * width for width in reversed(young))


# -- semigroup -------------------------------------------------------------


def _class_zero_alternative(H: NumericalSemigroup, d: int):
    """Least valid trace degree whose diagonal monomial is a pure power
    of Z_r, when the one at hand is not."""
    for cand in H.valid_trace_degrees(d + H.conductor + H.r * H.r):
        if cand % H.r == 0:
            return cand
    return None


def cmd_semigroup(args) -> int:
    H = NumericalSemigroup(args.generators)
    rec = H.to_record()
    d = args.dh if args.dh is not None else H.minimal_trace_degree()
    mono = MonomialRing(H)
    data = mono.trace_monomials(d)
    trace = data.to_record()

    note = None
    if not H.is_symmetric() and data.ell != 0:
        alt = _class_zero_alternative(H, d)
        if alt is not None and alt != d:
            note = (
                f"trace degree {d} lies in residue class {data.ell}, so the "
                f"diagonal {trace['h_diagonal']} is not a pure power of "
                f"Z{H.r}; the least valid degree with a class-0 diagonal "
                f"is {alt} (rerun with --dh {alt})"
            )

    if args.json:
        out = dict(rec)
        out["trace"] = trace
        if note is not None:
            out["note"] = note
        _emit_json(out)
        return 0

    print(f"H = <{', '.join(str(n) for n in H.generators)}>")
    print("gaps: " + (" ".join(str(n) for n in H.gaps) if H.gaps else "(none)"))
    print(
        f"genus: {H.genus}   conductor: {H.conductor}   "
        f"Frobenius: {H.frobenius()}"
    )
    print("standard basis: " + " ".join(str(n) for n in rec["standard_basis"]))
    print(f"Schubert index: {_run_length(rec['schubert'])}")
    print("Young diagram:")
    print(_young_ascii(rec["young"]))
    print("symmetric: " + ("yes" if rec["symmetric"] else "no"))
    print()
    minimal = " (minimal)" if trace["minimal_degree"] else ""
    print(f"trace monomials at degree {d}{minimal}:")
    idx = list(range(H.r))
    rows = [
        ["i"] + [str(i) for i in idx],
        ["e_i"] + [str(e) for e in rec["standard_basis"]],
        ["ehat_i"] + [str(w) for w in trace["ehat"]],
        ["left"] + [m["left"] for m in trace["monomials"]],
    ]
    print(_columns(rows))
    print(f"h = {trace['h_diagonal']}")
    if note is not None:
        print(f"note: {note}")
    return 0


# -- curve -----------------------------------------------------------------


def _spec_summary(spec: specfile.CurveSpec) -> dict:
    out = {"kind": spec.kind}
    if spec.kind == "fixture":
        out["name"] = spec.name
    elif spec.kind == "plane":
        out["r"] = spec.r
        out["s"] = spec.s
    else:
        out["generators"] = list(spec.generators)
    return out


def _curve_check(args, spec) -> int:
    summary = _spec_summary(spec)
    try:
        alg = specfile.build(spec)
    except TableInvalid as exc:
        if args.json:
            _emit_json({"valid": False, "reason": str(exc), **summary})
        else:
            print(f"table invalid: {exc}")
        return 1
    summary["r"] = alg.r
    summary["generators"] = list(alg.H.generators)
    if args.json:
        _emit_json({"valid": True, **summary})
    else:
        gens = ", ".join(str(n) for n in alg.H.generators)
        print(f"table valid: kind={spec.kind} r={alg.r} generators=<{gens}>")
    return 0


def _curve_trace(args, alg, opts) -> int:
    kit = alg.annihilator_solve(opts.dh_override)
    inv = kit.invariants_report()
    upsilon = [alg.element_label(u) for u in kit.upsilon]
    yhat = [alg.element_label(y) for y in kit.yhat_family("truncated")]
    if args.json:
        _emit_json(
            {
                "d_h": kit.d_h,
                "ehat": list(kit.ehat),
                "h_X": alg.element_label(kit.hX),
                "invariants": inv,
                "upsilon": upsilon,
                "yhat_truncated": yhat,
            }
        )
        return 0
    forced = " (forced)" if opts.dh_override is not None else ""
    print(f"d_h = {kit.d_h}{forced}")
    print(f"ehat = ({', '.join(str(w) for w in kit.ehat)})")
    print(f"h_X = {alg.element_label(kit.hX)}")
    g = alg.H.genus
    print(
        f"identities: kX = d_h - 2g - r + 1 = {inv['kX']}; "
        f"chat_X = 2g = {inv['chat_X']}; c_X = {inv['c_X']}; "
        f"symmetric: {'yes' if inv['symmetric'] else 'no'} (g = {g})"
    )
    rows = [["i", "weight", "dual element"]]
    for i, label in enumerate(upsilon):
        rows.append([str(i), str(kit.ehat[i]), label])
    print("dual family Upsilon:")
    print(_columns(rows))
    rows = [["i", "yhat (truncated)"]]
    for i, label in enumerate(yhat):
        rows.append([str(i), label])
    print(_columns(rows))
    return 0


def _curve_differentials(args, alg, opts, count) -> int:
    kit = alg.annihilator_solve(opts.dh_override)
    basis = kit.differential_basis(count)
    rec = basis.to_record(alg)
    if args.json:
        _emit_json(rec)
        return 0
    print(
        f"differential stream phi_n = numerator / h_X dx, "
        f"d_h = {basis.d_h}, holomorphic count g = {basis.holomorphic_count}"
    )
    rows = [["n", "weight", "gap wt", "numerator"]]
    for n, en in enumerate(rec["entries"]):
        rows.append(
            [str(n), str(en["weight"]), str(en["gap_weight"]), en["numerator"]]
        )
    text = _columns(rows).splitlines()
    for n, line in enumerate(text):
        if n == basis.holomorphic_count + 1:
            print("-" * len(max(text, key=len)))
        print(line)
    return 0


def _series_terms(series, limit: int = 5):
    return [(n, str(c)) for n, c in series.terms()[:limit]]


def _curve_expand(args, alg, opts, order) -> int:
    kit = alg.annihilator_solve(opts.dh_override)
    rep = kit.expand_at_infinity(order)
    nu = [
        {
            "exponent": en.exponent,
            "scale": str(en.scale),
            "terms": _series_terms(en.series),
        }
        for en in rep.nu
    ]
    if args.json:
        _emit_json(
            {
                "order": rep.order,
                "s": rep.s,
                "i_s": rep.i_s,
                "i_r": rep.i_r,
                "w0": str(rep.w0),
                "x": _series_terms(rep.x),
                "nu": nu,
            }
        )
        return 0
    print(
        f"expansion at infinity to order {rep.order}: local data "
        f"s = {rep.s}, i_s = {rep.i_s}, i_r = {rep.i_r}, W0 = {rep.w0}"
    )
    xterms = " + ".join(f"({c})t^{n}" for n, c in _series_terms(rep.x, 3))
    print(f"x = {xterms} + ...")
    for i, en in enumerate(nu):
        tail = ", ".join(f"({c})t^{n}" for n, c in en["terms"][1:4])
        more = f"; next terms {tail}" if tail else ""
        print(
            f"nu_{i}: t^{en['exponent']}(1 + O(t)) dt, "
            f"scale {en['scale']}{more}"
        )
    return 0


def _curve_verify(args, alg, opts, order, tol, seed) -> int:
    started = time.monotonic()
    stages = []
    messages = []

    def stage(name, fn):
        value = fn()
        stages.append(name)
        if not args.json:
            print(f"ok: {name}")
        return value

    kit = stage("trace tensor and duality battery", lambda: alg.annihilator_solve(opts.dh_override))
    inv = stage("weight and conductor identities", kit.invariants_report)
    stage("differential stream gap theorem", kit.differential_basis)
    stage("series expansion at infinity", lambda: kit.expand_at_infinity(order))

    def numerics():
        suite = verification_suite(kit, samples=10, seed=seed, tol=tol)
        if not suite["branch_degree_matches"]:
            raise ToleranceExceeded(
                f"branch multiplicity total {suite['branch_total']} does not "
                f"match the trace form degree {suite['branch_expected']}"
            )
        return suite

    suite = stage("numerical sampling", numerics)
    elapsed = time.monotonic() - started
    if args.json:
        _emit_json(
            {
                "valid": True,
                "d_h": kit.d_h,
                "invariants": inv,
                "stages": stages,
                "numerical": suite,
                "elapsed_s": round(elapsed, 3),
            }
        )
        return 0
    print(
        f"all checks passed: d_h = {kit.d_h}, "
        f"{len(suite['samples'])} sample points, "
        f"max indicator error {suite['max_indicator_error']:.2e}, "
        f"max trace error {suite['max_trace_error']:.2e}, "
        f"{elapsed:.2f}s"
    )
    return 0


def cmd_curve(args) -> int:
    spec = specfile.load(args.spec)
    opts = spec.options
    tol = args.tol if args.tol is not None else opts.tolerance
    seed = args.seed if args.seed is not None else opts.seed
    order = args.order if args.order is not None else opts.series_order
    if args.action == "check":
        return _curve_check(args, spec)
    alg = specfile.build(spec)
    if args.action == "trace":
        return _curve_trace(args, alg, opts)
    if args.action == "differentials":
        return _curve_differentials(args, alg, opts, order)
    if args.action == "expand":
        return _curve_expand(args, alg, opts, order)
    return _curve_verify(args, alg, opts, order, tol, seed)


# -- fixtures --------------------------------------------------------------


def cmd_fixtures(args) -> int:
    if args.action == "list":
        rows = [["name", "generators", "parameters"]]
        for name in fixture_names():
            params = default_params(name)
            summary = ", ".join(f"{k}[{len(v)}]" for k, v in sorted(params.items()))
            gens = specfile.build(specfile.fixture_spec(name)).H.generators
            rows.append([name, f"<{', '.join(str(n) for n in gens)}>", summary])
        print(_columns(rows))
        return 0
    if args.name is None:
        raise specfile.SpecError("emit needs a fixture name")
    sys.stdout.write(specfile.dumps(specfile.fixture_spec(args.name)))
    return 0


# -- entry point -----------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wcurve",
        description="exact trace tensors, dual bases and differentials "
        "for curves with one place at infinity",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    ps = sub.add_parser("semigroup", help="numerical semigroup report")
    ps.add_argument("generators", type=int, nargs="+", metavar="GEN")
    ps.add_argument(
        "--dh",
        type=int,
        default=None,
        help="trace degree for the monomial table (default: minimal valid)",
    )
    ps.add_argument("--json", action="store_true", help="machine output")
    ps.set_defaults(func=cmd_semigroup)

    pc = sub.add_parser("curve", help="run the pipeline on a curve-spec file")
    pc.add_argument("spec", help="path to a TOML curve-spec file")
    pc.add_argument(
        "action",
        choices=["check", "trace", "differentials", "expand", "verify"],
    )
    pc.add_argument(
        "--order",
        type=int,
        default=None,
        help="series order for expand/verify, entry count for differentials",
    )
    pc.add_argument(
        "--tol", type=float, default=None, help="numerical tolerance for verify"
    )
    pc.add_argument(
        "--seed", type=int, default=None, help="sample-point seed for verify"
    )
    pc.add_argument("--json", action="store_true", help="machine output")
    pc.set_defaults(func=cmd_curve)

    pf = sub.add_parser("fixtures", help="built-in example curves")
    pf.add_argument("action", choices=["list", "emit"])
    pf.add_argument("name", nargs="?", help="fixture name (emit only)")
    pf.set_defaults(func=cmd_fixtures)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _VERIFY_FAIL as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 1
    except _INPUT_FAIL as exc:
        detail = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {detail}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
