"""Command-line front end.

Subcommands: classify, witness, boundary (fig2 | fig3), decompose,
verify, oracle.  Classification exit codes: 0 separable, 2 entangled,
3 undetermined, 1 on input errors.  All output is deterministic for
fixed inputs and seeds.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from . import boundaries, decompositions, matching, oracle, states, witness

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_ENTANGLED = 2
EXIT_UNDETERMINED = 3

_VERDICT_EXIT = {
    matching.Verdict.SEPARABLE: EXIT_OK,
    matching.Verdict.ENTANGLED: EXIT_ENTANGLED,
    matching.Verdict.ENTANGLED_BY_NECESSITY: EXIT_ENTANGLED,
    matching.Verdict.UNDETERMINED: EXIT_UNDETERMINED,
}


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _write(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
            if not text.endswith("\n"):
                fh.write("\n")
    else:
        print(text)


def _load_state(path: str) -> states.GhzProbabilities:
    with open(path) as fh:
        return states.state_from_json(json.load(fh))


def _cmd_classify(args) -> int:
    state = _load_state(args.state)
    report = matching.report_json(state)
    _write(_dump(report), args.out)
    return _VERDICT_EXIT[matching.Verdict(report["verdict"])]


def _cmd_witness(args) -> int:
    with open(args.witness) as fh:
        w = witness.WitnessParams.from_json(json.load(fh))
    settings = witness.SearchSettings(grid=args.grid, max_iter=args.max_iter,
                                      step_tol=args.tol)
    result = witness.lambda_product_max(w, settings)
    doc = {
        "symmetric_sector": w.symmetric_sector,
        "lambda": result.value,
        "method": result.method,
    }
    if w.symmetric_sector:
        gt = witness.g_tilde(w.M[7], w.M[8], w.M[14])
        doc["g_tilde"] = float(gt)
        if gt > 0:
            doc["inside_polyhedron"] = witness.polyhedron_membership(
                w.diagonal / gt).inside
    if args.state:
        state = _load_state(args.state)
        doc["witness_value"] = witness.witness_value(state, w, result.value)
    _write(_dump(doc), args.out)
    return EXIT_OK


def _fig2_csv(rows) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(["label", "v", "alpha", "l_min"])
    for label, v, alpha, lm in rows:
        wr.writerow([label, repr(v), repr(alpha), repr(lm)])
    return buf.getvalue()


def _fig3_csv(rows) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(["label", "rho_1_16", "rho_4_13", "rho_2_15", "l_min"])
    for label, q, p, a, lm in rows:
        wr.writerow([label, repr(q), repr(p), repr(a), repr(lm)])
    return buf.getvalue()


def _cmd_boundary(args) -> int:
    if args.figure == "fig2":
        segments = boundaries.hs_boundary(args.p16, args.samples)
        rows = boundaries.fig2_rows(segments, args.p16)
        if args.format == "csv":
            text = _fig2_csv(rows)
        else:
            doc = {"p16": args.p16, "segments": [
                {"label": s.label, "source": s.source,
                 "points": [list(pt) for pt in s.points]} for s in segments]}
            if args.states:
                for sdoc, seg in zip(doc["segments"], segments):
                    sdoc["probabilities"] = [
                        [float(x) for x in boundaries.hs_point_state(args.p16, v, a).p]
                        for v, a in seg.points]
            text = _dump(doc)
        _write(text, args.out)
        if args.plot:
            from . import plotting
            plotting.plot_hs_boundary(segments, args.p16, args.plot)
        return EXIT_OK
    segments = boundaries.sym_surface(args.omega, args.grid)
    rows = boundaries.fig3_rows(segments, args.omega)
    if args.format == "csv":
        text = _fig3_csv(rows)
    else:
        doc = {"omega": args.omega, "segments": [
            {"label": s.label, "source": s.source,
             "points": [list(pt) for pt in s.points]} for s in segments]}
        text = _dump(doc)
    _write(text, args.out)
    if args.plot:
        from . import plotting
        plotting.plot_sym_surface(segments, args.omega, args.plot)
    return EXIT_OK


_CONSTRUCTIONS = {
    "rho3": (("phi", "sign"), lambda p: decompositions.rho3(p["phi"], int(p["sign"]))),
    "rho4": (("q1", "q2", "sign"),
             lambda p: decompositions.rho4(p["q1"], p["q2"], int(p["sign"]))),
    "line": (("p16", "q1", "q2", "branch"),
             lambda p: decompositions.line_state(p["p16"], p["q1"], p["q2"],
                                                 p["branch"])),
    "rho_pm": (("phi", "sign"),
               lambda p: decompositions.rho_pm(p["phi"], int(p["sign"]))),
    "curve": (("p16", "variant", "sin2phi"),
              lambda p: decompositions.curve_state(p["p16"], p["variant"],
                                                   p["sin2phi"])),
    "surface": (("mu", "phi", "variant"),
                lambda p: decompositions.sym_boundary_state(p["mu"], p["phi"],
                                                            p["variant"])),
    "parabola_face": (("q", "a", "face"),
                      lambda p: decompositions.parabola_face_state(
                          p["q"], p["a"], int(p["face"]))),
}


def _parse_params(text: str) -> dict:
    out: dict = {}
    if not text:
        return out
    for item in text.split(","):
        key, _, value = item.partition("=")
        key = key.strip()
        value = value.strip()
        try:
            out[key] = float(value)
        except ValueError:
            out[key] = value
    return out


def _cmd_decompose(args) -> int:
    if args.construction not in _CONSTRUCTIONS:
        print(f"unknown construction {args.construction!r}; "
              f"choose from {sorted(_CONSTRUCTIONS)}", file=sys.stderr)
        return EXIT_ERROR
    names, builder = _CONSTRUCTIONS[args.construction]
    params = _parse_params(args.params or "")
    missing = [n for n in names if n not in params]
    if missing:
        print(f"missing parameters {missing} for {args.construction}",
              file=sys.stderr)
        return EXIT_ERROR
    dec = builder(params)
    residual = None
    if args.target:
        target = _load_state(args.target)
        residual = decompositions.verify(dec, target).target_residual
    _write(_dump(dec.to_json(target_residual=residual)), args.out)
    return EXIT_OK


def _cmd_verify(args) -> int:
    target = _load_state(args.target)
    with open(args.decomposition) as fh:
        dec = decompositions.SeparableDecomposition.from_json(json.load(fh))
    report = decompositions.verify(dec, target)
    _write(_dump(report.to_json()), args.out)
    return EXIT_OK if report.target_residual <= args.tol else EXIT_ENTANGLED


def _cmd_oracle(args) -> int:
    fn = oracle.CHECKS[args.check]
    kwargs = {"seed": args.seed}
    if args.trials is not None:
        kwargs["trials"] = args.trials
    if args.check in ("check-gtilde", "check-rtilde") and args.grid:
        kwargs["grid"] = args.grid
    result = fn(**kwargs)
    _write(_dump(result), args.out)
    return EXIT_OK if result["ok"] else EXIT_ENTANGLED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ghzsep",
        description="Full-separability analysis of four-qubit GHZ-diagonal states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify a state file")
    p.add_argument("state")
    p.add_argument("--tol", type=float, default=matching.VERDICT_TOL)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("witness", help="evaluate a witness file")
    p.add_argument("witness")
    p.add_argument("--state")
    p.add_argument("--grid", type=int, default=11)
    p.add_argument("--max-iter", type=int, default=500)
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_witness)

    p = sub.add_parser("boundary", help="emit separable-set boundaries")
    bsub = p.add_subparsers(dest="figure", required=True)
    p2 = bsub.add_parser("fig2", help="highly symmetric (v, alpha) boundary")
    p2.add_argument("--p16", type=float, required=True)
    p2.add_argument("--samples", type=int, default=100)
    p2.add_argument("--format", choices=("csv", "json"), default="csv")
    p2.add_argument("--states", action="store_true",
                    help="include full weight vectors (json format)")
    p2.add_argument("--out")
    p2.add_argument("--plot", help="also render the boundary to this image file")
    p2.set_defaults(func=_cmd_boundary)
    p3 = bsub.add_parser("fig3", help="symmetric-family boundary surfaces")
    p3.add_argument("--omega", type=float, default=1.0 / 16.0)
    p3.add_argument("--grid", type=int, default=50)
    p3.add_argument("--format", choices=("json", "csv"), default="json")
    p3.add_argument("--out")
    p3.add_argument("--plot", help="also render the surfaces to this image file")
    p3.set_defaults(func=_cmd_boundary)

    p = sub.add_parser("decompose", help="build a separable decomposition")
    p.add_argument("--target", help="state file to report the residual against")
    p.add_argument("--construction", required=True)
    p.add_argument("--params", default="")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("verify", help="verify a decomposition against a target")
    p.add_argument("--target", required=True)
    p.add_argument("--decomposition", required=True)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("oracle", help="run numeric consistency suites")
    p.add_argument("check", choices=sorted(oracle.CHECKS))
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--grid", type=int)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_oracle)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ValueError, KeyError, json.JSONDecodeError,
            states.InvalidStateError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
