"""Command-line surface: JSON in, JSON out, three exit codes.

Exit codes: 0 = ran, nothing found; 1 = ran, violation or obstruction
found; 2 = input or budget error.  Every command emits a single JSON
envelope {"command", "input_digest", "result", "status"} on stdout.
Randomized commands take --seed (default: SPECTRA_SEED env var, else 42)
and echo the seed they used.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from fractions import Fraction

from . import detrep, jumpsys, matroid, polymat, polyx, realcheck
from . import reduce as reduction
from .bitsets import mask_from_elements

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_ERROR = 2

DEFAULT_SEED = 42


class InputError(Exception):
    """Bad input or exceeded budget; maps to exit code 2."""


def _default_seed() -> int:
    env = os.environ.get("SPECTRA_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise InputError(f"SPECTRA_SEED must be an integer, got {env!r}") from exc
    return DEFAULT_SEED


def _resolve_seed(args) -> int:
    return args.seed if args.seed is not None else _default_seed()


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _load_matroid(spec: str) -> matroid.Matroid:
    if spec == "vamos":
        return matroid.vamos()
    obj = _load_json(spec)
    try:
        return matroid.matroid_from_json(obj)
    except matroid.MatroidError as exc:
        raise InputError(f"invalid matroid: {exc}") from exc


def _load_poly(path: str) -> polyx.Polynomial:
    try:
        return polyx.poly_from_json(_load_json(path))
    except (KeyError, ValueError, TypeError) as exc:
        raise InputError(f"invalid polynomial in {path}: {exc}") from exc


def _parse_vector(text: str) -> list[Fraction]:
    try:
        return [Fraction(part.strip()) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise InputError(f"cannot parse rational vector {text!r}") from exc


def _parse_elements(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise InputError(f"cannot parse element list {text!r}") from exc


def _digest(payload) -> str:
    canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"), default=str)
    return hashlib.sha256(canonical.encode()).hexdigest()[:16]


# ---------------------------------------------------------------------
# command handlers: each returns (inputs, result, status)
# ---------------------------------------------------------------------


def cmd_vamos(args):
    M = matroid.vamos()
    return {"matroid": "vamos"}, matroid.matroid_to_json(M), "ok"


def cmd_rank(args):
    M = _load_matroid(args.matroid)
    subset = mask_from_elements(_parse_elements(args.set), M.n)
    value = M.rank(subset)
    inputs = {"matroid": args.matroid, "set": args.set}
    return inputs, {"set": _parse_elements(args.set), "rank": value}, "ok"


def cmd_bases_poly(args):
    M = _load_matroid(args.matroid)
    h = matroid.bases_polynomial(M)
    return {"matroid": args.matroid}, polyx.poly_to_json(h), "ok"


def cmd_polymatroid_check(args):
    table = _load_rank_table(args.table)
    violations = polymat.check_polymatroid(table)
    result = {
        "violations": [v.to_json() for v in violations],
        "is_polymatroid": not violations,
    }
    return {"table": args.table}, result, "ok" if not violations else "violation"


def _load_rank_table(path: str) -> polymat.RankTable:
    try:
        return polymat.rank_table_from_json(_load_json(path))
    except (KeyError, ValueError, TypeError) as exc:
        raise InputError(f"invalid rank table in {path}: {exc}") from exc


def _parse_quadruple(text: str, n: int) -> polymat.IngletonQuadruple:
    if text == "vamos":
        if n != 8:
            raise InputError("the named quadruple needs an 8-element ground set")
        return polymat.VAMOS_QUADRUPLE
    groups = text.split(";")
    if len(groups) != 4:
        raise InputError("quadruple format: 'e,e;e,e;e,e;e,e' or 'vamos'")
    masks = [mask_from_elements(_parse_elements(g), n) for g in groups]
    return polymat.IngletonQuadruple(*masks)


def cmd_ingleton(args):
    table = _load_rank_table(args.table)
    inputs = {"table": args.table, "quadruple": args.quadruple, "scan": args.scan}
    if args.scan is not None:
        try:
            hits = polymat.ingleton_scan(table, args.scan, full_limit=args.max_full_scan)
        except polymat.ScanBudgetExceeded as exc:
            raise InputError(f"{exc}; raise the budget with --max-full-scan") from exc
        result = {
            "mode": args.scan,
            "violations": [
                {"quadruple": q.to_json(), "deficit": deficit} for q, deficit in hits
            ],
        }
        return inputs, result, "violation" if hits else "ok"
    quadruple = _parse_quadruple(args.quadruple, table.n)
    result = polymat.ingleton_report(table, quadruple)
    return inputs, result, "violation" if result["deficit"] > 0 else "ok"


def cmd_jumpsystem(args):
    try:
        J = jumpsys.lattice_from_json(_load_json(args.points))
    except (KeyError, ValueError, TypeError) as exc:
        raise InputError(f"invalid lattice point set: {exc}") from exc
    violations = jumpsys.check_axiom_J(J)
    result = {
        "violations": [v.to_json() for v in violations],
        "is_jump_system": not violations,
    }
    return {"points": args.points}, result, "ok" if not violations else "violation"


def _load_representation(path: str) -> detrep.Representation:
    try:
        return detrep.representation_from_json(_load_json(path))
    except (KeyError, ValueError, TypeError) as exc:
        raise InputError(f"invalid representation in {path}: {exc}") from exc


def cmd_expand_det(args):
    rep = _load_representation(args.rep)
    try:
        p = detrep.expand_det_affine(rep, size_limit=args.max_size)
    except detrep.SizeBudgetExceeded as exc:
        raise InputError(f"{exc}; raise the budget with --max-size") from exc
    return {"rep": args.rep}, polyx.poly_to_json(p), "ok"


def cmd_cauchy_binet(args):
    try:
        B = detrep.matrix_from_json(_load_json(args.matrix))
        p = detrep.cauchy_binet_expand(B)
    except (KeyError, ValueError, TypeError) as exc:
        raise InputError(str(exc)) from exc
    return {"matrix": args.matrix}, polyx.poly_to_json(p), "ok"


def cmd_verify_rep(args):
    p = _load_poly(args.poly)
    rep = _load_representation(args.rep)
    try:
        comparison = detrep.verify_representation(p, rep)
    except (ValueError, detrep.SizeBudgetExceeded) as exc:
        raise InputError(str(exc)) from exc
    inputs = {"poly": args.poly, "rep": args.rep}
    return inputs, comparison.to_json(), "ok" if comparison.equal else "violation"


def cmd_reduce_rep(args):
    obj = _load_json(args.rep)
    try:
        matrices = [_float_matrix(A) for A in obj["pencil"]]
        if obj.get("A0") is not None:
            a0 = _float_matrix(obj["A0"])
            import numpy as np

            if float(abs(a0 - np.eye(a0.shape[0])).max()) > args.tol_monic:
                raise InputError("reduce-rep needs a monic representation (A0 = I)")
    except (KeyError, ValueError, TypeError) as exc:
        raise InputError(f"invalid representation in {args.rep}: {exc}") from exc
    tol = reduction.Tolerances(
        psd=args.tol_psd, rank=args.tol_rank, monic=args.tol_monic
    )
    seed = _resolve_seed(args)
    try:
        report = reduction.run_reduction(matrices, args.degree, tol, seed=seed)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    result = report.to_json()
    if report.status == "ok":
        result["monic_pencil"] = [_matrix_json(B) for B in report.monic.pencil]
    inputs = {"rep": args.rep, "degree": args.degree, "seed": seed}
    return inputs, result, "ok" if report.status == "ok" else "violation"


def _float_matrix(obj):
    import numpy as np

    entries = obj["entries"]
    out = []
    for row in entries:
        out_row = []
        for x in row:
            if isinstance(x, dict):
                out_row.append(complex(float(_to_float(x["re"])), float(_to_float(x["im"]))))
            else:
                out_row.append(complex(_to_float(x), 0.0))
        out.append(out_row)
    return np.asarray(out, dtype=np.complex128)


def _to_float(x) -> float:
    if isinstance(x, str):
        return float(Fraction(x))
    return float(x)


def _matrix_json(M) -> dict:
    entries = []
    for row in M:
        out_row = []
        for x in row:
            if abs(x.imag) == 0.0:
                out_row.append(float(x.real))
            else:
                out_row.append({"re": float(x.real), "im": float(x.imag)})
        entries.append(out_row)
    return {
        "rows": int(M.shape[0]),
        "cols": int(M.shape[1]),
        "hermitian": True,
        "entries": entries,
    }


def cmd_rz_check(args):
    p = _load_poly(args.poly)
    seed = _resolve_seed(args)
    directions = realcheck.sample_directions(p.num_vars, args.dirs, seed)
    verdicts = realcheck.rz_check(p, directions)
    failures = [v for v in verdicts if not v.real_rooted]
    result = {
        "seed": seed,
        "directions": args.dirs,
        "all_real_rooted": not failures,
        "verdicts": [v.to_json() for v in verdicts],
    }
    inputs = {"poly": args.poly, "dirs": args.dirs, "seed": seed}
    return inputs, result, "ok" if not failures else "violation"


def cmd_hyperbolic_rank(args):
    h = _load_poly(args.poly)
    e = _parse_vector(args.e)
    x = _parse_vector(args.x)
    try:
        value = realcheck.hyperbolic_rank(h, e, x)
    except (realcheck.ZeroAtEError, ValueError) as exc:
        raise InputError(str(exc)) from exc
    inputs = {"poly": args.poly, "e": args.e, "x": args.x}
    return inputs, {"rank": value}, "ok"


def cmd_counterexample(args):
    M = _load_matroid(args.matroid)
    seed = _resolve_seed(args)
    verdict = run_counterexample_pipeline(
        M, directions=args.dirs, samples=args.samples, seed=seed
    )
    inputs = {
        "matroid": args.matroid,
        "dirs": args.dirs,
        "samples": args.samples,
        "seed": seed,
    }
    status = "violation" if verdict["obstruction_found"] else "ok"
    return inputs, verdict, status


def run_counterexample_pipeline(
    M: matroid.Matroid, directions: int = 100, samples: int = 500, seed: int = DEFAULT_SEED
) -> dict:
    """Run the full obstruction pipeline on a matroid's bases polynomial.

    Stages: stability sampling of h_M; exact real-zero spot checks of
    h_M(x + 1); polymatroid axioms of the rank table; jump-system and
    constant-sum checks of the support; the Ingleton test (the named
    quadruple for the Vamos cube, a disjoint-pairs scan otherwise); and,
    if a positive deficit was found, the scaling statement that rules out
    determinantal representations of every power.
    """
    stages = []
    h = matroid.bases_polynomial(M)

    stability = realcheck.stability_sample(h, samples, seed)
    stages.append({"stage": "stability-sample", **stability.to_json()})

    shifted = polyx.shift(h, [1] * M.n)
    verdicts = realcheck.rz_check(
        shifted, realcheck.sample_directions(M.n, directions, seed)
    )
    rz_failures = [v.to_json() for v in verdicts if not v.real_rooted]
    stages.append(
        {
            "stage": "real-zero-check",
            "seed": seed,
            "directions": directions,
            "all_real_rooted": not rz_failures,
            "failures": rz_failures,
        }
    )

    table = polymat.RankTable.from_matroid(M)
    axioms = polymat.check_polymatroid(table)
    stages.append(
        {
            "stage": "polymatroid-axioms",
            "is_polymatroid": not axioms,
            "violations": [v.to_json() for v in axioms],
        }
    )

    J = jumpsys.LatticePointSet.from_polynomial(h)
    axiom_j = jumpsys.check_axiom_J(J)
    sums = jumpsys.maximal_constant_sum_check(J)
    stages.append(
        {
            "stage": "jump-system",
            "axiom_violations": [v.to_json() for v in axiom_j],
            "is_jump_system": not axiom_j,
            "maximal_sum": sums.to_json(),
        }
    )

    if M == matroid.vamos():
        report = polymat.ingleton_report(table, polymat.VAMOS_QUADRUPLE)
        deficit = report["deficit"]
        stages.append({"stage": "ingleton", "mode": "vamos-quadruple", **report})
    else:
        hits = polymat.ingleton_scan(table, "disjoint-pairs")
        deficit = max((d for _, d in hits), default=0)
        stages.append(
            {
                "stage": "ingleton",
                "mode": "disjoint-pairs",
                "violations": [
                    {"quadruple": q.to_json(), "deficit": d} for q, d in hits
                ],
            }
        )

    obstruction = deficit > 0
    if obstruction:
        scaled = {
            N: polymat.ingleton_check(polymat.scale(table, N), _best_quadruple(M, table))
            for N in (1, 2, 3)
        }
        stages.append(
            {
                "stage": "scaling",
                "deficit_at_power": {str(N): d for N, d in scaled.items()},
                "statement": (
                    "scaling the rank table by N scales the Ingleton deficit to "
                    f"N*{deficit}, which stays positive for every N >= 1"
                ),
            }
        )
        conclusion = (
            "Ingleton inequality fails with deficit "
            f"{deficit}: the rank function is not representable over any field, "
            "so no power p^N (N >= 1) of the shifted bases polynomial admits a "
            "monic determinantal representation"
        )
    else:
        conclusion = "no obstruction found by Ingleton"
    return {
        "matroid": {"n": M.n, "rank": M.rank_value, "bases": len(M.bases)},
        "stages": stages,
        "obstruction_found": obstruction,
        "conclusion": conclusion,
    }


def _best_quadruple(M: matroid.Matroid, table: polymat.RankTable) -> polymat.IngletonQuadruple:
    if M == matroid.vamos():
        return polymat.VAMOS_QUADRUPLE
    hits = polymat.ingleton_scan(table, "disjoint-pairs")
    return max(hits, key=lambda item: item[1])[0]


# ---------------------------------------------------------------------
# parser and dispatch
# ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spectra",
        description="Exact checks of obstructions to determinantal representability.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--pretty", action="store_true", help="indent the JSON output")
        p.set_defaults(handler=handler)
        return p

    add("vamos", cmd_vamos, "emit the Vamos cube fixture as matroid JSON")

    p = add("rank", cmd_rank, "matroid rank of a subset")
    p.add_argument("--matroid", default="vamos", help="matroid JSON path or 'vamos'")
    p.add_argument("--set", required=True, help="1-indexed elements, e.g. 1,4,5,6")

    p = add("bases-poly", cmd_bases_poly, "bases generating polynomial")
    p.add_argument("--matroid", default="vamos")

    p = add("polymatroid-check", cmd_polymatroid_check, "polymatroid axiom check")
    p.add_argument("--table", required=True, help="rank table JSON path")

    p = add("ingleton", cmd_ingleton, "Ingleton inequality at a quadruple or by scan")
    p.add_argument("--table", required=True)
    p.add_argument("--quadruple", default="vamos", help="'vamos' or 'e,e;e,e;e,e;e,e'")
    p.add_argument("--scan", choices=polymat.SCAN_MODES, default=None)
    p.add_argument("--max-full-scan", type=int, default=polymat.FULL_SCAN_LIMIT,
                   help="ground-set budget for the full scan")

    p = add("jumpsystem", cmd_jumpsystem, "two-step axiom check of a lattice point set")
    p.add_argument("--points", required=True, help="lattice point set JSON path")

    p = add("expand-det", cmd_expand_det, "exact polynomial of an affine pencil")
    p.add_argument("--rep", required=True, help="representation JSON path")
    p.add_argument("--max-size", type=int, default=detrep.MATRIX_SIZE_LIMIT,
                   help="matrix-size budget for exact expansion")

    p = add("cauchy-binet", cmd_cauchy_binet, "det(B diag(z) B*) by minor summation")
    p.add_argument("--matrix", required=True, help="matrix JSON path")

    p = add("verify-rep", cmd_verify_rep, "compare a polynomial with a pencil expansion")
    p.add_argument("--poly", required=True)
    p.add_argument("--rep", required=True)

    p = add("reduce-rep", cmd_reduce_rep, "reduce a monic pencil to degree size")
    p.add_argument("--rep", required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--tol-psd", type=float, default=reduction.Tolerances.psd)
    p.add_argument("--tol-rank", type=float, default=reduction.Tolerances.rank)
    p.add_argument("--tol-monic", type=float, default=reduction.Tolerances.monic)

    p = add("rz-check", cmd_rz_check, "exact real-zero test along sampled directions")
    p.add_argument("--poly", required=True)
    p.add_argument("--dirs", type=int, default=100)
    p.add_argument("--seed", type=int, default=None)

    p = add("hyperbolic-rank", cmd_hyperbolic_rank, "degree of t -> h(e + t*x)")
    p.add_argument("--poly", required=True)
    p.add_argument("--e", required=True, help="reference point, e.g. 1,1,1")
    p.add_argument("--x", required=True, help="direction, e.g. 1,0,1")

    p = add("counterexample", cmd_counterexample, "full obstruction pipeline")
    p.add_argument("--matroid", default="vamos")
    p.add_argument("--dirs", type=int, default=100)
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--seed", type=int, default=None)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        inputs, result, status = args.handler(args)
    except InputError as exc:
        _emit(args, {"command": args.command, "input_digest": None,
                     "result": {"error": str(exc)}, "status": "error"})
        return EXIT_ERROR
    except (matroid.MatroidError, polymat.ScanBudgetExceeded,
            detrep.SizeBudgetExceeded) as exc:
        _emit(args, {"command": args.command, "input_digest": None,
                     "result": {"error": str(exc)}, "status": "error"})
        return EXIT_ERROR
    envelope = {
        "command": args.command,
        "input_digest": _digest(inputs),
        "result": result,
        "status": status,
    }
    _emit(args, envelope)
    return EXIT_OK if status == "ok" else EXIT_VIOLATION


def _emit(args, envelope: dict):
    indent = 2 if getattr(args, "pretty", False) else None
    print(json.dumps(envelope, indent=indent))


def console_entry():
    sys.exit(main())


if __name__ == "__main__":
    console_entry()
