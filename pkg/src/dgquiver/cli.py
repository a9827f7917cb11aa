"""Command-line front end.

Exit codes: 0 all requested checks pass, 1 a check failed, 2 invalid
input, 3 a resource cap was hit.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import serialize
from .cy import cy_check
from .differential import DGModel, check_d_squared, check_grading
from .errors import InvalidInputError, ResourceLimitError
from .ginzburg import ginzburg_model, restrict_potential
from .homology import cohomology_dims, compare_h0
from .koszul import McKayData, delete_vertex, mckay_model, polynomial_model


def _parse_weights(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise InvalidInputError(f"bad weight list {text!r}") from None


def _emit(args, doc):
    text = serialize.dumps(doc)
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInputError(f"cannot read {path}: {exc}") from exc


def _max_adeg(model: DGModel) -> int:
    return max((a.adeg for a in model.quiver.arrows), default=0)


def _run_verifications(model: DGModel, what: str, nadams: int | None) -> list[dict]:
    reports = []
    if what in ("grading", "all"):
        reports.append(check_grading(model.differential))
    if what in ("dsq", "all"):
        reports.append(check_d_squared(model.differential, nadams or _max_adeg(model)))
    return reports


def _mckay_data(args) -> McKayData:
    weights = _parse_weights(args.weights)
    reduced = tuple(a % args.m for a in weights)
    warnings = []
    if reduced != weights:
        warnings.append(f"weights reduced mod {args.m}: {list(weights)} -> {list(reduced)}")
    data = McKayData(args.m, reduced)
    warnings += list(data.warnings)
    if warnings:
        if args.strict:
            raise InvalidInputError("; ".join(warnings))
        for w in warnings:
            print(f"warning: {w}", file=sys.stderr)
    return data


def cmd_model_poly(args) -> int:
    model = polynomial_model(args.n)
    reports = _run_verifications(model, args.verify, None) if args.verify else []
    _emit(args, serialize.model_to_json(model))
    return _report_status(reports)


def cmd_model_mckay(args) -> int:
    model = mckay_model(_mckay_data(args))
    if args.delete_zero:
        model = delete_vertex(model, 0)
    reports = _run_verifications(model, args.verify, None) if args.verify else []
    _emit(args, serialize.model_to_json(model))
    return _report_status(reports)


def cmd_ginzburg(args) -> int:
    quiver = serialize.quiver_from_json(_load(args.quiver))
    w = serialize.potential_from_json(quiver, _load(args.potential))
    if args.delete_vertex is not None:
        v = _coerce_vertex(quiver, args.delete_vertex)
        w = restrict_potential(w, v)
    model = ginzburg_model(w)
    reports = _run_verifications(model, "dsq", None) if args.verify else []
    _emit(args, serialize.model_to_json(model))
    return _report_status(reports)


def _coerce_vertex(quiver, text: str):
    if text in quiver.vertices:
        return text
    try:
        v = int(text)
    except ValueError:
        v = text
    if v not in quiver.vertices:
        raise InvalidInputError(f"unknown vertex {text!r}")
    return v


def cmd_cohomology(args) -> int:
    model = serialize.model_from_json(_load(args.model))
    table = cohomology_dims(model, args.hmin, args.adams_max)
    if args.format == "table":
        lines = ["h\\a " + " ".join(f"{a:>4}" for a in range(args.adams_max + 1))]
        for h in range(0, args.hmin - 1, -1):
            lines.append(f"{h:>4} " + " ".join(f"{table[(h, a)]:>4}" for a in range(args.adams_max + 1)))
        out = "\n".join(lines) + "\n"
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(out)
        else:
            sys.stdout.write(out)
    else:
        doc = {f"{h},{a}": v for (h, a), v in table.items()}
        _emit(args, {"check": "cohomology", "hmin": args.hmin, "adams_max": args.adams_max, "dims": doc})
    return 0


def cmd_compare_h0(args) -> int:
    model = serialize.model_from_json(_load(args.model))
    pres = serialize.presentation_from_json(_load(args.presentation))
    arrow_map = vertex_map = None
    if args.map:
        doc = _load(args.map)
        arrow_map = doc.get("arrows")
        vertex_map = doc.get("vertices")
        if vertex_map is not None:
            vertex_map = {_intish(k): v for k, v in vertex_map.items()}
    report = compare_h0(model, pres, args.adams_max, arrow_map, vertex_map)
    _emit(args, report)
    return 0 if report["status"] == "pass" else 1


def _intish(key):
    try:
        return int(key)
    except (TypeError, ValueError):
        return key


def cmd_cy_check(args) -> int:
    report = cy_check(_mckay_data(args), args.adams_max)
    _emit(args, report)
    return 0 if report["status"] == "pass" else 1


def cmd_verify(args) -> int:
    model = serialize.model_from_json(_load(args.model))
    reports = _run_verifications(model, "all", args.adams_max)
    _emit(args, {"checks": reports})
    return _report_status(reports)


def _report_status(reports) -> int:
    for r in reports:
        if r["status"] != "pass":
            sys.stderr.write(serialize.dumps(r))
            return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dgquiver",
        description="Exact symbolic computation with differential graded path algebras",
    )
    parser.add_argument(
        "--threads",
        type=int,
        default=1,
        help="worker-count cap (computations currently run in a single worker)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("model-poly", help="minimal model of a polynomial ring")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--verify", choices=["dsq", "grading", "all"])
    p.add_argument("--out")
    p.set_defaults(func=cmd_model_poly)

    p = sub.add_parser("model-mckay", help="McKay minimal model for Z/m with weights")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--weights", required=True, help="comma separated, e.g. 1,1,1,1")
    p.add_argument("--delete-zero", action="store_true", help="delete vertex 0")
    p.add_argument("--verify", choices=["dsq", "grading", "all"])
    p.add_argument("--strict", action="store_true", help="escalate hypothesis warnings to errors")
    p.add_argument("--out")
    p.set_defaults(func=cmd_model_mckay)

    p = sub.add_parser("ginzburg", help="Ginzburg DG algebra from a quiver with potential")
    p.add_argument("--quiver", required=True)
    p.add_argument("--potential", required=True)
    p.add_argument("--delete-vertex")
    p.add_argument("--verify", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_ginzburg)

    p = sub.add_parser("cohomology", help="truncated cohomology dimension table")
    p.add_argument("--model", required=True)
    p.add_argument("--hmin", type=int, required=True)
    p.add_argument("--adams-max", type=int, required=True)
    p.add_argument("--format", choices=["json", "table"], default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("compare-h0", help="compare H^0 of a model with a presented algebra")
    p.add_argument("--model", required=True)
    p.add_argument("--presentation", required=True)
    p.add_argument("--map", help="JSON {arrows: {...}, vertices: {...}}")
    p.add_argument("--adams-max", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_compare_h0)

    p = sub.add_parser("cy-check", help="weight-sum split, C Koszulity and omega checks")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--weights", required=True)
    p.add_argument("--adams-max", type=int, default=5)
    p.add_argument("--strict", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_cy_check)

    p = sub.add_parser("verify", help="grading and d^2 checks on a model file")
    p.add_argument("--model", required=True)
    p.add_argument("--adams-max", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        parser.error("--threads must be >= 1")
    try:
        return args.func(args)
    except InvalidInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
