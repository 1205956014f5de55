"""Command-line frontend.

Subcommands map one-to-one onto module operations: encode, dags, se,
supermod, ineq, polytope, export-lp, verify.  All vector I/O is JSON with
rationals as "p/q" strings; outputs are byte-deterministic (sorted keys, no
timestamps unless --timings is given).  Exit codes: 0 success, 1 failed
verification, 2 usage error, 3 budget exhaustion.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .dags import Dag, enumerate_dags, enumerate_equivalence_classes
from .dd import Budget
from .encodings import char_from_fam, fam_vector, standard_imset
from .errors import BnPolyError, BudgetExceededError
from .ground import (
    CharVector,
    FamVector,
    GroundSet,
    char_from_json,
    char_to_json,
    fam_from_json,
    fam_to_json,
    setfn_from_json,
    setfn_to_json,
)
from .ineq import (
    catalog_se_n4,
    catalog_specific_n4,
    cluster_char,
    cluster_fam,
    export_lp,
    LinearInequality,
)
from .polyhedra import (
    HRep,
    VRep,
    cip_vrep,
    face_of,
    facets_from_vertices,
    fvp_vrep,
    hrep_from_matrix_text,
    hrep_to_matrix_text,
    is_facet,
    vertices_from_inequalities,
)
from .scoreeq import char_objective, is_se_face, is_se_objective, objective_from_setfn, setfn_from_objective
from .supermod import (
    cluster_pairs,
    core_vertices,
    duality_transform,
    is_extreme,
    is_supermodular,
)
from .verify import (
    explore_conjecture,
    verify_counterexample,
    verify_n3,
    verify_n4,
    verify_theorem3,
    verify_theorem3_n5,
)

SCHEMA = "bnpoly/cli/1"


def _emit(payload: dict) -> None:
    payload = {"schema": SCHEMA, **payload}
    print(json.dumps(payload, sort_keys=True, indent=2))


def _load_json_arg(text: str) -> dict:
    if text.startswith("@"):
        with open(text[1:]) as handle:
            return json.load(handle)
    return json.loads(text)


def _gs(args) -> GroundSet:
    return GroundSet.alpha(args.n)


def _vector_json(vec) -> dict:
    if isinstance(vec, FamVector):
        return fam_to_json(vec)
    if isinstance(vec, CharVector):
        return char_to_json(vec)
    return setfn_to_json(vec)


def _ineq_json(q: LinearInequality) -> dict:
    return {
        "space": q.space,
        "objective": _vector_json(q.objective),
        "bound": str(q.bound),
        "label": q.label,
    }


def _budget(args) -> Budget | None:
    if getattr(args, "budget", None) is None and getattr(args, "max_rays", None) is None:
        return None
    return Budget(max_seconds=args.budget, max_rays=getattr(args, "max_rays", None))


# --- subcommand handlers -----------------------------------------------------


def _cmd_encode(args) -> int:
    graph = Dag.from_json(_load_json_arg(args.dag))
    if args.as_ == "fam":
        _emit({"kind": "fam", "vector": fam_to_json(fam_vector(graph))})
    elif args.as_ == "char":
        _emit({"kind": "char", "vector": char_to_json(char_from_fam(fam_vector(graph)))})
    else:
        _emit({"kind": "standard", "vector": setfn_to_json(standard_imset(graph))})
    return 0


def _cmd_dags(args) -> int:
    gs = _gs(args)
    if args.classes:
        classes = enumerate_equivalence_classes(gs)
        payload = {
            "n": gs.n,
            "count": len(classes),
            "classes": [
                {"representative": rep.to_json(), "size": size} for rep, size in classes
            ],
        }
    else:
        graphs = enumerate_dags(gs)
        payload = {"n": gs.n, "count": len(graphs)}
        if args.list:
            payload["dags"] = [g.to_json() for g in graphs]
    _emit(payload)
    return 0


def _cmd_se(args) -> int:
    gs = _gs(args)
    if args.action == "check":
        obj = fam_from_json(gs, _load_json_arg(args.objective))
        _emit({"score_equivalent": is_se_objective(obj)})
    elif args.action == "to-char":
        obj = fam_from_json(gs, _load_json_arg(args.objective))
        _emit({"vector": char_to_json(char_objective(obj))})
    elif args.action == "from-setfn":
        m = char_from_json(gs, _load_json_arg(args.setfn))
        _emit({"vector": fam_to_json(objective_from_setfn(m))})
    elif args.action == "to-setfn":
        obj = fam_from_json(gs, _load_json_arg(args.objective))
        _emit({"vector": char_to_json(setfn_from_objective(obj))})
    else:  # is-face
        graphs = [Dag.from_json(obj, gs) for obj in _load_json_arg(args.dags)]
        ok, witness = is_se_face(graphs)
        payload = {"is_face": ok}
        if witness is not None:
            payload["witness"] = fam_to_json(witness)
        _emit(payload)
    return 0


def _cmd_supermod(args) -> int:
    gs = _gs(args)
    m = setfn_from_json(gs, _load_json_arg(args.setfn))
    if args.action == "check":
        _emit({"supermodular": is_supermodular(m)})
    elif args.action == "extreme":
        _emit({"extreme": is_extreme(m)})
    elif args.action == "core":
        vertices = core_vertices(m)
        _emit({
            "vertices": [
                {gs.labels[i]: str(v) for i, v in enumerate(vertex)} for vertex in vertices
            ]
        })
    else:  # dual
        _emit({"vector": setfn_to_json(duality_transform(m))})
    return 0


def _cmd_ineq(args) -> int:
    gs = _gs(args)
    if args.action == "cluster":
        C = gs.mask_of(args.C)
        build = cluster_fam if args.mode == "fam" else cluster_char
        q = build(gs, C, args.k)
        _emit({"objective": _vector_json(q.objective), "bound": str(q.bound)})
    else:  # catalog
        entries = catalog_se_n4() if args.which == "se4" else catalog_specific_n4()
        payload = {
            "which": args.which,
            "total": sum(e.expected_orbit_size for e in entries),
            "types": [
                {
                    "type_id": e.type_id,
                    "count": e.expected_orbit_size,
                    "char": _ineq_json(e.char_ineq),
                    "fam": _ineq_json(e.fam_ineq),
                }
                for e in entries
            ],
        }
        _emit(payload)
    return 0


def _vrep_from_args(args, gs: GroundSet) -> VRep:
    if args.polytope == "fvp":
        return fvp_vrep(gs)
    if args.polytope == "cip":
        return cip_vrep(gs)
    data = _load_json_arg(args.points)
    space = data["space"]
    parse = fam_from_json if space == "fam" else char_from_json
    from .polyhedra import ambient_index

    index = ambient_index(gs, space)
    points = tuple(
        tuple(parse(gs, obj)[key] for key in index) for obj in data["points"]
    )
    return VRep(space, gs, points)


def _hrep_from_args(args, gs: GroundSet) -> HRep:
    if getattr(args, "matrix", None):
        with open(args.matrix) as handle:
            return hrep_from_matrix_text(gs, args.space, handle.read())
    data = _load_json_arg(args.hrep)
    space = data["space"]
    parse = fam_from_json if space == "fam" else char_from_json
    rows = tuple(
        LinearInequality(
            space,
            parse(gs, item["objective"]),
            Fraction(item["bound"]),
            item.get("label", ""),
        )
        for item in data["inequalities"]
    )
    equations = tuple(
        (parse(gs, item["objective"]), Fraction(item["rhs"]))
        for item in data.get("equations", [])
    )
    return HRep(space, gs, rows, equations)


def _parse_ineq_arg(args, gs: GroundSet) -> LinearInequality:
    data = _load_json_arg(args.ineq)
    space = data["space"]
    parse = fam_from_json if space == "fam" else char_from_json
    return LinearInequality(
        space, parse(gs, data["objective"]), Fraction(data["bound"]), data.get("label", "")
    )


def _cmd_polytope(args) -> int:
    gs = _gs(args)
    budget = _budget(args)
    if args.action == "hull":
        vrep = _vrep_from_args(args, gs)
        hull = facets_from_vertices(vrep, budget=budget)
        if args.matrix_out:
            with open(args.matrix_out, "w") as handle:
                handle.write(hrep_to_matrix_text(hull))
        _emit({
            "space": hull.space,
            "facets": [_ineq_json(q) for q in hull.inequalities],
            "equations": [
                {"objective": _vector_json(vec), "rhs": str(rhs)}
                for vec, rhs in hull.equations
            ],
        })
    elif args.action == "vertices":
        hrep = _hrep_from_args(args, gs)
        vrep = vertices_from_inequalities(hrep, budget=budget)
        from .polyhedra import dense_to_vector

        index = vrep.index
        _emit({
            "space": vrep.space,
            "count": len(vrep.points),
            "vertices": [
                _vector_json(dense_to_vector(gs, vrep.space, index, p)) for p in vrep.points
            ],
        })
    elif args.action == "face-dim":
        vrep = _vrep_from_args(args, gs)
        info = face_of(_parse_ineq_arg(args, gs), vrep)
        _emit({"tight_points": len(info.tight_indices), "dimension": info.dimension})
    else:  # is-facet
        vrep = _vrep_from_args(args, gs)
        _emit({"is_facet": is_facet(_parse_ineq_arg(args, gs), vrep)})
    return 0


def _cmd_export_lp(args) -> int:
    gs = _gs(args)
    objective = None
    if args.objective:
        objective = fam_from_json(gs, _load_json_arg(args.objective))
    if args.clusters == "all":
        clusters = cluster_pairs(gs)
    elif args.clusters == "none":
        clusters = []
    else:
        clusters = []
        for piece in args.clusters.split(","):
            letters, _, level = piece.partition(":")
            clusters.append((gs.mask_of(letters), int(level)))
    text = export_lp(gs, objective=objective, clusters=clusters, integer=args.integer)
    if args.out:
        with open(args.out, "w") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_verify(args) -> int:
    budget = _budget(args)
    if args.pipeline == "n3":
        report = verify_n3(budget=budget)
    elif args.pipeline == "n4":
        report = verify_n4(fvp_hull=args.stretch, fvp_star=args.stretch, budget=budget)
    elif args.pipeline == "theorem3":
        if args.n == 5:
            report = verify_theorem3_n5()
        else:
            report = verify_theorem3(args.n, trials=args.trials, seed=args.seed)
    elif args.pipeline == "counterexample":
        report = verify_counterexample(budget=budget)
    else:  # conjecture
        report = explore_conjecture(args.n if args.n in (3,) else 3)
    if args.json:
        print(json.dumps(report.to_json(include_elapsed=args.timings), sort_keys=True, indent=2))
    else:
        print(report.format_table(include_elapsed=args.timings))
    return 0 if report.passed else 1


# --- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bnpoly",
        description="Exact rational toolkit for the family-variable and "
        "characteristic-imset polytopes of graphical-model structure search",
    )
    parser.add_argument("--jobs", type=int, default=1, help="worker cap (outputs are deterministic regardless)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", help="encode a DAG as a vector")
    p.add_argument("--dag", required=True, help="JSON map node -> parent letters (or @file)")
    p.add_argument("--as", dest="as_", choices=["fam", "char", "standard"], required=True)
    p.set_defaults(func=_cmd_encode)

    p = sub.add_parser("dags", help="enumerate DAGs or their equivalence classes")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--classes", action="store_true")
    p.add_argument("--list", action="store_true")
    p.set_defaults(func=_cmd_dags)

    p = sub.add_parser("se", help="score-equivalence operations")
    p.add_argument("action", choices=["check", "to-char", "from-setfn", "to-setfn", "is-face"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--objective", help="fam-vector JSON (or @file)")
    p.add_argument("--setfn", help="char-vector JSON (or @file)")
    p.add_argument("--dags", help="JSON list of DAG maps (or @file)")
    p.set_defaults(func=_cmd_se)

    p = sub.add_parser("supermod", help="supermodular set-function operations")
    p.add_argument("action", choices=["check", "extreme", "core", "dual"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--setfn", required=True, help="set-function JSON (or @file)")
    p.set_defaults(func=_cmd_supermod)

    p = sub.add_parser("ineq", help="inequality families and catalogs")
    p.add_argument("action", choices=["cluster", "catalog"])
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--C", help="cluster letters, e.g. abc")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--mode", choices=["fam", "char"], default="fam")
    p.add_argument("--which", choices=["se4", "specific4"])
    p.set_defaults(func=_cmd_ineq)

    p = sub.add_parser("polytope", help="exact polyhedral computations")
    p.add_argument("action", choices=["hull", "vertices", "face-dim", "is-facet"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--polytope", choices=["fvp", "cip"], help="built-in vertex set")
    p.add_argument("--points", help="VRep JSON (or @file)")
    p.add_argument("--hrep", help="HRep JSON (or @file)")
    p.add_argument("--matrix", help="H-representation in plain matrix text")
    p.add_argument("--matrix-out", dest="matrix_out", help="also write the hull in plain matrix text")
    p.add_argument("--space", choices=["fam", "char"], default="fam", help="coordinate space for --matrix input")
    p.add_argument("--ineq", help="inequality JSON (or @file)")
    p.add_argument("--budget", type=float, help="wall-clock seconds")
    p.add_argument("--max-rays", type=int, dest="max_rays")
    p.set_defaults(func=_cmd_polytope)

    p = sub.add_parser("export-lp", help="write the family-variable relaxation in CPLEX LP format")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--clusters", default="all", help='"all", "none", or comma list like ab:1,abc:2')
    p.add_argument("--objective", help="fam-vector JSON (or @file)")
    p.add_argument("--integer", action="store_true", help="mark variables binary")
    p.add_argument("--out", help="output path (stdout when omitted)")
    p.set_defaults(func=_cmd_export_lp)

    p = sub.add_parser("verify", help="run a verification pipeline")
    p.add_argument("pipeline", choices=["n3", "n4", "theorem3", "counterexample", "conjecture"])
    p.add_argument("--n", type=int, default=3, help="ground-set size for theorem3/conjecture")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--stretch", action="store_true", help="include the long-running n4 checks")
    p.add_argument("--budget", type=float, help="wall-clock seconds for hull steps")
    p.add_argument("--json", action="store_true", help="emit the report as JSON instead of a table")
    p.add_argument("--timings", action="store_true", help="include elapsed time (breaks byte determinism)")
    p.set_defaults(func=_cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except BudgetExceededError as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return 3
    except (BnPolyError, json.JSONDecodeError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
