"""Command line front end.

Exit codes: 0 success, 1 malformed input or failed validation, 2 violated
mathematical precondition (for example the exactly-two condition).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .analysis import (
    Filtration,
    analyze_filtration,
    discriminate_trees,
    enumerate_hamiltonian_trees,
    filtration_from_json,
)
from .complexes import (
    WeightedComplex,
    complex_from_json,
    compute_maximal_tree,
    validate,
)
from .errors import InputError, ParseError, SchemaError, WfgError
from .exact import AbelianGroup
from .invariants import (
    abelianization,
    classify,
    lcs_free_ranks,
    weighted_homology_graph,
)
from .presentation import present, presentation_to_json
from .vankampen import CoverSpec, cover_from_json, verify_van_kampen

COMPLEX_VERBS = ("validate", "tree", "present", "classify", "abelianize",
                 "homology", "lcs", "hamiltonian")


def parse_input(path: str):
    """Load a complex, cover, or filtration document, detected by shape."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as err:
        raise ParseError(f"cannot read {path}: {err}") from err
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise ParseError(f"{path}: not valid JSON: {err}") from err
    if isinstance(doc, dict) and "stages" in doc:
        return filtration_from_json(doc)
    if isinstance(doc, dict) and ("L" in doc or "K1" in doc):
        return cover_from_json(doc)
    return complex_from_json(doc)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wfg",
        description="Weighted fundamental groups of weighted simplicial complexes.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def add(verb, help_text, tree_flag=False):
        p = sub.add_parser(verb, help=help_text)
        p.add_argument("input", help="path to a JSON input document")
        p.add_argument("--json", action="store_true", dest="as_json",
                       help="emit a machine-readable JSON report")
        if tree_flag:
            p.add_argument("--tree", choices=("bfs", "kruskal-min", "kruskal-max"),
                           default=None,
                           help="tree strategy (recompute; default: use the "
                                "document's tree, else bfs)")
        return p

    add("validate", "check the structural invariants of a complex")
    add("tree", "compute a maximal tree", tree_flag=True)
    add("present", "print the presentation of the weighted fundamental group",
        tree_flag=True)
    add("classify", "free product of cyclic groups (exactly-two condition)",
        tree_flag=True)
    add("abelianize", "abelianization of the weighted fundamental group",
        tree_flag=True)
    add("homology", "weighted H0 and H1 of a graph")
    lcs = add("lcs", "free ranks of the lower central series quotients",
              tree_flag=True)
    lcs.add_argument("--max-n", type=int, default=6, dest="max_n",
                     help="compute R_1..R_N (default 6)")
    lcs.add_argument("--series-order", type=int, default=16, dest="series_order",
                     help="series truncation order (default 16)")
    add("vankampen", "check a two-piece cover and compare both presentations")
    filtration = add("filtration", "birth/death events along a filtration")
    filtration.add_argument("--fallback-abelian", action="store_true",
                            dest="fallback_abelian",
                            help="diff abelianizations at stages failing "
                                 "the exactly-two condition")
    add("hamiltonian", "enumerate Hamiltonian-path trees and discriminate them")
    return parser


def _abelian_json(group: AbelianGroup) -> dict:
    return {
        "free_rank": group.free_rank,
        "invariant_factors": list(group.torsion),
        "text": str(group),
    }


def _need_complex(value, verb):
    if not isinstance(value, WeightedComplex):
        raise SchemaError(f"{verb} expects a weighted complex document")
    return value


def _with_tree(complex: WeightedComplex, strategy) -> WeightedComplex:
    if strategy is not None:
        return complex.with_tree(compute_maximal_tree(complex, strategy).edges)
    if complex.tree is not None:
        return complex
    return complex.with_tree(compute_maximal_tree(complex, "bfs").edges)


def _validated(complex: WeightedComplex):
    report = validate(complex)
    if not report.ok:
        for rule, message in report.violations:
            print(f"invalid complex [{rule}]: {message}", file=sys.stderr)
        return False
    return True


def _emit(payload: dict, text: str, as_json: bool):
    print(json.dumps(payload, indent=2) if as_json else text)


def run(argv) -> int:
    args = build_parser().parse_args(argv)
    value = parse_input(args.input)
    verb = args.verb

    if verb == "vankampen":
        if not isinstance(value, CoverSpec):
            raise SchemaError("vankampen expects a cover document with L, K1, K2, K0")
        return _run_vankampen(value, args.as_json)
    if verb == "filtration":
        if not isinstance(value, Filtration):
            raise SchemaError('filtration expects a document with "stages"')
        return _run_filtration(value, args.fallback_abelian, args.as_json)

    complex = _need_complex(value, verb)
    if verb == "validate":
        report = validate(complex)
        payload = {
            "ok": report.ok,
            "violations": [{"rule": r, "message": m} for r, m in report.violations],
        }
        lines = ["ok"] if report.ok else [f"[{r}] {m}" for r, m in report.violations]
        _emit(payload, "\n".join(lines), args.as_json)
        return 0 if report.ok else 1

    if not _validated(complex):
        return 1

    if verb == "tree":
        tree = compute_maximal_tree(complex, args.tree or "bfs")
        payload = {"strategy": tree.strategy, "edges": [list(e) for e in tree.edges]}
        text = f"{tree.strategy}: " + ", ".join(
            "{}-{}".format(*complex.edge_labels(e)) for e in tree.edges
        )
        _emit(payload, text, args.as_json)
        return 0

    if verb == "present":
        prepared = _with_tree(complex, args.tree)
        p = present(prepared)
        _emit(presentation_to_json(p), str(p), args.as_json)
        return 0

    if verb == "classify":
        prepared = _with_tree(complex, args.tree)
        factors = classify(prepared)
        payload = {"factors": list(factors.orders), "text": str(factors)}
        _emit(payload, str(factors), args.as_json)
        return 0

    if verb == "abelianize":
        prepared = _with_tree(complex, args.tree)
        group = abelianization(prepared)
        _emit(_abelian_json(group), str(group), args.as_json)
        return 0

    if verb == "homology":
        homology = weighted_homology_graph(complex)
        payload = {"h1": _abelian_json(homology.h1), "h0": _abelian_json(homology.h0)}
        _emit(payload, f"H1 = {homology.h1}\nH0 = {homology.h0}", args.as_json)
        return 0

    if verb == "lcs":
        prepared = _with_tree(complex, args.tree)
        factors = classify(prepared)
        ranks = lcs_free_ranks(factors, args.max_n, args.series_order)
        payload = {
            "factors": list(factors.orders),
            "ranks": list(ranks.ranks),
            "text": _ranks_text(ranks.ranks),
        }
        _emit(payload, _ranks_text(ranks.ranks), args.as_json)
        return 0

    if verb == "hamiltonian":
        trees = enumerate_hamiltonian_trees(complex)
        report = discriminate_trees(complex, trees)
        payload = {
            "count": len(trees),
            "trees": [[list(e) for e in t.edges] for t in trees],
            "invariants": [str(inv) for inv in report.invariants],
            "used_abelianization": report.used_abelianization,
            "distinguishable": report.distinguishable,
        }
        lines = [f"{len(trees)} Hamiltonian tree(s)"]
        for tree, inv in zip(trees, report.invariants):
            edges = ", ".join("{}-{}".format(*complex.edge_labels(e)) for e in tree.edges)
            lines.append(f"  [{edges}] -> {inv}")
        lines.append(f"distinguishable: {report.distinguishable}")
        _emit(payload, "\n".join(lines), args.as_json)
        return 0

    raise AssertionError(f"unhandled verb {verb}")


def _ranks_text(ranks) -> str:
    return " ".join(f"R{i + 1}={r}" for i, r in enumerate(ranks))


def _run_vankampen(spec: CoverSpec, as_json: bool) -> int:
    report = verify_van_kampen(spec)
    payload = {
        "hypotheses_ok": report.hypotheses_ok,
        "violations": [
            {"rule": r, "message": m} for r, m in report.hypothesis_report.violations
        ],
        "tree_union_ok": report.tree_union_ok,
        "tree_intersection_ok": report.tree_intersection_ok,
        "abelianizations_equal": report.abelianizations_equal,
        "abelianization_amalgamated": (
            None if report.abelianization_amalgamated is None
            else _abelian_json(report.abelianization_amalgamated)
        ),
        "abelianization_direct": (
            None if report.abelianization_direct is None
            else _abelian_json(report.abelianization_direct)
        ),
        "factorizations": (
            None if report.factorizations is None
            else {
                "direct": list(report.factorizations[0].orders),
                "from_cover": list(report.factorizations[1].orders),
            }
        ),
        "generator_classes": (
            None if report.generator_classes is None
            else {
                name: ["{}-{}".format(*e) for e in edges]
                for name, edges in report.generator_classes.items()
            }
        ),
    }
    if report.hypotheses_ok:
        lines = [
            "hypotheses: ok",
            f"tree union equality: {report.tree_union_ok}",
            f"tree intersection equality: {report.tree_intersection_ok}",
            f"abelianization (amalgamated) = {report.abelianization_amalgamated}",
            f"abelianization (direct)      = {report.abelianization_direct}",
            f"abelianizations equal: {report.abelianizations_equal}",
        ]
        if report.factorizations is not None:
            direct, from_cover = report.factorizations
            lines.append(f"factorization (direct)     = {direct}")
            lines.append(f"factorization (from cover) = {from_cover}")
    else:
        lines = ["hypotheses: FAIL"] + [
            f"[{r}] {m}" for r, m in report.hypothesis_report.violations
        ]
    _emit(payload, "\n".join(lines), as_json)
    return 0 if report.hypotheses_ok else 2


def _run_filtration(f: Filtration, fallback_abelian: bool, as_json: bool) -> int:
    for i, stage in enumerate(f.stages):
        report = validate(stage)
        if not report.ok:
            for rule, message in report.violations:
                print(f"stage {i} invalid [{rule}]: {message}", file=sys.stderr)
            return 1
    analysis = analyze_filtration(f, fallback_abelian=fallback_abelian)
    payload = {
        "stages": [list(fac.orders) for fac in analysis.stage_factors],
        "events": [
            {"stage": e.stage, "kind": e.kind, "factor": e.factor, "region": e.region}
            for e in analysis.events
        ],
        "abelian_fallback_stages": list(analysis.abelian_fallback_stages),
    }
    lines = ["events are multiset differences of consecutive cyclic factorizations"]
    for i, fac in enumerate(analysis.stage_factors):
        lines.append(f"stage {i}: {fac}")
    for e in analysis.events:
        factor = "Z" if e.factor == 0 else f"Z/{e.factor}"
        lines.append(f"stage {e.stage}: {e.kind} {factor} ({e.region})")
    if analysis.abelian_fallback_stages:
        lines.append(
            "warning: abelianization fallback at stages "
            + ", ".join(map(str, analysis.abelian_fallback_stages))
        )
    _emit(payload, "\n".join(lines), as_json)
    return 0


def main(argv=None) -> int:
    try:
        return run(sys.argv[1:] if argv is None else argv)
    except InputError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except WfgError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
