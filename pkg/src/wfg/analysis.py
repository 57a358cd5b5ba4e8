"""Application workflows.

Filtration tracking: classify each stage, diff consecutive factorizations
as multisets, and label finite births/deaths with a user-supplied
weight-to-region map.  Hamiltonian paths double as maximal trees, so
enumerating them and classifying the complex against each tree can tell
different paths apart.  The two ring builders reproduce the pentagon and
hexagon bond patterns used in the fullerene demonstration.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

from .complexes import (
    SpanningTree,
    UnionFind,
    WeightedComplex,
    complex_from_json,
    compute_maximal_tree,
    is_weighted_subcomplex,
)
from .errors import (
    BadTree,
    ConditionFailed,
    NotAGraph,
    NotNested,
    SchemaError,
    TooLarge,
)
from .invariants import (
    CyclicFactorization,
    abelianization,
    classify,
    normalize_factorization,
    satisfies_exactly_two,
)

UNKNOWN_REGION = "unknown"

HAMILTONIAN_VERTEX_LIMIT = 14


@dataclass(frozen=True)
class Filtration:
    stages: tuple[WeightedComplex, ...]
    region_map: dict[int, str] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "stages", tuple(self.stages))
        object.__setattr__(self, "region_map", dict(self.region_map))


@dataclass(frozen=True)
class BirthDeathEvent:
    stage: int
    kind: str  # "birth" or "death"
    factor: int  # 0 for an infinite cyclic factor, m >= 2 otherwise
    region: str


@dataclass(frozen=True)
class FiltrationAnalysis:
    stage_factors: tuple[CyclicFactorization, ...]
    events: tuple[BirthDeathEvent, ...]
    abelian_fallback_stages: tuple[int, ...]


def _stage_with_tree(stage: WeightedComplex) -> WeightedComplex:
    if stage.tree is not None:
        return stage
    return stage.with_tree(compute_maximal_tree(stage, "bfs").edges)


def _stage_factors(stage: WeightedComplex, index: int, fallback_abelian: bool):
    prepared = _stage_with_tree(stage)
    try:
        return classify(prepared), False
    except ConditionFailed as err:
        if not fallback_abelian:
            raise ConditionFailed(
                f"stage {index}: {err}", triangle=err.triangle, stage=index
            ) from err
        ab = abelianization(prepared)
        return normalize_factorization([0] * ab.free_rank + list(ab.torsion)), True


def analyze_filtration(f: Filtration, fallback_abelian: bool = False) -> FiltrationAnalysis:
    """Births and deaths of cyclic factors between consecutive stages.

    A factor added at stage i is a birth at i, a factor removed is a death.
    Finite factors are mapped to regions through the weight-value map;
    infinite factors are always region "unknown".  Stages without a tree
    get a breadth-first one.
    """
    for i in range(len(f.stages) - 1):
        if not is_weighted_subcomplex(f.stages[i], f.stages[i + 1], check_tree=False):
            raise NotNested(f"stage {i} is not a weighted subcomplex of stage {i + 1}")

    factors = []
    fallback_stages = []
    for i, stage in enumerate(f.stages):
        fac, fell_back = _stage_factors(stage, i, fallback_abelian)
        factors.append(fac)
        if fell_back:
            fallback_stages.append(i)

    events = []
    for i in range(1, len(factors)):
        old = Counter(factors[i - 1].orders)
        new = Counter(factors[i].orders)
        for m in sorted((old - new).elements()):
            events.append(BirthDeathEvent(i, "death", m, _region(f.region_map, m)))
        for m in sorted((new - old).elements()):
            events.append(BirthDeathEvent(i, "birth", m, _region(f.region_map, m)))

    return FiltrationAnalysis(tuple(factors), tuple(events), tuple(fallback_stages))


def _region(region_map: dict[int, str], factor: int) -> str:
    if factor == 0:
        return UNKNOWN_REGION
    return region_map.get(factor, UNKNOWN_REGION)


def enumerate_hamiltonian_trees(complex: WeightedComplex) -> list[SpanningTree]:
    """All Hamiltonian paths of a graph, each returned as its edge set.

    A path and its reverse give the same tree and are reported once.
    Output is sorted lexicographically by edge list; the bound on the
    vertex count keeps the backtracking enumeration tractable.
    """
    if complex.triangles:
        raise NotAGraph("Hamiltonian enumeration expects a graph")
    n = len(complex.vertices)
    if n > HAMILTONIAN_VERTEX_LIMIT:
        raise TooLarge(f"{n} vertices exceeds the limit of {HAMILTONIAN_VERTEX_LIMIT}")
    if n == 1:
        return [SpanningTree((), "given")]

    adjacency = complex.adjacency
    found: set[tuple[tuple[int, int], ...]] = set()
    path = []
    visited = [False] * n

    def extend(v: int):
        path.append(v)
        visited[v] = True
        if len(path) == n:
            edges = tuple(sorted(
                (min(a, b), max(a, b)) for a, b in zip(path, path[1:])
            ))
            found.add(edges)
        else:
            for u in adjacency[v]:
                if not visited[u]:
                    extend(u)
        path.pop()
        visited[v] = False

    for start in range(n):
        extend(start)
    return [SpanningTree(edges, "given") for edges in sorted(found)]


@dataclass(frozen=True)
class TreeDiscriminationReport:
    trees: tuple[SpanningTree, ...]
    invariants: tuple
    distinguishable: bool
    used_abelianization: bool


def discriminate_trees(
    complex: WeightedComplex, trees: Iterable[SpanningTree]
) -> TreeDiscriminationReport:
    """Classify the complex against each maximal tree; the trees are
    distinguishable when the resulting invariants are not all equal.

    When any tree fails the exactly-two condition, abelianizations are used
    for every tree so the comparison stays within one invariant."""
    trees = tuple(trees)
    n = len(complex.vertices)
    key_set = set(complex.edge_keys)
    variants = []
    for t in trees:
        if any(e not in key_set for e in t.edges) or len(t.edges) != n - 1:
            raise BadTree(f"{t.edges} is not a maximal tree of the complex")
        uf = UnionFind(n)
        if any(not uf.union(a, b) for a, b in t.edges):
            raise BadTree(f"{t.edges} contains a cycle")
        variants.append(complex.with_tree(t.edges))

    if all(satisfies_exactly_two(v) for v in variants):
        invariants = tuple(classify(v) for v in variants)
        used_abelianization = False
    else:
        invariants = tuple(abelianization(v) for v in variants)
        used_abelianization = True

    distinguishable = any(inv != invariants[0] for inv in invariants[1:])
    return TreeDiscriminationReport(trees, invariants, distinguishable, used_abelianization)


def pentagon_ring() -> WeightedComplex:
    """Five-cycle with unit weights, tree on the four bold edges."""
    edges = [(0, 1, 1), (0, 4, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1)]
    return WeightedComplex(
        tuple(f"v{i}" for i in range(5)),
        tuple(edges),
        (),
        ((0, 1), (1, 2), (2, 3), (3, 4)),
    )


def hexagon_ring() -> WeightedComplex:
    """Six-cycle with weight 2 on the three alternating double-bond edges;
    all five tree edges form the path around the ring."""
    vertices = ("v5", "v6", "v7", "v8", "v9", "v10")
    edges = (
        (0, 1, 2),  # v5-v6 double bond
        (0, 5, 1),  # v5-v10
        (1, 2, 1),  # v6-v7
        (2, 3, 2),  # v7-v8 double bond
        (3, 4, 1),  # v8-v9
        (4, 5, 2),  # v9-v10 double bond
    )
    tree = ((0, 1), (1, 2), (2, 3), (3, 4), (4, 5))
    return WeightedComplex(vertices, edges, (), tree)


def filtration_from_json(doc) -> Filtration:
    if not isinstance(doc, dict):
        raise SchemaError("filtration document must be a JSON object")
    if "stages" not in doc or not isinstance(doc["stages"], list):
        raise SchemaError('missing or malformed key "stages"')
    stages = []
    for i, stage_doc in enumerate(doc["stages"]):
        try:
            stages.append(complex_from_json(stage_doc))
        except SchemaError as err:
            raise SchemaError(f"stage {i}: {err}") from err
    region_map = {}
    regions = doc.get("regions", {})
    if not isinstance(regions, dict):
        raise SchemaError('"regions" must map weight values to labels')
    for key, label in regions.items():
        try:
            weight = int(key)
        except ValueError as err:
            raise SchemaError(f'region key "{key}" is not an integer weight') from err
        if not isinstance(label, str):
            raise SchemaError(f'region label for weight {key} must be a string')
        region_map[weight] = label
    return Filtration(tuple(stages), region_map)
