"""Weighted simplicial complexes of dimension at most 2.

A complex is an ordered vertex list (list position is the total order on
vertices), integer-weighted edges stored as index pairs (a, b) with a < b,
triangles stored as index triples (a, v, b) with a < v < b, and an optional
maximal tree given by its edge keys.  All values are immutable; every
operation is a pure function.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, replace
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .errors import (
    BadPermutation,
    MissingTree,
    NotConnected,
    SchemaError,
)

EdgeKey = tuple[int, int]

TREE_STRATEGIES = ("given", "bfs", "kruskal-min", "kruskal-max")


class UnionFind:
    """Plain union-find; union returns False when both ends already meet."""

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        self.parent[rx] = ry
        return True


@dataclass(frozen=True)
class WeightedComplex:
    """The triple of complex, integer edge weights, and optional maximal tree."""

    vertices: tuple[str, ...]
    edges: tuple[tuple[int, int, int], ...]
    triangles: tuple[tuple[int, int, int], ...] = ()
    tree: Optional[tuple[EdgeKey, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(
            self,
            "edges",
            tuple(sorted({(int(a), int(b), int(w)) for a, b, w in self.edges})),
        )
        object.__setattr__(
            self,
            "triangles",
            tuple(sorted({(int(a), int(v), int(b)) for a, v, b in self.triangles})),
        )
        if self.tree is not None:
            object.__setattr__(
                self, "tree", tuple(sorted({(int(a), int(b)) for a, b in self.tree}))
            )

    @cached_property
    def edge_keys(self) -> tuple[EdgeKey, ...]:
        return tuple((a, b) for a, b, _ in self.edges)

    @cached_property
    def weight_of(self) -> dict[EdgeKey, int]:
        out = {}
        for a, b, w in self.edges:
            out.setdefault((a, b), w)
        return out

    def weight(self, a: int, b: int) -> int:
        return self.weight_of[(a, b)]

    @cached_property
    def adjacency(self) -> dict[int, tuple[int, ...]]:
        nbrs: dict[int, list[int]] = {i: [] for i in range(len(self.vertices))}
        for a, b in self.edge_keys:
            if 0 <= a < len(self.vertices) and 0 <= b < len(self.vertices):
                nbrs[a].append(b)
                nbrs[b].append(a)
        return {v: tuple(sorted(set(ns))) for v, ns in nbrs.items()}

    def with_tree(self, tree_edges: Iterable[EdgeKey]) -> "WeightedComplex":
        return replace(self, tree=tuple(sorted(tree_edges)))

    def edge_labels(self, key: EdgeKey) -> tuple[str, str]:
        return (self.vertices[key[0]], self.vertices[key[1]])


@dataclass(frozen=True)
class SpanningTree:
    edges: tuple[EdgeKey, ...]
    strategy: str

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(sorted(self.edges)))
        if self.strategy not in TREE_STRATEGIES:
            raise ValueError(f"unknown tree strategy {self.strategy!r}")


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[tuple[str, str], ...]


def _reachable(n: int, edge_keys: Iterable[EdgeKey]) -> list[bool]:
    seen = [False] * n
    if n == 0:
        return seen
    nbrs: dict[int, list[int]] = {i: [] for i in range(n)}
    for a, b in edge_keys:
        nbrs[a].append(b)
        nbrs[b].append(a)
    seen[0] = True
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for u in nbrs[v]:
            if not seen[u]:
                seen[u] = True
                queue.append(u)
    return seen


def is_spanning_tree(complex: WeightedComplex, edges: Iterable[EdgeKey]) -> bool:
    """True iff the edge set is an acyclic connected subgraph covering
    every vertex of the complex."""
    edges = list(edges)
    n = len(complex.vertices)
    key_set = set(complex.edge_keys)
    if any(e not in key_set for e in edges):
        return False
    if len(edges) != n - 1:
        return False
    uf = UnionFind(n)
    for a, b in edges:
        if not uf.union(a, b):
            return False
    return True


def validate(complex: WeightedComplex) -> ValidationReport:
    """Check every structural invariant; failures are reported, not thrown."""
    v: list[tuple[str, str]] = []
    n = len(complex.vertices)
    if n == 0:
        v.append(("nonempty", "complex has no vertices"))
    if len(set(complex.vertices)) != n:
        v.append(("vertex-duplicate", "vertex labels are not distinct"))

    good_edges = set()
    seen_weight: dict[EdgeKey, int] = {}
    for a, b, w in complex.edges:
        if not (0 <= a < n and 0 <= b < n):
            v.append(("edge-index", f"edge ({a},{b}) references a missing vertex"))
            continue
        if a >= b:
            v.append(("edge-order", f"edge ({a},{b}) must satisfy a < b"))
            continue
        if (a, b) in seen_weight and seen_weight[(a, b)] != w:
            v.append(("edge-duplicate", f"edge ({a},{b}) appears with conflicting weights"))
        seen_weight.setdefault((a, b), w)
        good_edges.add((a, b))

    for a, u, b in complex.triangles:
        if not (0 <= a < n and 0 <= u < n and 0 <= b < n):
            v.append(("triangle-index", f"triangle ({a},{u},{b}) references a missing vertex"))
            continue
        if not a < u < b:
            v.append(("triangle-order", f"triangle ({a},{u},{b}) must satisfy a < v < b"))
            continue
        for e in ((a, u), (u, b), (a, b)):
            if e not in good_edges:
                v.append(
                    ("face-closure", f"triangle ({a},{u},{b}) is missing face edge {e}")
                )

    if n > 0 and not all(_reachable(n, good_edges)):
        v.append(("connected", "the 1-skeleton is not path-connected"))

    if complex.tree is not None:
        tree = complex.tree
        foreign = [e for e in tree if e not in good_edges]
        for e in foreign:
            v.append(("tree-unknown-edge", f"tree edge {e} is not an edge of the complex"))
        uf = UnionFind(n)
        cyclic = False
        for a, b in tree:
            if (a, b) in good_edges and not uf.union(a, b):
                cyclic = True
        if cyclic:
            v.append(("tree-cycle", "tree edges contain a cycle"))
        if len(tree) != n - 1 or not all(_reachable(n, [e for e in tree if e in good_edges])):
            v.append(("tree-not-spanning", "tree does not span every vertex"))

    return ValidationReport(not v, tuple(v))


def compute_maximal_tree(complex: WeightedComplex, strategy: str = "bfs") -> SpanningTree:
    """Build a maximal tree deterministically.

    bfs: breadth-first from vertex 0, visiting neighbors in ascending order.
    kruskal-min / kruskal-max: Kruskal ordered by |weight| ascending or
    descending, lexicographic (a, b) tie-break.
    given: return the tree already attached to the complex.
    """
    if strategy not in TREE_STRATEGIES:
        raise ValueError(f"unknown tree strategy {strategy!r}")
    n = len(complex.vertices)
    if strategy == "given":
        if complex.tree is None:
            raise MissingTree("complex has no tree attached")
        return SpanningTree(complex.tree, "given")
    if n > 0 and not all(_reachable(n, complex.edge_keys)):
        raise NotConnected("the 1-skeleton is not path-connected")

    if strategy == "bfs":
        seen = [False] * n
        seen[0] = True
        queue = deque([0])
        edges = []
        while queue:
            v = queue.popleft()
            for u in complex.adjacency[v]:
                if not seen[u]:
                    seen[u] = True
                    edges.append((min(v, u), max(v, u)))
                    queue.append(u)
        return SpanningTree(tuple(edges), "bfs")

    descending = strategy == "kruskal-max"
    order = sorted(
        complex.edge_keys,
        key=lambda e: (-abs(complex.weight_of[e]) if descending else abs(complex.weight_of[e]), e),
    )
    uf = UnionFind(n)
    edges = [e for e in order if uf.union(*e)]
    return SpanningTree(tuple(edges), strategy)


def relabel(complex: WeightedComplex, permutation: Sequence[int]) -> WeightedComplex:
    """Reorder vertices: the vertex at position i moves to position
    permutation[i].  Simplices are re-sorted so a < b and a < v < b hold."""
    n = len(complex.vertices)
    p = list(permutation)
    if sorted(p) != list(range(n)):
        raise BadPermutation(f"not a bijection on 0..{n - 1}: {p}")
    new_vertices = [""] * n
    for i, label in enumerate(complex.vertices):
        new_vertices[p[i]] = label
    edges = tuple(
        (min(p[a], p[b]), max(p[a], p[b]), w) for a, b, w in complex.edges
    )
    triangles = tuple(tuple(sorted((p[a], p[u], p[b]))) for a, u, b in complex.triangles)
    tree = None
    if complex.tree is not None:
        tree = tuple((min(p[a], p[b]), max(p[a], p[b])) for a, b in complex.tree)
    return WeightedComplex(tuple(new_vertices), edges, triangles, tree)


def _embedding(inner: WeightedComplex, outer: WeightedComplex) -> Optional[list[int]]:
    """Positions of inner's vertices inside outer, or None when inner's
    labels are not an order-preserving subset of outer's."""
    pos = {label: i for i, label in enumerate(outer.vertices)}
    mapped = []
    for label in inner.vertices:
        if label not in pos:
            return None
        mapped.append(pos[label])
    if any(x >= y for x, y in zip(mapped, mapped[1:])):
        return None
    return mapped


def is_weighted_subcomplex(
    inner: WeightedComplex, outer: WeightedComplex, check_tree: bool = True
) -> bool:
    """True iff inner's simplices sit inside outer with the same weights,
    vertex order preserved, and (when check_tree) inner's tree inside
    outer's tree.  Vertices are matched by label."""
    if check_tree and (inner.tree is None or outer.tree is None):
        raise MissingTree("both complexes need a tree for the subcomplex check")
    emb = _embedding(inner, outer)
    if emb is None:
        return False
    outer_w = outer.weight_of
    for a, b, w in inner.edges:
        key = (emb[a], emb[b])
        if outer_w.get(key) != w:
            return False
    outer_triangles = set(outer.triangles)
    for a, u, b in inner.triangles:
        if (emb[a], emb[u], emb[b]) not in outer_triangles:
            return False
    if check_tree:
        outer_tree = set(outer.tree)
        for a, b in inner.tree:
            if (emb[a], emb[b]) not in outer_tree:
                return False
    return True


def complex_from_json(doc) -> WeightedComplex:
    """Parse the documented JSON schema with field-precise error messages."""
    if not isinstance(doc, dict):
        raise SchemaError("complex document must be a JSON object")
    if "vertices" not in doc:
        raise SchemaError('missing key "vertices"')
    if "edges" not in doc:
        raise SchemaError('missing key "edges"')
    vertices = doc["vertices"]
    if not isinstance(vertices, list) or not all(isinstance(s, str) for s in vertices):
        raise SchemaError('"vertices" must be a list of strings')
    if not vertices:
        raise SchemaError('"vertices" must contain at least one vertex')
    if len(set(vertices)) != len(vertices):
        raise SchemaError("vertex labels must be distinct")
    n = len(vertices)

    edges = []
    raw_edges = doc["edges"]
    if not isinstance(raw_edges, list):
        raise SchemaError('"edges" must be a list')
    seen = set()
    for k, e in enumerate(raw_edges):
        if not isinstance(e, dict):
            raise SchemaError(f'edge #{k} must be an object with keys "a", "b", "w"')
        for field in ("a", "b", "w"):
            if field not in e:
                raise SchemaError(f'edge #{k}: missing key "{field}"')
            if not isinstance(e[field], int) or isinstance(e[field], bool):
                raise SchemaError(f'edge #{k}: "{field}" must be an integer')
        a, b, w = e["a"], e["b"], e["w"]
        if not (0 <= a < n and 0 <= b < n):
            raise SchemaError(f"edge #{k}: endpoints ({a},{b}) out of range")
        if a >= b:
            raise SchemaError(f"edge #{k}: endpoints ({a},{b}) must satisfy a < b")
        if (a, b) in seen:
            raise SchemaError(f"duplicate edge ({a},{b})")
        seen.add((a, b))
        edges.append((a, b, w))

    triangles = []
    raw_triangles = doc.get("triangles", [])
    if not isinstance(raw_triangles, list):
        raise SchemaError('"triangles" must be a list')
    for k, t in enumerate(raw_triangles):
        if not isinstance(t, list) or not all(
            isinstance(x, int) and not isinstance(x, bool) for x in t
        ):
            raise SchemaError(f"triangle #{k} must be a list of integers")
        if len(t) > 3:
            raise SchemaError(
                f"simplex #{k} has {len(t)} vertices; dimension is capped at 2 "
                "(only edges and triangles are supported)"
            )
        if len(t) != 3:
            raise SchemaError(f"triangle #{k} must have exactly 3 vertices")
        a, u, b = t
        if not (0 <= a < n and 0 <= u < n and 0 <= b < n):
            raise SchemaError(f"triangle #{k}: corners ({a},{u},{b}) out of range")
        if not a < u < b:
            raise SchemaError(f"triangle #{k}: corners ({a},{u},{b}) must satisfy a < v < b")
        triangles.append((a, u, b))

    tree = None
    if doc.get("tree") is not None:
        raw_tree = doc["tree"]
        if not isinstance(raw_tree, list):
            raise SchemaError('"tree" must be a list of [a, b] pairs')
        tree = []
        for k, e in enumerate(raw_tree):
            if (
                not isinstance(e, list)
                or len(e) != 2
                or not all(isinstance(x, int) and not isinstance(x, bool) for x in e)
            ):
                raise SchemaError(f"tree edge #{k} must be a pair of integers")
            if (e[0], e[1]) not in seen:
                raise SchemaError(f"tree edge #{k}: ({e[0]},{e[1]}) is not an edge")
            tree.append((e[0], e[1]))

    return WeightedComplex(tuple(vertices), tuple(edges), tuple(triangles),
                           tuple(tree) if tree is not None else None)


def complex_to_json(complex: WeightedComplex) -> dict:
    doc = {
        "vertices": list(complex.vertices),
        "edges": [{"a": a, "b": b, "w": w} for a, b, w in complex.edges],
        "triangles": [list(t) for t in complex.triangles],
    }
    if complex.tree is not None:
        doc["tree"] = [list(e) for e in complex.tree]
    return doc
