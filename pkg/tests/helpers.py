"""Shared test utilities: figure loading, random generators for complexes,
covers, and filtrations, independent oracles, and the reusable property
checkers run at full scale by the acceptance suite."""

from __future__ import annotations

import json
from collections import Counter
from pathlib import Path

from wfg import (
    CyclicFactorization,
    Filtration,
    IntegerMatrix,
    WeightedComplex,
    abelianization,
    analyze_filtration,
    classify,
    compute_maximal_tree,
    normalize_factorization,
    realize,
    relabel,
    smith_normal_form,
    validate,
)
from wfg.complexes import UnionFind
from wfg.vankampen import CoverSpec

FIGURES = Path(__file__).resolve().parent.parent / "figures"


def load_figure(name: str) -> dict:
    return json.loads((FIGURES / name).read_text(encoding="utf-8"))


def mobius_oracle(n: int) -> int:
    """Trial-division oracle, independent of the library implementation."""
    for d in range(2, int(n ** 0.5) + 1):
        if n % (d * d) == 0:
            return 0
    count = 0
    m, p = n, 2
    while m > 1:
        if m % p == 0:
            count += 1
            while m % p == 0:
                m //= p
        p += 1
    return (-1) ** count


def with_weights(K: WeightedComplex, mapper) -> WeightedComplex:
    return WeightedComplex(
        K.vertices,
        tuple((a, b, mapper(a, b, w)) for a, b, w in K.edges),
        K.triangles,
        K.tree,
    )


def random_connected_graph(rng, min_v=2, max_v=10, weight_range=(-5, 5)) -> WeightedComplex:
    n = rng.randint(min_v, max_v)
    edges = {}
    for i in range(1, n):
        edges[(rng.randrange(i), i)] = rng.randint(*weight_range)
    for _ in range(rng.randint(0, n)):
        a, b = rng.sample(range(n), 2)
        key = (min(a, b), max(a, b))
        edges.setdefault(key, rng.randint(*weight_range))
    return WeightedComplex(
        tuple(f"v{i}" for i in range(n)),
        tuple((a, b, w) for (a, b), w in sorted(edges.items())),
    )


def random_spanning_tree(K: WeightedComplex, rng) -> tuple:
    keys = list(K.edge_keys)
    rng.shuffle(keys)
    uf = UnionFind(len(K.vertices))
    return tuple(sorted(e for e in keys if uf.union(*e)))


def random_exactly_two_complex(rng, max_v=8) -> WeightedComplex:
    """Random complex satisfying the exactly-two condition: start from a
    graph with a tree, then glue triangles over pairs of tree edges that
    share a vertex (the closing edge stays outside the tree)."""
    K = random_connected_graph(rng, min_v=3, max_v=max_v)
    K = K.with_tree(random_spanning_tree(K, rng))
    tree = set(K.tree)
    edges = {(a, b): w for a, b, w in K.edges}
    triangles = set()
    tree_adjacent: dict[int, list[int]] = {}
    for a, b in K.tree:
        tree_adjacent.setdefault(a, []).append(b)
        tree_adjacent.setdefault(b, []).append(a)
    for _ in range(rng.randint(0, 4)):
        v = rng.randrange(len(K.vertices))
        nbrs = tree_adjacent.get(v, [])
        if len(nbrs) < 2:
            continue
        a, b = rng.sample(nbrs, 2)
        closing = (min(a, b), max(a, b))
        if closing in tree:
            continue
        edges.setdefault(closing, rng.randint(-5, 5))
        triangles.add(tuple(sorted((a, v, b))))
    return WeightedComplex(
        K.vertices,
        tuple((a, b, w) for (a, b), w in sorted(edges.items())),
        tuple(sorted(triangles)),
        K.tree,
    )


def random_factorization(rng) -> CyclicFactorization:
    pool = [0, 0, 0, 2, 2, 3, 4, 5, 6, 8, 9, 12]
    return normalize_factorization(
        [rng.choice(pool) for _ in range(rng.randint(0, 5))]
    )


def random_matrix(rng, max_dim=6, span=9) -> IntegerMatrix:
    rows = rng.randint(1, max_dim)
    cols = rng.randint(1, max_dim)
    return IntegerMatrix(
        rows, cols, tuple(rng.randint(-span, span) for _ in range(rows * cols))
    )


def random_unimodular(rng, n: int) -> IntegerMatrix:
    m = IntegerMatrix.identity(n).to_rows()
    for _ in range(2 * n + 2):
        if n < 2:
            break
        i, j = rng.sample(range(n), 2)
        op = rng.randrange(3)
        if op == 0:
            m[i], m[j] = m[j], m[i]
        elif op == 1:
            c = rng.randint(-3, 3)
            m[i] = [x + c * y for x, y in zip(m[i], m[j])]
        else:
            m[i] = [-x for x in m[i]]
    return IntegerMatrix.from_rows(m, n)


def random_cover(rng) -> CoverSpec:
    """A valid two-piece cover built from the inside out: a connected core,
    two extensions over disjoint fresh vertices, compatible nested trees."""
    n0 = rng.randint(1, 3)
    core = [f"s{i}" for i in range(n0)]
    side1 = [f"a{i}" for i in range(rng.randint(0, 3))]
    side2 = [f"b{i}" for i in range(rng.randint(0, 3))]
    everything = core + side1 + side2
    rng.shuffle(everything)
    pos = {label: i for i, label in enumerate(everything)}

    weights: dict[tuple, int] = {}

    def key(x, y):
        return (x, y) if pos[x] < pos[y] else (y, x)

    def add_edge(store, x, y):
        k = key(x, y)
        weights.setdefault(k, rng.randint(-4, 4))
        store.add(k)

    e0: set = set()
    for i in range(1, n0):
        add_edge(e0, core[i], core[rng.randrange(i)])
    for _ in range(rng.randint(0, 2)):
        if n0 >= 2:
            add_edge(e0, *rng.sample(core, 2))

    def grow(extra, sibling_edges):
        edges = set(e0)
        grown = list(core)
        for label in extra:
            add_edge(edges, label, rng.choice(grown))
            grown.append(label)
        for _ in range(rng.randint(0, 3)):
            if len(grown) < 2:
                break
            x, y = rng.sample(grown, 2)
            k = key(x, y)
            if x in core and y in core and sibling_edges is not None \
                    and k in sibling_edges and k not in e0:
                continue  # would silently enlarge the intersection
            add_edge(edges, x, y)
        return edges, grown

    e1, vertices1 = grow(side1, None)
    e2, vertices2 = grow(side2, e1)

    def triangle_candidates(edge_set, labels):
        ordered = sorted(labels, key=pos.get)
        out = []
        for i in range(len(ordered)):
            for j in range(i + 1, len(ordered)):
                for k in range(j + 1, len(ordered)):
                    x, y, z = ordered[i], ordered[j], ordered[k]
                    if {key(x, y), key(y, z), key(x, z)} <= edge_set:
                        out.append((x, y, z))
        return out

    t0 = {t for t in triangle_candidates(e0, core) if rng.random() < 0.4}

    def side_triangles(edge_set, labels):
        picked = set(t0)
        for t in triangle_candidates(edge_set, labels):
            if t in t0:
                continue
            if {key(t[0], t[1]), key(t[1], t[2]), key(t[0], t[2])} <= e0:
                continue  # fully inside the core: belongs to t0 or nowhere
            if rng.random() < 0.3:
                picked.add(t)
        return picked

    t1 = side_triangles(e1, vertices1)
    t2 = side_triangles(e2, vertices2)

    def label_tree(labels, edge_set, base):
        index = {l: i for i, l in enumerate(labels)}
        uf = UnionFind(len(labels))
        tree = set()
        for k in base:
            uf.union(index[k[0]], index[k[1]])
            tree.add(k)
        order = sorted(edge_set)
        rng.shuffle(order)
        for k in order:
            if uf.union(index[k[0]], index[k[1]]):
                tree.add(k)
        return tree

    a0 = label_tree(core, e0, set())
    a1 = label_tree(vertices1, e1, a0)
    a2 = label_tree(vertices2, e2, a0)

    def build(labels, edge_set, tri_set, tree_set):
        ordered = sorted(labels, key=pos.get)
        index = {l: i for i, l in enumerate(ordered)}

        def ek(k):
            i, j = index[k[0]], index[k[1]]
            return (min(i, j), max(i, j))

        edges = tuple(sorted((*ek(k), weights[k]) for k in edge_set))
        triangles = tuple(sorted(
            tuple(sorted((index[x], index[y], index[z]))) for x, y, z in tri_set
        ))
        tree = tuple(sorted(ek(k) for k in tree_set))
        return WeightedComplex(tuple(ordered), edges, triangles, tree)

    return CoverSpec(
        L=build(set(vertices1) | set(vertices2), e1 | e2, t1 | t2, a1 | a2),
        K1=build(vertices1, e1, t1, a1),
        K2=build(vertices2, e2, t2, a2),
        K0=build(core, e0, t0, a0),
    )


def random_filtration(rng, max_vertices=8, max_stages=4) -> Filtration:
    """Nested graphs grown over vertex prefixes; every stage is connected
    because each vertex first attaches to an earlier one."""
    n = rng.randint(2, max_vertices)
    final_edges = {}
    for i in range(1, n):
        final_edges[(rng.randrange(i), i)] = rng.randint(-4, 4)
    for _ in range(rng.randint(0, n)):
        a, b = rng.sample(range(n), 2)
        final_edges.setdefault((min(a, b), max(a, b)), rng.randint(-4, 4))
    sizes = sorted(rng.randint(2, n) for _ in range(rng.randint(1, max_stages - 1)))
    sizes.append(n)
    stages = []
    for size in sizes:
        edges = tuple(
            (a, b, w) for (a, b), w in sorted(final_edges.items()) if b < size
        )
        stage = WeightedComplex(tuple(f"v{i}" for i in range(size)), edges)
        stages.append(stage.with_tree(random_spanning_tree(stage, rng)))
    return Filtration(tuple(stages), {})


# ---------------------------------------------------------------------------
# Property checkers, shared between the unit tests (small case counts)
# and the acceptance suite (the specified 200+ cases).

def check_snf_contract(rng, cases: int):
    for _ in range(cases):
        A = random_matrix(rng)
        result = smith_normal_form(A)
        assert result.U.mul(A).mul(result.V) == result.D
        assert result.U.is_unimodular() and result.V.is_unimodular()
        diag = result.diagonal()
        assert all(d >= 0 for d in diag)
        nonzero = [d for d in diag if d != 0]
        assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))
        if A.rows == A.cols:
            det = A.determinant()
            if det != 0:
                product = 1
                for d in diag:
                    product *= d
                assert product == abs(det)
        # The diagonal is a complete invariant under unimodular changes.
        P = random_unimodular(rng, A.rows)
        Q = random_unimodular(rng, A.cols)
        assert smith_normal_form(P.mul(A).mul(Q)).diagonal() == diag


def check_sign_flip_invariance(rng, cases: int):
    for _ in range(cases):
        K = random_exactly_two_complex(rng)
        flipped = with_weights(K, lambda a, b, w: w * rng.choice((1, -1)))
        assert classify(flipped) == classify(K)


def check_all_pm1_reduction(rng, cases: int):
    for _ in range(cases):
        K = random_exactly_two_complex(rng)
        signs = with_weights(K, lambda a, b, w: rng.choice((1, -1)))
        ones = with_weights(K, lambda a, b, w: 1)
        assert classify(signs) == classify(ones)


def check_equal_weight_tree_independence(rng, cases: int):
    for _ in range(cases):
        weight = rng.randint(-4, 4)
        K = random_connected_graph(rng, max_v=9, weight_range=(weight, weight))
        baseline = None
        for strategy in ("bfs", "kruskal-min", "kruskal-max"):
            tree = compute_maximal_tree(K, strategy)
            value = classify(K.with_tree(tree.edges))
            baseline = value if baseline is None else baseline
            assert value == baseline
        for _ in range(20):
            value = classify(K.with_tree(random_spanning_tree(K, rng)))
            assert value == baseline


def check_relabel_invariance(rng, cases: int):
    for _ in range(cases):
        K = random_exactly_two_complex(rng)
        perm = list(range(len(K.vertices)))
        rng.shuffle(perm)
        moved = relabel(K, perm)
        assert validate(moved).ok
        assert abelianization(moved) == abelianization(K)
        assert classify(moved) == classify(K)


def check_filtration_conservation(rng, cases: int):
    for _ in range(cases):
        f = random_filtration(rng)
        analysis = analyze_filtration(f)
        factors = analysis.stage_factors
        for i in range(1, len(factors)):
            balance = Counter(factors[i - 1].orders)
            for e in analysis.events:
                if e.stage != i:
                    continue
                if e.kind == "death":
                    balance[e.factor] -= 1
                else:
                    balance[e.factor] += 1
            assert +balance == Counter(factors[i].orders)


def check_realize_roundtrip(rng, cases: int):
    for _ in range(cases):
        target = random_factorization(rng)
        K = realize(target)
        assert validate(K).ok
        assert classify(K) == target
