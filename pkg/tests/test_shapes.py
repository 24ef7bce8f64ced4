import random

from mckaygraphs.graphs import graph_isomorphic
from mckaygraphs.shapes import (
    bipartition,
    circuit_count,
    classify_component,
    graph_flags,
    is_forest,
    is_tree,
    pf_integer_vector_check,
    template_marking,
)


def adj_from_edges(n, edges, loops=()):
    a = [[0] * n for _ in range(n)]
    for i, j in edges:
        a[i][j] += 1
        a[j][i] += 1
    for v in loops:
        a[v][v] += 1
    return tuple(tuple(row) for row in a)


def path(n):
    return adj_from_edges(n, [(i, i + 1) for i in range(n - 1)])


def star(m):
    return adj_from_edges(m + 1, [(0, i) for i in range(1, m + 1)])


def cycle(n):
    return adj_from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def affine_d(n):
    """n+1 vertices: leaves 0,1 on vertex 2, a path 2..n-2, leaves n-1,n on n-2."""
    edges = [(0, 2), (1, 2), (n - 1, n - 2), (n, n - 2)]
    edges += [(i, i + 1) for i in range(2, n - 2)]
    return adj_from_edges(n + 1, edges)


def affine_e(kind):
    if kind == 6:
        edges = [(0, 1), (1, 2), (2, 3), (3, 4), (2, 5), (5, 6)]
    elif kind == 7:
        edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (3, 7)]
    else:
        edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (5, 8)]
    return adj_from_edges(len(edges) + 1, edges)


def test_cycles_are_affine_a():
    for n in (3, 4, 5, 9):
        label = classify_component(cycle(n))
        assert label.kind == "affine_a" and label.index == n - 1
    # the degenerate cycles: a single-loop vertex and a doubled edge
    loop = ((1,),)
    lab0 = classify_component(loop)
    assert lab0.kind == "affine_a" and lab0.index == 0
    doubled = ((0, 2), (2, 0))
    lab = classify_component(doubled)
    assert lab.kind == "affine_a" and lab.index == 1
    # a double loop has degree 4 and is not a cycle
    assert classify_component(((2,),)).kind == "other"


def test_stars_and_alias():
    assert classify_component(star(1)).kind == "hedgehog"
    assert classify_component(star(2)).kind == "hedgehog"
    lab4 = classify_component(star(4))
    assert lab4.kind == "affine_d" and lab4.index == 4 and lab4.hedgehog_alias
    assert lab4.dynkin_group_order == 8
    lab16 = classify_component(star(16))
    assert lab16.kind == "hedgehog" and lab16.index == 16


def test_affine_d_templates():
    for n in (5, 6, 7, 10):
        lab = classify_component(affine_d(n))
        assert lab.kind == "affine_d" and lab.index == n, (n, lab)
        assert lab.dynkin_group_order == 4 * (n - 2)


def test_affine_e_templates():
    for kind, order in ((6, 24), (7, 48), (8, 120)):
        lab = classify_component(affine_e(kind))
        assert lab.kind == "affine_e" and lab.index == kind
        assert lab.dynkin_group_order == order


def test_markings_recover_group_orders():
    for adj, order in [
        (affine_e(6), 24),
        (affine_e(7), 48),
        (affine_e(8), 120),
        (affine_d(4), 8),
        (affine_d(6), 16),
        (star(4), 8),
    ]:
        marking = template_marking(adj)
        assert marking is not None
        assert sum(d * d for d in marking) == order


def test_odd_tail():
    # S_3 shape: two leaves on a looped vertex
    a = adj_from_edges(3, [(0, 2), (1, 2)], loops=[2])
    lab = classify_component(a)
    assert lab.kind == "dihedral_odd_tail" and lab.index == 3
    # longer tail: leaves - fork - chain - loop
    b = adj_from_edges(4, [(0, 2), (1, 2), (2, 3)], loops=[3])
    lab = classify_component(b)
    assert lab.kind == "dihedral_odd_tail" and lab.index == 4
    # loop in the middle is not the template
    c = adj_from_edges(4, [(0, 2), (1, 2), (2, 3)], loops=[2])
    assert classify_component(c).kind == "other"


def test_paths_and_random_other():
    assert classify_component(path(4)).kind == "other"
    assert classify_component(path(7)).kind == "other"


def test_forest_and_tree_flags():
    assert is_tree(star(5))
    assert is_tree(path(1))
    assert not is_forest(cycle(4))
    two_trees = [[0] * 5 for _ in range(5)]
    for i, j in [(0, 1), (2, 3), (3, 4)]:
        two_trees[i][j] = two_trees[j][i] = 1
    t = tuple(tuple(r) for r in two_trees)
    assert is_forest(t) and not is_tree(t)
    looped = adj_from_edges(3, [(0, 1), (1, 2)], loops=[0])
    assert not is_forest(looped)
    directed = ((0, 1), (0, 0))
    assert not is_forest(directed)


def test_bipartition():
    assert bipartition(cycle(4)) is not None
    assert bipartition(cycle(3)) is None
    colors = bipartition(star(4))
    assert colors is not None and colors[0] != colors[1]
    looped = adj_from_edges(2, [(0, 1)], loops=[1])
    assert bipartition(looped) is None


def test_circuit_counts():
    single_edge = adj_from_edges(2, [(0, 1)])
    assert circuit_count(single_edge, 2) == 2
    assert circuit_count(star(4), 2) == 8
    assert circuit_count(cycle(5), 5) == 10  # 5 starts x 2 directions
    s3_shape = adj_from_edges(3, [(0, 2), (1, 2)], loops=[2])
    assert circuit_count(s3_shape, 2) == 5


def test_pf_vector_check():
    adj = affine_e(6)
    marking = template_marking(adj)
    lab = classify_component(adj)
    ok, a = pf_integer_vector_check(adj, marking, 2, lab)
    assert ok and a == 1
    scaled = [3 * d for d in marking]
    ok, a = pf_integer_vector_check(adj, scaled, 2, lab)
    assert ok and a == 3
    wrong = list(marking)
    wrong[0] += 1
    ok, _ = pf_integer_vector_check(adj, wrong, 2, lab)
    assert not ok
    # single vertex, radius 0
    ok, a = pf_integer_vector_check(((0,),), (1,), 0, None)
    assert ok and a is None


# ---------------------------------------------------------------------------
# exhaustive tree enumeration (independent oracle)


def canonical_tree(n, edges):
    """AHU canonical form rooted at the tree center(s)."""
    if n == 1:
        return "()"
    neighbors = {v: set() for v in range(n)}
    for i, j in edges:
        neighbors[i].add(j)
        neighbors[j].add(i)
    degree = {v: len(neighbors[v]) for v in range(n)}
    layer = [v for v in range(n) if degree[v] <= 1]
    removed = set(layer)
    remaining = n
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            for w in neighbors[v]:
                if w not in removed:
                    degree[w] -= 1
                    if degree[w] == 1:
                        nxt.append(w)
                        removed.add(w)
        layer = nxt

    def encode(v, parent):
        subs = sorted(encode(w, v) for w in neighbors[v] if w != parent)
        return "(" + "".join(subs) + ")"

    if len(layer) == 1:
        return encode(layer[0], None)
    a, b = layer
    return "(" + "".join(sorted([encode(a, b), encode(b, a)])) + ")"


def all_trees(max_n):
    """All unlabeled trees with up to max_n vertices, one labeled copy each."""
    by_size = {1: [(1, ())]}
    for n in range(2, max_n + 1):
        seen = {}
        for size, edges in by_size[n - 1]:
            for attach in range(size):
                new_edges = edges + ((attach, size),)
                key = canonical_tree(n, new_edges)
                if key not in seen:
                    seen[key] = (n, new_edges)
        by_size[n] = list(seen.values())
    return by_size


def test_tree_counts_and_unique_leaf_neighbor_lemma():
    by_size = all_trees(10)
    counts = [len(by_size[n]) for n in range(1, 11)]
    assert counts == [1, 1, 1, 2, 3, 6, 11, 23, 47, 106]
    for n in range(2, 11):
        for size, edges in by_size[n]:
            adj = adj_from_edges(size, edges)
            degs = [sum(row) for row in adj]
            leaves = [v for v in range(size) if degs[v] == 1]
            attach = set()
            for v in leaves:
                for w in range(size):
                    if adj[v][w]:
                        attach.add(w)
            if len(attach) == 1:
                # a unique vertex adjacent to a leaf forces a star
                center = attach.pop()
                assert degs[center] == size - 1, (n, edges)
                label = classify_component(adj)
                assert label.kind == "hedgehog" or (
                    label.kind == "affine_d" and label.hedgehog_alias
                )


def test_classifier_fuzz_random_trees():
    rng = random.Random(99)
    templates_checked = 0
    for _ in range(1000):
        n = rng.randint(2, 14)
        if n == 2:
            edges = [(0, 1)]
        else:
            prufer = [rng.randrange(n) for _ in range(n - 2)]
            degree = [1] * n
            for v in prufer:
                degree[v] += 1
            edges = []
            import heapq

            leaves = [v for v in range(n) if degree[v] == 1]
            heapq.heapify(leaves)
            for v in prufer:
                leaf = heapq.heappop(leaves)
                edges.append((leaf, v))
                degree[v] -= 1
                if degree[v] == 1:
                    heapq.heappush(leaves, v)
            u, w = sorted(leaves)
            edges.append((u, w))
        adj = adj_from_edges(n, edges)
        label = classify_component(adj)
        if label.kind == "other":
            continue
        templates_checked += 1
        # any non-other label must reproduce the exact template graph
        if label.kind == "hedgehog":
            assert graph_isomorphic(adj, star(label.index))
        elif label.kind == "affine_d":
            target = star(4) if label.index == 4 else affine_d(label.index)
            assert graph_isomorphic(adj, target)
        elif label.kind == "affine_e":
            assert graph_isomorphic(adj, affine_e(label.index))
        else:
            raise AssertionError(f"unexpected label {label} for a random tree")
    assert templates_checked > 0  # stars do appear among random trees


def test_bipartite_graphs_have_symmetric_spectra():
    # odd-length circuit counts vanish on bipartite fixture graphs
    from mckaygraphs.chartable import FaithfulSelfDualMinDim, compute_character_table
    from mckaygraphs.graphs import build_mckay_graph
    from mckaygraphs.groups import BinaryDihedral, BinaryPoly, Extraspecial2, build_group

    for spec in (BinaryDihedral(3), BinaryPoly("T"), Extraspecial2(2, "-")):
        g = build_group(spec)
        ct = compute_character_table(g)
        graph = build_mckay_graph(ct, FaithfulSelfDualMinDim())
        assert bipartition(graph.adjacency) is not None
        for k in range(1, min(ct.r, 9) + 1, 2):
            assert circuit_count(graph.adjacency, k) == 0
