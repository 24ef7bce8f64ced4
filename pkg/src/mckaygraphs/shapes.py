"""Shape recognition for the graphs the classification produces.

Recognizes cycles, stars ("hedgehogs"), the two-fork affine D strings, the
three exceptional affine E trees, and the odd-dihedral path with a terminal
loop.  Recognition is purely structural; spectral facts (radius 2, positive
integer eigenvector) are kept as an independent cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional


@dataclass(frozen=True)
class ShapeLabel:
    kind: str  # "affine_a" | "affine_d" | "affine_e" | "hedgehog" | "dihedral_odd_tail" | "other"
    index: Optional[int] = None  # subscript n, E-type 6/7/8, spine count, or vertex count
    dynkin_group_order: Optional[int] = None  # 4(n-2) for D, 24/48/120 for E
    hedgehog_alias: bool = False  # affine D_4 doubles as the 4-spine star

    def short(self) -> str:
        if self.kind == "affine_a":
            return f"A~{self.index}"
        if self.kind == "affine_d":
            return f"D~{self.index}" + ("*" if self.hedgehog_alias else "")
        if self.kind == "affine_e":
            return f"E~{self.index}"
        if self.kind == "hedgehog":
            return f"hedgehog({self.index})"
        if self.kind == "dihedral_odd_tail":
            return f"odd-tail({self.index})"
        return "other"


OTHER = ShapeLabel(kind="other")


def _is_symmetric(adj) -> bool:
    n = len(adj)
    return all(adj[i][j] == adj[j][i] for i in range(n) for j in range(i + 1, n))


def _degrees(adj) -> list[int]:
    """Undirected degree with loops counted twice."""
    n = len(adj)
    return [sum(adj[v][w] for w in range(n)) + adj[v][v] for v in range(n)]


def _simple_neighbors(adj, v) -> list[int]:
    return [w for w in range(len(adj)) if w != v and adj[v][w]]


def classify_component(adj) -> ShapeLabel:
    """Classify one connected component given by its adjacency matrix."""
    n = len(adj)
    if n == 0:
        return OTHER
    if not _is_symmetric(adj):
        return OTHER
    loops = [v for v in range(n) if adj[v][v]]
    degs = _degrees(adj)
    # cycles (multigraph sense): every vertex of undirected degree 2
    if all(d == 2 for d in degs) and not any(adj[v][w] > 2 for v in range(n) for w in range(n)):
        # includes the loop vertex (n=1) and the doubled edge (n=2)
        return ShapeLabel(kind="affine_a", index=n - 1)
    if any(adj[v][w] > 1 for v in range(n) for w in range(n) if v != w):
        return OTHER

    if len(loops) == 1 and adj[loops[0]][loops[0]] == 1:
        return _classify_odd_tail(adj, loops[0])
    if loops:
        return OTHER

    # loop-free simply-laced: tree shapes
    edge_count = sum(adj[v][w] for v in range(n) for w in range(n)) // 2
    if edge_count != n - 1:
        return OTHER  # has a circuit but is not a plain cycle
    deg3 = [v for v in range(n) if degs[v] >= 3]
    if not deg3:
        # a path; the 2- and 3-vertex paths are the degenerate stars
        if n == 2:
            return ShapeLabel(kind="hedgehog", index=1)
        if n == 3:
            return ShapeLabel(kind="hedgehog", index=2)
        return OTHER
    if len(deg3) == 1:
        center = deg3[0]
        if degs[center] == n - 1:
            # star K_{1,m}
            m = n - 1
            if m == 4:
                return ShapeLabel(
                    kind="affine_d", index=4, dynkin_group_order=8, hedgehog_alias=True
                )
            return ShapeLabel(kind="hedgehog", index=m)
        if degs[center] == 3:
            arms = sorted(_arm_lengths(adj, center))
            if arms == [2, 2, 2] and n == 7:
                return ShapeLabel(kind="affine_e", index=6, dynkin_group_order=24)
            if arms == [1, 3, 3] and n == 8:
                return ShapeLabel(kind="affine_e", index=7, dynkin_group_order=48)
            if arms == [1, 2, 5] and n == 9:
                return ShapeLabel(kind="affine_e", index=8, dynkin_group_order=120)
        return OTHER
    if len(deg3) == 2:
        a, b = deg3
        if degs[a] == degs[b] == 3:
            leaves_a = [w for w in _simple_neighbors(adj, a) if degs[w] == 1]
            leaves_b = [w for w in _simple_neighbors(adj, b) if degs[w] == 1]
            if len(leaves_a) == 2 and len(leaves_b) == 2 and _is_path_between(adj, a, b, degs):
                return ShapeLabel(
                    kind="affine_d", index=n - 1, dynkin_group_order=4 * (n - 3)
                )
        return OTHER
    return OTHER


def _arm_lengths(adj, center) -> list[int]:
    lengths = []
    for start in _simple_neighbors(adj, center):
        length = 1
        prev, cur = center, start
        while True:
            nxt = [w for w in _simple_neighbors(adj, cur) if w != prev]
            if not nxt:
                break
            if len(nxt) > 1:
                return [-1]  # branching inside an arm
            prev, cur = cur, nxt[0]
            length += 1
        lengths.append(length)
    return lengths


def _is_path_between(adj, a, b, degs) -> bool:
    """All vertices outside the two forks form a simple a--b path of 2-degree vertices."""
    prev, cur = None, a
    while True:
        nxt = [
            w
            for w in _simple_neighbors(adj, cur)
            if w != prev and (degs[w] == 2 or w == b)
        ]
        if cur == a:
            nxt = [w for w in nxt if degs[w] == 2 or w == b]
        if b in nxt:
            return True
        if len(nxt) != 1:
            return False
        prev, cur = cur, nxt[0]
        if degs[cur] != 2:
            return False


def _classify_odd_tail(adj, loop_vertex) -> ShapeLabel:
    """A path of 2s ending in a loop, with two leaves at the far end."""
    n = len(adj)
    degs = _degrees(adj)
    leaves = [v for v in range(n) if degs[v] == 1]
    if len(leaves) != 2:
        return OTHER
    # walk from the loop vertex away from the loop; must be a path to the fork
    prev, cur = None, loop_vertex
    visited = {loop_vertex}
    while True:
        nxt = [w for w in _simple_neighbors(adj, cur) if w != prev]
        if len(nxt) == 2 and sorted(nxt) == sorted(leaves):
            if len(visited) + 2 == n:
                return ShapeLabel(kind="dihedral_odd_tail", index=n)
            return OTHER
        if len(nxt) != 1:
            return OTHER
        prev, cur = cur, nxt[0]
        if cur in visited:
            return OTHER
        visited.add(cur)


# ---------------------------------------------------------------------------
# forests, bipartitions, circuits


def graph_flags(adj) -> tuple[bool, bool, bool]:
    """(undirected, loopless, simply_laced)."""
    n = len(adj)
    undirected = _is_symmetric(adj)
    loopless = all(adj[v][v] == 0 for v in range(n))
    simply = all(adj[v][w] <= 1 for v in range(n) for w in range(n) if v != w)
    return undirected, loopless, simply


def _component_count(adj) -> int:
    n = len(adj)
    seen = [False] * n
    count = 0
    for s in range(n):
        if seen[s]:
            continue
        count += 1
        stack = [s]
        seen[s] = True
        while stack:
            v = stack.pop()
            for w in range(n):
                if not seen[w] and (adj[v][w] or adj[w][v]):
                    seen[w] = True
                    stack.append(w)
    return count


def is_forest(adj) -> bool:
    n = len(adj)
    undirected, loopless, simply = graph_flags(adj)
    if not (undirected and loopless and simply):
        return False
    edges = sum(adj[v][w] for v in range(n) for w in range(n)) // 2
    comps = _component_count(adj)
    acyclic = _acyclic(adj)
    # Euler cross-check: a forest has |V| = |E| + #components
    assert acyclic == (n == edges + comps)
    return acyclic


def is_tree(adj) -> bool:
    return is_forest(adj) and _component_count(adj) == 1


def _acyclic(adj) -> bool:
    n = len(adj)
    seen = [False] * n
    for s in range(n):
        if seen[s]:
            continue
        stack = [(s, -1)]
        seen[s] = True
        while stack:
            v, parent = stack.pop()
            for w in range(n):
                if not adj[v][w]:
                    continue
                if not seen[w]:
                    seen[w] = True
                    stack.append((w, v))
                elif w != parent:
                    return False
    return True


def bipartition(adj) -> Optional[list[int]]:
    """BFS 2-coloring of the undirected support, or None."""
    n = len(adj)
    if any(adj[v][v] for v in range(n)):
        return None
    color = [-1] * n
    for s in range(n):
        if color[s] >= 0:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            v = stack.pop()
            for w in range(n):
                if not (adj[v][w] or adj[w][v]):
                    continue
                if color[w] < 0:
                    color[w] = 1 - color[v]
                    stack.append(w)
                elif color[w] == color[v]:
                    return None
    return color


def circuit_count(adj, k: int) -> int:
    """tr(A^k) by exact integer matrix power."""
    assert k >= 1
    n = len(adj)
    power = [row[:] for row in adj]
    for _ in range(k - 1):
        power = [
            [sum(power[i][t] * adj[t][j] for t in range(n)) for j in range(n)]
            for i in range(n)
        ]
    return sum(power[i][i] for i in range(n))


def template_marking(adj) -> Optional[list[int]]:
    """Positive integer vector with A*d = 2*d and gcd 1, when one exists."""
    n = len(adj)
    # exact kernel of (A - 2I) over Q
    rows = [[Fraction(adj[i][j] - (2 if i == j else 0)) for j in range(n)] for i in range(n)]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, n) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(n):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    if len(free) != 1:
        return None
    fc = free[0]
    vec = [Fraction(0)] * n
    vec[fc] = Fraction(1)
    for i, pc in enumerate(pivots):
        vec[pc] = -rows[i][fc]
    if any(v <= 0 for v in vec):
        vec = [-v for v in vec]
    if any(v <= 0 for v in vec):
        return None
    denom = 1
    for v in vec:
        denom = denom * v.denominator // _gcd(denom, v.denominator)
    ints = [int(v * denom) for v in vec]
    g = 0
    for v in ints:
        g = _gcd(g, v)
    return [v // g for v in ints]


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def pf_integer_vector_check(adj, dims, rho_dim: int, label: Optional[ShapeLabel] = None):
    """Verify A*dims == rho_dim*dims exactly; for Dynkin labels also verify
    dims = a * (template marking) and report a.

    Returns (ok, a) with a = None when no marking applies.
    """
    n = len(adj)
    ok = all(
        sum(adj[i][j] * dims[j] for j in range(n)) == rho_dim * dims[i]
        for i in range(n)
    )
    a = None
    if label is not None and label.kind in ("affine_d", "affine_e"):
        marking = template_marking(adj)
        if marking is None:
            return False, None
        unit = next((i for i in range(n) if marking[i] == 1), None)
        if unit is None:
            return False, None
        a = dims[unit]
        ok = ok and all(dims[i] == a * marking[i] for i in range(n))
    return ok, a
