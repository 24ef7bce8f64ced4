"""McKay graphs: multiplicity matrices on Irr(G), components, orbit matching.

The graph of (G, rho) has one vertex per irreducible and N[i][j] =
dim Hom(chi_i (x) rho, chi_j) edges from i to j, all computed in exact
cyclotomic arithmetic.  Connected components are matched against the orbits
of G on the irreducibles of the kernel of rho.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .chartable import (
    CharacterTable,
    Rho,
    RhoSelector,
    adjacency_matrix,
    compute_character_table,
    decompose_character,
    is_self_dual,
    kernel_of_character,
    resolve_rho,
    restriction_multiplicities,
    rho_from_class_function,
)
from .cyclotomic import CycInt, cyc_sum
from .groups import ConjugacyData, FiniteGroup, Subgroup, conjugacy, quotient_group


class OrbitMismatch(Exception):
    """Component/orbit correspondence failed; indicates an implementation bug."""


@dataclass
class McKayGraph:
    ct: CharacterTable
    rho: Rho
    adjacency: tuple[tuple[int, ...], ...]
    dims: tuple[int, ...]
    trivial_vertex: int
    undirected: bool
    loopless: bool
    simply_laced: bool

    @property
    def n_vertices(self) -> int:
        return len(self.dims)

    def edge_count_doubled(self) -> int:
        """Sum of all off-diagonal entries: 2 * #edges for undirected graphs."""
        return sum(
            self.adjacency[i][j]
            for i in range(self.n_vertices)
            for j in range(self.n_vertices)
            if i != j
        )


def build_mckay_graph(ct: CharacterTable, sel: RhoSelector | Rho) -> McKayGraph:
    rho = sel if isinstance(sel, Rho) else resolve_rho(ct, sel)
    adj = adjacency_matrix(ct, rho)
    r = ct.r
    undirected = all(adj[i][j] == adj[j][i] for i in range(r) for j in range(i + 1, r))
    loopless = all(adj[i][i] == 0 for i in range(r))
    simply = all(adj[i][j] <= 1 for i in range(r) for j in range(r) if i != j)
    dims = tuple(ct.degrees)
    # row dimension count: sum_j N_ij d_j = d_i * dim rho
    for i in range(r):
        assert sum(adj[i][j] * dims[j] for j in range(r)) == dims[i] * rho.dim
    # k = 1 trace identity: tr A = sum over classes of chi_rho
    tr = sum(adj[i][i] for i in range(r))
    total = cyc_sum(rho.chi).as_integer()
    assert total == tr, "trace differs from the character sum over classes"
    return McKayGraph(
        ct=ct,
        rho=rho,
        adjacency=tuple(tuple(row) for row in adj),
        dims=dims,
        trivial_vertex=ct.trivial_index,
        undirected=undirected,
        loopless=loopless,
        simply_laced=simply,
    )


def dual_check(ct: CharacterTable, sel: RhoSelector) -> bool:
    """Does the graph of the dual equal the transposed graph?"""
    rho = resolve_rho(ct, sel)
    inv = ct.conj.inverse_class
    dual_chi = tuple(rho.chi[inv[k]] for k in range(ct.r))
    dual = rho_from_class_function(ct, dual_chi)
    a = build_mckay_graph(ct, rho).adjacency
    b = build_mckay_graph(ct, dual).adjacency
    r = ct.r
    return all(a[i][j] == b[j][i] for i in range(r) for j in range(r))


# ---------------------------------------------------------------------------
# components


def weak_components(adj) -> list[list[int]]:
    n = len(adj)
    seen = [False] * n
    comps = []
    for start in range(n):
        if seen[start]:
            continue
        stack = [start]
        seen[start] = True
        comp = []
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in range(n):
                if not seen[w] and (adj[v][w] or adj[w][v]):
                    seen[w] = True
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def strongly_connected(adj, vertices) -> bool:
    """Is the induced subgraph strongly connected (directed reachability)?"""
    index = {v: i for i, v in enumerate(vertices)}
    m = len(vertices)

    def reach(forward: bool) -> int:
        seen = [False] * m
        stack = [0]
        seen[0] = True
        count = 1
        while stack:
            i = stack.pop()
            v = vertices[i]
            for w in vertices:
                j = index[w]
                edge = adj[v][w] if forward else adj[w][v]
                if edge and not seen[j]:
                    seen[j] = True
                    count += 1
                    stack.append(j)
        return count

    return reach(True) == m and reach(False) == m


@dataclass
class Component:
    vertices: tuple[int, ...]  # irreducible indices of the parent table
    adjacency: tuple[tuple[int, ...], ...]
    dims: tuple[int, ...]
    principal: bool
    orbit_index: int
    orbit_size: int
    orbit_rep_degree: int


@dataclass
class ComponentDecomposition:
    graph: McKayGraph
    kernel: Subgroup
    kernel_table: CharacterTable
    orbits: list[tuple[int, ...]]  # orbits on Irr(N), as index tuples
    components: list[Component]

    @property
    def principal(self) -> Component:
        return next(c for c in self.components if c.principal)


def _induced(adj, vertices):
    return tuple(tuple(adj[v][w] for w in vertices) for v in vertices)


def _kernel_orbits(ct_n: CharacterTable, sub: Subgroup, g: FiniteGroup) -> list[tuple[int, ...]]:
    """Orbits of G on Irr(N) under conjugation, via class permutations."""
    cd_n = ct_n.conj
    parent_to_local = {pe: i for i, pe in enumerate(sub.elements)}
    perms = set()
    for x in range(g.order):
        xi = int(g.inv[x])
        perm = []
        for rep in cd_n.reps:
            conj = int(g.mul[g.mul[x, sub.to_parent(rep)], xi])
            perm.append(int(cd_n.class_of[parent_to_local[conj]]))
        perms.add(tuple(perm))
    keys = [tuple(v.coeffs for v in row) for row in ct_n.values]
    key_index = {key: i for i, key in enumerate(keys)}
    seen = [False] * ct_n.r
    orbits = []
    for i in range(ct_n.r):
        if seen[i]:
            continue
        orbit = {i}
        frontier = [i]
        while frontier:
            j = frontier.pop()
            row = ct_n.values[j]
            for perm in perms:
                moved = tuple(tuple(row[perm[k]].coeffs) for k in range(ct_n.r))
                target = key_index[moved]
                if target not in orbit:
                    orbit.add(target)
                    frontier.append(target)
        for j in orbit:
            seen[j] = True
        orbits.append(tuple(sorted(orbit)))
    return orbits


def decompose_components(
    graph: McKayGraph, ct: CharacterTable, cd: ConjugacyData
) -> ComponentDecomposition:
    comps = weak_components(graph.adjacency)
    kernel = kernel_of_character(ct, graph.rho.chi)
    ct_n = compute_character_table(kernel.group)
    orbits = _kernel_orbits(ct_n, kernel, ct.group)
    if len(comps) != len(orbits):
        raise OrbitMismatch(
            f"{len(comps)} components vs {len(orbits)} orbits on Irr(N)"
        )
    # support of the restriction of each vertex must be exactly one orbit
    orbit_of_irrN = {}
    for oi, orbit in enumerate(orbits):
        for t in orbit:
            orbit_of_irrN[t] = oi
    components = []
    for comp in comps:
        orbit_indices = set()
        for v in comp:
            mults = restriction_multiplicities(ct, kernel, ct_n, ct.values[v])
            support = {t for t, m in enumerate(mults) if m}
            touched = {orbit_of_irrN[t] for t in support}
            if len(touched) != 1:
                raise OrbitMismatch(
                    f"vertex {v} restricts onto {len(touched)} orbits"
                )
            if support != set(orbits[next(iter(touched))]):
                raise OrbitMismatch(
                    f"vertex {v} is not supported on its full orbit"
                )
            orbit_indices |= touched
        if len(orbit_indices) != 1:
            raise OrbitMismatch("component straddles several orbits")
        oi = orbit_indices.pop()
        rep_deg = ct_n.degrees[orbits[oi][0]]
        components.append(
            Component(
                vertices=tuple(comp),
                adjacency=_induced(graph.adjacency, comp),
                dims=tuple(graph.dims[v] for v in comp),
                principal=graph.trivial_vertex in comp,
                orbit_index=oi,
                orbit_size=len(orbits[oi]),
                orbit_rep_degree=rep_deg,
            )
        )
    used = {c.orbit_index for c in components}
    if used != set(range(len(orbits))):
        raise OrbitMismatch("component-to-orbit matching is not a bijection")
    return ComponentDecomposition(
        graph=graph,
        kernel=kernel,
        kernel_table=ct_n,
        orbits=orbits,
        components=components,
    )


def principal_component_isomorphism_check(
    decomp: ComponentDecomposition, ct: CharacterTable
) -> bool:
    """Principal component = graph of (G/N, rho); components with a degree-1
    vertex are isomorphic to the principal one."""
    kernel = decomp.kernel
    quo, coset_of = quotient_group(ct.group, kernel)
    ct_q = compute_character_table(quo)
    cd_q = ct_q.conj
    # push rho down: its value on a coset class is the value on any parent element
    parent_class = ct.conj.class_of
    reps_parent = []
    for rep in cd_q.reps:
        parent = next(
            x for x in range(ct.group.order) if int(coset_of[x]) == rep
        )
        reps_parent.append(parent)
    chi_q = tuple(decomp.graph.rho.chi[int(parent_class[x])] for x in reps_parent)
    rho_q = rho_from_class_function(ct_q, chi_q)
    graph_q = build_mckay_graph(ct_q, rho_q)
    principal = decomp.principal
    if not graph_isomorphic(graph_q.adjacency, principal.adjacency):
        return False
    for comp in decomp.components:
        if comp is principal:
            continue
        if 1 in comp.dims and not graph_isomorphic(comp.adjacency, principal.adjacency):
            return False
    return True


# ---------------------------------------------------------------------------
# graph isomorphism (multidigraphs, refinement + backtracking)


def _refine_colors(adj, colors):
    n = len(adj)
    while True:
        sigs = []
        for v in range(n):
            out = sorted((colors[w], adj[v][w]) for w in range(n) if adj[v][w])
            inn = sorted((colors[w], adj[w][v]) for w in range(n) if adj[w][v])
            sigs.append((colors[v], tuple(out), tuple(inn)))
        palette = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [palette[s] for s in sigs]
        if new == colors:
            return colors
        colors = new


def graph_isomorphic(a, b) -> bool:
    """Exact isomorphism of directed multigraphs given as adjacency matrices."""
    n = len(a)
    if len(b) != n:
        return False
    if n == 0:
        return True
    ca = _refine_colors(a, [0] * n)
    cb = _refine_colors(b, [0] * n)
    if sorted(ca) != sorted(cb):
        return False
    order = sorted(range(n), key=lambda v: (ca.count(ca[v]), ca[v], v))
    mapping: dict[int, int] = {}
    used = set()

    def consistent(v, w) -> bool:
        if ca[v] != cb[w]:
            return False
        for v2, w2 in mapping.items():
            if a[v][v2] != b[w][w2] or a[v2][v] != b[w2][w]:
                return False
        return a[v][v] == b[w][w]

    def backtrack(idx: int) -> bool:
        if idx == n:
            return True
        v = order[idx]
        for w in range(n):
            if w not in used and consistent(v, w):
                mapping[v] = w
                used.add(w)
                if backtrack(idx + 1):
                    return True
                del mapping[v]
                used.remove(w)
        return False

    return backtrack(0)


def disjoint_union(adjs) -> tuple[tuple[int, ...], ...]:
    total = sum(len(a) for a in adjs)
    out = [[0] * total for _ in range(total)]
    offset = 0
    for a in adjs:
        m = len(a)
        for i in range(m):
            for j in range(m):
                out[offset + i][offset + j] = a[i][j]
        offset += m
    return tuple(tuple(row) for row in out)
