"""König graphs of reaction networks and the fluffle predicates on them.

Vertices are tagged pairs: ``("x", i)`` for entity i and ``("r", j)`` for
reaction j.  MR-edges (x, r) record s-_{x,r} > 0, RM-edges (r, x) record
s+_{x,r} > 0.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .algebra.childsel import ChildSelection
from .network import ReactionNetwork, SubNetwork

Vertex = tuple[str, int]


def ent(i: int) -> Vertex:
    return ("x", i)


def rxn(j: int) -> Vertex:
    return ("r", j)


def _vertex_key(v: Vertex):
    return (0 if v[0] == "x" else 1, v[1])


@dataclass(frozen=True)
class KoenigGraph:
    """A (sub)graph of the König graph; ``weights`` maps edges to coefficients."""

    entities: frozenset[int]
    reactions: frozenset[int]
    mr: frozenset[tuple[int, int]]
    rm: frozenset[tuple[int, int]]
    weights: Mapping[tuple[str, int, int], Fraction] = field(default_factory=dict, compare=False,
                                                             repr=False, hash=False)

    def __post_init__(self):
        for name in ("entities", "reactions", "mr", "rm"):
            object.__setattr__(self, name, frozenset(getattr(self, name)))
        for x, r in self.mr:
            if x not in self.entities or r not in self.reactions:
                raise ValueError(f"MR-edge {(x, r)} leaves the vertex set")
        for r, x in self.rm:
            if x not in self.entities or r not in self.reactions:
                raise ValueError(f"RM-edge {(r, x)} leaves the vertex set")

    def vertices(self) -> list[Vertex]:
        return sorted([ent(x) for x in self.entities] + [rxn(r) for r in self.reactions], key=_vertex_key)

    def edges(self) -> list[tuple[Vertex, Vertex]]:
        out = [(ent(x), rxn(r)) for x, r in self.mr] + [(rxn(r), ent(x)) for r, x in self.rm]
        return sorted(out, key=lambda e: (_vertex_key(e[0]), _vertex_key(e[1])))

    def successors(self) -> dict[Vertex, list[Vertex]]:
        adj = {v: [] for v in self.vertices()}
        for a, b in self.edges():
            adj[a].append(b)
        return adj

    def predecessors(self) -> dict[Vertex, list[Vertex]]:
        adj = {v: [] for v in self.vertices()}
        for a, b in self.edges():
            adj[b].append(a)
        return adj

    def shadow(self) -> dict[Vertex, set[Vertex]]:
        """Undirected simple graph underlying the digraph (digons collapse)."""
        adj = {v: set() for v in self.vertices()}
        for a, b in self.edges():
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def weight(self, edge: tuple[Vertex, Vertex]) -> Fraction:
        (ka, a), (kb, b) = edge
        if ka == "x":
            return self.weights[("mr", a, b)]
        return self.weights[("rm", a, b)]

    def out_degree(self, x: int) -> int:
        return sum(1 for e, _ in self.mr if e == x)

    def in_degree(self, r: int) -> int:
        return sum(1 for _, s in self.mr if s == r)

    def matching(self) -> dict[int, int] | None:
        """kappa read off the MR-edges when they form a perfect matching."""
        kappa = {}
        seen_r = set()
        for x, r in sorted(self.mr):
            if x in kappa or r in seen_r:
                return None
            kappa[x] = r
            seen_r.add(r)
        if set(kappa) != set(self.entities) or seen_r != set(self.reactions):
            return None
        return kappa

    def child_selection(self) -> ChildSelection | None:
        kappa = self.matching()
        return None if kappa is None else ChildSelection.from_mapping(kappa)

    def sub(self) -> SubNetwork:
        return SubNetwork(self.entities, self.reactions)

    def induced(self, entities: Iterable[int], reactions: Iterable[int]) -> "KoenigGraph":
        xs, rs = frozenset(entities), frozenset(reactions)
        return KoenigGraph(xs, rs,
                           frozenset(e for e in self.mr if e[0] in xs and e[1] in rs),
                           frozenset(e for e in self.rm if e[0] in rs and e[1] in xs),
                           self.weights)

    def union(self, other: "KoenigGraph") -> "KoenigGraph":
        weights = dict(self.weights)
        weights.update(other.weights)
        return KoenigGraph(self.entities | other.entities, self.reactions | other.reactions,
                           self.mr | other.mr, self.rm | other.rm, weights)

    def with_edges(self, mr: Iterable[tuple[int, int]], rm: Iterable[tuple[int, int]]) -> "KoenigGraph":
        """Subgraph on the vertices touched by the given edges."""
        mr, rm = frozenset(mr), frozenset(rm)
        xs = {x for x, _ in mr} | {x for _, x in rm}
        rs = {r for _, r in mr} | {r for r, _ in rm}
        return KoenigGraph(frozenset(xs), frozenset(rs), mr, rm, self.weights)


def build_koenig(rn: ReactionNetwork) -> KoenigGraph:
    mr, rm, weights = set(), set(), {}
    for j, r in enumerate(rn.reactions):
        for x, c in r.reactants.items():
            mr.add((x, j))
            weights[("mr", x, j)] = c
        for x, c in r.products.items():
            rm.add((j, x))
            weights[("rm", j, x)] = c
    return KoenigGraph(frozenset(range(rn.n_entities)), frozenset(range(rn.n_reactions)),
                       frozenset(mr), frozenset(rm), weights)


def koenig_of_cs(k: ChildSelection, parent: KoenigGraph) -> KoenigGraph:
    """K(kappa): the matching MR-edges plus every induced RM-edge of the parent."""
    xs, rs = frozenset(k.entities), frozenset(k.reactions)
    for pair in k.pairs:
        if pair not in parent.mr:
            raise ValueError(f"pair {pair} is not an MR-edge of the parent graph")
    rm = frozenset(e for e in parent.rm if e[0] in rs and e[1] in xs)
    return KoenigGraph(xs, rs, k.key, rm, parent.weights)


def digons(g: KoenigGraph) -> frozenset[tuple[int, int]]:
    """Pairs (x, r) joined by both an MR-edge and an RM-edge."""
    return frozenset((x, r) for x, r in g.mr if (r, x) in g.rm)


def _reach(adj: Mapping[Vertex, Iterable[Vertex]], start: Vertex) -> set[Vertex]:
    seen = {start}
    stack = [start]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def is_strongly_connected(g: KoenigGraph) -> bool:
    verts = g.vertices()
    if not verts:
        return False
    n = len(verts)
    return len(_reach(g.successors(), verts[0])) == n and len(_reach(g.predecessors(), verts[0])) == n


def articulation_points(adj: Mapping[Vertex, set[Vertex]]) -> set[Vertex]:
    """Cut vertices of an undirected graph (iterative Hopcroft-Tarjan)."""
    order: dict[Vertex, int] = {}
    low: dict[Vertex, int] = {}
    cuts: set[Vertex] = set()
    counter = 0
    for root in sorted(adj, key=_vertex_key):
        if root in order:
            continue
        order[root] = low[root] = counter
        counter += 1
        children = 0
        stack = [(root, None, iter(sorted(adj[root], key=_vertex_key)))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w == parent:
                    continue
                if w in order:
                    low[v] = min(low[v], order[w])
                else:
                    order[w] = low[w] = counter
                    counter += 1
                    if v == root:
                        children += 1
                    stack.append((w, v, iter(sorted(adj[w], key=_vertex_key))))
                    advanced = True
                    break
            if not advanced:
                stack.pop()
                if parent is not None:
                    low[parent] = min(low[parent], low[v])
                    if parent != root and low[v] >= order[parent]:
                        cuts.add(parent)
        if children > 1:
            cuts.add(root)
    return cuts


def is_two_connected(adj: Mapping[Vertex, set[Vertex]]) -> bool:
    if len(adj) < 3:
        return False
    first = next(iter(adj))
    if len(_reach(adj, first)) != len(adj):
        return False
    return not articulation_points(adj)


def is_strong_block(g: KoenigGraph) -> bool:
    """Strongly connected, with a 2-connected undirected shadow.

    Graphs with at most two vertices only need to be strongly connected, so
    a lone digon counts as a strong block.
    """
    if not is_strongly_connected(g):
        return False
    if len(g.entities) + len(g.reactions) <= 2:
        return True
    return is_two_connected(g.shadow())


def _degrees_ok(g: KoenigGraph) -> bool:
    out_deg = {x: 0 for x in g.entities}
    in_deg = {r: 0 for r in g.reactions}
    for x, r in g.mr:
        out_deg[x] += 1
        in_deg[r] += 1
    return all(d == 1 for d in out_deg.values()) and all(d == 1 for d in in_deg.values())


def is_fluffle(g: KoenigGraph) -> bool:
    """|X| = |R|, strong block, every entity has out-degree 1, every reaction in-degree 1."""
    if not g.entities or len(g.entities) != len(g.reactions):
        return False
    return _degrees_ok(g) and is_strong_block(g)


def is_induced_fluffle(g: KoenigGraph, parent: KoenigGraph) -> bool:
    if not is_fluffle(g):
        return False
    full = parent.induced(g.entities, g.reactions)
    return full.mr == g.mr and full.rm == g.rm


def is_weakly_induced(h: KoenigGraph, g: KoenigGraph) -> bool:
    """The undirected shadow of h is an induced subgraph of the shadow of g."""
    hs = h.shadow()
    gs = g.induced(h.entities, h.reactions).shadow()
    return all(gs[v] == hs[v] for v in hs)


def validate_ear_decomposition(g: KoenigGraph) -> list[list[Vertex]] | None:
    """Ear decomposition of a fluffle, or None when g is not a fluffle.

    The first ear is a closed circuit (listed with its start repeated at the
    end); every later ear is a path that starts at a reaction vertex and ends
    at an entity vertex of the graph built so far.  The decomposition is
    built greedily; any decomposition of a fluffle has the required
    endpoints, and a valid one exists only for fluffles.
    """
    verts = g.vertices()
    if not verts or len(g.entities) != len(g.reactions) or not is_strongly_connected(g):
        return None
    succ = g.successors()
    # initial circuit: walk from the first vertex until a vertex repeats
    walk = [verts[0]]
    pos = {verts[0]: 0}
    while True:
        nxt = succ[walk[-1]][0]
        if nxt in pos:
            circuit = walk[pos[nxt]:] + [nxt]
            break
        pos[nxt] = len(walk)
        walk.append(nxt)
    ears = [circuit]
    in_h = set(circuit)
    used = {(a, b) for a, b in zip(circuit, circuit[1:])}
    all_edges = g.edges()
    while len(used) < len(all_edges):
        start = end = None
        for a, b in all_edges:
            if (a, b) not in used and a in in_h:
                start, end = a, b
                break
        path = [start, end]
        if end not in in_h:
            # BFS from end through new vertices back into the current graph
            parent = {end: None}
            queue = [end]
            hit = None
            while queue and hit is None:
                nq = []
                for v in queue:
                    for w in succ[v]:
                        if w in in_h:
                            hit = (v, w)
                            break
                        if w not in parent:
                            parent[w] = v
                            nq.append(w)
                    if hit:
                        break
                queue = nq
            tail = []
            v = hit[0]
            while v is not None:
                tail.append(v)
                v = parent[v]
            path = [start] + tail[::-1] + [hit[1]]
        ears.append(path)
        in_h.update(path)
        used.update(zip(path, path[1:]))
    if len(in_h) != len(verts):
        return None
    for ear in ears[1:]:
        if ear[0][0] != "r" or ear[-1][0] != "x" or ear[0] == ear[-1]:
            return None
    if len(ears[0]) < 3:
        return None
    return ears


def _acyclic(adj: Mapping[Vertex, Iterable[Vertex]]) -> bool:
    indeg = {v: 0 for v in adj}
    for v in adj:
        for w in adj[v]:
            indeg[w] += 1
    queue = [v for v, d in indeg.items() if d == 0]
    seen = 0
    while queue:
        v = queue.pop()
        seen += 1
        for w in adj[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    return seen == len(adj)


def is_centralized(g: KoenigGraph) -> int | None:
    """Smallest-ordinal entity lying on every elementary circuit of length >= 4.

    A long circuit never uses the back-edge of a digon (it would close after
    two steps), so x is a center exactly when deleting x and all digon
    back-edges leaves an acyclic graph.  Returns None for non-fluffles.
    """
    if not is_fluffle(g):
        return None
    back = {(rxn(r), ent(x)) for x, r in digons(g)}
    for x in sorted(g.entities):
        gone = ent(x)
        adj = {v: [w for w in ws if w != gone and (v, w) not in back]
               for v, ws in g.successors().items() if v != gone}
        if _acyclic(adj):
            return x
    return None
