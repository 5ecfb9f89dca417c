"""Elementary circuits of König graphs and their stoichiometric classes."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

from .algebra.childsel import ChildSelection, cs_matrix
from .algebra.matrix import RationalMatrix
from .errors import BoundsRequiredError, MatchingConflictError, PreconditionError
from .koenig import KoenigGraph, Vertex, ent, is_fluffle, rxn
from .network import ReactionNetwork

#: networks with more vertices than this need an explicit circuit length bound
UNBOUNDED_LIMIT = 40


class Listing(list):
    """A list that also records whether the search behind it ran to completion."""

    def __init__(self, items: Iterable = (), complete: bool = True):
        super().__init__(items)
        self.complete = complete


@dataclass(frozen=True)
class ElementaryCircuit:
    """x1 -> r1 -> x2 -> r2 -> ... -> xn -> rn -> x1, starting at its smallest entity."""

    entities: tuple[int, ...]
    reactions: tuple[int, ...]

    def __post_init__(self):
        if len(self.entities) != len(self.reactions) or not self.entities:
            raise ValueError("a circuit alternates entities and reactions")

    @classmethod
    def from_sequence(cls, seq: Sequence[int]) -> "ElementaryCircuit":
        """Build from an interleaved (x1, r1, x2, r2, ...) sequence, rotating canonically."""
        xs, rs = list(seq[0::2]), list(seq[1::2])
        k = xs.index(min(xs))
        return cls(tuple(xs[k:] + xs[:k]), tuple(rs[k:] + rs[:k]))

    @property
    def n(self) -> int:
        return len(self.entities)

    @property
    def length(self) -> int:
        return 2 * len(self.entities)

    def sequence(self) -> tuple[int, ...]:
        out = []
        for x, r in zip(self.entities, self.reactions):
            out += [x, r]
        return tuple(out)

    def vertices(self) -> list[Vertex]:
        return [v for x, r in zip(self.entities, self.reactions) for v in (ent(x), rxn(r))]

    @property
    def mr_edges(self) -> frozenset[tuple[int, int]]:
        return frozenset(zip(self.entities, self.reactions))

    @property
    def rm_edges(self) -> frozenset[tuple[int, int]]:
        nxt = self.entities[1:] + self.entities[:1]
        return frozenset(zip(self.reactions, nxt))

    def child_selection(self) -> ChildSelection:
        """kappa(C) with rows in circuit order."""
        return ChildSelection(zip(self.entities, self.reactions))

    def as_graph(self, parent: KoenigGraph) -> KoenigGraph:
        return KoenigGraph(frozenset(self.entities), frozenset(self.reactions),
                           self.mr_edges, self.rm_edges, parent.weights)

    def describe(self, rn: ReactionNetwork) -> str:
        parts = []
        for x, r in zip(self.entities, self.reactions):
            parts += [rn.entities[x], rn.reactions[r].name]
        return "(" + ",".join(parts) + ")"


def _check_bound(g: KoenigGraph, max_len: int | None) -> None:
    if max_len is None and len(g.entities) + len(g.reactions) > UNBOUNDED_LIMIT:
        raise BoundsRequiredError(
            f"graph has more than {UNBOUNDED_LIMIT} vertices; pass an explicit max circuit length")


def elementary_circuits(g: KoenigGraph, max_len: int | None = None) -> Listing:
    """All elementary circuits of g, each rotated to start at its smallest entity.

    Without a bound this is Johnson's algorithm.  With ``max_len`` (in
    vertices) a depth-first search prunes paths that can no longer close in
    time; the result is flagged incomplete when some path was cut only by
    the bound.  The flag is conservative: a cut path might never have
    closed into an elementary circuit.
    """
    _check_bound(g, max_len)
    adj = g.successors()
    ents = sorted(g.entities)
    found: list[ElementaryCircuit] = []
    truncated = False
    for s in ents:
        allowed = {v for v in adj if v[0] == "r" or v[1] >= s}
        sub = {v: [w for w in adj[v] if w in allowed] for v in allowed}
        start = ent(s)
        if max_len is None:
            found.extend(_johnson_from(sub, start))
        else:
            circuits, cut = _bounded_from(sub, start, max_len)
            found.extend(circuits)
            truncated = truncated or cut
    found.sort(key=lambda c: c.sequence())
    return Listing(found, complete=not truncated)


def _to_circuit(path: list[Vertex]) -> ElementaryCircuit:
    return ElementaryCircuit(tuple(v[1] for v in path[0::2]), tuple(v[1] for v in path[1::2]))


def _johnson_from(adj: dict[Vertex, list[Vertex]], start: Vertex) -> list[ElementaryCircuit]:
    """Circuits through ``start`` in ``adj`` (Johnson's blocking search, iterative)."""
    out = []
    blocked = {start}
    blocker: dict[Vertex, set[Vertex]] = {v: set() for v in adj}
    path = [start]
    stack = [iter(adj[start])]
    closed = [False]

    def unblock(v):
        todo = [v]
        while todo:
            u = todo.pop()
            if u in blocked:
                blocked.discard(u)
                todo.extend(blocker[u])
                blocker[u].clear()

    while stack:
        v = path[-1]
        nxt = next(stack[-1], None)
        if nxt is not None:
            if nxt == start:
                out.append(_to_circuit(path))
                closed[-1] = True
            elif nxt not in blocked:
                path.append(nxt)
                blocked.add(nxt)
                stack.append(iter(adj[nxt]))
                closed.append(False)
            continue
        stack.pop()
        found = closed.pop()
        path.pop()
        if found:
            unblock(v)
            if closed:
                closed[-1] = True
        else:
            for w in adj[v]:
                blocker[w].add(v)
    return out


def _distances_to(adj: dict[Vertex, list[Vertex]], target: Vertex) -> dict[Vertex, int]:
    radj = {v: [] for v in adj}
    for v, ws in adj.items():
        for w in ws:
            radj[w].append(v)
    dist = {target: 0}
    queue = deque([target])
    while queue:
        v = queue.popleft()
        for u in radj[v]:
            if u not in dist:
                dist[u] = dist[v] + 1
                queue.append(u)
    return dist


def _bounded_from(adj, start, max_len):
    dist = _distances_to(adj, start)
    out = []
    truncated = False
    path = [start]
    on_path = {start}
    stack = [iter(adj[start])]
    while stack:
        nxt = next(stack[-1], None)
        if nxt is None:
            stack.pop()
            on_path.discard(path.pop())
            continue
        if nxt == start:
            out.append(_to_circuit(path))
            continue
        if nxt in on_path or nxt not in dist:
            continue
        if len(path) + dist[nxt] > max_len:
            truncated = True
            continue
        path.append(nxt)
        on_path.add(nxt)
        stack.append(iter(adj[nxt]))
    return out, truncated


def mr_chords(c: ElementaryCircuit, parent: KoenigGraph) -> frozenset[tuple[int, int]]:
    """MR-edges of the parent between circuit vertices that the circuit does not use."""
    xs, rs = set(c.entities), set(c.reactions)
    return frozenset(e for e in parent.mr if e[0] in xs and e[1] in rs) - c.mr_edges


def is_metzler_circuit(c: ElementaryCircuit, parent: KoenigGraph) -> bool:
    return not mr_chords(c, parent)


class CircuitClass(str, Enum):
    AUTOCATALYTIC = "autocatalytic"
    DRAINABLE = "drainable"
    NEUTRAL = "neutral"


def stout_stin(c: ElementaryCircuit, rn: ReactionNetwork) -> tuple[Fraction, Fraction]:
    """Products of net production along RM-edges and net consumption along MR-edges."""
    stout = Fraction(1)
    stin = Fraction(1)
    n = c.n
    for i in range(n):
        x, r = c.entities[i], c.reactions[i]
        nxt = c.entities[(i + 1) % n]
        stout *= rn.s_plus(nxt, r) - rn.s_minus(nxt, r)
        stin *= rn.s_minus(x, r) - rn.s_plus(x, r)
    return stout, stin


def circuit_class(c: ElementaryCircuit, rn: ReactionNetwork) -> tuple[CircuitClass, Fraction, Fraction]:
    stout, stin = stout_stin(c, rn)
    if stout > stin:
        kind = CircuitClass.AUTOCATALYTIC
    elif stout < stin:
        kind = CircuitClass.DRAINABLE
    else:
        kind = CircuitClass.NEUTRAL
    return kind, stout, stin


def is_contributing(c: ElementaryCircuit, k: ChildSelection, rn: ReactionNetwork) -> bool:
    """At least four vertices and strict net production along every RM-edge."""
    if not c.mr_edges <= k.key:
        raise PreconditionError("circuit does not lie in K(kappa)")
    if c.length < 4:
        return False
    for r, x in c.rm_edges:
        if rn.s_plus(x, r) <= rn.s_minus(x, r):
            return False
    return True


def fluffle_part_matrix(g: KoenigGraph, k: ChildSelection, rn: ReactionNetwork) -> RationalMatrix:
    """A(G): entries of S[kappa] on the diagonal and on positions realised by RM-edges of G.

    Position (i, j) is realised when G has the RM-edge kappa(x_j) -> x_i.
    Rows follow ``k`` restricted to the entities of G.
    """
    kk = k.restrict(g.entities)
    if set(kk.entities) != set(g.entities):
        raise PreconditionError("G has entities outside the child-selection")
    s = cs_matrix(kk, rn)
    xs, rs = kk.entities, kk.reactions
    n = len(xs)
    return RationalMatrix([[s[i, j] if i == j or (rs[j], xs[i]) in g.rm else 0 for j in range(n)]
                           for i in range(n)], n)


def superpose(parts: Sequence[KoenigGraph]) -> KoenigGraph:
    """Union of fluffle parts with consistent MR matchings.

    Raises MatchingConflictError naming the entity (or reaction) whose
    matching differs between parts, and PreconditionError when the union
    is not a fluffle.
    """
    if not parts:
        raise PreconditionError("nothing to superpose")
    kappa: dict[int, int] = {}
    inv: dict[int, int] = {}
    for part in parts:
        for x, r in sorted(part.mr):
            if kappa.get(x, r) != r:
                raise MatchingConflictError(f"entity {x} matched to reactions {kappa[x]} and {r}",
                                            entity=x)
            if inv.get(r, x) != x:
                raise MatchingConflictError(f"reaction {r} matched from entities {inv[r]} and {x}",
                                            reaction=r)
            kappa[x] = r
            inv[r] = x
    union = parts[0]
    for part in parts[1:]:
        union = union.union(part)
    if not is_fluffle(union):
        raise PreconditionError("superposition is not a fluffle")
    return union


def unit_det_count(g: KoenigGraph, k: ChildSelection, rn: ReactionNetwork) -> tuple[int, int]:
    """(N, N') for the unit-stoichiometry determinant count.

    N counts contributing circuits of G through every entity whose diagonal
    entry in A(G) is zero.  N' is the identity-permutation term: 1 when all
    diagonal entries are non-zero, 0 otherwise.  Under the preconditions
    (unit stoichiometry, G centralized or with pairwise intersecting
    contributing circuits) (-1)^(n-1) det A(G) = N - N'.
    """
    if not rn.is_unit_stoichiometry(g.sub()):
        raise PreconditionError("unit stoichiometry required")
    a = fluffle_part_matrix(g, k, rn)
    kk = k.restrict(g.entities)
    zero_diag = {x for i, x in enumerate(kk.entities) if a[i, i] == 0}
    n_count = 0
    for c in elementary_circuits(g):
        if is_contributing(c, kk, rn) and zero_diag <= set(c.entities):
            n_count += 1
    n_prime = 0 if zero_diag else 1
    return n_count, n_prime
