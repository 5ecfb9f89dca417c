"""Definition-literal reference implementations for cross-checking.

Nothing here calls the optimized search, circuit or LP code; only the
network data model is shared.  Everything is exhaustive and meant for
small inputs, so inputs beyond ``OracleBounds`` are refused.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations

from .errors import OracleBoundsError
from .network import Reaction, ReactionNetwork, SubNetwork


@dataclass(frozen=True)
class OracleBounds:
    max_entities: int = 5
    max_reactions: int = 5
    max_coefficient: int = 3
    instance_count: int = 200
    seed: int = 0
    catalysis_probability: float = 0.3


def _check(rn: ReactionNetwork, bounds: OracleBounds) -> None:
    if rn.n_entities > bounds.max_entities or rn.n_reactions > bounds.max_reactions:
        raise OracleBoundsError(
            f"network has {rn.n_entities} entities and {rn.n_reactions} reactions; "
            f"oracle limit is {bounds.max_entities} and {bounds.max_reactions}")


# ---------------------------------------------------------------- semipositivity

def _solve(a: list[list[Fraction]], b: list[Fraction]) -> list[Fraction] | None:
    """Unique solution of a square system by Gauss-Jordan, or None if singular."""
    n = len(a)
    m = [row[:] + [bi] for row, bi in zip(a, b)]
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return None
        m[c], m[p] = m[p], m[c]
        piv = m[c][c]
        m[c] = [v / piv for v in m[c]]
        for i in range(n):
            if i != c and m[i][c] != 0:
                f = m[i][c]
                m[i] = [u - f * v for u, v in zip(m[i], m[c])]
    return [m[i][n] for i in range(n)]


def dual_semipositivity(rows: list[list[Fraction]]) -> tuple[bool, list[Fraction] | None]:
    """Decide semipositivity through the dual system only.

    By Gordan's alternative, M is semipositive iff no y >= 0 with sum 1 has
    y^T M <= 0.  That polytope is bounded, so it is non-empty iff it has a
    vertex; vertices are found by trying every choice of n-1 tight
    inequalities next to the equality.  Returns ``(semipositive, y)``.
    """
    n = len(rows)
    if n == 0:
        return False, None
    k = len(rows[0])
    rows = [[Fraction(v) for v in row] for row in rows]
    # inequalities as (coefficients, rhs) meaning coeffs . y <= rhs
    ineqs = [([Fraction(-1) if i == j else Fraction(0) for i in range(n)], Fraction(0)) for j in range(n)]
    ineqs += [([rows[i][j] for i in range(n)], Fraction(0)) for j in range(k)]
    ones = [Fraction(1)] * n

    def feasible(y):
        return all(sum(c * v for c, v in zip(coeffs, y)) <= rhs for coeffs, rhs in ineqs)

    if n == 1:
        y = [Fraction(1)]
        return (False, y) if feasible(y) else (True, None)
    for tight in combinations(range(len(ineqs)), n - 1):
        a = [ones] + [ineqs[t][0] for t in tight]
        b = [Fraction(1)] + [ineqs[t][1] for t in tight]
        y = _solve(a, b)
        if y is not None and feasible(y):
            return False, y
    return True, None


def _semipositive(rows: list[list[Fraction]]) -> bool:
    """Exact decision with cheap definitional shortcuts before the dual search."""
    if not rows or not rows[0]:
        return False
    for row in rows:
        if all(v <= 0 for v in row):
            return False  # y = e_i refutes
    if all(sum(row) > 0 for row in rows):
        return True  # v = 1 witnesses
    return dual_semipositivity(rows)[0]


def _matrix(rn: ReactionNetwork, xs, rs) -> list[list[Fraction]]:
    return [[rn.reactions[j].net(x) for j in rs] for x in xs]


def _well_formed(rn: ReactionNetwork, xs: frozenset, rs) -> bool:
    for j in rs:
        r = rn.reactions[j]
        if not any(x in xs for x in r.reactants) or not any(x in xs for x in r.products):
            return False
    return True


def _subsets(items, min_size=1):
    items = list(items)
    for size in range(min_size, len(items) + 1):
        yield from combinations(items, size)


def brute_force_cores(rn: ReactionNetwork, bounds: OracleBounds = OracleBounds()) -> set[SubNetwork]:
    """Inclusion-minimal well-formed (X', R') with S[X', R'] semipositive."""
    _check(rn, bounds)
    found: list[SubNetwork] = []
    pairs = []
    for rs in _subsets(range(rn.n_reactions)):
        for xs in _subsets(range(rn.n_entities)):
            pairs.append((len(xs) + len(rs), xs, rs))
    pairs.sort()
    for _, xs, rs in pairs:
        sub = SubNetwork(frozenset(xs), frozenset(rs))
        if any(f <= sub for f in found):
            continue
        if not _well_formed(rn, sub.entities, rs):
            continue
        if _semipositive(_matrix(rn, xs, rs)):
            found.append(sub)
    return set(found)


def brute_force_cs_cores(rn: ReactionNetwork, bounds: OracleBounds = OracleBounds()) -> set[frozenset]:
    """Child-selections (as sets of (entity, reaction) pairs) that are CS-cores.

    Every injective entity-to-reaction map with s- > 0 is tried, smallest
    first; a selection is kept when it is autocatalytic and contains no
    autocatalytic selection found earlier.
    """
    _check(rn, bounds)
    found: list[frozenset] = []
    for size in range(1, min(rn.n_entities, rn.n_reactions) + 1):
        for xs in combinations(range(rn.n_entities), size):
            for rs in permutations(range(rn.n_reactions), size):
                if any(rn.reactions[r].s_minus(x) <= 0 for x, r in zip(xs, rs)):
                    continue
                key = frozenset(zip(xs, rs))
                if any(f <= key for f in found):
                    continue
                if not _well_formed(rn, frozenset(xs), rs):
                    continue
                m = [[rn.reactions[r].net(x) for r in rs] for x in xs]
                if _semipositive(m):
                    found.append(key)
    return set(found)


# ---------------------------------------------------------------- circuits

def dfs_circuits(succ: dict, max_len: int | None = None) -> set[tuple]:
    """All elementary circuits of a digraph by naive path extension.

    ``succ`` maps each vertex to its successors.  Circuits are returned as
    vertex tuples rotated to start at their smallest vertex.
    """
    out = set()

    def walk(path, on):
        if max_len is not None and len(path) > max_len:
            return
        for w in succ[path[-1]]:
            if w == path[0]:
                k = path.index(min(path))
                out.add(tuple(path[k:] + path[:k]))
            elif w not in on:
                on.add(w)
                path.append(w)
                walk(path, on)
                path.pop()
                on.discard(w)

    for v in succ:
        walk([v], {v})
    return out


# ---------------------------------------------------------------- random networks

def random_network(bounds: OracleBounds = OracleBounds(), seed: int = 0,
                   catalysis_probability: float | None = None) -> ReactionNetwork:
    """A seeded random network within the oracle bounds.

    Between 2 and ``max_entities`` entities and between 1 and
    ``max_reactions`` reactions.  Each reaction draws one or two reactants
    and one or two distinct products, with coefficients uniform on
    1..max_coefficient.  With the catalysis probability one reactant is
    also added as a product, which is the only way reactant and product
    sets overlap.
    """
    p = bounds.catalysis_probability if catalysis_probability is None else catalysis_probability
    rng = random.Random(seed)
    n = rng.randint(2, bounds.max_entities)
    m = rng.randint(1, bounds.max_reactions)
    reactions = []
    for j in range(m):
        reactant_ids = rng.sample(range(n), rng.randint(1, min(2, n - 1)))
        free = [x for x in range(n) if x not in reactant_ids]
        product_ids = rng.sample(free, rng.randint(1, min(2, len(free))))
        lhs = {x: Fraction(rng.randint(1, bounds.max_coefficient)) for x in reactant_ids}
        rhs = {x: Fraction(rng.randint(1, bounds.max_coefficient)) for x in product_ids}
        if rng.random() < p:
            cat = rng.choice(reactant_ids)
            rhs[cat] = Fraction(rng.randint(1, bounds.max_coefficient))
        reactions.append(Reaction(f"r{j + 1}", lhs, rhs))
    # renumber by first appearance so the text form parses back to the same network
    index: dict[int, int] = {}
    for r in reactions:
        for side in (r.reactants, r.products):
            for x in sorted(side):
                index.setdefault(x, len(index))
    reactions = [Reaction(r.name, {index[x]: c for x, c in sorted(r.reactants.items())},
                          {index[x]: c for x, c in sorted(r.products.items())}) for r in reactions]
    return ReactionNetwork(tuple(f"x{i + 1}" for i in range(len(index))), tuple(reactions))


def corpus(bounds: OracleBounds = OracleBounds(), unit: bool = False) -> list[ReactionNetwork]:
    """The seeded corpus: ``instance_count`` networks from consecutive seeds."""
    b = bounds if not unit else OracleBounds(bounds.max_entities, bounds.max_reactions, 1,
                                             bounds.instance_count, bounds.seed,
                                             bounds.catalysis_probability)
    return [random_network(b, seed=bounds.seed + i) for i in range(bounds.instance_count)]
