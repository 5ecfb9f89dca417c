"""Hardness, minimal autocatalytic sets, membership flags and unit-stoichiometry structure."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations

from ..algebra.childsel import ChildSelection, cs_matrix
from ..algebra.lp import is_semipositive
from ..algebra.matrix import is_irreducible, is_metzler, metzler_part
from ..circuits import (CircuitClass, ElementaryCircuit, circuit_class, elementary_circuits,
                        fluffle_part_matrix, is_contributing)
from ..errors import PreconditionError
from ..koenig import KoenigGraph, build_koenig, digons, is_fluffle, koenig_of_cs
from ..network import ReactionNetwork, SubNetwork, is_well_formed, reversible_extension
from .search import (CoreReport, SearchBounds, enumerate_autocatalytic_cores, unique_cs_of_core)


# ---------------------------------------------------------------- hardness

def reversible_extension_cores(rn: ReactionNetwork, core: CoreReport | SubNetwork,
                               bounds: SearchBounds = SearchBounds()) -> list[CoreReport]:
    """Cores of (X', R' + reversed R') other than the original core.

    The reports refer to the extension network.
    """
    sub = core.sub if isinstance(core, CoreReport) else core
    ext, _ = reversible_extension(rn, sub)
    original = {rn.reactions[j].name for j in sub.reactions}
    found = enumerate_autocatalytic_cores(ext, bounds)
    return [c for c in found if set(c.reaction_names) != original]


def core_graph(rn: ReactionNetwork, sub: SubNetwork) -> tuple[KoenigGraph, ChildSelection]:
    k = unique_cs_of_core(rn, sub)
    return koenig_of_cs(k, build_koenig(rn)), k


def drainable_circuits(rn: ReactionNetwork, core: CoreReport | SubNetwork) -> list[ElementaryCircuit]:
    sub = core.sub if isinstance(core, CoreReport) else core
    g, _ = core_graph(rn, sub)
    return [c for c in elementary_circuits(g) if circuit_class(c, rn)[0] is CircuitClass.DRAINABLE]


@dataclass(frozen=True)
class Hardness:
    """Hardness by definition and by the absence of drainable circuits.

    Only one implication holds in general: a core without drainable
    circuits is hard.  A drainable circuit whose reverse picks up an
    MR-chord does not produce a second core, so a hard core may still
    contain drainable circuits.
    """

    by_extension: bool
    by_circuits: bool

    @property
    def agree(self) -> bool:
        return self.by_extension == self.by_circuits

    @property
    def consistent(self) -> bool:
        return self.by_extension or not self.by_circuits


def hardness(rn: ReactionNetwork, core: CoreReport | SubNetwork,
             bounds: SearchBounds = SearchBounds()) -> Hardness:
    return Hardness(not reversible_extension_cores(rn, core, bounds),
                    not drainable_circuits(rn, core))


def extra_as_circuit(rn: ReactionNetwork, core: CoreReport | SubNetwork,
                     extra: CoreReport) -> ElementaryCircuit | None:
    """The circuit of the original core obtained by reversing an extension core.

    Returns None unless K(extra) is a single elementary circuit made of
    reversed reactions only.
    """
    sub = core.sub if isinstance(core, CoreReport) else core
    ext = extra.network
    ents = sub.entity_order
    reacts = sub.reaction_order
    m = len(reacts)
    g = koenig_of_cs(extra.kappa, build_koenig(ext))
    circuits = list(elementary_circuits(g))
    if len(circuits) != 1 or set(circuits[0].vertices()) != set(g.vertices()):
        return None
    c = circuits[0]
    if any(j < m for j in c.reactions):
        return None
    seq = []
    n = c.n
    for i in range(n):
        x = c.entities[-i % n]
        r = c.reactions[(-i - 1) % n]
        seq += [ents[x], reacts[r - m]]
    return ElementaryCircuit.from_sequence(seq)


def is_hard(rn: ReactionNetwork, core: CoreReport | SubNetwork, bounds: SearchBounds = SearchBounds()) -> bool:
    """True iff the reversible extension has no core besides this one."""
    return not reversible_extension_cores(rn, core, bounds)


# ---------------------------------------------------------------- MAS

@dataclass
class MinimalAutocatalyticSet:
    reactions: frozenset[int]
    entities: frozenset[int]
    cores: list[CoreReport]
    network: ReactionNetwork

    @property
    def reaction_names(self) -> tuple[str, ...]:
        return tuple(self.network.reactions[j].name for j in sorted(self.reactions))

    @property
    def entity_names(self) -> tuple[str, ...]:
        return tuple(self.network.entities[x] for x in sorted(self.entities))


def enumerate_mas(rn: ReactionNetwork, bounds: SearchBounds = SearchBounds()) -> list[MinimalAutocatalyticSet]:
    """Minimal reaction sets that admit an autocatalytic sub-network.

    Every autocatalytic sub-network contains a core with fewer or equal
    reactions, so these are the inclusion-minimal reaction sets of cores.
    """
    cores = enumerate_autocatalytic_cores(rn, bounds)
    sets = {c.sub.reactions for c in cores}
    minimal = sorted((s for s in sets if not any(o < s for o in sets)),
                     key=lambda s: (len(s), sorted(rn.reactions[j].name for j in s)))
    return [MinimalAutocatalyticSet(s, rn.participants(s), [c for c in cores if c.sub.reactions == s], rn)
            for s in minimal]


# ---------------------------------------------------------------- membership

def _sub_selections(k: ChildSelection):
    pairs = sorted(k.pairs)
    for size in range(1, len(pairs)):
        for combo in combinations(pairs, size):
            yield ChildSelection(combo)


def _cs_autocatalytic(rn: ReactionNetwork, k: ChildSelection) -> bool:
    return is_well_formed(rn, k.sub()) and bool(is_semipositive(cs_matrix(k, rn)))


def membership_report(rn: ReactionNetwork, k: ChildSelection) -> dict[str, bool]:
    """Which of the nested autocatalysis classes the child-selection belongs to."""
    k.validate(rn)
    m = cs_matrix(k, rn)
    semipositive = bool(is_semipositive(m))
    autocatalytic = semipositive and is_well_formed(rn, k.sub())
    cs_core = autocatalytic and not any(_cs_autocatalytic(rn, s) for s in _sub_selections(k))
    core = False
    if autocatalytic:
        local = rn.restrict(k.sub())
        found = enumerate_autocatalytic_cores(local)
        core = len(found) == 1 and found[0].sub == local.whole()
    return {
        "semipositive": semipositive,
        "metzler": is_metzler(m),
        "irreducible": is_irreducible(m),
        "metzler_part_irreducible": is_irreducible(metzler_part(m)),
        "cs_core": cs_core,
        "autocatalytic_core": core,
    }


# ---------------------------------------------------------------- unit stoichiometry

class UnitClass(str, Enum):
    CIRCUIT_ONLY = "circuit_only"
    CIRCUIT_PLUS_CHORD = "circuit_plus_chord"
    TYPE_III_DOUBLE_CIRCUIT = "type_iii_double_circuit"
    CIRCUIT_PLUS_EAR = "circuit_plus_ear"


@dataclass
class UnitClassification:
    unit_class: UnitClass
    graph: KoenigGraph
    circuits: tuple[ElementaryCircuit, ...]


def _certifies(g: KoenigGraph, k: ChildSelection, rn: ReactionNetwork) -> bool:
    return bool(is_semipositive(fluffle_part_matrix(g, k, rn)))


def _ears(core_g: KoenigGraph, c: ElementaryCircuit):
    """Paths r -> ... -> x leaving circuit c and returning to it through new vertices."""
    on = set(c.vertices())
    succ = core_g.successors()
    for r in c.reactions:
        start = ("r", r)
        stack = [[start, w] for w in succ[start] if w not in on]
        while stack:
            path = stack.pop()
            for w in succ[path[-1]]:
                if w in on:
                    if w[0] == "x":
                        yield path + [w]
                elif w not in path:
                    stack.append(path + [w])


def unit_stoich_classify(rn: ReactionNetwork, core: CoreReport | SubNetwork) -> UnitClassification:
    """Smallest spanning certificate pattern of a unit-stoichiometry core.

    Patterns are tried in order: a spanning circuit alone, a spanning
    circuit with one extra RM-edge, the two-circuit pattern (two circuits
    meeting exactly in x -> kappa(x)), and finally a circuit with one ear.
    A pattern certifies when its fluffle-part matrix is semipositive.
    """
    sub = core.sub if isinstance(core, CoreReport) else core
    if not rn.is_unit_stoichiometry(sub):
        raise PreconditionError("core does not have unit stoichiometry")
    g, k = core_graph(rn, sub)
    everything = set(g.vertices())
    circuits = list(elementary_circuits(g))
    spanning = [c for c in circuits if set(c.vertices()) == everything]
    for c in spanning:
        cg = c.as_graph(g)
        if _certifies(cg, k, rn):
            return UnitClassification(UnitClass.CIRCUIT_ONLY, cg, (c,))
    for c in spanning:
        base = c.as_graph(g)
        for r, x in sorted(g.rm - c.rm_edges):
            cg = KoenigGraph(base.entities, base.reactions, base.mr, base.rm | {(r, x)}, g.weights)
            if _certifies(cg, k, rn):
                return UnitClassification(UnitClass.CIRCUIT_PLUS_CHORD, cg, (c,))
    if not digons(g) and len(circuits) == 2:
        c1, c2 = circuits
        v1, v2 = set(c1.vertices()), set(c2.vertices())
        shared = v1 & v2
        if v1 | v2 == everything and len(shared) == 2:
            x = next(v[1] for v in shared if v[0] == "x")
            if ("r", k.mapping[x]) in shared and _certifies(g, k, rn):
                return UnitClassification(UnitClass.TYPE_III_DOUBLE_CIRCUIT, g, (c1, c2))
    for c in circuits:
        for ear in _ears(g, c):
            if set(c.vertices()) | set(ear) != everything:
                continue
            rm = set(c.rm_edges)
            mr = set(c.mr_edges)
            for a, b in zip(ear, ear[1:]):
                if a[0] == "r":
                    rm.add((a[1], b[1]))
                else:
                    mr.add((a[1], b[1]))
            cg = KoenigGraph(g.entities, g.reactions, frozenset(mr), frozenset(rm), g.weights)
            if is_fluffle(cg) and _certifies(cg, k, rn):
                return UnitClassification(UnitClass.CIRCUIT_PLUS_EAR, cg, (c,))
    raise PreconditionError("no spanning certificate pattern found")


def contributing_dichotomy_check(rn: ReactionNetwork, core: CoreReport | SubNetwork) -> tuple[ElementaryCircuit, ...]:
    """Contributing circuits required by the unit-stoichiometry dichotomy.

    With no zero diagonal entry in S[kappa], two contributing circuits that
    share a vertex; otherwise one contributing circuit through every entity
    with a zero diagonal entry.  Raises PreconditionError if neither exists.
    """
    sub = core.sub if isinstance(core, CoreReport) else core
    if not rn.is_unit_stoichiometry(sub):
        raise PreconditionError("core does not have unit stoichiometry")
    g, k = core_graph(rn, sub)
    m = cs_matrix(k, rn)
    zero = {x for i, x in enumerate(k.entities) if m[i, i] == 0}
    contributing = [c for c in elementary_circuits(g) if is_contributing(c, k, rn)]
    if zero:
        for c in contributing:
            if zero <= set(c.entities):
                return (c,)
        raise PreconditionError("no contributing circuit covers the zero-diagonal entities")
    for c1, c2 in combinations(contributing, 2):
        if set(c1.vertices()) & set(c2.vertices()):
            return (c1, c2)
    raise PreconditionError("fewer than two overlapping contributing circuits")
