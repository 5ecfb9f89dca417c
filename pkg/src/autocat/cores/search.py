"""Enumeration of autocatalytic cores and CS-cores.

Every core induces a fluffle in the König graph, and every fluffle can be
grown one circuit at a time so that each intermediate union is again a
fluffle.  The search therefore starts from elementary circuits and
superposes overlapping circuits with consistent MR matchings.  A union that
is already autocatalytic is not grown further: anything containing it is
not minimal.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable

from ..algebra.childsel import ChildSelection, cs_matrix
from ..algebra.lp import is_semipositive
from ..algebra.matrix import RationalMatrix, det, det_sign
from ..circuits import ElementaryCircuit, Listing, elementary_circuits, mr_chords
from ..errors import PreconditionError
from ..koenig import KoenigGraph, build_koenig
from ..network import ReactionNetwork, SubNetwork, is_well_formed, submatrix


class CoreKind(str, Enum):
    AUTOCATALYTIC_CORE = "autocatalytic_core"
    CS_CORE = "cs_core"
    EXTRA_CS_CORE = "extra_cs_core"


@dataclass(frozen=True)
class SearchBounds:
    """Limits on the search; ``None`` means unbounded."""

    max_core_entities: int | None = None
    max_circuit_len: int | None = None
    max_superposition_depth: int | None = None
    time_budget: float | None = None

    def as_dict(self) -> dict:
        return {
            "max_core_entities": self.max_core_entities,
            "max_circuit_len": self.max_circuit_len,
            "max_superposition_depth": self.max_superposition_depth,
            "time_budget": self.time_budget,
        }


@dataclass
class CoreReport:
    """One core or CS-core with its evidence.

    ``matrix`` is S[kappa] with rows in the order of ``kappa`` and
    ``witness`` is a vector v >> 0 with S[kappa] v >> 0, indexed like the
    columns (that is, by kappa(x) for x in row order).
    """

    sub: SubNetwork
    kappa: ChildSelection
    kind: CoreKind
    witness: tuple[Fraction, ...]
    matrix: RationalMatrix
    network: ReactionNetwork = field(repr=False, compare=False)
    is_hard: bool | None = None
    unit_class: str | None = None

    @property
    def det_sign(self) -> int:
        return det_sign(self.matrix)

    @property
    def entity_names(self) -> tuple[str, ...]:
        return tuple(self.network.entities[x] for x in self.sub.entity_order)

    @property
    def reaction_names(self) -> tuple[str, ...]:
        return tuple(self.network.reactions[j].name for j in self.sub.reaction_order)

    def sort_key(self):
        return (len(self.sub.entities), self.entity_names, self.reaction_names,
                tuple((self.network.entities[x], self.network.reactions[r].name)
                      for x, r in sorted(self.kappa.pairs)))

    def describe(self) -> str:
        return self.network.describe(self.sub)


def _report(rn: ReactionNetwork, kappa: ChildSelection, kind: CoreKind) -> CoreReport:
    kappa = kappa.canonical()
    m = cs_matrix(kappa, rn)
    cert = is_semipositive(m)
    if not cert:
        raise PreconditionError("reported core is not semipositive")
    return CoreReport(kappa.sub(), kappa, kind, cert.witness, m, rn)


def single_reaction_cores(rn: ReactionNetwork) -> list[SubNetwork]:
    """({x}, {r}) with s+_{x,r} > s-_{x,r} > 0."""
    out = []
    for j, r in enumerate(rn.reactions):
        for x in sorted(r.reactants):
            if r.s_plus(x) > r.s_minus(x):
                out.append(SubNetwork(frozenset([x]), frozenset([j])))
    return out


def is_autocatalytic_sub(rn: ReactionNetwork, sub: SubNetwork) -> tuple[Fraction, ...] | None:
    """Witness (indexed by reactions in network order) if (X', R') is autocatalytic."""
    if not sub.entities or not sub.reactions or not is_well_formed(rn, sub):
        return None
    cert = is_semipositive(submatrix(rn, sub))
    return cert.witness


def unique_cs_of_core(rn: ReactionNetwork, sub: SubNetwork) -> ChildSelection:
    """The child-selection of a core: each reaction's only reactant inside X'."""
    pairs = []
    for j in sub.reaction_order:
        inside = [x for x in rn.reactions[j].reactants if x in sub.entities]
        if len(inside) != 1:
            raise PreconditionError(
                f"reaction {rn.reactions[j].name} has {len(inside)} reactants inside the sub-network")
        pairs.append((inside[0], j))
    k = ChildSelection(pairs).canonical()
    if set(k.entities) != set(sub.entities):
        raise PreconditionError("reactant map does not cover the entity set")
    return k


class _Clock:
    def __init__(self, budget):
        self.deadline = None if budget is None else time.monotonic() + budget

    def expired(self) -> bool:
        return self.deadline is not None and time.monotonic() > self.deadline


class _State:
    """A consistent MR matching grown from circuits."""

    __slots__ = ("kappa", "inv", "key")

    def __init__(self, pairs: Iterable[tuple[int, int]]):
        self.kappa = dict(pairs)
        self.inv = {r: x for x, r in self.kappa.items()}
        self.key = frozenset(self.kappa.items())

    def merge(self, c: ElementaryCircuit) -> "_State | None":
        touches = False
        adds = False
        for x, r in zip(c.entities, c.reactions):
            mx = self.kappa.get(x)
            mr = self.inv.get(r)
            if mx is not None or mr is not None:
                touches = True
                if mx != r or mr != x:
                    return None
            else:
                adds = True
        if not (touches and adds):
            return None
        return _State(list(self.kappa.items()) + list(zip(c.entities, c.reactions)))

    def child_selection(self) -> ChildSelection:
        return ChildSelection(sorted(self.kappa.items()))


def _chord_free(state: _State, g: KoenigGraph) -> bool:
    xs = state.kappa
    rs = state.inv
    for x, r in g.mr:
        if x in xs and r in rs and xs[x] != r:
            return False
    return True


def _circuit_fast_path(c: ElementaryCircuit, g: KoenigGraph, rn: ReactionNetwork) -> bool | None:
    """Semipositivity of a weakly induced Metzler circuit from a determinant sign.

    For a cyclic Metzler pattern with non-positive diagonal the Perron root is
    positive exactly when (-1)^(n-1) det S[kappa] > 0.  Returns None when the
    shortcut does not apply.
    """
    k = c.child_selection()
    xs, rs = set(c.entities), set(c.reactions)
    induced_rm = {e for e in g.rm if e[0] in rs and e[1] in xs}
    extra = induced_rm - c.rm_edges
    if any((x, r) not in c.mr_edges for r, x in extra):
        return None
    m = cs_matrix(k, rn)
    if any(d > 0 for d in m.diagonal()):
        return None
    return (-1) ** (c.n - 1) * det(m) > 0


def _grow(rn: ReactionNetwork, g: KoenigGraph, circuits: list[ElementaryCircuit],
          bounds: SearchBounds, is_auto, chord_free: bool):
    """Breadth-first superposition; returns (autocatalytic matchings, complete flag)."""
    clock = _Clock(bounds.time_budget)
    complete = True
    seen: set[frozenset] = set()
    frontier: list[_State] = []
    limit = bounds.max_core_entities
    for c in circuits:
        st = _State(zip(c.entities, c.reactions))
        if st.key in seen:
            continue
        seen.add(st.key)
        if limit is not None and len(st.kappa) > limit:
            complete = False
            continue
        frontier.append(st)
    found: list[_State] = []
    depth = 1
    while frontier:
        nxt: list[_State] = []
        for st in frontier:
            if clock.expired():
                return found, False
            if is_auto(st):
                found.append(st)
                continue
            for c in circuits:
                merged = st.merge(c)
                if merged is None or merged.key in seen:
                    continue
                if chord_free and not _chord_free(merged, g):
                    continue
                if bounds.max_superposition_depth is not None and depth >= bounds.max_superposition_depth:
                    complete = False
                    continue
                if limit is not None and len(merged.kappa) > limit:
                    complete = False
                    continue
                seen.add(merged.key)
                nxt.append(merged)
        frontier = nxt
        depth += 1
    return found, complete


def _circuits(rn: ReactionNetwork, bounds: SearchBounds) -> tuple[KoenigGraph, Listing]:
    g = build_koenig(rn)
    return g, elementary_circuits(g, bounds.max_circuit_len)


def enumerate_autocatalytic_cores(rn: ReactionNetwork, bounds: SearchBounds = SearchBounds()) -> Listing:
    """All autocatalytic cores, ordered by size and then by names.

    The returned list has ``complete = False`` when a bound cut the search.
    """
    g, circuits = _circuits(rn, bounds)
    complete = circuits.complete
    metzler = [c for c in circuits if c.n >= 2 and not mr_chords(c, g)]
    by_key = {c.mr_edges: c for c in metzler}

    def is_auto(st: _State) -> bool:
        single = by_key.get(st.key)
        if single is not None:
            fast = _circuit_fast_path(single, g, rn)
            if fast is not None:
                return fast
        return bool(is_semipositive(cs_matrix(st.child_selection(), rn)))

    found, grown_complete = _grow(rn, g, metzler, bounds, is_auto, chord_free=True)
    complete = complete and grown_complete
    candidates = [SubNetwork(frozenset(st.kappa), frozenset(st.inv)) for st in found]
    candidates += single_reaction_cores(rn)
    minimal = [s for s in candidates if not any(o < s for o in candidates)]
    reports = []
    for sub in set(minimal):
        reports.append(_report(rn, unique_cs_of_core(rn, sub), CoreKind.AUTOCATALYTIC_CORE))
    reports.sort(key=CoreReport.sort_key)
    return Listing(reports, complete=complete)


def classify_cs_core(rn: ReactionNetwork, k: ChildSelection) -> CoreKind:
    """AutocatalyticCore when every reaction's only reactant in X' is its matched entity."""
    xs = set(k.entities)
    for x, r in k.pairs:
        inside = [y for y in rn.reactions[r].reactants if y in xs]
        if inside != [x]:
            return CoreKind.EXTRA_CS_CORE
    return CoreKind.AUTOCATALYTIC_CORE


def _fluffle_cs_search(rn: ReactionNetwork, bounds: SearchBounds):
    g, circuits = _circuits(rn, bounds)

    def is_auto(st: _State) -> bool:
        return bool(is_semipositive(cs_matrix(st.child_selection(), rn)))

    found, complete = _grow(rn, g, list(circuits), bounds, is_auto, chord_free=False)
    return [st.child_selection() for st in found], complete and circuits.complete


def enumerate_cs_cores(rn: ReactionNetwork, bounds: SearchBounds = SearchBounds()) -> Listing:
    """All CS-cores: autocatalytic child-selections without an autocatalytic proper sub-CS."""
    autocatalytic, complete = _fluffle_cs_search(rn, bounds)
    minimal = [k for k in autocatalytic
               if not any(o.key < k.key for o in autocatalytic)]
    reports = [_report(rn, k, classify_cs_core(rn, k)) for k in minimal]
    reports.sort(key=CoreReport.sort_key)
    return Listing(reports, complete=complete)


def is_extra_cs_candidate(k: ChildSelection, cores: Iterable[CoreReport]) -> bool:
    """Some core G has X(G), R(G) inside the CS but E1(G) not inside its matching."""
    sub = k.sub()
    return any(core.sub <= sub and not core.kappa.key <= k.key for core in cores)


def enumerate_extra_cs_cores(rn: ReactionNetwork, bounds: SearchBounds = SearchBounds()) -> Listing:
    """Extra CS-cores by candidate filtering over fluffle child-selections.

    Candidates contain some core's vertices but not its matching; those that
    are autocatalytic and have no core or smaller candidate inside their
    matching are kept.
    """
    cores = enumerate_autocatalytic_cores(rn, bounds)
    autocatalytic, complete = _fluffle_cs_search(rn, bounds)
    candidates = [k for k in autocatalytic if is_extra_cs_candidate(k, cores)]
    blockers = [c.kappa.key for c in cores] + [k.key for k in candidates]
    kept = [k for k in candidates if not any(b < k.key for b in blockers)]
    reports = [_report(rn, k, CoreKind.EXTRA_CS_CORE) for k in kept]
    reports.sort(key=CoreReport.sort_key)
    return Listing(reports, complete=complete and cores.complete)
