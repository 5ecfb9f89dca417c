"""Reaction networks, sub-networks and stoichiometric matrices.

Entities and reactions are referred to by their position (ordinal) in the
network; names are kept for input and output only.  All coefficients are
exact ``Fraction`` values.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping

from .errors import InvalidIndexError, PreconditionError

REVERSE_SUFFIX = "_rev"


def _coefficients(raw: Mapping[int, object]) -> dict[int, Fraction]:
    out = {}
    for key in sorted(raw):
        value = Fraction(raw[key])
        if value < 0:
            raise ValueError(f"negative coefficient {value} for entity {key}")
        if value != 0:
            out[key] = value
    return out


@dataclass(frozen=True)
class Reaction:
    """A reaction with reactant (s-) and product (s+) coefficient maps.

    Zero coefficients are dropped, so ``x in r.reactants`` means s-_{x,r} > 0.
    """

    name: str
    reactants: Mapping[int, Fraction]
    products: Mapping[int, Fraction]

    def __post_init__(self):
        object.__setattr__(self, "reactants", _coefficients(self.reactants))
        object.__setattr__(self, "products", _coefficients(self.products))

    def s_minus(self, x: int) -> Fraction:
        return self.reactants.get(x, Fraction(0))

    def s_plus(self, x: int) -> Fraction:
        return self.products.get(x, Fraction(0))

    def net(self, x: int) -> Fraction:
        return self.s_plus(x) - self.s_minus(x)

    @property
    def participants(self) -> frozenset[int]:
        return frozenset(self.reactants) | frozenset(self.products)

    @property
    def is_open(self) -> bool:
        """True for inflow (no reactant) or outflow (no product) reactions."""
        return not self.reactants or not self.products


@dataclass(frozen=True)
class ReactionNetwork:
    entities: tuple[str, ...]
    reactions: tuple[Reaction, ...]

    def __post_init__(self):
        object.__setattr__(self, "entities", tuple(self.entities))
        object.__setattr__(self, "reactions", tuple(self.reactions))
        if len(set(self.entities)) != len(self.entities):
            raise ValueError("duplicate entity names")
        if len({r.name for r in self.reactions}) != len(self.reactions):
            raise ValueError("duplicate reaction names")
        n = len(self.entities)
        for r in self.reactions:
            for x in r.participants:
                if not 0 <= x < n:
                    raise InvalidIndexError(f"reaction {r.name} uses entity index {x}")

    @classmethod
    def from_names(cls, reactions: Iterable[tuple[str, Mapping[str, object], Mapping[str, object]]],
                   entities: Iterable[str] = ()) -> "ReactionNetwork":
        """Build a network from ``(name, reactants, products)`` triples keyed by entity name.

        Entities are numbered in order of first appearance unless listed
        explicitly in ``entities``.
        """
        reactions = list(reactions)
        order = list(entities)
        seen = set(order)
        for _, lhs, rhs in reactions:
            for name in list(lhs) + list(rhs):
                if name not in seen:
                    seen.add(name)
                    order.append(name)
        index = {name: i for i, name in enumerate(order)}
        built = [Reaction(name, {index[k]: v for k, v in lhs.items()},
                          {index[k]: v for k, v in rhs.items()})
                 for name, lhs, rhs in reactions]
        return cls(tuple(order), tuple(built))

    @property
    def n_entities(self) -> int:
        return len(self.entities)

    @property
    def n_reactions(self) -> int:
        return len(self.reactions)

    @cached_property
    def _entity_index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.entities)}

    @cached_property
    def _reaction_index(self) -> dict[str, int]:
        return {r.name: j for j, r in enumerate(self.reactions)}

    def entity_index(self, name: str) -> int:
        try:
            return self._entity_index[name]
        except KeyError:
            raise InvalidIndexError(f"unknown entity {name!r}") from None

    def reaction_index(self, name: str) -> int:
        try:
            return self._reaction_index[name]
        except KeyError:
            raise InvalidIndexError(f"unknown reaction {name!r}") from None

    def s_minus(self, x: int, r: int) -> Fraction:
        return self.reactions[r].s_minus(x)

    def s_plus(self, x: int, r: int) -> Fraction:
        return self.reactions[r].s_plus(x)

    def net(self, x: int, r: int) -> Fraction:
        return self.reactions[r].net(x)

    def participants(self, reactions: Iterable[int]) -> frozenset[int]:
        """X(R'): every entity that is a reactant or product of some reaction."""
        out = set()
        for j in reactions:
            out |= self.reactions[j].participants
        return frozenset(out)

    def open_reactions(self) -> list[int]:
        return [j for j, r in enumerate(self.reactions) if r.is_open]

    def is_unit_stoichiometry(self, sub: "SubNetwork | None" = None) -> bool:
        reactions = range(self.n_reactions) if sub is None else sub.reactions
        one = Fraction(1)
        for j in reactions:
            r = self.reactions[j]
            if any(c != one for c in r.reactants.values()):
                return False
            if any(c != one for c in r.products.values()):
                return False
        return True

    def whole(self) -> "SubNetwork":
        return SubNetwork(frozenset(range(self.n_entities)), frozenset(range(self.n_reactions)))

    def restrict(self, sub: "SubNetwork") -> "ReactionNetwork":
        """The network with entities and reactions outside ``sub`` removed.

        Coefficients of dropped entities are discarded, so dropped entities
        behave like food or waste.
        """
        ents = sorted(sub.entities)
        new_index = {x: i for i, x in enumerate(ents)}
        reactions = []
        for j in sorted(sub.reactions):
            r = self.reactions[j]
            reactions.append(Reaction(
                r.name,
                {new_index[x]: c for x, c in r.reactants.items() if x in new_index},
                {new_index[x]: c for x, c in r.products.items() if x in new_index}))
        return ReactionNetwork(tuple(self.entities[x] for x in ents), tuple(reactions))

    def describe(self, sub: "SubNetwork") -> str:
        ents = ",".join(self.entities[x] for x in sorted(sub.entities))
        reacts = ",".join(self.reactions[j].name for j in sorted(sub.reactions))
        return "({" + ents + "},{" + reacts + "})"


@dataclass(frozen=True)
class SubNetwork:
    """A pair (X', R') of entity and reaction index sets."""

    entities: frozenset[int] = field(default_factory=frozenset)
    reactions: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "entities", frozenset(self.entities))
        object.__setattr__(self, "reactions", frozenset(self.reactions))

    @property
    def entity_order(self) -> tuple[int, ...]:
        return tuple(sorted(self.entities))

    @property
    def reaction_order(self) -> tuple[int, ...]:
        return tuple(sorted(self.reactions))

    def __le__(self, other):  # componentwise inclusion
        return self.entities <= other.entities and self.reactions <= other.reactions

    def __lt__(self, other):
        return self <= other and self != other

    def __ge__(self, other):
        return other <= self

    def __gt__(self, other):
        return other < self

    @property
    def size(self) -> tuple[int, int]:
        return len(self.entities), len(self.reactions)

    def is_empty(self) -> bool:
        return not self.entities and not self.reactions


def _check_sub(rn: ReactionNetwork, sub: SubNetwork) -> None:
    for x in sub.entities:
        if not 0 <= x < rn.n_entities:
            raise InvalidIndexError(f"entity index {x} out of range 0..{rn.n_entities - 1}")
    for j in sub.reactions:
        if not 0 <= j < rn.n_reactions:
            raise InvalidIndexError(f"reaction index {j} out of range 0..{rn.n_reactions - 1}")


def net_stoich(rn: ReactionNetwork):
    """Net stoichiometric matrix S = s+ - s- with entity rows and reaction columns."""
    from .algebra.matrix import RationalMatrix
    return RationalMatrix([[r.net(x) for r in rn.reactions] for x in range(rn.n_entities)])


def submatrix(rn: ReactionNetwork, sub: SubNetwork):
    """S[X', R'] with rows and columns in network order; empty selections give 0x0."""
    from .algebra.matrix import RationalMatrix
    _check_sub(rn, sub)
    rows = sub.entity_order
    cols = sub.reaction_order
    if not rows or not cols:
        return RationalMatrix.zeros(len(rows), len(cols))
    return RationalMatrix([[rn.reactions[j].net(x) for j in cols] for x in rows])


def is_well_formed(rn: ReactionNetwork, sub: SubNetwork) -> bool:
    """Every reaction of R' has at least one reactant and one product in X'."""
    _check_sub(rn, sub)
    for j in sub.reactions:
        r = rn.reactions[j]
        if sub.entities.isdisjoint(r.reactants) or sub.entities.isdisjoint(r.products):
            return False
    return True


def catalysts_of(r: Reaction) -> frozenset[int]:
    """Entities that are both consumed and produced by ``r``."""
    return frozenset(r.reactants) & frozenset(r.products)


def food_waste(rn: ReactionNetwork, sub: SubNetwork) -> tuple[frozenset[int], frozenset[int]]:
    """Food F and waste W of a sub-network: outside entities consumed or produced by R'."""
    _check_sub(rn, sub)
    food, waste = set(), set()
    for j in sub.reactions:
        r = rn.reactions[j]
        food.update(x for x in r.reactants if x not in sub.entities)
        waste.update(x for x in r.products if x not in sub.entities)
    return frozenset(food), frozenset(waste)


def reverse_reaction(r: Reaction, name: str | None = None) -> Reaction:
    return Reaction(name if name is not None else r.name + REVERSE_SUFFIX,
                    dict(r.products), dict(r.reactants))


def reversible_extension(rn: ReactionNetwork, sub: SubNetwork) -> tuple[ReactionNetwork, SubNetwork]:
    """The network on X' with reactions R' followed by their reverses R̄'.

    Reverses are appended even when a reaction equals the reverse of another
    one; nothing is deduplicated.
    """
    _check_sub(rn, sub)
    base = rn.restrict(sub)
    taken = {r.name for r in base.reactions}
    reverses = []
    for r in base.reactions:
        name = r.name + REVERSE_SUFFIX
        while name in taken:
            name += REVERSE_SUFFIX
        taken.add(name)
        reverses.append(reverse_reaction(r, name))
    ext = ReactionNetwork(base.entities, base.reactions + tuple(reverses))
    return ext, ext.whole()


def reaction_set_of(rn: ReactionNetwork, names: Iterable[str]) -> frozenset[int]:
    return frozenset(rn.reaction_index(n) for n in names)


def entity_set_of(rn: ReactionNetwork, names: Iterable[str]) -> frozenset[int]:
    return frozenset(rn.entity_index(n) for n in names)


def sub_of(rn: ReactionNetwork, entities: Iterable[str], reactions: Iterable[str]) -> SubNetwork:
    """Convenience constructor taking names instead of indices."""
    return SubNetwork(entity_set_of(rn, entities), reaction_set_of(rn, reactions))


def require_square(sub: SubNetwork) -> None:
    if len(sub.entities) != len(sub.reactions):
        raise PreconditionError("sub-network is not square")
