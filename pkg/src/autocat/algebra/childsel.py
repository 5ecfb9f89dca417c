"""Child-selections and their CS matrices."""
from __future__ import annotations

from typing import Iterable, Mapping

from ..errors import InvalidChildSelectionError
from ..network import ReactionNetwork, SubNetwork
from .matrix import RationalMatrix


class ChildSelection:
    """A bijection kappa from entities X' to reactions R' with s-_{x,kappa(x)} > 0.

    The pairs are kept in a row order used when building S[kappa]; equality
    and hashing ignore that order.
    """

    __slots__ = ("pairs", "_key")

    def __init__(self, pairs: Iterable[tuple[int, int]]):
        self.pairs = tuple((int(x), int(r)) for x, r in pairs)
        self._key = frozenset(self.pairs)
        ents = [x for x, _ in self.pairs]
        reacts = [r for _, r in self.pairs]
        if len(set(ents)) != len(ents) or len(set(reacts)) != len(reacts):
            raise InvalidChildSelectionError(f"not a bijection: {self.pairs}")

    @classmethod
    def from_mapping(cls, kappa: Mapping[int, int], order: Iterable[int] | None = None) -> "ChildSelection":
        order = sorted(kappa) if order is None else list(order)
        if sorted(order) != sorted(kappa):
            raise InvalidChildSelectionError("row order does not list the domain")
        return cls((x, kappa[x]) for x in order)

    @classmethod
    def from_names(cls, rn: ReactionNetwork, kappa: Mapping[str, str] | Iterable[tuple[str, str]]) -> "ChildSelection":
        items = kappa.items() if isinstance(kappa, Mapping) else kappa
        return cls((rn.entity_index(x), rn.reaction_index(r)) for x, r in items)

    @property
    def key(self) -> frozenset[tuple[int, int]]:
        return self._key

    @property
    def entities(self) -> tuple[int, ...]:
        return tuple(x for x, _ in self.pairs)

    @property
    def reactions(self) -> tuple[int, ...]:
        return tuple(r for _, r in self.pairs)

    @property
    def mapping(self) -> dict[int, int]:
        return dict(self.pairs)

    def inverse(self) -> dict[int, int]:
        return {r: x for x, r in self.pairs}

    def __len__(self):
        return len(self.pairs)

    def __eq__(self, other):
        if isinstance(other, ChildSelection):
            return self._key == other._key
        return NotImplemented

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"ChildSelection({list(self.pairs)!r})"

    def sub(self) -> SubNetwork:
        return SubNetwork(frozenset(self.entities), frozenset(self.reactions))

    def canonical(self) -> "ChildSelection":
        """Same selection with rows in entity-ordinal order."""
        return ChildSelection(sorted(self.pairs))

    def restrict(self, entities: Iterable[int]) -> "ChildSelection":
        keep = set(entities)
        return ChildSelection(p for p in self.pairs if p[0] in keep)

    def is_sub_of(self, other: "ChildSelection") -> bool:
        return self._key <= other._key

    def validate(self, rn: ReactionNetwork) -> None:
        for x, r in self.pairs:
            if not 0 <= x < rn.n_entities:
                raise InvalidChildSelectionError(f"entity index {x} out of range")
            if not 0 <= r < rn.n_reactions:
                raise InvalidChildSelectionError(f"reaction index {r} out of range")
            if rn.s_minus(x, r) <= 0:
                raise InvalidChildSelectionError(
                    f"{rn.entities[x]} is not a reactant of {rn.reactions[r].name}")

    def describe(self, rn: ReactionNetwork) -> str:
        return ",".join(f"{rn.entities[x]}={rn.reactions[r].name}" for x, r in self.pairs)


def cs_matrix(k: ChildSelection, rn: ReactionNetwork) -> RationalMatrix:
    """S[kappa] with S[kappa]_{xy} = S_{x,kappa(y)}, rows and columns in the order of ``k``."""
    k.validate(rn)
    n = len(k)
    return RationalMatrix([[rn.net(x, r) for r in k.reactions] for x in k.entities], n)


def perfect_matchings(rn: ReactionNetwork, sub: SubNetwork) -> list[ChildSelection]:
    """All child-selections with domain X' and image R' (by backtracking)."""
    ents = sub.entity_order
    if len(ents) != len(sub.reactions):
        return []
    options = {x: [r for r in sub.reaction_order if rn.s_minus(x, r) > 0] for x in ents}
    out = []
    chosen: list[tuple[int, int]] = []
    used: set[int] = set()

    def extend(i):
        if i == len(ents):
            out.append(ChildSelection(chosen))
            return
        x = ents[i]
        for r in options[x]:
            if r not in used:
                used.add(r)
                chosen.append((x, r))
                extend(i + 1)
                chosen.pop()
                used.discard(r)

    extend(0)
    return out
