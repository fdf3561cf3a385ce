"""Gradual items and patterns, plus complement and canonical form."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InvalidParameter


class Direction(enum.Enum):
    GEQ = ">="
    LEQ = "<="

    @property
    def flipped(self) -> "Direction":
        return Direction.LEQ if self is Direction.GEQ else Direction.GEQ

    @property
    def sign(self) -> int:
        return 1 if self is Direction.GEQ else -1


@dataclass(frozen=True)
class GradualItem:
    attribute: int
    direction: Direction

    def __lt__(self, other):  # enum members are not orderable
        return (self.attribute, self.direction is Direction.LEQ) < (
            other.attribute,
            other.direction is Direction.LEQ,
        )

    def label(self, names: Sequence[str] | None = None) -> str:
        name = names[self.attribute] if names is not None else f"#{self.attribute}"
        return f"{name}{self.direction.value}"


@dataclass(frozen=True)
class GradualPattern:
    """Non-empty set of gradual items over distinct attributes.

    Items are kept sorted by attribute index, so two patterns with the same
    items compare and hash equal.
    """

    items: tuple[GradualItem, ...]

    def __init__(self, items: Iterable[GradualItem]):
        items = tuple(sorted(items, key=_item_key))
        if not items:
            raise InvalidParameter("a gradual pattern needs at least one item")
        attrs = [it.attribute for it in items]
        if len(set(attrs)) != len(attrs):
            raise InvalidParameter(f"attribute repeated in pattern: {attrs}")
        object.__setattr__(self, "items", items)

    @classmethod
    def of(cls, *pairs: tuple[int, str | Direction]) -> "GradualPattern":
        """Build from ``(attribute, ">=" | "<=")`` pairs."""
        return cls(GradualItem(a, Direction(d)) for a, d in pairs)

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    @property
    def attributes(self) -> tuple[int, ...]:
        return tuple(it.attribute for it in self.items)

    @property
    def is_canonical(self) -> bool:
        return self.items[0].direction is Direction.GEQ

    def sort_key(self):
        return (len(self.items), tuple(_item_key(it) for it in self.items))

    def __lt__(self, other: "GradualPattern") -> bool:
        return self.sort_key() < other.sort_key()

    def with_item(self, item: GradualItem) -> "GradualPattern":
        return GradualPattern(self.items + (item,))

    def without(self, index: int) -> "GradualPattern":
        return GradualPattern(self.items[:index] + self.items[index + 1:])

    def label(self, names: Sequence[str] | None = None) -> str:
        return "(" + ", ".join(it.label(names) for it in self.items) + ")"


def _item_key(item: GradualItem):
    return (item.attribute, item.direction is Direction.LEQ)


def complement(g: GradualPattern) -> GradualPattern:
    """Flip the direction of every item."""
    return GradualPattern(GradualItem(it.attribute, it.direction.flipped) for it in g.items)


def canonicalize(g: GradualPattern) -> GradualPattern:
    """Return whichever of ``g`` and its complement starts with a GEQ item."""
    return g if g.is_canonical else complement(g)
