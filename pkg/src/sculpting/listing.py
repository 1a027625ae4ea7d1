from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from src.core.structures import Event

__all__ = ["EventListing"]


@dataclass(frozen=True)
class EventListing:
    """A total order on events; positions are 1-based like the face-map indexes."""

    events: tuple[Event, ...] = ()

    def __post_init__(self) -> None:
        if len(set(self.events)) != len(self.events):
            raise ValueError("An event listing cannot repeat events.")

    @classmethod
    def default(cls, events: Iterable[Event]) -> EventListing:
        return cls(tuple(sorted(events)))

    @classmethod
    def numbered(cls, n: int) -> EventListing:
        return cls(tuple(str(position) for position in range(1, n + 1)))

    def restrict(self, subset: Iterable[Event]) -> EventListing:
        kept = frozenset(subset)
        return EventListing(tuple(event for event in self.events if event in kept))

    def index(self, event: Event) -> int:
        return self.events.index(event) + 1

    def __getitem__(self, position: int) -> Event:
        if not 1 <= position <= len(self.events):
            raise IndexError(position)
        return self.events[position - 1]

    def without(self, position: int) -> EventListing:
        return EventListing(self.events[: position - 1] + self.events[position:])

    def __len__(self) -> int:
        return len(self.events)

    def __iter__(self) -> Iterator[Event]:
        return iter(self.events)

    def __str__(self) -> str:
        return "[" + ", ".join(self.events) + "]"
