# Slot patterns name mixed partials on the diagonal.
# L index i is d/dx^i, R index i is d/dy^i, all evaluated at x = y = q.
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import product
from typing import Final, Iterator, Sequence, overload

from typing_extensions import Self

from twopoint.errors import DimensionError

__all__ = ("Slot", "SlotPattern", "MARKS", "all_marks", "swap_marks", "canonical_key", "multiplicities")

MARKS: Final[dict[str, str]] = {"L": "x", "R": "y"}
"""Mapping of (slot mark): (argument it differentiates)."""

MAX_ORDER = 4

CanonicalKey = tuple[int, ...]


@dataclass(frozen=True)
class Slot:
    mark: str
    index: int

    def __post_init__(self) -> None:
        if self.mark not in MARKS:
            raise ValueError(f"Slot mark must be one of {tuple(MARKS)}, got {self.mark!r}")
        if self.index < 0:
            raise DimensionError(f"Slot index must be non-negative, got {self.index}")

    def variable(self, dim: int) -> int:
        """Position of this slot's coordinate in z = (x, y)."""
        return self.index if self.mark == "L" else dim + self.index

    def swapped(self) -> Slot:
        return Slot("R" if self.mark == "L" else "L", self.index)

    def __str__(self) -> str:
        return f"{self.mark}{self.index}"


@dataclass(frozen=True)
class SlotPattern(Sequence[Slot]):
    slots: tuple[Slot, ...]

    def __post_init__(self) -> None:
        if not 1 <= len(self.slots) <= MAX_ORDER:
            raise DimensionError(f"Pattern order must be in 1..{MAX_ORDER}, got {len(self.slots)}")

    @classmethod
    def from_marks(cls, marks: str, indices: Sequence[int]) -> Self:
        """Pair a mark string such as ``"LLR"`` with coordinate indices."""
        if len(marks) != len(indices):
            raise DimensionError(f"Marks {marks!r} and indices {tuple(indices)} differ in length")
        return cls(tuple(Slot(m, int(i)) for m, i in zip(marks, indices)))

    @classmethod
    def parse(cls, text: str) -> Self:
        """Parse ``"L0R1"`` style text."""
        slots = []
        pos = 0
        while pos < len(text):
            mark = text[pos]
            end = pos + 1
            while end < len(text) and text[end].isdigit():
                end += 1
            if end == pos + 1:
                raise ValueError(f"Missing index after {mark!r} in {text!r}")
            slots.append(Slot(mark, int(text[pos + 1 : end])))
            pos = end
        return cls(tuple(slots))

    @property
    def marks(self) -> str:
        return "".join(s.mark for s in self.slots)

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(s.index for s in self.slots)

    @property
    def order(self) -> int:
        return len(self.slots)

    def validate(self, dim: int) -> None:
        for s in self.slots:
            if s.index >= dim:
                raise DimensionError(f"Slot {s} out of range for dimension {dim}")

    def swapped(self) -> SlotPattern:
        return SlotPattern(tuple(s.swapped() for s in self.slots))

    def key(self, dim: int) -> CanonicalKey:
        return canonical_key(self, dim)

    @overload
    def __getitem__(self, item: int) -> Slot:
        ...

    @overload
    def __getitem__(self, item: slice) -> Sequence[Slot]:
        ...

    def __getitem__(self, item):
        return self.slots[item]

    def __len__(self) -> int:
        return len(self.slots)

    def __iter__(self) -> Iterator[Slot]:
        return iter(self.slots)

    def __str__(self) -> str:
        return "".join(map(str, self.slots))


def all_marks(order: int) -> tuple[str, ...]:
    """All 2^order mark strings, in L-before-R lexical order."""
    return tuple("".join(p) for p in product("LR", repeat=order))


def swap_marks(marks: str) -> str:
    return marks.translate(str.maketrans("LR", "RL"))


def canonical_key(pattern: SlotPattern, dim: int) -> CanonicalKey:
    """Sorted z-variable positions; patterns with equal keys are equal derivatives."""
    pattern.validate(dim)
    return tuple(sorted(s.variable(dim) for s in pattern))


def multiplicities(key: CanonicalKey) -> tuple[tuple[int, int], ...]:
    """(variable, count) pairs of a canonical key, in variable order."""
    return tuple(sorted(Counter(key).items()))
