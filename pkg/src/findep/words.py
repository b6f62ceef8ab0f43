"""Colored words on cycles and intervals.

Colors are 1-based integers in {1, ..., q}. A word is an immutable sequence
of colors together with its ambient color count q. Operation indices are
1-based; cyclic contexts interpret indices modulo the length.

Everything here is an immutable value, safe to share between concurrent
tasks without synchronization.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence, Union

ColorPerm = Union[Mapping[int, int], Sequence[int]]

__all__ = [
    "Word",
    "delete_at",
    "rotate",
    "is_proper",
    "is_cyclically_proper",
    "reflect",
    "apply_color_perm",
]


@dataclass(frozen=True)
class Word:
    """A finite word of colors from {1, ..., q}."""

    symbols: tuple[int, ...]
    q: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "symbols", tuple(self.symbols))
        if self.q < 1:
            raise ValueError(f"color count must be >= 1, got {self.q}")
        for s in self.symbols:
            if not isinstance(s, int) or not 1 <= s <= self.q:
                raise ValueError(f"symbol {s!r} out of range [1, {self.q}]")

    @classmethod
    def parse(cls, text: str, q: int) -> "Word":
        """Parse the text form: digit string for q <= 9, comma-separated otherwise."""
        text = text.strip()
        if not text:
            return cls((), q)
        if q <= 9:
            return cls(tuple(int(c) for c in text), q)
        return cls(tuple(int(part) for part in text.split(",")), q)

    def text(self) -> str:
        if self.q <= 9:
            return "".join(str(s) for s in self.symbols)
        return ",".join(str(s) for s in self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[int]:
        return iter(self.symbols)

    def __getitem__(self, i: int) -> int:
        return self.symbols[i]

    def __repr__(self) -> str:
        return f"Word({self.text()!r}, q={self.q})"


# Tuple-level primitives shared with the enumeration-heavy modules.

def rotl(t: tuple[int, ...], r: int) -> tuple[int, ...]:
    n = len(t)
    if n == 0:
        raise ValueError("cannot rotate the empty word")
    r %= n
    return t[r:] + t[:r]


def tuple_is_proper(t: Sequence[int]) -> bool:
    return all(t[i] != t[i + 1] for i in range(len(t) - 1))


def tuple_is_cyclically_proper(t: Sequence[int]) -> bool:
    # Words of length <= 1 count as cyclically proper. This is the unique
    # convention under which a single bead has insertion count 1, which in
    # turn is what makes the partition sum satisfy Z(2, q) = 2 q (q - 1).
    n = len(t)
    if n <= 1:
        return True
    return tuple_is_proper(t) and t[-1] != t[0]


def delete_at(x: Word, i: int) -> Word:
    """Remove the symbol at 1-based position i, shortening the word by one."""
    n = len(x)
    if not 1 <= i <= n:
        raise IndexError(f"position {i} out of range [1, {n}]")
    return Word(x.symbols[: i - 1] + x.symbols[i:], x.q)


def rotate(x: Word, r: int) -> Word:
    """Cyclic left shift by r positions (any integer; reduced modulo the length)."""
    return Word(rotl(x.symbols, r), x.q)


def is_proper(x: Word) -> bool:
    """True iff no two consecutive symbols are equal (non-cyclic reading)."""
    return tuple_is_proper(x.symbols)


def is_cyclically_proper(x: Word) -> bool:
    """True iff the word is a proper coloring of the cycle.

    Requires properness and, for length >= 2, that the last symbol differ
    from the first. Words of length <= 1 count as cyclically proper (see
    ``tuple_is_cyclically_proper``).
    """
    return tuple_is_cyclically_proper(x.symbols)


def reflect(x: Word) -> Word:
    """The reversed word."""
    return Word(x.symbols[::-1], x.q)


def normalize_color_perm(sigma: ColorPerm, q: int) -> dict[int, int]:
    """Validate that sigma is a bijection of {1, ..., q}; return it as a dict.

    Accepts a mapping {color: image} or a sequence whose entry at index
    c - 1 is the image of color c.
    """
    if isinstance(sigma, Mapping):
        table = {int(c): int(v) for c, v in sigma.items()}
    else:
        table = {c: int(v) for c, v in enumerate(sigma, start=1)}
    if sorted(table) != list(range(1, q + 1)) or sorted(table.values()) != list(range(1, q + 1)):
        raise ValueError(f"not a bijection of [1, {q}]: {sigma!r}")
    return table


def apply_color_perm(x: Word, sigma: ColorPerm) -> Word:
    """Apply a bijective relabeling of the colors symbol-wise."""
    table = normalize_color_perm(sigma, x.q)
    return Word(tuple(table[s] for s in x.symbols), x.q)
