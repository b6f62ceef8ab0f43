"""Exact finite probability distributions and one-step transition kernels.

States may be any hashable values; this package uses ``Word`` states for
colorings, tuples of bits for binary processes, and strings for
coarse-grained symbols. Probabilities are ``fractions.Fraction`` and every
operation is exact; no floating point enters these types.
"""

from __future__ import annotations

import math
from collections import Counter
from fractions import Fraction
from typing import Any, Hashable, Iterable, Iterator, Mapping

from .words import Word

State = Hashable

__all__ = ["ExactDist", "Kernel", "state_text"]


def state_text(state: State) -> str:
    """Canonical text form of a state, used for serialization and sorting."""
    if isinstance(state, Word):
        return state.text()
    if isinstance(state, tuple):
        if all(isinstance(s, int) and 0 <= s <= 9 for s in state):
            return "".join(str(s) for s in state)
        return ",".join(str(s) for s in state)
    if isinstance(state, str):
        return state
    return repr(state)


class ExactDist:
    """A finitely supported probability distribution with exact rational masses.

    Invariants: no zero-probability states in the support, all masses
    nonnegative, masses sum to exactly 1. Instances are immutable values.
    """

    __slots__ = ("_probs",)

    def __init__(self, probs: Mapping[State, Fraction | int]):
        clean: dict[State, Fraction] = {}
        total = Fraction(0)
        for state, p in probs.items():
            p = Fraction(p)
            if p < 0:
                raise ValueError(f"negative probability {p} for state {state!r}")
            if p:
                clean[state] = p
                total += p
        if total != 1:
            raise ValueError(f"probabilities sum to {total}, expected exactly 1")
        self._probs = clean

    @classmethod
    def from_weights(cls, weights: Mapping[State, int | Fraction]) -> "ExactDist":
        """Normalize nonnegative weights into a distribution."""
        total = sum(weights.values())
        if total <= 0:
            raise ValueError("total weight must be positive")
        return cls({s: Fraction(w, 1) / total for s, w in weights.items()})

    @classmethod
    def point_mass(cls, state: State) -> "ExactDist":
        return cls({state: Fraction(1)})

    def prob(self, state: State) -> Fraction:
        return self._probs.get(state, Fraction(0))

    @property
    def support(self) -> Iterable[State]:
        return self._probs.keys()

    def items(self) -> Iterable[tuple[State, Fraction]]:
        return self._probs.items()

    def __len__(self) -> int:
        return len(self._probs)

    def __iter__(self) -> Iterator[State]:
        return iter(self._probs)

    def __contains__(self, state: State) -> bool:
        return state in self._probs

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, ExactDist):
            return NotImplemented
        return self._probs == other._probs

    __hash__ = None  # mutable-dict backed; never used as a key

    def __repr__(self) -> str:
        return f"ExactDist({len(self._probs)} states)"

    def weights(self) -> tuple[dict[State, int], int]:
        """Integer masses over a common denominator: (weights, total).

        ``prob(s) == Fraction(weights[s], total)`` exactly, which lets
        independence checks run on plain integers.
        """
        denom = 1
        for p in self._probs.values():
            denom = math.lcm(denom, p.denominator)
        return {s: int(p * denom) for s, p in self._probs.items()}, denom

    def sorted_items(self) -> list[tuple[State, Fraction]]:
        return sorted(self._probs.items(), key=lambda kv: state_text(kv[0]))

    def to_json_entries(self) -> list[dict[str, str]]:
        """The wire form: a list of {"state", "num", "den"} objects."""
        return [
            {"state": state_text(s), "num": str(p.numerator), "den": str(p.denominator)}
            for s, p in self.sorted_items()
        ]


class Kernel:
    """An exact one-step transition law: each source state maps to an ExactDist."""

    __slots__ = ("_rows",)

    def __init__(self, rows: Mapping[State, ExactDist]):
        self._rows = dict(rows)

    def row(self, state: State) -> ExactDist:
        try:
            return self._rows[state]
        except KeyError:
            raise KeyError(f"state {state!r} not in kernel domain") from None

    @property
    def states(self) -> Iterable[State]:
        return self._rows.keys()

    def __len__(self) -> int:
        return len(self._rows)

    def __contains__(self, state: State) -> bool:
        return state in self._rows

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, Kernel):
            return NotImplemented
        return self._rows == other._rows

    __hash__ = None

    def push(self, dist: ExactDist) -> ExactDist:
        """The exact law after one transition from ``dist``.

        Every state in the support of ``dist`` must be in the kernel domain.
        """
        acc: Counter = Counter()
        for state, p in dist.items():
            for succ, pr in self.row(state).items():
                acc[succ] += p * pr
        return ExactDist(acc)
