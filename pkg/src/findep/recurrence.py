"""Exact insertion-count recurrences for proper colorings of cycles and lines.

Two counting functions drive everything in this package. For a word x of
length n over q colors,

    b_circ(x) = [x is cyclically proper] * sum_i b_circ(x with position i
                deleted),            b_circ(empty) = 1,

counts the ways to build x by repeated single-symbol insertion with every
intermediate stage cyclically proper; words of length <= 1 count as
cyclically proper, the unique convention under which the partition sum
obeys z_circ(2, q) = 2 q (q-1). The analogous line count ``b_vec`` demands
plain properness only. Normalizing by the partition sums yields exact laws:
``cycle_law`` on colorings of the n-cycle and ``line_window_law`` on
length-n windows of the line process.

Evaluation strategy: per-word values are memoized under rotation
canonicalization, which is sound because the cyclic count is invariant
under rotation (verified independently by the test suite). Whole-level
sums and full laws additionally use a vectorized bottom-up pass over dense
numpy int64 arrays whenever the value bounds provably fit; the two engines
implement the same recurrence and are cross-checked in tests.

Thread-safety: all functions are pure. The shared memo tables are only
ever written with values equal to the single-threaded result, so
concurrent evaluation returns identical results.
"""

from __future__ import annotations

import math
from itertools import product
from typing import Sequence, Union

import numpy as np

from .dist import ExactDist
from .errors import BudgetExceeded
from .words import Word, tuple_is_cyclically_proper, tuple_is_proper

WordLike = Union[Word, Sequence[int], str]

__all__ = [
    "DEFAULT_BUDGET",
    "THEOREM_GRADE",
    "b_circ",
    "b_circ_mobius",
    "b_vec",
    "cycle_law",
    "is_theorem_grade",
    "line_window_law",
    "restriction_sum",
    "z_circ",
    "z_circ_closed",
    "z_vec",
]

#: Cap on the number of states materialized by a law enumeration.
DEFAULT_BUDGET = 5_000_000

#: (dependence range k, color count q) pairs for which the window laws are
#: consistent marginals of a single stationary process on the line.
THEOREM_GRADE = frozenset({(1, 4), (2, 3)})

# Dense-array evaluation bounds. Counts of length-m words are at most m!,
# so int64 arithmetic (including 2**22-sized chunk sums) is exact for
# n <= _BULK_MAX_N; _ENUM_LIMIT caps how many words any sum may visit.
_BULK_MAX_N = 14
_ENUM_LIMIT = 1 << 27
_CHUNK = 1 << 22


def is_theorem_grade(k: int, q: int) -> bool:
    return (k, q) in THEOREM_GRADE


def as_symbols(x: WordLike, q: int) -> tuple[int, ...]:
    """Coerce a word-like value to a symbol tuple, validating against q."""
    if isinstance(x, Word):
        t = x.symbols
    elif isinstance(x, str):
        t = Word.parse(x, q).symbols
        return t
    else:
        t = tuple(int(s) for s in x)
    for s in t:
        if not 1 <= s <= q:
            raise ValueError(f"symbol {s} out of range [1, {q}]")
    return t


def _min_rotation(t: tuple[int, ...]) -> tuple[int, ...]:
    n = len(t)
    if n <= 1:
        return t
    best = t
    for r in range(1, n):
        c = t[r:] + t[:r]
        if c < best:
            best = c
    return best


def _relabel_first_occurrence(t: tuple[int, ...]) -> tuple[int, ...]:
    seen: dict[int, int] = {}
    out = []
    for s in t:
        if s not in seen:
            seen[s] = len(seen) + 1
        out.append(seen[s])
    return tuple(out)


def _canon_rot(t: tuple[int, ...]) -> tuple[int, ...]:
    return _min_rotation(t)


def _canon_rot_color(t: tuple[int, ...]) -> tuple[int, ...]:
    n = len(t)
    if n == 0:
        return t
    return min(_relabel_first_occurrence(t[r:] + t[:r]) for r in range(n))


# Memoized across the whole run, not per call: the recursion over deletions
# revisits the same subsequence classes from many top-level words.
_MEMO_CIRC: dict[tuple[int, ...], int] = {(): 1}
_MEMO_CIRC_COLOR: dict[tuple[int, ...], int] = {(): 1}
_MEMO_VEC: dict[tuple[int, ...], int] = {(): 1}


def _b_circ_rec(t: tuple[int, ...], memo: dict, canon) -> int:
    key = canon(t)
    val = memo.get(key)
    if val is not None:
        return val
    if not tuple_is_cyclically_proper(key):
        memo[key] = 0
        return 0
    total = 0
    for i in range(len(key)):
        total += _b_circ_rec(key[:i] + key[i + 1 :], memo, canon)
    memo[key] = total
    return total


def _b_vec_rec(t: tuple[int, ...]) -> int:
    val = _MEMO_VEC.get(t)
    if val is not None:
        return val
    if not tuple_is_proper(t):
        _MEMO_VEC[t] = 0
        return 0
    total = 0
    for i in range(len(t)):
        total += _b_vec_rec(t[:i] + t[i + 1 :])
    _MEMO_VEC[t] = total
    return total


def b_circ(x: WordLike, q: int, *, canonical_colors: bool = False) -> int:
    """Insertion count of the cyclic word x (exact, arbitrary precision).

    ``canonical_colors=True`` additionally folds memo entries across color
    relabelings; it must (and is tested to) return identical values.
    """
    t = as_symbols(x, q)
    if canonical_colors:
        return _b_circ_rec(t, _MEMO_CIRC_COLOR, _canon_rot_color)
    return _b_circ_rec(t, _MEMO_CIRC, _canon_rot)


def b_vec(x: WordLike, q: int) -> int:
    """Insertion count of the word x on the line (properness only)."""
    return _b_vec_rec(as_symbols(x, q))


def _defect_edges(t: tuple[int, ...]) -> list[int]:
    """0-based positions of the distinct monochromatic cyclic adjacencies.

    A cyclic word of length n >= 3 has n adjacencies (i, i+1 mod n). Length
    2 has a single adjacency, not two, and lengths <= 1 have none; these
    degenerate cases are what make the inclusion-exclusion form below agree
    with the defining recurrence on every word.
    """
    n = len(t)
    if n <= 1:
        return []
    if n == 2:
        return [0] if t[0] == t[1] else []
    return [i for i in range(n) if t[i] == t[(i + 1) % n]]


def b_circ_mobius(x: WordLike, q: int) -> int:
    """The cyclic insertion count via inclusion-exclusion over deletions.

    Evaluates sum_i b_circ(x_del_i) - 2 * sum over monochromatic cyclic
    adjacencies of b_circ(x_del_i), which equals ``b_circ(x)`` on every
    word of length >= 1.
    """
    t = as_symbols(x, q)
    if len(t) == 0:
        raise ValueError("inclusion-exclusion form is defined for length >= 1")
    dels = [b_circ(t[:i] + t[i + 1 :], q) for i in range(len(t))]
    return sum(dels) - 2 * sum(dels[i] for i in _defect_edges(t))


def z_circ_closed(n: int, q: int) -> int:
    """Closed form n! * q * (q-1) * (q-2)^(n-2) for the cyclic partition sum."""
    if n < 2:
        raise ValueError(f"closed form requires n >= 2, got {n}")
    return math.factorial(n) * q * (q - 1) * (q - 2) ** (n - 2)


# -- dense bottom-up evaluation --------------------------------------------
#
# Words of length m over q colors are encoded as base-q integers with the
# first symbol most significant. Level m holds b(x) for every code; the
# recurrence gathers the m deletion codes from level m-1, restricted to the
# (cyclically) proper words since every other count is zero. Codes stay
# below 2**27, so int32 index arithmetic is exact; values are int64.
#
# Computed levels are cached per (q, cyclic) and shared across calls: the
# partition suite evaluates many n for one q and reuses all lower levels.

_LEVEL_CACHE: dict[tuple[int, bool], list[np.ndarray]] = {}
_LAW_CACHE: dict[tuple[int, int, bool], ExactDist] = {}


def _proper_mask(codes: np.ndarray, m: int, q: int, cyclic: bool) -> np.ndarray:
    if m == 1:
        return np.ones(codes.shape, dtype=bool)
    mask = None
    first = (codes // q ** (m - 1)) % q
    prev = first
    for j in range(2, m + 1):
        cur = (codes // q ** (m - j)) % q
        step = prev != cur
        mask = step if mask is None else (mask & step)
        prev = cur
    if cyclic:
        mask &= prev != first
    return mask


def _gather_counts(prev: np.ndarray, kept: np.ndarray, m: int, q: int) -> np.ndarray:
    """Sum of level-(m-1) counts over the m single-deletion children."""
    acc = np.zeros(kept.shape, dtype=np.int64)
    for i in range(1, m + 1):
        hi = kept // q ** (m - i + 1)
        lo = kept % q ** (m - i)
        acc += prev[hi * q ** (m - i) + lo]
    return acc


def _level_values(prev: np.ndarray, codes: np.ndarray, m: int, q: int, cyclic: bool) -> np.ndarray:
    mask = _proper_mask(codes, m, q, cyclic)
    vals = np.zeros(codes.shape, dtype=np.int64)
    vals[mask] = _gather_counts(prev, codes[mask], m, q)
    return vals


def _levels(q: int, cyclic: bool, upto: int) -> list[np.ndarray]:
    """Dense count arrays for levels 0..upto (cached)."""
    levels = _LEVEL_CACHE.setdefault((q, cyclic), [np.ones(1, dtype=np.int64)])
    for m in range(len(levels), upto + 1):
        codes = np.arange(q**m, dtype=np.int32)
        levels.append(_level_values(levels[m - 1], codes, m, q, cyclic))
    return levels


def _bulk_counts(n: int, q: int, *, cyclic: bool, want_array: bool):
    """(total, dense array or None) over all q**n words at level n.

    Only valid when n <= _BULK_MAX_N; callers check. When the array is not
    wanted and the top level is large, it is evaluated in chunks so memory
    stays at O(q**(n-1)).
    """
    size = q**n
    if want_array or size <= _CHUNK:
        arr = _levels(q, cyclic, n)[n]
        return int(arr.sum()), (arr if want_array else None)
    prev = _levels(q, cyclic, n - 1)[n - 1]
    total = 0
    for start in range(0, size, _CHUNK):
        codes = np.arange(start, min(start + _CHUNK, size), dtype=np.int32)
        mask = _proper_mask(codes, n, q, cyclic)
        total += int(_gather_counts(prev, codes[mask], n, q).sum())
    return total, None


def _sum_counts(n: int, q: int, *, cyclic: bool) -> int:
    if n == 0:
        return 1
    if n <= _BULK_MAX_N:
        total, _ = _bulk_counts(n, q, cyclic=cyclic, want_array=False)
        return total
    if q**n > 1 << 20:
        raise BudgetExceeded(f"summation over {q}**{n} words is not feasible")
    rec = b_circ if cyclic else b_vec
    return sum(rec(t, q) for t in product(range(1, q + 1), repeat=n))


def z_circ(n: int, q: int) -> int:
    """Partition sum of the cyclic insertion counts over all q**n words."""
    if n < 0 or q < 1:
        raise ValueError("need n >= 0 and q >= 1")
    if q**n > _ENUM_LIMIT:
        raise BudgetExceeded(f"summation over {q}**{n} words is not feasible")
    return _sum_counts(n, q, cyclic=True)


def z_vec(n: int, q: int) -> int:
    """Partition sum of the line insertion counts over all q**n words."""
    if n < 0 or q < 1:
        raise ValueError("need n >= 0 and q >= 1")
    if q**n > _ENUM_LIMIT:
        raise BudgetExceeded(f"summation over {q}**{n} words is not feasible")
    return _sum_counts(n, q, cyclic=False)


def _decode(code: int, n: int, q: int) -> tuple[int, ...]:
    out = [0] * n
    for j in range(n - 1, -1, -1):
        out[j] = code % q + 1
        code //= q
    return tuple(out)


def _law(n: int, q: int, budget: int, *, cyclic: bool) -> ExactDist:
    if n < 0:
        raise ValueError(f"need n >= 0, got {n}")
    if q < 3:
        raise ValueError(f"law requires q >= 3 colors, got {q}")
    if budget < 1 or q**n > budget:
        raise BudgetExceeded(f"{q}**{n} words exceed the enumeration budget {budget}")
    cached = _LAW_CACHE.get((n, q, cyclic))
    if cached is not None:
        return cached
    weights: dict[Word, int] = {}
    if n <= _BULK_MAX_N:
        _, vals = _bulk_counts(n, q, cyclic=cyclic, want_array=True)
        for code in np.flatnonzero(vals):
            weights[Word(_decode(int(code), n, q), q)] = int(vals[code])
    else:
        rec = b_circ if cyclic else b_vec
        for t in product(range(1, q + 1), repeat=n):
            v = rec(t, q)
            if v:
                weights[Word(t, q)] = v
    law = ExactDist.from_weights(weights)
    _LAW_CACHE[(n, q, cyclic)] = law
    return law


def cycle_law(n: int, q: int, *, budget: int = DEFAULT_BUDGET) -> ExactDist:
    """The exact law on colorings of the n-cycle: mass b_circ(x) / z_circ(n, q).

    The support is exactly the words with positive insertion count, which
    is a strict subset of the cyclically proper words for n >= 4.
    """
    return _law(n, q, budget, cyclic=True)


def line_window_law(n: int, k: int, q: int, *, budget: int = DEFAULT_BUDGET) -> ExactDist:
    """The exact law of a length-n window of the line process: b_vec / z_vec.

    The pairs (k, q) in ``THEOREM_GRADE`` are the ones for which these
    window laws are the marginals of a single stationary k-dependent
    process on the line; for other q >= 3 the law is still well defined
    and computed, but no consistency claim is made (callers can check
    ``is_theorem_grade``).
    """
    if k < 0:
        raise ValueError(f"need k >= 0, got {k}")
    return _law(n, q, budget, cyclic=False)


def restriction_sum(x: WordLike, k: int, q: int) -> int:
    """Sum of b_circ(x + y) over all length-k extension words y."""
    if k < 0:
        raise ValueError(f"need k >= 0, got {k}")
    t = as_symbols(x, q)
    return sum(b_circ(t + y, q) for y in product(range(1, q + 1), repeat=k))
