"""Random generation of cycle-law colorings.

Two samplers realize the same exact law (``cycle_law``):

* **Necklace insertion.** Start from three beads with uniformly random
  distinct colors. Each step picks a uniformly random gap between
  consecutive beads, inserts a bead whose color is uniform among those
  differing from both neighbors, and re-indexes by a uniformly random
  rotation so that the insertion location stays uniform after the step.

* **Eden growth.** Grow a random cluster of the rooted 3-regular tree one
  step at a time, always adding a uniformly chosen vertex adjacent to but
  not in the cluster. The cluster's planar dual is a stack of triangles:
  each added tree vertex glues one new triangle onto a boundary edge of
  the stack, and every vertex of the stack lies on its single outer face.
  Colors are assigned greedily: the initial triangle uniformly among the
  q(q-1)(q-2) proper colorings, each new vertex uniformly among the q-2
  colors differing from its two (mutually adjacent, hence distinctly
  colored) neighbors. Greedy coloring is uniform over all proper colorings
  of the stack because every choice sequence has the same probability and
  produces a distinct coloring. Reading the outer colors from a uniformly
  random starting vertex yields the coloring of the cycle.

The exact one-step transition shared by both procedures is exposed as
``coupling_kernel``; ``eden_vs_necklace_kernel_check`` verifies the
equality of the two step laws state by state.

Interior dual structure is never materialized beyond the colors already
fixed: a read needs only the outer face, and interior colors never change.
Orientation note: the stored outer order is "clockwise" for one fixed
chirality of the embedding; the law is reflection invariant, so the choice
is immaterial (and tested to be).

States and samples are immutable; replicates should use disjoint
``RngStream`` instances (distinct ``stream`` indices) and may then run
concurrently.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .dist import ExactDist, Kernel
from .recurrence import b_circ
from .words import Word, rotl, tuple_is_cyclically_proper

__all__ = [
    "EdenState",
    "RngStream",
    "allowed_colors",
    "coupling_kernel",
    "eden_init",
    "eden_read",
    "eden_sample",
    "eden_state_json",
    "eden_step",
    "eden_vs_necklace_kernel_check",
    "insert_with_rotation",
    "necklace_sample",
    "validate_eden_state",
]


class RngStream:
    """Deterministic random stream: identical (seed, stream) => identical draws.

    Distinct stream indices give statistically independent streams, one per
    replicate.
    """

    def __init__(self, seed: int, stream: int = 0):
        self.seed = int(seed)
        self.stream = int(stream)
        ss = np.random.SeedSequence(entropy=self.seed, spawn_key=(self.stream,))
        self._gen = np.random.Generator(np.random.PCG64(ss))

    def index(self, n: int) -> int:
        """Uniform integer in [0, n)."""
        if n <= 0:
            raise ValueError(f"need a positive range, got {n}")
        return int(self._gen.integers(n))

    def choice(self, seq: Sequence):
        return seq[self.index(len(seq))]

    def __repr__(self) -> str:
        return f"RngStream(seed={self.seed}, stream={self.stream})"


def allowed_colors(q: int, a: int, b: int) -> list[int]:
    """The colors in [1, q] differing from both a and b, in increasing order.

    The deterministic ordering is part of the reproducibility contract:
    samplers index into this list.
    """
    return [c for c in range(1, q + 1) if c != a and c != b]


def insert_with_rotation(x: Word, i: int, z: int, r: int) -> Word:
    """Insert color z just before 1-based position i, then rotate left by r.

    r may be any value in [0, n+1]; 0 and n+1 both mean the identity
    rotation of the extended word.
    """
    n = len(x)
    if not 1 <= i <= n:
        raise IndexError(f"insertion position {i} out of range [1, {n}]")
    if not 0 <= r <= n + 1:
        raise IndexError(f"rotation {r} out of range [0, {n + 1}]")
    if not 1 <= z <= x.q:
        raise ValueError(f"color {z} out of range [1, {x.q}]")
    t = x.symbols[: i - 1] + (z,) + x.symbols[i - 1 :]
    return Word(rotl(t, r), x.q)


def _insertion_row(t: tuple[int, ...], q: int) -> Counter:
    """Outcome counts of one insertion step from the cyclic word t.

    Uniform over: insertion position i in [n] (new symbol goes just before
    position i), color z differing from the cyclic neighbors at the gap,
    and rotation r in [n+1]. Each triple has weight 1; the total is
    n * (q-2) * (n+1).
    """
    n = len(t)
    row: Counter = Counter()
    for i0 in range(n):
        for z in allowed_colors(q, t[i0 - 1], t[i0]):
            y = t[:i0] + (z,) + t[i0:]
            for r in range(n + 1):
                row[rotl(y, r)] += 1
    return row


def _cyclically_proper_words(n: int, q: int):
    """DFS enumeration of the cyclically proper words in [q]**n."""
    if n == 0:
        yield ()
        return

    def extend(prefix: tuple[int, ...]):
        if len(prefix) == n:
            if n == 1 or prefix[-1] != prefix[0]:
                yield prefix
            return
        for c in range(1, q + 1):
            if c != prefix[-1]:
                yield from extend(prefix + (c,))

    for first in range(1, q + 1):
        yield from extend((first,))


def coupling_kernel(n: int, q: int) -> Kernel:
    """The exact one-step insertion kernel from length-n to length-(n+1) words.

    Rows are indexed by every cyclically proper word of length n (a
    superset of the cycle-law support); each row is the exact law of
    ``insert_with_rotation`` under uniform position, uniform non-clashing
    color, and uniform rotation. Pushing ``cycle_law(n, q)`` through this
    kernel reproduces ``cycle_law(n+1, q)`` exactly.
    """
    if n < 3:
        raise ValueError(f"kernel requires n >= 3, got {n}")
    if q < 3:
        raise ValueError(f"kernel requires q >= 3, got {q}")
    rows = {}
    for t in _cyclically_proper_words(n, q):
        counts = _insertion_row(t, q)
        rows[Word(t, q)] = ExactDist.from_weights(
            {Word(s, q): c for s, c in counts.items()}
        )
    return Kernel(rows)


def necklace_sample(n: int, q: int, rng: RngStream) -> Word:
    """One cycle-law coloring of the n-cycle by necklace insertion.

    Starts from three beads with uniformly random distinct colors and
    performs n-3 insertion steps, each with the uniform rotation applied;
    deterministic given the stream.
    """
    if n < 3:
        raise ValueError(f"necklace sampler requires n >= 3, got {n}")
    if q < 3:
        raise ValueError(f"necklace sampler requires q >= 3, got {q}")
    colors = list(range(1, q + 1))
    c1 = colors[rng.index(q)]
    rest = [c for c in colors if c != c1]
    c2 = rest[rng.index(q - 1)]
    c3 = [c for c in rest if c != c2][rng.index(q - 2)]
    t = (c1, c2, c3)
    for m in range(3, n):
        i0 = rng.index(m)
        z = allowed_colors(q, t[i0 - 1], t[i0])[rng.index(q - 2)]
        r = rng.index(m + 1)
        t = rotl(t[:i0] + (z,) + t[i0:], r)
    return Word(t, q)


# -- Eden growth ------------------------------------------------------------
#
# EdenState bookkeeping. The outer face of the triangle stack is a cycle of
# dual vertices; between consecutive outer vertices sits exactly one
# boundary edge, and gluing the next triangle onto that edge corresponds to
# adding one specific boundary vertex of the tree cluster. A gap record
# ties the two together: (left outer id, right outer id, boundary tree
# vertex). A cluster of size m has m+2 outer vertices and m+2 gaps.


@dataclass(frozen=True)
class EdenState:
    """Growth state: tree cluster plus colored dual outer cycle.

    ``outer[i]`` is an (id, color) pair; gap i sits between ``outer[i]``
    and ``outer[(i+1) % len]``. ``tree_edges`` records the explored part of
    the 3-regular tree: edges inside the cluster and the pending edges to
    its boundary vertices. Fresh vertex ids come from the two counters.
    """

    q: int
    size: int
    tree: tuple[int, ...]
    tree_edges: tuple[tuple[int, int], ...]
    outer: tuple[tuple[int, int], ...]
    gaps: tuple[tuple[int, int, int], ...]
    next_tree_id: int
    next_outer_id: int


def validate_eden_state(s: EdenState) -> None:
    """Raise AssertionError unless the structural invariants hold."""
    m = s.size
    assert len(s.outer) == m + 2, f"outer size {len(s.outer)} != {m + 2}"
    assert len(s.gaps) == m + 2, f"gap count {len(s.gaps)} != {m + 2}"
    assert len(s.tree) == m
    n_out = len(s.outer)
    cluster = set(s.tree)
    boundary = []
    for u, v in s.tree_edges:
        if (u in cluster) != (v in cluster):
            boundary.append(v if u in cluster else u)
    assert sorted(boundary) == sorted(g[2] for g in s.gaps), (
        "gap boundary vertices must be exactly the tree boundary, once each"
    )
    for i, (left, right, _) in enumerate(s.gaps):
        assert left == s.outer[i][0] and right == s.outer[(i + 1) % n_out][0], (
            f"gap {i} does not interleave with the outer cycle"
        )
    for i in range(n_out):
        a = s.outer[i][1]
        b = s.outer[(i + 1) % n_out][1]
        assert a != b, f"adjacent outer colors equal at position {i}"


def eden_init(q: int, rng: RngStream) -> EdenState:
    """Cluster of size 1 with a uniformly colored initial triangle."""
    if q < 3:
        raise ValueError(f"growth requires q >= 3 colors, got {q}")
    colors = list(range(1, q + 1))
    c1 = colors[rng.index(q)]
    rest = [c for c in colors if c != c1]
    c2 = rest[rng.index(q - 1)]
    c3 = [c for c in rest if c != c2][rng.index(q - 2)]
    state = EdenState(
        q=q,
        size=1,
        tree=(0,),
        tree_edges=((0, 1), (0, 2), (0, 3)),
        outer=((0, c1), (1, c2), (2, c3)),
        gaps=((0, 1, 1), (1, 2, 2), (2, 0, 3)),
        next_tree_id=4,
        next_outer_id=3,
    )
    validate_eden_state(state)
    return state


def _eden_step_at(s: EdenState, gap_index: int, color_index: int) -> EdenState:
    """Grow by the boundary vertex of the given gap, with the given color choice.

    ``color_index`` selects from ``allowed_colors`` of the gap's two
    endpoint colors. Deterministic; ``eden_step`` draws the two choices.
    """
    n_out = len(s.outer)
    left_id, right_id, w = s.gaps[gap_index]
    left_color = s.outer[gap_index][1]
    right_color = s.outer[(gap_index + 1) % n_out][1]
    z = allowed_colors(s.q, left_color, right_color)[color_index]

    new_outer_id = s.next_outer_id
    t1 = s.next_tree_id
    t2 = s.next_tree_id + 1
    outer = (
        s.outer[: gap_index + 1]
        + ((new_outer_id, z),)
        + s.outer[gap_index + 1 :]
    )
    gaps = (
        s.gaps[:gap_index]
        + ((left_id, new_outer_id, t1), (new_outer_id, right_id, t2))
        + s.gaps[gap_index + 1 :]
    )
    state = EdenState(
        q=s.q,
        size=s.size + 1,
        tree=s.tree + (w,),
        tree_edges=s.tree_edges + ((w, t1), (w, t2)),
        outer=outer,
        gaps=gaps,
        next_tree_id=t2 + 1,
        next_outer_id=new_outer_id + 1,
    )
    validate_eden_state(state)
    return state


def eden_step(s: EdenState, rng: RngStream) -> EdenState:
    """One growth step: uniform gap (equivalently uniform boundary tree
    vertex), then uniform non-clashing color for the stacked vertex."""
    gap_index = rng.index(len(s.gaps))
    color_index = rng.index(s.q - 2)
    return _eden_step_at(s, gap_index, color_index)


def _eden_read_from(s: EdenState, start: int) -> Word:
    n_out = len(s.outer)
    return Word(tuple(s.outer[(start + j) % n_out][1] for j in range(n_out)), s.q)


def eden_read(s: EdenState, rng: RngStream) -> Word:
    """The outer colors in stored (clockwise) order from a uniform start."""
    return _eden_read_from(s, rng.index(len(s.outer)))


def eden_state_json(s: EdenState) -> dict:
    """JSON-ready snapshot of a growth state, for debugging/visualization."""
    return {
        "schema": "findep.eden-state/1",
        "q": s.q,
        "size": s.size,
        "tree_vertices": list(s.tree),
        "tree_edges": [list(e) for e in s.tree_edges],
        "outer": [{"id": vid, "color": color} for vid, color in s.outer],
        "gaps": [
            {"left": left, "right": right, "boundary_vertex": w}
            for left, right, w in s.gaps
        ],
    }


def eden_sample(n: int, q: int, rng: RngStream) -> Word:
    """One cycle-law coloring of the n-cycle via Eden growth (n >= 3)."""
    if n < 3:
        raise ValueError(f"growth sampler requires n >= 3, got {n}")
    s = eden_init(q, rng)
    for _ in range(n - 3):
        s = eden_step(s, rng)
    return eden_read(s, rng)


def _eden_state_with_outer(x: Word) -> EdenState:
    """A valid state whose outer cycle carries the given coloring.

    The cluster is laid out as a path; the pairing of gaps with boundary
    vertices is one fixed consistent choice. The one-step law from a state
    depends on the state only through its outer coloring, so any valid
    realization serves for exhaustive checks.
    """
    n = len(x)
    if n < 3:
        raise ValueError("outer cycle needs at least 3 vertices")
    if not tuple_is_cyclically_proper(x.symbols):
        raise ValueError("outer coloring must be cyclically proper")
    size = n - 2
    path = tuple(range(size))
    edges = [(i, i + 1) for i in range(size - 1)]
    boundary = list(range(size, size + n))
    free_slots: list[int] = []  # cluster vertex owning each boundary edge
    if size == 1:
        free_slots = [0, 0, 0]
    else:
        free_slots.extend([0, 0])           # path end: root keeps 2 free
        free_slots.extend(range(1, size - 1))  # interior: 1 free each
        free_slots.extend([size - 1, size - 1])  # other end: 2 free
    edges.extend((free_slots[j], boundary[j]) for j in range(n))
    outer = tuple((i, x.symbols[i]) for i in range(n))
    gaps = tuple((i, (i + 1) % n, boundary[i]) for i in range(n))
    state = EdenState(
        q=x.q,
        size=size,
        tree=path,
        tree_edges=tuple(edges),
        outer=outer,
        gaps=gaps,
        next_tree_id=size + n,
        next_outer_id=n,
    )
    validate_eden_state(state)
    return state


def eden_vs_necklace_kernel_check(n: int, q: int) -> bool:
    """Exact equality of the Eden step-and-read law with the insertion kernel.

    For every reachable outer coloring (positive insertion count), builds a
    state carrying it, exhausts all (gap, color, start) choices of one
    growth step followed by a read, and compares the resulting exact law
    with the corresponding ``coupling_kernel`` row.
    """
    kernel = coupling_kernel(n, q)
    for t in _cyclically_proper_words(n, q):
        if b_circ(t, q) == 0:
            continue
        x = Word(t, q)
        s = _eden_state_with_outer(x)
        law: Counter = Counter()
        for gap_index in range(len(s.gaps)):
            for color_index in range(q - 2):
                stepped = _eden_step_at(s, gap_index, color_index)
                for start in range(len(stepped.outer)):
                    law[_eden_read_from(stepped, start)] += 1
        if ExactDist.from_weights(law) != kernel.row(x):
            return False
    return True
