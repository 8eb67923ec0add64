"""Difference-constraint systems with negative-cycle extraction.

A system of constraints ``v(dst) - v(src) <= weight`` is solved by
Bellman-Ford relaxation from a virtual source connected to every node
with weight 0.  If no negative cycle exists, the resulting potentials
are the componentwise-maximal nonpositive feasible point; otherwise one
negative cycle is extracted so the caller can cite the judgments whose
bounds contradict each other.

Category bounds are small integers, so all arithmetic here is exact in
floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True)
class Edge:
    """One bound ``v(dst) - v(src) <= weight``.

    ``source`` names the judgment the bound came from; structural bounds
    (declared endpoint order, monotonicity pins) carry ``None`` and
    always have weight 0, so they never contribute to a cycle's slack.
    """

    src: int
    dst: int
    weight: float
    source: str | None


@dataclass(frozen=True)
class SolveOutcome:
    potentials: tuple[float, ...] | None
    cycle: tuple[Edge, ...] | None

    @property
    def feasible(self) -> bool:
        return self.potentials is not None


def solve_difference_constraints(num_nodes: int, edges: Sequence[Edge]) -> SolveOutcome:
    """Relax until fixpoint or until a negative cycle is provable.

    Deterministic: edges are relaxed in the given order on every pass.
    Once the pass count exceeds the node count, continued relaxation
    proves a negative cycle; extra passes are allowed only until the
    predecessor chains actually expose one.
    """
    dist = [0.0] * num_nodes
    pred: list[Edge | None] = [None] * num_nodes
    max_passes = 4 * num_nodes + 16
    for p in range(max_passes):
        touched: list[int] = []
        for e in edges:
            cand = dist[e.src] + e.weight
            if cand < dist[e.dst]:
                dist[e.dst] = cand
                pred[e.dst] = e
                touched.append(e.dst)
        if not touched:
            return SolveOutcome(tuple(dist), None)
        if p >= num_nodes:
            cycle = _extract_cycle(pred, touched)
            if cycle is not None:
                return SolveOutcome(None, cycle)
    raise AssertionError("relaxation continued without a recoverable cycle")


def _extract_cycle(
    pred: Sequence[Edge | None], candidates: Sequence[int]
) -> tuple[Edge, ...] | None:
    # Walk back from each just-updated node until a node repeats; chains
    # that dead-end short of a cycle try the next candidate.
    for start in candidates:
        seen: dict[int, int] = {}
        path: list[Edge] = []
        node = start
        while True:
            e = pred[node]
            if e is None:
                break
            if node in seen:
                cycle = tuple(reversed(path[seen[node] :]))
                assert cycle_slack(cycle) < 0, "predecessor cycle must be negative"
                return cycle
            seen[node] = len(path)
            path.append(e)
            node = e.src
    return None


def cycle_slack(cycle: Sequence[Edge]) -> float:
    """Sum of the bounds around a cycle; negative means contradiction."""
    return math.fsum(e.weight for e in cycle)


def normalize_potentials(
    potentials: Sequence[float], zero_index: int, one_index: int
) -> list[float]:
    """Affine rescale sending the zero node to 0 and the one node to 1.

    Invariant under scaling every potential by a common positive factor,
    which is what makes the choice of internal units immaterial.
    """
    lo = potentials[zero_index]
    hi = potentials[one_index]
    span = hi - lo
    if span <= 0:
        raise ValueError("normalization requires the one node strictly above the zero node")
    return [(v - lo) / span for v in potentials]


def category_edges(
    better: int, worse: int, rank: int, source: str | None
) -> list[Edge]:
    """Difference bounds for one judgment between two nodes.

    Rank 0 encodes indifference (both differences at most 0).  Rank c in
    1..6 encodes ``c <= v(better) - v(worse) <= c + 1`` in internal
    units.
    """
    if rank == 0:
        return [
            Edge(worse, better, 0.0, source),
            Edge(better, worse, 0.0, source),
        ]
    return [
        Edge(worse, better, float(rank + 1), source),  # upper bound
        Edge(better, worse, float(-rank), source),  # lower bound
    ]
