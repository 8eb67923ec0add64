"""Capacity elicitation from judgments over binary acts.

The decision maker compares acts that put a coalition of criteria at
their best levels and everything else at the worst, using the same
graded categories as the per-criterion elicitation.  Solving the
resulting difference system gives coalition worths normalized to
``mu(empty) = 0`` and ``mu(full) = 1``.

Monotonicity is audited after the solve rather than imposed during it:
judgment data may genuinely contradict increasingness, and the analyst
is told which covering pairs decrease so the offending judgments can be
revisited.  Passing ``enforce_monotone=True`` adds the covering-pair
bounds to the system instead, trading that diagnosis for a capacity
that is monotone whenever the system is feasible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .diffcon import Edge, category_edges, normalize_potentials, solve_difference_constraints
from .errors import DegenerateEndpoints, MissingRatio, TooLarge
from .intra import (
    InconsistencyReport,
    JudgmentCategory,
    RatioConsistencyReport,
    _judgment_ids,
    chain_violations,
    report_from_cycle,
)
from .setfn import Capacity, iter_covering_pairs, make_capacity

INTER_ITEM_LIMIT = 6


@dataclass(frozen=True)
class CoalitionJudgment:
    """The step from the binary act of ``worse`` up to the binary act of
    ``better`` is graded ``category``; coalitions are bitmasks."""

    better: int
    worse: int
    category: JudgmentCategory
    jid: str | None = None

    def __post_init__(self) -> None:
        if self.better == self.worse and self.category.rank != 0:
            raise ValueError(
                f"a strict judgment needs two distinct coalitions, got 0x{self.better:x} twice"
            )


@dataclass(frozen=True)
class CoalitionRatio:
    """The worth difference of (A, B) is ``k`` times that of (C, D)."""

    A: int
    B: int
    C: int
    D: int
    k: float

    def __post_init__(self) -> None:
        if not self.k > 0:
            raise ValueError(f"ratio must be positive, got {self.k!r}")


@dataclass(frozen=True)
class MonotonicityViolation:
    """The solved worths decrease on some covering pairs: the judgment
    data contradicts increasingness.  ``values`` holds the normalized
    table for inspection."""

    pairs: tuple[tuple[int, int], ...]
    values: tuple[float, ...]


def make_inter_items(n: int) -> tuple[int, ...]:
    """The binary acts to ask about, one coalition bitmask per act, in
    ascending bitmask order."""
    if n > INTER_ITEM_LIMIT:
        raise TooLarge(
            f"binary-act elicitation over {n} criteria would ask about {1 << n} acts; "
            f"the limit is {INTER_ITEM_LIMIT} criteria"
        )
    return tuple(range(1 << n))


def _check_coalition(n: int, bits: int) -> None:
    if not 0 <= bits < 1 << n:
        raise ValueError(f"coalition 0x{bits:x} out of range for {n} criteria")


def solve_capacity_scale(
    n: int,
    judgments: Sequence[CoalitionJudgment],
    *,
    enforce_monotone: bool = False,
) -> Capacity | InconsistencyReport | MonotonicityViolation:
    """Solve the coalition difference system and normalize the worths.

    Unlike the per-criterion solve, nothing pins the empty coalition
    below the others: only the judgments order the acts, and a capacity
    is returned only when the normalized worths are monotone.
    """
    for j in judgments:
        _check_coalition(n, j.better)
        _check_coalition(n, j.worse)
    ids = _judgment_ids(judgments)
    edges: list[Edge] = []
    for j, jid in zip(judgments, ids):
        edges.extend(category_edges(j.better, j.worse, j.category.rank, jid))
    if enforce_monotone:
        edges.extend(Edge(b, a, 0.0, None) for a, b in iter_covering_pairs(n))
    full = (1 << n) - 1
    outcome = solve_difference_constraints(1 << n, edges)
    if outcome.cycle is not None:
        return report_from_cycle(outcome.cycle)
    assert outcome.potentials is not None
    if outcome.potentials[full] - outcome.potentials[0] <= 0:
        raise DegenerateEndpoints(
            "judgments never force the all-best act strictly above the all-worst act"
        )
    values = normalize_potentials(outcome.potentials, 0, full)
    bad = [(a, b) for a, b in iter_covering_pairs(n) if values[a] > values[b]]
    if bad:
        assert not enforce_monotone, "enforced covering bounds cannot be violated"
        return MonotonicityViolation(tuple(bad), tuple(values))
    return make_capacity(n, values, tol=1e-9)


def capacity_from_ratios(n: int, ratios: Sequence[CoalitionRatio]) -> Capacity:
    """Read the capacity directly off ratios against the full span.

    A ratio comparing (A, empty) to (full, empty) equals mu(A); one such
    ratio is required for every proper nonempty coalition.  The result
    is validated with exact checks, so non-monotone ratio data raises.
    """
    full = (1 << n) - 1
    anchored: dict[int, float] = {}
    for r in ratios:
        for bits in (r.A, r.B, r.C, r.D):
            _check_coalition(n, bits)
        if r.B == 0 and r.C == full and r.D == 0 and r.A not in (0, full):
            anchored.setdefault(r.A, float(r.k))
    values = [0.0] * (1 << n)
    values[full] = 1.0
    for bits in range(1, full):
        if bits not in anchored:
            raise MissingRatio(
                f"no ratio against the full span for coalition 0x{bits:x}"
            )
        values[bits] = anchored[bits]
    return make_capacity(n, values)


def check_inter_d(
    ratios: Sequence[CoalitionRatio], tol: float = 1e-9
) -> RatioConsistencyReport:
    """Multiplicativity of chained coalition ratios, as in the
    per-criterion check."""
    entries = [((r.A, r.B), (r.C, r.D), float(r.k), r) for r in ratios]
    return chain_violations(entries, tol)
