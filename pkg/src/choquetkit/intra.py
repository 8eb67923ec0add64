"""Per-criterion utility elicitation from qualitative judgments.

The decision maker compares acts that vary a single criterion while the
others rest at a reference level, grading each difference of
satisfaction with one of six categories (or declaring indifference).
Categories become interval bounds on an internal difference scale: rank
``c`` maps to ``[c, c + 1]`` internal units, a unit ladder chosen so any
two "very small" steps can never add up to one "extreme" step.  The
resulting difference-constraint system either yields a utility function
normalized to the declared worst and best levels, or a negative cycle
naming the judgments that cannot hold together.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Mapping, Sequence

from .diffcon import (
    Edge,
    category_edges,
    cycle_slack,
    normalize_potentials,
    solve_difference_constraints,
)
from .errors import DegenerateEndpoints, MissingRatio, OutOfRange, UnknownLevel

CATEGORY_LABELS = (
    "indifferent",
    "very small",
    "small",
    "mean",
    "large",
    "very large",
    "extreme",
)


@dataclass(frozen=True)
class JudgmentCategory:
    """A graded difference of satisfaction: rank 0 is indifference,
    ranks 1..6 run from very small to extreme."""

    rank: int
    label: str

    def __post_init__(self) -> None:
        if not 0 <= self.rank <= 6:
            raise ValueError(f"category rank must be in 0..6, got {self.rank}")
        if self.label != CATEGORY_LABELS[self.rank]:
            raise ValueError(
                f"rank {self.rank} must carry label {CATEGORY_LABELS[self.rank]!r}, "
                f"got {self.label!r}"
            )

    @classmethod
    def from_rank(cls, rank: int) -> "JudgmentCategory":
        if not 0 <= rank <= 6:
            raise ValueError(f"category rank must be in 0..6, got {rank}")
        return cls(rank, CATEGORY_LABELS[rank])

    @classmethod
    def from_label(cls, label: str) -> "JudgmentCategory":
        try:
            rank = CATEGORY_LABELS.index(label)
        except ValueError:
            raise ValueError(
                f"unknown category label {label!r}; expected one of {', '.join(CATEGORY_LABELS)}"
            ) from None
        return cls(rank, label)


INDIFFERENT = JudgmentCategory.from_rank(0)


@dataclass(frozen=True)
class AttributeScale:
    """The ordered levels of one criterion with its declared worst
    (zero) and best (one) levels."""

    criterion_id: str
    levels: tuple[str, ...]
    zero_level: str
    one_level: str

    def __post_init__(self) -> None:
        object.__setattr__(self, "levels", tuple(self.levels))
        if len(set(self.levels)) != len(self.levels):
            raise ValueError(f"levels of {self.criterion_id!r} must be distinct")
        if self.zero_level == self.one_level:
            raise ValueError(f"zero and one levels of {self.criterion_id!r} must differ")
        for endpoint in (self.zero_level, self.one_level):
            if endpoint not in self.levels:
                raise UnknownLevel(
                    f"endpoint {endpoint!r} is not a level of {self.criterion_id!r}"
                )

    def index(self, level: str) -> int:
        try:
            return self.levels.index(level)
        except ValueError:
            raise UnknownLevel(
                f"level {level!r} is not a level of {self.criterion_id!r}"
            ) from None


@dataclass(frozen=True)
class DifferenceJudgment:
    """The step from ``worse`` up to ``better`` is graded ``category``."""

    better: str
    worse: str
    category: JudgmentCategory
    jid: str | None = None

    def __post_init__(self) -> None:
        if self.better == self.worse and self.category.rank != 0:
            raise ValueError(
                f"a strict judgment needs two distinct levels, got {self.better!r} twice"
            )


@dataclass(frozen=True)
class RatioJudgment:
    """The difference v(x) - v(y) is ``k`` times the difference v(w) - v(z)."""

    x: str
    y: str
    w: str
    z: str
    k: float

    def __post_init__(self) -> None:
        if not self.k > 0:
            raise ValueError(f"ratio must be positive, got {self.k!r}")
        if self.x == self.y or self.w == self.z:
            raise ValueError("ratio judgments compare strict-preference pairs")


@dataclass(frozen=True)
class UtilityScale:
    """A utility function on one criterion's levels, 0 at the worst
    level and 1 at the best."""

    criterion_id: str
    u: Mapping[str, float]

    def value(self, level: str) -> float:
        try:
            return self.u[level]
        except KeyError:
            raise UnknownLevel(
                f"level {level!r} has no utility on {self.criterion_id!r}"
            ) from None


@dataclass(frozen=True)
class ConstraintGraph:
    """Difference bounds over a criterion's levels; node names are level
    ids and every edge traces to exactly one judgment bound."""

    nodes: tuple[str, ...]
    edges: tuple[Edge, ...]


@dataclass(frozen=True)
class InconsistencyReport:
    """A cycle of judgments whose bounds contradict each other: summing
    the cited bounds around the cycle leaves negative slack."""

    cycle: tuple[str, ...]
    total_slack: float


class ElicitationContext(enum.Enum):
    """Whether the varied level is presented with all other criteria at
    their worst level or at their best level."""

    ZERO_CONTEXT = "zero_context"
    ONE_CONTEXT = "one_context"


@dataclass(frozen=True)
class IntraItem:
    """One act to put to the decision maker: the criterion takes
    ``level`` while every other criterion rests at the context level."""

    criterion_id: str
    level: str
    context: ElicitationContext


def make_intra_items(
    scale: AttributeScale, ctx: ElicitationContext = ElicitationContext.ZERO_CONTEXT
) -> tuple[IntraItem, ...]:
    """One act per level, in the scale's declared level order."""
    return tuple(IntraItem(scale.criterion_id, lv, ctx) for lv in scale.levels)


def _judgment_ids(judgments: Sequence[DifferenceJudgment | object]) -> list[str]:
    ids = []
    for pos, j in enumerate(judgments, start=1):
        jid = getattr(j, "jid", None)
        ids.append(jid if jid is not None else f"j{pos}")
    if len(set(ids)) != len(ids):
        raise ValueError(f"judgment ids must be distinct, got {ids}")
    return ids


def build_constraint_graph(
    scale: AttributeScale, judgments: Sequence[DifferenceJudgment]
) -> ConstraintGraph:
    """Translate judgments into difference bounds over the levels.

    Judgments without an explicit id are named j1, j2, ... by position.
    """
    ids = _judgment_ids(judgments)
    edges: list[Edge] = []
    for j, jid in zip(judgments, ids):
        better = scale.index(j.better)
        worse = scale.index(j.worse)
        edges.extend(category_edges(better, worse, j.category.rank, jid))
    return ConstraintGraph(scale.levels, tuple(edges))


def _endpoint_edges(scale: AttributeScale) -> list[Edge]:
    # The declared worst level sits below every level and the declared
    # best above; these bounds are structural, not judgments.
    zero = scale.index(scale.zero_level)
    one = scale.index(scale.one_level)
    edges = []
    for idx in range(len(scale.levels)):
        if idx != zero:
            edges.append(Edge(idx, zero, 0.0, None))
        if idx != one:
            edges.append(Edge(one, idx, 0.0, None))
    return edges


def report_from_cycle(cycle: Sequence[Edge]) -> InconsistencyReport:
    ids: list[str] = []
    for e in cycle:
        if e.source is not None and e.source not in ids:
            ids.append(e.source)
    if ids:  # rotate so the listing starts at the smallest judgment id
        pivot = ids.index(min(ids))
        ids = ids[pivot:] + ids[:pivot]
    return InconsistencyReport(tuple(ids), cycle_slack(cycle))


def solve_scale(
    graph: ConstraintGraph, scale: AttributeScale
) -> UtilityScale | InconsistencyReport:
    """Solve the difference system and normalize to the endpoints.

    The declared endpoint order (worst below all, best above all) joins
    the system as structural bounds, so judgments that contradict it
    surface as an inconsistency cycle rather than a utility outside
    [0, 1].  Feasible systems return the shortest-path potentials, the
    componentwise-maximal solution, rescaled to u(zero) = 0, u(one) = 1.
    """
    if tuple(graph.nodes) != scale.levels:
        raise UnknownLevel(
            f"graph nodes {graph.nodes} do not match the levels of {scale.criterion_id!r}"
        )
    edges = list(graph.edges) + _endpoint_edges(scale)
    outcome = solve_difference_constraints(len(scale.levels), edges)
    if outcome.cycle is not None:
        return report_from_cycle(outcome.cycle)
    assert outcome.potentials is not None
    zero = scale.index(scale.zero_level)
    one = scale.index(scale.one_level)
    if outcome.potentials[one] - outcome.potentials[zero] <= 0:
        raise DegenerateEndpoints(
            f"judgments never force {scale.one_level!r} strictly above "
            f"{scale.zero_level!r} on {scale.criterion_id!r}"
        )
    values = normalize_potentials(outcome.potentials, zero, one)
    return UtilityScale(scale.criterion_id, dict(zip(scale.levels, values)))


def utilities_from_ratios(
    scale: AttributeScale, ratios: Sequence[RatioJudgment]
) -> UtilityScale:
    """Read utilities directly off ratios against the endpoint span.

    Each non-endpoint level needs a ratio comparing (level, zero) to
    (one, zero); that ratio is the utility itself.  Endpoints are pinned
    to 0 and 1 regardless.
    """
    anchored: dict[str, float] = {}
    for r in ratios:
        if r.y == scale.zero_level and (r.w, r.z) == (scale.one_level, scale.zero_level):
            anchored.setdefault(r.x, float(r.k))
    u: dict[str, float] = {}
    for level in scale.levels:
        if level == scale.zero_level:
            u[level] = 0.0
        elif level == scale.one_level:
            u[level] = 1.0
        elif level in anchored:
            value = anchored[level]
            if value > 1.0:
                raise OutOfRange(
                    f"ratio {value!r} for level {level!r} exceeds the span to the best level"
                )
            u[level] = value
        else:
            raise MissingRatio(
                f"no ratio against the endpoint span for level {level!r} "
                f"of {scale.criterion_id!r}"
            )
    return UtilityScale(scale.criterion_id, u)


@dataclass(frozen=True)
class ChainViolation:
    """A multiplicativity break: composing ``first`` with ``second``
    disagrees with the directly judged ``direct`` ratio."""

    first: object
    second: object
    direct: object
    product: float
    relative_error: float


@dataclass(frozen=True)
class RatioConsistencyReport:
    violations: tuple[ChainViolation, ...]

    @property
    def consistent(self) -> bool:
        return not self.violations


def chain_violations(
    entries: Sequence[tuple[tuple, tuple, float, object]], tol: float
) -> RatioConsistencyReport:
    """Generic multiplicative-chaining check.

    ``entries`` are (numerator key, denominator key, k, original); for
    every chain first=(a,b), second=(b,c) with a direct (a,c) present,
    ``k_first * k_second`` must match the direct ratio within relative
    tolerance ``tol``.
    """
    by_pair: dict[tuple, list[tuple[tuple, float, object]]] = {}
    direct: dict[tuple[tuple, tuple], tuple[float, object]] = {}
    for num, den, k, original in entries:
        by_pair.setdefault(num, []).append((den, k, original))
        direct.setdefault((num, den), (k, original))
    violations: list[ChainViolation] = []
    for num, links in by_pair.items():
        for den, k1, first in links:
            for tail, k2, second in by_pair.get(den, ()):
                hit = direct.get((num, tail))
                if hit is None:
                    continue
                k3, original = hit
                product = k1 * k2
                err = abs(k3 - product) / abs(product)
                if err > tol:
                    violations.append(ChainViolation(first, second, original, product, err))
    return RatioConsistencyReport(tuple(violations))


def check_ratio_consistency(
    ratios: Sequence[RatioJudgment], tol: float = 1e-9
) -> RatioConsistencyReport:
    """Check multiplicativity of chained difference ratios: the ratio of
    (x, y) to (w, z) times the ratio of (w, z) to (r, s) must equal the
    directly judged ratio of (x, y) to (r, s)."""
    entries = [((r.x, r.y), (r.w, r.z), float(r.k), r) for r in ratios]
    return chain_violations(entries, tol)
