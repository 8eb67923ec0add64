"""The assembled decision model: utility scales plus a capacity.

Acts are described by level ids per criterion; evaluation maps them to
satisfaction degrees through the scales and aggregates with the Choquet
integral. Importance and interaction indices summarize the capacity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

from .aggregate import choquet
from .errors import IncompleteAct, OutOfRange, SameCriterion
from .intra import UtilityScale
from .setfn import Capacity, CriteriaSet, DimensionMismatch

SCALE_TOL = 1e-9


@dataclass(frozen=True)
class Act:
    """One alternative, assigning a level id to each criterion."""

    assignments: Mapping[str, str]

    def __post_init__(self) -> None:
        object.__setattr__(self, "assignments", dict(self.assignments))
        for cid, level in self.assignments.items():
            if not isinstance(cid, str) or not cid or not isinstance(level, str):
                raise ValueError(f"bad assignment {cid!r}: {level!r}")


@dataclass(frozen=True)
class DecisionModel:
    """Criteria with their elicited utility scales and capacity.

    Scales may be supplied in any order; they are stored aligned with the
    criteria. Utilities must sit in [0, 1] up to solver tolerance.
    """

    criteria: CriteriaSet
    scales: tuple[UtilityScale, ...]
    capacity: Capacity

    def __post_init__(self) -> None:
        by_id = {}
        for scale in self.scales:
            if scale.criterion_id in by_id:
                raise ValueError(f"duplicate scale for criterion {scale.criterion_id!r}")
            by_id[scale.criterion_id] = scale
        if set(by_id) != set(self.criteria.ids):
            raise ValueError(
                f"scales cover {sorted(by_id)}, criteria are {sorted(self.criteria.ids)}"
            )
        object.__setattr__(
            self, "scales", tuple(by_id[cid] for cid in self.criteria.ids)
        )
        if self.capacity.n != self.criteria.n:
            raise DimensionMismatch(
                f"capacity over {self.capacity.n} criteria, model has {self.criteria.n}"
            )
        for scale in self.scales:
            for level, u in scale.u.items():
                if not -SCALE_TOL <= u <= 1.0 + SCALE_TOL:
                    raise OutOfRange(
                        f"utility {u!r} at {scale.criterion_id!r}:{level!r} "
                        f"is outside [0, 1]"
                    )

    def scale_for(self, criterion_id: str) -> UtilityScale:
        return self.scales[self.criteria.index(criterion_id)]


def evaluate(model: DecisionModel, act: Act) -> float:
    """Overall utility of an act: Choquet integral of its satisfaction
    degrees under the model's capacity."""
    missing = [cid for cid in model.criteria.ids if cid not in act.assignments]
    if missing:
        raise IncompleteAct(f"act has no level for {missing}")
    degrees = tuple(
        scale.value(act.assignments[cid])
        for cid, scale in zip(model.criteria.ids, model.scales)
    )
    return choquet(model.capacity.game, degrees)


def rank(
    model: DecisionModel, acts: Sequence[Act]
) -> tuple[tuple[Act, float], ...]:
    """Acts with their overall utilities, best first; ties keep input order."""
    scored = [(act, evaluate(model, act)) for act in acts]
    return tuple(sorted(scored, key=lambda pair: pair[1], reverse=True))


def shapley(capacity: Capacity) -> tuple[float, ...]:
    """Shapley importance of each criterion.

    ``phi_i`` averages the marginal contribution of i over coalition sizes;
    the weights |A|! (n-|A|-1)! / n! make the vector sum to 1.
    """
    n = capacity.n
    weights = [
        math.factorial(k) * math.factorial(n - k - 1) / math.factorial(n)
        for k in range(n)
    ]
    out = []
    for i in range(n):
        bit = 1 << i
        terms = [
            weights[bin(s).count("1")] * (capacity.values[s | bit] - capacity.values[s])
            for s in range(1 << n)
            if not s & bit
        ]
        out.append(math.fsum(terms))
    return tuple(out)


def interaction(capacity: Capacity, i: int, j: int) -> float:
    """Pairwise interaction index between criteria ``i`` and ``j``.

    Positive values mean the pair is worth more together than its parts,
    negative values mean redundancy; additive capacities give 0.
    """
    n = capacity.n
    if not (0 <= i < n and 0 <= j < n):
        raise ValueError(f"criterion indices must be in 0..{n - 1}, got {i} and {j}")
    if i == j:
        raise SameCriterion(f"interaction needs two distinct criteria, got {i} twice")
    pair = (1 << i) | (1 << j)
    weights = [
        math.factorial(k) * math.factorial(n - k - 2) / math.factorial(n - 1)
        for k in range(n - 1)
    ]
    terms = []
    for s in range(1 << n):
        if s & pair:
            continue
        gain = (capacity.values[s | pair] + capacity.values[s]) - (
            capacity.values[s | (1 << i)] + capacity.values[s | (1 << j)]
        )
        terms.append(weights[bin(s).count("1")] * gain)
    return math.fsum(terms)
