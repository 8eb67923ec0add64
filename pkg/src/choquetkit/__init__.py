"""Multicriteria decision aid with Choquet-integral aggregation."""

from .aggregate import (
    Aggregator,
    AxiomCheckConfig,
    choquet,
    stock_aggregator,
    theorem1_suite,
    weighted_sum,
    zero_one_order_statistic,
)
from .errors import ChoquetkitError
from .identify import FitOptions, FitReport, ScoredAct, fit_capacity
from .inter import capacity_from_ratios, make_inter_items, solve_capacity_scale
from .intra import (
    AttributeScale,
    DifferenceJudgment,
    JudgmentCategory,
    RatioJudgment,
    UtilityScale,
    build_constraint_graph,
    make_intra_items,
    solve_scale,
    utilities_from_ratios,
)
from .model import Act, DecisionModel, evaluate, interaction, rank, shapley
from .setfn import (
    Capacity,
    CriteriaSet,
    Game,
    MobiusRep,
    additive_from_weights,
    enumerate_zero_one_capacities,
    from_mobius,
    linear_combine,
    make_capacity,
    mobius,
    unanimity,
)

__all__ = [
    "Act",
    "Aggregator",
    "AttributeScale",
    "AxiomCheckConfig",
    "Capacity",
    "ChoquetkitError",
    "CriteriaSet",
    "DecisionModel",
    "DifferenceJudgment",
    "FitOptions",
    "FitReport",
    "Game",
    "JudgmentCategory",
    "MobiusRep",
    "RatioJudgment",
    "ScoredAct",
    "UtilityScale",
    "additive_from_weights",
    "build_constraint_graph",
    "capacity_from_ratios",
    "choquet",
    "enumerate_zero_one_capacities",
    "evaluate",
    "fit_capacity",
    "from_mobius",
    "interaction",
    "linear_combine",
    "make_capacity",
    "make_inter_items",
    "make_intra_items",
    "mobius",
    "rank",
    "shapley",
    "solve_capacity_scale",
    "solve_scale",
    "stock_aggregator",
    "theorem1_suite",
    "unanimity",
    "weighted_sum",
    "zero_one_order_statistic",
]

__version__ = "0.1.0"
