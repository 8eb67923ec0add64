"""Choquet-integral aggregation and the axiom-checking harness.

``choquet`` evaluates the discrete Choquet integral of a real vector
against any game (signed values allowed).  The ``check_*`` functions
probe an aggregator for linearity in the measure, increasingness,
proper weighting on binary profiles, and stability under positive
linear rescaling, reporting counterexamples instead of raising.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, replace
from typing import Callable, Sequence

from .errors import DimensionMismatch, NotZeroOne
from .setfn import Capacity, Game, iter_coalitions, linear_combine, make_capacity

AGGREGATOR_NAMES = ("choquet", "wsum", "min", "max", "mean")


def choquet(g: Game, x: Sequence[float]) -> float:
    """Discrete Choquet integral of ``x`` with respect to ``g``.

    Equal entries of ``x`` are processed as one block, so the result is
    invariant under tie-breaking by construction.  On a binary profile
    the sum collapses to a single table lookup, and for a 0-1 capacity
    the result is bitwise equal to one entry of ``x``.
    """
    n = g.n
    if len(x) != n:
        raise DimensionMismatch(f"expected a vector of length {n}, got {len(x)}")
    order = sorted(range(n), key=lambda i: (x[i], i))
    total = 0.0
    tail = g.full  # criteria whose value has not been passed yet
    i = 0
    while i < n:
        v = float(x[order[i]])
        before = g.values[tail]
        while i < n and x[order[i]] == v:
            tail &= ~(1 << order[i])
            i += 1
        total += v * (before - g.values[tail])
    return total


def weighted_sum(w: Sequence[float], x: Sequence[float]) -> float:
    """Dot product of a weight vector with a score vector."""
    if len(w) != len(x):
        raise DimensionMismatch(f"weight length {len(w)} does not match vector length {len(x)}")
    return math.fsum(float(a) * float(b) for a, b in zip(w, x))


def zero_one_order_statistic(mu01: Capacity, x: Sequence[float]) -> tuple[float, int]:
    """Evaluate a 0-1 capacity as the order statistic it induces.

    Returns ``(x[sigma(k)], k)`` with ``sigma`` the ascending sort of
    ``x`` and ``k`` the largest 1-based position whose top tail
    ``{sigma(k), ..., sigma(n)}`` has capacity 1.  Coincides with the
    Choquet integral exactly.
    """
    n = mu01.n
    if len(x) != n:
        raise DimensionMismatch(f"expected a vector of length {n}, got {len(x)}")
    if not mu01.is_zero_one():
        raise NotZeroOne("capacity takes values outside {0, 1}")
    order = sorted(range(n), key=lambda i: (x[i], i))
    tail = mu01.full
    k = 1  # the full tail always has capacity 1
    for pos, crit in enumerate(order, start=1):
        if mu01[tail] == 1.0:
            k = pos
        tail &= ~(1 << crit)
    return float(x[order[k - 1]]), k


# -- axiom checks --


@dataclass(frozen=True)
class Aggregator:
    """A named aggregation operator ``evaluate(game, x) -> real``."""

    name: str
    evaluate: Callable[[Game, Sequence[float]], float]


@dataclass(frozen=True)
class AxiomCheckConfig:
    """Sampling plan for the randomized axiom checks."""

    samples: int = 1000
    alpha_range: tuple[float, float] = (0.1, 4.0)
    beta_range: tuple[float, float] = (-5.0, 5.0)
    gamma_range: tuple[float, float] = (-2.0, 2.0)
    delta_range: tuple[float, float] = (-2.0, 2.0)
    tolerance: float = 1e-9
    seed: int = 0

    def __post_init__(self) -> None:
        if self.samples < 1:
            raise ValueError("samples must be at least 1")
        if self.tolerance < 0:
            raise ValueError("tolerance must be nonnegative")
        for name in ("alpha_range", "beta_range", "gamma_range", "delta_range"):
            lo, hi = getattr(self, name)
            if not lo <= hi:
                raise ValueError(f"{name} must be a nonempty interval, got ({lo}, {hi})")
        if self.alpha_range[0] <= 0:
            raise ValueError("alpha_range must be strictly positive")


@dataclass(frozen=True)
class Counterexample:
    inputs: tuple
    expected: float
    got: float
    deviation: float


@dataclass(frozen=True)
class AxiomReport:
    axiom: str  # one of LM, In, PW, weakSPL, SPL
    passed: bool
    counterexamples: tuple[Counterexample, ...]


def _report(axiom: str, counterexamples: list[Counterexample]) -> AxiomReport:
    return AxiomReport(axiom, not counterexamples, tuple(counterexamples))


def _as_game(mu: Capacity | Game) -> Game:
    return mu.game if isinstance(mu, Capacity) else mu


def _binary_profile(n: int, bits: int) -> tuple[float, ...]:
    return tuple(1.0 if bits >> i & 1 else 0.0 for i in range(n))


def _uniform(rng: random.Random, interval: tuple[float, float]) -> float:
    return rng.uniform(*interval)


def check_pw(
    F: Aggregator, mu: Capacity | Game, cfg: AxiomCheckConfig | None = None
) -> AxiomReport:
    """Proper weighting: on each binary profile the aggregator must return
    the value the measure assigns to the coalition scoring 1."""
    cfg = cfg or AxiomCheckConfig()
    g = _as_game(mu)
    bad: list[Counterexample] = []
    for bits in iter_coalitions(g.n):
        expected = g.values[bits]
        got = F.evaluate(g, _binary_profile(g.n, bits))
        dev = abs(got - expected)
        if not dev <= cfg.tolerance:
            bad.append(Counterexample((bits,), expected, got, dev))
    return _report("PW", bad)


def check_in(
    F: Aggregator, mu: Capacity | Game, cfg: AxiomCheckConfig | None = None
) -> AxiomReport:
    """Increasingness: raising any entries must not lower the output."""
    cfg = cfg or AxiomCheckConfig()
    g = _as_game(mu)
    rng = random.Random(cfg.seed)
    bad: list[Counterexample] = []
    for _ in range(cfg.samples):
        x = tuple(rng.random() for _ in range(g.n))
        hi = tuple(v + rng.random() for v in x)
        lo_val = F.evaluate(g, x)
        hi_val = F.evaluate(g, hi)
        if not lo_val <= hi_val + cfg.tolerance:
            bad.append(Counterexample((x, hi), lo_val, hi_val, lo_val - hi_val))
    return _report("In", bad)


def check_weak_spl(
    F: Aggregator, mu: Capacity | Game, cfg: AxiomCheckConfig | None = None
) -> AxiomReport:
    """Stability on two-level profiles: scaling a binary profile to the
    levels ``(alpha + beta, beta)`` must scale the output the same way."""
    cfg = cfg or AxiomCheckConfig()
    g = _as_game(mu)
    rng = random.Random(cfg.seed)
    bad: list[Counterexample] = []
    size = 1 << g.n
    for _ in range(cfg.samples):
        bits = rng.randrange(size)
        alpha = _uniform(rng, cfg.alpha_range)
        beta = _uniform(rng, cfg.beta_range)
        x = tuple(alpha + beta if bits >> i & 1 else beta for i in range(g.n))
        got = F.evaluate(g, x)
        expected = alpha * F.evaluate(g, _binary_profile(g.n, bits)) + beta
        dev = abs(got - expected)
        if not dev <= cfg.tolerance:
            bad.append(Counterexample((bits, alpha, beta), expected, got, dev))
    return _report("weakSPL", bad)


def check_spl(
    F: Aggregator, mu: Capacity | Game, cfg: AxiomCheckConfig | None = None
) -> AxiomReport:
    """Full stability: ``F(alpha x + beta) = alpha F(x) + beta`` on
    arbitrary profiles, not only binary ones."""
    cfg = cfg or AxiomCheckConfig()
    g = _as_game(mu)
    rng = random.Random(cfg.seed)
    bad: list[Counterexample] = []
    for _ in range(cfg.samples):
        x = tuple(rng.random() for _ in range(g.n))
        alpha = _uniform(rng, cfg.alpha_range)
        beta = _uniform(rng, cfg.beta_range)
        scaled = tuple(alpha * v + beta for v in x)
        got = F.evaluate(g, scaled)
        expected = alpha * F.evaluate(g, x) + beta
        dev = abs(got - expected)
        if not dev <= cfg.tolerance:
            bad.append(Counterexample((x, alpha, beta), expected, got, dev))
    return _report("SPL", bad)


def check_lm(
    F: Aggregator,
    pair: tuple[Capacity | Game, Capacity | Game],
    cfg: AxiomCheckConfig | None = None,
) -> AxiomReport:
    """Linearity in the measure: evaluating under a linear combination of
    two games must equal the same combination of the evaluations."""
    cfg = cfg or AxiomCheckConfig()
    g1, g2 = (_as_game(m) for m in pair)
    if g1.n != g2.n:
        raise DimensionMismatch(f"games over {g1.n} and {g2.n} criteria cannot be paired")
    rng = random.Random(cfg.seed)
    bad: list[Counterexample] = []
    for _ in range(cfg.samples):
        x = tuple(rng.random() for _ in range(g1.n))
        gamma = _uniform(rng, cfg.gamma_range)
        delta = _uniform(rng, cfg.delta_range)
        combined = linear_combine([(gamma, g1), (delta, g2)])
        got = F.evaluate(combined, x)
        expected = gamma * F.evaluate(g1, x) + delta * F.evaluate(g2, x)
        dev = abs(got - expected)
        if not dev <= cfg.tolerance:
            bad.append(Counterexample((x, gamma, delta), expected, got, dev))
    return _report("LM", bad)


@dataclass(frozen=True)
class SuiteSummary:
    """Outcome of the full characterization suite for one aggregator."""

    reports: tuple[AxiomReport, ...]
    choquet_deviation: float | None
    passed: bool

    def report(self, axiom: str) -> AxiomReport:
        for r in self.reports:
            if r.axiom == axiom:
                return r
        raise KeyError(axiom)


def random_capacity(rng: random.Random, n: int) -> Capacity:
    """A random capacity: uniform draws made monotone by running a
    maximum over subsets, with pinned endpoints."""
    size = 1 << n
    values = [0.0] * size
    for s in range(1, size - 1):
        values[s] = rng.random()
    values[size - 1] = 1.0
    for s in range(1, size):
        for i in range(n):
            bit = 1 << i
            if s & bit:
                values[s] = max(values[s], values[s ^ bit])
    return make_capacity(n, values)


def _merge(axiom: str, reports: list[AxiomReport]) -> AxiomReport:
    bad = [ce for r in reports for ce in r.counterexamples]
    return AxiomReport(axiom, all(r.passed for r in reports), tuple(bad))


def theorem1_suite(
    F: Aggregator,
    cfg: AxiomCheckConfig | None = None,
    *,
    n: int = 3,
    capacities: Sequence[Capacity] | None = None,
) -> SuiteSummary:
    """Run all four axiom checks over sampled capacities; when every
    check passes, also measure the worst disagreement with the Choquet
    integral, which the axioms together force the aggregator to equal.
    """
    cfg = cfg or AxiomCheckConfig()
    rng = random.Random(cfg.seed)
    if capacities is None:
        capacities = [random_capacity(rng, n) for _ in range(10)]
    caps = list(capacities)
    per_cap_cfg = replace(cfg, samples=max(1, cfg.samples // len(caps)))
    pw = _merge("PW", [check_pw(F, c, per_cap_cfg) for c in caps])
    inc = _merge("In", [check_in(F, c, per_cap_cfg) for c in caps])
    wspl = _merge("weakSPL", [check_weak_spl(F, c, per_cap_cfg) for c in caps])
    lm_pairs = [(caps[i], caps[(i + 1) % len(caps)]) for i in range(len(caps))]
    lm = _merge("LM", [check_lm(F, p, per_cap_cfg) for p in lm_pairs])
    reports = (lm, inc, pw, wspl)
    deviation = None
    if all(r.passed for r in reports):
        worst = 0.0
        for k in range(cfg.samples):
            cap = caps[k % len(caps)]
            x = tuple(rng.random() for _ in range(cap.n))
            worst = max(worst, abs(F.evaluate(cap.game, x) - choquet(cap.game, x)))
        deviation = worst
    passed = deviation is not None and deviation <= cfg.tolerance
    return SuiteSummary(reports, deviation, passed)


# -- stock aggregators for the command-line axiom runner --


def _wsum_from_singletons(g: Game, x: Sequence[float]) -> float:
    weights = [g.values[1 << i] for i in range(g.n)]
    return weighted_sum(weights, x)


def stock_aggregator(name: str) -> Aggregator:
    """Aggregators selectable by name: the Choquet integral and four
    foils (singleton-weight sum, min, max, arithmetic mean)."""
    table: dict[str, Callable[[Game, Sequence[float]], float]] = {
        "choquet": choquet,
        "wsum": _wsum_from_singletons,
        "min": lambda g, x: float(min(x)),
        "max": lambda g, x: float(max(x)),
        "mean": lambda g, x: math.fsum(x) / len(x),
    }
    if name not in table:
        raise KeyError(f"unknown aggregator {name!r}; choose from {', '.join(AGGREGATOR_NAMES)}")
    return Aggregator(name, table[name])
