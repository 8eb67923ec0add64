"""Capacity identification from scored acts.

Fits a capacity to (profile, score) pairs by least squares. For a fixed
profile the Choquet value is linear in the coalition measures, so the
problem is a convex quadratic program over mu(A) for the proper nonempty
coalitions, subject to covering-pair monotonicity. A sequential
quadratic-programming pass gets close; an exact active-set polish on the
KKT system then drives the residual down to numerical noise. The final
answer is picked among {polished, raw, baseline, uniform additive} by
objective value over the feasible candidates, which makes the
baseline-dominance guarantee unconditional.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import optimize

from .errors import DimensionMismatch, OutOfRange, TooLarge
from .setfn import Capacity, iter_covering_pairs, make_capacity

FIT_LIMIT = 6
PROFILE_TOL = 1e-12
FEASIBILITY_TOL = 1e-9
_POLISH_ROUNDS = 40
_ACTIVE_SLACK = 1e-8


@dataclass(frozen=True)
class ScoredAct:
    """An act given directly by satisfaction degrees, with its overall score."""

    profile: tuple[float, ...]
    score: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "profile", tuple(float(v) for v in self.profile))
        object.__setattr__(self, "score", float(self.score))
        for v in self.profile:
            if not -PROFILE_TOL <= v <= 1.0 + PROFILE_TOL:
                raise OutOfRange(f"satisfaction degree {v!r} is outside [0, 1]")
        if not math.isfinite(self.score):
            raise ValueError(f"score must be finite, got {self.score!r}")


@dataclass(frozen=True)
class FitOptions:
    max_iterations: int = 100_000
    improvement_tol: float = 1e-12
    baseline: Capacity | None = None

    def __post_init__(self) -> None:
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")
        if self.improvement_tol < 0.0:
            raise ValueError("improvement_tol must be nonnegative")


@dataclass(frozen=True)
class FitReport:
    capacity: Capacity
    rmse: float
    max_violation: float
    iterations: int


def _design_row(n: int, x: Sequence[float]) -> tuple[dict[int, float], float]:
    """Choquet value of ``x`` as an affine function of the measure table.

    Returns (coalition -> coefficient, constant), the constant carrying the
    mu(N) = 1 term. Equal profile values are grouped so the coefficients
    never depend on how a sort breaks ties.
    """
    full = (1 << n) - 1
    order = sorted(range(n), key=lambda i: (x[i], i))
    coef: dict[int, float] = {}
    const = 0.0
    tail = full
    prev = 0.0
    i = 0
    while i < n:
        v = float(x[order[i]])
        if tail == full:
            const = v
        else:
            coef[tail] = coef.get(tail, 0.0) + (v - prev)
        prev = v
        while i < n and x[order[i]] == v:
            tail &= ~(1 << order[i])
            i += 1
    return coef, const


def _build_system(n, data):
    """Least-squares matrix over the free coalitions, plus the constraint
    rows G nu >= h covering monotonicity and the rim bounds."""
    full = (1 << n) - 1
    masks = [s for s in range(1 << n) if s not in (0, full)]
    col = {s: j for j, s in enumerate(masks)}
    A = np.zeros((len(data), len(masks)))
    b = np.zeros(len(data))
    for r, act in enumerate(data):
        coef, const = _design_row(n, act.profile)
        b[r] = act.score - const
        for s, c in coef.items():
            A[r, col[s]] = c
    rows = []
    h = []
    for small, large in iter_covering_pairs(n):
        row = np.zeros(len(masks))
        if small == 0:
            row[col[large]] = 1.0
            h.append(0.0)
        elif large == full:
            row[col[small]] = -1.0
            h.append(-1.0)
        else:
            row[col[large]] = 1.0
            row[col[small]] = -1.0
            h.append(0.0)
        rows.append(row)
    return A, b, np.array(rows), np.array(h), masks


def _variable_violation(G, h, nu):
    return max(0.0, float(np.max(h - G @ nu)))


def _solve_sqp(A, b, G, h, start, options):
    gram = A.T @ A
    moment = A.T @ b

    def objective(nu):
        r = A @ nu - b
        return float(r @ r)

    def gradient(nu):
        return 2.0 * (gram @ nu - moment)

    constraints = [{"type": "ineq", "fun": lambda nu: G @ nu - h, "jac": lambda nu: G}]
    try:
        res = optimize.minimize(
            objective,
            start,
            jac=gradient,
            constraints=constraints,
            method="SLSQP",
            options={"maxiter": options.max_iterations, "ftol": options.improvement_tol},
        )
        return np.asarray(res.x, dtype=float), max(1, int(res.nit))
    except Exception:
        return start.copy(), 1


def _polish(A, b, G, h, seed, improvement_tol):
    """Refine by treating near-tight constraints as equalities and solving
    the KKT system exactly; keep a step only if it stays feasible and does
    not worsen the objective."""
    best = seed
    best_obj = float(np.sum((A @ best - b) ** 2))
    rounds = 0
    for _ in range(_POLISH_ROUNDS):
        rounds += 1
        active = np.where(G @ best - h <= _ACTIVE_SLACK)[0]
        Ga = G[active]
        kkt = np.vstack(
            [
                np.hstack([2.0 * (A.T @ A), Ga.T]),
                np.hstack([Ga, np.zeros((len(active), len(active)))]),
            ]
        )
        rhs = np.concatenate([2.0 * (A.T @ b), h[active]])
        solution, *_ = np.linalg.lstsq(kkt, rhs, rcond=None)
        candidate = solution[: A.shape[1]]
        if _variable_violation(G, h, candidate) > 1e-12:
            break
        obj = float(np.sum((A @ candidate - b) ** 2))
        if obj > best_obj:
            break
        gained = best_obj - obj
        best, best_obj = candidate, obj
        if gained < improvement_tol:
            break
    return best, rounds


def _table_violation(n, values):
    worst = 0.0
    for small, large in iter_covering_pairs(n):
        worst = max(worst, values[small] - values[large])
    return worst


def fit_capacity(
    n: int, data: Sequence[ScoredAct], options: FitOptions | None = None
) -> FitReport:
    """Fit a capacity to scored acts by monotone least squares.

    The returned capacity is always feasible within 1e-9 and its objective
    never exceeds that of the uniform additive capacity, nor that of the
    baseline in ``options`` when one is given.
    """
    if n > FIT_LIMIT:
        raise TooLarge(f"capacity fitting supports up to {FIT_LIMIT} criteria, got {n}")
    if not data:
        raise ValueError("at least one scored act is required")
    if options is None:
        options = FitOptions()
    for act in data:
        if len(act.profile) != n:
            raise DimensionMismatch(
                f"expected profiles of length {n}, got {len(act.profile)}"
            )

    full = (1 << n) - 1
    if n == 1:
        # No free coalitions: the capacity is forced to (0, 1).
        capacity = make_capacity(1, (0.0, 1.0))
        rmse = math.sqrt(
            math.fsum((act.profile[0] - act.score) ** 2 for act in data) / len(data)
        )
        return FitReport(capacity, rmse, 0.0, 0)

    A, b, G, h, masks = _build_system(n, data)
    uniform = np.array([bin(s).count("1") / n for s in masks])

    fitted, iterations = _solve_sqp(A, b, G, h, uniform.copy(), options)
    polished, rounds = _polish(A, b, G, h, fitted, options.improvement_tol)
    iterations += rounds

    candidates = [polished, fitted, uniform]
    if options.baseline is not None:
        if options.baseline.n != n:
            raise DimensionMismatch(
                f"baseline capacity has {options.baseline.n} criteria, expected {n}"
            )
        candidates.append(np.array([options.baseline.values[s] for s in masks]))

    feasible = [nu for nu in candidates if _variable_violation(G, h, nu) <= FEASIBILITY_TOL]
    chosen = min(feasible, key=lambda nu: float(np.sum((A @ nu - b) ** 2)))

    values = [0.0] * (1 << n)
    values[full] = 1.0
    for j, s in enumerate(masks):
        values[s] = min(1.0, max(0.0, float(chosen[j])))
    residual = A @ np.array([values[s] for s in masks]) - b
    rmse = math.sqrt(float(residual @ residual) / len(data))
    violation = _table_violation(n, values)
    capacity = make_capacity(n, values, tol=FEASIBILITY_TOL)
    return FitReport(capacity, rmse, violation, iterations)
