"""Trajectory evaluation and exact worst-case competitive ratios.

The adversary is the deterministic worst case of the crash-fault model:
it places the target and silences the first f distinct robots that walk
over it, so detection happens at the (f+1)-st distinct first-visit.

Between consecutive turning distances the detection time has the form
c + x with c constant, hence tau(x)/x is decreasing on every piece and
the supremum over [1, N] is attained at x = 1 or just above a turning
distance.  `worst_ratio` enumerates exactly those breakpoints;
`dense_grid_ratio` is the brute-force oracle used to cross-check it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .formulas import InstanceParams
from .strategy import RoundPlan, Strategy, TurnSequence

__all__ = [
    "Target",
    "DetectionReport",
    "first_visit_time",
    "detection_time",
    "worst_ratio",
    "sweep_rows",
    "dense_grid_ratio",
]


@dataclass(frozen=True)
class Target:
    """A hidden target: ray in 1..m for round plans, +1/-1 for line strategies."""

    ray: int
    x: float

    def __post_init__(self) -> None:
        if not self.x >= 1.0:
            raise ValueError(f"target distance must be >= 1, got {self.x}")


@dataclass(frozen=True)
class DetectionReport:
    """Adversarial detection time at one target; tau is None if undetected."""

    tau: float | None
    visitors: tuple[tuple[int, float], ...]
    ratio: float | None


def first_visit_time(
    strategy: Strategy, target: Target, just_above: bool = False
) -> float | None:
    """Earliest time the trajectory reaches the target, None if never.

    With just_above set, a pass only counts if its turning distance
    strictly exceeds x: the right-limit semantics used for computing
    suprema at half-open breakpoint boundaries.
    """
    x = target.x
    elapsed = 0.0
    if isinstance(strategy, RoundPlan):
        for rd in strategy.rounds:
            if rd.ray == target.ray and (rd.turn > x if just_above else rd.turn >= x):
                return 2.0 * elapsed + x
            elapsed += rd.turn
        return None
    if isinstance(strategy, TurnSequence):
        if target.ray not in (1, -1):
            raise ValueError("line targets use ray=+1 or ray=-1")
        for i, turn in enumerate(strategy.turns):
            if strategy.side(i) == target.ray and (
                turn > x if just_above else turn >= x
            ):
                return 2.0 * elapsed + x
            elapsed += turn
        return None
    raise TypeError(f"unsupported strategy type {type(strategy)!r}")


def detection_time(
    strategies: Sequence[Strategy],
    p: InstanceParams,
    target: Target,
    just_above: bool = False,
) -> DetectionReport:
    """(f+1)-st distinct first-visit time: the first f visitors stay silent."""
    if len(strategies) != p.k:
        raise ValueError(f"expected {p.k} strategies, got {len(strategies)}")
    arrivals = []
    for r, strat in enumerate(strategies):
        t = first_visit_time(strat, target, just_above)
        if t is not None:
            arrivals.append((t, r))
    arrivals.sort()
    visitors = tuple((r, t) for t, r in arrivals)
    if len(arrivals) < p.f + 1:
        return DetectionReport(None, visitors, None)
    tau = arrivals[p.f][0]
    return DetectionReport(tau, visitors, tau / target.x)


def _ray_of_turn(strategy: Strategy, i: int) -> int:
    if isinstance(strategy, RoundPlan):
        return strategy.rounds[i].ray
    return strategy.side(i)


def _turn_distances(strategy: Strategy) -> list[float]:
    if isinstance(strategy, RoundPlan):
        return [rd.turn for rd in strategy.rounds]
    return list(strategy.turns)


def _candidate_targets(
    strategies: Sequence[Strategy], p: InstanceParams, N: float
) -> list[tuple[Target, bool]]:
    if any(isinstance(s, TurnSequence) for s in strategies):
        rays: list[int] = [1, -1]
    else:
        rays = list(range(1, p.m + 1))
    cands: list[tuple[Target, bool]] = [(Target(ray, 1.0), False) for ray in rays]
    seen: set[tuple[int, float]] = set()
    for strat in strategies:
        turns = _turn_distances(strat)
        for i, turn in enumerate(turns):
            if 1.0 <= turn < N:
                key = (_ray_of_turn(strat, i), turn)
                if key not in seen:
                    seen.add(key)
                    cands.append((Target(key[0], key[1]), True))
    return cands


def worst_ratio(
    strategies: Sequence[Strategy], p: InstanceParams, N: float
) -> tuple[float, Target]:
    """Exact sup of tau(x)/x over targets with 1 <= x <= N, with witness.

    Returns (inf, witness) as the uncovered signal if some candidate
    target is never detected.
    """
    best_ratio = -math.inf
    best_target: Target | None = None
    for target, just_above in _candidate_targets(strategies, p, N):
        report = detection_time(strategies, p, target, just_above)
        if report.tau is None:
            return math.inf, target
        if report.ratio > best_ratio:
            best_ratio = report.ratio
            best_target = target
    assert best_target is not None
    return best_ratio, best_target


def sweep_rows(
    strategies: Sequence[Strategy],
    p: InstanceParams,
    N: float,
    dense: bool = False,
    rel_step: float = 1e-3,
) -> list[tuple[Target, bool, DetectionReport]]:
    """Per-target rows backing the sweep CSV: breakpoints or a dense grid."""
    if dense:
        if any(isinstance(s, TurnSequence) for s in strategies):
            rays: list[int] = [1, -1]
        else:
            rays = list(range(1, p.m + 1))
        n_pts = max(2, int(math.log(N) / rel_step) + 1)
        cands = [
            (Target(ray, math.exp(math.log(N) * i / (n_pts - 1))), False)
            for ray in rays
            for i in range(n_pts)
        ]
    else:
        cands = _candidate_targets(strategies, p, N)
    return [
        (tgt, ja, detection_time(strategies, p, tgt, ja)) for tgt, ja in cands
    ]


def dense_grid_ratio(
    strategies: Sequence[Strategy],
    p: InstanceParams,
    N: float,
    rel_step: float = 1e-3,
) -> float:
    """Brute-force sup of tau(x)/x on a geometric grid; oracle for worst_ratio."""
    best = -math.inf
    for _, _, report in sweep_rows(strategies, p, N, dense=True, rel_step=rel_step):
        if report.ratio is not None and report.ratio > best:
            best = report.ratio
    return best
