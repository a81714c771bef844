"""Strategy representations and generators.

Two settings are supported, mirroring the two covering relaxations:

* line: a robot alternates sides of the origin, turning at distances
  t_1 <= t_2 <= ...; it covers x once it has visited both x and -x.
* rays / one-ray-cover (ORC): a robot works in rounds, each an excursion
  origin -> turning point -> origin; repeat visits to a point only count
  after a return to the origin.

The cyclic exponential strategy of the tight upper bound is generated
here, together with normalization (drop unfruitful turns) and extraction
of the lambda-cover intervals that feed the covering machinery.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .formulas import CoverParams, InstanceParams

__all__ = [
    "TurnSequence",
    "Round",
    "RoundPlan",
    "CoverInterval",
    "Strategy",
    "make_exponential_strategy",
    "make_geometric_line_strategy",
    "normalize_line_strategy",
    "normalize_round_plan",
    "cover_intervals",
    "all_cover_intervals",
    "dumps_strategies",
    "loads_strategies",
    "save_strategies",
    "load_strategies",
]


@dataclass(frozen=True)
class TurnSequence:
    """Line strategy: turning distances, alternating sides.

    `turns` are magnitudes; the robot moves first toward the positive
    side unless `first_positive` is False (a mirrored strategy, accepted
    on input and flipped by normalization).
    """

    turns: tuple[float, ...]
    first_positive: bool = True

    def __post_init__(self) -> None:
        if any(t <= 0.0 for t in self.turns):
            raise ValueError("turning distances must be positive")

    def side(self, i: int) -> int:
        """+1 or -1: the side the i-th turn (0-based) lies on."""
        positive = (i % 2 == 0) == self.first_positive
        return 1 if positive else -1


@dataclass(frozen=True)
class Round:
    ray: int
    turn: float

    def __post_init__(self) -> None:
        if self.ray < 1:
            raise ValueError(f"ray index must be >= 1, got {self.ray}")
        if not self.turn > 0.0:
            raise ValueError(f"turn distance must be positive, got {self.turn}")


@dataclass(frozen=True)
class RoundPlan:
    """Rays/ORC strategy: a sequence of origin->turn->origin excursions."""

    rounds: tuple[Round, ...]


Strategy = Union[TurnSequence, RoundPlan]


@dataclass(frozen=True)
class CoverInterval:
    """The interval [left, right] a single turn/round lambda-covers."""

    robot: int
    round_index: int
    left: float
    right: float

    left_open = False

    def __post_init__(self) -> None:
        if self.left > self.right:
            raise ValueError(f"empty cover interval {self.left} > {self.right}")


def make_exponential_strategy(
    p: InstanceParams, alpha: float, horizon: float
) -> list[RoundPlan]:
    """Cyclic exponential strategy: robot r turns at alpha^(k(i+mj)+mr).

    Robot r starts at ray 1 and visits the rays cyclically; on its
    (j+3)-rd visit of ray i (cycles counted from j = -2, so that each ray
    gets passes well below distance 1) it turns at alpha^(k(i+mj)+mr).
    Each point of [1, horizon] on each ray ends up inside the assignment
    windows of exactly f+1 distinct robots.

    Generation stops after the first full cycle whose assignment windows
    lie entirely beyond the horizon.
    """
    p.require_searchable()
    if not alpha > 1.0:
        raise ValueError(f"alpha must be > 1, got {alpha}")
    if not (horizon >= 1.0 and math.isfinite(horizon)):
        raise ValueError(f"horizon must be finite and >= 1, got {horizon}")
    m, k, q = p.m, p.k, p.q
    log_alpha = math.log(alpha)
    log_h = math.log(horizon)
    plans = []
    for r in range(1, k + 1):
        rounds: list[Round] = []
        j = -2
        while True:
            cycle_beyond = True
            for i in range(1, m + 1):
                exponent = k * (i + m * j) + m * r
                rounds.append(Round(i, math.exp(exponent * log_alpha)))
                # assignment window for this turn starts at alpha^(exponent-q)
                if (exponent - q) * log_alpha <= log_h:
                    cycle_beyond = False
            if cycle_beyond:
                break
            j += 1
        plans.append(RoundPlan(tuple(rounds)))
    return plans


def make_geometric_line_strategy(
    p: InstanceParams, alpha: float, horizon: float
) -> list[TurnSequence]:
    """Staggered geometric line strategies for the two-ray setting.

    Robot r (0-based) turns at alpha^(j*k + r), alternating sides.  At the
    optimal alpha the cover intervals of all k robots tile every point of
    [1, horizon] exactly s = 2(f+1)-k times.
    """
    if p.m != 2:
        raise ValueError(f"line strategies need m=2, got m={p.m}")
    p.require_searchable()
    if not alpha > 1.0:
        raise ValueError(f"alpha must be > 1, got {alpha}")
    if not (horizon >= 1.0 and math.isfinite(horizon)):
        raise ValueError(f"horizon must be finite and >= 1, got {horizon}")
    k, s = p.k, p.s
    log_alpha = math.log(alpha)
    e_hi = math.log(horizon) / log_alpha + s + k
    out = []
    for r in range(k):
        j_lo = math.floor((-s - k - r) / k)
        j_hi = math.ceil((e_hi - r) / k)
        turns = tuple(
            math.exp((j * k + r) * log_alpha) for j in range(j_lo, j_hi + 1)
        )
        out.append(TurnSequence(turns))
    return out


def normalize_line_strategy(t: TurnSequence, c: CoverParams) -> TurnSequence:
    """Drop unfruitful and repeated turns; mirror to first-move-positive.

    The output covers at least what the input covered, its turns are
    strictly increasing, every turn is fruitful, and the map is
    idempotent.
    """
    mu = c.mu
    kept: list[float] = []
    total = 0.0
    for turn in t.turns:
        if kept and turn <= kept[-1]:
            continue
        cand_total = total + turn
        left = max(cand_total / mu, kept[-1] if kept else 0.0)
        if left > turn:
            continue
        kept.append(turn)
        total = cand_total
    return TurnSequence(tuple(kept), first_positive=True)


def normalize_round_plan(plan: RoundPlan, c: CoverParams) -> RoundPlan:
    """Drop rounds that lambda-cover nothing (in the ORC reading)."""
    mu = c.mu
    kept: list[Round] = []
    total = 0.0
    for rd in plan.rounds:
        if total / mu <= rd.turn:
            kept.append(rd)
            total += rd.turn
    return RoundPlan(tuple(kept))


def cover_intervals(
    strategy: Strategy, c: CoverParams, robot: int = 0
) -> list[CoverInterval]:
    """Intervals of distances the strategy lambda-covers, one per fruitful turn.

    Line: turn i covers [max((t_1+...+t_i)/mu, t_(i-1)), t_i] (visiting x
    and -x costs 2*(t_1+...+t_i) + x).  ORC: round i covers
    [(t_1+...+t_(i-1))/mu, t_i] (the outbound leg reaches x directly).
    Prefix sums run over the strategy as given, including unfruitful
    turns, so the union is exactly the covered set of *this* strategy.
    """
    mu = c.mu
    out: list[CoverInterval] = []
    if isinstance(strategy, TurnSequence):
        total = 0.0
        prev = 0.0
        for i, turn in enumerate(strategy.turns):
            total += turn
            left = max(total / mu, prev)
            if left <= turn:
                out.append(CoverInterval(robot, i, left, turn))
            prev = turn
    elif isinstance(strategy, RoundPlan):
        total = 0.0
        for i, rd in enumerate(strategy.rounds):
            left = total / mu
            if left <= rd.turn:
                out.append(CoverInterval(robot, i, left, rd.turn))
            total += rd.turn
    else:
        raise TypeError(f"unsupported strategy type {type(strategy)!r}")
    return out


def all_cover_intervals(
    strategies: Sequence[Strategy], c: CoverParams
) -> list[CoverInterval]:
    out: list[CoverInterval] = []
    for r, strat in enumerate(strategies):
        out.extend(cover_intervals(strat, c, robot=r))
    return out


# --- serialization: one robot per line ---------------------------------
#
# rays/ORC strategies are written as `ray:turn` pairs, line strategies as
# signed turning points with alternating signs.  Values use repr(), the
# shortest decimal that round-trips in binary64.


def _dump_one(strategy: Strategy) -> str:
    if isinstance(strategy, RoundPlan):
        return " ".join(f"{rd.ray}:{rd.turn!r}" for rd in strategy.rounds)
    parts = []
    for i, turn in enumerate(strategy.turns):
        parts.append(repr(turn) if strategy.side(i) > 0 else f"-{turn!r}")
    return " ".join(parts)


def dumps_strategies(strategies: Iterable[Strategy]) -> str:
    return "".join(_dump_one(s) + "\n" for s in strategies)


def _parse_line_tokens(tokens: list[str], lineno: int) -> TurnSequence:
    signs = []
    turns = []
    for tok in tokens:
        value = float(tok)
        if value == 0.0:
            raise ValueError(f"line {lineno}: zero turning point")
        signs.append(1 if value > 0 else -1)
        turns.append(abs(value))
    for a, b in zip(signs, signs[1:]):
        if a == b:
            raise ValueError(f"line {lineno}: turning points must alternate sides")
    return TurnSequence(tuple(turns), first_positive=signs[0] > 0)


def loads_strategies(text: str) -> list[Strategy]:
    out: list[Strategy] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if ":" in tokens[0]:
            rounds = []
            for tok in tokens:
                ray_s, _, turn_s = tok.partition(":")
                rounds.append(Round(int(ray_s), float(turn_s)))
            out.append(RoundPlan(tuple(rounds)))
        else:
            out.append(_parse_line_tokens(tokens, lineno))
    return out


def save_strategies(strategies: Iterable[Strategy], path: str) -> None:
    with open(path, "w") as fh:
        fh.write(dumps_strategies(strategies))


def load_strategies(path: str) -> list[Strategy]:
    with open(path) as fh:
        return loads_strategies(fh.read())
