"""Mechanized potential-function lower-bound engine.

Replays an exact-multiplicity assignment in left-endpoint order through
the covering-situation state: the sorted multiset A of multiplicity
frontiers, per-robot loads (sums of assigned turning distances), and for
the one-ray-cover setting the left endpoint b of each robot's next
assigned interval.  Each added interval multiplies the log-domain
potential by mu*^e / (x^e (mu*-x)^k), which is at least the growth
factor delta whenever the candidate ratio sits below the tight bound;
the line-mode potential is simultaneously capped by mu^(k*s).  A valid
cover therefore cannot extend forever: the engine either certifies the
replay or reports the coverage hole the theorem predicts.
"""

from __future__ import annotations

import math
from bisect import bisect_right, insort
from dataclasses import dataclass, field
from typing import Literal, Sequence

from .cover import (
    AssignedInterval,
    ConfigurationError,
    Witness,
    exact_q_assignment,
    ordered_stream,
    verify_multicover,
)
from .formulas import CoverParams, InstanceParams, growth_factor_delta, mu_critical, poly_max_point
from .strategy import Strategy, all_cover_intervals

__all__ = [
    "Mode",
    "PrefixState",
    "GrowthStep",
    "GrowthTrace",
    "GapReport",
    "Verdict",
    "InvalidAssignmentError",
    "AuditError",
    "covering_situation",
    "initial_state",
    "advance",
    "potential_value",
    "audit_growth",
    "detect_gap",
    "refute",
]

Mode = Literal["line", "orc"]

_REL_TOL = 1e-9


class InvalidAssignmentError(Exception):
    """An interval violates the load bound or does not start at the frontier."""


class AuditError(Exception):
    """A replay invariant failed: drift, cap overflow, or a slow step."""


def covering_situation(
    intervals: Sequence[AssignedInterval], mult: int, lo: float = 1.0
) -> list[float]:
    """The sorted frontier multiset [a_mult, ..., a_1] of a prefix.

    a_j is the first point above lo whose coverage multiplicity drops
    below j; every point of (a_(j+1), a_j] is covered exactly j times.
    """
    live = [iv for iv in intervals if iv.right > lo]
    starts = sorted(iv.left for iv in live)
    ends = sorted(iv.right for iv in live)

    def seg_mult(u: float) -> int:
        return bisect_right(starts, u) - bisect_right(ends, u)

    points = [lo] + sorted({v for v in ends if v > lo})
    a = [None] * (mult + 1)  # a[j] for j = 1..mult
    for u in points:
        m = seg_mult(u)
        for j in range(m + 1, mult + 1):
            if a[j] is None:
                a[j] = u
    top = points[-1]
    return [top if a[j] is None else a[j] for j in range(mult, 0, -1)]


@dataclass
class PrefixState:
    """Covering situation, loads, and next-left endpoints of one prefix."""

    mode: Mode
    mult: int  # required multiplicity: s (line) or q (orc)
    k: int  # robots actually present
    s_exp: int  # load exponent: s (line) or q - k (orc)
    A: list[float]  # ascending; A[0] is the full-coverage frontier a
    loads: dict[int, float]
    pending: dict[int, list[AssignedInterval]]  # per robot, stream order
    scale: float
    log_potential: float | None  # None when some next-left is undefined (orc)

    @property
    def a(self) -> float:
        return self.A[0]

    def b(self, robot: int) -> float | None:
        nxt = self.pending[robot]
        return nxt[0].left / self.scale if nxt else None


def _log_potential(state: PrefixState) -> float | None:
    lp = 0.0
    for r, load in state.loads.items():
        lp += state.s_exp * math.log(load)
        if state.mode == "orc":
            b = state.b(r)
            if b is None:
                return None
            lp += state.k * math.log(b)
    lp -= state.k * sum(math.log(y) for y in state.A)
    return lp


def initial_state(
    assigned: Sequence[AssignedInterval],
    c: CoverParams,
    p: InstanceParams,
    mode: Mode,
    rescale: bool = True,
    lo: float = 1.0,
) -> PrefixState:
    """State of the base prefix, rescaled so that its frontier a equals 1."""
    seq, p0 = ordered_stream(assigned, lo)
    prefix = seq[:p0]
    robots = sorted({iv.robot for iv in seq})
    mult = p.s if mode == "line" else p.q
    if mult < 1:
        raise ConfigurationError(f"multiplicity {mult} < 1: nothing to audit")
    k_eff = len(robots)
    s_exp = mult if mode == "line" else mult - k_eff
    if s_exp < 1:
        raise ConfigurationError(
            f"load exponent {s_exp} < 1 (k={k_eff} robots): potential degenerate"
        )
    A = covering_situation(prefix, mult, lo)
    scale = A[0] if rescale else 1.0
    loads = {r: 0.0 for r in robots}
    for iv in prefix:
        loads[iv.robot] += iv.right / scale
    pending = {r: [] for r in robots}
    for iv in seq[p0:]:
        pending[iv.robot].append(iv)
    state = PrefixState(
        mode=mode,
        mult=mult,
        k=k_eff,
        s_exp=s_exp,
        A=[y / scale for y in A],
        loads=loads,
        pending=pending,
        scale=scale,
        log_potential=None,
    )
    state.log_potential = _log_potential(state)
    return state


@dataclass(frozen=True)
class GrowthStep:
    index: int
    robot: int
    mu_star: float
    x: float
    step_ratio: float
    log_potential_after: float


def advance(
    state: PrefixState, nxt: AssignedInterval, c: CoverParams
) -> tuple[PrefixState, GrowthStep]:
    """Extend the prefix by its next assigned interval.

    The interval must start at the current frontier a and respect the
    load bound (realized slack mu* at most mu); the log-potential is
    updated incrementally from the step ratio.
    """
    r = nxt.robot
    if not state.pending[r] or state.pending[r][0] is not nxt:
        raise InvalidAssignmentError("interval is not the robot's next in stream")
    left = nxt.left / state.scale
    right = nxt.right / state.scale
    a = state.a
    if abs(left - a) > _REL_TOL * max(1.0, abs(a)):
        raise InvalidAssignmentError(
            f"interval starts at {left}, frontier is {a}: not a cover prefix"
        )
    load_old = state.loads[r]
    load_new = load_old + right
    pending = dict(state.pending)
    pending[r] = pending[r][1:]
    if state.mode == "orc":
        if not pending[r]:
            raise InvalidAssignmentError(
                f"robot {r} has no following interval: next-left undefined"
            )
        denom = pending[r][0].left / state.scale
    else:
        denom = a
    mu_star = load_new / denom
    if mu_star > c.mu * (1.0 + _REL_TOL):
        raise InvalidAssignmentError(
            f"load bound violated: realized mu*={mu_star} exceeds mu={c.mu}"
        )
    x = load_old / denom
    e = state.s_exp
    log_ratio = (
        e * math.log(mu_star) - e * math.log(x) - state.k * math.log(mu_star - x)
    )
    A = list(state.A)
    A.pop(0)
    insort(A, right)
    loads = dict(state.loads)
    loads[r] = load_new
    log_pot = (
        None if state.log_potential is None else state.log_potential + log_ratio
    )
    new = PrefixState(
        mode=state.mode,
        mult=state.mult,
        k=state.k,
        s_exp=e,
        A=A,
        loads=loads,
        pending=pending,
        scale=state.scale,
        log_potential=log_pot,
    )
    step = GrowthStep(
        index=-1,
        robot=r,
        mu_star=mu_star,
        x=x,
        step_ratio=math.exp(log_ratio),
        log_potential_after=log_pot if log_pot is not None else math.nan,
    )
    return new, step


def potential_value(state: PrefixState, c: CoverParams) -> float:
    """From-scratch log-domain potential of the state.

    In line mode also asserts the boundedness cap log f <= k*s*log(mu).
    """
    lp = _log_potential(state)
    if lp is None:
        raise ConfigurationError("potential undefined: a robot has no next interval")
    if state.mode == "line":
        cap = state.k * state.s_exp * math.log(c.mu)
        if lp > cap + _REL_TOL * max(1.0, abs(cap)):
            raise AuditError(f"line potential {lp} exceeds cap {cap}")
    return lp


@dataclass
class GrowthTrace:
    """Audited replay: per-step slack, step ratios, and potential values."""

    mode: Mode
    mult: int
    k: int
    s_exp: int
    delta_bound: float | None  # growth factor delta when mu is subcritical
    line_cap_log: float | None
    initial_log_potential: float | None
    steps: list[GrowthStep] = field(default_factory=list)

    @property
    def min_step_ratio(self) -> float | None:
        return min((s.step_ratio for s in self.steps), default=None)

    @property
    def max_log_potential(self) -> float | None:
        best = self.initial_log_potential
        for s in self.steps:
            if best is None or s.log_potential_after > best:
                best = s.log_potential_after
        return best


def audit_growth(
    assigned: Sequence[AssignedInterval],
    c: CoverParams,
    p: InstanceParams,
    mode: Mode,
    lo: float = 1.0,
) -> GrowthTrace:
    """Replay the assignment, checking every growth and boundedness invariant.

    Each step ratio is checked against the worst-case polynomial bound at
    the realized slack, and against the growth factor delta whenever mu is
    strictly below critical; incremental and from-scratch potentials must
    agree to 1e-9 relative.  The replay stops where the finite stream runs
    out of next-left endpoints.
    """
    state = initial_state(assigned, c, p, mode, lo=lo)
    seq, p0 = ordered_stream(assigned, lo)
    crit = mu_critical(state.s_exp, state.k)
    subcritical = c.mu < crit
    delta = growth_factor_delta(state.s_exp, state.k, c.mu)
    cap = state.k * state.s_exp * math.log(c.mu) if mode == "line" else None
    trace = GrowthTrace(
        mode=mode,
        mult=state.mult,
        k=state.k,
        s_exp=state.s_exp,
        delta_bound=delta if subcritical else None,
        line_cap_log=cap,
        initial_log_potential=state.log_potential,
    )
    if state.log_potential is None:
        return trace
    for idx, iv in enumerate(seq[p0:]):
        if mode == "orc" and len(state.pending[iv.robot]) < 2:
            break
        state, step = advance(state, iv, c)
        scratch = potential_value(state, c)
        if abs(state.log_potential - scratch) > _REL_TOL * max(1.0, abs(scratch)):
            raise AuditError(
                f"incremental potential {state.log_potential} drifted from "
                f"from-scratch value {scratch} at step {idx}"
            )
        floor = _step_ratio_floor(step.mu_star, state.s_exp, state.k)
        if step.step_ratio < floor * (1.0 - 1e-12):
            raise AuditError(
                f"step ratio {step.step_ratio} below polynomial floor {floor}"
            )
        if subcritical and step.step_ratio < delta * (1.0 - _REL_TOL):
            raise AuditError(
                f"step ratio {step.step_ratio} below growth factor {delta}"
            )
        trace.steps.append(
            GrowthStep(
                index=idx,
                robot=step.robot,
                mu_star=step.mu_star,
                x=step.x,
                step_ratio=step.step_ratio,
                log_potential_after=step.log_potential_after,
            )
        )
    return trace


def _step_ratio_floor(mu_star: float, e: int, k: int) -> float:
    x_star = poly_max_point(e, k, mu_star)
    return math.exp(
        e * math.log(mu_star)
        - e * math.log(x_star)
        - k * math.log(mu_star - x_star)
    )


@dataclass(frozen=True)
class GapReport:
    """Per-robot left-endpoint gap scan: bounded (case 1) or a jump (case 2).

    In case 2, the other robots cover [sub_lo, sub_hi] one fold short of
    the full requirement; that subrange is the recursion target.
    """

    case: int
    robot: int | None = None
    round_index: int | None = None
    ratio: float | None = None
    sub_lo: float | None = None
    sub_hi: float | None = None


def detect_gap(
    assigned: Sequence[AssignedInterval], C: float, c: CoverParams
) -> GapReport:
    """First per-robot pair of consecutive left endpoints with ratio above C."""
    if not C > 1.0:
        raise ValueError(f"gap constant C must be > 1, got {C}")
    seq, _ = ordered_stream(assigned) if assigned else ([], 0)
    prev: dict[int, float] = {}
    for iv in seq:
        last = prev.get(iv.robot)
        if last is not None and last >= 1.0 and iv.left / last > C:
            return GapReport(
                case=2,
                robot=iv.robot,
                round_index=iv.round_index,
                ratio=iv.left / last,
                sub_lo=c.mu * last,
                sub_hi=C * last,
            )
        prev[iv.robot] = iv.left
    return GapReport(case=1)


@dataclass
class Verdict:
    """Outcome of one refutation run."""

    kind: Literal["coverage_failure", "certificate"]
    params: dict
    witness: Witness | None = None
    trace: GrowthTrace | None = None
    headroom_steps: float | None = None  # growth steps left before the cap

    def to_dict(self) -> dict:
        out: dict = {"kind": self.kind, "params": dict(self.params)}
        if self.witness is not None:
            out["witness"] = {
                "point": self.witness.point,
                "multiplicity_found": self.witness.multiplicity_found,
                "multiplicity_required": self.witness.multiplicity_required,
            }
        if self.trace is not None:
            out["audit"] = {
                "steps": len(self.trace.steps),
                "k": self.trace.k,
                "multiplicity": self.trace.mult,
                "min_step_ratio": self.trace.min_step_ratio,
                "max_log_potential": self.trace.max_log_potential,
                "delta_bound": self.trace.delta_bound,
                "line_cap_log": self.trace.line_cap_log,
            }
        if self.headroom_steps is not None:
            out["headroom_steps"] = self.headroom_steps
        return out


def refute(
    strategies: Sequence[Strategy],
    lam: float,
    p: InstanceParams,
    N: float,
    mode: Mode = "orc",
) -> Verdict:
    """Verify or refute a multiplicity-fold lambda-cover of [1, N].

    Coverage holes yield a CoverageFailure verdict with the leftmost
    witness; verified covers are truncated to exact multiplicity and
    replayed through the growth audit into a Certificate.  When the audit
    ran below the tight ratio, headroom_steps estimates how many more
    growth steps (hence how much more horizon) a contradiction needs.
    """
    c = CoverParams(lam)
    mult = p.s if mode == "line" else p.q
    if mode == "line" and p.m != 2:
        raise ValueError(f"line mode needs m=2, got m={p.m}")
    params = {
        "m": p.m,
        "k": p.k,
        "f": p.f,
        "lambda": lam,
        "N": N,
        "mode": mode,
        "multiplicity": max(mult, 0),
    }
    covers = all_cover_intervals(strategies, c)
    if mult <= 0:
        return Verdict(kind="certificate", params=params)
    witness = verify_multicover(covers, mult, N)
    if witness is not None:
        return Verdict(kind="coverage_failure", params=params, witness=witness)
    assigned = exact_q_assignment(covers, mult, N)
    try:
        trace = audit_growth(assigned, c, p, mode)
    except ConfigurationError:
        # degenerate regime (k >= multiplicity or a robot with one interval)
        return Verdict(kind="certificate", params=params)
    headroom = None
    if trace.delta_bound is not None and trace.steps:
        if trace.line_cap_log is not None:
            cap = trace.line_cap_log
        else:
            cap = None
        if cap is not None:
            headroom = max(
                0.0,
                (cap - trace.max_log_potential) / math.log(trace.delta_bound),
            )
    return Verdict(
        kind="certificate", params=params, trace=trace, headroom_steps=headroom
    )
