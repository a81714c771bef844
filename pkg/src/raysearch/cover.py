"""Multicover verification and exact-multiplicity interval assignment.

`verify_multicover` sweeps interval endpoints and reports the leftmost
point of (1, N] whose coverage multiplicity falls short.  On a verified
cover, `exact_q_assignment` truncates the cover intervals [t'', t] to
half-open assigned intervals (t', t], t'' <= t' < t, so that every point
of (1, N] is covered *exactly* q times.  Truncation keeps waiting the
intervals with the largest right endpoints (they keep contributing
farther right); skipped intervals disappear entirely.

Intervals whose right endpoint sits at the domain boundary are kept
untruncated: they carry their turning distance into the robot loads
without covering anything above the boundary.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from typing import Iterator, Sequence, Union

from .strategy import CoverInterval

__all__ = [
    "AssignedInterval",
    "Witness",
    "DeficientCoverError",
    "ConfigurationError",
    "verify_multicover",
    "exact_q_assignment",
    "ordered_stream",
    "prefix_stream",
]


@dataclass(frozen=True)
class AssignedInterval:
    """Half-open (left, right] retained after truncation to exact multiplicity."""

    robot: int
    round_index: int
    left: float
    right: float
    cover_left: float  # the t'' of the cover interval this came from

    left_open = True

    def __post_init__(self) -> None:
        if not (self.cover_left <= self.left < self.right):
            raise ValueError(
                f"need t'' <= t' < t, got {self.cover_left}, {self.left}, {self.right}"
            )


AnyInterval = Union[CoverInterval, AssignedInterval]


@dataclass(frozen=True)
class Witness:
    """A point whose coverage multiplicity falls short of the requirement."""

    point: float
    multiplicity_found: int
    multiplicity_required: int


class DeficientCoverError(Exception):
    def __init__(self, witness: Witness):
        self.witness = witness
        super().__init__(
            f"coverage {witness.multiplicity_found} < {witness.multiplicity_required}"
            f" at {witness.point}"
        )


class ConfigurationError(Exception):
    pass


def verify_multicover(
    intervals: Sequence[AnyInterval], q: int, hi: float, lo: float = 1.0
) -> Witness | None:
    """None if every point of (lo, hi] has multiplicity >= q, else the
    leftmost deficient point (segment deficits are reported at the endpoint
    just below where the deficit begins)."""
    if q <= 0:
        return None
    ivs = [iv for iv in intervals if iv.right > lo and iv.left < hi]
    if not ivs:
        return Witness(lo, 0, q)
    closed_starts = sorted(iv.left for iv in ivs if not iv.left_open)
    open_starts = sorted(iv.left for iv in ivs if iv.left_open)
    ends = sorted(iv.right for iv in ivs)

    def seg_mult(u: float) -> int:
        # multiplicity on the open segment just above u
        return (
            bisect_right(closed_starts, u)
            + bisect_right(open_starts, u)
            - bisect_right(ends, u)
        )

    def point_mult(v: float) -> int:
        return (
            bisect_right(closed_starts, v)
            + bisect_left(open_starts, v)
            - bisect_left(ends, v)
        )

    mids = sorted(
        {v for iv in ivs for v in (iv.left, iv.right) if lo < v < hi}
    )
    points = [lo] + mids + [hi]
    for u, v in zip(points, points[1:]):
        m_seg = seg_mult(u)
        if m_seg < q:
            return Witness(u, m_seg, q)
        m_pt = point_mult(v)
        if m_pt < q:
            return Witness(v, m_pt, q)
    return None


def exact_q_assignment(
    intervals: Sequence[CoverInterval], q: int, hi: float, lo: float = 1.0
) -> list[AssignedInterval]:
    """Truncate a >= q-fold cover of (lo, hi] to exact multiplicity q."""
    if q <= 0:
        return []
    witness = verify_multicover(intervals, q, hi, lo)
    if witness is not None:
        raise DeficientCoverError(witness)

    out: list[AssignedInterval] = []
    # boundary intervals: no coverage above lo, but their turning distances
    # still belong to the robot loads of the potential argument
    pool = []
    for iv in intervals:
        if iv.right <= lo:
            if iv.left < iv.right:
                out.append(
                    AssignedInterval(iv.robot, iv.round_index, iv.left, iv.right, iv.left)
                )
        elif iv.left < hi:
            pool.append(iv)
    pool.sort(key=lambda iv: (iv.left, iv.robot, iv.round_index))

    mids = sorted({v for iv in pool for v in (iv.left, iv.right) if lo < v < hi})
    points = [lo] + mids + [hi]
    nxt = 0  # next pool interval to become available
    avail: list[CoverInterval] = []  # available but not yet opened
    opened: list[tuple[CoverInterval, float]] = []  # (interval, t')
    for u, v in zip(points, points[1:]):
        while nxt < len(pool) and pool[nxt].left <= u:
            avail.append(pool[nxt])
            nxt += 1
        still = []
        for iv, t_prime in opened:
            if iv.right >= v:
                still.append((iv, t_prime))
            else:
                out.append(
                    AssignedInterval(iv.robot, iv.round_index, t_prime, iv.right, iv.left)
                )
        opened = still
        need = q - len(opened)
        if need < 0:  # cannot happen: we never open beyond q
            raise AssertionError("over-full assignment sweep")
        if need > 0:
            avail = [iv for iv in avail if iv.right >= v]
            cands = sorted(avail, key=lambda iv: (iv.right, iv.robot, iv.round_index))
            if len(cands) < need:
                raise DeficientCoverError(Witness(u, q - need + len(cands), q))
            for iv in cands[:need]:
                avail.remove(iv)
                opened.append((iv, u))
    for iv, t_prime in opened:
        out.append(
            AssignedInterval(iv.robot, iv.round_index, t_prime, iv.right, iv.left)
        )
    out.sort(key=lambda iv: (iv.left, iv.robot, iv.round_index))
    return out


def ordered_stream(
    assigned: Sequence[AssignedInterval], lo: float = 1.0
) -> tuple[list[AssignedInterval], int]:
    """Assigned intervals in left-endpoint order plus the base prefix size.

    The base prefix is the shortest one that contains every boundary
    interval (right endpoint at or below lo) and at least one interval of
    every robot; the potential replay starts there.
    """
    seq = sorted(assigned, key=lambda iv: (iv.left, iv.robot, iv.round_index))
    robots = {iv.robot for iv in seq}
    if not robots:
        raise ConfigurationError("no assigned intervals")
    first_seen: dict[int, int] = {}
    last_boundary = -1
    for idx, iv in enumerate(seq):
        if iv.robot not in first_seen:
            first_seen[iv.robot] = idx
        if iv.right <= lo:
            last_boundary = idx
    p0 = max(max(first_seen.values()), last_boundary) + 1
    return seq, p0


def prefix_stream(
    assigned: Sequence[AssignedInterval], lo: float = 1.0
) -> Iterator[list[AssignedInterval]]:
    """Prefixes P0 c P1 c ... of the left-endpoint-sorted assignment."""
    seq, p0 = ordered_stream(assigned, lo)
    for size in range(p0, len(seq) + 1):
        yield seq[:size]
