import math

import pytest

from raysearch import (
    AuditError,
    CoverParams,
    InstanceParams,
    InvalidAssignmentError,
    advance,
    all_cover_intervals,
    audit_growth,
    covering_situation,
    detect_gap,
    exact_q_assignment,
    growth_factor_delta,
    initial_state,
    make_exponential_strategy,
    make_geometric_line_strategy,
    optimal_alpha,
    ordered_stream,
    potential_value,
    ratio_lower_bound,
    refute,
)


def doubling_assigned(hi=1e3, lam=9.0):
    p = InstanceParams(2, 1, 0)
    strat = make_exponential_strategy(p, optimal_alpha(p), hi)
    covers = all_cover_intervals(strat, CoverParams(lam))
    return p, exact_q_assignment(covers, 2, hi)


class TestCoveringSituation:
    def test_doubling_prefix(self):
        _, assigned = doubling_assigned()
        seq, p0 = ordered_stream(assigned)
        A = covering_situation(seq[:p0], 2)
        assert len(A) == 2
        assert A == sorted(A)

    def test_values_delimit_multiplicity_drops(self):
        _, assigned = doubling_assigned()
        A = covering_situation(assigned[:4], 2)
        # With (0,.5], (.125,1], (1,2], (1,4] open, one fold is lost at
        # 2 and the second at 4.
        assert A == pytest.approx([2.0, 4.0])


class TestAdvance:
    def test_doubling_loads_and_ratios(self):
        p, assigned = doubling_assigned()
        c = CoverParams(9.0)
        state = initial_state(assigned, c, p, "orc")
        seq, p0 = ordered_stream(assigned)
        mus, xs, ratios = [], [], []
        for nxt in seq[p0 : p0 + 3]:
            state, step = advance(state, nxt, c)
            mus.append(step.mu_star)
            xs.append(step.x)
            ratios.append(step.step_ratio)
        assert mus == pytest.approx([3.5, 3.75, 3.875])
        assert xs == pytest.approx([1.5, 1.75, 1.875])
        assert ratios == pytest.approx([3.5 / 3.0, 3.75 / 3.5, 3.875 / 3.75])

    def test_realized_mu_never_exceeds_mu(self):
        p, assigned = doubling_assigned()
        c = CoverParams(9.0)
        state = initial_state(assigned, c, p, "orc")
        seq, p0 = ordered_stream(assigned)
        for nxt in seq[p0:]:
            if len(state.pending[nxt.robot]) < 2:
                break
            state, step = advance(state, nxt, c)
            assert step.mu_star <= c.mu * (1 + 1e-9)

    def test_tight_load_is_rejected_at_smaller_mu(self):
        p, assigned = doubling_assigned()
        c_tight = CoverParams(7.0)  # mu = 3 < the realized 3.5
        state = initial_state(assigned, c_tight, p, "orc")
        seq, p0 = ordered_stream(assigned)
        with pytest.raises(InvalidAssignmentError):
            s = state
            for nxt in seq[p0:]:
                s, _ = advance(s, nxt, c_tight)

    def test_incremental_matches_scratch(self):
        p, assigned = doubling_assigned()
        c = CoverParams(9.0)
        state = initial_state(assigned, c, p, "orc")
        seq, p0 = ordered_stream(assigned)
        for nxt in seq[p0:]:
            if len(state.pending[nxt.robot]) < 2:
                break
            state, _ = advance(state, nxt, c)
            assert state.log_potential == pytest.approx(
                potential_value(state, c), abs=1e-9
            )


class TestAuditGrowth:
    def test_doubling_trace_ratios_approach_one(self):
        p, assigned = doubling_assigned()
        trace = audit_growth(assigned, CoverParams(9.0), p, "orc")
        assert trace.min_step_ratio >= 1.0 - 1e-9
        assert trace.steps[-1].step_ratio == pytest.approx(1.0, abs=1e-2)

    def test_subcritical_orc_has_delta_floor(self):
        p = InstanceParams(2, 1, 0)
        strat = make_exponential_strategy(p, 2.0, 20.0)
        covers = all_cover_intervals(strat, CoverParams(8.99))
        assigned = exact_q_assignment(covers, 2, 20.0)
        trace = audit_growth(assigned, CoverParams(8.99), p, "orc")
        delta = growth_factor_delta(p.s, p.k, CoverParams(8.99).mu)
        assert delta > 1.0
        assert trace.min_step_ratio >= delta * (1 - 1e-12)

    def test_line_mode_respects_the_cap(self):
        p = InstanceParams(2, 3, 1)
        lam = ratio_lower_bound(p) + 0.1
        strat = make_geometric_line_strategy(p, optimal_alpha(p), 1e4)
        covers = all_cover_intervals(strat, CoverParams(lam))
        assigned = exact_q_assignment(covers, p.s, 1e4)
        trace = audit_growth(assigned, CoverParams(lam), p, "line")
        cap = p.k * p.s * math.log(CoverParams(lam).mu)
        assert trace.max_log_potential <= cap + 1e-9
        assert trace.line_cap_log == pytest.approx(cap)


class TestDetectGap:
    def test_bounded_stream_is_case_one(self):
        p, assigned = doubling_assigned()
        rep = detect_gap(assigned, 5.0, CoverParams(9.0))
        assert rep.case == 1

    def test_jump_is_case_two_with_subrange(self):
        from raysearch import AssignedInterval

        stream = [
            AssignedInterval(robot=0, round_index=0, left=1.0, right=2.0, cover_left=0.5),
            AssignedInterval(robot=0, round_index=1, left=2.0, right=50.0, cover_left=1.0),
            AssignedInterval(robot=0, round_index=2, left=50.0, right=100.0, cover_left=40.0),
        ]
        rep = detect_gap(stream, 5.0, CoverParams(9.0))
        assert rep.case == 2
        assert rep.robot == 0 and rep.round_index == 2
        assert rep.ratio == pytest.approx(25.0)
        # the other robots must cover [mu * t', C * t'] one fold short
        assert (rep.sub_lo, rep.sub_hi) == (pytest.approx(8.0), pytest.approx(10.0))


class TestRefute:
    def test_certificate_above_bound(self, doubling, doubling_strategy):
        v = refute(doubling_strategy, 9.5, doubling, 1e4)
        assert v.kind == "certificate"
        assert v.trace is not None and v.trace.min_step_ratio >= 1.0 - 1e-9

    def test_failure_below_bound(self, doubling, doubling_strategy):
        v = refute(doubling_strategy, 8.0, doubling, 1e4)
        assert v.kind == "coverage_failure"
        assert 1.0 <= v.witness.point <= 1e4

    def test_trivial_multiplicity_certifies(self):
        # k = q robots cover everything straight out: s = 0 in line mode.
        from raysearch import TurnSequence

        p = InstanceParams(2, 2, 0)
        strat = [
            TurnSequence((100.0,)),
            TurnSequence((100.0,), first_positive=False),
        ]
        v = refute(strat, 3.0, p, 1e2, mode="line")
        assert v.kind == "certificate"
        assert v.trace is None

    def test_line_mode_needs_two_rays(self):
        p = InstanceParams(3, 2, 0)
        strat = make_exponential_strategy(p, optimal_alpha(p), 1e2)
        with pytest.raises(ValueError):
            refute(strat, 20.0, p, 1e2, mode="line")

    def test_headroom_reported_below_bound(self):
        # A subcritical line-mode certificate is provisional: the verdict
        # says how many more growth steps would burst the potential cap.
        p = InstanceParams(2, 1, 0)
        strat = make_geometric_line_strategy(p, 2.0, 20.0)
        v = refute(strat, 8.99, p, 20.0, mode="line")
        assert v.kind == "certificate"
        assert v.headroom_steps is not None and v.headroom_steps > 0
