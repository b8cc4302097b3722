"""Strategy composition and relax-and-fix rounding tests."""

import dataclasses
import math

import pytest

from paperplan import instances, planner
from paperplan.master import MasterInfeasibleError, Y2, Y3, build_initial, run_colgen
from paperplan.planner import (
    ALL_STRATEGIES,
    Strategy,
    compute_alpha,
    compute_delta1,
    compute_delta2,
    relax_and_fix,
    solve_strategy,
)

from support import check_plan, make_tiny_instance


def _single_reel_instance(demand=12, jumbo_len=1500, reel_len=300):
    dims = instances.Dimensions(K=1, T=1, Theta=1, M1=1, M2=1, M3=1, Nf2=1, Nf3=1)
    phase1 = instances.Phase1Params(
        c1=(((1.0,),),), h1=((0.1,),), L=(jumbo_len,), b1=((1.0,),),
        d1=(((0,),),), f1=((1.0,),), C1=(1000.0,),
    )
    phase2 = instances.Phase2Params(
        c2=((0.01,),), h2=((0.2,),), l2=(reel_len,), w2=(100,), b2=(1.0,),
        d2=((demand,),), f2=(((1.0,),),), C2=(1000.0,), S2=((0,),),
    )
    phase3 = instances.Phase3Params(
        c3=((0.001,),), h3=((0.1,),), l3=(50,), w3=(40,), b3=(0.02,),
        d3=((0,),), f3=((1.0,),), C3=(1000.0,), S3=((0,),),
        trimming_allowed=True,
    )
    return instances.Instance(
        dims=dims, phase1=phase1, phase2=phase2, phase3=phase3, seed=0, class_id=None
    )


def test_rounding_covers_demand_with_spare_output():
    # demand 12 with five reels per jumbo: 2.4 relaxed, 3 after rounding
    inst = _single_reel_instance()
    mstr = build_initial(inst, {2})
    relaxed = run_colgen(mstr)
    total_relaxed = sum(v for k, v in mstr.values().items() if isinstance(k, Y2))
    assert total_relaxed == pytest.approx(12 / 5, abs=1e-7)
    plan = relax_and_fix(mstr, relaxed)
    total = sum(v for k, v in plan.values.items() if isinstance(k, Y2))
    assert total == 3
    assert check_plan(inst, {2}, plan.values) == []
    assert plan.objective >= relaxed.objective - 1e-9


def test_integral_relaxation_short_circuits_rounding():
    inst = make_tiny_instance(seed=2, zero_demand=True)
    mstr = build_initial(inst, {1, 2, 3})
    relaxed = run_colgen(mstr)
    plan = relax_and_fix(mstr, relaxed)
    assert plan.blocks == []
    assert plan.objective == pytest.approx(0.0, abs=1e-9)


def test_block_sequence_names_later_phases_first():
    inst = _single_reel_instance()
    mstr = build_initial(inst, {1, 2})
    relaxed = run_colgen(mstr)
    plan = relax_and_fix(mstr, relaxed)
    if plan.blocks:
        assert plan.blocks == ["reels t=0", "jumbos t=0"]
    assert check_plan(inst, {1, 2}, plan.values) == []


def test_delta2_aggregates_rounded_sheet_decisions():
    inst = make_tiny_instance(seed=1)
    base = planner.solve_phase3_baseline(inst)
    delta2 = compute_delta2(inst, base.plan.values)
    want = [0] * inst.dims.Nf2
    for key, val in base.plan.values.items():
        if isinstance(key, Y3):
            want[key.i2] += int(round(val))
    assert list(delta2) == want
    assert all(v >= 0 for v in delta2)


def test_alpha_flags_zero_demand_with_nan():
    inst = make_tiny_instance(seed=1)
    d2 = tuple(
        ((0,) + row[1:]) if i2 == 0 else row for i2, row in enumerate(inst.phase2.d2)
    )
    inst0 = dataclasses.replace(
        inst, phase2=dataclasses.replace(inst.phase2, d2=d2)
    )
    alpha = compute_alpha(inst0, (4,) * inst.dims.Nf2)
    assert math.isnan(alpha[0])
    base = inst0.phase2.d2[1][0]
    if base:
        assert alpha[1] == pytest.approx((base + 4) / base - 1.0)


def test_delta1_aggregates_rounded_reel_cutting():
    inst = _single_reel_instance()
    mstr = build_initial(inst, {2})
    relaxed = run_colgen(mstr)
    plan = relax_and_fix(mstr, relaxed)
    delta1 = compute_delta1(inst, plan.values)
    assert delta1 == (((3,),),)


def test_strategies_solve_and_plans_verify():
    solved = 0
    for seed in range(6):
        inst = make_tiny_instance(seed=seed)
        try:
            base = planner.solve_phase3_baseline(inst)
        except MasterInfeasibleError:
            continue
        for strategy in ALL_STRATEGIES:
            report = solve_strategy(inst, strategy, phase3_baseline=base)
            if report.status != "ok":
                continue
            assert report.rounded_cost >= report.relaxed_cost - 1e-6
            for comp in report.components:
                mstr = comp.relaxed.master
                problems = check_plan(
                    inst, mstr.scope, comp.plan.values, mstr.delta1, mstr.delta2
                )
                assert problems == []
                assert comp.plan.objective >= comp.relaxed.objective - 1e-9
            assert set(report.phase_main_cost) == {1, 2, 3}
            assert report.waste2_cm >= 0 and report.waste3_cm2 >= 0
            for frac in report.capacity_frac.values():
                assert 0.0 <= frac <= 1.0 + 1e-9
            solved += 1
    assert solved >= 12


def test_zero_demand_everywhere_costs_zero():
    inst = make_tiny_instance(seed=3, zero_demand=True)
    for strategy in ALL_STRATEGIES:
        report = solve_strategy(inst, strategy)
        assert report.status == "ok"
        assert report.rounded_cost == pytest.approx(0.0, abs=1e-9)
        assert report.link.delta2 == (0,) * inst.dims.Nf2


def test_integrated_relaxation_is_not_worse_here():
    inst = make_tiny_instance(seed=1)
    base = planner.solve_phase3_baseline(inst)
    seq = solve_strategy(inst, Strategy.S123, phase3_baseline=base)
    joint = solve_strategy(inst, Strategy.S123I, phase3_baseline=base)
    assert seq.status == "ok" and joint.status == "ok"
    assert joint.relaxed_cost <= seq.relaxed_cost + 1e-6


def test_infeasible_instance_reports_status():
    inst = make_tiny_instance(seed=0)
    p3 = inst.phase3
    bad = dataclasses.replace(
        inst,
        phase3=dataclasses.replace(p3, l3=(50,) + p3.l3[1:], d3=((2, 2),) + p3.d3[1:]),
    )
    report = solve_strategy(bad, Strategy.S123I)
    assert report.status == "infeasible"
    assert "SheetDemand" in report.message


def test_strategy_labels():
    assert Strategy.S123.label == "1-2-3"
    assert Strategy.S1_23.label == "1-(2+3)"
    assert Strategy.S12_3.label == "(1+2)-3"
    assert Strategy.S123I.label == "1+2+3"
    assert [s.value for s in ALL_STRATEGIES] == ["s123", "s1_23", "s12_3", "s123i"]


def test_report_carries_link_and_columns():
    inst = make_tiny_instance(seed=1)
    report = solve_strategy(inst, Strategy.S123I)
    assert report.status == "ok"
    assert len(report.link.delta2) == inst.dims.Nf2
    assert len(report.link.alpha) == inst.dims.Nf2
    assert report.columns_initial > 0
    assert report.columns_used_initial + report.columns_used_generated > 0
    assert report.iterations >= 1
