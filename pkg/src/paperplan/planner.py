"""Planning strategies and integer rounding.

A strategy decides which phases are solved in one master and how demand is
carried between masters.  All four strategies start from the same standalone
sheet-cutting solve, whose rounded reel consumption becomes extra first-phase
reel demand; when the jumbo phase is solved on its own, the rounded jumbo
consumption of the reel phase plays the same role one level up.

Rounding is relax-and-fix over time blocks, latest phase first: within each
block the block's columns are integer, earlier blocks stay fixed, and later
blocks remain continuous.  An infeasible block backtracks, merging with its
predecessor; repeated failures widen the merge until all blocks collapse
into a single integer solve.
"""

import enum
import math
import time
from dataclasses import dataclass, field

from . import solvekit
from .master import (
    E1,
    E2,
    E3,
    MasterInfeasibleError,
    X1,
    Y2,
    Y3,
    build_initial,
    run_colgen,
)


class Strategy(enum.Enum):
    """The four phase-integration strategies."""

    S123 = "s123"
    S1_23 = "s1_23"
    S12_3 = "s12_3"
    S123I = "s123i"

    @property
    def label(self):
        return _LABELS[self]


_LABELS = {
    Strategy.S123: "1-2-3",
    Strategy.S1_23: "1-(2+3)",
    Strategy.S12_3: "(1+2)-3",
    Strategy.S123I: "1+2+3",
}

ALL_STRATEGIES = tuple(Strategy)


# cap on branch-and-bound nodes per rounding attempt; keeps a plateaued
# bound from eating the whole per-block time limit polishing one block
_NODE_CAP = 40000


class RoundingFailedError(Exception):
    """Raised when relax-and-fix cannot integerize a block even after backtracking."""

    def __init__(self, message, block, timed_out=False):
        super().__init__(message)
        self.block = block
        self.timed_out = timed_out


@dataclass(frozen=True)
class DemandLink:
    """Demand carried between masters.

    delta2[i2] is the rounded reel consumption of the sheet phase; alpha[i2]
    is the matching relative demand increase for the first period, NaN when
    that period has no base demand.  delta1[k][m1][t] is the rounded jumbo
    consumption of the reel phase.
    """

    delta2: tuple
    alpha: tuple
    delta1: tuple


def compute_delta2(instance, values):
    """Reels consumed per type by the rounded sheet-cutting decisions."""
    delta2 = [0] * instance.dims.Nf2
    for key, val in values.items():
        if isinstance(key, Y3) and val:
            delta2[key.i2] += int(round(val))
    return tuple(delta2)


def compute_alpha(instance, delta2):
    """Relative first-period reel demand increase; NaN marks zero-demand types."""
    out = []
    for i2 in range(instance.dims.Nf2):
        base = instance.phase2.d2[i2][0]
        if base == 0:
            out.append(math.nan)
        else:
            out.append((base + delta2[i2]) / base - 1.0)
    return tuple(out)


def compute_delta1(instance, values):
    """Jumbos consumed per (grammage, machine, period) by rounded reel cutting."""
    d = instance.dims
    delta1 = [[[0] * d.T for _ in range(d.M1)] for _ in range(d.K)]
    for key, val in values.items():
        if isinstance(key, Y2) and val:
            delta1[key.k][key.m1][key.t] += int(round(val))
    return tuple(tuple(tuple(row) for row in mat) for mat in delta1)


# ---------------------------------------------------------------------------
# relax-and-fix


def _block_of(key):
    if isinstance(key, (Y3, E3)):
        return (3, key.tau)
    if isinstance(key, (Y2, E2)):
        return (2, key.t)
    return (1, key.t)


def _block_order(scope, dims):
    order = []
    if 3 in scope:
        order.extend(("sheets tau=%d" % tau, (3, tau)) for tau in range(dims.Theta))
    if 2 in scope:
        order.extend(("reels t=%d" % t, (2, t)) for t in range(dims.T))
    if 1 in scope:
        order.extend(("jumbos t=%d" % t, (1, t)) for t in range(dims.T))
    return order


@dataclass
class PlanSolution:
    """Integer plan for one master, with relaxed and rounded objectives."""

    values: dict
    objective: float
    relaxed_objective: float
    blocks: list
    truncated: bool
    round_seconds: float


def relax_and_fix(mstr, relaxed, time_limit_per_block=60.0, mip_gap=0.005):
    """Round a converged relaxed master to integers block by block.

    Each block is solved to within the relative ``mip_gap``; proving exact
    block optimality is not worth the tree search it costs, since later
    blocks re-optimize the still-free variables anyway.
    """
    start = time.monotonic()
    rel_values = mstr.values()
    if all(abs(v - round(v)) <= solvekit.TOL_INT for v in rel_values.values()):
        values = {key: float(round(v)) for key, v in rel_values.items()}
        objective = sum(mstr.objs[j] * values[key] for j, key in enumerate(mstr.keys))
        return PlanSolution(
            values=values,
            objective=objective,
            relaxed_objective=relaxed.objective,
            blocks=[],
            truncated=False,
            round_seconds=time.monotonic() - start,
        )

    groups = {}
    for key in mstr.keys:
        groups.setdefault(_block_of(key), []).append(key)
    blocks = [
        (name, groups.get(tag, [])) for name, tag in _block_order(mstr.scope, mstr.instance.dims)
    ]

    fixed = {}
    warm = None
    truncated = False
    done_names = []
    failed = None
    bi = 0
    while bi < len(blocks):
        name, keys = blocks[bi]
        if not keys:
            done_names.append(name)
            bi += 1
            continue
        lp = mstr.to_lp(fixed=fixed, integer_keys=keys)
        # stock levels follow integrally from the run counts via the balance
        # equalities, so only the run columns are worth branching on
        runs = [
            mstr.key_index[key] for key in keys if not isinstance(key, (E1, E2, E3))
        ]
        res = solvekit.solve_mip(
            lp,
            time_limit=time_limit_per_block,
            warm_basis=warm,
            node_limit=_NODE_CAP,
            gap=mip_gap,
            branch_idx=runs or None,
        )
        if res.status in (solvekit.MIP_OPTIMAL, solvekit.MIP_FEASIBLE):
            for key in keys:
                fixed[key] = float(round(res.x[mstr.key_index[key]]))
            warm = res.basis
            truncated = truncated or res.truncated
            done_names.append(name)
            bi += 1
            continue
        if res.status == solvekit.MIP_INFEASIBLE and bi > 0:
            # an earlier fixing painted this block into a corner; unfix the
            # previous block and retry them jointly (infeasibility proofs on
            # these blocks are cheap, so the walk back costs little)
            prev_name, prev_keys = blocks[bi - 1]
            for key in prev_keys:
                fixed.pop(key, None)
            blocks[bi - 1 : bi + 1] = [(prev_name + " + " + name, prev_keys + keys)]
            if done_names and done_names[-1] == prev_name:
                done_names.pop()
            warm = None
            bi -= 1
            continue
        failed = (name, res.status)
        break

    if failed is not None and len(blocks) > 1:
        # the walk stalled mid-way; fall back to one integer solve over the
        # whole pool before giving up, since block-wise infeasibility often
        # just means the fixing order was wrong, not that no plan exists
        lp = mstr.to_lp(fixed={}, integer_keys=list(mstr.keys))
        runs = [
            mstr.key_index[key]
            for key in mstr.keys
            if not isinstance(key, (E1, E2, E3))
        ]
        res = solvekit.solve_mip(
            lp,
            time_limit=time_limit_per_block,
            warm_basis=mstr.solution.basis if mstr.solution is not None else None,
            node_limit=_NODE_CAP,
            gap=mip_gap,
            branch_idx=runs or None,
        )
        if res.status in (solvekit.MIP_OPTIMAL, solvekit.MIP_FEASIBLE):
            fixed = {
                key: float(round(res.x[mstr.key_index[key]])) for key in mstr.keys
            }
            truncated = truncated or res.truncated
            done_names = ["all blocks merged"]
            failed = None

    if failed is not None:
        name, status = failed
        raise RoundingFailedError(
            "rounding failed at block '%s' (%s)" % (name, status),
            block=name,
            timed_out=status == solvekit.MIP_TIMEOUT,
        )

    objective = sum(mstr.objs[j] * fixed[key] for j, key in enumerate(mstr.keys))
    return PlanSolution(
        values=dict(fixed),
        objective=objective,
        relaxed_objective=relaxed.objective,
        blocks=done_names,
        truncated=truncated,
        round_seconds=time.monotonic() - start,
    )


# ---------------------------------------------------------------------------
# per-phase metrics


@dataclass
class PhaseMetrics:
    main_cost: float = 0.0
    stock_cost: float = 0.0
    stock_units: tuple = ()
    capacity_frac: float = 0.0


@dataclass
class PlanMetrics:
    """Cost and waste breakdown of an integer plan."""

    phase: dict = field(default_factory=dict)
    waste2_cm: int = 0
    waste3_cm2: int = 0


def summarize_plan(mstr, values):
    inst = mstr.instance
    d = inst.dims
    metrics = PlanMetrics()
    stock = {1: [0.0] * d.T, 2: [0.0] * d.T, 3: [0.0] * d.Theta}
    usage = {1: [0.0] * d.T, 2: [0.0] * d.T, 3: [0.0] * d.Theta}
    for phase in (1, 2, 3):
        if phase in mstr.scope:
            metrics.phase[phase] = PhaseMetrics()
    for j, key in enumerate(mstr.keys):
        v = values.get(key, 0.0)
        if not v:
            continue
        cost = mstr.objs[j] * v
        if isinstance(key, X1):
            metrics.phase[1].main_cost += cost
            usage[1][key.t] += inst.phase1.f1[key.k][key.m1] * v
        elif isinstance(key, E1):
            metrics.phase[1].stock_cost += cost
            stock[1][key.t] += v
        elif isinstance(key, Y2):
            metrics.phase[2].main_cost += cost
            usage[2][key.t] += inst.phase2.f2[key.k][key.m1][key.m2] * v
            metrics.waste2_cm += int(round(key.pattern.waste * v))
        elif isinstance(key, E2):
            metrics.phase[2].stock_cost += cost
            stock[2][key.t] += v
        elif isinstance(key, Y3):
            metrics.phase[3].main_cost += cost
            usage[3][key.tau] += inst.phase3.f3[key.i2][key.m3] * v
            metrics.waste3_cm2 += int(round(key.pattern.waste * v))
        else:
            metrics.phase[3].stock_cost += cost
            stock[3][key.tau] += v
    caps = {1: inst.phase1.C1, 2: inst.phase2.C2, 3: inst.phase3.C3}
    for phase, pm in metrics.phase.items():
        pm.stock_units = tuple(stock[phase])
        pm.capacity_frac = max(
            (u / cap for u, cap in zip(usage[phase], caps[phase]) if cap > 0),
            default=0.0,
        )
    return metrics


# ---------------------------------------------------------------------------
# strategies


@dataclass
class ComponentResult:
    """One master solved within a strategy: its relaxation and its plan."""

    name: str
    scope: frozenset
    relaxed: object
    plan: object
    metrics: object
    relax_seconds: float = 0.0


@dataclass
class StrategyReport:
    """Everything a strategy run produces, success or not."""

    strategy: Strategy
    status: str
    message: str = ""
    components: list = field(default_factory=list)
    link: object = None
    relaxed_cost: float = math.nan
    rounded_cost: float = math.nan
    waste2_cm: int = 0
    waste3_cm2: int = 0
    phase_main_cost: dict = field(default_factory=dict)
    phase_stock_cost: dict = field(default_factory=dict)
    stock_units: dict = field(default_factory=dict)
    capacity_frac: dict = field(default_factory=dict)
    columns_initial: int = 0
    columns_priced: int = 0
    columns_inserted: int = 0
    columns_used_initial: int = 0
    columns_used_generated: int = 0
    iterations: int = 0
    truncated: bool = False
    relax_seconds: float = 0.0
    round_seconds: float = 0.0


def _solve_component(
    instance, name, scope, delta1, delta2, time_limit, max_iter, tol_price, mip_gap=0.005
):
    t0 = time.monotonic()
    mstr = build_initial(instance, scope, delta1=delta1, delta2=delta2)
    relaxed = run_colgen(mstr, max_iter=max_iter, tol_price=tol_price)
    relax_seconds = time.monotonic() - t0
    plan = relax_and_fix(mstr, relaxed, time_limit_per_block=time_limit, mip_gap=mip_gap)
    metrics = summarize_plan(mstr, plan.values)
    return ComponentResult(
        name=name,
        scope=frozenset(scope),
        relaxed=relaxed,
        plan=plan,
        metrics=metrics,
        relax_seconds=relax_seconds,
    )


def solve_phase3_baseline(instance, time_limit=60.0, max_iter=200, tol_price=1e-6, mip_gap=0.005):
    """Standalone sheet-cutting solve shared by every strategy."""
    return _solve_component(
        instance, "sheets", {3}, None, None, time_limit, max_iter, tol_price, mip_gap=mip_gap
    )


def solve_strategy(
    instance,
    strategy,
    time_limit_per_block=60.0,
    max_iter=200,
    tol_price=1e-6,
    phase3_baseline=None,
    mip_gap=0.005,
):
    """Run one strategy end to end and aggregate its components."""
    report = StrategyReport(strategy=strategy, status="ok")
    try:
        if phase3_baseline is None:
            phase3_baseline = solve_phase3_baseline(
                instance,
                time_limit=time_limit_per_block,
                max_iter=max_iter,
                tol_price=tol_price,
                mip_gap=mip_gap,
            )
        delta2 = compute_delta2(instance, phase3_baseline.plan.values)
        alpha = compute_alpha(instance, delta2)

        components = []
        if strategy is Strategy.S123:
            components.append(phase3_baseline)
            comp2 = _solve_component(
                instance, "reels", {2}, None, delta2,
                time_limit_per_block, max_iter, tol_price, mip_gap=mip_gap,
            )
            components.append(comp2)
            delta1 = compute_delta1(instance, comp2.plan.values)
            components.append(
                _solve_component(
                    instance, "jumbos", {1}, delta1, None,
                    time_limit_per_block, max_iter, tol_price, mip_gap=mip_gap,
                )
            )
        elif strategy is Strategy.S1_23:
            comp23 = _solve_component(
                instance, "reels+sheets", {2, 3}, None, delta2,
                time_limit_per_block, max_iter, tol_price, mip_gap=mip_gap,
            )
            components.append(comp23)
            delta1 = compute_delta1(instance, comp23.plan.values)
            components.append(
                _solve_component(
                    instance, "jumbos", {1}, delta1, None,
                    time_limit_per_block, max_iter, tol_price, mip_gap=mip_gap,
                )
            )
        elif strategy is Strategy.S12_3:
            components.append(phase3_baseline)
            components.append(
                _solve_component(
                    instance, "jumbos+reels", {1, 2}, None, delta2,
                    time_limit_per_block, max_iter, tol_price, mip_gap=mip_gap,
                )
            )
            delta1 = None
        else:
            components.append(
                _solve_component(
                    instance, "all", {1, 2, 3}, None, delta2,
                    time_limit_per_block, max_iter, tol_price, mip_gap=mip_gap,
                )
            )
            delta1 = None

        report.components = components
        report.link = DemandLink(
            delta2=delta2,
            alpha=alpha,
            delta1=delta1 if delta1 is not None else (),
        )
        _aggregate(report)
    except MasterInfeasibleError as exc:
        report.status = "infeasible"
        report.message = str(exc)
    except RoundingFailedError as exc:
        report.status = "rounding_failed_timeout" if exc.timed_out else "rounding_failed"
        report.message = str(exc)
    return report


def _aggregate(report):
    relaxed = 0.0
    rounded = 0.0
    for comp in report.components:
        relaxed += comp.relaxed.objective
        rounded += comp.plan.objective
        report.iterations += comp.relaxed.iterations
        report.columns_priced += comp.relaxed.columns_priced
        report.columns_inserted += comp.relaxed.columns_inserted
        report.truncated = report.truncated or comp.plan.truncated
        report.relax_seconds += comp.relax_seconds
        report.round_seconds += comp.plan.round_seconds
        mstr = comp.relaxed.master
        report.columns_initial += mstr.count_columns(origin="initial")
        for j, key in enumerate(mstr.keys):
            if comp.plan.values.get(key, 0.0) >= 1.0:
                if mstr.origins[j] == "initial":
                    report.columns_used_initial += 1
                else:
                    report.columns_used_generated += 1
        for phase, pm in comp.metrics.phase.items():
            report.phase_main_cost[phase] = pm.main_cost
            report.phase_stock_cost[phase] = pm.stock_cost
            report.stock_units[phase] = pm.stock_units
            report.capacity_frac[phase] = pm.capacity_frac
        report.waste2_cm += comp.metrics.waste2_cm
        report.waste3_cm2 += comp.metrics.waste3_cm2
    report.relaxed_cost = relaxed
    report.rounded_cost = rounded
