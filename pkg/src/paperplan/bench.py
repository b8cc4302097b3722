"""Batch benchmark harness.

Runs the four strategies over generated instance classes and writes
deterministic reports: rows.csv and summary.txt depend only on the inputs,
never on wall-clock timing or worker scheduling, so repeated runs are
byte-identical.  Measured times go to separate sidecar files (timings.csv,
timings_summary.txt) that are expected to differ between runs.
"""

import csv
import math
import multiprocessing
import os
import statistics
from dataclasses import dataclass

from . import instances, planner
from .planner import ALL_STRATEGIES, Strategy


@dataclass(frozen=True)
class RunSpec:
    """One benchmark campaign."""

    class_ids: tuple
    seeds: tuple
    T: int = 4
    Theta: int = 5
    strategies: tuple = ALL_STRATEGIES
    time_limit_per_block: float = 60.0
    max_iter: int = 200
    tol_price: float = 1e-6
    mip_gap: float = 0.005
    jobs: int = 1


CSV_COLUMNS = [
    "class_id",
    "seed",
    "strategy",
    "status",
    "relaxed_cost",
    "rounded_cost",
    "phase1_cost",
    "phase1_stock_cost",
    "phase2_cost",
    "phase2_stock_cost",
    "phase3_cost",
    "phase3_stock_cost",
    "waste2_cm",
    "waste3_cm2",
    "stock1_units",
    "stock2_units",
    "stock3_units",
    "cap1_frac",
    "cap2_frac",
    "cap3_frac",
    "cols_initial",
    "cols_priced",
    "cols_inserted",
    "cols_used_initial",
    "cols_used_generated",
    "iterations",
]

_FLOAT_FIELDS = {
    "relaxed_cost",
    "rounded_cost",
    "phase1_cost",
    "phase1_stock_cost",
    "phase2_cost",
    "phase2_stock_cost",
    "phase3_cost",
    "phase3_stock_cost",
    "cap1_frac",
    "cap2_frac",
    "cap3_frac",
}
_INT_FIELDS = {
    "class_id",
    "seed",
    "waste2_cm",
    "waste3_cm2",
    "cols_initial",
    "cols_priced",
    "cols_inserted",
    "cols_used_initial",
    "cols_used_generated",
    "iterations",
}
_SERIES_FIELDS = {"stock1_units", "stock2_units", "stock3_units"}


@dataclass
class ReportRow:
    """One strategy run on one instance, as written to rows.csv."""

    class_id: int
    seed: int
    strategy: str
    status: str
    relaxed_cost: float = math.nan
    rounded_cost: float = math.nan
    phase1_cost: float = math.nan
    phase1_stock_cost: float = math.nan
    phase2_cost: float = math.nan
    phase2_stock_cost: float = math.nan
    phase3_cost: float = math.nan
    phase3_stock_cost: float = math.nan
    waste2_cm: int = 0
    waste3_cm2: int = 0
    stock1_units: tuple = ()
    stock2_units: tuple = ()
    stock3_units: tuple = ()
    cap1_frac: float = math.nan
    cap2_frac: float = math.nan
    cap3_frac: float = math.nan
    cols_initial: int = 0
    cols_priced: int = 0
    cols_inserted: int = 0
    cols_used_initial: int = 0
    cols_used_generated: int = 0
    iterations: int = 0

    def to_record(self):
        rec = []
        for name in CSV_COLUMNS:
            v = getattr(self, name)
            if name in _SERIES_FIELDS:
                rec.append(";".join(repr(float(u)) for u in v))
            elif name in _FLOAT_FIELDS:
                rec.append("" if isinstance(v, float) and math.isnan(v) else repr(float(v)))
            elif name in _INT_FIELDS:
                rec.append(str(int(v)))
            else:
                rec.append(str(v))
        return rec

    @classmethod
    def from_record(cls, rec):
        kw = {}
        for name, raw in zip(CSV_COLUMNS, rec):
            if name in _SERIES_FIELDS:
                kw[name] = tuple(float(u) for u in raw.split(";")) if raw else ()
            elif name in _FLOAT_FIELDS:
                kw[name] = float(raw) if raw else math.nan
            elif name in _INT_FIELDS:
                kw[name] = int(raw)
            else:
                kw[name] = raw
        return cls(**kw)


@dataclass
class TimingRow:
    class_id: int
    seed: int
    strategy: str
    relax_seconds: float
    round_seconds: float
    total_seconds: float


def percent_delta(integrated_cost, other_cost):
    """Relative cost difference of the integrated strategy, in percent."""
    return 100.0 * (integrated_cost - other_cost) / other_cost


def _row_from_report(class_id, seed, report):
    row = ReportRow(
        class_id=class_id,
        seed=seed,
        strategy=report.strategy.value,
        status=report.status,
    )
    if report.status != "ok":
        return row
    row.relaxed_cost = report.relaxed_cost
    row.rounded_cost = report.rounded_cost
    for phase, attr in ((1, "phase1"), (2, "phase2"), (3, "phase3")):
        setattr(row, attr + "_cost", report.phase_main_cost.get(phase, math.nan))
        setattr(row, attr + "_stock_cost", report.phase_stock_cost.get(phase, math.nan))
    row.waste2_cm = report.waste2_cm
    row.waste3_cm2 = report.waste3_cm2
    row.stock1_units = report.stock_units.get(1, ())
    row.stock2_units = report.stock_units.get(2, ())
    row.stock3_units = report.stock_units.get(3, ())
    row.cap1_frac = report.capacity_frac.get(1, math.nan)
    row.cap2_frac = report.capacity_frac.get(2, math.nan)
    row.cap3_frac = report.capacity_frac.get(3, math.nan)
    row.cols_initial = report.columns_initial
    row.cols_priced = report.columns_priced
    row.cols_inserted = report.columns_inserted
    row.cols_used_initial = report.columns_used_initial
    row.cols_used_generated = report.columns_used_generated
    row.iterations = report.iterations
    return row


def run_one(
    class_id,
    seed,
    T=4,
    Theta=5,
    strategies=ALL_STRATEGIES,
    time_limit_per_block=60.0,
    max_iter=200,
    tol_price=1e-6,
    mip_gap=0.005,
):
    """All requested strategies on one generated instance.

    The standalone sheet-cutting baseline is computed once and shared, so the
    carried reel demand is identical across strategies.
    """
    inst = instances.generate_instance(
        instances.class_config(class_id), seed, T=T, Theta=Theta
    )
    try:
        baseline = planner.solve_phase3_baseline(
            inst,
            time_limit=time_limit_per_block,
            max_iter=max_iter,
            tol_price=tol_price,
            mip_gap=mip_gap,
        )
    except Exception:
        baseline = None
    rows = []
    timings = []
    ordered = [s for s in ALL_STRATEGIES if s in strategies]
    for strategy in ordered:
        report = planner.solve_strategy(
            inst,
            strategy,
            time_limit_per_block=time_limit_per_block,
            max_iter=max_iter,
            tol_price=tol_price,
            phase3_baseline=baseline,
            mip_gap=mip_gap,
        )
        rows.append(_row_from_report(class_id, seed, report))
        timings.append(
            TimingRow(
                class_id=class_id,
                seed=seed,
                strategy=strategy.value,
                relax_seconds=report.relax_seconds,
                round_seconds=report.round_seconds,
                total_seconds=report.relax_seconds + report.round_seconds,
            )
        )
    return rows, timings


def _worker(task):
    class_id, seed, T, Theta, strategy_values, time_limit, max_iter, tol_price, mip_gap = task
    strategies = tuple(Strategy(v) for v in strategy_values)
    return run_one(
        class_id,
        seed,
        T=T,
        Theta=Theta,
        strategies=strategies,
        time_limit_per_block=time_limit,
        max_iter=max_iter,
        tol_price=tol_price,
        mip_gap=mip_gap,
    )


def run_bench(spec):
    """Run a campaign; returns (rows, timings) in deterministic order."""
    tasks = [
        (
            class_id,
            seed,
            spec.T,
            spec.Theta,
            tuple(s.value for s in spec.strategies),
            spec.time_limit_per_block,
            spec.max_iter,
            spec.tol_price,
            spec.mip_gap,
        )
        for class_id in spec.class_ids
        for seed in spec.seeds
    ]
    if spec.jobs > 1 and len(tasks) > 1:
        with multiprocessing.Pool(processes=spec.jobs) as pool:
            results = pool.map(_worker, tasks)
    else:
        results = [_worker(t) for t in tasks]
    rows = []
    timings = []
    for row_part, timing_part in results:
        rows.extend(row_part)
        timings.extend(timing_part)
    return rows, timings


# ---------------------------------------------------------------------------
# report files


def write_rows(rows, path):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for row in rows:
            writer.writerow(row.to_record())


def read_rows(path):
    out = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header != CSV_COLUMNS:
            raise ValueError("unexpected rows.csv header: %r" % (header,))
        for rec in reader:
            out.append(ReportRow.from_record(rec))
    return out


def write_timings(timings, path):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(
            ["class_id", "seed", "strategy", "relax_seconds", "round_seconds", "total_seconds"]
        )
        for t in timings:
            writer.writerow(
                [
                    t.class_id,
                    t.seed,
                    t.strategy,
                    "%.3f" % t.relax_seconds,
                    "%.3f" % t.round_seconds,
                    "%.3f" % t.total_seconds,
                ]
            )


def _fmt(x):
    if isinstance(x, float) and math.isnan(x):
        return "nan"
    return "%.6g" % x


def _median_series(series_list):
    if not series_list:
        return ()
    length = max(len(s) for s in series_list)
    out = []
    for i in range(length):
        vals = [s[i] for s in series_list if len(s) > i]
        out.append(statistics.median(vals))
    return tuple(out)


def _mean_sd(vals):
    mean = statistics.fmean(vals)
    sd = statistics.stdev(vals) if len(vals) > 1 else math.nan
    return mean, sd


def summarize(rows):
    """Deterministic human-readable summary of a rows table."""
    lines = []
    lines.append("production planning benchmark summary")
    ok = [r for r in rows if r.status == "ok"]
    failed = [r for r in rows if r.status != "ok"]
    classes = sorted({r.class_id for r in rows})
    lines.append(
        "rows=%d ok=%d failed=%d classes=%s"
        % (len(rows), len(ok), len(failed), ",".join(str(c) for c in classes))
    )
    lines.append("")

    present = [s for s in ALL_STRATEGIES if any(r.strategy == s.value for r in rows)]
    lines.append("per-strategy medians over ok rows")
    for strat in present:
        sub = [r for r in ok if r.strategy == strat.value]
        if not sub:
            lines.append("strategy %s (%s): no successful rows" % (strat.value, strat.label))
            continue
        med = lambda attr: statistics.median(getattr(r, attr) for r in sub)
        gaps = [
            100.0 * (r.rounded_cost - r.relaxed_cost) / r.relaxed_cost
            for r in sub
            if r.relaxed_cost > 0
        ]
        lines.append("strategy %s (%s): n=%d" % (strat.value, strat.label, len(sub)))
        lines.append(
            "  relaxed=%s rounded=%s gap_pct=%s"
            % (
                _fmt(med("relaxed_cost")),
                _fmt(med("rounded_cost")),
                _fmt(statistics.median(gaps)) if gaps else "nan",
            )
        )
        lines.append(
            "  phase main=%s,%s,%s stock=%s,%s,%s"
            % (
                _fmt(med("phase1_cost")),
                _fmt(med("phase2_cost")),
                _fmt(med("phase3_cost")),
                _fmt(med("phase1_stock_cost")),
                _fmt(med("phase2_stock_cost")),
                _fmt(med("phase3_stock_cost")),
            )
        )
        lines.append(
            "  waste2_cm=%s waste3_cm2=%s cap_frac=%s,%s,%s"
            % (
                _fmt(med("waste2_cm")),
                _fmt(med("waste3_cm2")),
                _fmt(med("cap1_frac")),
                _fmt(med("cap2_frac")),
                _fmt(med("cap3_frac")),
            )
        )
        for name in ("stock1_units", "stock2_units", "stock3_units"):
            series = _median_series([getattr(r, name) for r in sub])
            lines.append(
                "  %s=%s" % (name, ";".join(_fmt(v) for v in series) if series else "-")
            )
        lines.append(
            "  columns initial=%s priced=%s inserted=%s used_initial=%s used_generated=%s iterations=%s"
            % (
                _fmt(med("cols_initial")),
                _fmt(med("cols_priced")),
                _fmt(med("cols_inserted")),
                _fmt(med("cols_used_initial")),
                _fmt(med("cols_used_generated")),
                _fmt(med("iterations")),
            )
        )
    lines.append("")

    integrated = Strategy.S123I.value
    others = [s for s in present if s.value != integrated]
    by_key = {}
    for r in ok:
        by_key[(r.class_id, r.seed, r.strategy)] = r
    if any(r.strategy == integrated for r in ok) and others:
        lines.append("integrated cost delta vs each strategy (percent, mean +/- sample sd)")
        for class_id in classes:
            for strat in others:
                pairs = []
                for r in ok:
                    if r.class_id != class_id or r.strategy != integrated:
                        continue
                    other = by_key.get((class_id, r.seed, strat.value))
                    if other is None:
                        continue
                    pairs.append((r, other))
                if not pairs:
                    continue
                rel = [percent_delta(a.relaxed_cost, b.relaxed_cost) for a, b in pairs if b.relaxed_cost > 0]
                rnd = [percent_delta(a.rounded_cost, b.rounded_cost) for a, b in pairs if b.rounded_cost > 0]
                parts = ["class %d vs %s:" % (class_id, strat.value)]
                if rel:
                    m, sd = _mean_sd(rel)
                    parts.append("relaxed %s+/-%s" % (_fmt(m), _fmt(sd)))
                if rnd:
                    m, sd = _mean_sd(rnd)
                    parts.append("rounded %s+/-%s" % (_fmt(m), _fmt(sd)))
                parts.append("n=%d" % len(pairs))
                lines.append("  " + " ".join(parts))
    return "\n".join(lines) + "\n"


def summarize_timings(timings):
    lines = ["benchmark timing summary (seconds, not deterministic)"]
    present = sorted({t.strategy for t in timings})
    for strat in present:
        sub = [t.total_seconds for t in timings if t.strategy == strat]
        lines.append(
            "strategy %s: n=%d mean=%.3f median=%.3f max=%.3f"
            % (strat, len(sub), statistics.fmean(sub), statistics.median(sub), max(sub))
        )
    total = sum(t.total_seconds for t in timings)
    lines.append("total solve time: %.3f" % total)
    return "\n".join(lines) + "\n"


def write_reports(rows, timings, out_dir):
    """Write rows.csv, summary.txt and the timing sidecars into out_dir."""
    os.makedirs(out_dir, exist_ok=True)
    write_rows(rows, os.path.join(out_dir, "rows.csv"))
    with open(os.path.join(out_dir, "summary.txt"), "w") as fh:
        fh.write(summarize(rows))
    write_timings(timings, os.path.join(out_dir, "timings.csv"))
    with open(os.path.join(out_dir, "timings_summary.txt"), "w") as fh:
        fh.write(summarize_timings(timings))
