"""Command line interface.

Commands: gen (write instance files), solve (run strategies on one instance),
bench (run a campaign and write reports), report (re-summarize a rows table).

Exit codes for solve: 0 all strategies succeeded, 3 infeasible, 4 rounding hit
its time limit without an integer plan, 5 rounding failed, 6 unexpected error.
"""

import os
import sys

import click

from . import bench as bench_mod
from . import instances, planner
from .planner import ALL_STRATEGIES, Strategy

_STATUS_EXIT = {
    "ok": 0,
    "infeasible": 3,
    "rounding_failed_timeout": 4,
    "rounding_failed": 5,
}


def _parse_classes(text):
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "-" in part:
            lo, hi = part.split("-", 1)
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    if not out:
        raise click.BadParameter("no class ids given")
    for cid in out:
        if not 1 <= cid <= 24:
            raise click.BadParameter("class id %d outside 1..24" % cid)
    return tuple(out)


def _parse_strategies(text):
    if text.strip().lower() in ("all", ""):
        return ALL_STRATEGIES
    by_value = {s.value: s for s in ALL_STRATEGIES}
    out = []
    for part in text.split(","):
        part = part.strip().lower()
        if part not in by_value:
            raise click.BadParameter(
                "unknown strategy %r (choose from %s)" % (part, ", ".join(by_value))
            )
        out.append(by_value[part])
    return tuple(out)


@click.group()
def main():
    """Three-phase paper production planning: jumbos, reels, sheets."""


@main.command()
@click.option("--classes", default="1", show_default=True, help="Class ids, e.g. 1-6,9.")
@click.option("--seeds", default=1, show_default=True, type=int, help="Seed count; uses seeds 1..N.")
@click.option("--periods", default=4, show_default=True, type=int, help="Planning periods.")
@click.option("--subperiods", default=5, show_default=True, type=int, help="Sub-periods per period.")
@click.option("--out", "out_dir", default="instances", show_default=True, type=click.Path())
def gen(classes, seeds, periods, subperiods, out_dir):
    """Generate instance files; re-running writes identical bytes."""
    class_ids = _parse_classes(classes)
    os.makedirs(out_dir, exist_ok=True)
    count = 0
    for cid in class_ids:
        config = instances.class_config(cid)
        for seed in range(1, seeds + 1):
            inst = instances.generate_instance(config, seed, T=periods, Theta=subperiods)
            name = "class%02d_seed%03d.json" % (cid, seed)
            instances.save(inst, os.path.join(out_dir, name))
            count += 1
    click.echo("wrote %d instances to %s" % (count, out_dir))


@main.command()
@click.argument("instance_path", type=click.Path(exists=True))
@click.option("--strategies", default="all", show_default=True, help="Comma list: s123,s1_23,s12_3,s123i.")
@click.option("--time-limit", default=60.0, show_default=True, type=float, help="Seconds per rounding block.")
@click.option("--mip-gap", default=0.005, show_default=True, type=float, help="Relative gap per rounding block.")
@click.option("--out", "out_path", default=None, type=click.Path(), help="Also write a rows CSV here.")
def solve(instance_path, strategies, time_limit, mip_gap, out_path):
    """Solve one instance file with the chosen strategies."""
    try:
        inst = instances.load(instance_path)
    except instances.InstanceFormatError as exc:
        click.echo("cannot read instance: %s" % exc, err=True)
        sys.exit(6)
    problems = instances.validate(inst)
    if problems:
        for p in problems:
            click.echo("invalid instance: %s" % p, err=True)
        sys.exit(6)
    chosen = _parse_strategies(strategies)
    try:
        baseline = planner.solve_phase3_baseline(inst, time_limit=time_limit, mip_gap=mip_gap)
    except Exception:
        baseline = None
    rows = []
    worst = 0
    for strategy in [s for s in ALL_STRATEGIES if s in chosen]:
        report = planner.solve_strategy(
            inst,
            strategy,
            time_limit_per_block=time_limit,
            phase3_baseline=baseline,
            mip_gap=mip_gap,
        )
        code = _STATUS_EXIT.get(report.status, 6)
        worst = max(worst, code)
        if report.status == "ok":
            click.echo(
                "%s (%s): relaxed=%.6g rounded=%.6g"
                % (strategy.value, strategy.label, report.relaxed_cost, report.rounded_cost)
            )
        else:
            click.echo(
                "%s (%s): %s %s"
                % (strategy.value, strategy.label, report.status, report.message)
            )
        rows.append(
            bench_mod._row_from_report(
                inst.class_id if inst.class_id is not None else 0,
                inst.seed if inst.seed is not None else 0,
                report,
            )
        )
    if out_path:
        bench_mod.write_rows(rows, out_path)
        click.echo("rows written to %s" % out_path)
    sys.exit(worst)


@main.command(name="bench")
@click.option("--classes", default="1", show_default=True, help="Class ids, e.g. 1-6,9.")
@click.option("--seeds", default=5, show_default=True, type=int, help="Seed count; uses seeds 1..N.")
@click.option("--periods", default=4, show_default=True, type=int)
@click.option("--subperiods", default=5, show_default=True, type=int)
@click.option("--strategies", default="all", show_default=True)
@click.option("--time-limit", default=60.0, show_default=True, type=float, help="Seconds per rounding block.")
@click.option("--mip-gap", default=0.005, show_default=True, type=float, help="Relative gap per rounding block.")
@click.option("--jobs", default=1, show_default=True, type=int, help="Worker processes.")
@click.option("--out", "out_dir", default="bench-out", show_default=True, type=click.Path())
def bench(classes, seeds, periods, subperiods, strategies, time_limit, mip_gap, jobs, out_dir):
    """Run a benchmark campaign and write deterministic reports."""
    spec = bench_mod.RunSpec(
        class_ids=_parse_classes(classes),
        seeds=tuple(range(1, seeds + 1)),
        T=periods,
        Theta=subperiods,
        strategies=_parse_strategies(strategies),
        time_limit_per_block=time_limit,
        mip_gap=mip_gap,
        jobs=jobs,
    )
    rows, timings = bench_mod.run_bench(spec)
    bench_mod.write_reports(rows, timings, out_dir)
    ok = sum(1 for r in rows if r.status == "ok")
    click.echo("finished %d runs (%d ok); reports in %s" % (len(rows), ok, out_dir))


@main.command()
@click.option("--rows", "rows_path", required=True, type=click.Path(exists=True))
@click.option("--out", "out_path", default=None, type=click.Path(), help="Write instead of print.")
def report(rows_path, out_path):
    """Summarize an existing rows.csv."""
    try:
        rows = bench_mod.read_rows(rows_path)
    except ValueError as exc:
        click.echo(str(exc), err=True)
        sys.exit(6)
    text = bench_mod.summarize(rows)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
        click.echo("summary written to %s" % out_path)
    else:
        click.echo(text, nl=False)


if __name__ == "__main__":
    main()
