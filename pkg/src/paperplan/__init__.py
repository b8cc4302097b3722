"""Three-phase paper production planning.

Lot sizing for jumbo production, one-dimensional jumbo-to-reel cutting, and
two-stage reel-to-sheet cutting, solved by column generation over cutting
patterns with relax-and-fix integer rounding.  Four strategies trade off how
tightly the phases are planned together.
"""

from .bench import ReportRow, RunSpec, percent_delta, run_bench, run_one, write_reports
from .instances import (
    ClassConfig,
    Instance,
    InstanceFormatError,
    class_config,
    generate_instance,
    load,
    mass_kg,
    save,
    validate,
)
from .master import (
    MasterInfeasibleError,
    MasterProblem,
    RelaxedSolution,
    build_initial,
    run_colgen,
)
from .planner import (
    ALL_STRATEGIES,
    DemandLink,
    PlanSolution,
    RoundingFailedError,
    Strategy,
    StrategyReport,
    relax_and_fix,
    solve_phase3_baseline,
    solve_strategy,
)
from .pricing import DualValues, KnapsackSpec, solve_knapsack
from .solvekit import LinearProgram, LpSolution, MipResult, solve_lp, solve_mip

__version__ = "0.1.0"

__all__ = [
    "ALL_STRATEGIES",
    "ClassConfig",
    "DemandLink",
    "DualValues",
    "Instance",
    "InstanceFormatError",
    "KnapsackSpec",
    "LinearProgram",
    "LpSolution",
    "MasterInfeasibleError",
    "MasterProblem",
    "MipResult",
    "PlanSolution",
    "RelaxedSolution",
    "ReportRow",
    "RoundingFailedError",
    "RunSpec",
    "Strategy",
    "StrategyReport",
    "build_initial",
    "class_config",
    "generate_instance",
    "load",
    "mass_kg",
    "percent_delta",
    "relax_and_fix",
    "run_bench",
    "run_colgen",
    "run_one",
    "save",
    "solve_knapsack",
    "solve_lp",
    "solve_mip",
    "solve_phase3_baseline",
    "solve_strategy",
    "validate",
    "write_reports",
    "__version__",
]
