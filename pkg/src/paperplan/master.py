"""Master linear programs over cutting patterns and stock balances.

A master is built for a scope, any subset of the three production phases,
and carries demand carried over from later phases as right-hand-side
inflation.  Rows and columns are addressed by small frozen dataclasses, so
the same pricing formulas work for standalone and integrated masters: duals
for rows outside the scope simply read as zero.

Column generation alternates master solves with the exact pattern pricers
and terminates when no priced column improves the objective.
"""

import itertools
from dataclasses import dataclass, field

from . import instances, pricing, solvekit


# ---------------------------------------------------------------------------
# row and column identities


@dataclass(frozen=True)
class JumboBalance:
    k: int
    m1: int
    t: int


@dataclass(frozen=True)
class Capacity1:
    t: int


@dataclass(frozen=True)
class ReelDemand:
    i2: int
    t: int


@dataclass(frozen=True)
class Capacity2:
    t: int


@dataclass(frozen=True)
class SheetDemand:
    i3: int
    tau: int


@dataclass(frozen=True)
class Capacity3:
    tau: int


@dataclass(frozen=True)
class X1:
    """Jumbos produced on machine m1 at grammage k in period t."""

    k: int
    m1: int
    t: int


@dataclass(frozen=True)
class E1:
    """Jumbos of (k, m1) held in stock at the end of period t."""

    k: int
    m1: int
    t: int


@dataclass(frozen=True)
class Y2:
    """Applications of a jumbo-cutting pattern on rewinder m2 in period t."""

    k: int
    m1: int
    m2: int
    t: int
    pattern: pricing.Pattern1D


@dataclass(frozen=True)
class E2:
    """Reels of type i2 held in stock at the end of period t."""

    i2: int
    t: int


@dataclass(frozen=True)
class Y3:
    """Applications of a reel-cutting pattern on cutter m3 in sub-period tau."""

    i2: int
    m3: int
    tau: int
    pattern: pricing.Pattern2D


@dataclass(frozen=True)
class E3:
    """Sheets of type i3 held in stock at the end of sub-period tau."""

    i3: int
    tau: int


class MasterInfeasibleError(Exception):
    """Raised when a master has no feasible solution; carries the rows at fault."""

    def __init__(self, message, rows=()):
        super().__init__(message)
        self.rows = tuple(rows)


class MasterNumericalError(Exception):
    """Raised when the LP kernel gives up on a master solve."""


# ---------------------------------------------------------------------------
# master problem


def _zeros3(K, M1, T):
    return tuple(tuple((0.0,) * T for _ in range(M1)) for _ in range(K))


class MasterProblem:
    """Restricted master LP for a scope with an explicit column pool."""

    def __init__(self, instance, scope, delta1=None, delta2=None):
        scope = frozenset(scope)
        if not scope or not scope <= {1, 2, 3}:
            raise ValueError("scope must be a nonempty subset of {1, 2, 3}")
        self.instance = instance
        self.scope = scope
        d = instance.dims
        if delta1 is None:
            delta1 = _zeros3(d.K, d.M1, d.T)
        if delta2 is None:
            delta2 = (0.0,) * d.Nf2
        self.delta1 = delta1
        self.delta2 = delta2
        self.rows = []
        self.row_index = {}
        self.rhs = []
        self.senses = []
        self.keys = []
        self.key_index = {}
        self.objs = []
        self.cols = []
        self.origins = []
        self.solution = None
        self._build_rows()

    def _add_row(self, row, sense, rhs):
        self.row_index[row] = len(self.rows)
        self.rows.append(row)
        self.senses.append(sense)
        self.rhs.append(float(rhs))

    def _build_rows(self):
        inst = self.instance
        d = inst.dims
        if 1 in self.scope:
            for k, m1, t in itertools.product(range(d.K), range(d.M1), range(d.T)):
                rhs = inst.phase1.d1[k][m1][t] + self.delta1[k][m1][t]
                self._add_row(JumboBalance(k, m1, t), "=", rhs)
            for t in range(d.T):
                self._add_row(Capacity1(t), "<=", inst.phase1.C1[t])
        if 2 in self.scope:
            for i2, t in itertools.product(range(d.Nf2), range(d.T)):
                rhs = inst.phase2.d2[i2][t]
                if t > 0 or 3 not in self.scope:
                    rhs += self.delta2[i2]
                self._add_row(ReelDemand(i2, t), "=", rhs)
            for t in range(d.T):
                self._add_row(Capacity2(t), "<=", inst.phase2.C2[t])
        if 3 in self.scope:
            for i3, tau in itertools.product(range(d.Nf3), range(d.Theta)):
                self._add_row(SheetDemand(i3, tau), "=", inst.phase3.d3[i3][tau])
            for tau in range(d.Theta):
                self._add_row(Capacity3(tau), "<=", inst.phase3.C3[tau])

    # -- column algebra ----------------------------------------------------

    def column_entries(self, key):
        """Objective cost and {row: coefficient} map of a column, scope-filtered."""
        inst = self.instance
        d = inst.dims
        p1, p2, p3 = inst.phase1, inst.phase2, inst.phase3
        coeffs = {}

        def put(row, a):
            if row in self.row_index and a != 0.0:
                coeffs[row] = coeffs.get(row, 0.0) + a

        if isinstance(key, X1):
            obj = p1.c1[key.k][key.m1][key.t] * p1.b1[key.k][key.m1]
            put(JumboBalance(key.k, key.m1, key.t), 1.0)
            put(Capacity1(key.t), p1.f1[key.k][key.m1])
        elif isinstance(key, E1):
            obj = p1.h1[key.k][key.t] * p1.b1[key.k][key.m1]
            put(JumboBalance(key.k, key.m1, key.t), -1.0)
            if key.t + 1 < d.T:
                put(JumboBalance(key.k, key.m1, key.t + 1), 1.0)
        elif isinstance(key, Y2):
            pat = key.pattern
            obj = p2.c2[key.k][key.t] * pat.waste
            put(JumboBalance(key.k, key.m1, key.t), -1.0)
            for i2, a in enumerate(pat.counts):
                if a:
                    put(ReelDemand(i2, key.t), float(a))
            put(Capacity2(key.t), p2.f2[key.k][key.m1][key.m2])
        elif isinstance(key, E2):
            obj = p2.h2[key.i2][key.t] * p2.b2[key.i2]
            put(ReelDemand(key.i2, key.t), -1.0)
            if key.t + 1 < d.T:
                put(ReelDemand(key.i2, key.t + 1), 1.0)
        elif isinstance(key, Y3):
            pat = key.pattern
            k = instances.grammage_of_reel(inst, key.i2)
            obj = p3.c3[k][key.tau] * pat.waste
            put(ReelDemand(key.i2, 0), -1.0)
            for i3, a in enumerate(pat.counts):
                if a:
                    put(SheetDemand(i3, key.tau), float(a))
            put(Capacity3(key.tau), p3.f3[key.i2][key.m3])
        elif isinstance(key, E3):
            obj = p3.h3[key.i3][key.tau] * p3.b3[key.i3]
            put(SheetDemand(key.i3, key.tau), -1.0)
            if key.tau + 1 < d.Theta:
                put(SheetDemand(key.i3, key.tau + 1), 1.0)
        else:
            raise TypeError("unknown column key: %r" % (key,))
        return float(obj), coeffs

    def add_column(self, key, origin="generated"):
        """Insert a column; returns False when the key is already pooled."""
        if key in self.key_index:
            return False
        obj, coeffs = self.column_entries(key)
        self.key_index[key] = len(self.keys)
        self.keys.append(key)
        self.objs.append(obj)
        self.cols.append({self.row_index[row]: a for row, a in coeffs.items()})
        self.origins.append(origin)
        return True

    def to_lp(self, fixed=None, integer_keys=None):
        """Materialize the pool as a LinearProgram.

        fixed maps column keys to pinned values (lower == upper); integer_keys
        marks columns integral for the MIP solver.
        """
        n = len(self.keys)
        lp = solvekit.LinearProgram(n)
        lp.set_objective(self.objs)
        row_coeffs = [dict() for _ in self.rows]
        for j, col in enumerate(self.cols):
            for ri, a in col.items():
                row_coeffs[ri][j] = a
        for ri in range(len(self.rows)):
            lp.add_row(row_coeffs[ri], self.senses[ri], self.rhs[ri])
        if fixed:
            for key, val in fixed.items():
                j = self.key_index[key]
                lp.set_bounds(j, float(val), float(val))
        if integer_keys:
            lp.set_integer([self.key_index[key] for key in integer_keys])
        return lp

    def solve(self):
        """Solve the restricted LP; raises on infeasibility with a diagnosis."""
        sol = solvekit.solve_lp(self.to_lp())
        if sol.status == solvekit.OPTIMAL:
            self.solution = sol
            return sol
        if sol.status == solvekit.INFEASIBLE:
            raise MasterInfeasibleError(self._diagnose(sol), rows=[self.rows[r] for r in sol.violated_rows])
        raise MasterNumericalError("master solve failed with status %s" % sol.status)

    def _diagnose(self, sol):
        unmet = [self.rows[r] for r in sol.violated_rows]
        binding = []
        for ri, row in enumerate(self.rows):
            if self.senses[ri] != "<=":
                continue
            used = sum(
                self.cols[j].get(ri, 0.0) * sol.x[j] for j in range(len(self.keys))
            )
            if used >= self.rhs[ri] - 1e-6 * (1.0 + abs(self.rhs[ri])):
                binding.append(row)
        msg = "master infeasible; unmet rows: %s" % ", ".join(repr(r) for r in unmet)
        if binding:
            msg += "; capacity rows at their limit: %s" % ", ".join(repr(r) for r in binding)
        return msg

    def duals(self):
        """Current duals as a semantic view; requires a solved master."""
        if self.solution is None:
            raise RuntimeError("master has not been solved")
        jumbo, cap1, reel, cap2, sheet, cap3 = {}, {}, {}, {}, {}, {}
        for ri, row in enumerate(self.rows):
            pi = float(self.solution.duals[ri])
            if isinstance(row, JumboBalance):
                jumbo[(row.k, row.m1, row.t)] = pi
            elif isinstance(row, Capacity1):
                cap1[row.t] = pi
            elif isinstance(row, ReelDemand):
                reel[(row.i2, row.t)] = pi
            elif isinstance(row, Capacity2):
                cap2[row.t] = pi
            elif isinstance(row, SheetDemand):
                sheet[(row.i3, row.tau)] = pi
            else:
                cap3[row.tau] = pi
        return pricing.DualValues(jumbo=jumbo, cap1=cap1, reel=reel, cap2=cap2, sheet=sheet, cap3=cap3)

    def column_reduced_cost(self, key, duals=None):
        """Reduced cost of a column (pooled or not) against given or current duals."""
        obj, coeffs = self.column_entries(key)
        if duals is None:
            if self.solution is None:
                raise RuntimeError("master has not been solved")
            rc = obj
            for row, a in coeffs.items():
                rc -= a * float(self.solution.duals[self.row_index[row]])
            return rc
        view = duals
        rc = obj
        for row, a in coeffs.items():
            if isinstance(row, JumboBalance):
                pi = view.jumbo(row.k, row.m1, row.t)
            elif isinstance(row, Capacity1):
                pi = view.cap1(row.t)
            elif isinstance(row, ReelDemand):
                pi = view.reel(row.i2, row.t)
            elif isinstance(row, Capacity2):
                pi = view.cap2(row.t)
            elif isinstance(row, SheetDemand):
                pi = view.sheet(row.i3, row.tau)
            else:
                pi = view.cap3(row.tau)
            rc -= a * pi
        return rc

    def value_of(self, key):
        """Primal value of a pooled column in the stored solution (0 if absent)."""
        if self.solution is None:
            raise RuntimeError("master has not been solved")
        j = self.key_index.get(key)
        return 0.0 if j is None else float(self.solution.x[j])

    def values(self):
        """Dict of key -> primal value for the stored solution."""
        if self.solution is None:
            raise RuntimeError("master has not been solved")
        return {key: float(self.solution.x[j]) for j, key in enumerate(self.keys)}

    def count_columns(self, origin=None, phase=None):
        n = 0
        for j, key in enumerate(self.keys):
            if origin is not None and self.origins[j] != origin:
                continue
            if phase is not None and _phase_of(key) != phase:
                continue
            n += 1
        return n


def _phase_of(key):
    if isinstance(key, (X1, E1)):
        return 1
    if isinstance(key, (Y2, E2)):
        return 2
    return 3


def build_initial(instance, scope, delta1=None, delta2=None):
    """Master with stock columns and homogeneous patterns, feasibility-checked.

    Raises MasterInfeasibleError up front when a demanded item cannot be
    produced by any pattern at all, naming the offending demand rows.
    """
    master = MasterProblem(instance, scope, delta1=delta1, delta2=delta2)
    d = instance.dims
    bad = []
    if 2 in master.scope:
        producible = set()
        for pat in pricing.homogeneous_1d(instance):
            for i2, a in enumerate(pat.counts):
                if a:
                    producible.add(i2)
        for row in master.rows:
            if isinstance(row, ReelDemand) and master.rhs[master.row_index[row]] > 0:
                if row.i2 not in producible:
                    bad.append(row)
    if 3 in master.scope:
        producible = set()
        for pat in pricing.homogeneous_2d(instance):
            for i3, a in enumerate(pat.counts):
                if a:
                    producible.add(i3)
        for row in master.rows:
            if isinstance(row, SheetDemand) and master.rhs[master.row_index[row]] > 0:
                if row.i3 not in producible:
                    bad.append(row)
    if bad:
        raise MasterInfeasibleError(
            "no pattern can produce demanded rows: %s" % ", ".join(repr(r) for r in bad),
            rows=bad,
        )
    if 1 in master.scope:
        for k, m1, t in itertools.product(range(d.K), range(d.M1), range(d.T)):
            master.add_column(X1(k, m1, t), origin="initial")
            master.add_column(E1(k, m1, t), origin="initial")
    if 2 in master.scope:
        for pat in pricing.homogeneous_1d(instance):
            for m2 in range(d.M2):
                for t in range(d.T):
                    master.add_column(Y2(pat.k, pat.m1, m2, t, pat), origin="initial")
        for i2, t in itertools.product(range(d.Nf2), range(d.T)):
            master.add_column(E2(i2, t), origin="initial")
    if 3 in master.scope:
        for pat in pricing.homogeneous_2d(instance):
            k = instances.grammage_of_reel(instance, pat.i2)
            for m3 in range(d.M3):
                for tau in range(d.Theta):
                    master.add_column(Y3(pat.i2, m3, tau, pat), origin="initial")
        for i3, tau in itertools.product(range(d.Nf3), range(d.Theta)):
            master.add_column(E3(i3, tau), origin="initial")
    return master


# ---------------------------------------------------------------------------
# column generation


def phase2_pricer(master, duals):
    """Price one jumbo-cutting column per (grammage, machine, period)."""
    inst = master.instance
    d = inst.dims
    out = []
    for k, m1, t in itertools.product(range(d.K), range(d.M1), range(d.T)):
        res = pricing.price_1d(inst, duals, k, m1, t)
        out.append((Y2(k, m1, res.m2, t, res.pattern), res.reduced_cost))
    return out


def phase3_pricer(master, duals):
    """Price one reel-cutting column per (reel type, sub-period)."""
    inst = master.instance
    d = inst.dims
    out = []
    for i2, tau in itertools.product(range(d.Nf2), range(d.Theta)):
        res = pricing.build_pattern_2d(inst, duals, i2, tau)
        out.append((Y3(i2, res.m3, tau, res.pattern), res.reduced_cost))
    return out


def default_pricers(scope):
    pricers = []
    if 2 in scope:
        pricers.append(phase2_pricer)
    if 3 in scope:
        pricers.append(phase3_pricer)
    return pricers


@dataclass
class RelaxedSolution:
    """Converged (or iteration-capped) relaxed master state."""

    master: object
    objective: float
    iterations: int
    converged: bool
    objective_history: list = field(default_factory=list)
    columns_priced: int = 0
    columns_inserted: int = 0


def run_colgen(master, pricers=None, max_iter=200, tol_price=1e-6):
    """Alternate master solves and pricing until no improving column remains.

    All pricers run against the same duals; every priced column with reduced
    cost below -tol_price is inserted before the next solve.  The objective
    history is non-increasing up to solver tolerance.
    """
    if pricers is None:
        pricers = default_pricers(master.scope)
    history = []
    priced = 0
    inserted = 0
    converged = False
    iterations = 0
    for _ in range(max_iter):
        sol = master.solve()
        iterations += 1
        history.append(sol.objective)
        if not pricers:
            converged = True
            break
        duals = master.duals()
        batch = []
        for pricer in pricers:
            batch.extend(pricer(master, duals))
        priced += len(batch)
        fresh = 0
        for key, rc in batch:
            if rc < -tol_price and master.add_column(key):
                fresh += 1
        inserted += fresh
        if fresh == 0:
            converged = all(rc >= -tol_price for _, rc in batch)
            break
    return RelaxedSolution(
        master=master,
        objective=history[-1],
        iterations=iterations,
        converged=converged,
        objective_history=history,
        columns_priced=priced,
        columns_inserted=inserted,
    )
