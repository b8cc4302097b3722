"""Self-contained LP and MIP kernel.

A bounded-variable two-phase primal simplex with dense basis inverse and dual
values per row, plus a deterministic depth-first branch-and-bound solver for
mixed-integer programs.  A dual-simplex path re-optimizes warm starts after
bound changes (the only kind of change branch-and-bound makes); it falls back
to the cold primal solve whenever anything looks off.

Scale target is small dense problems: hundreds of rows, a few thousand
columns.  Determinism is part of the contract: fixed pivoting rules, fixed
tie-breaks, and no wall-clock dependent decisions outside of time-limit
truncation.
"""

import time
from dataclasses import dataclass, field

import numpy as np

TOL_FEAS = 1e-7
TOL_OPT = 1e-7
TOL_CS = 1e-6
TOL_INT = 1e-6

_TOL_PIV = 1e-9
_BLAND_STALL = 120   # pivots without improvement before Bland's rule engages
_REFRESH = 64        # pivots between basis refactorizations
_MAX_ITER = 20000

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"
NUMERICAL = "numerical"

MIP_OPTIMAL = "optimal"
MIP_FEASIBLE = "feasible-incumbent"
MIP_INFEASIBLE = "infeasible"
MIP_TIMEOUT = "timeout-no-incumbent"

_AT_LOWER, _AT_UPPER, _BASIC = 0, 1, 2


class LinearProgram:
    """Minimize c'x subject to rows of the form a'x = b or a'x <= b.

    Variables have finite lower bounds (default 0), optional upper bounds
    (default +inf) and an integrality mask used only by solve_mip.
    """

    def __init__(self, num_vars):
        if num_vars < 0:
            raise ValueError("num_vars must be >= 0")
        self.num_vars = num_vars
        self.c = np.zeros(num_vars)
        self.rows = []            # list of (coeff dict, sense, rhs)
        self.lower = np.zeros(num_vars)
        self.upper = np.full(num_vars, np.inf)
        self.integer = np.zeros(num_vars, dtype=bool)

    def add_row(self, coeffs, sense, rhs):
        """Add a constraint row; returns its index.  sense is "=" or "<="."""
        if sense not in ("=", "<="):
            raise ValueError("sense must be '=' or '<=', got %r" % (sense,))
        self.rows.append((dict(coeffs), sense, float(rhs)))
        return len(self.rows) - 1

    def set_objective(self, coeffs):
        """Set objective coefficients from a {index: value} map or a full sequence."""
        if hasattr(coeffs, "items"):
            for j, cj in coeffs.items():
                self.c[j] = float(cj)
        else:
            self.c[:] = np.asarray(coeffs, dtype=float)

    def set_bounds(self, j, lower, upper):
        self.lower[j] = lower
        self.upper[j] = np.inf if upper is None else upper

    def set_integer(self, indices, flag=True):
        for j in indices:
            self.integer[j] = flag

    def validate(self):
        if not np.all(np.isfinite(self.c)):
            raise ValueError("objective has non-finite coefficients")
        if not np.all(np.isfinite(self.lower)):
            raise ValueError("lower bounds must be finite")
        if np.any(self.upper < self.lower):
            raise ValueError("upper bound below lower bound")
        for i, (coeffs, sense, rhs) in enumerate(self.rows):
            if sense not in ("=", "<="):
                raise ValueError("row %d has bad sense %r" % (i, sense))
            if not np.isfinite(rhs):
                raise ValueError("row %d has non-finite rhs" % i)
            for j, a in coeffs.items():
                if not 0 <= j < self.num_vars:
                    raise ValueError("row %d references unknown variable %d" % (i, j))
                if not np.isfinite(a):
                    raise ValueError("row %d has non-finite coefficient" % i)

    def to_lp_text(self, name="problem"):
        """Render in the plain LP text format, for debugging."""
        out = ["\\ %s" % name, "Minimize", " obj:"]
        terms = []
        for j in range(self.num_vars):
            if self.c[j] != 0.0:
                terms.append(" %+.12g x%d" % (self.c[j], j))
        out.append("".join(terms) if terms else " 0 x0")
        out.append("Subject To")
        for i, (coeffs, sense, rhs) in enumerate(self.rows):
            body = "".join(" %+.12g x%d" % (a, j) for j, a in sorted(coeffs.items()))
            rel = "=" if sense == "=" else "<="
            out.append(" r%d:%s %s %.12g" % (i, body, rel, rhs))
        out.append("Bounds")
        for j in range(self.num_vars):
            hi = "+inf" if not np.isfinite(self.upper[j]) else "%.12g" % self.upper[j]
            out.append(" %.12g <= x%d <= %s" % (self.lower[j], j, hi))
        ints = [j for j in range(self.num_vars) if self.integer[j]]
        if ints:
            out.append("General")
            out.append(" " + " ".join("x%d" % j for j in ints))
        out.append("End")
        return "\n".join(out) + "\n"


@dataclass
class LpSolution:
    """Result of an LP solve.  x/duals/objective are None unless optimal.

    On infeasibility, x holds the least-infeasible point found by phase 1 and
    violated_rows names the rows that could not be satisfied.
    """

    status: str
    x: np.ndarray = None
    duals: np.ndarray = None
    objective: float = None
    violated_rows: list = field(default_factory=list)
    basis: tuple = None
    iterations: int = 0


@dataclass
class MipResult:
    """Result of a branch-and-bound solve."""

    status: str
    x: np.ndarray = None
    objective: float = None
    bound: float = None
    nodes: int = 0
    elapsed: float = 0.0
    basis: tuple = None
    truncated: bool = False


class _Kernel:
    """Solver state shared across solves of one LP structure.

    Columns are laid out as [structural | slack | artificial]; bounds may vary
    between solves (branch-and-bound), the matrix and costs may not.
    """

    def __init__(self, lp):
        lp.validate()
        self.lp = lp
        m = len(lp.rows)
        n = lp.num_vars
        self.m, self.n = m, n
        self.slack_col = np.full(m, -1, dtype=int)
        n_slack = 0
        for i, (_, sense, _) in enumerate(lp.rows):
            if sense == "<=":
                self.slack_col[i] = n + n_slack
                n_slack += 1
        self.n_slack = n_slack
        self.art0 = n + n_slack
        N = n + n_slack + m
        self.N = N
        A = np.zeros((m, N))
        b = np.zeros(m)
        for i, (coeffs, sense, rhs) in enumerate(lp.rows):
            for j, a in coeffs.items():
                A[i, j] += a
            if self.slack_col[i] >= 0:
                A[i, self.slack_col[i]] = 1.0
            b[i] = rhs
        self.A = A
        self.b = b
        self.c2 = np.concatenate([lp.c, np.zeros(n_slack + m)])
        # mutable per-solve state
        self.lo = None
        self.hi = None
        self.basis = None
        self.vstat = None
        self.Binv = None
        self.x = None
        self._since_refresh = 0
        self._iters = 0

    # -- state helpers -------------------------------------------------

    def _full_bounds(self, lower, upper):
        lo = np.empty(self.N)
        hi = np.empty(self.N)
        lo[: self.n] = self.lp.lower if lower is None else lower
        hi[: self.n] = self.lp.upper if upper is None else upper
        lo[self.n : self.art0] = 0.0
        hi[self.n : self.art0] = np.inf
        lo[self.art0 :] = 0.0
        hi[self.art0 :] = 0.0
        return lo, hi

    def _refactor(self):
        B = self.A[:, self.basis]
        try:
            self.Binv = np.linalg.inv(B)
        except np.linalg.LinAlgError:
            return False
        tmp = self.x.copy()
        tmp[self.basis] = 0.0
        self.x[self.basis] = self.Binv @ (self.b - self.A @ tmp)
        self._since_refresh = 0
        return True

    def _objective(self, c):
        return float(c @ self.x)

    def _pivot(self, e, r, w):
        """Make column e basic in row r; w = Binv @ A[:, e]."""
        lv = self.basis[r]
        self.basis[r] = e
        self.vstat[e] = _BASIC
        piv = w[r]
        row = self.Binv[r] / piv
        wcol = w.copy()
        wcol[r] = 0.0
        self.Binv -= np.outer(wcol, row)
        self.Binv[r] = row
        self._since_refresh += 1
        return lv

    # -- primal simplex ------------------------------------------------

    def _primal(self, c, max_iter=_MAX_ITER, bland=False):
        m, N = self.m, self.N
        stall = 0
        best = np.inf
        while self._iters < max_iter:
            self._iters += 1
            if self._since_refresh >= _REFRESH:
                if not self._refactor():
                    return NUMERICAL
            pi = self.Binv.T @ c[self.basis]
            d = c - self.A.T @ pi
            movable = self.lo < self.hi
            nb_low = (self.vstat == _AT_LOWER) & movable & (d < -TOL_OPT)
            nb_up = (self.vstat == _AT_UPPER) & movable & (d > TOL_OPT)
            cands = np.nonzero(nb_low | nb_up)[0]
            if cands.size == 0:
                return OPTIMAL
            if bland:
                e = int(cands[0])
            else:
                e = int(cands[np.argmax(np.abs(d[cands]))])
            sigma = 1.0 if self.vstat[e] == _AT_LOWER else -1.0
            w = self.Binv @ self.A[:, e]
            xB = self.x[self.basis]
            loB = self.lo[self.basis]
            hiB = self.hi[self.basis]
            sw = sigma * w
            lim = np.full(m, np.inf)
            dec = sw > _TOL_PIV
            inc = sw < -_TOL_PIV
            with np.errstate(invalid="ignore"):
                lim[dec] = (xB[dec] - loB[dec]) / sw[dec]
                lim[inc] = (xB[inc] - hiB[inc]) / sw[inc]
            lim = np.maximum(lim, 0.0)
            row_min = float(lim.min()) if m else np.inf
            span = self.hi[e] - self.lo[e]
            if not np.isfinite(min(span, row_min)):
                return UNBOUNDED
            if span <= row_min:
                step = span  # bound flip
                self.x[e] += sigma * step
                self.x[self.basis] = xB - sigma * step * w
                self.vstat[e] = _AT_UPPER if self.vstat[e] == _AT_LOWER else _AT_LOWER
                self.x[e] = self.hi[e] if self.vstat[e] == _AT_UPPER else self.lo[e]
            else:
                ties = np.nonzero(lim <= row_min + 1e-12)[0]
                if bland:
                    r = int(ties[np.argmin(self.basis[ties])])
                else:
                    order = np.lexsort((self.basis[ties], -np.abs(w[ties])))
                    r = int(ties[order[0]])
                step = row_min
                self.x[e] += sigma * step
                self.x[self.basis] = xB - sigma * step * w
                lv = self._pivot(e, r, w)
                if sw[r] > 0:
                    self.vstat[lv] = _AT_LOWER
                    self.x[lv] = self.lo[lv]
                else:
                    self.vstat[lv] = _AT_UPPER
                    self.x[lv] = self.hi[lv]
            cur = self._objective(c)
            if cur < best - max(1e-9, 1e-12 * abs(best)):
                best = cur
                stall = 0
            else:
                stall += 1
                if stall > _BLAND_STALL:
                    bland = True
        return NUMERICAL

    # -- dual simplex (warm re-optimization) ---------------------------

    def _dual(self, c, max_iter=6000):
        stall = 0
        best_viol = np.inf
        it = 0
        while it < max_iter:
            it += 1
            self._iters += 1
            if self._since_refresh >= _REFRESH:
                if not self._refactor():
                    return NUMERICAL
            xB = self.x[self.basis]
            loB = self.lo[self.basis]
            hiB = self.hi[self.basis]
            ftol = TOL_FEAS * (1.0 + np.abs(self.b).max(initial=0.0))
            below = loB - xB
            above = xB - hiB
            viol = np.maximum(np.maximum(below, above), 0.0)
            worst = float(viol.max(initial=0.0))
            if worst <= ftol:
                return OPTIMAL
            if worst < best_viol - ftol:
                best_viol = worst
                stall = 0
            else:
                stall += 1
                if stall > 400:
                    return NUMERICAL
            r = int(np.argmax(viol))
            below_case = below[r] >= above[r]
            rho = self.Binv[r] @ self.A
            pi = self.Binv.T @ c[self.basis]
            d = c - self.A.T @ pi
            movable = (self.vstat != _BASIC) & (self.lo < self.hi)
            at_lo = movable & (self.vstat == _AT_LOWER)
            at_up = movable & (self.vstat == _AT_UPPER)
            if below_case:
                elig = (at_lo & (rho < -_TOL_PIV)) | (at_up & (rho > _TOL_PIV))
            else:
                elig = (at_lo & (rho > _TOL_PIV)) | (at_up & (rho < -_TOL_PIV))
            ej = np.nonzero(elig)[0]
            if ej.size == 0:
                self._infeasible_row = r
                return INFEASIBLE
            ratios = np.abs(d[ej]) / np.abs(rho[ej])
            e = int(ej[np.argmin(ratios)])
            lv = self.basis[r]
            target = loB[r] if below_case else hiB[r]
            w = self.Binv @ self.A[:, e]
            delta_e = (self.x[lv] - target) / rho[e]
            self.x[e] += delta_e
            self.x[self.basis] = xB - delta_e * w
            self._pivot(e, r, w)
            self.vstat[lv] = _AT_LOWER if below_case else _AT_UPPER
            self.x[lv] = target
        return NUMERICAL

    # -- top-level solves ----------------------------------------------

    def _package_optimal(self):
        self._refactor()
        pi = self.Binv.T @ self.c2[self.basis]
        x = self.x[: self.n].copy()
        return LpSolution(
            status=OPTIMAL,
            x=x,
            duals=pi.copy(),
            objective=float(self.lp.c @ x),
            basis=(self.basis.copy(), self.vstat.copy()),
            iterations=self._iters,
        )

    def _cold(self):
        m, n, N = self.m, self.n, self.N
        self.vstat = np.full(N, _AT_LOWER, dtype=np.int8)
        self.x = self.lo.copy()
        self.x[np.isinf(self.lo)] = 0.0  # unreachable: lower bounds finite
        self.basis = np.zeros(m, dtype=int)
        self.A[:, self.art0 :] = 0.0
        resid = self.b - self.A[:, : self.art0] @ self.x[: self.art0]
        c1 = np.zeros(N)
        need_art = False
        for i in range(m):
            sc = self.slack_col[i]
            if sc >= 0 and resid[i] >= 0.0:
                self.basis[i] = sc
                self.vstat[sc] = _BASIC
                self.x[sc] = resid[i]
            else:
                ac = self.art0 + i
                sign = 1.0 if resid[i] >= 0.0 else -1.0
                self.A[i, ac] = sign
                self.hi[ac] = np.inf
                self.basis[i] = ac
                self.vstat[ac] = _BASIC
                self.x[ac] = abs(resid[i])
                c1[ac] = 1.0
                need_art = True
        self.Binv = np.eye(m)
        for i in range(m):
            self.Binv[i, i] = 1.0 if self.A[i, self.basis[i]] >= 0 else -1.0
        self._since_refresh = 0
        if need_art:
            st = self._primal(c1)
            if st == NUMERICAL:
                return LpSolution(status=NUMERICAL, iterations=self._iters)
            arts = self.x[self.art0 :]
            infeas_tol = TOL_FEAS * (1.0 + np.abs(self.b).max(initial=0.0)) * 4.0
            if float(arts.sum()) > infeas_tol:
                violated = [
                    i
                    for i in range(m)
                    if arts[i] > TOL_FEAS * (1.0 + abs(self.b[i]))
                ]
                return LpSolution(
                    status=INFEASIBLE,
                    x=self.x[:n].copy(),
                    violated_rows=violated,
                    iterations=self._iters,
                )
            # pin artificials and pivot basic ones out where the row allows
            self.hi[self.art0 :] = 0.0
            for i in range(m):
                if self.basis[i] >= self.art0:
                    row = self.Binv[i] @ self.A[:, : self.art0]
                    cand = np.nonzero(
                        (np.abs(row) > 1e-7) & (self.vstat[: self.art0] != _BASIC)
                    )[0]
                    if cand.size:
                        e = int(cand[0])
                        w = self.Binv @ self.A[:, e]
                        lv = self._pivot(e, i, w)
                        self.vstat[lv] = _AT_LOWER
                        self.x[lv] = 0.0
        st = self._primal(self.c2)
        if st == OPTIMAL:
            return self._package_optimal()
        if st == UNBOUNDED:
            return LpSolution(status=UNBOUNDED, iterations=self._iters)
        return LpSolution(status=NUMERICAL, iterations=self._iters)

    def solve(self, lower=None, upper=None, warm=None):
        """Solve with the given structural bounds, optionally from a warm basis."""
        self.lo, self.hi = self._full_bounds(lower, upper)
        self._iters = 0
        if warm is not None:
            out = self._try_warm(warm)
            if out is not None:
                return out
            self.lo, self.hi = self._full_bounds(lower, upper)
        return self._cold()

    def _try_warm(self, warm):
        basis, vstat = warm
        if len(basis) != self.m or len(vstat) != self.N:
            return None
        self.basis = np.array(basis, dtype=int)
        self.vstat = np.array(vstat, dtype=np.int8)
        # normalize nonbasic statuses against the current bounds
        for j in np.nonzero(self.vstat != _BASIC)[0]:
            if self.vstat[j] == _AT_UPPER and not np.isfinite(self.hi[j]):
                self.vstat[j] = _AT_LOWER
        self.x = np.where(self.vstat == _AT_UPPER, self.hi, self.lo)
        self.x[~np.isfinite(self.x)] = 0.0
        if not self._refactor():
            return None
        # the warm basis must price out dual-feasible, else fall back cold
        pi = self.Binv.T @ self.c2[self.basis]
        d = self.c2 - self.A.T @ pi
        movable = (self.vstat != _BASIC) & (self.lo < self.hi)
        bad = (
            (movable & (self.vstat == _AT_LOWER) & (d < -1e-5))
            | (movable & (self.vstat == _AT_UPPER) & (d > 1e-5))
        )
        if bool(bad.any()):
            return None
        self._infeasible_row = None
        st = self._dual(self.c2)
        if st == OPTIMAL:
            return self._package_optimal()
        if st == INFEASIBLE:
            return LpSolution(
                status=INFEASIBLE,
                x=self.x[: self.n].copy(),
                violated_rows=[self._infeasible_row],
                iterations=self._iters,
            )
        return None  # numerical trouble: caller re-solves cold


def solve_lp(lp):
    """Solve an LP cold; returns an LpSolution with duals per row."""
    return _Kernel(lp).solve()


def _fractional(x, integer_mask):
    xi = x[integer_mask]
    frac = np.abs(xi - np.round(xi))
    return frac


def solve_mip(lp, time_limit=None, warm_basis=None, node_limit=None, gap=0.0, branch_idx=None):
    """Branch-and-bound over the LP relaxation.

    Branches on the most fractional integer variable (ties: lowest index),
    explores depth-first diving toward the nearer integer first, and restarts
    from the best-bound open node every 1000 nodes.  The time limit only
    truncates the search; truncated results are labeled by status.

    A positive ``gap`` prunes open nodes whose bound is within the relative
    gap of the incumbent; the search then stops early with a solution proven
    no worse than ``gap`` times the optimum, reported as feasible rather than
    optimal.  The default demands exact optimality.

    ``branch_idx`` narrows branching to the given variables.  Useful when the
    remaining integer variables are forced to integrality by equality rows
    once these are integral (stock balances); they still count toward the
    leaf test, and branching falls back to them if they stay fractional.
    """
    int_idx = np.nonzero(lp.integer)[0]
    if int_idx.size == 0:
        raise ValueError("solve_mip requires at least one integer variable")
    if branch_idx is None:
        branch_arr = int_idx
    else:
        branch_arr = np.array(sorted(set(int(j) for j in branch_idx)), dtype=int)
    t0 = time.monotonic()
    kernel = _Kernel(lp)
    incumbent = None
    incumbent_obj = np.inf
    incumbent_basis = None
    cutoff = np.inf
    pruned_bound = np.inf
    nodes = 0
    counter = 0
    next_restart = 1000
    # node: (bound, counter, lower, upper, warm)
    root = (-np.inf, counter, lp.lower.copy(), lp.upper.copy(), warm_basis)
    stack = [root]
    truncated = False
    while stack:
        if time_limit is not None and time.monotonic() - t0 > time_limit:
            truncated = True
            break
        if node_limit is not None and nodes >= node_limit:
            truncated = True
            break
        if nodes >= next_restart:
            # best-bound restart: put the most promising node on top
            stack.sort(key=lambda nd: (-nd[0] if np.isfinite(nd[0]) else np.inf, -nd[1]))
            next_restart += 1000
        bound, _, lo, hi, warm = stack.pop()
        if bound >= cutoff:
            if bound < incumbent_obj - 1e-9:
                # discarded by the gap tolerance, not by proof of dominance
                pruned_bound = min(pruned_bound, bound)
            continue
        nodes += 1
        sol = kernel.solve(lower=lo, upper=hi, warm=warm)
        if sol.status in (INFEASIBLE, NUMERICAL):
            continue
        if sol.status == UNBOUNDED:
            raise ValueError("MIP relaxation is unbounded")
        if sol.objective >= cutoff:
            if sol.objective < incumbent_obj - 1e-9:
                pruned_bound = min(pruned_bound, sol.objective)
            continue
        frac = _fractional(sol.x, lp.integer)
        if frac.size and float(frac.max()) > TOL_INT:
            if nodes == 1 or (incumbent is None and nodes % 256 == 0):
                # rounding heuristic: fixing integers at their ceilings keeps
                # covering rows satisfied, so this often lands feasible and
                # seeds the incumbent long before the dive bottoms out
                ce = np.ceil(sol.x[int_idx] - TOL_INT)
                ce = np.minimum(np.maximum(ce, lo[int_idx]), hi[int_idx])
                if bool(np.all(np.abs(ce - np.round(ce)) <= TOL_INT)):
                    lo_h = lo.copy()
                    hi_h = hi.copy()
                    lo_h[int_idx] = ce
                    hi_h[int_idx] = ce
                    rep = kernel.solve(lower=lo_h, upper=hi_h, warm=sol.basis)
                    if rep.status == OPTIMAL and rep.objective < incumbent_obj - 1e-9:
                        x = rep.x.copy()
                        x[int_idx] = ce
                        incumbent = x
                        incumbent_obj = rep.objective
                        incumbent_basis = rep.basis
                        cutoff = incumbent_obj - max(
                            1e-9, gap * max(1.0, abs(incumbent_obj))
                        )
            frac_b = np.abs(sol.x[branch_arr] - np.round(sol.x[branch_arr]))
            if frac_b.size and float(frac_b.max()) > TOL_INT:
                j = int(branch_arr[np.argmax(frac_b)])
            else:
                j = int(int_idx[np.argmax(frac)])
            xj = sol.x[j]
            fl = np.floor(xj)
            lo_up = lo.copy()
            lo_up[j] = max(lo[j], fl + 1.0)
            hi_dn = hi.copy()
            hi_dn[j] = min(hi[j], fl)
            counter += 1
            up_node = (sol.objective, counter, lo_up, hi, sol.basis)
            counter += 1
            dn_node = (sol.objective, counter, lo, hi_dn, sol.basis)
            if xj - fl >= 0.5:
                first, second = up_node, dn_node
            else:
                first, second = dn_node, up_node
            if second[2][j] <= second[3][j]:
                stack.append(second)
            if first[2][j] <= first[3][j]:
                stack.append(first)
            continue
        # integral within tolerance: fix integers exactly and repair the rest
        lo_fix = lo.copy()
        hi_fix = hi.copy()
        rounded = np.round(sol.x[int_idx])
        lo_fix[int_idx] = rounded
        hi_fix[int_idx] = rounded
        rep = kernel.solve(lower=lo_fix, upper=hi_fix, warm=sol.basis)
        if rep.status != OPTIMAL:
            continue
        if rep.objective < incumbent_obj - 1e-9:
            x = rep.x.copy()
            x[int_idx] = rounded
            incumbent = x
            incumbent_obj = rep.objective
            incumbent_basis = rep.basis
            cutoff = incumbent_obj - max(1e-9, gap * max(1.0, abs(incumbent_obj)))
    elapsed = time.monotonic() - t0
    if incumbent is not None:
        proven = not truncated and pruned_bound >= incumbent_obj - 1e-9
        status = MIP_OPTIMAL if proven else MIP_FEASIBLE
        open_bounds = [nd[0] for nd in stack if np.isfinite(nd[0])]
        bound = min(open_bounds + [pruned_bound, incumbent_obj])
        return MipResult(
            status=status,
            x=incumbent,
            objective=incumbent_obj,
            bound=bound,
            nodes=nodes,
            elapsed=elapsed,
            basis=incumbent_basis,
            truncated=truncated,
        )
    if truncated:
        return MipResult(status=MIP_TIMEOUT, nodes=nodes, elapsed=elapsed, truncated=True)
    return MipResult(status=MIP_INFEASIBLE, nodes=nodes, elapsed=elapsed)
