"""LP and MIP kernel tests against brute-force oracles."""

import numpy as np
import pytest

from paperplan import solvekit
from paperplan.solvekit import LinearProgram, solve_lp, solve_mip

from support import lp_vertex_oracle, mip_exhaustive_oracle


def test_two_var_budget():
    # min -x - y subject to x + y <= 1
    lp = LinearProgram(2)
    lp.set_objective({0: -1.0, 1: -1.0})
    lp.add_row({0: 1.0, 1: 1.0}, "<=", 1.0)
    sol = solve_lp(lp)
    assert sol.status == solvekit.OPTIMAL
    assert sol.objective == pytest.approx(-1.0, abs=1e-9)
    assert sol.x[0] + sol.x[1] == pytest.approx(1.0, abs=1e-9)
    assert sol.duals[0] == pytest.approx(-1.0, abs=1e-9)


def test_lower_bound_written_as_row():
    # min x subject to -x <= -3, so effectively x >= 3
    lp = LinearProgram(1)
    lp.set_objective({0: 1.0})
    lp.add_row({0: -1.0}, "<=", -3.0)
    sol = solve_lp(lp)
    assert sol.status == solvekit.OPTIMAL
    assert sol.x[0] == pytest.approx(3.0, abs=1e-9)


def test_equality_row_and_duals():
    # min 2x + 3y subject to x + y = 4, x <= 3
    lp = LinearProgram(2)
    lp.set_objective({0: 2.0, 1: 3.0})
    lp.add_row({0: 1.0, 1: 1.0}, "=", 4.0)
    lp.set_bounds(0, 0.0, 3.0)
    sol = solve_lp(lp)
    assert sol.status == solvekit.OPTIMAL
    assert sol.objective == pytest.approx(2 * 3 + 3 * 1, abs=1e-9)
    # marginal unit of rhs is served by y at cost 3
    assert sol.duals[0] == pytest.approx(3.0, abs=1e-9)


def test_infeasible_reports_rows():
    lp = LinearProgram(2)
    lp.add_row({0: 1.0, 1: 1.0}, "=", 5.0)
    lp.set_bounds(0, 0.0, 1.0)
    lp.set_bounds(1, 0.0, 1.0)
    sol = solve_lp(lp)
    assert sol.status == solvekit.INFEASIBLE
    assert sol.violated_rows == [0]
    assert sol.x is not None


def test_unbounded_detected():
    lp = LinearProgram(1)
    lp.set_objective({0: -1.0})
    sol = solve_lp(lp)
    assert sol.status == solvekit.UNBOUNDED


def test_empty_feasible_region_by_bounds():
    lp = LinearProgram(1)
    lp.set_bounds(0, 2.0, 1.0)
    with pytest.raises(ValueError):
        solve_lp(lp)


def test_upper_bounds_respected():
    # maximize x + y (as min of negative) with x <= 2, y <= 3, x + y <= 4
    lp = LinearProgram(2)
    lp.set_objective({0: -1.0, 1: -1.0})
    lp.set_bounds(0, 0.0, 2.0)
    lp.set_bounds(1, 0.0, 3.0)
    lp.add_row({0: 1.0, 1: 1.0}, "<=", 4.0)
    sol = solve_lp(lp)
    assert sol.status == solvekit.OPTIMAL
    assert sol.objective == pytest.approx(-4.0, abs=1e-9)


def _random_lp(rng, n_max=4, m_max=4):
    n = int(rng.integers(1, n_max + 1))
    m = int(rng.integers(1, m_max + 1))
    lp = LinearProgram(n)
    c = rng.integers(-5, 6, size=n).astype(float)
    lp.set_objective({j: c[j] for j in range(n)})
    lower = np.zeros(n)
    upper = np.full(n, 10.0)
    for j in range(n):
        lp.set_bounds(j, 0.0, 10.0)
    rows = []
    n_eq = 0
    for _ in range(m):
        a = rng.integers(-3, 4, size=n).astype(float)
        if not np.any(a):
            a[int(rng.integers(0, n))] = 1.0
        sense = "=" if (n_eq < 2 and rng.random() < 0.25) else "<="
        if sense == "=":
            n_eq += 1
            # rhs reachable inside the box so equalities are not trivially infeasible
            x0 = rng.uniform(0.0, 4.0, size=n)
            rhs = float(np.round(a @ x0, 3))
        else:
            rhs = float(rng.integers(-10, 21))
        lp.add_row({j: a[j] for j in range(n) if a[j]}, sense, rhs)
        rows.append((a, sense, rhs))
    return lp, c, rows, lower, upper


def test_random_lps_match_vertex_enumeration():
    rng = np.random.default_rng(42)
    solved = 0
    for _ in range(200):
        lp, c, rows, lower, upper = _random_lp(rng)
        want = lp_vertex_oracle(c, rows, lower, upper)
        sol = solve_lp(lp)
        if want is None:
            assert sol.status == solvekit.INFEASIBLE
        else:
            assert sol.status == solvekit.OPTIMAL
            assert sol.objective == pytest.approx(want, abs=1e-6 * (1 + abs(want)))
            solved += 1
    assert solved > 50


def test_random_lp_duals_satisfy_complementary_slackness():
    rng = np.random.default_rng(7)
    checked = 0
    for _ in range(120):
        lp, c, rows, lower, upper = _random_lp(rng)
        sol = solve_lp(lp)
        if sol.status != solvekit.OPTIMAL:
            continue
        checked += 1
        for i, (a, sense, rhs) in enumerate(rows):
            act = float(a @ sol.x)
            if sense == "<=":
                # nonpositive duals on <= rows of a minimization
                assert sol.duals[i] <= 1e-7
                if sol.duals[i] < -1e-6:
                    assert act == pytest.approx(rhs, abs=1e-5 * (1 + abs(rhs)))
        # reduced costs signal optimality at the bounds
        d = c - np.array([a for a, _, _ in rows]).T @ sol.duals
        for j in range(lp.num_vars):
            if sol.x[j] > lower[j] + 1e-6 and sol.x[j] < upper[j] - 1e-6:
                assert abs(d[j]) <= 1e-5
            elif sol.x[j] <= lower[j] + 1e-6:
                assert d[j] >= -1e-5
            else:
                assert d[j] <= 1e-5
    assert checked > 40


def test_simple_mip():
    # max 5a + 7b with 3a + 4b <= 10: relaxation fractional, optimum a=2 b=1
    lp = LinearProgram(2)
    lp.set_objective({0: -5.0, 1: -7.0})
    lp.add_row({0: 3.0, 1: 4.0}, "<=", 10.0)
    lp.set_integer([0, 1])
    res = solve_mip(lp)
    assert res.status == solvekit.MIP_OPTIMAL
    assert res.objective == pytest.approx(-17.0, abs=1e-9)
    assert np.allclose(res.x, [2.0, 1.0])


def test_mip_infeasible_between_integers():
    lp = LinearProgram(1)
    lp.set_objective({0: 1.0})
    lp.set_bounds(0, 0.4, 0.6)
    lp.set_integer([0])
    res = solve_mip(lp)
    assert res.status == solvekit.MIP_INFEASIBLE


def test_mip_integral_relaxation_short_circuits():
    lp = LinearProgram(2)
    lp.set_objective({0: 1.0, 1: 1.0})
    lp.add_row({0: 1.0}, "=", 2.0)
    lp.add_row({1: 1.0}, "=", 3.0)
    lp.set_integer([0, 1])
    res = solve_mip(lp)
    assert res.status == solvekit.MIP_OPTIMAL
    assert res.nodes == 1
    assert np.allclose(res.x, [2.0, 3.0])


def _random_ip(rng):
    n = int(rng.integers(1, 4))
    lp = LinearProgram(n)
    c = rng.integers(-6, 7, size=n).astype(float)
    lp.set_objective({j: c[j] for j in range(n)})
    ub = rng.integers(2, 7, size=n).astype(float)
    for j in range(n):
        lp.set_bounds(j, 0.0, float(ub[j]))
    m = int(rng.integers(1, 4))
    rows = []
    for _ in range(m):
        a = rng.integers(-3, 4, size=n).astype(float)
        if not np.any(a):
            a[0] = 1.0
        if rng.random() < 0.2:
            x0 = rng.integers(0, 3, size=n).astype(float)
            rows.append((a, "=", float(a @ x0)))
        else:
            rows.append((a, "<=", float(rng.integers(0, 15))))
    for a, sense, rhs in rows:
        lp.add_row({j: a[j] for j in range(n) if a[j]}, sense, rhs)
    lp.set_integer(range(n))
    return lp, c, rows, np.zeros(n), ub


def test_random_ips_match_exhaustive_search():
    rng = np.random.default_rng(11)
    solved = 0
    for _ in range(100):
        lp, c, rows, lower, upper = _random_ip(rng)
        want, _ = mip_exhaustive_oracle(c, rows, lower, upper)
        res = solve_mip(lp)
        if want is None:
            assert res.status == solvekit.MIP_INFEASIBLE
        else:
            assert res.status == solvekit.MIP_OPTIMAL
            # integer data: optimal values are integers, match exactly
            assert res.objective == want
            solved += 1
    assert solved > 30


def test_mip_solution_is_integral_and_row_feasible():
    rng = np.random.default_rng(23)
    for _ in range(60):
        lp, c, rows, lower, upper = _random_ip(rng)
        res = solve_mip(lp)
        if res.status != solvekit.MIP_OPTIMAL:
            continue
        assert np.all(res.x == np.round(res.x))
        for a, sense, rhs in rows:
            act = float(a @ res.x)
            if sense == "=":
                assert act == pytest.approx(rhs, abs=1e-6 * (1 + abs(rhs)))
            else:
                assert act <= rhs + 1e-6 * (1 + abs(rhs))


def test_warm_start_matches_cold_after_bound_change():
    rng = np.random.default_rng(5)
    agreed = 0
    for _ in range(80):
        lp, c, rows, lower, upper = _random_lp(rng)
        kern = solvekit._Kernel(lp)
        base = kern.solve()
        if base.status != solvekit.OPTIMAL:
            continue
        lo = lp.lower.copy()
        hi = lp.upper.copy()
        j = int(rng.integers(0, lp.num_vars))
        if rng.random() < 0.5:
            lo[j] = min(np.floor(base.x[j]) + 1.0, hi[j])
        else:
            hi[j] = max(np.floor(base.x[j]), lo[j])
        warm = kern.solve(lower=lo, upper=hi, warm=base.basis)
        cold = solvekit._Kernel(lp).solve(lower=lo, upper=hi)
        assert warm.status == cold.status
        if warm.status == solvekit.OPTIMAL:
            assert warm.objective == pytest.approx(
                cold.objective, abs=1e-6 * (1 + abs(cold.objective))
            )
            agreed += 1
    assert agreed > 25


def test_solver_is_deterministic():
    def run():
        rng = np.random.default_rng(99)
        outs = []
        for _ in range(30):
            lp, *_ = _random_lp(rng)
            sol = solve_lp(lp)
            if sol.status == solvekit.OPTIMAL:
                outs.append((sol.objective, tuple(sol.x), tuple(sol.duals), sol.iterations))
            else:
                outs.append((sol.status,))
        return outs

    assert run() == run()


def test_mip_node_limit_truncates():
    rng = np.random.default_rng(3)
    lp, *_ = _random_ip(rng)
    res = solve_mip(lp, node_limit=1)
    assert res.status in (
        solvekit.MIP_OPTIMAL,
        solvekit.MIP_FEASIBLE,
        solvekit.MIP_TIMEOUT,
        solvekit.MIP_INFEASIBLE,
    )
    assert res.nodes <= 1


def test_lp_text_rendering_smoke():
    lp = LinearProgram(2)
    lp.set_objective({0: 1.0})
    lp.add_row({0: 1.0, 1: 2.0}, "<=", 3.0)
    lp.set_integer([1])
    text = lp.to_lp_text("demo")
    assert "Minimize" in text and "Subject To" in text and "General" in text
