"""Shared test oracles and generators.

Everything here is deliberately brute-force and independent of the library's
solution paths: vertex enumeration for LPs, exhaustive search for integer
programs and cutting patterns.  Slow but obviously correct at tiny sizes.
"""

import itertools

import numpy as np

from paperplan import instances


def lp_vertex_oracle(c, rows, lower, upper, tol=1e-7):
    """Optimal objective of min c'x over {rows, lower <= x <= upper}, or None.

    rows is a list of (coeffs array, sense, rhs) with sense "=" or "<=".
    All bounds must be finite so the feasible set is a polytope and every
    nonempty feasible set has an optimal vertex.
    """
    c = np.asarray(c, dtype=float)
    n = c.size
    cons = [(np.asarray(a, dtype=float), sense, float(b)) for a, sense, b in rows]
    eq_idx = [i for i, (_, sense, _) in enumerate(cons) if sense == "="]

    def feasible(x):
        if np.any(x < lower - tol) or np.any(x > upper + tol):
            return False
        for a, sense, b in cons:
            v = float(a @ x)
            if sense == "=" and abs(v - b) > tol * (1 + abs(b)):
                return False
            if sense == "<=" and v > b + tol * (1 + abs(b)):
                return False
        return True

    planes = [(a, b) for a, _, b in cons]
    for j in range(n):
        e = np.zeros(n)
        e[j] = 1.0
        planes.append((e, float(lower[j])))
        planes.append((e, float(upper[j])))
    best = None
    for combo in itertools.combinations(range(len(planes)), n):
        if any(i not in combo for i in eq_idx):
            continue
        M = np.array([planes[i][0] for i in combo])
        rhs = np.array([planes[i][1] for i in combo])
        if abs(np.linalg.det(M)) < 1e-9:
            continue
        x = np.linalg.solve(M, rhs)
        if feasible(x):
            v = float(c @ x)
            if best is None or v < best - 0.0:
                best = min(best, v) if best is not None else v
    return best


def mip_exhaustive_oracle(c, rows, lower, upper):
    """Optimal (objective, x) of the all-integer program by full enumeration."""
    n = len(c)
    ranges = [range(int(lower[j]), int(upper[j]) + 1) for j in range(n)]
    best = None
    best_x = None
    for point in itertools.product(*ranges):
        x = np.array(point, dtype=float)
        ok = True
        for a, sense, b in rows:
            v = float(np.asarray(a, dtype=float) @ x)
            if sense == "=" and abs(v - b) > 1e-9:
                ok = False
                break
            if sense == "<=" and v > b + 1e-9:
                ok = False
                break
        if not ok:
            continue
        v = float(np.asarray(c, dtype=float) @ x)
        if best is None or v < best:
            best = v
            best_x = x
    return best, best_x


def knapsack_bruteforce(sizes, values, capacity):
    """Best (value, counts) for the unbounded integer knapsack, by recursion."""
    n = len(sizes)
    best = [0.0, tuple([0] * n)]

    def rec(i, cap, val, counts):
        if val > best[0] + 1e-12:
            best[0] = val
            best[1] = tuple(counts)
        if i == n:
            return
        rec(i + 1, cap, val, counts)
        if sizes[i] <= cap:
            counts[i] += 1
            rec(i, cap - sizes[i], val + values[i], counts)
            counts[i] -= 1

    rec(0, capacity, 0.0, [0] * n)
    return best[0], best[1]


def enumerate_1d_patterns(lengths, capacity):
    """All count vectors a with sum(a[i] * lengths[i]) <= capacity."""
    n = len(lengths)
    out = []

    def rec(i, cap, counts):
        if i == n:
            out.append(tuple(counts))
            return
        max_c = cap // lengths[i]
        for q in range(max_c + 1):
            counts[i] = q
            rec(i + 1, cap - q * lengths[i], counts)
        counts[i] = 0

    rec(0, capacity, [0] * n)
    return out


def enumerate_strips(widths, allowed, width_capacity):
    """All strip loadings over the allowed sheet set within the width budget."""
    n = len(widths)
    out = []

    def rec(i, cap, counts):
        if i == n:
            out.append(tuple(counts))
            return
        if i not in allowed:
            counts[i] = 0
            rec(i + 1, cap, counts)
            return
        max_c = cap // widths[i]
        for q in range(max_c + 1):
            counts[i] = q
            rec(i + 1, cap - q * widths[i], counts)
        counts[i] = 0

    rec(0, width_capacity, [0] * n)
    return out


def enumerate_2d_counts(inst, i2):
    """All sheet-count vectors reachable by two-stage strip cutting of reel i2.

    Strips run across the reel width; each strip has the reference length of
    some sheet and holds sheets allowed by the trimming rule; the strip
    lengths must fit the reel length.  Returns a set of count tuples.
    """
    p2, p3 = inst.phase2, inst.phase3
    k = next(kk for kk, members in enumerate(p2.S2) if i2 in members)
    sheets = list(p3.S3[k])
    w2 = p2.w2[i2]
    l2 = p2.l2[i2]
    ref_lengths = sorted({p3.l3[i3] for i3 in sheets if p3.l3[i3] <= l2})
    strip_sets = {}
    for ref in ref_lengths:
        if p3.trimming_allowed:
            allowed = {i3 for i3 in sheets if p3.l3[i3] <= ref}
        else:
            allowed = {i3 for i3 in sheets if p3.l3[i3] == ref}
        strip_sets[ref] = enumerate_strips(p3.w3, allowed, w2)

    reach = set()

    def rec(ri, remaining, acc):
        reach.add(tuple(acc))
        if ri == len(ref_lengths):
            return
        ref = ref_lengths[ri]
        max_b = remaining // ref
        combos = strip_sets[ref]
        # choose how many strips of this reference length, each loading freely
        def strips(b_left, cap_left, acc2):
            reach.add(tuple(acc2))
            if b_left == 0:
                rec(ri + 1, cap_left, acc2)
                return
            rec(ri + 1, cap_left, acc2)
            for combo in combos:
                nxt = list(acc2)
                for i3, q in enumerate(combo):
                    nxt[i3] += q
                strips(b_left - 1, cap_left - ref, nxt)

        strips(max_b, remaining, list(acc))

    rec(0, l2, [0] * inst.dims.Nf3)
    return reach


def make_tiny_instance(
    seed=0,
    T=2,
    Theta=2,
    Nf2=2,
    Nf3=2,
    M1=1,
    M2=1,
    M3=1,
    trimming=True,
    zero_demand=False,
):
    """Hand-scale instance with small integer dimensions for enumeration oracles."""
    rng = np.random.default_rng(seed)
    K = 1
    dims = instances.Dimensions(K=K, T=T, Theta=Theta, M1=M1, M2=M2, M3=M3, Nf2=Nf2, Nf3=Nf3)
    L = tuple(int(rng.integers(10, 16)) for _ in range(M1))
    l2 = tuple(int(rng.integers(3, 6)) for _ in range(Nf2))
    w2 = tuple([10] * Nf2)
    l3 = tuple(int(rng.integers(2, 5)) for _ in range(Nf3))
    w3 = tuple(int(rng.integers(2, 5)) for _ in range(Nf3))
    b1 = tuple(round(0.1 * Lv, 6) for Lv in L)
    b2 = tuple(round(0.1 * lv, 6) for lv in l2)
    b3 = tuple(round(0.01 * l3[i] * w3[i], 6) for i in range(Nf3))
    d2 = tuple(
        tuple(0 if zero_demand else int(rng.integers(0, 7)) for _ in range(T))
        for _ in range(Nf2)
    )
    d3 = tuple(
        tuple(0 if zero_demand else int(rng.integers(0, 9)) for _ in range(Theta))
        for _ in range(Nf3)
    )
    phase1 = instances.Phase1Params(
        c1=tuple(tuple(tuple(round(float(rng.uniform(1.0, 2.0)), 6) for _ in range(T)) for _ in range(M1)) for _ in range(K)),
        h1=tuple(tuple(round(float(rng.uniform(0.2, 0.4)), 6) for _ in range(T)) for _ in range(K)),
        L=L,
        b1=tuple([b1] * K),
        d1=tuple(tuple(tuple([0] * T) for _ in range(M1)) for _ in range(K)),
        f1=tuple(tuple(round(float(rng.uniform(1.0, 2.0)), 6) for _ in range(M1)) for _ in range(K)),
        C1=tuple([200.0] * T),
    )
    phase2 = instances.Phase2Params(
        c2=tuple(tuple(round(float(rng.uniform(0.05, 0.2)), 6) for _ in range(T)) for _ in range(K)),
        h2=tuple(tuple(round(float(rng.uniform(0.1, 0.2)), 6) for _ in range(T)) for _ in range(Nf2)),
        l2=l2,
        w2=w2,
        b2=b2,
        d2=d2,
        f2=tuple(tuple(tuple(round(float(rng.uniform(1.0, 2.0)), 6) for _ in range(M2)) for _ in range(M1)) for _ in range(K)),
        C2=tuple([200.0] * T),
        S2=(tuple(range(Nf2)),),
    )
    phase3 = instances.Phase3Params(
        c3=tuple(tuple(round(float(rng.uniform(0.02, 0.08)), 6) for _ in range(Theta)) for _ in range(K)),
        h3=tuple(tuple(round(float(rng.uniform(0.05, 0.1)), 6) for _ in range(Theta)) for _ in range(Nf3)),
        l3=l3,
        w3=w3,
        b3=b3,
        d3=d3,
        f3=tuple(tuple(round(float(rng.uniform(1.0, 2.0)), 6) for _ in range(M3)) for _ in range(Nf2)),
        C3=tuple([150.0] * Theta),
        S3=(tuple(range(Nf3)),),
        trimming_allowed=trimming,
    )
    return instances.Instance(dims=dims, phase1=phase1, phase2=phase2, phase3=phase3, seed=seed, class_id=None)


def check_plan(inst, scope, values, delta1=None, delta2=None, tol=1e-6):
    """Re-evaluate every constraint of a plan from first principles.

    Returns a list of violation messages; empty means the plan is feasible.
    Written directly from the balance semantics, independent of the master's
    coefficient matrices.
    """
    from paperplan.master import E1, E2, E3, X1, Y2, Y3

    errors = []
    d = inst.dims
    scope = frozenset(scope)

    def get(key):
        return float(values.get(key, 0.0))

    for key, v in values.items():
        if abs(v - round(v)) > tol:
            errors.append("%r has fractional value %r" % (key, v))
        if v < -tol:
            errors.append("%r is negative" % (key,))

    y2_by_kmt = {}
    y2_counts = {}
    y3_by_reel = {}
    y3_counts = {}
    for key, v in values.items():
        if isinstance(key, Y2) and v:
            y2_by_kmt[(key.k, key.m1, key.t)] = (
                y2_by_kmt.get((key.k, key.m1, key.t), 0.0) + v
            )
            for i2, a in enumerate(key.pattern.counts):
                if a:
                    y2_counts[(i2, key.t)] = y2_counts.get((i2, key.t), 0.0) + a * v
        elif isinstance(key, Y3) and v:
            y3_by_reel[key.i2] = y3_by_reel.get(key.i2, 0.0) + v
            for i3, a in enumerate(key.pattern.counts):
                if a:
                    y3_counts[(i3, key.tau)] = y3_counts.get((i3, key.tau), 0.0) + a * v

    if 1 in scope:
        for k in range(d.K):
            for m1 in range(d.M1):
                for t in range(d.T):
                    rhs = inst.phase1.d1[k][m1][t]
                    if delta1 is not None:
                        rhs += delta1[k][m1][t]
                    lhs = get(X1(k, m1, t)) - get(E1(k, m1, t))
                    if t > 0:
                        lhs += get(E1(k, m1, t - 1))
                    if 2 in scope:
                        lhs -= y2_by_kmt.get((k, m1, t), 0.0)
                    if abs(lhs - rhs) > tol * (1 + abs(rhs)):
                        errors.append(
                            "jumbo balance (%d,%d,%d): %r != %r" % (k, m1, t, lhs, rhs)
                        )
        for t in range(d.T):
            used = sum(
                inst.phase1.f1[k][m1] * get(X1(k, m1, t))
                for k in range(d.K)
                for m1 in range(d.M1)
            )
            if used > inst.phase1.C1[t] + tol * (1 + inst.phase1.C1[t]):
                errors.append("jumbo capacity period %d exceeded" % t)
    if 2 in scope:
        for i2 in range(d.Nf2):
            for t in range(d.T):
                rhs = inst.phase2.d2[i2][t]
                if delta2 is not None and (t > 0 or 3 not in scope):
                    rhs += delta2[i2]
                lhs = y2_counts.get((i2, t), 0.0) - get(E2(i2, t))
                if t > 0:
                    lhs += get(E2(i2, t - 1))
                if 3 in scope and t == 0:
                    lhs -= y3_by_reel.get(i2, 0.0)
                if abs(lhs - rhs) > tol * (1 + abs(rhs)):
                    errors.append("reel balance (%d,%d): %r != %r" % (i2, t, lhs, rhs))
        for t in range(d.T):
            used = 0.0
            for key, v in values.items():
                if isinstance(key, Y2) and key.t == t and v:
                    used += inst.phase2.f2[key.k][key.m1][key.m2] * v
            if used > inst.phase2.C2[t] + tol * (1 + inst.phase2.C2[t]):
                errors.append("reel capacity period %d exceeded" % t)
    if 3 in scope:
        for i3 in range(d.Nf3):
            for tau in range(d.Theta):
                rhs = inst.phase3.d3[i3][tau]
                lhs = y3_counts.get((i3, tau), 0.0) - get(E3(i3, tau))
                if tau > 0:
                    lhs += get(E3(i3, tau - 1))
                if abs(lhs - rhs) > tol * (1 + abs(rhs)):
                    errors.append("sheet balance (%d,%d): %r != %r" % (i3, tau, lhs, rhs))
        for tau in range(d.Theta):
            used = 0.0
            for key, v in values.items():
                if isinstance(key, Y3) and key.tau == tau and v:
                    used += inst.phase3.f3[key.i2][key.m3] * v
            if used > inst.phase3.C3[tau] + tol * (1 + inst.phase3.C3[tau]):
                errors.append("sheet capacity sub-period %d exceeded" % tau)
    return errors
