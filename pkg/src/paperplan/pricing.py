"""Cutting-pattern generation.

The exact unbounded-knapsack kernel used by both pricing routes, homogeneous
seed patterns, single-stage pricing for jumbo-to-reel cutting, and two-stage
strip pricing for reel-to-sheet cutting.  Reduced costs use the same semantic
row identities as the master problem: duals absent from a master's scope read
as zero, so one formula serves standalone and integrated masters alike.
"""

from dataclasses import dataclass, field

from . import instances

_VAL_EPS = 1e-12
_REC_EPS = 1e-9


@dataclass(frozen=True)
class KnapsackSpec:
    """Unbounded integer knapsack: integer sizes, real values, integer capacity."""

    sizes: tuple
    values: tuple
    capacity: int


def solve_knapsack(spec):
    """Exact DP solve; returns (counts, value).

    Only items with strictly positive value are packed.  Among equal-value
    optima the lexicographically largest count vector (by item index) is
    returned, which makes the result deterministic.
    """
    n = len(spec.sizes)
    cap = int(spec.capacity)
    if cap < 0:
        raise ValueError("knapsack capacity must be >= 0")
    items = []
    for i in range(n):
        s = spec.sizes[i]
        if int(s) != s or s <= 0:
            raise ValueError("knapsack sizes must be positive integers")
        if spec.values[i] > _VAL_EPS and s <= cap:
            items.append((i, int(s), float(spec.values[i])))
    counts = [0] * n
    if not items:
        return tuple(counts), 0.0
    dp = [0.0] * (cap + 1)
    for _, s, v in items:
        for c in range(s, cap + 1):
            cand = dp[c - s] + v
            if cand > dp[c]:
                dp[c] = cand
    value = dp[cap]
    c = cap
    for i, s, v in items:
        while s <= c and abs(dp[c] - (dp[c - s] + v)) <= _REC_EPS * (1.0 + abs(dp[c])):
            counts[i] += 1
            c -= s
    return tuple(counts), value


class DualValues:
    """Semantic view of master duals; rows outside the master's scope read 0."""

    def __init__(self, jumbo=None, cap1=None, reel=None, cap2=None, sheet=None, cap3=None):
        self._jumbo = jumbo or {}
        self._cap1 = cap1 or {}
        self._reel = reel or {}
        self._cap2 = cap2 or {}
        self._sheet = sheet or {}
        self._cap3 = cap3 or {}

    def jumbo(self, k, m1, t):
        return self._jumbo.get((k, m1, t), 0.0)

    def cap1(self, t):
        return self._cap1.get(t, 0.0)

    def reel(self, i2, t):
        return self._reel.get((i2, t), 0.0)

    def cap2(self, t):
        return self._cap2.get(t, 0.0)

    def sheet(self, i3, tau):
        return self._sheet.get((i3, tau), 0.0)

    def cap3(self, tau):
        return self._cap3.get(tau, 0.0)


@dataclass(frozen=True)
class Pattern1D:
    """Jumbo-to-reel cutting pattern on one machine type."""

    k: int
    m1: int
    counts: tuple       # reels produced, indexed over all reel types
    waste: int          # leftover jumbo length in cm


@dataclass(frozen=True)
class StripPattern:
    """One strip across the reel width at a reference sheet length."""

    ref_length: int
    counts: tuple       # sheets per strip, indexed over all sheet types
    value: float


@dataclass(frozen=True)
class Pattern2D:
    """Two-stage reel-to-sheet pattern: strips across the width, stacked along the length."""

    i2: int
    counts: tuple                          # sheets produced, all sheet types
    waste: int                             # leftover reel area in cm**2
    beta: tuple = field(compare=False)     # (ref_length, multiplicity) pairs


@dataclass(frozen=True)
class Priced1D:
    pattern: object
    m2: int
    reduced_cost: float


@dataclass(frozen=True)
class Priced2D:
    pattern: object
    m3: int
    reduced_cost: float


def pattern_1d(instance, k, m1, counts):
    """Build a Pattern1D from raw counts, computing the waste."""
    p2 = instance.phase2
    used = sum(int(c) * p2.l2[i2] for i2, c in enumerate(counts))
    waste = int(instance.phase1.L[m1]) - used
    if waste < 0:
        raise ValueError("pattern exceeds jumbo length")
    return Pattern1D(k=k, m1=m1, counts=tuple(int(c) for c in counts), waste=waste)


def pattern_2d(instance, i2, counts, beta):
    """Build a Pattern2D from raw counts, computing the area waste."""
    p2, p3 = instance.phase2, instance.phase3
    area = int(p2.l2[i2]) * int(p2.w2[i2])
    used = sum(int(c) * p3.l3[i3] * p3.w3[i3] for i3, c in enumerate(counts))
    waste = area - used
    if waste < 0:
        raise ValueError("pattern exceeds reel area")
    return Pattern2D(i2=i2, counts=tuple(int(c) for c in counts), waste=waste, beta=tuple(beta))


def homogeneous_1d(instance):
    """One single-reel-type pattern per (machine, fitting reel type)."""
    out = []
    p1, p2 = instance.phase1, instance.phase2
    for k, members in enumerate(p2.S2):
        for m1 in range(instance.dims.M1):
            for i2 in members:
                q = int(p1.L[m1]) // int(p2.l2[i2])
                if q <= 0:
                    continue
                counts = [0] * instance.dims.Nf2
                counts[i2] = q
                out.append(pattern_1d(instance, k, m1, counts))
    return out


def homogeneous_2d(instance):
    """One single-sheet-type pattern per (reel, fitting sheet) pair."""
    out = []
    p2, p3 = instance.phase2, instance.phase3
    for k, members in enumerate(p2.S2):
        for i2 in members:
            for i3 in p3.S3[k]:
                per_strip = int(p2.w2[i2]) // int(p3.w3[i3])
                strips = int(p2.l2[i2]) // int(p3.l3[i3])
                if per_strip <= 0 or strips <= 0:
                    continue
                counts = [0] * instance.dims.Nf3
                counts[i3] = per_strip * strips
                out.append(
                    pattern_2d(instance, i2, counts, ((int(p3.l3[i3]), strips),))
                )
    return out


def price_1d(instance, duals, k, m1, t):
    """Best jumbo-cutting pattern for (k, m1, t) against the current duals.

    Maximizes sum over reels of (c2*l2 + reel dual) * count subject to the
    jumbo length, then prices the resulting column for each rewinder and
    keeps the cheapest.  The returned reduced cost is exact for the pattern.
    """
    p1, p2 = instance.phase1, instance.phase2
    members = p2.S2[k]
    c2 = p2.c2[k][t]
    L = int(p1.L[m1])
    sizes = tuple(int(p2.l2[i2]) for i2 in members)
    values = tuple(c2 * p2.l2[i2] + duals.reel(i2, t) for i2 in members)
    local, _ = solve_knapsack(KnapsackSpec(sizes=sizes, values=values, capacity=L))
    counts = [0] * instance.dims.Nf2
    for pos, i2 in enumerate(members):
        counts[i2] = local[pos]
    pattern = pattern_1d(instance, k, m1, counts)
    base = (
        c2 * pattern.waste
        + duals.jumbo(k, m1, t)
        - sum(counts[i2] * duals.reel(i2, t) for i2 in members)
    )
    best_m2 = 0
    best_rc = None
    for m2 in range(instance.dims.M2):
        rc = base - p2.f2[k][m1][m2] * duals.cap2(t)
        if best_rc is None or rc < best_rc - 1e-15:
            best_rc = rc
            best_m2 = m2
    return Priced1D(pattern=pattern, m2=best_m2, reduced_cost=best_rc)


def _strip_allowed(instance, k, i3_star):
    p3 = instance.phase3
    ref = p3.l3[i3_star]
    if p3.trimming_allowed:
        return [i3 for i3 in p3.S3[k] if p3.l3[i3] <= ref]
    return [i3 for i3 in p3.S3[k] if p3.l3[i3] == ref]


def price_strip(instance, duals, i2, i3_star, tau):
    """Best loading of one strip at sheet i3_star's reference length.

    Sheets allowed into the strip are those of the same grammage whose length
    does not exceed the reference length when trimming is allowed, or exactly
    matches it otherwise.  The width knapsack uses utility
    c3 * sheet area + sheet dual per piece.
    """
    p2, p3 = instance.phase2, instance.phase3
    k = instances.grammage_of_reel(instance, i2)
    allowed = _strip_allowed(instance, k, i3_star)
    c3 = p3.c3[k][tau]
    sizes = tuple(int(p3.w3[i3]) for i3 in allowed)
    values = tuple(
        c3 * p3.l3[i3] * p3.w3[i3] + duals.sheet(i3, tau) for i3 in allowed
    )
    local, value = solve_knapsack(
        KnapsackSpec(sizes=sizes, values=values, capacity=int(p2.w2[i2]))
    )
    counts = [0] * instance.dims.Nf3
    for pos, i3 in enumerate(allowed):
        counts[i3] = local[pos]
    return StripPattern(ref_length=int(p3.l3[i3_star]), counts=tuple(counts), value=value)


def build_pattern_2d(instance, duals, i2, tau):
    """Best two-stage pattern for reel i2 in sub-period tau.

    Prices one strip per distinct reference length, selects strip
    multiplicities with a knapsack over the reel length, assembles the sheet
    counts, then prices the column for each cutter and keeps the cheapest.
    """
    p2, p3 = instance.phase2, instance.phase3
    k = instances.grammage_of_reel(instance, i2)
    l2 = int(p2.l2[i2])
    refs = {}
    for i3 in p3.S3[k]:
        ref = int(p3.l3[i3])
        if ref <= l2 and ref not in refs:
            refs[ref] = i3
    ref_lengths = sorted(refs)
    strips = [price_strip(instance, duals, i2, refs[ref], tau) for ref in ref_lengths]
    beta_counts, _ = solve_knapsack(
        KnapsackSpec(
            sizes=tuple(ref_lengths),
            values=tuple(s.value for s in strips),
            capacity=l2,
        )
    )
    counts = [0] * instance.dims.Nf3
    beta = []
    for pos, ref in enumerate(ref_lengths):
        mult = beta_counts[pos]
        if mult <= 0:
            continue
        beta.append((ref, mult))
        for i3, q in enumerate(strips[pos].counts):
            counts[i3] += mult * q
    pattern = pattern_2d(instance, i2, counts, beta)
    c3 = p3.c3[k][tau]
    base = (
        c3 * pattern.waste
        + duals.reel(i2, 0)
        - sum(counts[i3] * duals.sheet(i3, tau) for i3 in p3.S3[k])
    )
    best_m3 = 0
    best_rc = None
    for m3 in range(instance.dims.M3):
        rc = base - p3.f3[i2][m3] * duals.cap3(tau)
        if best_rc is None or rc < best_rc - 1e-15:
            best_rc = rc
            best_m3 = m3
    return Priced2D(pattern=pattern, m3=best_m3, reduced_cost=best_rc)
