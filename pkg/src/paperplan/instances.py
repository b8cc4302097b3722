"""Problem instances: data model, the 24 benchmark classes, generation, I/O.

All quantities live in canonical units: lengths in cm, areas in cm**2,
weights in kg, times in minutes.  Cutting dimensions (jumbo lengths, reel
lengths and widths, sheet sides) are integer centimetres so that pattern
knapsacks can discretize exactly.  Index arrays are nested tuples in
row-major index order and instances are immutable after construction.
"""

import json
import math
from dataclasses import dataclass, asdict

import numpy as np

SCHEMA_VERSION = 1
_FORMAT_NAME = "paperplan-instance"

MINUTES_PER_SHIFT = 480.0


class InstanceFormatError(ValueError):
    """Raised when an instance document cannot be parsed or has a bad schema."""


@dataclass(frozen=True)
class Dimensions:
    K: int
    T: int
    Theta: int
    M1: int
    M2: int
    M3: int
    Nf2: int
    Nf3: int


@dataclass(frozen=True)
class Phase1Params:
    """Jumbo production: costs per kg, machine lengths, weights, demand, times."""

    c1: tuple      # [k][m1][t] production cost per kg (setup folded in)
    h1: tuple      # [k][t] stock cost per kg per period
    L: tuple       # [m1] jumbo length in cm
    b1: tuple      # [k][m1] jumbo weight in kg
    d1: tuple      # [k][m1][t] external jumbo demand in units
    f1: tuple      # [k][m1] production time per jumbo in minutes
    C1: tuple      # [t] capacity in minutes


@dataclass(frozen=True)
class Phase2Params:
    """Reel cutting: waste cost per cm of jumbo length, reel geometry, demand."""

    c2: tuple      # [k][t] waste cost per cm
    h2: tuple      # [i2][t] stock cost per kg per period
    l2: tuple      # [i2] reel length in cm
    w2: tuple      # [i2] reel width in cm
    b2: tuple      # [i2] reel weight in kg
    d2: tuple      # [i2][t] reel portfolio demand in units
    f2: tuple      # [k][m1][m2] cutting time per jumbo in minutes
    C2: tuple      # [t] capacity in minutes
    S2: tuple      # [k] tuple of reel indices of grammage k (partition)


@dataclass(frozen=True)
class Phase3Params:
    """Sheet cutting: waste cost per cm**2, sheet geometry, demand, trimming flag."""

    c3: tuple      # [k][tau] waste cost per cm**2
    h3: tuple      # [i3][tau] stock cost per kg per sub-period
    l3: tuple      # [i3] sheet length in cm
    w3: tuple      # [i3] sheet width in cm
    b3: tuple      # [i3] sheet weight in kg
    d3: tuple      # [i3][tau] sheet demand in units
    f3: tuple      # [i2][m3] cutting time per reel in minutes
    C3: tuple      # [tau] capacity in minutes
    S3: tuple      # [k] tuple of sheet indices of grammage k (partition)
    trimming_allowed: bool


@dataclass(frozen=True)
class Instance:
    dims: Dimensions
    phase1: Phase1Params
    phase2: Phase2Params
    phase3: Phase3Params
    seed: int = None
    class_id: int = None


@dataclass(frozen=True)
class ClassConfig:
    """One row of the benchmark grid."""

    class_id: int
    n_items: int          # reel types and sheet types alike
    stock_cost_high: bool
    trimming: bool
    M1: int
    M2: int
    M3: int
    work_shifts: int


def _build_class_table():
    table = {}
    for cid in range(1, 25):
        big = cid > 12
        base = cid if not big else cid - 12
        table[cid] = ClassConfig(
            class_id=cid,
            n_items=9 if big else 5,
            stock_cost_high=base > 6,
            trimming=(cid % 2 == 1),
            M1=6 if big else 3,
            M2=6 if big else 3,
            M3=4 if big else 2,
            work_shifts=((base - 1) % 6) // 2 + 1,
        )
    return table


CLASS_TABLE = _build_class_table()


def class_config(class_id):
    """Configuration for benchmark class 1..24."""
    if class_id not in CLASS_TABLE:
        raise ValueError("class_id must be in 1..24, got %r" % (class_id,))
    return CLASS_TABLE[class_id]


def generate_instance(config, seed, T=4, Theta=5):
    """Draw a random instance for one class configuration.

    The draw order is fixed so that two classes differing only in the
    trimming flag produce identical parameters for the same seed.  Demand
    feasibility is not guaranteed; infeasibility surfaces downstream.
    """
    rng = np.random.default_rng(seed)
    K = 1
    M1, M2, M3 = config.M1, config.M2, config.M3
    Nf2 = Nf3 = config.n_items
    dims = Dimensions(K=K, T=T, Theta=Theta, M1=M1, M2=M2, M3=M3, Nf2=Nf2, Nf3=Nf3)

    diameter = float(rng.uniform(300.0, 500.0))       # cm
    thickness = float(rng.uniform(190.0, 250.0))      # paper gauge units
    grammage = [float(rng.uniform(35.0, 300.0)) for _ in range(K)]  # g/m**2
    # unrolled web width implied by the roll cross-section, in cm
    web_width = math.pi * diameter * diameter / (4.0 * thickness)
    w2_value = int(round(web_width))
    shift_factor = 1.0 + 0.2 * (config.work_shifts - 1)

    def kg(length_cm, width_cm, k):
        return mass_kg(length_cm, width_cm, grammage[k])

    L = tuple(int(rng.integers(1000, 2001)) for _ in range(M1))
    c1_base = [
        [[float(rng.uniform(0.015, 0.025)) for _ in range(T)] for _ in range(M1)]
        for _ in range(K)
    ]
    if config.stock_cost_high:
        h1 = [[float(rng.uniform(0.009, 0.015)) for _ in range(T)] for _ in range(K)]
    else:
        h1 = [[float(rng.uniform(0.0075, 0.0125)) for _ in range(T)] for _ in range(K)]
    f1 = tuple(
        tuple(float(rng.uniform(30.0, 60.0)) for _ in range(M1)) for _ in range(K)
    )
    l2 = tuple(int(rng.integers(300, 901)) for _ in range(Nf2))
    d2 = tuple(
        tuple(int(rng.integers(0, 101)) for _ in range(T)) for _ in range(Nf2)
    )
    f2 = tuple(
        tuple(
            tuple(float(rng.uniform(30.0, 60.0)) for _ in range(M2))
            for _ in range(M1)
        )
        for _ in range(K)
    )
    l3 = tuple(int(rng.integers(30, 101)) for _ in range(Nf3))
    w3 = tuple(int(rng.integers(30, 101)) for _ in range(Nf3))
    d3 = tuple(
        tuple(int(rng.integers(0, 501)) for _ in range(Theta)) for _ in range(Nf3)
    )
    f3 = tuple(
        tuple(float(rng.uniform(20.0, 40.0)) for _ in range(M3)) for _ in range(Nf2)
    )

    # derived quantities; waste costs follow the production cost level
    c1 = tuple(
        tuple(
            tuple(c1_base[k][m1][t] * shift_factor for t in range(T))
            for m1 in range(M1)
        )
        for k in range(K)
    )
    c2 = tuple(
        tuple(
            (sum(c1_base[k][m1][t] for m1 in range(M1)) / (50000.0 * M1))
            * shift_factor
            for t in range(T)
        )
        for k in range(K)
    )
    c3_level = [
        1.5
        * sum(c1_base[k][m1][t] for m1 in range(M1) for t in range(T))
        / (10000.0 * M1 * T)
        * shift_factor
        for k in range(K)
    ]
    c3 = tuple(tuple(c3_level[k] for _ in range(Theta)) for k in range(K))
    h1_mean = sum(h1[k][t] for k in range(K) for t in range(T)) / (K * T)

    b1 = tuple(tuple(kg(L[m1], web_width, k) for m1 in range(M1)) for k in range(K))
    b2 = tuple(kg(l2[i2], web_width, 0) for i2 in range(Nf2))
    b3 = tuple(kg(l3[i3], w3[i3], 0) for i3 in range(Nf3))

    shifts = config.work_shifts
    phase1 = Phase1Params(
        c1=c1,
        h1=tuple(tuple(h1[k]) for k in range(K)),
        L=L,
        b1=b1,
        d1=tuple(tuple(tuple(0 for _ in range(T)) for _ in range(M1)) for _ in range(K)),
        f1=f1,
        C1=tuple(MINUTES_PER_SHIFT * shifts * M1 * Theta for _ in range(T)),
    )
    phase2 = Phase2Params(
        c2=c2,
        h2=tuple(tuple(0.5 * h1[0][t] for t in range(T)) for _ in range(Nf2)),
        l2=l2,
        w2=tuple(w2_value for _ in range(Nf2)),
        b2=b2,
        d2=d2,
        f2=f2,
        C2=tuple(MINUTES_PER_SHIFT * shifts * M2 * Theta for _ in range(T)),
        S2=_partition(Nf2, K),
    )
    phase3 = Phase3Params(
        c3=c3,
        h3=tuple(tuple(0.5 * h1_mean for _ in range(Theta)) for _ in range(Nf3)),
        l3=l3,
        w3=w3,
        b3=b3,
        d3=d3,
        f3=f3,
        C3=tuple(MINUTES_PER_SHIFT * shifts * M3 for _ in range(Theta)),
        S3=_partition(Nf3, K),
        trimming_allowed=config.trimming,
    )
    return Instance(
        dims=dims,
        phase1=phase1,
        phase2=phase2,
        phase3=phase3,
        seed=int(seed),
        class_id=config.class_id,
    )


def mass_kg(length_cm, width_cm, grammage_gsm):
    """Mass of a paper rectangle, in kilograms."""
    return (length_cm / 100.0) * (width_cm / 100.0) * grammage_gsm / 1000.0


def _partition(n, k):
    """Split item indices 0..n-1 into k contiguous near-equal groups."""
    out = []
    start = 0
    for g in range(k):
        size = n // k + (1 if g < n % k else 0)
        out.append(tuple(range(start, start + size)))
        start += size
    return tuple(out)


def grammage_of_reel(instance, i2):
    for k, members in enumerate(instance.phase2.S2):
        if i2 in members:
            return k
    raise ValueError("reel %d is in no grammage set" % i2)


def grammage_of_sheet(instance, i3):
    for k, members in enumerate(instance.phase3.S3):
        if i3 in members:
            return k
    raise ValueError("sheet %d is in no grammage set" % i3)


def validate(instance):
    """Return a list of human-readable diagnostics; empty means well-formed."""
    out = []
    d = instance.dims
    for name in ("K", "T", "Theta", "M1", "M2", "M3", "Nf2", "Nf3"):
        if getattr(d, name) < 1:
            out.append("dims.%s must be >= 1" % name)
    if out:
        return out
    p1, p2, p3 = instance.phase1, instance.phase2, instance.phase3

    def shape(name, arr, dims):
        if len(arr) != dims[0]:
            out.append("%s has length %d, expected %d" % (name, len(arr), dims[0]))
            return
        if len(dims) > 1:
            for i, sub in enumerate(arr):
                shape("%s[%d]" % (name, i), sub, dims[1:])

    shape("phase1.c1", p1.c1, (d.K, d.M1, d.T))
    shape("phase1.h1", p1.h1, (d.K, d.T))
    shape("phase1.L", p1.L, (d.M1,))
    shape("phase1.b1", p1.b1, (d.K, d.M1))
    shape("phase1.d1", p1.d1, (d.K, d.M1, d.T))
    shape("phase1.f1", p1.f1, (d.K, d.M1))
    shape("phase1.C1", p1.C1, (d.T,))
    shape("phase2.c2", p2.c2, (d.K, d.T))
    shape("phase2.h2", p2.h2, (d.Nf2, d.T))
    shape("phase2.l2", p2.l2, (d.Nf2,))
    shape("phase2.w2", p2.w2, (d.Nf2,))
    shape("phase2.b2", p2.b2, (d.Nf2,))
    shape("phase2.d2", p2.d2, (d.Nf2, d.T))
    shape("phase2.f2", p2.f2, (d.K, d.M1, d.M2))
    shape("phase2.C2", p2.C2, (d.T,))
    shape("phase3.c3", p3.c3, (d.K, d.Theta))
    shape("phase3.h3", p3.h3, (d.Nf3, d.Theta))
    shape("phase3.l3", p3.l3, (d.Nf3,))
    shape("phase3.w3", p3.w3, (d.Nf3,))
    shape("phase3.b3", p3.b3, (d.Nf3,))
    shape("phase3.d3", p3.d3, (d.Nf3, d.Theta))
    shape("phase3.f3", p3.f3, (d.Nf2, d.M3))
    shape("phase3.C3", p3.C3, (d.Theta,))
    if out:
        return out

    def nonneg(name, arr):
        flat = np.asarray(arr, dtype=float).ravel()
        if flat.size and float(np.min(flat)) < 0:
            out.append("%s contains negative values" % name)

    for name, arr in (
        ("phase1.c1", p1.c1),
        ("phase1.h1", p1.h1),
        ("phase1.L", p1.L),
        ("phase1.b1", p1.b1),
        ("phase1.d1", p1.d1),
        ("phase1.f1", p1.f1),
        ("phase1.C1", p1.C1),
        ("phase2.c2", p2.c2),
        ("phase2.h2", p2.h2),
        ("phase2.l2", p2.l2),
        ("phase2.w2", p2.w2),
        ("phase2.b2", p2.b2),
        ("phase2.d2", p2.d2),
        ("phase2.f2", p2.f2),
        ("phase2.C2", p2.C2),
        ("phase3.c3", p3.c3),
        ("phase3.h3", p3.h3),
        ("phase3.l3", p3.l3),
        ("phase3.w3", p3.w3),
        ("phase3.b3", p3.b3),
        ("phase3.d3", p3.d3),
        ("phase3.f3", p3.f3),
        ("phase3.C3", p3.C3),
    ):
        nonneg(name, arr)

    for name, arr in (
        ("phase1.L", p1.L),
        ("phase2.l2", p2.l2),
        ("phase2.w2", p2.w2),
        ("phase3.l3", p3.l3),
        ("phase3.w3", p3.w3),
    ):
        for i, v in enumerate(arr):
            if int(v) != v:
                out.append("%s[%d] must be an integer number of cm" % (name, i))

    def check_partition(name, groups, n):
        seen = []
        for g in groups:
            seen.extend(g)
        if sorted(seen) != list(range(n)):
            out.append("%s must partition 0..%d" % (name, n - 1))

    if len(p2.S2) != d.K:
        out.append("phase2.S2 must have one group per grammage")
    else:
        check_partition("phase2.S2", p2.S2, d.Nf2)
    if len(p3.S3) != d.K:
        out.append("phase3.S3 must have one group per grammage")
    else:
        check_partition("phase3.S3", p3.S3, d.Nf3)
    if out:
        return out

    max_L = max(p1.L)
    for i2, lv in enumerate(p2.l2):
        if lv > max_L:
            out.append("phase2.l2[%d]=%d exceeds every jumbo length" % (i2, lv))
    for k in range(d.K):
        for i3 in p3.S3[k]:
            fits = any(
                p3.w3[i3] <= p2.w2[i2] and p3.l3[i3] <= p2.l2[i2]
                for i2 in p2.S2[k]
            )
            if not fits:
                out.append("phase3 sheet %d fits no reel of its grammage" % i3)
    return out


# -- serialization ----------------------------------------------------------


def _to_jsonable(obj):
    if isinstance(obj, tuple):
        return [_to_jsonable(v) for v in obj]
    return obj


def instance_to_dict(instance):
    doc = {
        "format": _FORMAT_NAME,
        "version": SCHEMA_VERSION,
        "seed": instance.seed,
        "class_id": instance.class_id,
        "dims": asdict(instance.dims),
        "phase1": {k: _to_jsonable(v) for k, v in asdict(instance.phase1).items()},
        "phase2": {k: _to_jsonable(v) for k, v in asdict(instance.phase2).items()},
        "phase3": {k: _to_jsonable(v) for k, v in asdict(instance.phase3).items()},
    }
    return doc


def _tup(x, depth):
    if depth == 0:
        return x
    return tuple(_tup(v, depth - 1) for v in x)


def instance_from_dict(doc):
    try:
        if doc.get("format") != _FORMAT_NAME:
            raise InstanceFormatError("not a %s document" % _FORMAT_NAME)
        version = doc.get("version")
        if version != SCHEMA_VERSION:
            raise InstanceFormatError(
                "unsupported schema version %r (supported: %d)"
                % (version, SCHEMA_VERSION)
            )
        dims = Dimensions(**doc["dims"])
        p1 = doc["phase1"]
        p2 = doc["phase2"]
        p3 = doc["phase3"]
        phase1 = Phase1Params(
            c1=_tup(p1["c1"], 3),
            h1=_tup(p1["h1"], 2),
            L=_tup(p1["L"], 1),
            b1=_tup(p1["b1"], 2),
            d1=_tup(p1["d1"], 3),
            f1=_tup(p1["f1"], 2),
            C1=_tup(p1["C1"], 1),
        )
        phase2 = Phase2Params(
            c2=_tup(p2["c2"], 2),
            h2=_tup(p2["h2"], 2),
            l2=_tup(p2["l2"], 1),
            w2=_tup(p2["w2"], 1),
            b2=_tup(p2["b2"], 1),
            d2=_tup(p2["d2"], 2),
            f2=_tup(p2["f2"], 3),
            C2=_tup(p2["C2"], 1),
            S2=_tup(p2["S2"], 2),
        )
        phase3 = Phase3Params(
            c3=_tup(p3["c3"], 2),
            h3=_tup(p3["h3"], 2),
            l3=_tup(p3["l3"], 1),
            w3=_tup(p3["w3"], 1),
            b3=_tup(p3["b3"], 1),
            d3=_tup(p3["d3"], 2),
            f3=_tup(p3["f3"], 2),
            C3=_tup(p3["C3"], 1),
            S3=_tup(p3["S3"], 2),
            trimming_allowed=bool(p3["trimming_allowed"]),
        )
    except InstanceFormatError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise InstanceFormatError("malformed instance document: %s" % exc) from exc
    return Instance(
        dims=dims,
        phase1=phase1,
        phase2=phase2,
        phase3=phase3,
        seed=doc.get("seed"),
        class_id=doc.get("class_id"),
    )


def save(instance, path):
    """Write an instance as a versioned JSON text document."""
    text = json.dumps(instance_to_dict(instance), indent=1, sort_keys=False)
    with open(path, "w") as fh:
        fh.write(text + "\n")


def load(path):
    """Read an instance written by save(); raises InstanceFormatError on bad input."""
    with open(path) as fh:
        text = fh.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError("invalid JSON: %s" % exc) from exc
    if not isinstance(doc, dict):
        raise InstanceFormatError("instance document must be a JSON object")
    return instance_from_dict(doc)
