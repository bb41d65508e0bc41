"""Topological fan data model and exact validity checks.

A fan is a pure simplicial complex on the ray set {1..m} together with
per-ray data (b, c, v): b and c rational n-vectors, v an integer n-vector.
Cone geometry lives entirely in the b-components; c never enters validity.

The checks are gate-ordered: combinatorics, then non-singularity, then
cone properness, then completeness.  Each returns a report fragment and
``validate`` assembles the overall ValidityReport.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from . import linalg


class DimensionTooLarge(ValueError):
    """Exact cone-properness was requested above the supported dimension."""


EXACT_PROPERNESS_MAX_DIM = 4


@dataclass(frozen=True)
class RayData:
    b: tuple  # Fractions
    c: tuple  # Fractions
    v: tuple  # ints


def _rational(x):
    if isinstance(x, float):
        raise ValueError("float inputs are not allowed; use int, Fraction, or 'p/q'")
    return Fraction(x)


def ray_data(b, c, v):
    return RayData(
        tuple(_rational(x) for x in b),
        tuple(_rational(x) for x in c),
        tuple(int(x) for x in v),
    )


@dataclass(frozen=True)
class TopologicalFan:
    dimension: int
    ray_count: int
    maximal_simplices: tuple  # tuple of frozensets of 1-based ray indices
    beta: tuple  # RayData per ray, index 0 <-> ray 1

    def __post_init__(self):
        n, m = self.dimension, self.ray_count
        if n < 1 or m < 1:
            raise ValueError("dimension and ray count must be positive")
        if len(self.beta) != m:
            raise ValueError(f"expected {m} beta records, got {len(self.beta)}")
        for i, rec in enumerate(self.beta, start=1):
            if not (len(rec.b) == len(rec.c) == len(rec.v) == n):
                raise ValueError(f"beta record for ray {i} is not {n}-dimensional")
            if all(x == 0 for x in rec.b):
                raise ValueError(f"ray {i} has zero b-vector")
        for simplex in self.maximal_simplices:
            if not simplex or min(simplex) < 1 or max(simplex) > m:
                raise ValueError(f"simplex {sorted(simplex)} has out-of-range rays")

    def sorted_simplices(self):
        return sorted(set(self.maximal_simplices), key=sorted)

    def b_columns(self, simplex):
        return linalg.from_columns([self.beta[i - 1].b for i in sorted(simplex)])

    def c_columns(self, simplex):
        return linalg.from_columns([self.beta[i - 1].c for i in sorted(simplex)])

    def v_columns(self, simplex):
        return linalg.from_columns(
            [tuple(Fraction(x) for x in self.beta[i - 1].v) for i in sorted(simplex)]
        )


def make_fan(dimension, ray_count, maximal_simplices, beta):
    return TopologicalFan(
        dimension,
        ray_count,
        tuple(frozenset(s) for s in maximal_simplices),
        tuple(beta),
    )


def in_cone(fan, simplex, direction):
    """Exact membership of a direction in the closed cone spanned by a simplex.

    Requires the b-columns of the simplex to be invertible.
    """
    b_inv = linalg.inv(fan.b_columns(simplex))
    coords = linalg.mat_vec(b_inv, tuple(Fraction(x) for x in direction))
    return all(x >= 0 for x in coords)


# ---------------------------------------------------------------------------
# Report fragments.


@dataclass
class CombinatoricsReport:
    purity_ok: bool
    purity_witness: list
    coverage_ok: bool
    missing_rays: list
    no_duplicates_ok: bool
    duplicates: list
    ridge_ok: bool  # necessary for completeness; reported, not gating
    ridge_witness: list

    @property
    def ok(self):
        return self.purity_ok and self.coverage_ok and self.no_duplicates_ok


@dataclass
class SimplexDetRecord:
    simplex: tuple
    det_v: int
    det_b: Fraction
    ok: bool


@dataclass
class NonsingularReport:
    records: list

    @property
    def ok(self):
        return all(r.ok for r in self.records)


@dataclass
class PropernessReport:
    ok: bool
    mode: str  # "exact" | "sampled"
    seed: int | None
    failures: list  # (simplex I, simplex J, witness direction)


@dataclass
class CompletenessReport:
    ok: bool
    mode: str  # "exact" | "sampled"
    seed: int | None
    samples: int | None
    witness: tuple | None  # uncovered direction on failure


@dataclass
class ValidityReport:
    combinatorics: CombinatoricsReport
    nonsingular: NonsingularReport | None = None
    properness: PropernessReport | None = None
    completeness: CompletenessReport | None = None

    @property
    def valid(self):
        return (
            self.combinatorics.ok
            and self.nonsingular is not None and self.nonsingular.ok
            and self.properness is not None and self.properness.ok
            and self.completeness is not None and self.completeness.ok
        )


# ---------------------------------------------------------------------------
# Checks.


def validate_combinatorics(fan):
    n = fan.dimension
    purity_witness = [sorted(s) for s in fan.maximal_simplices if len(s) != n]
    seen = set()
    duplicates = []
    for s in fan.maximal_simplices:
        if s in seen:
            duplicates.append(sorted(s))
        seen.add(s)
    covered = set().union(*fan.maximal_simplices) if fan.maximal_simplices else set()
    missing = sorted(set(range(1, fan.ray_count + 1)) - covered)

    # pseudomanifold ridge condition: every (n-2)-face lies in exactly two
    # maximal simplices.  At n=1 the ridge is the empty face, so the
    # condition degenerates to "exactly two maximal simplices".
    ridge_witness = []
    simplices = fan.sorted_simplices()
    if n == 1:
        ridge_ok = len(simplices) == 2
        if not ridge_ok:
            ridge_witness = [[]]
    else:
        counts = {}
        for s in simplices:
            if len(s) != n:
                continue
            for ridge in itertools.combinations(sorted(s), n - 1):
                counts[ridge] = counts.get(ridge, 0) + 1
        ridge_witness = [list(r) for r, k in sorted(counts.items()) if k != 2]
        ridge_ok = not ridge_witness and bool(counts)

    return CombinatoricsReport(
        purity_ok=not purity_witness,
        purity_witness=purity_witness,
        coverage_ok=not missing,
        missing_rays=missing,
        no_duplicates_ok=not duplicates,
        duplicates=duplicates,
        ridge_ok=ridge_ok,
        ridge_witness=ridge_witness,
    )


def check_nonsingular(fan):
    records = []
    for simplex in fan.sorted_simplices():
        det_b = linalg.det(fan.b_columns(simplex))
        det_v_frac = linalg.det(fan.v_columns(simplex))
        det_v = int(det_v_frac)
        records.append(
            SimplexDetRecord(
                simplex=tuple(sorted(simplex)),
                det_v=det_v,
                det_b=det_b,
                ok=abs(det_v) == 1 and det_b != 0,
            )
        )
    return NonsingularReport(records)


def _proper_violation_exact(fan, I, J):
    """Witness direction in cone(I) n cone(J) outside cone(I n J), or None.

    A point of the simplicial cone(I) has unique coordinates lambda >= 0 in
    the basis B_I; it escapes the shared face iff some coordinate indexed by
    I - J is positive.  Feasibility is decided exactly by Fourier-Motzkin.
    """
    I_sorted = sorted(I)
    b_I = fan.b_columns(I)
    m = linalg.mat_mul(linalg.inv(fan.b_columns(J)), b_I)
    k = len(I_sorted)
    for pos, i0 in enumerate(I_sorted):
        if i0 in J:
            continue
        rows = []
        for idx in range(k):
            unit = tuple(Fraction(int(t == idx)) for t in range(k))
            rows.append((unit, Fraction(1 if idx == pos else 0)))
        for mrow in m:
            rows.append((mrow, Fraction(0)))
        lam = linalg.feasible_point(rows, k)
        if lam is not None:
            return linalg.mat_vec(b_I, lam)
    return None


def check_fan_proper(fan, mode="auto", samples=200, seed=0):
    """Check that maximal cones pairwise intersect exactly in their shared face."""
    n = fan.dimension
    exact = n <= EXACT_PROPERNESS_MAX_DIM
    if mode == "exact" and not exact:
        raise DimensionTooLarge(
            f"exact properness supports dimension <= {EXACT_PROPERNESS_MAX_DIM}, got {n}"
        )
    simplices = fan.sorted_simplices()
    failures = []
    if exact:
        for I, J in itertools.permutations(simplices, 2):
            witness = _proper_violation_exact(fan, I, J)
            if witness is not None:
                failures.append((tuple(sorted(I)), tuple(sorted(J)), witness))
        return PropernessReport(ok=not failures, mode="exact", seed=None, failures=failures)

    rng = random.Random(seed)
    for I, J in itertools.permutations(simplices, 2):
        I_sorted = sorted(I)
        b_I = fan.b_columns(I)
        inv_b_J = linalg.inv(fan.b_columns(J))
        for _ in range(samples):
            lam = tuple(
                Fraction(rng.randint(1, 100)) if i not in J else Fraction(rng.randint(0, 100))
                for i in I_sorted
            )
            if all(x == 0 for x in lam):
                continue
            point = linalg.mat_vec(b_I, lam)
            coords_j = linalg.mat_vec(inv_b_J, point)
            if all(x >= 0 for x in coords_j) and any(
                lam[k] > 0 for k, i in enumerate(I_sorted) if i not in J
            ):
                failures.append((tuple(sorted(I)), tuple(sorted(J)), point))
                break
    return PropernessReport(ok=not failures, mode="sampled", seed=seed, failures=failures)


def _angle_cmp_key(vectors):
    """Sort key for exact counterclockwise order of 2-d rational vectors."""
    import functools

    def half(v):
        x, y = v
        return 0 if (y > 0 or (y == 0 and x > 0)) else 1

    def cmp(a, b):
        va, vb = a[1], b[1]
        ha, hb = half(va), half(vb)
        if ha != hb:
            return -1 if ha < hb else 1
        cross = va[0] * vb[1] - va[1] * vb[0]
        if cross > 0:
            return -1
        if cross < 0:
            return 1
        return 0

    return sorted(vectors, key=functools.cmp_to_key(cmp))


def _complete_exact_1d(fan):
    has_pos = any(fan.beta[i - 1].b[0] > 0 for s in fan.maximal_simplices for i in s)
    has_neg = any(fan.beta[i - 1].b[0] < 0 for s in fan.maximal_simplices for i in s)
    if has_pos and has_neg:
        return True, None
    return False, (Fraction(-1),) if has_pos else (Fraction(1),)


def _complete_exact_2d(fan):
    """The 2-d cones tile the plane iff consecutive rays (by angle) span a
    cone of the fan with angle strictly below pi."""
    rays = [(i, fan.beta[i - 1].b) for i in range(1, fan.ray_count + 1)]
    ordered = _angle_cmp_key(rays)
    simplices = set(frozenset(s) for s in fan.maximal_simplices)
    k = len(ordered)
    for t in range(k):
        (ia, a), (ib, b) = ordered[t], ordered[(t + 1) % k]
        cross = a[0] * b[1] - a[1] * b[0]
        if cross > 0 and frozenset({ia, ib}) in simplices:
            continue
        if cross > 0:
            witness = (a[0] + b[0], a[1] + b[1])
        else:
            # gap of at least pi: the 90-degree rotation of a is uncovered
            witness = (-a[1], a[0])
        return False, witness
    return True, None


def check_complete(fan, samples=1000, seed=0, mode="auto"):
    """Completeness: the cones cover all of R^n.

    Exact for n <= 2; Monte Carlo membership certificate (seeded) above.
    ``mode="sampled"`` forces the Monte Carlo path at any dimension.
    """
    n = fan.dimension
    if mode != "sampled":
        if n == 1:
            ok, witness = _complete_exact_1d(fan)
            return CompletenessReport(ok=ok, mode="exact", seed=None, samples=None, witness=witness)
        if n == 2:
            ok, witness = _complete_exact_2d(fan)
            return CompletenessReport(ok=ok, mode="exact", seed=None, samples=None, witness=witness)
        if mode == "exact":
            raise DimensionTooLarge(f"exact completeness supports dimension <= 2, got {n}")

    rng = random.Random(seed)
    inverses = [linalg.inv(fan.b_columns(s)) for s in fan.sorted_simplices()]
    for _ in range(samples):
        direction = tuple(Fraction(rng.randint(-1000, 1000)) for _ in range(n))
        if all(x == 0 for x in direction):
            continue
        covered = any(
            all(x >= 0 for x in linalg.mat_vec(inv_b, direction)) for inv_b in inverses
        )
        if not covered:
            return CompletenessReport(
                ok=False, mode="sampled", seed=seed, samples=samples, witness=direction
            )
    return CompletenessReport(ok=True, mode="sampled", seed=seed, samples=samples, witness=None)


def validate(fan, samples=1000, seed=0):
    """Run all checks in gate order; later stages are skipped after a failure."""
    report = ValidityReport(combinatorics=validate_combinatorics(fan))
    if not report.combinatorics.ok:
        return report
    report.nonsingular = check_nonsingular(fan)
    if not report.nonsingular.ok:
        return report
    report.properness = check_fan_proper(fan, samples=samples, seed=seed)
    if not report.properness.ok:
        return report
    report.completeness = check_complete(fan, samples=samples, seed=seed)
    return report


# ---------------------------------------------------------------------------
# Classification.


@dataclass
class Classification:
    toric: bool
    nice: bool
    ray_flags: tuple  # per ray, tuple of failed conditions


def classify(fan):
    """Toric: b = v and c = 0 per ray.  Nice: c = 0, b integral, b = v mod 2."""
    flags = []
    toric = True
    nice = True
    for rec in fan.beta:
        ray_flags = []
        c_zero = all(x == 0 for x in rec.c)
        b_integral = all(x.denominator == 1 for x in rec.b)
        b_eq_v = all(x == y for x, y in zip(rec.b, rec.v))
        parity = b_integral and all((x.numerator - y) % 2 == 0 for x, y in zip(rec.b, rec.v))
        if not c_zero:
            ray_flags.append("c_nonzero")
        if not b_eq_v:
            ray_flags.append("b_ne_v")
        if not b_integral:
            ray_flags.append("b_not_integral")
        elif not parity:
            ray_flags.append("b_v_parity")
        toric = toric and c_zero and b_eq_v
        nice = nice and c_zero and b_integral and parity
        flags.append(tuple(ray_flags))
    return Classification(toric=toric, nice=nice, ray_flags=tuple(flags))
