"""Normal-chart atlas: dual sets, transition functions and cocycle checks.

For a maximal simplex I the dual set is the unique collection of rows
alpha_i = (x_i, y_i, u_i) pairing to delta against the columns beta_j,
j in I.  Transition entries between charts are then pairings of dual rows
with arbitrary ray data; the chart map itself doubles as an independent
numeric oracle for the transitions.
"""

from __future__ import annotations

import cmath
import functools
import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from . import endo, fan as fan_mod, linalg
from .endo import MonomialMatrix, eval_endo, matrix_compose, matrix_eval, pair


class SingularB(ValueError):
    pass


class NonUnimodularV(ValueError):
    pass


class ZeroForbidden(ValueError):
    def __init__(self, message, index):
        super().__init__(message)
        self.index = index


class InvalidFan(ValueError):
    pass


@dataclass(frozen=True)
class DualSet:
    simplex: tuple  # sorted ray indices
    x: tuple  # rows of B_I^-1 (Fractions)
    y: tuple  # rows of -U C B_I^-1 (Fractions)
    u: tuple  # rows of V_I^-1 (ints)

    def row(self, position):
        return (self.x[position], self.y[position], self.u[position])


@functools.lru_cache(maxsize=None)
def dual_set(fan, simplex):
    """Exact dual rows for a maximal simplex: X = B^-1, U = V^-1, Y = -U C B^-1."""
    simplex = tuple(sorted(simplex))
    b = fan.b_columns(simplex)
    v = fan.v_columns(simplex)
    det_v = linalg.det(v)
    if abs(det_v) != 1:
        raise NonUnimodularV(f"det V_{simplex} = {det_v}, expected +-1")
    try:
        x = linalg.inv(b)
    except ValueError:
        raise SingularB(f"b-columns of {simplex} are linearly dependent") from None
    u = linalg.int_matrix(linalg.inv(v))
    u_frac = tuple(tuple(Fraction(e) for e in row) for row in u)
    y = linalg.mat_mul(linalg.mat_neg(linalg.mat_mul(u_frac, fan.c_columns(simplex))), x)
    return DualSet(simplex=simplex, x=x, y=y, u=u)


@dataclass(frozen=True)
class TransitionMap:
    source: tuple  # sorted simplex I
    target: tuple  # sorted simplex J
    matrix: MonomialMatrix
    laurent_form: tuple | None  # rows of LaurentExponent, present iff all entries nice


@functools.lru_cache(maxsize=None)
def transition(fan, source, target):
    """Transition map between the charts of two maximal simplices.

    Entry (j, i) is the pairing of the target's dual row j with beta_i.
    """
    source = tuple(sorted(source))
    target = tuple(sorted(target))
    dual = dual_set(fan, target)
    entries = []
    for pos in range(len(target)):
        alpha = dual.row(pos)
        row = []
        for i in source:
            rec = fan.beta[i - 1]
            row.append(pair(alpha, (rec.b, rec.c, rec.v)))
        entries.append(tuple(row))
    matrix = MonomialMatrix(rows=target, cols=source, entries=tuple(entries))
    laurent = None
    if matrix.all_nice():
        laurent = tuple(tuple(endo.to_laurent(e) for e in row) for row in matrix.entries)
    return TransitionMap(source=source, target=target, matrix=matrix, laurent_form=laurent)


def chart_image(fan, simplex, z):
    """Numeric image of a point of C^m under the normal chart of a simplex.

    Coordinate i of the image is z_i times the product over rays k outside
    the simplex of z_k raised to the pairing exponent; z_k must be nonzero
    for every such k.
    """
    simplex = tuple(sorted(simplex))
    if len(z) != fan.ray_count:
        raise ValueError(f"expected {fan.ray_count} coordinates, got {len(z)}")
    outside = [k for k in range(1, fan.ray_count + 1) if k not in simplex]
    for k in outside:
        if z[k - 1] == 0:
            raise ZeroForbidden(f"coordinate {k} outside {simplex} must be nonzero", k)
    dual = dual_set(fan, simplex)
    out = []
    for pos in range(len(simplex)):
        alpha = dual.row(pos)
        value = complex(z[simplex[pos] - 1])
        for k in outside:
            rec = fan.beta[k - 1]
            param = pair(alpha, (rec.b, rec.c, rec.v))
            if not param.is_zero():
                value *= eval_endo(param, z[k - 1])
        out.append(value)
    return tuple(out)


def random_torus_point(rng, count):
    """Sample a point of the complex torus with moduli in [0.5, 2]."""
    out = []
    for _ in range(count):
        modulus = 0.5 + 1.5 * rng.random()
        phase = 2 * cmath.pi * rng.random()
        out.append(modulus * cmath.exp(1j * phase))
    return tuple(out)


@dataclass
class CocycleReport:
    ok: bool
    mode: str  # "exact" | "numeric"
    triples_checked: int
    failures: list  # (I, J, K, witness)
    seed: int | None = None
    points: int | None = None
    tol: float | None = None


def cocycle_check(fan, mode="exact", points=100, tol=1e-9, seed=0):
    """Verify transition(J,K) o transition(I,J) = transition(I,K) over all triples.

    Exact mode compares parameter matrices entrywise; numeric mode compares
    pointwise evaluations at seeded random torus points.  Requires a valid
    fan (gate ordering).
    """
    report = fan_mod.validate(fan, seed=seed)
    if not report.valid:
        raise InvalidFan("cocycle check requires a fully valid fan")
    simplices = [tuple(sorted(s)) for s in fan.sorted_simplices()]
    failures = []
    count = 0
    rng = random.Random(seed)
    for I, J, K in itertools.product(simplices, repeat=3):
        count += 1
        composed = matrix_compose(transition(fan, J, K).matrix, transition(fan, I, J).matrix)
        direct = transition(fan, I, K).matrix
        if mode == "exact":
            if composed != direct:
                failures.append((I, J, K, "entrywise mismatch"))
            continue
        for _ in range(points):
            z = random_torus_point(rng, len(I))
            lhs = matrix_eval(composed, z)
            rhs = matrix_eval(direct, z)
            err = max(
                abs(a - b) / max(abs(b), 1e-300) for a, b in zip(lhs, rhs)
            )
            if err > tol:
                failures.append((I, J, K, (z, err)))
                break
    return CocycleReport(
        ok=not failures,
        mode=mode,
        triples_checked=count,
        failures=failures,
        seed=seed if mode == "numeric" else None,
        points=points if mode == "numeric" else None,
        tol=tol if mode == "numeric" else None,
    )


@dataclass(frozen=True)
class ChartRecord:
    simplex: tuple
    dual: DualSet
    removed: tuple  # ray indices whose characteristic submanifolds are cut out
    real_algebraic: bool
    algebraic: bool
    smooth: bool = True


def atlas(fan):
    """One chart record per maximal simplex, with representation flags.

    A chart is real algebraic iff every dual row has y = 0 and x integral
    with x congruent to u mod 2; algebraic iff moreover x = u exactly.
    """
    records = []
    all_rays = set(range(1, fan.ray_count + 1))
    for simplex in fan.sorted_simplices():
        simplex = tuple(sorted(simplex))
        dual = dual_set(fan, simplex)
        real_alg = True
        alg = True
        for pos in range(len(simplex)):
            x, y, u = dual.row(pos)
            y_zero = all(e == 0 for e in y)
            x_int = all(e.denominator == 1 for e in x)
            parity = x_int and all((e.numerator - f) % 2 == 0 for e, f in zip(x, u))
            real_alg = real_alg and y_zero and x_int and parity
            alg = alg and y_zero and all(e == f for e, f in zip(x, u))
        records.append(
            ChartRecord(
                simplex=simplex,
                dual=dual,
                removed=tuple(sorted(all_rays - set(simplex))),
                real_algebraic=real_alg,
                algebraic=alg,
            )
        )
    return tuple(records)
