"""Exact linear algebra over the rationals.

Matrices are tuples of row tuples of Fraction.  Sizes here are the fan
dimension (at most 4 in exact mode), so clarity wins over asymptotics.
Also hosts the Fourier-Motzkin feasibility solver used by the cone
properness check.
"""

from fractions import Fraction
from math import lcm


def identity(n):
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def from_columns(cols):
    """Build a matrix whose columns are the given vectors."""
    n = len(cols[0])
    return tuple(tuple(Fraction(col[i]) for col in cols) for i in range(n))


def mat_mul(a, b):
    rows = len(a)
    inner = len(b)
    cols = len(b[0])
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols))
        for i in range(rows)
    )


def mat_vec(a, v):
    return tuple(sum(row[k] * v[k] for k in range(len(v))) for row in a)


def mat_neg(a):
    return tuple(tuple(-x for x in row) for row in a)


def det(a):
    """Determinant by fraction-free-ish Gaussian elimination (exact)."""
    n = len(a)
    m = [list(row) for row in a]
    result = Fraction(1)
    for i in range(n):
        pivot_row = next((j for j in range(i, n) if m[j][i] != 0), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != i:
            m[i], m[pivot_row] = m[pivot_row], m[i]
            result = -result
        result *= m[i][i]
        inv_pivot = Fraction(1) / m[i][i]
        for j in range(i + 1, n):
            factor = m[j][i] * inv_pivot
            if factor:
                for k in range(i, n):
                    m[j][k] -= factor * m[i][k]
    return result


def inv(a):
    """Exact inverse by Gauss-Jordan elimination.

    Raises ValueError on a singular matrix.
    """
    n = len(a)
    m = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for i in range(n):
        pivot_row = next((j for j in range(i, n) if m[j][i] != 0), None)
        if pivot_row is None:
            raise ValueError("matrix is singular")
        if pivot_row != i:
            m[i], m[pivot_row] = m[pivot_row], m[i]
        pivot = m[i][i]
        m[i] = [x / pivot for x in m[i]]
        for j in range(n):
            if j != i and m[j][i]:
                factor = m[j][i]
                m[j] = [x - factor * y for x, y in zip(m[j], m[i])]
    return tuple(tuple(row[n:]) for row in m)


def int_matrix(a):
    """Cast an exact rational matrix with integer entries to ints.

    Raises ValueError if any entry is non-integral.
    """
    out = []
    for row in a:
        irow = []
        for x in row:
            if x.denominator != 1:
                raise ValueError(f"non-integral entry {x}")
            irow.append(x.numerator)
        out.append(tuple(irow))
    return tuple(out)


def lcm_denominators(values):
    return lcm(*[Fraction(v).denominator for v in values]) if values else 1


# ---------------------------------------------------------------------------
# Fourier-Motzkin elimination.
#
# A constraint system is a list of (coeffs, rhs) pairs meaning
# sum_k coeffs[k] * x[k] >= rhs.  feasible_point returns an exact rational
# solution, or None when the system is infeasible.


def _eliminate(rows, var):
    pos, neg, rest = [], [], []
    for coeffs, rhs in rows:
        c = coeffs[var]
        if c > 0:
            pos.append((coeffs, rhs))
        elif c < 0:
            neg.append((coeffs, rhs))
        else:
            rest.append((coeffs, rhs))
    for cp, rp in pos:
        for cn, rn in neg:
            # multiply by -cn[var] > 0 and cp[var] > 0 resp.; x[var] cancels
            a = -cn[var]
            b = cp[var]
            coeffs = tuple(a * x + b * y for x, y in zip(cp, cn))
            rest.append((coeffs, a * rp + b * rn))
    return rest


def feasible_point(rows, nvars):
    """Solve the system { coeffs . x >= rhs } exactly.

    Returns a rational point satisfying every constraint, or None.
    """
    stack = []
    current = [(tuple(Fraction(c) for c in coeffs), Fraction(rhs)) for coeffs, rhs in rows]
    for var in range(nvars - 1, -1, -1):
        stack.append((var, current))
        current = _eliminate(current, var)
    if any(rhs > 0 for _, rhs in current):
        return None
    point = [Fraction(0)] * nvars
    for var, rows_before in reversed(stack):
        lo, hi = None, None
        for coeffs, rhs in rows_before:
            c = coeffs[var]
            if c == 0:
                continue
            # vars below `var` are already assigned; vars above were
            # eliminated at this stage, so their coefficients are zero
            rest = sum(coeffs[k] * point[k] for k in range(nvars) if k != var)
            bound = (rhs - rest) / c
            if c > 0:
                lo = bound if lo is None else max(lo, bound)
            else:
                hi = bound if hi is None else min(hi, bound)
        if lo is not None and hi is not None:
            point[var] = (lo + hi) / 2
        elif lo is not None:
            point[var] = lo
        elif hi is not None:
            point[var] = hi
    return tuple(point)
