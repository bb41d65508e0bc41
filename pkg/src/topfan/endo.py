"""Exact arithmetic for smooth endomorphisms of the punctured complex plane.

A smooth endomorphism of C* has the form

    g  |-->  |g|^(re + i*im) * (g/|g|)^w         (re, im rational, w integer)

and is stored as the exact triple (re, im, w).  Componentwise addition of
triples corresponds to the pointwise product of maps, composition to map
composition.  Entries with im == 0, re integral and re congruent to w mod 2
are exactly the Laurent monomials z^p conj(z)^q.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction


class ZeroInput(ValueError):
    """An endomorphism of C* was evaluated at zero."""


class NotNice(ValueError):
    """Conversion to a Laurent monomial requested for a non-nice parameter."""

    def __init__(self, message, offending):
        super().__init__(message)
        self.offending = offending


class DimensionMismatch(ValueError):
    pass


class ShapeMismatch(ValueError):
    pass


@dataclass(frozen=True)
class EndoParam:
    re: Fraction
    im: Fraction
    w: int

    def __add__(self, other):
        # pointwise product of the two maps
        return EndoParam(self.re + other.re, self.im + other.im, self.w + other.w)

    def is_nice(self):
        return self.im == 0 and self.re.denominator == 1 and (self.re.numerator - self.w) % 2 == 0

    def is_zero(self):
        return self.re == 0 and self.im == 0 and self.w == 0


def endo(re, im=0, w=0):
    """Convenience constructor coercing to exact scalars."""
    return EndoParam(Fraction(re), Fraction(im), int(w))


ONE = endo(1, 0, 1)
ZERO = endo(0, 0, 0)


@dataclass(frozen=True)
class LaurentExponent:
    p: int
    q: int

    def to_endo(self):
        return endo(self.p + self.q, 0, self.p - self.q)


def eval_endo(param, z):
    """Evaluate the endomorphism at a nonzero complex number (floating point)."""
    z = complex(z)
    if z == 0:
        raise ZeroInput("endomorphism parameters act on C*, got 0")
    r = abs(z)
    out = r ** float(param.re) * (z / r) ** param.w
    if param.im:
        out *= cmath.exp(1j * float(param.im) * math.log(r))
    return out


def compose(outer, inner):
    """Parameter of outer o inner.

    Closed form: |inner(z)| = |z|^re2 and inner(z)/|inner(z)| picks up the
    phase factors of inner, which the outer modulus/phase exponents then
    multiply through.
    """
    return EndoParam(
        outer.re * inner.re,
        outer.im * inner.re + outer.w * inner.im,
        outer.w * inner.w,
    )


def pair(alpha, beta):
    """Pairing of a character row (x, y, u) with a cocharacter column (b, c, v).

    Both arguments are triples of equal-length vectors; the result is the
    parameter of the composite one-parameter map.
    """
    x, y, u = alpha
    b, c, v = beta
    if not (len(x) == len(y) == len(u) == len(b) == len(c) == len(v)):
        raise DimensionMismatch(
            f"row lengths {len(x)},{len(y)},{len(u)} vs column lengths {len(b)},{len(c)},{len(v)}"
        )
    return EndoParam(
        sum((Fraction(xi) * bi for xi, bi in zip(x, b)), Fraction(0)),
        sum((Fraction(yi) * bi for yi, bi in zip(y, b)), Fraction(0))
        + sum((Fraction(ui) * ci for ui, ci in zip(u, c)), Fraction(0)),
        sum(ui * vi for ui, vi in zip(u, v)),
    )


def to_laurent(param):
    """Convert a nice parameter to its Laurent exponents (p, q)."""
    if param.im != 0:
        raise NotNice(f"imaginary modulus exponent {param.im}", "im")
    if param.re.denominator != 1:
        raise NotNice(f"non-integral modulus exponent {param.re}", "re")
    if (param.re.numerator - param.w) % 2 != 0:
        raise NotNice(f"parity mismatch between {param.re} and {param.w}", "parity")
    r = param.re.numerator
    return LaurentExponent((r + param.w) // 2, (r - param.w) // 2)


@dataclass(frozen=True)
class MonomialMatrix:
    """Matrix of endomorphism parameters representing a monomial map.

    The j-th output coordinate is the product over source coordinates i of
    entries[j][i] evaluated at z_i.  Rows and columns are labelled by ray
    indices.
    """

    rows: tuple
    cols: tuple
    entries: tuple  # entries[row_pos][col_pos]

    @staticmethod
    def identity(indices):
        indices = tuple(indices)
        ents = tuple(
            tuple(ONE if i == j else ZERO for j in indices) for i in indices
        )
        return MonomialMatrix(indices, indices, ents)

    def entry(self, row, col):
        return self.entries[self.rows.index(row)][self.cols.index(col)]

    def all_nice(self):
        return all(e.is_nice() for row in self.entries for e in row)


def matrix_eval(matrix, point):
    """Apply the monomial map to a point indexed like matrix.cols."""
    if len(point) != len(matrix.cols):
        raise ShapeMismatch(f"point has {len(point)} coordinates, expected {len(matrix.cols)}")
    for pos, z in enumerate(point):
        if z == 0:
            raise ZeroInput(f"zero source coordinate at index {matrix.cols[pos]}")
    out = []
    for row in matrix.entries:
        value = complex(1)
        for param, z in zip(row, point):
            if not param.is_zero():
                value *= eval_endo(param, z)
        out.append(value)
    return tuple(out)


def matrix_compose(outer, inner):
    """Parameter matrix of the composite map outer o inner.

    Each output of the inner map is a product of single-variable
    endomorphisms, and endomorphisms are multiplicative, so composing and
    multiplying exponent parameters entrywise is exact.
    """
    if inner.rows != outer.cols:
        raise ShapeMismatch(f"inner rows {inner.rows} != outer cols {outer.cols}")
    entries = []
    for k in range(len(outer.rows)):
        row = []
        for i in range(len(inner.cols)):
            acc = ZERO
            for j in range(len(outer.cols)):
                acc = acc + compose(outer.entries[k][j], inner.entries[j][i])
            row.append(acc)
        entries.append(tuple(row))
    return MonomialMatrix(outer.rows, inner.cols, tuple(entries))


# ---------------------------------------------------------------------------
# Textual rendering (stable; used by the CLI and golden tests).


def render_entry(param, var):
    """Render a single-variable factor, e.g. ``z_1^-1`` or ``conj(z_2)^3``.

    Nice parameters print as Laurent monomials with zero exponents elided;
    general parameters print the modulus/phase form.
    """
    if param.is_zero():
        return "1"
    if param.is_nice():
        lau = to_laurent(param)
        parts = []
        if lau.p:
            parts.append(f"{var}^{lau.p}")
        if lau.q:
            parts.append(f"conj({var})^{lau.q}")
        return " ".join(parts) if parts else "1"
    if param.im:
        sign = "+" if param.im > 0 else "-"
        mod = f"|{var}|^({param.re}{sign}{abs(param.im)}·i)"
    else:
        mod = f"|{var}|^({param.re})"
    parts = []
    if param.re or param.im:
        parts.append(mod)
    if param.w:
        parts.append(f"({var}/|{var}|)^{param.w}")
    return "·".join(parts) if parts else "1"


def render_row(params, varnames):
    """Render one output coordinate as a product over source variables."""
    factors = [render_entry(p, v) for p, v in zip(params, varnames)]
    factors = [f for f in factors if f != "1"]
    return "·".join(factors) if factors else "1"
