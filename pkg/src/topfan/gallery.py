"""Built-in fans: projective spaces, Hirzebruch surfaces, a nice non-toric
fan, and seeded perturbations for deformation property tests.

Every gallery fan passes full validation; constructors with randomness
retry candidates until validation succeeds.
"""

from __future__ import annotations

import random
import re
from fractions import Fraction

from . import charts
from .fan import classify, make_fan, ray_data, validate


class UnknownGallery(ValueError):
    pass


class InvalidParam(ValueError):
    pass


def cp1():
    return make_fan(
        1, 2, [{1}, {2}],
        [ray_data((1,), (0,), (1,)), ray_data((-1,), (0,), (-1,))],
    )


def cpn(n):
    """Standard projective-space fan: unit rays plus the anti-diagonal ray."""
    if n < 1:
        raise InvalidParam(f"cpn needs a positive dimension, got {n}")
    if n == 1:
        return cp1()
    rays = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    rays.append(tuple(-1 for _ in range(n)))
    simplices = [set(range(1, n + 2)) - {i} for i in range(1, n + 2)]
    beta = [ray_data(v, (0,) * n, v) for v in rays]
    return make_fan(n, n + 1, simplices, beta)


def hirzebruch(a):
    a = int(a)
    rays = [(1, 0), (0, 1), (-1, a), (0, -1)]
    beta = [ray_data(v, (0, 0), v) for v in rays]
    return make_fan(2, 4, [{1, 2}, {2, 3}, {3, 4}, {4, 1}], beta)


def nice_nontoric():
    """A nice but non-toric fan whose transitions are genuinely conjugating.

    Candidates keep the v-data of a four-cone surface fan and bend one
    b-vector by an even amount; the first candidate that validates, is nice
    and non-toric, and exhibits a conjugate exponent in some transition
    wins.  (On the three-cone projective-plane combinatorics every nice
    choice of b reproduces the holomorphic toric exponents, so four cones
    are the smallest honest example.)
    """
    v = [(1, 0), (0, 1), (-1, 0), (0, -1)]
    simplices = [{1, 2}, {2, 3}, {3, 4}, {4, 1}]
    candidates = [
        [(1, 0), (0, 1), (-1, 2), (0, -1)],
        [(1, 0), (0, 1), (-1, -2), (0, -1)],
        [(1, 2), (0, 1), (-1, 0), (0, -1)],
    ]
    for b in candidates:
        beta = [ray_data(bi, (0, 0), vi) for bi, vi in zip(b, v)]
        fan = make_fan(2, 4, simplices, beta)
        cls = classify(fan)
        if not (validate(fan).valid and cls.nice and not cls.toric):
            continue
        if _has_conjugate_transition(fan):
            return fan
    raise AssertionError("no nice non-toric candidate validated")


def _has_conjugate_transition(fan):
    simplices = [tuple(sorted(s)) for s in fan.sorted_simplices()]
    for I in simplices:
        for J in simplices:
            t = charts.transition(fan, I, J)
            if t.laurent_form is None:
                return False
            if any(e.q != 0 for row in t.laurent_form for e in row):
                return True
    return False


def perturbed(base_name, seed, max_attempts=50):
    """Seeded rational noise on a toric gallery fan; retried until valid.

    Adds nonzero c-data and small denominators to b so the deformation
    pipeline has real work to do; v and the simplices are untouched.
    """
    base = fan_by_name(base_name)
    rng = random.Random(seed)
    for _ in range(max_attempts):
        beta = []
        for rec in base.beta:
            b = tuple(
                x + Fraction(rng.randint(-2, 2), rng.choice([3, 4, 5, 7, 8]))
                for x in rec.b
            )
            c = tuple(
                Fraction(rng.randint(-6, 6), rng.choice([1, 2, 3, 4])) for _ in rec.c
            )
            beta.append(ray_data(b, c, rec.v))
        try:
            fan = make_fan(base.dimension, base.ray_count, base.maximal_simplices, beta)
        except ValueError:
            continue
        if validate(fan).valid:
            return fan
    raise InvalidParam(f"no valid perturbation of {base_name} found for seed {seed}")


_CALL = re.compile(r"^(\w+)\(([^)]*)\)$")


def fan_by_name(name):
    """Resolve a gallery name like ``cp2``, ``cpn(3)``, ``hirzebruch(1)`` or
    ``perturbed(cp2,17)``."""
    name = name.strip()
    if name == "cp1":
        return cp1()
    if name == "nice_nontoric":
        return nice_nontoric()
    plain = re.fullmatch(r"cp(\d+)", name)
    if plain:
        return cpn(int(plain.group(1)))
    call = _CALL.match(name)
    if call:
        head, args = call.group(1), [a.strip() for a in call.group(2).split(",") if a.strip()]
        try:
            if head == "cpn":
                return cpn(int(args[0]))
            if head == "hirzebruch":
                return hirzebruch(int(args[0]))
            if head == "perturbed":
                return perturbed(args[0], int(args[1]))
        except (IndexError, ValueError) as exc:
            raise InvalidParam(f"bad arguments for gallery {name!r}: {exc}") from None
    raise UnknownGallery(f"unknown gallery fan {name!r}")


GALLERY_NAMES = ["cp1", "cpn(n)", "hirzebruch(a)", "nice_nontoric", "perturbed(base,seed)"]
