"""Regular deformation of a valid fan into a nice fan.

The pipeline deforms only the (b, c) ray data, keeps the simplicial
complex and all v-vectors fixed, and proceeds in four labelled linear
segments: kill the imaginary parts, rationalize b (a no-op for the exact
data model), scale b into even integer vectors by a large even N, then
swap to u = N*b - v.  Regularity along each segment is certified by exact
validation at both endpoints and at seeded interior parameter values; the
certificate is a finite surrogate for the continuum condition and is
labelled as such.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .fan import RayData, TopologicalFan, classify, validate


class PerturbationFailed(ValueError):
    pass


class RegularityFailedAtMaxN(ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class Segment:
    label: str  # kill_c | rationalize | scale_even | swap_to_u
    beta_start: tuple  # RayData per ray
    beta_end: tuple

    def beta_at(self, t):
        t = Fraction(t)
        out = []
        for start, end in zip(self.beta_start, self.beta_end):
            assert start.v == end.v, "v-data must be constant along a segment"
            out.append(
                RayData(
                    tuple((1 - t) * a + t * b for a, b in zip(start.b, end.b)),
                    tuple((1 - t) * a + t * b for a, b in zip(start.c, end.c)),
                    start.v,
                )
            )
        return tuple(out)


@dataclass(frozen=True)
class DeformationPath:
    dimension: int
    ray_count: int
    maximal_simplices: tuple
    segments: tuple

    def fan_at(self, segment_index, t):
        return TopologicalFan(
            self.dimension,
            self.ray_count,
            self.maximal_simplices,
            self.segments[segment_index].beta_at(t),
        )


@dataclass
class SegmentCertificate:
    label: str
    samples: int
    seed: int
    verdicts: list  # (t as Fraction, valid: bool)
    ok: bool


@dataclass
class RegularityCertificate:
    segments: list

    @property
    def ok(self):
        return all(s.ok for s in self.segments)


def _with_beta(fan, beta):
    return TopologicalFan(fan.dimension, fan.ray_count, fan.maximal_simplices, tuple(beta))


def _segment(label, fan, new_beta):
    """Segment from the fan's current beta to new_beta, or None if no change."""
    new_beta = tuple(new_beta)
    if new_beta == fan.beta:
        return _with_beta(fan, new_beta), None
    return _with_beta(fan, new_beta), Segment(label, fan.beta, new_beta)


def step1_kill_c(fan):
    """Deform all c_i linearly to zero; b and v are untouched."""
    return _segment(
        "kill_c",
        fan,
        (RayData(rec.b, tuple(Fraction(0) for _ in rec.c), rec.v) for rec in fan.beta),
    )


def step2_rationalize(fan, epsilon=Fraction(0), max_retries=20, samples=32, seed=0):
    """Snap each b_i to nearby rationals of bounded denominator.

    The data model is already rational, so epsilon = 0 is the identity.
    A positive epsilon snaps to denominators <= 1/epsilon and halves the
    perturbation until the segment revalidates.
    """
    epsilon = Fraction(epsilon)
    if epsilon == 0:
        return fan, None
    for _ in range(max_retries):
        limit = max(1, int(1 / epsilon))
        new_beta = tuple(
            RayData(tuple(x.limit_denominator(limit) for x in rec.b), rec.c, rec.v)
            for rec in fan.beta
        )
        candidate, segment = _segment("rationalize", fan, new_beta)
        if segment is None:
            return candidate, None
        cert = certify_segment(
            candidate.dimension, candidate.ray_count, candidate.maximal_simplices,
            segment, samples=samples, seed=seed,
        )
        if cert.ok:
            return candidate, segment
        epsilon = epsilon / 2
    raise PerturbationFailed("rationalization kept breaking validity after retries")


def _base_scale(fan):
    denominators = [x for rec in fan.beta for x in rec.b]
    return 2 * linalg.lcm_denominators(denominators)


def step3_scale_even(fan, n_min=None):
    """Scale all b_i by the smallest admissible even N with N*b_i in 2Z^n."""
    base = _base_scale(fan)
    if n_min is None:
        n_min = base
    multiplier = max(1, -(-int(n_min) // base))  # ceil division
    n = multiplier * base
    candidate, segment = _segment(
        "scale_even",
        fan,
        (RayData(tuple(n * x for x in rec.b), rec.c, rec.v) for rec in fan.beta),
    )
    return candidate, segment, n


def step4_swap_to_u(fan):
    """Replace each b-vector (already in 2Z^n) by u = b - v.

    u = v mod 2 holds automatically since u - v = b - 2v lies in 2Z^n.
    """
    for i, rec in enumerate(fan.beta, start=1):
        if any(x.denominator != 1 or x.numerator % 2 for x in rec.b):
            raise ValueError(f"ray {i}: b must lie in 2Z^n before the swap, got {rec.b}")
    return _segment(
        "swap_to_u",
        fan,
        (
            RayData(tuple(x - y for x, y in zip(rec.b, rec.v)), rec.c, rec.v)
            for rec in fan.beta
        ),
    )


def _sample_ts(samples, seed):
    rng = random.Random(seed)
    denominator = 1 << 16
    ts = {Fraction(0), Fraction(1)}
    while len(ts) < samples + 2:
        ts.add(Fraction(rng.randint(1, denominator - 1), denominator))
    return sorted(ts)


def certify_segment(dimension, ray_count, simplices, segment, samples=32, seed=0):
    """Exact validation at both endpoints and seeded interior parameters."""
    verdicts = []
    for t in _sample_ts(samples, seed):
        fan_t = TopologicalFan(dimension, ray_count, simplices, segment.beta_at(t))
        verdicts.append((t, validate(fan_t, seed=seed).valid))
    return SegmentCertificate(
        label=segment.label,
        samples=samples,
        seed=seed,
        verdicts=verdicts,
        ok=all(v for _, v in verdicts),
    )


def certify(path, samples=32, seed=0):
    return RegularityCertificate(
        segments=[
            certify_segment(
                path.dimension, path.ray_count, path.maximal_simplices,
                seg, samples=samples, seed=seed,
            )
            for seg in path.segments
        ]
    )


def niceify(fan, samples=32, seed=0, n_min=None, max_doublings=20):
    """Deform a valid fan into a nice fan along a certified piecewise path.

    Returns (nice fan, DeformationPath, RegularityCertificate).  An
    already-nice fan comes back unchanged with an empty path.  The scale
    factor N doubles on each step-4 regularity failure, up to
    max_doublings.
    """
    if not validate(fan, seed=seed).valid:
        raise ValueError("niceify requires a valid fan")

    def finish(segments, final_fan):
        path = DeformationPath(
            fan.dimension, fan.ray_count, fan.maximal_simplices, tuple(segments)
        )
        cert = certify(path, samples=samples, seed=seed)
        if not cert.ok:
            bad = next(s for s in cert.segments if not s.ok)
            raise RegularityFailedAtMaxN(
                f"segment {bad.label} failed sampled regularity", witness=bad
            )
        return final_fan, path, cert

    segments = []
    current = fan
    if classify(current).nice:
        return finish(segments, current)

    current, seg = step1_kill_c(current)
    if seg is not None:
        segments.append(seg)
    if classify(current).nice:
        return finish(segments, current)

    current, seg = step2_rationalize(current, samples=samples, seed=seed)
    if seg is not None:
        segments.append(seg)
    if classify(current).nice:
        return finish(segments, current)

    scale_min = n_min
    last_witness = None
    for _ in range(max_doublings + 1):
        scaled, seg3, n = step3_scale_even(current, n_min=scale_min)
        swapped, seg4 = step4_swap_to_u(scaled)
        trial = [s for s in (seg3, seg4) if s is not None]
        certs = [
            certify_segment(
                fan.dimension, fan.ray_count, fan.maximal_simplices,
                s, samples=samples, seed=seed,
            )
            for s in trial
        ]
        if all(c.ok for c in certs):
            return finish(segments + trial, swapped)
        last_witness = next(c for c in certs if not c.ok)
        scale_min = 2 * n
    raise RegularityFailedAtMaxN(
        f"no admissible scale factor within {max_doublings} doublings",
        witness=last_witness,
    )
