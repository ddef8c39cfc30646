#!/usr/bin/env python
"""
Geometric: convex spaces that sit inside rational vector spaces.

Vector spaces ℚᵈ, the line and the unit interval, simplices, metric
spaces on a finite set, intervals with open/closed endpoints, segment maps,
perturbed unit-interval structures for rigidity checks and Schur–Horn
permutohedron membership.
"""
# ========================================================
# IMPORTS
# ========================================================
import itertools
import logging
import random
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

# --------------------------------------------------------
# Local Imports
# --------------------------------------------------------
from config import MAX_DENOMINATOR
from cst.exact_lp import feasible_point
from cst.kernel import (
    DomainError,
    LawReport,
    SpaceHandle,
    UnsupportedSizeError,
    ValidationError,
    check_convex_map,
    check_convex_space_laws,
    coeff,
    random_coeff,
    random_rational,
    random_weights,
    restrict,
)
from cst.utils import format_rational, parse_rational

# ========================================================
# GLOBALS
# ========================================================
_log = logging.getLogger("CST.geometric")

PERMUTOHEDRON_MAX = 5

# (y0, y1) pairs for the endomaps x ↦ (1-x)·y0 + x·y1 tried by check_rigidity
RIGIDITY_ENDOMAPS = (
    (Fraction(0), Fraction(1)),
    (Fraction(1), Fraction(0)),
    (Fraction(0), Fraction(1, 2)),
    (Fraction(1, 4), Fraction(3, 4)),
    (Fraction(1, 2), Fraction(1)),
)


def _is_rational(v) -> bool:
    return isinstance(v, Rational) and not isinstance(v, bool)


# ========================================================
# VECTOR SPACES
# ========================================================
def vector_space(dim: int) -> SpaceHandle:
    """ℚ^dim with componentwise λx + λ̄y. Points are tuples of Fractions."""
    if dim < 0:
        raise DomainError(f"dimension must be ≥ 0, got {dim}")

    def contains(x):
        return isinstance(x, tuple) and len(x) == dim and all(_is_rational(c) for c in x)

    def combine(lam, x, y):
        return tuple(lam * a + (1 - lam) * b for a, b in zip(x, y, strict=True))

    return SpaceHandle(
        space_id=f"vector({dim})",
        combine=combine,
        contains=contains,
        sample=lambda rng: tuple(random_rational(rng) for _ in range(dim)),
        encode=lambda x: [format_rational(c) for c in x],
        decode=lambda obj: tuple(parse_rational(c) for c in obj),
    )


def rational_line() -> SpaceHandle:
    """ℚ with scalar points."""
    return SpaceHandle(
        space_id="line",
        combine=lambda lam, x, y: lam * x + (1 - lam) * y,
        contains=_is_rational,
        sample=random_rational,
        encode=format_rational,
        decode=parse_rational,
    )


def unit_interval() -> SpaceHandle:
    """[0,1] ∩ ℚ as a guarded subset of the line."""
    return restrict(rational_line(), lambda x: 0 <= x <= 1, "unit-interval",
                    sample=lambda rng: Fraction(random_coeff(rng)))


def simplex_space(n: int) -> SpaceHandle:
    """The standard simplex {x ∈ ℚⁿ : x ≥ 0, Σx = 1}."""
    if n < 1:
        raise DomainError(f"simplex needs n ≥ 1, got {n}")
    return restrict(vector_space(n), lambda x: all(c >= 0 for c in x) and sum(x) == 1,
                    f"simplex({n})",
                    sample=lambda rng: tuple(Fraction(w) for w in random_weights(rng, n)))


def metric_pairs(n: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(n), 2))


def is_metric(d: tuple, n: int) -> bool:
    """``d`` lists d(i, j) for i < j in :func:`metric_pairs` order."""
    pairs = metric_pairs(n)
    if not (isinstance(d, tuple) and len(d) == len(pairs)):
        return False
    if not all(_is_rational(v) and v > 0 for v in d):
        return False
    dist = dict(zip(pairs, d, strict=True))

    def at(i, j):
        return dist[(min(i, j), max(i, j))]

    return all(at(i, k) <= at(i, j) + at(j, k)
               for i, j, k in itertools.permutations(range(n), 3))


def metrics_space(n: int) -> SpaceHandle:
    """Metrics on an n-point set; a convex combination of metrics is a metric."""
    if n < 2:
        raise DomainError(f"metrics space needs n ≥ 2, got {n}")
    m = len(metric_pairs(n))

    def sample(rng):
        # any values in [1, 2] satisfy the triangle inequality
        return tuple(1 + Fraction(rng.randint(0, MAX_DENOMINATOR), MAX_DENOMINATOR) for _ in range(m))

    return restrict(vector_space(m), lambda d: is_metric(d, n), f"metrics({n})", sample=sample)


# ========================================================
# SEGMENTS AND ENDOMAPS
# ========================================================
def segment(space: SpaceHandle, x, y, lam):
    """g_{x,y}(λ) = λ̄x + λy, so g(0) = x and g(1) = y."""
    return space.cc(coeff(lam).bar, x, y)


def segment_map(space: SpaceHandle, x, y) -> Callable:
    return lambda lam: segment(space, x, y, lam)


def interval_endomap(y0, y1) -> Callable[[Fraction], Fraction]:
    """f_{y0,y1}(x) = x̄·y0 + x·y1 on [0,1]."""
    y0, y1 = Fraction(coeff(y0)), Fraction(coeff(y1))
    return lambda x: (1 - x) * y0 + x * y1


# ========================================================
# INTERVALS
# ========================================================
@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction
    lo_closed: bool = True
    hi_closed: bool = True

    def __post_init__(self):
        object.__setattr__(self, "lo", parse_rational(self.lo))
        object.__setattr__(self, "hi", parse_rational(self.hi))
        if self.lo > self.hi or (self.lo == self.hi and not (self.lo_closed and self.hi_closed)):
            raise ValidationError(f"empty interval {self}", invariant="interval-nonempty",
                                  witness=(self.lo, self.hi, self.lo_closed, self.hi_closed))

    def contains_point(self, c) -> bool:
        above = self.lo <= c if self.lo_closed else self.lo < c
        below = c <= self.hi if self.hi_closed else c < self.hi
        return above and below

    def __str__(self):
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        return f"{left}{format_rational(self.lo)}, {format_rational(self.hi)}{right}"


def interval_mix(lam, I1: Interval, I2: Interval) -> Interval:
    """Minkowski combination λI1 + λ̄I2.

    For λ ∈ (0,1) an endpoint is closed iff both input endpoints are closed.
    """
    lam = coeff(lam)
    if lam == 0:
        return I2
    if lam == 1:
        return I1
    return Interval(lam * I1.lo + (1 - lam) * I2.lo,
                    lam * I1.hi + (1 - lam) * I2.hi,
                    I1.lo_closed and I2.lo_closed,
                    I1.hi_closed and I2.hi_closed)


def random_interval(rng: random.Random) -> Interval:
    a, b = sorted((random_rational(rng), random_rational(rng)))
    if a == b:
        return Interval(a, b)
    return Interval(a, b, rng.random() < 0.5, rng.random() < 0.5)


def intervals_space() -> SpaceHandle:
    """Nonempty bounded rational intervals under Minkowski mixing."""
    return SpaceHandle(
        space_id="intervals",
        combine=interval_mix,
        contains=lambda x: isinstance(x, Interval),
        sample=random_interval,
        encode=lambda i: [format_rational(i.lo), format_rational(i.hi), i.lo_closed, i.hi_closed],
        decode=lambda obj: Interval(parse_rational(obj[0]), parse_rational(obj[1]),
                                    bool(obj[2]), bool(obj[3])),
    )


# ========================================================
# RIGIDITY
# ========================================================
def _twist(t: Fraction) -> Fraction:
    return t / (2 - t)


def _untwist(s: Fraction) -> Fraction:
    return 2 * s / (1 + s)


def _unit_variant(space_id: str, combine) -> SpaceHandle:
    return restrict(
        SpaceHandle(space_id=space_id, combine=combine, contains=_is_rational,
                    encode=format_rational, decode=parse_rational),
        lambda x: 0 <= x <= 1, space_id,
        sample=lambda rng: Fraction(random_coeff(rng)))


def perturbed_unit_intervals() -> dict[str, SpaceHandle]:
    """Alternative operations on [0,1] ∩ ℚ that the rigidity check must reject.

    squared-weight    λ²x + (1-λ²)y; breaks commutativity
    mobius-twist      standard structure moved along t ↦ t/(2-t); a lawful
                      convex space on which the affine endomaps are not convex
    min-semilattice   min(x, y) inside (0,1); lawful, but the flip is not convex
    dyadic-rounding   λx + λ̄y rounded to eighths; breaks idempotency
    """
    def squared(lam, x, y):
        w = lam * lam
        return w * x + (1 - w) * y

    def twisted(lam, x, y):
        return _untwist(lam * _twist(x) + (1 - lam) * _twist(y))

    def minimum(lam, x, y):
        if lam == 0:
            return y
        if lam == 1:
            return x
        return min(x, y)

    def dyadic(lam, x, y):
        return Fraction(round((lam * x + (1 - lam) * y) * 8), 8)

    return {
        "squared-weight": _unit_variant("unit-interval~squared-weight", squared),
        "mobius-twist": _unit_variant("unit-interval~mobius-twist", twisted),
        "min-semilattice": _unit_variant("unit-interval~min-semilattice", minimum),
        "dyadic-rounding": _unit_variant("unit-interval~dyadic-rounding", dyadic),
    }


def check_rigidity(space: SpaceHandle, samples: Sequence, lambdas: Sequence,
                   endomaps: Sequence[tuple] = RIGIDITY_ENDOMAPS) -> LawReport:
    """Law suite plus convexity of every x ↦ x̄y₀ + xy₁ for a structure on [0,1].

    The standard unit interval passes. Any other structure fails one of the
    two parts.
    """
    report = check_convex_space_laws(space, samples, lambdas)
    for y0, y1 in endomaps:
        report.merge(check_convex_map(interval_endomap(y0, y1), space, space, samples, lambdas,
                                      law="endomap-convexity", extra={"y0": y0, "y1": y1}))
    _log.debug("rigidity on %s: %d failures", space.space_id, len(report.failures))
    return report


# ========================================================
# SCHUR–HORN
# ========================================================
@dataclass(frozen=True)
class SpectrumSpec:
    eigenvalues: tuple[Fraction, ...]
    diagonal: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "eigenvalues", tuple(parse_rational(v) for v in self.eigenvalues))
        object.__setattr__(self, "diagonal", tuple(parse_rational(v) for v in self.diagonal))
        if len(self.eigenvalues) != len(self.diagonal):
            raise ValidationError(
                f"{len(self.eigenvalues)} eigenvalues but {len(self.diagonal)} diagonal entries",
                invariant="spectrum-length", witness=(self.eigenvalues, self.diagonal))


def permutohedron_contains(spec: SpectrumSpec) -> bool:
    """Is the diagonal in the convex hull of all permutations of the eigenvalues?

    Decided exactly: find weights w ≥ 0 over the distinct permutations with
    Σw = 1 and Σ w_σ λ_σ = a.
    """
    n = len(spec.eigenvalues)
    if n > PERMUTOHEDRON_MAX:
        raise UnsupportedSizeError(f"permutohedron of size {n} (limit {PERMUTOHEDRON_MAX})")
    if n == 0:
        return True
    vertices = sorted(set(itertools.permutations(spec.eigenvalues)))
    A = [[v[i] for v in vertices] for i in range(n)]
    A.append([Fraction(1)] * len(vertices))
    b = [*spec.diagonal, Fraction(1)]
    return feasible_point(A, b) is not None


def majorizes(diagonal: Sequence, eigenvalues: Sequence) -> bool:
    """True iff *eigenvalues* majorize *diagonal*: equal totals and dominating
    prefix sums of the decreasingly sorted vectors."""
    a = sorted((parse_rational(v) for v in diagonal), reverse=True)
    lam = sorted((parse_rational(v) for v in eigenvalues), reverse=True)
    if len(a) != len(lam):
        raise DomainError("majorization compares vectors of equal length")
    if sum(a) != sum(lam):
        return False
    return all(x >= y for x, y in zip(itertools.accumulate(lam), itertools.accumulate(a), strict=True))
