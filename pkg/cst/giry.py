#!/usr/bin/env python
"""
Giry: finitely supported distributions, the free convex space Δ_X and the
monad structure (unit, map, flatten), plus the algebra-law checks for a
structure map m : Δ_C → C.
"""
# ========================================================
# IMPORTS
# ========================================================
import dataclasses
import logging
import random
from collections import defaultdict
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Any

# --------------------------------------------------------
# Local Imports
# --------------------------------------------------------
from config import MAX_DENOMINATOR
from cst.kernel import (
    Coeff,
    DomainError,
    LawReport,
    SpaceHandle,
    ValidationError,
    cc_nary,
    coeff,
)
from cst.utils import encode_token, format_rational, parse_rational, token_lookup

# ========================================================
# GLOBALS
# ========================================================
_log = logging.getLogger("CST.giry")


# ========================================================
# CLASSES
# ========================================================
@dataclass(frozen=True)
class Dist:
    """A finite formal convex combination Σ wᵢ x̲ᵢ in canonical form.

    ``support`` holds ``(point, weight)`` pairs with positive weights summing
    to 1, distinct points, ordered by :func:`sort_key`. Two Dists are equal
    iff they assign the same weight to every point.
    Build instances through :func:`dist_make` or the monad operations.
    """

    support: tuple[tuple[Any, Coeff], ...]

    @property
    def points(self) -> tuple:
        return tuple(p for p, _ in self.support)

    @property
    def weights(self) -> tuple[Coeff, ...]:
        return tuple(w for _, w in self.support)

    def weight(self, point) -> Fraction:
        for p, w in self.support:
            if p == point:
                return w
        return Fraction(0)

    def __iter__(self):
        return iter(self.support)

    def __len__(self):
        return len(self.support)

    def __repr__(self):
        body = ", ".join(f"{p!r}: {format_rational(w)}" for p, w in self.support)
        return "{" + body + "}"


def sort_key(x):
    """Total order on carrier tokens used for the canonical support order."""
    if isinstance(x, Dist):
        return ("dist", tuple((sort_key(p), w) for p, w in x.support))
    if isinstance(x, bool):
        return ("bool", x)
    if isinstance(x, Rational):
        return ("num", Fraction(x))
    if isinstance(x, str):
        return ("str", x)
    if isinstance(x, tuple):
        return ("tuple", tuple(sort_key(c) for c in x))
    if isinstance(x, frozenset):
        return ("set", tuple(sorted(sort_key(c) for c in x)))
    if dataclasses.is_dataclass(x) and not isinstance(x, type):
        return (type(x).__name__,
                tuple(sort_key(getattr(x, f.name)) for f in dataclasses.fields(x)))
    return (type(x).__name__, repr(x))


def _canonical(weighted: Iterable[tuple[Any, Fraction]]) -> Dist:
    totals: dict[Any, Fraction] = defaultdict(Fraction)
    for point, w in weighted:
        totals[point] += w
    support = sorted(((p, Coeff(w)) for p, w in totals.items() if w != 0),
                     key=lambda pw: sort_key(pw[0]))
    return Dist(tuple(support))


# ========================================================
# MONAD OPERATIONS
# ========================================================
def dist_make(pairs: Iterable[tuple[Any, Any]]) -> Dist:
    """Validate ``(point, weight)`` pairs and return the canonical Dist.

    Duplicate points are merged by adding weights and zero weights dropped.
    Raises DomainError on an empty list, ValidationError on negative weights
    or a total other than 1.
    """
    pairs = list(pairs)
    if not pairs:
        raise DomainError("a distribution needs at least one point")
    weighted = []
    for point, w in pairs:
        try:
            q = parse_rational(w)
        except ValueError as e:
            raise ValidationError(str(e), invariant="dist-weight", witness=w) from e
        if q < 0:
            raise ValidationError(f"negative weight {q} on {point!r}",
                                  invariant="dist-weight", witness=(point, q))
        weighted.append((point, q))
    total = sum(w for _, w in weighted)
    if total != 1:
        raise ValidationError(f"weights sum to {total}, not 1",
                              invariant="dist-sum", witness=tuple(pairs))
    return _canonical(weighted)


def dist_unit(x) -> Dist:
    """η: the point mass x̲."""
    return Dist(((x, Coeff(1)),))


def dist_map(f: Callable[[Any], Any], d: Dist) -> Dist:
    """Pushforward Σλᵢ x̲ᵢ ↦ Σλᵢ f(xᵢ)̲; collided images merge."""
    return _canonical((f(p), w) for p, w in d.support)


def dist_flatten(dd: Dist) -> Dist:
    """μ: the weight of x is Σᵢ λᵢ μᵢₓ."""
    weighted = []
    for inner, lam in dd.support:
        if not isinstance(inner, Dist):
            raise DomainError(f"flatten expects a distribution of distributions, got {inner!r}")
        weighted.extend((p, lam * w) for p, w in inner.support)
    return _canonical(weighted)


def mixture(lam, d1: Dist, d2: Dist) -> Dist:
    lam = coeff(lam)
    return _canonical([*((p, lam * w) for p, w in d1.support),
                       *((p, (1 - lam) * w) for p, w in d2.support)])


def free_space(carrier: Iterable) -> SpaceHandle:
    """Δ_X over a finite carrier, with cc the pointwise mixture."""
    points = frozenset(carrier)
    if not points:
        raise DomainError("free space needs a nonempty carrier")
    ordered = sorted(points, key=sort_key)
    lookup = token_lookup(points)

    def contains(d):
        return isinstance(d, Dist) and all(p in points for p in d.points)

    def encode(d):
        return [[encode_token(p), format_rational(w)] for p, w in d.support]

    def decode(obj):
        try:
            return dist_make((lookup[repr(tok)], w) for tok, w in obj)
        except KeyError as e:
            raise DomainError(f"token {e.args[0]} is not in the carrier") from e

    return SpaceHandle(
        space_id="free(" + ",".join(str(encode_token(p)) for p in ordered) + ")",
        combine=mixture,
        contains=contains,
        sample=lambda rng: random_dist(rng, ordered),
        encode=encode,
        decode=decode,
    )


def barycenter(space: SpaceHandle, d: Dist):
    """Structure map m: evaluate the formal combination in *space* via cc_nary."""
    if not isinstance(d, Dist):
        raise DomainError(f"barycenter expects a distribution, got {d!r}")
    for p in d.points:
        space.require(p)
    return cc_nary(space, d.weights, d.points)


# ========================================================
# LAW CHECKS
# ========================================================
def check_algebra_laws(space: SpaceHandle, nested_samples: Sequence[Dist], *,
                       structure: Callable[[SpaceHandle, Dist], Any] = barycenter) -> LawReport:
    """Check m∘η = id and m∘Δ_m = m∘μ on every nested sample.

    *structure* defaults to :func:`barycenter`; pass another map to test it.
    """
    report = LawReport()

    def m(d):
        return structure(space, d)

    seen = []
    for dd in nested_samples:
        for inner in dd.points:
            for x in inner.points:
                if x not in seen:
                    seen.append(x)
        report.expect("algebra-associativity", space.equal,
                      m(dist_map(m, dd)), m(dist_flatten(dd)), {"nested": dd})
    for x in seen:
        report.expect("algebra-unit", space.equal, m(dist_unit(x)), x, {"x": x})
    _log.debug("algebra laws on %s: %d checks", space.space_id, report.checked_cases)
    return report


def check_giry_monad_laws(samples: Sequence[Dist]) -> LawReport:
    """Monad laws on triple-nested distributions, checked exactly."""
    report = LawReport()
    for ddd in samples:
        report.expect("monad-associativity", lambda a, b: a == b,
                      dist_flatten(dist_flatten(ddd)), dist_flatten(dist_map(dist_flatten, ddd)),
                      {"nested": ddd})
        for d in (ddd, dist_flatten(ddd)):
            report.expect("monad-left-unit", lambda a, b: a == b,
                          dist_flatten(dist_unit(d)), d, {"d": d})
            report.expect("monad-right-unit", lambda a, b: a == b,
                          dist_flatten(dist_map(dist_unit, d)), d, {"d": d})
    return report


# ========================================================
# RANDOM SAMPLES
# ========================================================
def random_dist(rng: random.Random, points: Sequence, max_support: int = 4,
                max_den: int = MAX_DENOMINATOR) -> Dist:
    """Random Dist over up to *max_support* distinct *points*, positive weights."""
    points = list(points)
    if not points:
        raise DomainError("random_dist needs at least one point")
    k = rng.randint(1, min(max_support, len(points)))
    chosen = rng.sample(points, k)
    raw = [rng.randint(1, max_den) for _ in chosen]
    total = sum(raw)
    return _canonical((p, Fraction(r, total)) for p, r in zip(chosen, raw, strict=True))


def random_nested_dist(rng: random.Random, points: Sequence, depth: int = 2, width: int = 3,
                       max_den: int = MAX_DENOMINATOR) -> Dist:
    """Random distribution nested *depth* levels deep over *points*."""
    if depth <= 1:
        return random_dist(rng, points, max_den=max_den)
    inner = [random_nested_dist(rng, points, depth - 1, width, max_den)
             for _ in range(rng.randint(1, width))]
    raw = [rng.randint(1, max_den) for _ in inner]
    total = sum(raw)
    return _canonical((d, Fraction(r, total)) for d, r in zip(inner, raw, strict=True))
