#!/usr/bin/env python
"""
Semilattice: combinatorial-type convex spaces.

A finite meet-semilattice S is a convex space with cc(λ, x, y) = x ∧ y for
λ ∈ (0,1). Also here: the finitary Manes monad of finite nonempty subsets,
the coefficient change Δ → P sending weights through sgn, and possibility
measures on finite carriers.
"""
# ========================================================
# IMPORTS
# ========================================================
import itertools
import logging
import math
import random
from collections.abc import Callable, Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Any

# --------------------------------------------------------
# Local Imports
# --------------------------------------------------------
from cst.giry import Dist, dist_flatten, dist_unit, sort_key
from cst.kernel import (
    DomainError,
    LawReport,
    SpaceHandle,
    UnsupportedSizeError,
    ValidationError,
)
from cst.utils import encode_token, parse_rational, token_lookup

# ========================================================
# GLOBALS
# ========================================================
_log = logging.getLogger("CST.semilattice")

FREE_SEMILATTICE_MAX = 6


# ========================================================
# FINITE SEMILATTICES
# ========================================================
@dataclass(frozen=True)
class FiniteSemilattice:
    """A validated finite meet-semilattice.

    ``table[i][j]`` is the index of ``elements[i] ∧ elements[j]``.
    The order is a ≤ b ⇔ a ∧ b = a.
    """

    elements: tuple
    table: tuple[tuple[int, ...], ...]
    name: str = "semilattice"
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {e: i for i, e in enumerate(self.elements)})

    def __contains__(self, x) -> bool:
        try:
            return x in self._index
        except TypeError:
            return False

    def __len__(self):
        return len(self.elements)

    def meet(self, a, b):
        try:
            return self.elements[self.table[self._index[a]][self._index[b]]]
        except KeyError as e:
            raise DomainError(f"{e.args[0]!r} is not an element of {self.name}") from e

    def leq(self, a, b) -> bool:
        return self.meet(a, b) == a


def semilattice_make(elements: Iterable, meet: Callable | Mapping | Sequence,
                     name: str = "semilattice") -> FiniteSemilattice:
    """Build a semilattice from a meet given as a callable, a pair mapping or an index table.

    Every pair and triple is checked. A failure raises ValidationError whose
    ``invariant`` names the axiom and ``witness`` holds the offending elements.
    """
    elements = tuple(elements)
    if not elements:
        raise DomainError("a semilattice needs at least one element")
    if len(set(elements)) != len(elements):
        raise ValidationError("duplicate elements", invariant="distinct", witness=elements)
    index = {e: i for i, e in enumerate(elements)}
    n = len(elements)

    def lookup(i, j):
        a, b = elements[i], elements[j]
        if callable(meet):
            return meet(a, b)
        if isinstance(meet, Mapping):
            if (a, b) not in meet:
                raise ValidationError(f"meet of {a!r} and {b!r} is missing",
                                      invariant="total", witness=(a, b))
            return meet[(a, b)]
        try:
            k = meet[i][j]
        except (IndexError, TypeError) as e:
            raise ValidationError(f"meet table has no entry ({i}, {j})",
                                  invariant="total", witness=(a, b)) from e
        if not isinstance(k, int) or not 0 <= k < n:
            raise ValidationError(f"meet table entry ({i}, {j}) = {k!r} is not an element index",
                                  invariant="closure", witness=(a, b))
        return elements[k]

    table = []
    for i in range(n):
        row = []
        for j in range(n):
            c = lookup(i, j)
            if c not in index:
                raise ValidationError(f"{elements[i]!r} ∧ {elements[j]!r} = {c!r} is not an element",
                                      invariant="closure", witness=(elements[i], elements[j]))
            row.append(index[c])
        table.append(tuple(row))

    for i in range(n):
        if table[i][i] != i:
            raise ValidationError(f"idempotency fails at {elements[i]!r}",
                                  invariant="idempotency", witness=(elements[i],))
    for i, j in itertools.combinations(range(n), 2):
        if table[i][j] != table[j][i]:
            raise ValidationError(f"commutativity fails at ({elements[i]!r}, {elements[j]!r})",
                                  invariant="commutativity", witness=(elements[i], elements[j]))
    for i, j, k in itertools.product(range(n), repeat=3):
        if table[table[i][j]][k] != table[i][table[j][k]]:
            raise ValidationError(
                f"associativity fails at ({elements[i]!r}, {elements[j]!r}, {elements[k]!r})",
                invariant="associativity", witness=(elements[i], elements[j], elements[k]))
    _log.debug("validated %s with %d elements", name, n)
    return FiniteSemilattice(elements, tuple(table), name)


def semilattice_space(S: FiniteSemilattice) -> SpaceHandle:
    """The convex space of S: y at λ = 0, x at λ = 1, x ∧ y in between."""
    lookup = token_lookup(S.elements)

    def combine(lam, x, y):
        if lam == 0:
            return y
        if lam == 1:
            return x
        return S.meet(x, y)

    def decode(obj):
        try:
            return lookup[repr(obj)]
        except KeyError as e:
            raise DomainError(f"{obj!r} is not an element of {S.name}") from e

    return SpaceHandle(
        space_id=S.name,
        combine=combine,
        contains=S.__contains__,
        sample=lambda rng: rng.choice(S.elements),
        decode=decode,
        combinatorial=True,
        elements=tuple(S.elements),
    )


def face_classifier_semilattice() -> FiniteSemilattice:
    """FC = {i, f} with i ∧ f = i."""
    return semilattice_make(("i", "f"), {("i", "i"): "i", ("i", "f"): "i",
                                         ("f", "i"): "i", ("f", "f"): "f"},
                            name="face-classifier")


def divisor_semilattice(n: int) -> FiniteSemilattice:
    """The divisors of n under gcd."""
    if n < 1:
        raise DomainError(f"divisor semilattice needs n ≥ 1, got {n}")
    divisors = tuple(d for d in range(1, n + 1) if n % d == 0)
    return semilattice_make(divisors, math.gcd, name=f"divisors({n})")


def free_semilattice(carrier: Iterable) -> FiniteSemilattice:
    """Nonempty subsets of X with meet = union, so A ≤ B ⇔ A ⊇ B."""
    points = sorted(set(carrier), key=sort_key)
    if not points:
        raise DomainError("free semilattice needs a nonempty carrier")
    if len(points) > FREE_SEMILATTICE_MAX:
        raise UnsupportedSizeError(
            f"free semilattice on {len(points)} points (limit {FREE_SEMILATTICE_MAX})")
    subsets = [frozenset(c) for r in range(1, len(points) + 1)
               for c in itertools.combinations(points, r)]
    name = "free-semilattice(" + ",".join(str(encode_token(p)) for p in points) + ")"
    return semilattice_make(subsets, frozenset.union, name=name)


# ========================================================
# MANES MONAD
# ========================================================
def manes_unit(x) -> frozenset:
    return frozenset((x,))


def manes_map(f: Callable[[Any], Any], members: frozenset) -> frozenset:
    return frozenset(f(m) for m in members)


def manes_flatten(family: Iterable[frozenset]) -> frozenset:
    """Union of a nonempty family of nonempty subsets."""
    family = list(family)
    if not family or any(not b for b in family):
        raise DomainError("flatten needs a nonempty family of nonempty subsets")
    return frozenset().union(*family)


def support(d: Dist) -> frozenset:
    """sgn on weights: the points carrying positive weight."""
    return frozenset(p for p, w in d.support if w > 0)


def meet_all(S: FiniteSemilattice, members: Iterable):
    """Manes algebra structure map of S: the meet of a finite nonempty subset."""
    members = list(members)
    if not members:
        raise DomainError("meet of an empty subset")
    return reduce(S.meet, members)


def check_coefficient_change(samples: Sequence[Dist], *,
                             support_fn: Callable[[Dist], frozenset] = support) -> LawReport:
    """Check that *support_fn* is a monad morphism Δ → P on nested samples.

    Unit: σ(x̲) = {x}. Multiplication: σ(μ(dd)) = ∪ σ(σ(dd)).
    """
    report = LawReport()

    def same(a, b):
        return a == b

    seen = []
    for dd in samples:
        for inner in dd.points:
            seen.extend(x for x in inner.points if x not in seen)
        report.expect("coefficient-flatten", same,
                      support_fn(dist_flatten(dd)),
                      manes_flatten(manes_map(support_fn, support_fn(dd))), {"nested": dd})
    for x in seen:
        report.expect("coefficient-unit", same, support_fn(dist_unit(x)), manes_unit(x), {"x": x})
    return report


def check_manes_monad_laws(samples: Sequence[frozenset]) -> LawReport:
    """Monad laws on triple-nested finite subsets."""
    report = LawReport()

    def same(a, b):
        return a == b

    for ccc in samples:
        report.expect("manes-associativity", same,
                      manes_flatten(manes_flatten(ccc)),
                      manes_flatten(manes_map(manes_flatten, ccc)), {"nested": ccc})
        for b in (ccc, manes_flatten(ccc)):
            report.expect("manes-left-unit", same, manes_flatten(manes_unit(b)), b, {"b": b})
            report.expect("manes-right-unit", same, manes_flatten(manes_map(manes_unit, b)), b, {"b": b})
    return report


def random_subset(rng: random.Random, points: Sequence, max_size: int = 3) -> frozenset:
    points = list(points)
    return frozenset(rng.sample(points, rng.randint(1, min(max_size, len(points)))))


# ========================================================
# POSSIBILITY MEASURES
# ========================================================
@dataclass(frozen=True)
class PossibilityMeasure:
    """Possibility measure on a finite carrier, given pointwise.

    The value of an event is the maximum over its members (0 for the empty
    event), which makes the measure sup-additive over unions. ``normalized``
    is False only for results of :func:`possibility_meet` whose maximum
    dropped below 1.
    """

    values: tuple[tuple[Any, Fraction], ...]
    normalized: bool = True

    def __post_init__(self):
        if not self.values:
            raise DomainError("a possibility measure needs a nonempty carrier")
        for point, v in self.values:
            if not 0 <= v <= 1:
                raise ValidationError(f"value {v} of {point!r} outside [0, 1]",
                                      invariant="possibility-range", witness=(point, v))
        top = max(v for _, v in self.values)
        if self.normalized and top != 1:
            raise ValidationError(f"maximum is {top}, not 1",
                                  invariant="possibility-normalized", witness=self.values)

    @property
    def carrier(self) -> frozenset:
        return frozenset(p for p, _ in self.values)

    def value(self, point) -> Fraction:
        for p, v in self.values:
            if p == point:
                return v
        raise DomainError(f"{point!r} is not in the carrier")

    def of(self, event: Iterable) -> Fraction:
        return max((self.value(p) for p in event), default=Fraction(0))


def possibility_measure(values: Mapping) -> PossibilityMeasure:
    """Validated, normalized measure from a point → value mapping."""
    parsed = sorted(((p, parse_rational(v)) for p, v in values.items()), key=lambda pv: sort_key(pv[0]))
    return PossibilityMeasure(tuple(parsed))


def _aligned(m1: PossibilityMeasure, m2: PossibilityMeasure):
    if m1.carrier != m2.carrier:
        raise DomainError("possibility measures live on different carriers")
    return [(p, v, m2.value(p)) for p, v in m1.values]


def possibility_meet(m1: PossibilityMeasure, m2: PossibilityMeasure) -> PossibilityMeasure:
    """Pointwise minimum, not renormalized."""
    values = tuple((p, min(a, b)) for p, a, b in _aligned(m1, m2))
    top = max(v for _, v in values)
    if top != 1:
        _log.debug("possibility meet has maximum %s; returned unnormalized", top)
    return PossibilityMeasure(values, normalized=top == 1)


def possibility_leq(m1: PossibilityMeasure, m2: PossibilityMeasure) -> bool:
    """Pointwise order m1 ≤ m2."""
    return all(a <= b for _, a, b in _aligned(m1, m2))


def random_possibility(rng: random.Random, carrier: Sequence, max_den: int = 6) -> PossibilityMeasure:
    points = list(carrier)
    values = {p: Fraction(rng.randint(0, max_den), max_den) for p in points}
    values[rng.choice(points)] = Fraction(1)
    return possibility_measure(values)
