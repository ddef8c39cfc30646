#!/usr/bin/env python
"""
Mixed: convex spaces that are neither geometric nor combinatorial.

  fibered spaces S ⋉_f C    a semilattice base with a convex space C_s over
                            each s and backward transports f_{s,s'} : C_{s'} → C_s
  adjoin_infinity           C ∪ {∞} with ∞ absorbing every interior combination
  face_classifier           the two-point space {i, f}
  lottery_space             stakes [0,1) next to prizes Δ_{a,b}

In a fibered space an interior combination first moves both points to the
fiber over the meet of their base points and mixes there. λ ∈ {0, 1}
returns the corresponding argument unchanged, without transport.
"""
# ========================================================
# IMPORTS
# ========================================================
import itertools
import logging
import random
from collections.abc import Callable, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

# --------------------------------------------------------
# Local Imports
# --------------------------------------------------------
from cst.giry import Dist, dist_make, free_space, mixture, random_dist
from cst.kernel import (
    DomainError,
    SpaceHandle,
    ValidationError,
    check_convex_map,
    coeff,
    point_space,
    random_coeff,
)
from cst.semilattice import (
    FiniteSemilattice,
    face_classifier_semilattice,
    semilattice_make,
    semilattice_space,
)
from cst.utils import encode_token, format_rational, parse_rational, token_lookup

# ========================================================
# GLOBALS
# ========================================================
_log = logging.getLogger("CST.mixed")

VALIDATION_LAMBDAS = (Fraction(1, 3), Fraction(1, 2), Fraction(3, 4))


# ========================================================
# FIBERED SPACES
# ========================================================
@dataclass(frozen=True)
class FiberedElement:
    base: Any
    value: Any


def covering_pairs(S: FiniteSemilattice) -> list[tuple]:
    """Pairs (s, s') with s < s' and nothing strictly between."""
    strict = [(a, b) for a in S.elements for b in S.elements if a != b and S.leq(a, b)]
    return [(a, b) for a, b in strict
            if not any(S.leq(a, t) and S.leq(t, b) and t not in (a, b) for t in S.elements)]


def _identity(x):
    return x


class _Transports:
    """Transport maps f_{s,s'} for every s ≤ s', composed from covering steps on demand."""

    def __init__(self, base: FiniteSemilattice, given: Mapping[tuple, Callable]):
        self.base = base
        self.given = dict(given)
        self._cache: dict[tuple, Callable] = {}

    def __call__(self, s, s2) -> Callable:
        if (s, s2) in self._cache:
            return self._cache[(s, s2)]
        if not self.base.leq(s, s2):
            raise DomainError(f"no transport from {s2!r} down to {s!r}: not {s!r} ≤ {s2!r}")
        if s == s2:
            f = self.given.get((s, s), _identity)
        elif (s, s2) in self.given:
            f = self.given[(s, s2)]
        else:
            # step down from s2 along a cover t ⋖ s2 with s ≤ t
            t = next(t for t, top in covering_pairs(self.base) if top == s2 and self.base.leq(s, t))
            upper, lower = self.given[(t, s2)], self(s, t)

            def f(x, upper=upper, lower=lower):
                return lower(upper(x))
        self._cache[(s, s2)] = f
        return f


def _validate_fibered(base, fibers, transports: _Transports, samples_per_fiber: int, seed: int) -> None:
    rng = random.Random(seed)
    samples = {s: [fibers[s].draw(rng) for _ in range(samples_per_fiber)] for s in base.elements}
    ordered = [(a, b) for a in base.elements for b in base.elements if base.leq(a, b)]

    for s, s2 in ordered:
        f = transports(s, s2)
        for x in samples[s2]:
            y = f(x)
            if not fibers[s].contains(y):
                raise ValidationError(f"transport {s2!r} → {s!r} sends {x!r} outside the fiber",
                                      invariant="transport-codomain", witness=(s, s2, x))
            if s == s2 and not fibers[s].equal(y, x):
                raise ValidationError(f"transport {s!r} → {s!r} is not the identity",
                                      invariant="transport-identity", witness=(s, x))
        if s != s2:
            report = check_convex_map(f, fibers[s2], fibers[s], samples[s2], VALIDATION_LAMBDAS)
            if not report.passed:
                raise ValidationError(f"transport {s2!r} → {s!r} is not convex",
                                      invariant="transport-convexity", witness=(s, s2))

    for s, s2, s3 in itertools.product(base.elements, repeat=3):
        if not (base.leq(s, s2) and base.leq(s2, s3)):
            continue
        direct, lower, upper = transports(s, s3), transports(s, s2), transports(s2, s3)
        for x in samples[s3]:
            if not fibers[s].equal(direct(x), lower(upper(x))):
                raise ValidationError(f"transports disagree along {s!r} ≤ {s2!r} ≤ {s3!r}",
                                      invariant="functoriality", witness=(s, s2, s3))


def fibered_space_make(base: FiniteSemilattice, fibers: Mapping[Any, SpaceHandle],
                       transports: Mapping[tuple, Callable], *, name: str | None = None,
                       samples_per_fiber: int = 8, seed: int = 0) -> SpaceHandle:
    """Build S ⋉_f C from a base semilattice, its fibers and covering transports.

    ``transports[(s, s')]`` maps C_{s'} to C_s and is required for every
    covering pair s ⋖ s'. Longer transports may be given and must agree with
    the composites. Identity, codomain, convexity and functoriality are
    checked on sampled fiber elements; a failure raises ValidationError.
    """
    missing_fibers = [s for s in base.elements if s not in fibers]
    if missing_fibers:
        raise ValidationError(f"no fiber over {missing_fibers!r}", invariant="fibers-total",
                              witness=tuple(missing_fibers))
    for pair in covering_pairs(base):
        if pair not in transports:
            raise ValidationError(f"missing transport for covering pair {pair!r}",
                                  invariant="transport-missing", witness=pair)
    f = _Transports(base, transports)
    _validate_fibered(base, fibers, f, samples_per_fiber, seed)
    lookup = token_lookup(base.elements)

    def contains(p):
        return (isinstance(p, FiberedElement) and p.base in base
                and fibers[p.base].contains(p.value))

    def combine(lam, p, q):
        if lam == 1:
            return p
        if lam == 0:
            return q
        s = base.meet(p.base, q.base)
        fiber = fibers[s]
        return FiberedElement(s, fiber.cc(lam, f(s, p.base)(p.value), f(s, q.base)(q.value)))

    def equal(p, q):
        return p.base == q.base and fibers[p.base].equal(p.value, q.value)

    def sample(rng):
        s = rng.choice(base.elements)
        return FiberedElement(s, fibers[s].draw(rng))

    def encode(p):
        return [encode_token(p.base), fibers[p.base].encode(p.value)]

    def decode(obj):
        try:
            s = lookup[repr(obj[0])]
        except KeyError as e:
            raise DomainError(f"{obj[0]!r} is not a base element") from e
        return FiberedElement(s, fibers[s].decode(obj[1]))

    _log.debug("built fibered space over %s", base.name)
    return SpaceHandle(
        space_id=name or f"fibered({base.name})",
        combine=combine,
        contains=contains,
        equal=equal,
        sample=sample,
        encode=encode,
        decode=decode,
    )


def base_projection(p: FiberedElement):
    """(s, x) ↦ s, a convex map onto the base semilattice."""
    return p.base


# ========================================================
# ADJOINING A POINT AT INFINITY
# ========================================================
@dataclass(frozen=True)
class Infinity:
    def __repr__(self):
        return "∞"


INFINITY = Infinity()


def adjoin_infinity(space: SpaceHandle) -> SpaceHandle:
    """C ∪ {∞}: ∞ absorbs every combination with λ ∉ {0, 1}."""

    def combine(lam, x, y):
        if lam == 1:
            return x
        if lam == 0:
            return y
        if x == INFINITY or y == INFINITY:
            return INFINITY
        return space.combine(lam, x, y)

    def equal(x, y):
        if x == INFINITY or y == INFINITY:
            return x == y
        return space.equal(x, y)

    def sample(rng):
        return INFINITY if rng.random() < 0.25 else space.draw(rng)

    return SpaceHandle(
        space_id=f"adjoin-infinity({space.space_id})",
        combine=combine,
        contains=lambda x: x == INFINITY or space.contains(x),
        equal=equal,
        sample=sample,
        encode=lambda x: "∞" if x == INFINITY else space.encode(x),
        decode=lambda obj: INFINITY if obj == "∞" else space.decode(obj),
    )


def adjoin_infinity_fibered(space: SpaceHandle) -> SpaceHandle:
    """The same space as FC ⋉ C with C_f = space, C_i = {∞}."""
    return fibered_space_make(
        face_classifier_semilattice(),
        {"f": space, "i": point_space(INFINITY)},
        {("i", "f"): lambda x: INFINITY},
        name=f"adjoin-infinity-fibered({space.space_id})",
    )


def infinity_embedding(x) -> FiberedElement:
    """Element of adjoin_infinity(C) ↦ element of adjoin_infinity_fibered(C)."""
    return FiberedElement("i", INFINITY) if x == INFINITY else FiberedElement("f", x)


def face_classifier() -> SpaceHandle:
    """{i, f} with λi + λ̄f = i for λ ≠ 0."""
    return semilattice_space(face_classifier_semilattice())


# ========================================================
# LOTTERY
# ========================================================
PRIZES = ("a", "b")


@dataclass(frozen=True)
class LotteryElement:
    """Either a stake p ∈ [0,1) or a prize distribution over {a, b}."""

    stake: Fraction | None = None
    prize: Dist | None = None

    def __post_init__(self):
        if (self.stake is None) == (self.prize is None):
            raise ValidationError("a lottery element is either a stake or a prize",
                                  invariant="lottery-branch", witness=(self.stake, self.prize))
        if self.stake is not None:
            object.__setattr__(self, "stake", parse_rational(self.stake))
            if not 0 <= self.stake < 1:
                raise ValidationError(f"stake {self.stake} outside [0, 1)",
                                      invariant="stake-range", witness=self.stake)
        elif not (isinstance(self.prize, Dist) and set(self.prize.points) <= set(PRIZES)):
            raise ValidationError(f"prize {self.prize!r} is not a distribution over a, b",
                                  invariant="prize-carrier", witness=self.prize)

    def __repr__(self):
        if self.stake is not None:
            return f"stake({format_rational(self.stake)})"
        return f"prize({self.prize!r})"


def stake(p) -> LotteryElement:
    return LotteryElement(stake=p)


def prize(d: Dist) -> LotteryElement:
    return LotteryElement(prize=d)


def _lottery_combine(lam, x: LotteryElement, y: LotteryElement) -> LotteryElement:
    if lam == 1:
        return x
    if lam == 0:
        return y
    if x.stake is not None and y.stake is not None:
        return stake(lam * x.stake + (1 - lam) * y.stake)
    if x.prize is not None and y.prize is not None:
        return prize(mixture(lam, x.prize, y.prize))
    # a prize counts as stake 1 next to a stake
    p = x.stake if x.stake is not None else Fraction(1)
    q = y.stake if y.stake is not None else Fraction(1)
    return stake(lam * p + (1 - lam) * q)


def _random_lottery(rng: random.Random) -> LotteryElement:
    if rng.random() < 0.5:
        den = rng.randint(1, 12)
        return stake(Fraction(rng.randrange(den), den))
    return prize(random_dist(rng, PRIZES))


def _encode_lottery(x: LotteryElement):
    if x.stake is not None:
        return {"stake": format_rational(x.stake)}
    return {"prize": [[p, format_rational(w)] for p, w in x.prize.support]}


def _decode_lottery(obj) -> LotteryElement:
    if "stake" in obj:
        return stake(parse_rational(obj["stake"]))
    return prize(dist_make((p, w) for p, w in obj["prize"]))


def lottery_space() -> SpaceHandle:
    """[0,1) ∪ Δ_{a,b}: next to a stake, any prize behaves like stake 1."""
    return SpaceHandle(
        space_id="lottery",
        combine=_lottery_combine,
        contains=lambda x: isinstance(x, LotteryElement),
        sample=_random_lottery,
        encode=_encode_lottery,
        decode=_decode_lottery,
    )


def lottery_quotient(d: Dist) -> LotteryElement:
    """Δ_{p0,a,b} → lottery: weight w on p0 gives stake(1 - w), no weight gives the prize."""
    if not set(d.points) <= {"p0", *PRIZES}:
        raise DomainError(f"{d!r} is not a distribution over p0, a, b")
    w0 = d.weight("p0")
    if w0 > 0:
        return stake(1 - w0)
    return prize(d)


# ========================================================
# DECOMPOSITION SEARCH
# ========================================================
@dataclass(frozen=True)
class Decomposition:
    """A two-fiber candidate: which block sits on top, and the transport's grid images."""

    top: str
    images: tuple


def _stake_fiber() -> SpaceHandle:
    return SpaceHandle(
        space_id="stakes",
        combine=lambda lam, x, y: lam * x + (1 - lam) * y,
        contains=lambda x: isinstance(x, Fraction) and 0 <= x < 1,
        sample=lambda rng: Fraction(rng.randrange(12), 12),
        encode=format_rational,
        decode=parse_rational,
    )


def _prize_dist(weight_a: Fraction) -> Dist:
    return dist_make([("a", weight_a), ("b", 1 - weight_a)])


def search_fibered_decompositions(grid: Sequence | None = None,
                                  lambdas: Sequence | None = None) -> list[Decomposition]:
    """Search two-element bases with affine transports on *grid* for a fibered
    space whose cc agrees with the lottery space on grid points.

    Only the two-element chain is searched, with the stakes as one fiber and
    the prizes as the other; it is the only two-element semilattice. Bases
    that split either block over several fibers are not covered. Both
    orientations are tried: prizes over stakes (transport Δ_{a,b} → [0,1))
    and stakes over prizes (transport [0,1) → Δ_{a,b}). Returns the matching
    candidates.
    """
    grid = [parse_rational(g) for g in (grid or [Fraction(k, 4) for k in range(4)])]
    lambdas = [coeff(v) for v in (lambdas or ("1/3", "1/2", "2/3"))]
    lottery = lottery_space()
    chain = semilattice_make(("lo", "hi"), {("lo", "lo"): "lo", ("lo", "hi"): "lo",
                                            ("hi", "lo"): "lo", ("hi", "hi"): "hi"}, name="chain2")
    stakes, prizes = _stake_fiber(), free_space(PRIZES)
    points = ([stake(g) for g in grid if g < 1]
              + [prize(_prize_dist(g)) for g in grid if 0 <= g <= 1])

    candidates = []
    for u, v in itertools.product([g for g in grid if 0 <= g < 1], repeat=2):
        candidates.append((Decomposition("prizes", (u, v)),
                           lambda d, u=u, v=v: d.weight("a") * u + d.weight("b") * v))
    unit_grid = sorted({g for g in grid if 0 <= g <= 1} | {Fraction(1)})
    for u, v in itertools.product(unit_grid, repeat=2):
        candidates.append((Decomposition("stakes", (u, v)),
                           lambda p, u=u, v=v: _prize_dist((1 - p) * u + p * v)))

    found = []
    for decomposition, transport in candidates:
        top_is_prize = decomposition.top == "prizes"
        fibers = {"hi": prizes if top_is_prize else stakes, "lo": stakes if top_is_prize else prizes}
        try:
            space = fibered_space_make(chain, fibers, {("lo", "hi"): transport},
                                       name=f"candidate({decomposition})")
        except ValidationError:
            continue

        def embed(x, top_is_prize=top_is_prize):
            is_prize = x.prize is not None
            s = "hi" if is_prize == top_is_prize else "lo"
            return FiberedElement(s, x.prize if is_prize else x.stake)

        agrees = all(space.equal(space.cc(lam, embed(x), embed(y)), embed(lottery.cc(lam, x, y)))
                     for x in points for y in points for lam in lambdas)
        if agrees:
            found.append(decomposition)
    _log.info("decomposition search: %d candidates, %d matches", len(candidates), len(found))
    return found
