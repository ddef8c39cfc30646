#!/usr/bin/env python
"""
Kernel: exact coefficients, the convex-space handle, n-ary reduction and
the law-verification engine.

A convex space is a set with binary operations cc_λ (λ ∈ [0,1]) obeying

    unit law                   cc_0(x, y) = y
    idempotency                cc_λ(x, x) = x
    parametric commutativity   cc_λ(x, y) = cc_{1-λ}(y, x)
    deformed associativity     cc_λ(cc_μ(x, y), z) = cc_{λμ}(x, cc_{μ̃}(y, z))
                               μ̃ = λ(1-μ) / (1-λμ)   when λμ ≠ 1

Every check in this module is exact. There is no tolerance anywhere.
"""
# ========================================================
# IMPORTS
# ========================================================
import itertools
import logging
import operator
import random
from collections import Counter
from collections.abc import Callable, Iterator, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

# --------------------------------------------------------
# Local Imports
# --------------------------------------------------------
from config import MAX_DENOMINATOR
from cst.utils import encode_token, parse_rational

# ========================================================
# GLOBALS
# ========================================================
_log = logging.getLogger("CST.kernel")

# μ̃ is arbitrary when λ = μ = 1; these are the choices the checker tries.
FREE_MU_TILDES = (Fraction(0), Fraction(1, 2), Fraction(1))

LAW_NAMES = (
    "unit-law",
    "unit-law-one",
    "idempotency",
    "parametric-commutativity",
    "deformed-associativity",
    "nary-binary",
    "nary-bracketing",
)


# ========================================================
# ERRORS
# ========================================================
class ConvexSpaceError(Exception):
    """Base class for every error raised by the toolkit."""


class DomainError(ConvexSpaceError, ValueError):
    """An argument lies outside the domain of an operation."""


class ValidationError(ConvexSpaceError, ValueError):
    """A value violates one of its construction invariants.

    ``invariant`` names the violated rule, ``witness`` holds the offending
    inputs (e.g. the triple breaking associativity of a meet table).
    """

    def __init__(self, message: str, *, invariant: str | None = None, witness=None):
        super().__init__(message)
        self.invariant = invariant
        self.witness = witness


class UnsupportedSizeError(ConvexSpaceError, ValueError):
    """The input exceeds the size bound of a brute-force operation."""


# ========================================================
# COEFFICIENTS
# ========================================================
class Coeff(Fraction):
    """Exact rational coefficient in [0, 1]."""

    __slots__ = ()

    def __new__(cls, numerator=0, denominator=None):
        self = super().__new__(cls, numerator, denominator)
        if not 0 <= self <= 1:
            raise ValidationError(
                f"coefficient {self} outside [0, 1]",
                invariant="coeff-range", witness=Fraction(self))
        return self

    @property
    def bar(self) -> "Coeff":
        """The complement 1 - λ."""
        return Coeff(1 - self)

    def __repr__(self):
        return f"Coeff({self.numerator}, {self.denominator})"


def coeff(value) -> Coeff:
    """Coerce an int, Fraction or rational literal into a :class:`Coeff`."""
    if isinstance(value, Coeff):
        return value
    if isinstance(value, float):
        raise ValidationError(
            f"float coefficient {value!r}; pass an exact rational such as '1/3'",
            invariant="coeff-exact", witness=value)
    try:
        return Coeff(parse_rational(value))
    except ValueError as e:
        if isinstance(e, ValidationError):
            raise
        raise ValidationError(str(e), invariant="coeff-exact", witness=value) from e


def bar(alpha) -> Coeff:
    return coeff(alpha).bar


# ========================================================
# SPACES
# ========================================================
@dataclass(frozen=True, eq=False)
class SpaceHandle:
    """A registered convex space.

    ``combine`` is the raw operation (λ, x, y) ↦ λx + λ̄y. It is only called
    with a validated :class:`Coeff` and members of the space. ``sample``
    draws a random member, ``encode``/``decode`` convert members to and
    from JSON values. ``elements`` is the whole carrier of a finite space,
    None otherwise.
    """

    space_id: str
    combine: Callable[[Coeff, Any, Any], Any]
    contains: Callable[[Any], bool]
    equal: Callable[[Any, Any], bool] = operator.eq
    sample: Callable[[random.Random], Any] | None = None
    encode: Callable[[Any], Any] = encode_token
    decode: Callable[[Any], Any] | None = None
    combinatorial: bool = False
    elements: tuple | None = None

    def require(self, x):
        if not self.contains(x):
            raise DomainError(f"{x!r} is not an element of {self.space_id}")
        return x

    def cc(self, lam, x, y):
        lam = coeff(lam)
        self.require(x)
        self.require(y)
        return self.combine(lam, x, y)

    def draw(self, rng: random.Random):
        if self.sample is None:
            raise DomainError(f"{self.space_id} has no sampler")
        return self.sample(rng)

    def __repr__(self):
        return f"SpaceHandle({self.space_id!r})"


def cc(space: SpaceHandle, lam, x, y):
    """λx + λ̄y in *space*."""
    return space.cc(lam, x, y)


def cc_nary(space: SpaceHandle, weights: Sequence, xs: Sequence):
    """Evaluate Σ wᵢxᵢ by iterated binary combinations.

    Zero weights are dropped first. The last weight is peeled off,
    Σ wᵢxᵢ = (1-wₙ)·(Σ_{i<n} wᵢ/(1-wₙ) xᵢ) + wₙxₙ, recursively; the loop
    below runs that recursion bottom-up on the partial sums.
    """
    weights, xs = list(weights), list(xs)
    if not weights or len(weights) != len(xs):
        raise DomainError("cc_nary needs nonempty weights and points of equal length")
    ws = [coeff(w) for w in weights]
    if sum(ws) != 1:
        raise ValidationError(
            f"weights sum to {sum(ws)}, not 1",
            invariant="weights-sum", witness=tuple(ws))
    terms = [(w, x) for w, x in zip(ws, xs, strict=True) if w != 0]
    total, acc = terms[0]
    space.require(acc)
    for w, x in terms[1:]:
        grown = total + w
        acc = space.cc(total / grown, acc, x)
        total = grown
    return acc


def bracketings(leaves: Sequence[int]) -> Iterator:
    """Yield every full binary tree over *leaves*, children unordered.

    n leaves give (2n-3)!! trees. A tree is a leaf index or a pair of trees.
    """
    if len(leaves) == 1:
        yield leaves[0]
        return
    first, rest = leaves[0], tuple(leaves[1:])
    for r in range(len(rest)):
        for chosen in itertools.combinations(rest, r):
            right = tuple(i for i in rest if i not in chosen)
            for left_tree in bracketings((first, *chosen)):
                for right_tree in bracketings(right):
                    yield (left_tree, right_tree)


def evaluate_bracketing(space: SpaceHandle, tree, terms: Sequence[tuple]) -> tuple:
    """Evaluate *tree* over positive-weight ``(w, x)`` terms; returns ``(w, x)``."""
    if isinstance(tree, int):
        return terms[tree]
    wl, xl = evaluate_bracketing(space, tree[0], terms)
    wr, xr = evaluate_bracketing(space, tree[1], terms)
    total = wl + wr
    return total, space.cc(wl / total, xl, xr)


def point_space(token="*") -> SpaceHandle:
    """The one-element convex space ∗."""
    return SpaceHandle(
        space_id=f"point({token})",
        combine=lambda lam, x, y: token,
        contains=lambda x: x == token,
        sample=lambda rng: token,
        encode=lambda x: "*",
        decode=lambda obj: token,
        combinatorial=True,
        elements=(token,),
    )


def restrict(space: SpaceHandle, predicate: Callable[[Any], bool], space_id: str,
             sample: Callable[[random.Random], Any] | None = None) -> SpaceHandle:
    """The convex subset of *space* cut out by *predicate*.

    The caller guarantees the subset is closed under cc.
    """
    return SpaceHandle(
        space_id=space_id,
        combine=space.combine,
        contains=lambda x: space.contains(x) and predicate(x),
        equal=space.equal,
        sample=sample,
        encode=space.encode,
        decode=space.decode,
        combinatorial=space.combinatorial,
    )


def product_space(*spaces: SpaceHandle) -> SpaceHandle:
    """Componentwise convex combinations on tuples (the categorical product)."""
    k = len(spaces)

    def contains(x):
        return (isinstance(x, tuple) and len(x) == k
                and all(s.contains(c) for s, c in zip(spaces, x, strict=True)))

    def sample(rng):
        return tuple(s.draw(rng) for s in spaces)

    def decode(obj):
        return tuple(s.decode(o) for s, o in zip(spaces, obj, strict=True))

    return SpaceHandle(
        space_id="product(" + ",".join(s.space_id for s in spaces) + ")",
        combine=lambda lam, x, y: tuple(
            s.combine(lam, a, b) for s, a, b in zip(spaces, x, y, strict=True)),
        contains=contains,
        equal=lambda x, y: all(s.equal(a, b) for s, a, b in zip(spaces, x, y, strict=True)),
        sample=sample if all(s.sample for s in spaces) else None,
        encode=lambda x: [s.encode(c) for s, c in zip(spaces, x, strict=True)],
        decode=decode if all(s.decode for s in spaces) else None,
        combinatorial=all(s.combinatorial for s in spaces),
    )


# ========================================================
# REPORTS
# ========================================================
@dataclass(frozen=True)
class LawFailure:
    law: str
    inputs: tuple[tuple[str, Any], ...]
    lhs: Any
    rhs: Any

    def input(self, name: str):
        return dict(self.inputs)[name]


@dataclass
class LawReport:
    """Outcome of a law check: passes iff ``failures`` is empty."""

    checked_cases: int = 0
    failures: list[LawFailure] = field(default_factory=list)
    counts: Counter = field(default_factory=Counter)

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def failed_laws(self) -> list[str]:
        return sorted({f.law for f in self.failures})

    def expect(self, law: str, equal: Callable[[Any, Any], bool], lhs, rhs,
               inputs: dict) -> bool:
        self.checked_cases += 1
        self.counts[law] += 1
        ok = bool(equal(lhs, rhs))
        if not ok:
            self.failures.append(LawFailure(law, tuple(inputs.items()), lhs, rhs))
            _log.debug("law %s failed: %r != %r on %r", law, lhs, rhs, inputs)
        return ok

    def fail(self, law: str, inputs: dict, lhs=None, rhs=None) -> None:
        self.checked_cases += 1
        self.counts[law] += 1
        self.failures.append(LawFailure(law, tuple(inputs.items()), lhs, rhs))

    def merge(self, other: "LawReport") -> "LawReport":
        self.checked_cases += other.checked_cases
        self.failures.extend(other.failures)
        self.counts.update(other.counts)
        return self


# ========================================================
# LAW CHECKS
# ========================================================
def check_pair_laws(space: SpaceHandle, lam, x, y, report: LawReport | None = None) -> LawReport:
    """Unit law (both endpoints), idempotency and parametric commutativity."""
    report = report if report is not None else LawReport()
    lam = coeff(lam)
    eq = space.equal
    report.expect("unit-law", eq, space.cc(0, x, y), y, {"x": x, "y": y})
    report.expect("unit-law-one", eq, space.cc(1, x, y), x, {"x": x, "y": y})
    report.expect("idempotency", eq, space.cc(lam, x, x), x, {"lambda": lam, "x": x})
    report.expect("parametric-commutativity", eq,
                  space.cc(lam, x, y), space.cc(lam.bar, y, x),
                  {"lambda": lam, "x": x, "y": y})
    return report


def check_associativity(space: SpaceHandle, lam, mu, x, y, z,
                        report: LawReport | None = None) -> LawReport:
    """Deformed parametric associativity for one (λ, μ, x, y, z)."""
    report = report if report is not None else LawReport()
    lam, mu = coeff(lam), coeff(mu)
    eq = space.equal
    lhs = space.cc(lam, space.cc(mu, x, y), z)
    lam_t = lam * mu
    if lam_t != 1:
        mu_t = lam * (1 - mu) / (1 - lam_t)
        rhs = space.cc(lam_t, x, space.cc(mu_t, y, z))
        report.expect("deformed-associativity", eq, lhs, rhs,
                      {"lambda": lam, "mu": mu, "mu_tilde": mu_t, "x": x, "y": y, "z": z})
        return report
    for mu_t in FREE_MU_TILDES:
        rhs = space.cc(1, x, space.cc(mu_t, y, z))
        inputs = {"lambda": lam, "mu": mu, "mu_tilde": mu_t, "x": x, "y": y, "z": z}
        report.expect("deformed-associativity", eq, rhs, x, inputs)
        report.expect("deformed-associativity", eq, lhs, rhs, inputs)
    return report


def check_nary(space: SpaceHandle, weights: Sequence, xs: Sequence,
               report: LawReport | None = None) -> LawReport:
    """cc_nary against cc (n = 2) and against every bracketing of the terms."""
    report = report if report is not None else LawReport()
    ws = [coeff(w) for w in weights]
    xs = list(xs)
    reference = cc_nary(space, ws, xs)
    inputs = {"weights": tuple(ws), "xs": tuple(xs)}
    if len(ws) == 2:
        report.expect("nary-binary", space.equal, reference, space.cc(ws[0], xs[0], xs[1]), inputs)
    terms = [(w, x) for w, x in zip(ws, xs, strict=True) if w != 0]
    for tree in bracketings(tuple(range(len(terms)))):
        _, value = evaluate_bracketing(space, tree, terms)
        report.expect("nary-bracketing", space.equal, value, reference, {**inputs, "tree": tree})
    return report


def check_convex_space_laws(space: SpaceHandle, samples: Sequence, lambdas: Sequence, *,
                            rng: random.Random | None = None,
                            nary_rounds: int | None = None, nary_max: int = 5) -> LawReport:
    """Check all four laws on every sampled pair/triple and coefficient pair.

    Also checks cc(1, x, y) = x and bracketing independence of cc_nary for
    2 ≤ n ≤ *nary_max* on random weights over the samples.
    """
    samples = list(samples)
    if not samples:
        raise DomainError("law check needs at least one sample")
    lambdas = [coeff(v) for v in lambdas]
    report = LawReport()
    for x, y in itertools.product(samples, repeat=2):
        for lam in lambdas:
            check_pair_laws(space, lam, x, y, report)
    for x, y, z in itertools.product(samples, repeat=3):
        for lam, mu in itertools.product(lambdas, repeat=2):
            check_associativity(space, lam, mu, x, y, z, report)
    rng = rng if rng is not None else random.Random(0)
    rounds = nary_rounds if nary_rounds is not None else 2 * len(samples)
    for n in range(2, nary_max + 1):
        for _ in range(rounds):
            xs = [rng.choice(samples) for _ in range(n)]
            check_nary(space, random_weights(rng, n), xs, report)
    _log.debug("laws on %s: %d checks, %d failures",
               space.space_id, report.checked_cases, len(report.failures))
    return report


def check_convex_map(f: Callable, dom: SpaceHandle, cod: SpaceHandle,
                     samples: Sequence, lambdas: Sequence, *, law: str = "convex-map",
                     extra: dict | None = None) -> LawReport:
    """Check f(λx + λ̄y) = λf(x) + λ̄f(y) on all sampled pairs and coefficients."""
    report = LawReport()
    lambdas = [coeff(v) for v in lambdas]
    for x, y in itertools.product(list(samples), repeat=2):
        for lam in lambdas:
            inputs = {**(extra or {}), "lambda": lam, "x": x, "y": y}
            try:
                lhs = f(dom.cc(lam, x, y))
                rhs = cod.cc(lam, f(x), f(y))
            except DomainError:
                report.fail(f"{law}-codomain", inputs)
                continue
            report.expect(law, cod.equal, lhs, rhs, inputs)
    return report


# ========================================================
# RANDOM EXACT VALUES
# ========================================================
def random_coeff(rng: random.Random, max_den: int = MAX_DENOMINATOR, *,
                 endpoint_rate: float = 0.1) -> Coeff:
    """Random coefficient with denominator ≤ *max_den*; 0 or 1 at *endpoint_rate*."""
    if rng.random() < endpoint_rate:
        return Coeff(rng.choice((0, 1)))
    den = rng.randint(1, max_den)
    return Coeff(rng.randint(0, den), den)


def random_weights(rng: random.Random, n: int, max_den: int = MAX_DENOMINATOR) -> list[Coeff]:
    """Random exact weight vector of length *n* summing to 1 (zeros allowed)."""
    raw = [rng.randint(0, max_den) for _ in range(n)]
    if sum(raw) == 0:
        raw[rng.randrange(n)] = 1
    total = sum(raw)
    return [Coeff(r, total) for r in raw]


def random_rational(rng: random.Random, max_den: int = MAX_DENOMINATOR, bound: int = 5) -> Fraction:
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(-bound * den, bound * den), den)
