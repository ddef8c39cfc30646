#!/usr/bin/env python
"""
Lawvere: exact column-stochastic matrices and the model functor L.

Orientation: an n×m matrix A (rows index inputs, columns index outputs) is
a theory morphism [m] → [n]; L(A) sends n-tuples to m-tuples,

    L(A)(x₁,…,xₙ)_k = m(Σᵢ Aᵢₖ x̲ᵢ)

so composition is contravariant: L(B·A) = L(A) ∘ L(B).
"""
# ========================================================
# IMPORTS
# ========================================================
import logging
import random
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from fractions import Fraction

# --------------------------------------------------------
# Local Imports
# --------------------------------------------------------
from config import MAX_DENOMINATOR
from cst.giry import Dist, barycenter, random_dist
from cst.kernel import (
    DomainError,
    LawReport,
    SpaceHandle,
    ValidationError,
    cc_nary,
    coeff,
    random_coeff,
)
from cst.utils import format_rational, parse_rational

# ========================================================
# GLOBALS
# ========================================================
_log = logging.getLogger("CST.lawvere")


# ========================================================
# CLASSES
# ========================================================
@dataclass(frozen=True)
class StoMatrix:
    """Column-stochastic matrix with exact entries, stored row-major."""

    rows: int
    cols: int
    entries: tuple[tuple[Fraction, ...], ...]

    def column(self, k: int) -> tuple[Fraction, ...]:
        return tuple(row[k] for row in self.entries)

    def __repr__(self):
        body = "; ".join(" ".join(format_rational(v) for v in row) for row in self.entries)
        return f"StoMatrix({self.rows}x{self.cols}: {body})"


@dataclass(frozen=True)
class Generator:
    """A distinguished generator of the theory: c_λ, copy e, swap s or delete ∂."""

    kind: str
    lam: Fraction | None = None

    @property
    def matrix(self) -> StoMatrix:
        if self.kind == "c_lambda":
            lam = coeff(self.lam)
            return sto_make(2, 1, [[lam], [lam.bar]])
        if self.kind == "copy_e":
            return sto_make(1, 2, [[1, 1]])
        if self.kind == "swap_s":
            return sto_make(2, 2, [[0, 1], [1, 0]])
        if self.kind == "delete_d":
            return sto_make(1, 0, [[]])
        raise DomainError(f"unknown generator kind {self.kind!r}")


# ========================================================
# MATRICES
# ========================================================
def sto_make(rows: int, cols: int, entries: Sequence[Sequence]) -> StoMatrix:
    """Validate an exact rows×cols grid whose columns each sum to 1."""
    if rows < 0 or cols < 0:
        raise DomainError(f"negative shape {rows}x{cols}")
    grid = [list(r) for r in entries]
    if len(grid) != rows or any(len(r) != cols for r in grid):
        raise DomainError(f"entries do not form a {rows}x{cols} grid")
    parsed = []
    for i, row in enumerate(grid):
        out = []
        for k, v in enumerate(row):
            try:
                q = parse_rational(v)
            except ValueError as e:
                raise ValidationError(str(e), invariant="entry-exact", witness=(i, k, v)) from e
            if q < 0:
                raise ValidationError(f"negative entry {q} at ({i}, {k})",
                                      invariant="entry-nonnegative", witness=(i, k, q))
            out.append(q)
        parsed.append(tuple(out))
    for k in range(cols):
        total = sum((row[k] for row in parsed), Fraction(0))
        if total != 1:
            raise ValidationError(f"column {k} sums to {total}, not 1",
                                  invariant="column-sum", witness=(k, total))
    return StoMatrix(rows, cols, tuple(parsed))


def identity(n: int) -> StoMatrix:
    return StoMatrix(n, n, tuple(tuple(Fraction(int(i == k)) for k in range(n)) for i in range(n)))


def sto_compose(B: StoMatrix, A: StoMatrix) -> StoMatrix:
    """The exact product B·A; needs ``B.cols == A.rows``."""
    if B.cols != A.rows:
        raise DomainError(f"cannot compose {B.rows}x{B.cols} with {A.rows}x{A.cols}")
    entries = tuple(
        tuple(sum((B.entries[i][j] * A.entries[j][k] for j in range(B.cols)), Fraction(0))
              for k in range(A.cols))
        for i in range(B.rows))
    return StoMatrix(B.rows, A.cols, entries)


def sto_tensor(A1: StoMatrix, A2: StoMatrix) -> StoMatrix:
    """Block-diagonal sum A1 ⊕ A2, the tensor (coproduct) of theory morphisms."""
    zero = Fraction(0)
    top = tuple(row + (zero,) * A2.cols for row in A1.entries)
    bottom = tuple((zero,) * A1.cols + row for row in A2.entries)
    return StoMatrix(A1.rows + A2.rows, A1.cols + A2.cols, top + bottom)


def c_lambda(lam) -> StoMatrix:
    return Generator("c_lambda", coeff(lam)).matrix


def copy_e() -> StoMatrix:
    return Generator("copy_e").matrix


def swap_s() -> StoMatrix:
    return Generator("swap_s").matrix


def delete_d() -> StoMatrix:
    return Generator("delete_d").matrix


def finmap_matrix(f: Callable[[int], int], n: int, m: int) -> StoMatrix:
    """The n×m 0/1 matrix of a function [m] → [n]; L of it is x ↦ (x_{f(k)})ₖ."""
    entries = [[0] * m for _ in range(n)]
    for k in range(m):
        image = f(k)
        if not 0 <= image < n:
            raise DomainError(f"f({k}) = {image} outside [0, {n})")
        entries[image][k] = 1
    return sto_make(n, m, entries)


def inclusion(n: int, offset: int, size: int) -> StoMatrix:
    """Matrix of the coproduct inclusion [size] → [n] at *offset*."""
    return finmap_matrix(lambda k: offset + k, n, size)


def random_sto(rng: random.Random, rows: int, cols: int, max_den: int = MAX_DENOMINATOR) -> StoMatrix:
    """Random rows×cols stochastic matrix from normalized positive integer columns."""
    if cols and not rows:
        raise DomainError("a matrix with columns needs at least one row")
    columns = []
    for _ in range(cols):
        raw = [rng.randint(1, max_den) for _ in range(rows)]
        total = sum(raw)
        columns.append([Fraction(r, total) for r in raw])
    entries = tuple(tuple(columns[k][i] for k in range(cols)) for i in range(rows))
    return StoMatrix(rows, cols, entries)


# ========================================================
# THE MODEL FUNCTOR
# ========================================================
def L_apply(space: SpaceHandle, A: StoMatrix, xs: Sequence) -> tuple:
    """L(A)(xs): the k-th output is the barycenter of column k over *xs*."""
    xs = tuple(xs)
    if len(xs) != A.rows:
        raise DomainError(f"L({A.rows}x{A.cols}) applied to a {len(xs)}-tuple")
    return tuple(cc_nary(space, A.column(k), xs) for k in range(A.cols))


def _tuple_equal(space: SpaceHandle):
    def equal(a, b):
        return len(a) == len(b) and all(space.equal(x, y) for x, y in zip(a, b, strict=True))
    return equal


def _draw(space: SpaceHandle, rng: random.Random, samples: Sequence | None):
    return rng.choice(samples) if samples else space.draw(rng)


def check_functor_case(space: SpaceHandle, A: StoMatrix, B: StoMatrix, xs: Sequence, ys: Sequence,
                       split: int, images: Sequence[int], report: LawReport | None = None) -> LawReport:
    """One functoriality case for A: [m] → [n], B: [n] → [q] and a q-tuple *xs*.

    Checks L(1) = id, L(B·A) = L(A)∘L(B), every single projection, both
    block projections of [q] = [split] + [q - split], the tensor law on the
    (q + n)-tuple xs + ys, and the finite map k ↦ images[k].
    """
    report = report if report is not None else LawReport()
    xs, ys, images = tuple(xs), tuple(ys), tuple(images)
    q = B.rows
    if B.cols != A.rows or len(xs) != q or len(ys) != A.rows:
        raise DomainError(f"shapes {B.rows}x{B.cols}, {A.rows}x{A.cols} do not fit "
                          f"a {len(xs)}-tuple and a {len(ys)}-tuple")
    if not 0 <= split <= q:
        raise DomainError(f"split {split} outside [0, {q}]")
    teq = _tuple_equal(space)
    inputs = {"A": A, "B": B, "xs": xs, "ys": ys, "split": split, "f": images}

    report.expect("lawvere-identity", teq, L_apply(space, identity(q), xs), xs, inputs)
    report.expect("lawvere-functoriality", teq,
                  L_apply(space, sto_compose(B, A), xs),
                  L_apply(space, A, L_apply(space, B, xs)), inputs)

    for i in range(q):
        report.expect("product-projection", teq,
                      L_apply(space, inclusion(q, i, 1), xs), (xs[i],), {**inputs, "i": i})
    report.expect("product-inclusion", teq,
                  L_apply(space, inclusion(q, 0, split), xs), xs[:split], inputs)
    report.expect("product-inclusion", teq,
                  L_apply(space, inclusion(q, split, q - split), xs), xs[split:], inputs)

    report.expect("product-tensor", teq,
                  L_apply(space, sto_tensor(B, A), xs + ys),
                  L_apply(space, B, xs) + L_apply(space, A, ys), inputs)

    report.expect("lawvere-finmap", teq,
                  L_apply(space, finmap_matrix(images.__getitem__, q, len(images)), xs),
                  tuple(xs[j] for j in images), inputs)
    return report


def check_generator_case(space: SpaceHandle, lam, x, y, report: LawReport | None = None) -> LawReport:
    """L on the generators: copy, delete, swap and c_λ."""
    report = report if report is not None else LawReport()
    lam = coeff(lam)
    teq = _tuple_equal(space)
    report.expect("generator-copy", teq, L_apply(space, copy_e(), (x,)), (x, x), {"x": x})
    report.expect("generator-delete", teq, L_apply(space, delete_d(), (x,)), (), {"x": x})
    report.expect("generator-swap", teq, L_apply(space, swap_s(), (x, y)), (y, x), {"x": x, "y": y})
    report.expect("generator-c-lambda", teq, L_apply(space, c_lambda(lam), (x, y)),
                  (space.cc(lam, x, y),), {"lambda": lam, "x": x, "y": y})
    return report


def check_lawvere_functoriality(space: SpaceHandle, dims: int = 4, cases: int = 200, seed: int = 0,
                                samples: Sequence | None = None) -> LawReport:
    """Randomized exact check that L is a product-preserving functor.

    Each case runs :func:`check_functor_case` and :func:`check_generator_case`
    on random matrices of size at most *dims* and random elements.
    """
    if not 1 <= dims <= 4:
        raise DomainError(f"dims must be between 1 and 4, got {dims}")
    rng = random.Random(seed)
    report = LawReport()
    for _ in range(cases):
        q, n, m = (rng.randint(1, dims) for _ in range(3))
        A, B = random_sto(rng, n, m), random_sto(rng, q, n)
        xs = tuple(_draw(space, rng, samples) for _ in range(q))
        split = rng.randint(0, q)
        ys = tuple(_draw(space, rng, samples) for _ in range(n))
        images = [rng.randrange(q) for _ in range(m)]
        check_functor_case(space, A, B, xs, ys, split, images, report)
        check_generator_case(space, random_coeff(rng), xs[0], _draw(space, rng, samples), report)
    _log.debug("functoriality on %s: %d checks, %d failures",
               space.space_id, report.checked_cases, len(report.failures))
    return report


def check_model_morphism(f: Callable, dom: SpaceHandle, cod: SpaceHandle, cases: int = 100,
                         seed: int = 0, dims: int = 3, samples: Sequence | None = None) -> LawReport:
    """Check L'(A)∘fⁿ = fᵐ∘L(A) on random stochastic A."""
    rng = random.Random(seed)
    report = LawReport()
    teq = _tuple_equal(cod)
    for _ in range(cases):
        n, m = rng.randint(1, dims), rng.randint(1, dims)
        A = random_sto(rng, n, m)
        xs = tuple(_draw(dom, rng, samples) for _ in range(n))
        report.expect("model-morphism", teq,
                      L_apply(cod, A, tuple(f(x) for x in xs)),
                      tuple(f(y) for y in L_apply(dom, A, xs)),
                      {"A": A, "xs": xs})
    return report




def check_roundtrip_cc(space: SpaceHandle, lam, x, y, report: LawReport | None = None) -> LawReport:
    """cc → L → cc: L(c_λ)(x, y) is λx + λ̄y."""
    report = report if report is not None else LawReport()
    lam = coeff(lam)
    report.expect("roundtrip-cc", space.equal,
                  L_apply(space, c_lambda(lam), (x, y))[0], space.cc(lam, x, y),
                  {"lambda": lam, "x": x, "y": y})
    return report


def check_roundtrip_structure(space: SpaceHandle, d: Dist, order: Sequence,
                              report: LawReport | None = None) -> LawReport:
    """m → L → m: the one-column matrix of *d*, rows in *order*, gives m(d)."""
    report = report if report is not None else LawReport()
    order = tuple(order)
    if len(order) != len(d) or any(d.weight(p) == 0 for p in order):
        raise DomainError(f"{order!r} is not an ordering of the support of {d!r}")
    column = sto_make(len(order), 1, [[d.weight(p)] for p in order])
    report.expect("roundtrip-structure", space.equal,
                  L_apply(space, column, order)[0], barycenter(space, d), {"d": d, "xs": order})
    return report


def check_correspondence_roundtrip(space: SpaceHandle, samples: Sequence, lambdas: Sequence | None = None,
                                   seed: int = 0, dist_cases: int | None = None) -> LawReport:
    """cc → L → cc through c_λ, and m → L → m on distributions over *samples*.

    The second path feeds the support to L in a shuffled order, so an
    operation whose n-ary evaluation depends on point order is caught.
    """
    samples = list(samples)
    if not samples:
        raise DomainError("roundtrip check needs at least one sample")
    rng = random.Random(seed)
    report = LawReport()
    lambdas = [coeff(v) for v in (lambdas or ("0", "1/3", "1/2", "2/3", "1"))]
    for x in samples:
        for y in samples:
            for lam in lambdas:
                check_roundtrip_cc(space, lam, x, y, report)
    for _ in range(dist_cases if dist_cases is not None else 4 * len(samples)):
        d = random_dist(rng, samples)
        order = list(d.points)
        rng.shuffle(order)
        check_roundtrip_structure(space, d, order, report)
    return report
