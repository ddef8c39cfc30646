"""Tests for cst/giry.py: distributions, Δ_X and algebra laws."""
import random
from fractions import Fraction

import pytest

from cst.giry import (
    Dist,
    barycenter,
    check_algebra_laws,
    check_giry_monad_laws,
    dist_flatten,
    dist_make,
    dist_map,
    dist_unit,
    free_space,
    mixture,
    random_dist,
    random_nested_dist,
)
from cst.kernel import DomainError, ValidationError, cc_nary, check_convex_space_laws

H = Fraction(1, 2)
Q = Fraction(1, 4)


def d(**weights) -> Dist:
    return dist_make((k, v) for k, v in weights.items())


class TestDistMake:
    def test_merges_duplicates(self):
        got = dist_make([("x", "1/2"), ("x", "1/4"), ("y", "1/4")])
        assert got == d(x="3/4", y="1/4")
        assert got.weight("x") == Fraction(3, 4)

    def test_point_mass(self):
        assert dist_make([("x", 1)]) == dist_unit("x")

    def test_drops_zero_weights(self):
        got = dist_make([("x", "1/3"), ("y", "2/3"), ("z", 0)])
        assert got.points == ("x", "y")
        assert got.weight("z") == 0

    def test_canonical_order(self):
        assert dist_make([("b", H), ("a", H)]).support == dist_make([("a", H), ("b", H)]).support

    def test_empty(self):
        with pytest.raises(DomainError):
            dist_make([])

    def test_negative_weight(self):
        with pytest.raises(ValidationError) as exc:
            dist_make([("x", "3/2"), ("y", "-1/2")])
        assert exc.value.invariant == "dist-weight"

    def test_bad_sum(self):
        with pytest.raises(ValidationError) as exc:
            dist_make([("x", "1/2"), ("y", "1/3")])
        assert exc.value.invariant == "dist-sum"

    def test_float_weight(self):
        with pytest.raises(ValidationError):
            dist_make([("x", 1.0)])


class TestMonadOperations:
    def test_map_constant_merges(self):
        assert dist_map(lambda _: "c", d(x=H, y=H)) == dist_unit("c")

    def test_map_identity(self):
        dd = d(a="1/3", b="2/3")
        assert dist_map(lambda p: p, dd) == dd

    def test_map_functorial(self, rng):
        def h(p):
            return p % 3

        def g(p):
            return p * 2
        for _ in range(20):
            dd = random_dist(rng, range(6))
            assert dist_map(lambda p: g(h(p)), dd) == dist_map(g, dist_map(h, dd))

    def test_unit_naturality(self):
        assert dist_map(str.upper, dist_unit("x")) == dist_unit("X")

    def test_flatten_expands_linearly(self):
        dd = dist_make([(d(x=H, y=H), H), (dist_unit("y"), H)])
        assert dist_flatten(dd) == d(x="1/4", y="3/4")

    def test_flatten_unit(self):
        inner = d(a=Q, b="3/4")
        assert dist_flatten(dist_unit(inner)) == inner

    def test_flatten_rejects_flat(self):
        with pytest.raises(DomainError):
            dist_flatten(d(a=H, b=H))

    def test_monad_laws(self, rng):
        samples = [random_nested_dist(rng, "abcd", depth=3) for _ in range(30)]
        report = check_giry_monad_laws(samples)
        assert report.passed
        assert set(report.counts) == {"monad-associativity", "monad-left-unit", "monad-right-unit"}


class TestFreeSpace:
    def test_mixture_of_point_masses(self):
        space = free_space("ab")
        assert space.cc(H, dist_unit("a"), dist_unit("b")) == d(a=H, b=H)

    def test_weighted_mixture(self, free_abc):
        got = free_abc.cc("1/3", d(a=H, b=H), dist_unit("b"))
        assert got == d(a="1/6", b="5/6")

    def test_laws_pass(self, free_abc, rng):
        samples = [free_abc.draw(rng) for _ in range(4)]
        lambdas = ["0", "1/3", "1/2", "1"]
        assert check_convex_space_laws(free_abc, samples, lambdas).passed

    def test_rejects_foreign_support(self, free_abc):
        assert not free_abc.contains(dist_unit("z"))

    def test_empty_carrier(self):
        with pytest.raises(DomainError):
            free_space([])

    def test_codec(self, free_abc):
        point = d(a=Q, c="3/4")
        encoded = free_abc.encode(point)
        assert encoded == [["a", "1/4"], ["c", "3/4"]]
        assert free_abc.decode(encoded) == point

    def test_decode_unknown_token(self, free_abc):
        with pytest.raises(DomainError):
            free_abc.decode([["z", "1/1"]])

    def test_mixture_at_endpoints(self):
        left, right = dist_unit("a"), dist_unit("b")
        assert mixture(1, left, right) == left
        assert mixture(0, left, right) == right


class TestBarycenter:
    def test_point_mass(self, line):
        assert barycenter(line, dist_unit(Fraction(7))) == 7

    def test_midpoint(self, line):
        assert barycenter(line, dist_make([(Fraction(0), H), (Fraction(4), H)])) == 2

    def test_semilattice_meet(self, divisors36):
        assert barycenter(divisors36, dist_make([(12, H), (18, H)])) == 6

    def test_rejects_foreign_points(self, line):
        with pytest.raises(DomainError):
            barycenter(line, dist_unit("a"))


class TestAlgebraLaws:
    def test_free_space(self, rng):
        space = free_space("ab")
        samples = [random_nested_dist(rng, [space.draw(rng) for _ in range(4)]) for _ in range(100)]
        assert check_algebra_laws(space, samples).passed

    def test_plane(self, plane, rng):
        samples = [random_nested_dist(rng, [plane.draw(rng) for _ in range(4)]) for _ in range(50)]
        report = check_algebra_laws(plane, samples)
        assert report.passed
        assert report.counts["algebra-unit"] > 0

    def test_unnormalized_structure_fails_associativity(self, line):
        def dropped_renormalization(space, dd):
            # uniform weights over the support, whatever the given weights are
            n = len(dd)
            return cc_nary(space, [Fraction(1, n)] * n, dd.points)

        points = [Fraction(0), Fraction(1), Fraction(2)]
        inner1 = dist_make([(points[0], H), (points[1], H)])
        inner2 = dist_make([(points[2], Fraction(1))])
        nested = dist_make([(inner1, Q), (inner2, Fraction(3, 4))])
        report = check_algebra_laws(line, [nested], structure=dropped_renormalization)
        assert report.failed_laws == ["algebra-associativity"]

    def test_random_nested_dist_depth(self):
        nested = random_nested_dist(random.Random(5), "abc", depth=2)
        assert all(isinstance(p, Dist) for p in nested.points)
