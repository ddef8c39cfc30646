"""Tests for cst/lawvere.py: stochastic matrices and the model functor L."""
import random
from fractions import Fraction

import pytest

from cst.geometric import rational_line
from cst.giry import dist_make
from cst.kernel import DomainError, SpaceHandle, ValidationError, point_space
from cst.lawvere import (
    Generator,
    L_apply,
    c_lambda,
    check_correspondence_roundtrip,
    check_functor_case,
    check_generator_case,
    check_lawvere_functoriality,
    check_model_morphism,
    check_roundtrip_cc,
    check_roundtrip_structure,
    copy_e,
    delete_d,
    finmap_matrix,
    identity,
    inclusion,
    random_sto,
    sto_compose,
    sto_make,
    sto_tensor,
    swap_s,
)

H = Fraction(1, 2)


def column_sums(A):
    return [sum(A.column(k)) for k in range(A.cols)]


class TestStoMake:
    def test_identity(self):
        assert sto_make(2, 2, [[1, 0], [0, 1]]) == identity(2)

    def test_single_column(self):
        A = sto_make(2, 1, [["1/3"], ["2/3"]])
        assert A.column(0) == (Fraction(1, 3), Fraction(2, 3))

    def test_column_must_sum_to_one(self):
        with pytest.raises(ValidationError) as exc:
            sto_make(2, 1, [["1/2"], ["1/3"]])
        assert exc.value.invariant == "column-sum"

    def test_negative_entry(self):
        with pytest.raises(ValidationError) as exc:
            sto_make(2, 1, [["3/2"], ["-1/2"]])
        assert exc.value.invariant == "entry-nonnegative"

    def test_float_entry(self):
        with pytest.raises(ValidationError) as exc:
            sto_make(1, 1, [[1.0]])
        assert exc.value.invariant == "entry-exact"

    def test_bad_shape(self):
        with pytest.raises(DomainError):
            sto_make(2, 2, [[1, 0]])

    def test_zero_columns(self):
        assert delete_d().rows == 1 and delete_d().cols == 0


class TestComposition:
    def test_right_identity(self):
        B = sto_make(2, 3, [["1/2", 0, 1], ["1/2", 1, 0]])
        assert sto_compose(B, identity(3)) == B
        assert sto_compose(identity(2), B) == B

    def test_closure(self):
        r = random.Random(0)
        A, B = random_sto(r, 3, 3), random_sto(r, 3, 3)
        assert column_sums(sto_compose(B, A)) == [1, 1, 1]

    def test_swap_then_average(self):
        avg = sto_make(2, 1, [[H], [H]])
        assert sto_compose(swap_s(), avg).column(0) == (H, H)

    def test_shape_mismatch(self):
        with pytest.raises(DomainError):
            sto_compose(identity(2), identity(3))


class TestTensor:
    def test_identity_blocks(self):
        assert sto_tensor(identity(1), identity(1)) == identity(2)

    def test_shape(self):
        T = sto_tensor(c_lambda("1/3"), copy_e())
        assert (T.rows, T.cols) == (3, 3)
        assert column_sums(T) == [1, 1, 1]

    def test_pairwise_action(self, line):
        A1, A2 = c_lambda("1/4"), copy_e()
        xs = (Fraction(0), Fraction(4))
        ys = (Fraction(9),)
        assert L_apply(line, sto_tensor(A1, A2), xs + ys) == L_apply(line, A1, xs) + L_apply(line, A2, ys)


class TestGenerators:
    def test_identity_action(self, plane):
        xs = ((Fraction(1), Fraction(2)), (Fraction(0), Fraction(5)))
        assert L_apply(plane, identity(2), xs) == xs

    def test_c_lambda_is_cc(self, line):
        x, y = Fraction(2), Fraction(8)
        assert L_apply(line, c_lambda("1/3"), (x, y)) == (line.cc("1/3", x, y),)

    def test_swap_reverses(self, line):
        assert L_apply(line, swap_s(), (Fraction(1), Fraction(2))) == (Fraction(2), Fraction(1))

    def test_copy_and_delete(self, line):
        x = Fraction(3)
        assert L_apply(line, copy_e(), (x,)) == (x, x)
        assert L_apply(line, delete_d(), (x,)) == ()

    def test_unknown_generator(self):
        with pytest.raises(DomainError):
            _ = Generator("rotate").matrix

    def test_finmap(self, line):
        xs = (Fraction(1), Fraction(2), Fraction(3))
        A = finmap_matrix([2, 2, 0, 1].__getitem__, 3, 4)
        assert L_apply(line, A, xs) == (Fraction(3), Fraction(3), Fraction(1), Fraction(2))

    def test_finmap_out_of_range(self):
        with pytest.raises(DomainError):
            finmap_matrix(lambda k: 5, 2, 1)

    def test_arity_mismatch(self, line):
        with pytest.raises(DomainError):
            L_apply(line, identity(2), (Fraction(1),))


class TestFunctoriality:
    def test_free_space(self, free_abc):
        report = check_lawvere_functoriality(free_abc, cases=200, seed=3)
        assert report.passed
        assert report.counts["lawvere-functoriality"] == 200

    def test_plane(self, plane):
        assert check_lawvere_functoriality(plane, cases=200, seed=4).passed

    def test_semilattice(self, divisors36):
        assert check_lawvere_functoriality(divisors36, cases=100, seed=5).passed

    def test_biased_operation_is_caught(self):
        # λ²x + (1-λ²)y on the line: idempotent and unital but not associative
        line = rational_line()
        biased = SpaceHandle("biased", lambda lam, x, y: lam * lam * x + (1 - lam * lam) * y,
                             line.contains, sample=line.sample)
        report = check_lawvere_functoriality(biased, cases=100, seed=6)
        assert not report.passed
        assert "lawvere-functoriality" in report.failed_laws

    def test_dims_bounds(self, line):
        with pytest.raises(DomainError):
            check_lawvere_functoriality(line, dims=5)

    def test_model_morphism(self, line):
        report = check_model_morphism(lambda t: 3 * t - 1, line, line, cases=50, seed=2)
        assert report.passed

    def test_model_morphism_rejects_square(self, line):
        report = check_model_morphism(lambda t: t * t, line, line, cases=50, seed=2)
        assert report.failed_laws == ["model-morphism"]


class TestRoundtrip:
    def test_passing_space(self, plane, rng):
        samples = [plane.draw(rng) for _ in range(4)]
        assert check_correspondence_roundtrip(plane, samples, seed=1).passed

    def test_point_space(self):
        assert check_correspondence_roundtrip(point_space(), ["*"]).passed

    def test_semilattice(self, divisors36):
        report = check_correspondence_roundtrip(divisors36, [1, 4, 6, 9, 12, 36], seed=2)
        assert report.passed
        assert report.counts["roundtrip-structure"] == 24

    def test_needs_samples(self, line):
        with pytest.raises(DomainError):
            check_correspondence_roundtrip(line, [])


class TestPerCaseChecks:
    def test_block_projections_beyond_the_first(self, line):
        rng = random.Random(9)
        A, B = random_sto(rng, 2, 2), random_sto(rng, 3, 2)
        xs = (Fraction(1), Fraction(2), Fraction(3))
        report = check_functor_case(line, A, B, xs, (Fraction(5), Fraction(-1)), 1, [2, 0])
        assert report.passed
        assert report.counts["product-inclusion"] == 2
        assert report.counts["product-projection"] == 3

    def test_second_block(self, line):
        xs = (Fraction(1), Fraction(2), Fraction(3))
        assert L_apply(line, inclusion(3, 1, 2), xs) == xs[1:]

    def test_shape_mismatch(self, line):
        with pytest.raises(DomainError):
            check_functor_case(line, identity(2), identity(3), (Fraction(1),) * 3, (Fraction(1),) * 2, 0, [0])

    def test_split_out_of_range(self, line):
        with pytest.raises(DomainError):
            check_functor_case(line, identity(1), identity(1), (Fraction(1),), (Fraction(1),), 2, [0])

    def test_generator_case(self, plane):
        x, y = (Fraction(1), Fraction(0)), (Fraction(3), Fraction(4))
        report = check_generator_case(plane, "1/4", x, y)
        assert report.passed
        assert set(report.counts) == {"generator-copy", "generator-delete", "generator-swap",
                                      "generator-c-lambda"}

    def test_roundtrip_structure_order(self, line):
        d = dist_make([(Fraction(0), "1/3"), (Fraction(3), "2/3")])
        assert check_roundtrip_structure(line, d, [Fraction(3), Fraction(0)]).passed
        with pytest.raises(DomainError):
            check_roundtrip_structure(line, d, [Fraction(3)])
        with pytest.raises(DomainError):
            check_roundtrip_structure(line, d, [Fraction(3), Fraction(7)])

    def test_roundtrip_cc(self, line):
        assert check_roundtrip_cc(line, "2/3", Fraction(3), Fraction(0)).passed
