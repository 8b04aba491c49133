"""Reducible-fiber search, certificates, and row removal."""

from fractions import Fraction as F

from sumprod.classify import is_composite
from sumprod.factor import AbsReducibleWitness, FactorList
from sumprod.parsing import parse_poly as P
from sumprod.spectrum import (
    remove_sigma_rows,
    sigma_candidates,
    sigma_scan,
    sweep_candidates,
)

from conftest import NON_COMPOSITE, naive_image, CORPUS_EVAL


class TestCandidates:
    def test_product_has_the_origin_value(self):
        # both partials vanish at the origin and the value there is zero
        assert F(0) in sigma_candidates(P("x y"))

    def test_circle_pair(self):
        assert F(0) in sigma_candidates(P("x^2 + y^2"))

    def test_gradient_never_vanishes(self):
        cands = sigma_candidates(P("x + y"), sweep_height=2)
        assert cands == sweep_candidates(2)

    def test_user_values_included(self):
        cands = sigma_candidates(P("x y"), extra=(F(17), F(-22, 7)))
        assert F(17) in cands and F(-22, 7) in cands

    def test_sweep_height(self):
        sw = sweep_candidates(1)
        assert sw == [F(-1), F(0), F(1)]
        assert F(2, 5) in sweep_candidates(5)


class TestScan:
    def test_product_finds_zero_with_rational_certificate(self):
        rep = sigma_scan(P("x y"), [F(-1), F(0), F(1)])
        assert rep.found_values == (F(0),)
        cert = rep.found[0].certificate
        assert isinstance(cert, FactorList)
        assert {p for p, _ in cert.factors} == {P("x"), P("y")}
        assert rep.stein_bound_respected  # 1 < 2

    def test_sum_of_squares_nullspace_certificates(self):
        rep = sigma_scan(P("x^2 + y^2"), [F(0), F(1)])
        assert rep.found_values == (F(0),)
        cert = rep.found[0].certificate
        assert isinstance(cert, AbsReducibleWitness)
        assert cert.kind == "nullspace" and cert.value == 2

    def test_square_of_sum_breaks_the_bound(self):
        rep = sigma_scan(P("x^2 + 2 x y + y^2"), [F(1), F(4)])
        assert rep.found_values == (F(1), F(4))
        assert not rep.stein_bound_respected
        # the flag firing must agree with the compositeness verdict
        assert is_composite(P("x^2 + 2 x y + y^2")).composite

    def test_certificates_revalidate(self):
        for s in ("x y", "x^2 + y^2", "x^2 + x y + y^2", "x^3 + x y"):
            f = P(s)
            rep = sigma_scan(f, sigma_candidates(f))
            for hit in rep.found:
                assert hit.revalidate(f)

    def test_monotone_under_more_candidates(self):
        f = P("x^3 + x y")
        small = sigma_scan(f, sigma_candidates(f, sweep_height=2))
        large = sigma_scan(f, sigma_candidates(f, sweep_height=5))
        assert set(small.found_values) <= set(large.found_values)

    def test_stein_bound_on_non_composite_corpus(self):
        for s in NON_COMPOSITE:
            f = P(s)
            k = f.total_degree
            if k > 5:
                continue
            rep = sigma_scan(f, sigma_candidates(f))
            assert len(rep.found) < k, s
            assert rep.stein_bound_respected
            assert not is_composite(f).composite


class TestRowRemoval:
    def test_no_flagged_values(self):
        rep = sigma_scan(P("x^2 + y"), sigma_candidates(P("x^2 + y")))
        grid = remove_sigma_rows({F(2), F(3)}, {F(1), F(6)}, rep)
        assert grid.point_count == 4 and grid.removed_count == 0

    def test_flagged_row_removed(self):
        rep = sigma_scan(P("x y"), [F(0)])
        grid = remove_sigma_rows({F(2), F(3)}, {F(0), F(1)}, rep)
        assert grid.kept_values == (F(1),)
        assert grid.removed_count == 2

    def test_product_grid_needs_no_removal(self):
        f = P("x y")
        A = [F(1), F(2), F(3)]
        values = naive_image(CORPUS_EVAL["x y"], A)
        assert values == {F(1), F(2), F(3), F(4), F(6), F(9)}
        rep = sigma_scan(f, sigma_candidates(f))
        grid = remove_sigma_rows({a + b for a in A for b in A}, values, rep)
        assert grid.removed_count == 0  # zero is not attained on this grid

    def test_removal_bounded_for_non_composite(self):
        for s in NON_COMPOSITE:
            f = P(s)
            k = f.total_degree
            A = [F(i) for i in range(-3, 4)]
            sums = {a + b for a in A for b in A}
            values = {f(a, b) for a in A for b in A}
            rep = sigma_scan(f, sigma_candidates(f))
            grid = remove_sigma_rows(sums, values, rep)
            assert grid.removed_count <= len(sums) * (k - 1)
