import itertools

import pytest

from brauerheight.core import field_make
from brauerheight.exceptions import FormalGroupError, SingularCurveError
from brauerheight.formal_group import (
    Axiom,
    FormalGroupLaw,
    HeightKind,
    additive_law,
    conjugate,
    deuring_count,
    ec_fgl,
    fgl_check,
    hasse_invariant,
    height_of,
    lubin_tate,
    mult_by,
    multiplicative_law,
)

LUBIN_TATE_FIXTURES = list(itertools.product((2, 3), (1, 2, 3, 4)))


class TestFormalGroupLaw:
    def test_standard_laws_are_valid(self):
        F = field_make(3)

        assert fgl_check(additive_law(F, 8), 8)
        assert fgl_check(multiplicative_law(F, 8), 8)

    def test_broken_law(self):
        F = field_make(5)
        report = fgl_check({(1, 0): 1, (0, 1): 1, (2, 1): 1}, 6, F)

        assert not report.valid
        assert Axiom.SYMMETRY in {v.axiom for v in report.violations}

    def test_missing_linear_term(self):
        report = fgl_check({(1, 0): 1, (1, 1): 1}, 4, field_make(3))

        assert report.violations[0].axiom is Axiom.IDENTITY

    def test_conjugate_is_a_law_of_the_same_height(self):
        F = field_make(3)
        law = conjugate(multiplicative_law(F, 12), 2)

        assert fgl_check(law, 12)
        assert height_of(law).height == 1

    def test_mult_by_is_additive(self):
        law = lubin_tate(5, 1, 12)

        assert list(law(mult_by(2, law), mult_by(3, law))) == list(mult_by(5, law))

    def test_small_truncation(self):
        with pytest.raises(FormalGroupError):
            FormalGroupLaw(field_make(2), 1, [[0]])


class TestHeight:
    @pytest.mark.parametrize("p, h", LUBIN_TATE_FIXTURES)
    def test_lubin_tate(self, p, h):
        law = lubin_tate(p, h, p**h + 1)
        report = height_of(law)

        assert report.kind is HeightKind.EXACT
        assert report.height == h
        assert report.leading == 1

    def test_lubin_tate_is_a_law(self):
        assert fgl_check(lubin_tate(2, 2, 10), 10)

    def test_lubin_tate_needs_room(self):
        with pytest.raises(FormalGroupError):
            lubin_tate(3, 2, 9)

    def test_multiplicative(self):
        report = height_of(multiplicative_law(field_make(7), 20))

        assert report.kind is HeightKind.EXACT
        assert report.height == 1

    def test_additive(self):
        report = height_of(additive_law(field_make(3), 30))

        assert report.kind is HeightKind.INFINITE_WITHIN_TRUNCATION
        assert report.bound == 4

    def test_above_hmax(self):
        report = height_of(lubin_tate(2, 3, 9), hmax=2)

        assert report.kind is HeightKind.AT_LEAST
        assert report.bound == 3

    def test_report_serialisation(self):
        data = height_of(multiplicative_law(field_make(2), 4)).to_dict()

        assert data["kind"] == "exact"
        assert data["height"] == 1
        assert data["leading"] == "1"
        assert "bound" not in data


class TestEllipticCurves:
    @pytest.mark.slow
    @pytest.mark.parametrize("p", (5, 7))
    def test_height_two_iff_hasse_vanishes(self, p):
        F = field_make(p)
        for a4, a6 in itertools.product(F.elements(), repeat=2):
            try:
                hasse = hasse_invariant(a4, a6)
            except SingularCurveError:
                continue
            report = height_of(ec_fgl(a4, a6, p**2 + 1))

            assert report.kind is HeightKind.EXACT
            assert (report.height == 2) == (hasse == 0)

    def test_supersingular_curve(self):
        F = field_make(5)
        # y^2 = x^3 + 1 is supersingular for p = 2 mod 3
        assert hasse_invariant(0, 1, F) == 0
        assert height_of(ec_fgl(0, 1, 26, F)).height == 2

    def test_ordinary_curve(self):
        F = field_make(7)
        assert hasse_invariant(0, 1, F) != 0
        assert height_of(ec_fgl(0, 1, 50, F)).height == 1

    def test_curve_over_extension(self):
        F = field_make(5, 2)
        report = height_of(ec_fgl(F.gen, F(0), 26))

        assert (report.kind, report.height) == (HeightKind.EXACT, 1)

    def test_curve_law_is_valid(self):
        assert fgl_check(ec_fgl(1, 1, 10, field_make(5)), 10)

    def test_singular_curve(self):
        with pytest.raises(SingularCurveError):
            ec_fgl(0, 0, 10, field_make(5))

    def test_small_characteristic(self):
        with pytest.raises(FormalGroupError):
            hasse_invariant(1, 1, field_make(3))

    def test_deuring_count(self):
        assert [deuring_count(p) for p in (2, 3, 5, 7, 11, 13, 37)] == [1, 1, 1, 1, 2, 1, 3]
