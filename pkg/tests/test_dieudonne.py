import itertools

import pytest

from brauerheight.core import field_make
from brauerheight.dieudonne import (
    check_dims,
    d_model,
    f_is_zero,
    filtration_image_check,
    ker_f_dim,
    quotient_length,
    truncate,
    truth_table,
    v_filtration_check,
)
from brauerheight.exceptions import DieudonneModelError


class TestDieudonneModel:
    @pytest.mark.parametrize("h", range(1, 6))
    def test_quotient_dimensions(self, h):
        report = check_dims(d_model(h, h + 1, field_make(3)))

        assert report.ok
        assert (report.mod_v, report.mod_f, report.mod_p) == (1, h - 1, h)

    def test_frobenius_of_basis(self):
        model = d_model(3, 3, field_make(2))

        assert set(model.F(model.basis(0))) == {2}
        assert set(model.V(model.basis(2))) == {0}

    def test_quotient_length_of_whole_module(self):
        model = d_model(2, 4, field_make(5))

        assert quotient_length(model, [model.basis(0), model.basis(1)]) == 0

    def test_invalid_parameters(self):
        with pytest.raises(DieudonneModelError):
            d_model(0, 3, field_make(2))
        with pytest.raises(DieudonneModelError):
            truncate(d_model(2, 3, field_make(2)), 4)

    @pytest.mark.parametrize("h", (1, 2, 4))
    def test_truncation_has_length_i(self, h):
        model = d_model(h, 6, field_make(3, 2))
        for i in range(1, 7):
            assert truncate(model, i).length == i


class TestHeightCriterion:
    @pytest.mark.parametrize("p, d", [(2, 1), (3, 1), (5, 2)])
    def test_small_table(self, p, d):
        field = field_make(p, d)
        for h, i in itertools.product(range(1, 5), range(1, 6)):
            truncated = truncate(d_model(h, 6, field), i)

            assert f_is_zero(truncated) == (i <= h - 1)
            assert ker_f_dim(truncated) == min(i, h - 1)

    @pytest.mark.slow
    @pytest.mark.parametrize("p", (2, 3, 5))
    @pytest.mark.parametrize("d", (1, 2))
    def test_full_truth_table(self, p, d):
        rows = truth_table(range(1, 11), range(1, 13), field_make(p, d))

        assert len(rows) == 120
        assert all(row.expected for row in rows)
        assert {row.q for row in rows} == {p**d}

    def test_rows_serialise(self):
        (row,) = truth_table([3], [2], field_make(2))

        assert row.to_dict() == {
            "p": 2,
            "q": 2,
            "h": 3,
            "i": 2,
            "f_is_zero": True,
            "ker_f_dim": 2,
            "expected": True,
        }


class TestFiltrations:
    @pytest.mark.parametrize("h", range(1, 6))
    def test_image_of_frobenius(self, h):
        (report,) = filtration_image_check(d_model(h, 8, field_make(2)), levels=(8,))

        assert report.equal
        assert report.codimension == h - 1

    @pytest.mark.parametrize("h", range(1, 6))
    def test_v_filtration_decreases(self, h):
        report = v_filtration_check(d_model(h, h, field_make(3)))

        assert report.strictly_decreasing
        assert len(report.lengths) == h
