from fractions import Fraction

import pytest
from sympy import primerange

from brauerheight.core import field_make
from brauerheight.exceptions import FieldError, StrataError
from brauerheight.formal_group import deuring_count
from brauerheight.strata import (
    SUPERSINGULAR_NOTE,
    artin_bound_check,
    aut_order,
    deuring_mass,
    max_finite_height,
    ss_j_list,
    ss_j_list_by_curves,
    stratum_class,
    strata_table,
)


def codes(values):
    return [x.code for x in values]


class TestSupersingularJ:
    @pytest.mark.parametrize("p, expected", [(5, [0]), (7, [6]), (11, [0, 1])])
    def test_small_primes(self, p, expected):
        assert codes(ss_j_list(p)) == expected

    @pytest.mark.parametrize("p", (5, 7, 13, 17, 23, 29))
    def test_curve_enumeration_agrees(self, p):
        assert codes(ss_j_list_by_curves(p)) == codes(ss_j_list(p))

    @pytest.mark.parametrize("p", (13, 37, 41, 61))
    def test_count_and_field_of_definition(self, p):
        js = ss_j_list(p)

        assert len(js) == deuring_count(p)
        assert all(j ** (p * p) == j for j in js)

    def test_values_outside_f_p(self):
        # p = 37 has a conjugate pair in F_{37^2}
        js = ss_j_list(37)

        assert any(j.coordinates[1] for j in js)

    def test_small_characteristic(self):
        with pytest.raises(StrataError):
            ss_j_list(3)
        with pytest.raises(FieldError):
            ss_j_list(9)


class TestDeuringMass:
    @pytest.mark.parametrize(
        "p, mass", [(5, Fraction(1, 6)), (11, Fraction(5, 12)), (13, Fraction(1, 2))]
    )
    def test_examples(self, p, mass):
        assert deuring_mass(p).mass == mass

    def test_report(self):
        report = deuring_mass(11)

        assert report.j == ("0", "1")
        assert report.aut_orders == (6, 4)
        assert report.to_dict() == {
            "p": 11,
            "mass": "5/12",
            "j": ["0", "1"],
            "aut_orders": [6, 4],
        }

    @pytest.mark.slow
    def test_every_prime_below_200(self):
        for p in primerange(5, 200):
            assert deuring_mass(p).mass == Fraction(p - 1, 24)

    @pytest.mark.parametrize("j, p, expected", [(0, 5, 6), (6, 7, 4), (5, 13, 2)])
    def test_aut_order(self, j, p, expected):
        assert aut_order(j, p) == expected

    def test_aut_order_of_element(self):
        assert aut_order(field_make(11, 2)(1), 11) == 4

    def test_aut_order_small_characteristic(self):
        with pytest.raises(StrataError):
            aut_order(0, 3)


class TestStrata:
    @pytest.mark.parametrize("p, h, coefficient", [(2, 4, 21), (3, 3, 16), (7, 1, 1)])
    def test_stratum_class(self, p, h, coefficient):
        stratum = stratum_class(p, h)

        assert stratum.coefficient == coefficient
        assert stratum.v_exponent == h - 1
        assert stratum.note is None

    @pytest.mark.parametrize("p", (2, 3, 5))
    def test_table_matches_products(self, p):
        rows = strata_table(p)
        expected = 1
        for row in rows:
            assert row.coefficient == expected
            assert (row.codim, row.dim) == (row.h - 1, 20 - row.h)
            expected *= p**row.h - 1

        assert len(rows) == 11
        assert rows[-1].note == SUPERSINGULAR_NOTE

    def test_large_coefficient_is_a_string(self):
        row = strata_table(5)[-1].to_dict()

        assert isinstance(row["coefficient"], str)
        assert int(row["coefficient"]) == stratum_class(5, 11).coefficient

    def test_row_values(self):
        rows = strata_table(2, 2)

        values = [(r.h, r.codim, r.dim, r.coefficient) for r in rows]

        assert values == [(1, 0, 19, 1), (2, 1, 18, 1)]

    def test_height_out_of_range(self):
        with pytest.raises(StrataError):
            stratum_class(2, 12)

    def test_artin_bound(self):
        assert artin_bound_check(10, 2)
        assert not artin_bound_check(11, 0)
        assert artin_bound_check(1, 20)
        assert max_finite_height(2) == 10
        assert max_finite_height(22) == 0

    def test_picard_number_is_at_least_one(self):
        assert artin_bound_check(11, 0) is False
        assert artin_bound_check(10, 0) is True
        assert max_finite_height(0) == max_finite_height(1) == 10
