import pytest

from brauerheight.core import (
    IntPoly,
    IntegerModRing,
    LaurentPoly,
    field_make,
    fp_kernel_dim,
    fp_null_space,
    fp_rank,
    frobenius_elem,
    intpoly_divexact,
)
from brauerheight.exceptions import ArityError, DivisibilityError, FieldError

XYZ = ("x0", "x1", "x2")


class TestField:
    @pytest.mark.parametrize("p, d", [(2, 1), (7, 1), (2, 3), (3, 2)])
    def test_primitive_element(self, p, d):
        F = field_make(p, d)
        g = F.primitive_element

        assert len({(g**k).code for k in range(F.order - 1)}) == F.order - 1

    def test_prime_field(self):
        F = field_make(5)

        assert F.order == 5
        assert F(7) == 2
        assert F(3) * F(2) == 1
        assert F(2).inverse() == 3

    def test_f4_modulus(self):
        F = field_make(2, 2)
        t = F.gen

        assert F.modulus == (1, 1, 1)
        assert t * t == t + 1
        assert t**3 == 1
        assert str(t * t) == "t+1"

    def test_same_field_is_cached(self):
        assert field_make(3, 2) is field_make(3, 2)

    def test_frobenius_has_order_d(self):
        F = field_make(3, 3)
        x = F.gen + 1

        y = x
        for _ in range(3):
            y = frobenius_elem(y)

        assert y == x
        assert frobenius_elem(x) == x**3

    def test_extension_embeds(self):
        F = field_make(2, 2)
        big, embed = F.extend(2)
        t = F.gen

        assert big.order == 16
        assert embed(t) * embed(t) == embed(t) + 1
        assert embed(t * t) == embed(t) * embed(t)

    def test_invalid_fields(self):
        with pytest.raises(FieldError):
            field_make(4)
        with pytest.raises(FieldError):
            field_make(2, 2, modulus=(1, 0, 1))
        with pytest.raises(FieldError):
            field_make(3, 0)

    def test_mixed_fields(self):
        with pytest.raises(FieldError):
            field_make(5)(field_make(7)(1))

    def test_galois_class_matches_codes(self):
        F = field_make(3, 2)
        GF = F.galois
        a, b = F.element(4), F.element(7)

        assert int(GF(4) * GF(7)) == (a * b).code
        assert int(GF(4) + GF(7)) == (a + b).code


class TestIntPoly:
    def test_arithmetic(self):
        x = IntPoly.variable(("x", "y"), 0)
        y = IntPoly.variable(("x", "y"), 1)

        f = (x + y) ** 2

        assert f.coefficient((1, 1)) == 2
        assert f - x * x - y * y == 2 * x * y
        assert (x - x).is_zero()

    def test_restrict_and_evaluate(self):
        x = IntPoly.variable(("x", "y"), 0)
        y = IntPoly.variable(("x", "y"), 1)
        f = x**2 * y + 3 * x + 5

        assert f.restrict_zero([0]) == 5
        assert f.evaluate([2, 7]) == 28 + 6 + 5
        assert f.reduce_mod(2).coefficient((1, 0)) == 1

    def test_divexact(self):
        x = IntPoly.variable(("x",), 0)

        assert intpoly_divexact(6 * x + 3, 3) == 2 * x + 1
        with pytest.raises(DivisibilityError):
            intpoly_divexact(6 * x + 4, 3)

    def test_variables_must_match(self):
        with pytest.raises(ArityError):
            IntPoly.variable(("x",), 0) + IntPoly.variable(("y",), 0)


class TestLaurentPoly:
    @pytest.fixture()
    def field(self):
        return field_make(3)

    def test_frobenius_is_power(self, field):
        x = LaurentPoly.variable(field, XYZ, 0)
        y = LaurentPoly.variable(field, XYZ, 1)
        f = x + 2 * y

        assert f.frobenius() == f**3

    def test_negative_powers(self, field):
        m = LaurentPoly.monomial(field, XYZ, (1, -1, 2), 2)

        assert (m**-1) * m == 1
        with pytest.raises(ValueError):
            (m + 1) ** -1

    def test_derivative(self, field):
        x = LaurentPoly.variable(field, XYZ, 0)
        y = LaurentPoly.variable(field, XYZ, 1)

        assert (x**3 + x * y).derivative(0) == y
        assert (x**2 * y).derivative(1) == x**2

    def test_shift_and_filter(self, field):
        f = LaurentPoly.variable(field, XYZ, 0) + LaurentPoly.variable(field, XYZ, 2)

        shifted = f.shift((-1, -1, -1))

        assert shifted.min_exponent() == -1
        assert shifted.degrees() == {-2}
        assert shifted.filter(lambda e: e[0] >= 0) == LaurentPoly.monomial(
            field, XYZ, (0, -1, -1)
        )

    def test_exponent_arity(self, field):
        with pytest.raises(ArityError):
            LaurentPoly.monomial(field, XYZ, (1, 2))


class TestLinearAlgebra:
    def test_rank_and_kernel(self):
        rows = [[1, 1, 0], [1, 1, 0], [0, 0, 1]]

        assert fp_rank(rows, 2, 3) == 2
        assert fp_kernel_dim(rows, 2, 3) == 1
        assert fp_null_space(rows, 2, 3) == [[1, 1, 0]]

    def test_empty_matrix(self):
        assert fp_rank([], 5, 2) == 0
        assert fp_null_space([], 5, 2) == [[1, 0], [0, 1]]

    def test_reduction_mod_p(self):
        assert fp_rank([[3, 6], [1, 2]], 3, 2) == 1


class TestIntegerModRing:
    def test_prime_power(self):
        assert IntegerModRing(27).prime == 3
        assert IntegerModRing(12).prime is None
        assert IntegerModRing(0).prime is None
        assert IntegerModRing(9)(-1) == 8
