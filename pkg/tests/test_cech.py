import dataclasses
import itertools

import pytest

from brauerheight.cech import (
    CechCochain,
    HeightCertificate,
    Verdict,
    class_from_normal_form,
    class_normal_form,
    coboundary,
    coboundary_solve,
    exterior_derivative,
    frobenius_scalar,
    hn_O_basis,
    hypersurface_cohomology_dims,
    ker_f_dim_cech,
    make_hypersurface,
    phi_tower,
    projective_cech_dim,
    serre_D,
    structure_cocycle,
    verify_certificate,
)
from brauerheight.core import LaurentPoly, field_make
from brauerheight.exceptions import (
    ArityError,
    CertificateError,
    HypersurfaceError,
    ParseError,
    SingularCurveError,
    WindowExhaustedError,
)
from brauerheight.formal_group import hasse_invariant
from brauerheight.utils import json

FERMAT_CUBIC = "x0^3+x1^3+x2^3"
FERMAT_QUARTIC = "x0^4+x1^4+x2^4+x3^4"

# (polynomial, p): Fermat, Dwork and other perturbed quartics
QUARTICS = [
    (FERMAT_QUARTIC, 3),
    (FERMAT_QUARTIC, 5),
    ("x0^4+x1^4+x2^4+x3^4+x0*x1*x2*x3", 3),
    ("x0^4+x1^4+x2^4+x3^4+2*x0*x1*x2*x3", 3),
    ("x0^4+x1^4+x2^4+x3^4+x0*x1*x2*x3", 5),
    ("x0^4+x1^4+x2^4+x3^4+x0^2*x1^2", 3),
    ("x0^4+x1^4+x2^4+x3^4+x0^2*x1^2", 5),
    ("x0^4+x1^4+x2^4+x3^4+x0^2*x1*x2", 5),
    ("x0^4+x1^4+x2^4+x3^4+x0^3*x1+x2^3*x3", 3),
    ("x0^4+2*x1^4+x2^4+x3^4+x0*x1*x2^2", 5),
    ("x0^3*x1+x1^3*x2+x2^3*x3+x3^3*x0", 3),
]


def coefficient_of_product(X):
    """Coefficient of ``(x_0 ... x_{n+1})^(p-1)`` in ``f^(p-1)``."""
    return X.f_power(X.p - 1).coefficient((X.p - 1,) * X.arity)


class TestHypersurface:
    def test_builds_fermat(self):
        X = make_hypersurface(FERMAT_QUARTIC, 3)

        assert X.n == 2
        assert X.arity == 4
        assert X.is_multiple_of_f(X.f * X.f)
        x0_fourth = LaurentPoly.monomial(X.field, X.variables, (4, 0, 0, 0))
        assert not X.is_multiple_of_f(X.f + x0_fourth)

    @pytest.mark.parametrize(
        "text",
        [
            "x0^2+x1^2",
            "x0^3+x1^3+x2^3+x3^3",
            "x0^4+x1^4+x2^4+x3^4+x0",
            "x0^4+x1^4+x2^4+0*x3",
        ],
    )
    def test_rejects(self, text):
        with pytest.raises(HypersurfaceError):
            make_hypersurface(text, 3)

    def test_needs_a_characteristic(self):
        with pytest.raises(HypersurfaceError):
            make_hypersurface(FERMAT_QUARTIC)

    def test_parse_errors_surface(self):
        with pytest.raises(ParseError):
            make_hypersurface("x0^4+y^4", 3)

    def test_normal_form_is_invariant_modulo_f(self):
        X = make_hypersurface("x0^3*x1+x1^3*x2+x2^3*x3+x3^3*x0", 3)
        g = LaurentPoly.monomial(X.field, X.variables, (2, 1, 0, 3))

        assert X.normal_form(g + X.f * g) == X.normal_form(g)

    def test_cohomology_dims(self):
        assert hypersurface_cohomology_dims(make_hypersurface(FERMAT_QUARTIC, 3)) == {
            0: 1,
            1: 0,
            2: 1,
        }
        assert hypersurface_cohomology_dims(make_hypersurface(FERMAT_CUBIC, 2)) == {0: 1, 1: 1}

    def test_structure_cocycle(self):
        cocycle = structure_cocycle(make_hypersurface(FERMAT_QUARTIC, 5))

        assert cocycle.X.is_multiple_of_f(cocycle.differential())


class TestProjectiveCech:
    @pytest.mark.parametrize(
        "N, m, k, expected",
        [
            (3, 0, 0, 1),
            (3, 1, 0, 3),
            (3, -3, 2, 1),
            (3, -1, 2, 0),
            (4, -4, 3, 1),
            (4, 0, 1, 0),
        ],
    )
    def test_line_bundles(self, N, m, k, expected):
        assert projective_cech_dim(N, m, k, window=2) == expected

    def test_twist_below_window(self):
        assert projective_cech_dim(3, -4, 2, window=2) == 3
        assert projective_cech_dim(3, -4, 2, window=1) == 0


class TestCochains:
    @pytest.fixture()
    def cubic(self):
        return make_hypersurface(FERMAT_CUBIC, 2)

    def test_coboundary_round_trip(self, cubic):
        X = cubic

        def monomial(*e):
            return LaurentPoly.monomial(X.field, X.variables, e)

        zero = LaurentPoly.zero(X.field, X.variables)
        gamma = CechCochain(
            X,
            2,
            1,
            {
                (1, 2): (monomial(1, -2, -2), monomial(0, -1, -2)),
                (0, 2): (monomial(-1, 0, -2), zero),
                (0, 1): (zero, monomial(-2, -2, 1)),
            },
            12,
        )
        beta = coboundary(gamma)
        solution = coboundary_solve(beta)

        assert solution.is_coboundary
        assert not any(solution.normal_form)
        assert coboundary(solution.gamma).components == beta.components

    def test_generator_is_not_a_coboundary(self, cubic):
        zeta = CechCochain.top(cubic, (cubic.inverse_monomial(),), 3)
        solution = coboundary_solve(zeta)

        assert not solution.is_coboundary
        assert solution.obstruction.shift == 0
        assert solution.obstruction.value == 1

    def test_normal_form_round_trip(self):
        X = make_hypersurface(FERMAT_CUBIC, 2, 2)
        t = X.field.gen
        cls = class_from_normal_form(X, (t, t + 1), 12)

        assert class_normal_form(cls.representative) == (t, t + 1)

    def test_verschiebung_raises_the_level(self):
        X = make_hypersurface(FERMAT_CUBIC, 2, 2)
        t = X.field.gen
        shifted = class_from_normal_form(X, (t, t + 1), 24).verschiebung()

        assert shifted.level == 3
        assert shifted.normal_form == (0, t, t + 1)
        assert shifted.restriction().normal_form == (0, t)

    def test_class_operations(self, cubic):
        zeta = hn_O_basis(cubic)

        assert zeta.normal_form == (1,)
        assert zeta.degree == 1
        assert zeta.frobenius().normal_form == (0,)
        assert zeta.verschiebung().level == 2
        assert zeta.verschiebung().normal_form == (0, 1)
        assert zeta.verschiebung().restriction().normal_form == (0,)
        assert not (zeta + zeta)

    def test_regularity_is_checked(self, cubic):
        with pytest.raises(HypersurfaceError):
            CechCochain(
                cubic,
                1,
                1,
                {(1, 2): (LaurentPoly.monomial(cubic.field, cubic.variables, (-1, -1, -1)),)},
                3,
            )

    def test_window_is_checked(self, cubic):
        far = LaurentPoly.monomial(cubic.field, cubic.variables, (-5, 1, 1))
        with pytest.raises(WindowExhaustedError):
            CechCochain.top(cubic, (far,), 3)


class TestFrobeniusScalar:
    @pytest.mark.parametrize(
        "text, p, expected",
        [
            (FERMAT_QUARTIC, 5, 4),
            (FERMAT_QUARTIC, 3, 0),
            (FERMAT_CUBIC, 2, 0),
            (FERMAT_CUBIC, 7, 6),
        ],
    )
    def test_fermat(self, text, p, expected):
        assert frobenius_scalar(make_hypersurface(text, p)) == expected

    @pytest.mark.parametrize("text, p", QUARTICS)
    def test_matches_coefficient_formula(self, text, p):
        X = make_hypersurface(text, p)

        assert frobenius_scalar(X) == coefficient_of_product(X)


class TestTower:
    def test_height_one_witness(self):
        certificate = phi_tower(make_hypersurface(FERMAT_QUARTIC, 5), 3)

        assert certificate.verdict is Verdict.EXACT
        assert certificate.height == 1
        assert certificate.witness == "4"

    def test_rescaled_generator(self):
        X = make_hypersurface(FERMAT_QUARTIC, 5)
        certificate = phi_tower(X, 1, scale=X.field(2))

        assert certificate.scale == 2
        assert certificate.witness == "4"
        assert verify_certificate(X, certificate)

    def test_rescaled_generator_is_semilinear(self):
        X = make_hypersurface(FERMAT_QUARTIC, 5, 2)
        t = X.field.gen
        certificate = phi_tower(X, 1, scale=t)

        assert certificate.scale == t.code
        assert certificate.witness == str(X.field(4) * t**4)
        assert certificate.witness != "4"
        assert verify_certificate(X, certificate)

    def test_certificate_json_round_trip(self):
        X = make_hypersurface(FERMAT_QUARTIC, 5)
        certificate = phi_tower(X, 2)
        restored = HeightCertificate.from_dict(json.loads(json.dumps(certificate.to_dict())))

        assert restored == certificate
        assert verify_certificate(X, restored)

    def test_tampered_certificate(self):
        X = make_hypersurface(FERMAT_QUARTIC, 5)
        certificate = phi_tower(X, 1)
        level = dataclasses.replace(certificate.levels[0], witness="3")
        forged = dataclasses.replace(certificate, levels=(level,))

        with pytest.raises(CertificateError):
            verify_certificate(X, forged)
        with pytest.raises(CertificateError):
            verify_certificate(make_hypersurface(FERMAT_QUARTIC, 3), certificate)

    def test_level_one_lower_bound(self):
        certificate = phi_tower(make_hypersurface(FERMAT_QUARTIC, 3), 1)

        assert certificate.verdict is Verdict.AT_LEAST
        assert certificate.bound == 2
        assert certificate.levels[0].gamma_digest is not None

    def test_tight_window_gives_a_bound(self):
        certificate = phi_tower(
            make_hypersurface(FERMAT_QUARTIC, 3), 1, window=1, window_cap=1
        )

        assert certificate.verdict is Verdict.AT_LEAST
        assert certificate.bound == 1
        assert certificate.note

    def test_supersingular_fermat_cubic(self):
        X = make_hypersurface(FERMAT_CUBIC, 2)
        certificate = phi_tower(X, 3)

        assert certificate.verdict is Verdict.EXACT
        assert certificate.height == 2
        assert verify_certificate(X, certificate)

    def test_invalid_depth(self):
        with pytest.raises(HypersurfaceError):
            phi_tower(make_hypersurface(FERMAT_CUBIC, 2), 0)

    @pytest.mark.slow
    def test_fermat_quartic_mod_3(self):
        X = make_hypersurface(FERMAT_QUARTIC, 3)
        certificate = phi_tower(X, 2)

        assert certificate.verdict is Verdict.AT_LEAST
        assert certificate.bound == 3
        assert [level.i for level in certificate.levels] == [1, 2]
        assert verify_certificate(X, certificate)


class TestWeierstrassCubics:
    @pytest.mark.slow
    @pytest.mark.parametrize("p", (5, 7))
    def test_height_two_iff_hasse_vanishes(self, p):
        F = field_make(p)
        for a4, a6 in itertools.product(range(p), repeat=2):
            try:
                hasse = hasse_invariant(a4, a6, F)
            except SingularCurveError:
                continue
            X = make_hypersurface(f"x1^2*x2-x0^3-{a4}*x0*x2^2-{a6}*x2^3", p)
            certificate = phi_tower(X, 2)

            assert certificate.verdict is Verdict.EXACT
            assert (certificate.height == 2) == (hasse == 0)

    def test_supersingular_curve(self):
        # y^2 = x^3 + 1 at p = 5
        certificate = phi_tower(make_hypersurface("x1^2*x2-x0^3-x2^3", 5), 2)

        assert (certificate.verdict, certificate.height) == (Verdict.EXACT, 2)


class TestKernelOfFrobenius:
    def test_ordinary_quartic(self):
        assert ker_f_dim_cech(make_hypersurface(FERMAT_QUARTIC, 5), 3) == 0

    def test_first_level(self):
        assert ker_f_dim_cech(make_hypersurface(FERMAT_QUARTIC, 3), 1) == 1

    def test_supersingular_cubic(self):
        X = make_hypersurface(FERMAT_CUBIC, 2)

        assert ker_f_dim_cech(X, 1) == 1
        assert ker_f_dim_cech(X, 2) == 1

    @pytest.mark.parametrize("text, p", QUARTICS)
    def test_agrees_with_tower_at_level_one(self, text, p):
        X = make_hypersurface(text, p)
        certificate = phi_tower(X, 1)
        kernel = ker_f_dim_cech(X, 1)

        if certificate.verdict is Verdict.EXACT:
            assert kernel == 0
        else:
            assert kernel == 1

    @pytest.mark.slow
    @pytest.mark.parametrize("text, p", QUARTICS)
    def test_agrees_with_tower_at_level_two(self, text, p):
        X = make_hypersurface(text, p)
        certificate = phi_tower(X, 2)
        # h = 1, 2 or at least 3
        h = certificate.height if certificate.verdict is Verdict.EXACT else certificate.bound

        assert ker_f_dim_cech(X, 2) == min(2, h - 1)

    @pytest.mark.slow
    def test_fermat_quartic_mod_3(self):
        X = make_hypersurface(FERMAT_QUARTIC, 3)

        assert ker_f_dim_cech(X, 2) == 2


class TestSerreMap:
    @pytest.mark.parametrize("p", (2, 3, 5))
    def test_verschiebung_compatibility(self, p, rng):
        field = field_make(p)
        variables = ("x0", "x1", "x2")
        zero = LaurentPoly.zero(field, variables)

        def random_section():
            exponent = [rng.randrange(-3, 4) for _ in variables]
            return LaurentPoly.monomial(field, variables, exponent, rng.randrange(1, p))

        for _ in range(35):
            i = rng.randrange(1, 4)
            w = tuple(random_section() for _ in range(i))
            chart = rng.choice((None, 0, 1, 2))

            assert serre_D((zero,) + w, chart) == serre_D(w, chart)

    def test_first_level_is_exterior_derivative(self):
        field = field_make(3)
        a = LaurentPoly.monomial(field, ("x0", "x1"), (2, -1), 2)

        assert serre_D((a,)) == exterior_derivative(a)

    def test_invalid_input(self):
        with pytest.raises(ArityError):
            serre_D(())
        with pytest.raises(ArityError):
            serre_D((LaurentPoly.zero(field_make(2), ("x0",)),), chart=3)
