import itertools

import pytest

from brauerheight import witt
from brauerheight.core import IntPoly, IntegerModRing, field_make
from brauerheight.exceptions import WittError, WittLengthError
from brauerheight.witt import (
    WittRing,
    check_ring_laws,
    ghost_components,
    structural_polys,
    teichmuller,
    witt_add,
    witt_F,
    witt_from_int,
    witt_mul,
    witt_neg,
    witt_R,
    witt_sub,
    witt_V,
)

PRIMES = (2, 3, 5)


def random_vector(ring, rng):
    return ring([ring.base.element(rng.randrange(ring.base.order)) for _ in range(ring.length)])


def times_p(a):
    """``(0, a_0^p, ..., a_{n-2}^p)``, the closed form of p * a over F_q."""
    ring = a.parent
    tail = [x**ring.p for x in a.components[:-1]]
    return ring([ring.base.zero] + tail)


class TestStructuralPolys:
    def test_sum_of_length_two(self):
        polys = structural_polys(3, 2)
        x0, y0 = (IntPoly.variable(polys.variables, i) for i in (0, 1))

        assert polys.S[0] == x0 + y0
        assert polys.S[1].coefficient((2, 1, 0, 0)) == -1
        assert polys.S[1].coefficient((1, 2, 0, 0)) == -1

    def test_difference_inverts_sum(self):
        F = field_make(2)
        ring = WittRing(F, 3, fast=False)
        a = ring([1, 1, 0])
        b = ring([1, 0, 1])

        assert witt_sub(witt_add(a, b), b) == a

    def test_cap(self):
        with pytest.raises(WittLengthError) as info:
            structural_polys(2, witt.DEFAULT_LENGTH_CAP + 1)

        assert info.value.cap == witt.DEFAULT_LENGTH_CAP

    def test_disk_cache(self, monkeypatch, tmp_path):
        monkeypatch.setattr(witt, "_cache", {})
        monkeypatch.setitem(witt._settings, "cache_dir", str(tmp_path))

        derived = structural_polys(7, 2)
        assert (tmp_path / "witt-7-2.json").exists()

        monkeypatch.setattr(witt, "_cache", {})
        loaded = structural_polys(7, 2)

        assert loaded.S == derived.S
        assert loaded.P == derived.P


class TestWittRing:
    def test_two_in_w2_f3(self):
        ring = WittRing(field_make(3), 2)
        one = ring.one()

        assert (one + one).components == [2, 1]
        assert witt_from_int(2, ring) == one + one

    def test_two_in_w2_f2(self):
        ring = WittRing(field_make(2), 2)

        assert witt_from_int(2, ring) == ring([0, 1])
        assert witt_from_int(4, ring) == ring.zero()

    def test_mixed_rings(self):
        F = field_make(3)
        with pytest.raises(WittError):
            witt_add(WittRing(F, 2).one(), WittRing(F, 3).one())

    def test_short_restriction(self):
        with pytest.raises(WittError):
            witt_R(WittRing(field_make(5), 1).one())

    def test_teichmuller_is_multiplicative(self):
        F = field_make(3, 2)
        ring = WittRing(F, 3)
        x, y = F.gen, F.gen + 2

        assert teichmuller(x, ring) * teichmuller(y, ring) == teichmuller(x * y, ring)

    @pytest.mark.parametrize("p", PRIMES)
    def test_ring_axioms(self, p, rng):
        for d, n in itertools.product((1, 2), range(1, 5)):
            ring = WittRing(field_make(p, d), n)
            for _ in range(20):
                a, b, c = (random_vector(ring, rng) for _ in range(3))

                assert a + b == b + a
                assert a * b == b * a
                assert (a + b) + c == a + (b + c)
                assert (a * b) * c == a * (b * c)
                assert a * (b + c) == a * b + a * c
                assert a + witt_neg(a) == ring.zero()
                assert a * ring.one() == a

    @pytest.mark.parametrize("p", PRIMES)
    def test_p_relations(self, p, rng):
        for d, n in itertools.product((1, 2), range(2, 5)):
            ring = WittRing(field_make(p, d), n)
            p_in_ring = witt_from_int(p, ring)
            for _ in range(20):
                a = random_vector(ring, rng)
                expected = p_in_ring * a

                assert witt_R(witt_V(witt_F(a))) == expected
                assert witt_F(witt_V(witt_R(a))) == expected
                assert witt_R(witt_F(witt_V(a))) == expected
                assert times_p(a) == expected

    @pytest.mark.parametrize("p, d, n", [(2, 1, 3), (3, 1, 3), (2, 2, 3), (5, 1, 2), (3, 2, 2)])
    def test_galois_ring_matches_polynomials(self, p, d, n, rng):
        F = field_make(p, d)
        fast, slow = WittRing(F, n), WittRing(F, n, fast=False)
        for _ in range(25):
            a, b = random_vector(fast, rng), random_vector(fast, rng)
            sa, sb = slow(a.components), slow(b.components)

            assert (a + b).components == (sa + sb).components
            assert (a * b).components == (sa * sb).components
            assert (a - b).components == (sa - sb).components
            assert witt_neg(a).components == witt_neg(sa).components

    @pytest.mark.slow
    @pytest.mark.parametrize("p", PRIMES)
    def test_many_random_identities(self, p, rng):
        for _ in range(700):
            d, n = rng.choice((1, 2)), rng.randrange(1, 5)
            ring = WittRing(field_make(p, d), n)
            a, b, c = (random_vector(ring, rng) for _ in range(3))

            assert a * (b + c) == a * b + a * c
            assert (a * b) * c == a * (b * c)
            if n > 1:
                assert witt_R(witt_V(witt_F(a))) == witt_from_int(p, ring) * a


class TestCheckRingLaws:
    def test_laws_hold(self):
        report = check_ring_laws(WittRing(field_make(3, 2), 3), 200, seed=11)

        assert report.failures == 0
        assert report.checks == 200
        assert report.first_failure is None
        assert {"RVF", "FRV", "RFV", "polynomials"} <= set(report.laws)

    def test_seed_is_reproducible(self):
        ring = WittRing(field_make(2), 2)

        assert check_ring_laws(ring, 40, 5) == check_ring_laws(ring, 40, 5)
        assert check_ring_laws(ring, 40, 5).seed == 5

    def test_length_one_has_no_frobenius_relations(self):
        report = check_ring_laws(WittRing(field_make(5), 1, fast=False), 10, 0)

        assert "RVF" not in report.laws
        assert "polynomials" not in report.laws
        assert report.failures == 0

    def test_report_serialises(self):
        data = check_ring_laws(WittRing(field_make(2), 2), 8, 3).to_dict()

        assert data["seed"] == 3
        assert data["failures"] == 0
        assert "first_failure" not in data

    def test_rejects(self):
        with pytest.raises(WittError):
            check_ring_laws(WittRing(field_make(3), 2), -1, 0)
        with pytest.raises(WittError):
            check_ring_laws(WittRing(IntegerModRing(9), 2, 3), 5, 0)


class TestGhostComponents:
    def test_additive_over_integers(self):
        ring = WittRing(IntegerModRing(0), 3, p=2)
        a, b = ring([1, 2, -1]), ring([3, 0, 5])

        sums = [x + y for x, y in zip(ghost_components(a), ghost_components(b))]
        products = [x * y for x, y in zip(ghost_components(a), ghost_components(b))]

        assert ghost_components(witt_add(a, b)) == sums
        assert ghost_components(witt_mul(a, b)) == products

    def test_integer_image(self):
        ring = WittRing(IntegerModRing(0), 4, p=3)

        assert ghost_components(witt_from_int(7, ring)) == [7, 7, 7, 7]

    def test_modular_base(self):
        ring = WittRing(IntegerModRing(27), 2)

        assert ring.p == 3
        assert ghost_components(witt_from_int(5, ring)) == [5, 5]

    def test_prime_is_needed(self):
        with pytest.raises(WittError):
            WittRing(IntegerModRing(0), 2)
