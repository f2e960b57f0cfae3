import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from oracles import multiplicative_order, naive_valuation
from padic_orbits.linearization import (
    Gamma0Case,
    NoFixedPointError,
    RootOfUnityError,
    c2_parameter,
    distance_to_fixed_point,
    fixed_points,
    lemma54_claims,
    r_exponent,
    radius_lower_bound,
    translation_cascade,
    verify_c2,
)
from padic_orbits.orbits import OrbitInvariantError
from padic_orbits.padic import PAdicInt, PrecisionError


class TestFixedPoints:
    def test_minus_two(self):
        fp = fixed_points(PAdicInt(3, 20, -2))
        assert fp.x_plus.residue == 2
        assert fp.x_minus == PAdicInt(3, fp.x_minus.precision, -1)

    def test_zero(self):
        fp = fixed_points(PAdicInt(3, 20, 0))
        assert (fp.x_plus.residue, fp.x_minus.residue) == (1, 0)

    def test_roots_of_the_fixed_point_equation(self):
        for c in (-2, -2 + 27, -2 + 2 * 81, 6):
            cp = PAdicInt(3, 20, c)
            for x in fixed_points(cp):
                assert x * x - x + cp.reduce(x.precision) == 0

    def test_x_plus_is_two_mod_nine_near_minus_two(self):
        rng = random.Random(1)
        for _ in range(20):
            c = PAdicInt(3, 20, -2 + 27 * rng.randrange(3**17))
            assert fixed_points(c).x_plus.residue % 9 == 2

    def test_seven_has_no_fixed_point_in_z3(self):
        # brute force: z^2 - z + 7 has no root mod 3^10
        M = 3**10
        assert all((z * z - z + 7) % M for z in range(M))
        with pytest.raises(NoFixedPointError):
            fixed_points(PAdicInt(3, 20, 7))

    def test_p2_rejected(self):
        with pytest.raises(ValueError):
            fixed_points(PAdicInt(2, 10, 0))


class TestDistance:
    @pytest.mark.parametrize("k", [3, 4, 5, 6])
    def test_distance_is_k_minus_one(self, k):
        for l in (1, 2):
            c = c2_parameter(k, l, k + 10)
            dist, x = distance_to_fixed_point(c, c * c + c)
            assert x is not None and dist == k - 1
            # P(y) = (y - x)(y - x') and y - x' has valuation exactly 1 here
            y = (c.residue**2 + c.residue) % 3 ** (k + 10)
            assert naive_valuation(y * y - y + c.residue, 3) - 1 == k - 1

    @pytest.mark.parametrize("l", [1, 2])
    def test_level_two_is_one_step_out(self, l):
        # the fixed point near 2 may leave Z_3 at k = 2; either way the distance is 3^-1
        for seed in (None, 1, 2, 3):
            c = c2_parameter(2, l, 14, seed)
            dist, _ = distance_to_fixed_point(c, c * c + c)
            assert dist == 1

    def test_outside_z3_uses_half_valuation(self):
        c = PAdicInt(3, 20, 7)
        y = PAdicInt(3, 20, 1)
        dist, x = distance_to_fixed_point(c, y)
        assert x is None and dist == Fraction(naive_valuation(1 - 1 + 7, 3), 2)


class TestRadius:
    def test_multiplier_four_at_p3(self):
        r, params = radius_lower_bound(PAdicInt(3, 20, 4))
        assert r.exponent == Fraction(3, 2)
        assert params.gamma0_case is Gamma0Case.TRIVIAL and (params.m, params.s, params.t) == (1, 0, 0)

    def test_multiplier_four_at_p5(self):
        r, params = radius_lower_bound(PAdicInt(5, 20, 4))
        assert params.m == multiplicative_order(4, 5) == 2
        # R(1)/m + v(1 - 16)/m with every other term zero: 1/8 + 1/2
        assert r.exponent == Fraction(5, 8)

    def test_p2_boundary_is_indeterminate(self):
        r, params = radius_lower_bound(PAdicInt(2, 20, 3))
        assert r is None and params.gamma0_case is Gamma0Case.INDETERMINATE and params.s == 1

    @pytest.mark.parametrize("lam", [1, -1])
    def test_roots_of_unity(self, lam):
        with pytest.raises(RootOfUnityError):
            radius_lower_bound(PAdicInt(3, 20, lam))

    def test_too_close_to_one(self):
        with pytest.raises(ValueError):
            radius_lower_bound(PAdicInt(3, 20, 10))

    def test_non_unit(self):
        with pytest.raises(ValueError):
            radius_lower_bound(PAdicInt(3, 20, 3))

    def test_r_exponents(self):
        assert [r_exponent(s, 3) for s in range(3)] == [Fraction(3, 2), Fraction(1, 2), Fraction(1, 6)]

    @given(st.integers(0, 3**15))
    def test_constant_on_four_mod_nine(self, t):
        r, _ = radius_lower_bound(PAdicInt(3, 18, 4 + 9 * t))
        assert r.exponent == Fraction(3, 2)

    def test_to_dict(self):
        _, params = radius_lower_bound(PAdicInt(5, 20, 4))
        d = params.to_dict()
        assert d["gamma0_case"] == "Trivial" and d["v(1-lambda^m)"] == "1"


class TestC2:
    def test_parameter_digits(self):
        c = c2_parameter(3, 2, 8)
        assert c == PAdicInt(3, 8, -2 + 2 * 27)
        c = c2_parameter(3, 1, 12, seed=7)
        assert c.residue % 3**4 == (-2 + 27) % 3**4
        assert c2_parameter(3, 1, 12, seed=7) == c

    def test_parameter_validation(self):
        with pytest.raises(ValueError):
            c2_parameter(2, 3, 10)

    def test_cycle_triples_past_level_k(self):
        rep = verify_c2(3, 2, i_max=4)
        assert rep.orbit_ok and rep.in_disk and rep.passed
        assert [tuple(v.observed) for v in rep.verdicts] == [(2, 1)] * 3 + [(2, 3**i) for i in range(1, 5)]

    def test_level_two_orbits(self):
        for seed in (None, 1, 2):
            assert verify_c2(2, 1, seed=seed, i_max=6).orbit_ok

    def test_level_two_distance(self):
        rep = verify_c2(2, 1, i_max=5)
        assert rep.distance_val == 1 and not rep.in_disk

    def test_radius_near_minus_two(self):
        rep = verify_c2(4, 1, seed=3)
        assert rep.radius.exponent == Fraction(3, 2)

    def test_precision_guard(self):
        with pytest.raises(PrecisionError):
            verify_c2(3, 1, i_max=6, K=9)
        with pytest.raises(ValueError):
            verify_c2(1, 1)

    def test_to_dict(self):
        d = verify_c2(3, 1, i_max=2).to_dict()
        assert d["passed"] and d["radius_exponent"] == "3/2" and len(d["levels"]) == 5


def _lambdas(n, seed, precision=12):
    rng = random.Random(seed)
    return [PAdicInt(3, precision, 4 + 9 * rng.choice((1, 2)) + 27 * rng.randrange(3**9)) for _ in range(n)]


class TestCubingClaims:
    def test_multiplier_22(self):
        rows = lemma54_claims(PAdicInt(3, 12, 22), 10)
        assert all(r.claim1 and r.claim2 for r in rows)
        for n in range(1, 11):
            w = pow(22, 3 ** (n - 1))
            assert (w - 1) % 3**n == 0 and (w - 1) % 3 ** (n + 1) != 0

    def test_sampled_multipliers(self):
        for lam in _lambdas(20, seed=5):
            assert all(r.claim1 and r.claim2 for r in lemma54_claims(lam, 10))

    def test_rejects_other_classes(self):
        with pytest.raises(ValueError):
            lemma54_claims(PAdicInt(3, 12, 1), 5)
        with pytest.raises(ValueError):
            lemma54_claims(PAdicInt(5, 12, 4), 5)

    def test_precision_guard(self):
        with pytest.raises(PrecisionError):
            lemma54_claims(PAdicInt(3, 6, 22), 5)


class TestTranslationCascade:
    def test_multiplier_four(self):
        steps = translation_cascade(PAdicInt(3, 8, 4), PAdicInt(3, 8, 1), 5)
        assert [(s.n, s.level, s.a, s.b) for s in steps] == [(n, n, 1, 1) for n in range(1, 6)]

    @pytest.mark.parametrize("lam", _lambdas(10, seed=11, precision=8))
    def test_cycle_lengths(self, lam):
        # iterating z -> lam z on v mod 3^(j+n) closes up after exactly 3^(n-1) steps
        rng = random.Random(lam.residue)
        j = rng.randrange(3)
        v = 3**j * rng.choice((1, 2)) + 3 ** (j + 1) * rng.randrange(3**5)
        steps = translation_cascade(lam.reduce(7), PAdicInt(3, j + 7, v), 5)
        assert all(s.b in (1, 2) for s in steps)
        for n in range(1, 6):
            M = 3 ** (j + n)
            z, length = v * lam.residue % M, 1
            while z != v % M:
                z, length = z * lam.residue % M, length + 1
            assert length == 3 ** (n - 1)

    @pytest.mark.parametrize("v,n", [(3, 1), (18, 2)])
    def test_multiplier_thirteen(self, v, n):
        steps = translation_cascade(PAdicInt(3, 10, 13), PAdicInt(3, 10, v), n)
        assert steps[-1].a == 1 and steps[-1].b in (1, 2)

    def test_zero_vertex_rejected(self):
        with pytest.raises(ValueError):
            translation_cascade(PAdicInt(3, 8, 4), PAdicInt(3, 8, 0), 3)

    def test_non_translation_detected(self, monkeypatch):
        # a multiplier that fixes the vertex mod 3 cannot produce a translation
        import padic_orbits.linearization as lin

        monkeypatch.setattr(lin, "_check_lambda", lambda lam: None)
        with pytest.raises(OrbitInvariantError):
            translation_cascade(PAdicInt(3, 8, 1), PAdicInt(3, 8, 1), 2)
