import math

import mpmath as mp
import numpy as np
import pytest

from selberg_gas import specfun as sf

mp.mp.dps = 30


class TestLogGamma:
    def test_integer_anchors(self):
        assert abs(sf.log_gamma(1.0)) <= 1e-14
        assert abs(sf.log_gamma(0.5) - math.log(math.sqrt(math.pi))) <= 1e-14
        assert abs(sf.log_gamma(10.0) - math.log(362880.0)) <= 1e-13

    def test_relative_accuracy_across_range(self):
        rng = np.random.default_rng(2024)
        xs = np.concatenate([rng.uniform(1e-3, 2.0, 40),
                             rng.uniform(2.0, 200.0, 40),
                             rng.uniform(200.0, 1e6, 40)])
        for x in xs:
            ref = float(mp.loggamma(mp.mpf(float(x))))
            assert abs(sf.log_gamma(float(x)) - ref) <= 1e-13 * max(1.0, abs(ref))

    def test_domain(self):
        with pytest.raises(sf.DomainError):
            sf.log_gamma(0.0)
        with pytest.raises(sf.DomainError):
            sf.log_gamma(-1.5)


class TestBarnesG:
    def test_small_integers(self):
        # G(1..6) = 1, 1, 1, 2, 12, 288 through the functional equation
        targets = [1.0, 1.0, 1.0, 2.0, 12.0, 288.0]
        for k, target in enumerate(targets, start=1):
            assert math.exp(sf.log_barnes_g(float(k))) == pytest.approx(target, rel=1e-12)
        assert sf.log_barnes_g(4.0) == pytest.approx(math.log(2.0), abs=1e-12)
        assert math.exp(sf.log_barnes_g(7.0)) == pytest.approx(34560.0, rel=1e-12)

    def test_half_integer_anchor(self):
        # fourth power at 3/2 matches the 1.3069 rounding to its precision
        assert abs(4.0 * sf.log_barnes_g(1.5) - math.log(1.3069)) <= 5e-4

    def test_against_mpmath(self):
        for z in (0.2, 0.9, 1.3, 2.7, 5.5, 16.0, 33.3, 120.0):
            ref = float(mp.log(mp.barnesg(mp.mpf(z))))
            assert sf.log_barnes_g(z) == pytest.approx(ref, abs=5e-12, rel=1e-12)

    def test_functional_equation_property(self):
        rng = np.random.default_rng(7)
        for z in rng.uniform(0.1, 50.0, 200):
            z = float(z)
            lhs = sf.log_barnes_g(z + 1.0)
            rhs = sf.log_gamma(z) + sf.log_barnes_g(z)
            assert abs(lhs - rhs) <= 1e-11 * (1.0 + abs(lhs))

    def test_domain(self):
        with pytest.raises(sf.DomainError):
            sf.log_barnes_g(0.0)


class TestGauss2F1:
    def test_zero_argument(self):
        assert sf.hyp2f1(3.3, -1.2, 0.7, 0.0) == 1.0

    def test_log_closed_form(self):
        # 2F1(1,1;2;z) = -log(1-z)/z
        assert sf.hyp2f1(1.0, 1.0, 2.0, 0.5) == pytest.approx(2.0 * math.log(2.0),
                                                              rel=1e-14)

    def test_terminating_hand_sum(self):
        # three-term series at a = -2: 1 - 0.36 + (7/15)*0.09 = 0.682
        assert sf.hyp2f1(-2.0, 0.75, 1.25, 0.3) == pytest.approx(0.682, rel=1e-14)

    def test_against_mpmath(self):
        for (a, b, c, z) in ((0.25, 0.75, 1.25, 0.5), (-3.75, 0.75, 0.25, 0.9),
                             (1.6, -0.4, 2.2, -0.8), (0.25, 0.75, -0.75, 0.55)):
            ref = float(mp.hyp2f1(a, b, c, z))
            assert sf.hyp2f1(a, b, c, z) == pytest.approx(ref, rel=1e-11)

    def test_rejects_bad_inputs(self):
        with pytest.raises(sf.DomainError):
            sf.hyp2f1(0.5, 0.5, -1.0, 0.5)
        with pytest.raises(sf.DomainError):
            sf.hyp2f1(0.5, 0.5, 1.0, 1.5)
        with pytest.raises(sf.EvaluationError):
            sf.hyp2f1(0.5, 0.5, 1.0, 0.99)

    def test_contiguity_relations(self):
        # the two lower-parameter shifts used by the operator identities
        for k in range(1, 7):
            a = 0.25 - k
            for z in (0.1, 0.5, 0.9):
                f_m34 = sf.hyp2f1(a, 0.75, -0.75, z)
                f_14 = sf.hyp2f1(a, 0.75, 0.25, z)
                f_54 = sf.hyp2f1(a, 0.75, 1.25, z)
                f_54_up = sf.hyp2f1(a + 1.0, 0.75, 1.25, z)
                lhs1 = -3.0 / 16.0 * (1.0 - z) * f_m34
                rhs1 = ((6.0 - 4.0 * k) * z - 3.0) / 16.0 * f_14 - 0.5 * k * z * f_54
                assert lhs1 == pytest.approx(rhs1, abs=1e-10, rel=1e-10)
                lhs2 = -0.25 * f_14
                rhs2 = -k * f_54 - (0.25 - k) * f_54_up
                assert lhs2 == pytest.approx(rhs2, abs=1e-10, rel=1e-10)


class TestGegenbauer:
    def test_low_orders(self):
        assert sf.gegenbauer_quarter(0, -0.4) == 1.0
        assert sf.gegenbauer_quarter(1, 0.6) == pytest.approx(0.3, rel=1e-15)
        assert sf.gegenbauer_quarter(2, 1.0) == pytest.approx(0.375, rel=1e-14)

    def test_endpoint_identity(self):
        # C_j(1) = (1/2)_j / j!
        for j in range(13):
            expected = math.exp(sf.log_gamma(j + 0.5) - sf.log_gamma(0.5)
                                - sf.log_gamma(j + 1.0))
            assert sf.gegenbauer_quarter(j, 1.0) == pytest.approx(expected, rel=1e-12)

    def test_parity(self):
        rng = np.random.default_rng(11)
        for j in range(11):
            for x in rng.uniform(0.0, 1.0, 8):
                left = sf.gegenbauer_quarter(j, -float(x))
                right = (-1.0) ** j * sf.gegenbauer_quarter(j, float(x))
                assert abs(left - right) <= 1e-13 * (1.0 + abs(right))

    def test_table_matches_scalar(self):
        xs = np.linspace(-1.0, 1.0, 7)
        table = sf.gegenbauer_quarter_table(6, xs)
        for j in range(7):
            for i, x in enumerate(xs):
                assert table[j, i] == pytest.approx(sf.gegenbauer_quarter(j, float(x)),
                                                    rel=1e-13, abs=1e-14)

    def test_domain(self):
        with pytest.raises(sf.DomainError):
            sf.gegenbauer_quarter(-1, 0.5)
        with pytest.raises(sf.DomainError):
            sf.gegenbauer_quarter(2, 1.5)
