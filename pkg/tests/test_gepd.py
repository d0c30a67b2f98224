import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate, stats

from epdist import DomainError, GepdParams, NumericalError, epd2, gepd
from conftest import central_diff

SHAPES = [
    (1.0, 0.001, 4.0),
    (0.0, 0.0, 2.0),
    (0.5, 1.0, 0.5, 0.2),
    (2.0, 0.0, 0.0, 1.0),
    (0.3, 2.0, 0.0, 0.5, 0.1),
    (1.0, 1.0, 1.0, 1.0, 1.0),
    (0.0, 0.0, 0.0, 0.0, 3.0),
]


class TestParams:
    @pytest.mark.parametrize("bad", [(), (0, 0), (1, -1), (np.nan,), (0, 0, 0)])
    def test_rejects(self, bad):
        with pytest.raises(DomainError):
            GepdParams(bad)

    def test_degree(self):
        assert GepdParams((1, 2, 0, 0)).degree == 2
        assert GepdParams((1, 2, 0, 0)).r == 4


class TestEvaluation:
    def test_examples(self):
        assert gepd.pdf((1, 0, 0), 0.37) == pytest.approx(1.0, abs=1e-15)
        assert gepd.pdf((0, 0, 2), math.exp(-1)) == pytest.approx(6 / math.e, abs=1e-12)
        assert gepd.cdf((0, 0, 2), math.exp(-1)) == pytest.approx(math.exp(-2), abs=1e-15)
        assert gepd.cdf((0.3, 2, 5), 1.0) == 1.0
        assert gepd.cdf((1, 0, 0, 0), 0.42) == pytest.approx(0.42, abs=1e-15)

    def test_pdf_is_cdf_derivative(self):
        h = 1e-6
        for c in SHAPES:
            t = np.linspace(0.02, 0.98, 49)
            fd = (gepd.cdf(c, t + h) - gepd.cdf(c, t - h)) / (2 * h)
            np.testing.assert_allclose(gepd.pdf(c, t), fd, rtol=1e-6, atol=1e-9)

    @pytest.mark.parametrize("params", [(1, 1), (0.5, 5), (3, 0.2)])
    def test_matches_epd2(self, params):
        t = np.linspace(0.001, 1, 500)
        for c in (params, params + (0.0,), params + (0.0, 0.0, 0.0)):
            assert np.max(np.abs(gepd.pdf(c, t) - epd2.pdf(params, t))) <= 1e-14
            assert np.max(np.abs(gepd.cdf(c, t) - epd2.cdf(params, t))) <= 1e-14
            assert np.max(np.abs(gepd.log_pdf(c, t) - epd2.log_pdf(params, t))) <= 1e-13

    @pytest.mark.parametrize("c", SHAPES)
    def test_integrates_to_one(self, c):
        val, _ = integrate.quad(lambda t: gepd.pdf(c, t), 0, 1, epsabs=1e-13, limit=400, points=[1e-6, 1e-3, 0.1])
        assert val == pytest.approx(1.0, abs=1e-8)

    def test_zero_alpha0_at_one(self):
        assert gepd.pdf((0, 1, 1), 1.0) == 0.0
        assert gepd.log_pdf((0, 1, 1), 1.0) == -np.inf

    def test_domain(self):
        for t in (0.0, 1.5, -1):
            with pytest.raises(DomainError):
                gepd.pdf((1, 1, 1), t)


class TestSampling:
    def test_examples(self):
        assert gepd.sample_from_u((0.3, 1, 2), 1.0) == 1.0
        assert gepd.sample_from_u((0, 0, 2), math.exp(-2)) == pytest.approx(math.exp(-1), abs=1e-12)
        u = np.linspace(0.01, 1, 100)
        np.testing.assert_array_equal(gepd.sample_from_u((1, 1, 0), u), epd2.sample((1, 1), u))

    def test_median(self):
        assert gepd.median((1, 0, 0)) == pytest.approx(0.5, abs=1e-14)
        assert gepd.median((0, 0, 2)) == pytest.approx(math.exp(-((math.log(2) / 2) ** (1 / 3))), abs=1e-12)
        assert gepd.median((0, 0, 2)) == pytest.approx(0.4954, abs=1e-3)
        assert gepd.median((2, 1)) == epd2.median((2, 1))
        for c in SHAPES:
            assert gepd.cdf(c, gepd.median(c)) == pytest.approx(0.5, abs=1e-10)

    @pytest.mark.parametrize("c", SHAPES)
    def test_roundtrip_and_monotone(self, c):
        u = np.linspace(1e-6, 1, 2000)
        t = gepd.sample_from_u(c, u)
        assert np.max(np.abs(gepd.cdf(c, t) - u)) <= 1e-10
        assert np.all(np.diff(t) >= 0)

    @settings(max_examples=100, deadline=None)
    @given(
        st.lists(st.floats(0, 10), min_size=2, max_size=5).filter(lambda c: any(x > 0.01 for x in c)),
        st.floats(1e-6, 1),
    )
    def test_roundtrip_property(self, c, u):
        assert abs(gepd.cdf(c, gepd.sample_from_u(c, u)) - u) <= 1e-10

    def test_ks(self):
        c = (1, 0.001, 4)
        x = gepd.sample_n(c, 5000, seed=2)
        assert stats.kstest(x, lambda t: gepd.cdf(c, t)).pvalue > 0.01

    def test_seeded(self):
        assert np.array_equal(gepd.sample_n((1, 2, 3), 50, 9), gepd.sample_n((1, 2, 3), 50, 9))


class TestMoments:
    def test_examples(self):
        assert gepd.moment_numeric((1, 0, 0), 1) == pytest.approx(0.5, abs=1e-12)
        for p in [(1, 1), (0.5, 25), (5, 0.1)]:
            for k in (1, 2, 3):
                assert abs(gepd.moment_numeric(p + (0,), k) - epd2.moment(p, k)) <= 1e-8

    def test_simpson_oracle(self):
        # fixed-grid Simpson of t * pdf(t) in the t domain, independent of the
        # integration-by-parts form used by moment_numeric
        t = np.linspace(1e-9, 1, 400001)
        ref = integrate.simpson(t * gepd.pdf((0, 0, 2), t), x=t)
        got, err = gepd.moment_numeric((0, 0, 2), 1, full_output=True)
        assert err <= 1e-9
        assert got == pytest.approx(ref, abs=1e-7)
        assert got == pytest.approx(0.5078, abs=1e-3)

    def test_order_checked(self):
        with pytest.raises(DomainError):
            gepd.moment_numeric((1, 1, 1), 0)

    def test_failure_is_typed(self, monkeypatch):
        monkeypatch.setattr(gepd.integrate, "quad", lambda *a, **k: (0.5, 1e-3))
        with pytest.raises(NumericalError) as exc:
            gepd.moment_numeric((1, 1, 1), 1)
        assert exc.value.diagnostics["abserr"] == 1e-3


class TestLikelihood:
    def test_examples(self):
        assert gepd.loglik((1, 0, 0), [0.2, 0.7]) == pytest.approx(0.0, abs=1e-14)
        assert gepd.loglik((0, 0, 2), [math.exp(-1)]) == pytest.approx(math.log(6 / math.e), abs=1e-12)
        data = epd2.sample_n((2, 1), 40, seed=1)
        assert gepd.loglik((2, 1), data) == pytest.approx(epd2.loglik((2, 1), data), rel=1e-13)
        np.testing.assert_allclose(gepd.score((2, 1), data), epd2.score((2, 1), data), rtol=1e-12)

    def test_matches_sum_of_log_pdf(self):
        data = gepd.sample_n((0.5, 1, 0.5, 0.2), 60, seed=4)
        c = (0.7, 0.2, 1.1, 0.05)
        assert gepd.loglik(c, data) == pytest.approx(np.sum(gepd.log_pdf(c, data)), rel=1e-12)

    def test_score_examples(self):
        assert gepd.score((1, 0, 0), [math.exp(-1)])[0] == pytest.approx(0.0, abs=1e-14)
        np.testing.assert_allclose(gepd.score((2.5, 0, 0), [1.0]), [0.4, 0, 0], atol=1e-15)
        assert gepd.hessian((1, 0), [math.exp(-1)])[0, 0] == pytest.approx(-1.0)

    def test_zero_alpha0_with_ones(self):
        with pytest.raises(DomainError):
            gepd.loglik((0, 1, 1), [0.5, 1.0])

    def test_derivatives(self, rng):
        for _ in range(30):
            r = int(rng.integers(2, 6))
            c = rng.uniform(0.2, 3, r)
            data = gepd.sample_n(c, 40, seed=int(rng.integers(1 << 30)))
            f = lambda x: gepd.loglik(x, data)  # noqa: E731
            np.testing.assert_allclose(gepd.score(c, data), central_diff(f, c, 1e-6), rtol=1e-6, atol=1e-5)
            H = gepd.hessian(c, data)
            fd = np.array([central_diff(lambda x: gepd.score(x, data)[i], c, 1e-6) for i in range(r)])
            np.testing.assert_allclose(H, fd, rtol=1e-5, atol=1e-5)
            assert np.allclose(H, H.T)
            assert np.all(np.diag(H) <= 0)
