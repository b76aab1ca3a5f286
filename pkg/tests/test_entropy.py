# test_entropy.py - I_p と h のテスト

import math

import numpy as np
import pytest
from pydantic import ValidationError

from graphontail.core.errors import DomainError, ParameterError
from graphontail.entropy.functions import EntropyFn, EntropyKind, relative_entropy, sparse_entropy


class TestRelativeEntropy:
    @pytest.mark.parametrize("p", [0.01, 0.3, 0.5, 0.9])
    def test_vanishes_at_p(self, p):
        assert relative_entropy(p, p) == pytest.approx(0.0, abs=1e-15)

    def test_endpoint_conventions(self):
        assert relative_entropy(0.5, 0.0) == pytest.approx(math.log(2.0))
        assert relative_entropy(0.3, 0.0) == pytest.approx(math.log(1 / 0.7))
        assert relative_entropy(0.3, 1.0) == pytest.approx(math.log(1 / 0.3))

    def test_second_derivative(self):
        assert relative_entropy(0.5, 0.5, order=2) == pytest.approx(4.0)

    def test_first_derivative_formula(self):
        p, x = 0.2, 0.35
        assert relative_entropy(p, x, order=1) == pytest.approx(math.log(x * (1 - p) / (p * (1 - x))))

    def test_vectorised(self):
        xs = np.array([0.0, 0.1, 0.5, 1.0])
        out = relative_entropy(0.1, xs)
        assert out.shape == xs.shape
        assert out[1] == 0.0

    def test_scalar_input_returns_float(self):
        assert isinstance(relative_entropy(0.1, 0.2), float)

    @pytest.mark.parametrize("p", [0.0, 1.0, -0.1])
    def test_rejects_bad_p(self, p):
        with pytest.raises(ParameterError):
            relative_entropy(p, 0.5)

    @pytest.mark.parametrize(("x", "order"), [(-0.1, 0), (1.1, 0), (0.0, 1), (1.0, 2)])
    def test_rejects_points_outside_domain(self, x, order):
        with pytest.raises(DomainError):
            relative_entropy(0.4, x, order=order)

    def test_monotone_on_each_side_of_p(self):
        p = 0.3
        left = relative_entropy(p, np.linspace(0.0, p, 200))
        right = relative_entropy(p, np.linspace(p, 1.0, 200))
        assert np.all(np.diff(left) < 0)
        assert np.all(np.diff(right) > 0)


class TestSparseEntropy:
    def test_examples(self):
        assert sparse_entropy(1.0) == 0.0
        assert sparse_entropy(0.0) == 1.0
        assert sparse_entropy(0.5) == pytest.approx(0.153426, abs=1e-6)

    def test_derivatives(self):
        assert sparse_entropy(0.25, order=1) == pytest.approx(math.log(0.25))
        assert sparse_entropy(0.25, order=2) == pytest.approx(4.0)

    def test_rejects_negative(self):
        with pytest.raises(DomainError):
            sparse_entropy(-1e-3)
        with pytest.raises(DomainError):
            sparse_entropy(0.0, order=1)

    def test_scaling_identity(self, rng):
        s = rng.uniform(1e-3, 1.0, size=500)
        x = rng.uniform(1e-3, 1.0, size=500)
        lhs = sparse_entropy(s * x)
        rhs = s * sparse_entropy(x) + s * np.log(s) * x - s + 1.0
        np.testing.assert_allclose(lhs, rhs, rtol=0, atol=1e-12)

    def test_sparse_limit_of_relative_entropy(self):
        xs = np.linspace(0.0, 1.0, 1001)
        errors = [np.max(np.abs(relative_entropy(p, p * xs) / p - sparse_entropy(xs))) for p in (1e-2, 1e-3, 1e-4)]
        assert errors[0] > errors[1] > errors[2]
        assert errors[2] < 1e-3


class TestConvexity:
    @pytest.mark.parametrize("fn", [EntropyFn.finite_p(0.2), EntropyFn.sparse()], ids=str)
    def test_derivatives_agree_with_finite_differences(self, fn):
        xs = np.linspace(0.05, 0.95, 91)
        eps = 1e-6
        first = fn.derivative(1)
        second = fn.derivative(2)
        fd = (first(xs + eps) - first(xs - eps)) / (2 * eps)
        np.testing.assert_allclose(fd, second(xs), rtol=1e-6)
        assert np.all(second(xs) > 0)
        fd0 = (fn(xs + eps) - fn(xs - eps)) / (2 * eps)
        np.testing.assert_allclose(fd0, first(xs), rtol=1e-5, atol=1e-8)


class TestEntropyFn:
    def test_dispatch(self):
        assert EntropyFn.finite_p(0.4)(0.1) == relative_entropy(0.4, 0.1)
        assert EntropyFn.sparse()(0.1) == sparse_entropy(0.1)

    def test_upper_bound(self):
        assert EntropyFn.finite_p(0.4).upper_bound == 0.4
        assert EntropyFn.sparse().upper_bound == 1.0

    def test_finite_p_requires_p(self):
        with pytest.raises(ValidationError):
            EntropyFn(kind=EntropyKind.FINITE_P)
        with pytest.raises(ValidationError):
            EntropyFn(kind=EntropyKind.SPARSE, p=0.5)

    def test_str(self):
        assert str(EntropyFn.sparse(order=1)) == "h'"
