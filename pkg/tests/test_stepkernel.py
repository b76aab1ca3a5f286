# test_stepkernel.py - ステップカーネル・準同型密度・汎関数微分のテスト

import math

import numpy as np
import pytest
from pydantic import ValidationError

from conftest import random_graphon, random_kernel, random_measures, random_symmetric
from graphontail.core.errors import BudgetExceededError, DomainError, ParameterError
from graphontail.entropy.functions import EntropyFn
from graphontail.graphs.graph import graph_library
from graphontail.stepkernel.density import density, expect, functional_derivative, pointwise_map
from graphontail.stepkernel.kernel import (
    StepGraphon,
    StepKernel,
    as_graphon,
    bip,
    combine,
    common_refinement,
    constant,
    constant_kernel,
    permute_blocks,
    refine_uniform,
    split_block,
)
from graphontail.store.settings import NumericsConfig
from graphontail.store.store import get_store

K23 = graph_library("complete_bipartite", 2, 3)


def _weighted_mean(D: StepKernel, W: StepKernel) -> float:
    """E[D·W]（D と W は同じブロック）。"""
    return float(W.measures @ (D.values * W.values) @ W.measures)


class TestStepKernel:
    def test_measures_must_sum_to_one(self):
        with pytest.raises(ValidationError):
            StepKernel(measures=[0.5, 0.6], values=[[0, 0], [0, 0]])

    def test_measures_must_be_positive(self):
        with pytest.raises(ValidationError):
            StepKernel(measures=[1.0, 0.0], values=[[0, 0], [0, 0]])

    def test_measure_tolerance_follows_settings(self):
        measures = [0.5, 0.5 + 1e-9]
        with pytest.raises(ValidationError):
            StepKernel(measures=measures, values=[[0, 0], [0, 0]])
        get_store(NumericsConfig).update_state("measure_tol", 1e-8)
        assert StepKernel(measures=measures, values=[[0, 0], [0, 0]]).k == 2

    def test_values_must_be_symmetric(self):
        with pytest.raises(ValidationError):
            StepKernel(measures=[0.5, 0.5], values=[[0, 1], [0.5, 0]])

    def test_graphon_range(self):
        with pytest.raises(ValidationError):
            StepGraphon(measures=[1.0], values=[[1.5]])
        with pytest.raises(ParameterError):
            as_graphon(constant_kernel(-0.1))

    def test_arrays_are_read_only(self):
        W = bip(0.2, 0.4)
        with pytest.raises(ValueError):
            W.values[0, 0] = 1.0

    def test_json_format(self):
        W = bip(0.25, 0.5)
        assert W.to_json() == '{"measures": [0.5, 0.5], "values": [[0.25, 0.5], [0.5, 0.25]]}'
        assert StepGraphon.from_json(W.to_json()) == W

    def test_uniform_constructor(self):
        W = StepGraphon.uniform(np.full((4, 4), 0.3))
        assert W.k == 4
        np.testing.assert_allclose(W.block_measures, 0.25)


class TestDensity:
    def test_constant(self, K3):
        assert density(K3, constant(0.5)) == pytest.approx(0.125, abs=1e-15)

    def test_bip(self, K3):
        assert density(K3, bip(0.2, 0.4)) == pytest.approx(0.026, abs=1e-15)

    def test_signed_kernel(self, star2):
        assert density(star2, constant_kernel(-0.3)) == pytest.approx(0.09, abs=1e-15)

    def test_isolated_vertex_does_not_change_density(self, K3):
        from graphontail.graphs.graph import Graph

        H = Graph(vertices=4, edges=K3.edges)
        W = bip(0.1, 0.7)
        assert density(H, W) == pytest.approx(density(K3, W), abs=1e-15)

    def test_budget_exceeded(self, K3):
        W = StepGraphon.uniform(np.full((10, 10), 0.5))
        with pytest.raises(BudgetExceededError):
            density(K3, W, budget=100)

    def test_permutation_and_split_invariance(self, rng, C5):
        for _ in range(50):
            W = random_graphon(rng)
            base = density(C5, W)
            perm = rng.permutation(W.k)
            assert density(C5, permute_blocks(W, perm)) == pytest.approx(base, abs=1e-13)
            assert density(C5, split_block(W, int(rng.integers(W.k)))) == pytest.approx(base, abs=1e-13)
            assert density(C5, refine_uniform(W, 2)) == pytest.approx(base, abs=1e-13)


class TestIdentities:
    def test_goodman_identity(self, rng, K3, star2):
        for _ in range(200):
            q = float(rng.uniform(0.0, 1.0))
            X = random_kernel(rng, 4, scale=q)
            plus = pointwise_map(X, lambda v: q + v)
            minus = pointwise_map(X, lambda v: q - v)
            lhs = density(K3, plus) + density(K3, minus)
            rhs = 2 * q**3 + 6 * q * density(star2, X)
            assert lhs == pytest.approx(rhs, abs=1e-12)

    def test_swap_identity(self, rng, K3):
        for a, b in rng.uniform(0.0, 1.0, size=(200, 2)):
            diff = density(K3, bip(a, b)) - density(K3, bip(b, a))
            assert diff == pytest.approx(0.25 * (a - b) ** 3, abs=1e-12)

    @pytest.mark.parametrize("name,size", [("complete", 3), ("cycle", 5), ("complete", 4)])
    def test_derivative_identity(self, rng, name, size):
        H = graph_library(name, size)
        for _ in range(200):
            W = random_graphon(rng)
            D = functional_derivative(H, W)
            assert _weighted_mean(D, W) == pytest.approx(H.edge_count * density(H, W), abs=1e-12)

    def test_cauchy_schwarz_step(self, rng, star2):
        for _ in range(100):
            X = random_kernel(rng, int(rng.integers(1, 6)))
            assert density(star2, X) >= expect(X, lambda v: v) ** 2 - 1e-14


class TestInequalities:
    @pytest.mark.parametrize("H", [graph_library("complete", 3), graph_library("cycle", 5), graph_library("complete", 4), K23], ids=str)
    def test_holder(self, rng, H):
        delta = H.max_degree
        for _ in range(200):
            W = random_graphon(rng)
            bound = expect(W, lambda v: v**delta) ** (H.edge_count / delta)
            assert density(H, W) <= bound + 1e-12

    def test_goodman_inequality(self, rng, K3):
        for _ in range(200):
            q = float(rng.uniform(0.0, 0.5))
            W = random_graphon(rng)
            U0 = random_graphon(rng)
            U = as_graphon(combine(U0, W, lambda u, w: np.maximum(u, 2 * q - w)))
            assert density(K3, W) + density(K3, U) >= 2 * q**3 - 1e-12

    @pytest.mark.parametrize("name,size", [("complete", 3), ("cycle", 5), ("star", 3)])
    def test_jensen_log(self, rng, name, size):
        H = graph_library(name, size)
        for _ in range(200):
            k = int(rng.integers(1, 6))
            W = StepGraphon(measures=random_measures(rng, k), values=random_symmetric(rng, k, 0.01, 1.0))
            t = density(H, W)
            assert expect(W, np.log) <= math.log(t) / H.edge_count + 1e-12


class TestFunctionalDerivative:
    def test_constant(self, K3):
        D = functional_derivative(K3, constant(0.5))
        np.testing.assert_allclose(D.values, [[0.75]])

    def test_single_edge(self, K2, rng):
        D = functional_derivative(K2, random_graphon(rng, 3))
        np.testing.assert_allclose(D.values, np.ones((3, 3)))

    def test_bip_weighted_mean(self, K3):
        W = bip(0.2, 0.4)
        assert _weighted_mean(functional_derivative(K3, W), W) == pytest.approx(0.078, abs=1e-15)

    def test_triangle_formula(self, K3, rng):
        W = random_graphon(rng, 4)
        mu, V = W.measures, W.values
        expected = 3 * (V * mu) @ V
        np.testing.assert_allclose(functional_derivative(K3, W).values, expected, atol=1e-14)

    @pytest.mark.parametrize("name,size", [("complete", 3), ("cycle", 5)])
    def test_first_order_expansion(self, rng, name, size):
        H = graph_library(name, size)
        delta = 1e-4
        for _ in range(50):
            k = int(rng.integers(1, 5))
            W = StepGraphon(measures=random_measures(rng, k), values=random_symmetric(rng, k, 0.3, 1.0))
            U = StepGraphon(measures=random_measures(rng, 3), values=random_symmetric(rng, 3, 0.0, 0.5))
            shifted = combine(W, U, lambda w, u: w + delta * u)
            first_order = delta * expect(combine(functional_derivative(H, W), U, np.multiply), lambda v: v)
            change = density(H, shifted) - density(H, W)
            assert abs(change - first_order) <= 1e-3 * abs(first_order)


class TestPointwise:
    def test_positive_part(self):
        q = 0.3
        V = pointwise_map(bip(0.2, 0.8), lambda w: np.maximum(2 * q - w, 0.0))
        np.testing.assert_allclose(V.values, [[0.4, 0.0], [0.0, 0.4]], atol=1e-15)

    def test_complement(self):
        np.testing.assert_allclose(pointwise_map(constant(0.3), lambda w: 1 - w).values, [[0.7]])

    def test_clamp(self):
        V = pointwise_map(constant_kernel(1.2), lambda w: np.clip(w, 0.0, 1.0))
        assert V.values[0, 0] == 1.0

    def test_scalar_only_function(self):
        V = pointwise_map(bip(0.2, 0.4), lambda w: max(w, 0.3))
        np.testing.assert_allclose(V.values, [[0.3, 0.4], [0.4, 0.3]])


class TestExpect:
    def test_entropy_of_constant(self):
        fn = EntropyFn.finite_p(0.2)
        assert expect(constant(0.05), fn) == pytest.approx(fn(0.05), abs=1e-15)

    def test_sparse_entropy_of_bip(self):
        assert expect(bip(0.0, 1.0), EntropyFn.sparse()) == pytest.approx(0.5)

    def test_log_of_constant(self):
        assert expect(constant(0.3), np.log) == pytest.approx(math.log(0.3))

    def test_log_zero_needs_convention(self):
        with pytest.raises(DomainError):
            expect(bip(0.0, 1.0), np.log)
        assert expect(bip(0.0, 1.0), np.log, allow_infinite=True) == -math.inf


class TestRefinement:
    def test_common_refinement(self):
        U = bip(0.1, 0.9)
        W = StepGraphon(measures=[0.25, 0.75], values=[[0.3, 0.6], [0.6, 0.2]])
        Ur, Wr = common_refinement(U, W)
        np.testing.assert_allclose(Ur.measures, [0.25, 0.25, 0.5])
        np.testing.assert_allclose(Wr.measures, Ur.measures)
        assert expect(Ur, lambda v: v) == pytest.approx(expect(U, lambda v: v))
        assert expect(Wr, lambda v: v) == pytest.approx(expect(W, lambda v: v))

    def test_combine_expectation_is_additive(self, rng):
        U, W = random_graphon(rng), random_graphon(rng)
        total = combine(U, W, np.add)
        ident = lambda v: v  # noqa: E731
        assert expect(total, ident) == pytest.approx(expect(U, ident) + expect(W, ident), abs=1e-14)
