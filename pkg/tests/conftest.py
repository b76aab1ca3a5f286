# conftest.py - テスト共通のフィクスチャ

from __future__ import annotations

import numpy as np
import pytest

from graphontail.graphs.graph import graph_library
from graphontail.stepkernel.kernel import StepGraphon, StepKernel
from graphontail.store.settings import NumericsConfig, OracleOptions
from graphontail.store.store import get_store


@pytest.fixture(autouse=True)
def reset_settings():
    """各テストの後に数値設定を既定値へ戻す。"""
    yield
    get_store(NumericsConfig).reset()


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240601)


@pytest.fixture
def K2():
    return graph_library("complete", 2)


@pytest.fixture
def K3():
    return graph_library("complete", 3)


@pytest.fixture
def K4():
    return graph_library("complete", 4)


@pytest.fixture
def C5():
    return graph_library("cycle", 5)


@pytest.fixture
def star2():
    return graph_library("star", 2)


def random_measures(rng: np.random.Generator, k: int) -> np.ndarray:
    w = rng.uniform(0.2, 1.0, size=k)
    return w / w.sum()


def random_symmetric(rng: np.random.Generator, k: int, lo: float, hi: float) -> np.ndarray:
    U = rng.uniform(lo, hi, size=(k, k))
    return np.triu(U) + np.triu(U, 1).T


def random_graphon(rng: np.random.Generator, k: int | None = None) -> StepGraphon:
    k = k or int(rng.integers(1, 6))
    return StepGraphon(measures=random_measures(rng, k), values=random_symmetric(rng, k, 0.0, 1.0))


def random_kernel(rng: np.random.Generator, k: int, scale: float = 1.0) -> StepKernel:
    return StepKernel(measures=random_measures(rng, k), values=random_symmetric(rng, k, -scale, scale))


@pytest.fixture
def fast_oracle() -> OracleOptions:
    """小さいテスト用のオラクル設定。"""
    return OracleOptions(restarts=6, seed=0, max_outer=30, max_inner=500)
