# test_phasecurves.py - 相境界曲線・定数・データファイル出力のテスト

import math

import numpy as np
import pytest

from graphontail.breaking.search import critical_triple, find_breaking
from graphontail.core.errors import ParameterError, UnknownIdentifierError
from graphontail.entropy.functions import relative_entropy
from graphontail.phasecurves import (
    FIGURE_FILES,
    CurveKind,
    CurveRegistry,
    GridSpec,
    emit_curve,
    emit_figure_data,
    evaluate_curve,
    format_rows,
    lower_q_curve,
    r_bar,
    r_m,
    r_trivial,
    sample_curve,
    sparse_constants,
    upper_q_curve,
    ut_boundary_k3,
    ut_sparse_rate,
)
from graphontail.symcheck.certificates import lt_k3_certificate

TABLE = {3: 0.686, 4: 0.735, 5: 0.770, 6: 0.795, 7: 0.815, 8: 0.831, 9: 0.844, 10: 0.855, 20: 0.911, 100: 0.973}


class TestConstants:
    def test_r_bar(self):
        r = r_bar()
        assert r == pytest.approx(0.466, abs=1e-3)
        assert 1.5 * r * math.log(r) - r + 1.0 == pytest.approx(0.0, abs=1e-8)

    def test_r_trivial(self):
        assert r_trivial() == pytest.approx(0.186, abs=1e-3)

    def test_r_lower(self):
        assert critical_triple().r1 == pytest.approx(0.209, abs=1e-3)

    @pytest.mark.parametrize("m", sorted(TABLE))
    def test_r_m_table(self, m):
        assert r_m(m) == pytest.approx(TABLE[m], abs=5e-4)

    def test_r_m_increasing(self):
        values = [r_m(m) for m in sorted(TABLE)]
        assert all(b > a for a, b in zip(values, values[1:]))
        assert values[-1] < 1.0
        assert values[0] > 1.0 / math.e

    def test_r_m_invalid(self):
        with pytest.raises(ParameterError):
            r_m(0)

    def test_sparse_constants(self):
        constants = sparse_constants(ms=(3, 4))
        assert constants.r_trivial < constants.r_lower < constants.r_upper < 1.0
        assert set(constants.r_m) == {3, 4}


class TestUtSparseRate:
    @pytest.mark.parametrize("delta, expected", [(1.0, 2.0 / 3.0), (3.375, 2.25), (8.0, 4.0)])
    def test_values(self, delta, expected):
        assert ut_sparse_rate(delta) == pytest.approx(expected, rel=1e-12)

    def test_invalid(self):
        with pytest.raises(ParameterError):
            ut_sparse_rate(0.0)


class TestUtBoundary:
    def test_q_06(self):
        assert ut_boundary_k3(0.6) == pytest.approx(1.0 / (1.0 + 7.59375), abs=1e-9)

    def test_half_is_limit(self):
        assert ut_boundary_k3(0.5) == pytest.approx(1.0 / (1.0 + math.e**2), rel=1e-12)
        assert ut_boundary_k3(0.5 + 1e-7) == pytest.approx(ut_boundary_k3(0.5), abs=1e-6)

    @pytest.mark.parametrize("q", [0.3, 0.7, 0.9])
    def test_defining_equation(self, q):
        p = ut_boundary_k3(q)
        assert (1.0 + (1.0 / q - 1.0) ** (1.0 / (1.0 - 2.0 * q))) * p == pytest.approx(1.0, abs=1e-12)

    def test_invalid(self):
        with pytest.raises(ParameterError):
            ut_boundary_k3(1.0)


class TestLowerTailCurves:
    def test_upper_residual(self):
        q = upper_q_curve(0.3)
        residual = relative_entropy(0.3, q) + 0.5 * q * relative_entropy(0.3, q, 1)
        assert residual == pytest.approx(0.0, abs=1e-8)
        assert q <= 0.3

    @pytest.mark.parametrize("p", np.linspace(0.01, 0.5, 50).tolist())
    def test_upper_is_certificate_boundary(self, p):
        q = upper_q_curve(p)
        assert lt_k3_certificate(p, q + 1e-4).certified
        assert not lt_k3_certificate(p, q - 1e-3).certified

    def test_upper_above_half(self):
        q = upper_q_curve(0.7)
        assert 0.0 < q <= 0.7
        assert lt_k3_certificate(0.7, min(q + 1e-4, 0.7)).certified

    def test_upper_origin_slope(self):
        assert 0.465 <= upper_q_curve(0.001) / 0.001 <= 0.468

    def test_lower_at_01(self):
        q = lower_q_curve(0.1)
        assert q == pytest.approx(0.0215, abs=5e-4)
        assert find_breaking(0.1, q - 1e-4) is not None
        assert find_breaking(0.1, q + 1e-3) is None

    @pytest.mark.slow
    def test_lower_origin_slope(self):
        assert 0.205 <= lower_q_curve(0.001) / 0.001 <= 0.213

    @pytest.mark.slow
    @pytest.mark.parametrize("p", np.linspace(0.02, 0.5, 20).tolist())
    def test_lower_is_breaking_boundary(self, p):
        q = lower_q_curve(p)
        assert find_breaking(p, q - 1e-4) is not None
        assert find_breaking(p, q + 1e-3) is None

    @pytest.mark.slow
    @pytest.mark.parametrize("p", [0.05, 0.3, 0.6])
    def test_ordering(self, p):
        assert 0.0 < lower_q_curve(p) <= upper_q_curve(p) <= p

    def test_invalid(self):
        with pytest.raises(ParameterError):
            upper_q_curve(1.0)
        with pytest.raises(ParameterError):
            lower_q_curve(0.0)


class TestGridSpec:
    def test_linear(self):
        xs = GridSpec(lo=0.0, hi=1.0, points=5).resolve((0.0, 1.0))
        np.testing.assert_allclose(xs, [0.0, 0.25, 0.5, 0.75, 1.0])

    def test_mixed_is_increasing(self):
        xs = GridSpec(points=50, spacing="mixed").resolve((1e-3, 0.999))
        assert xs.size == 50
        assert np.all(np.diff(xs) > 0)
        assert xs[0] == pytest.approx(1e-3)
        assert xs[-1] == pytest.approx(0.999)

    def test_empty_interval(self):
        with pytest.raises(ParameterError):
            GridSpec(lo=0.5, hi=0.5).resolve((0.0, 1.0))


class TestEmit:
    def test_lt_k3_gap_file(self, tmp_path):
        path = emit_curve("lt_k3_gap", GridSpec(lo=0.0, hi=0.1, points=1000), tmp_path / "gap.dat", p=0.1, q=0.045)
        lines = path.read_text(encoding="ascii").splitlines()
        assert len(lines) == 1000
        rows = [tuple(map(float, line.split(" "))) for line in lines]
        xs = [x for x, _ in rows]
        assert xs == sorted(xs)
        assert rows[0][0] == 0.0
        # x = p で負、x = q の近くで 0
        assert rows[-1][1] < 0
        assert min(abs(y) for x, y in rows if abs(x - 0.045) < 1e-4) < 1e-6

    def test_bip_gap_sparse_near_critical(self):
        rows = evaluate_curve("bip_gap_sparse", GridSpec(points=400), r=0.209)
        minimum = min(y for _, y in rows)
        assert -1e-3 < minimum <= 1e-12

    @pytest.mark.parametrize("r, negative", [(0.2, True), (0.21, False)])
    def test_bip_gap_sparse_sign(self, r, negative):
        rows = evaluate_curve("bip_gap_sparse", GridSpec(points=10_000), r=r)
        assert any(y < -1e-12 for _, y in rows) is negative

    def test_ut_boundary_in_q_order(self):
        rows = evaluate_curve("ut-boundary", GridSpec(lo=0.2, hi=0.8, points=5))
        qs = [q for _, q in rows]
        assert qs == sorted(qs)
        assert rows[0] == (pytest.approx(ut_boundary_k3(0.2)), pytest.approx(0.2))

    def test_ut_boundary_is_not_monotone_in_p(self):
        # p(q) は山型なので x の昇順に並べ替えると曲線が折り返す
        assert ut_boundary_k3(0.2) < ut_boundary_k3(0.5)
        assert ut_boundary_k3(0.9) < ut_boundary_k3(0.5)

    def test_format(self):
        assert format_rows([(0.1, 2.0), (0.5, -1e-20)]) == "0.1 2.0\n0.5 -1e-20\n"

    def test_unknown_identifier(self, tmp_path):
        with pytest.raises(UnknownIdentifierError):
            emit_curve("c5_gap", None, tmp_path / "x.dat")

    def test_missing_parameter(self):
        with pytest.raises(ParameterError):
            evaluate_curve("lt_k3_gap", GridSpec(points=10), p=0.1)

    def test_unwritable(self, tmp_path):
        with pytest.raises(OSError):
            emit_curve("diagonal", GridSpec(points=3), tmp_path / "missing" / "d.dat")

    def test_registry_lists_everything(self):
        ids = {meta.id for meta in CurveRegistry.list()}
        assert {
            "lt_k3_gap",
            "ut_k3_gap",
            "lt_h_k3_gap",
            "h_exp_gap",
            "bip_gap",
            "bip_gap_sparse",
            "upper_q_curve",
            "lower_q_curve",
            "ut_boundary",
            "diagonal",
        } <= ids


class TestSampleCurve:
    def test_diagonal(self):
        curve = sample_curve(CurveKind.DIAGONAL, GridSpec(points=10))
        assert all(p == q for p, q in curve.samples)
        assert curve.tolerance == 0.0

    def test_upper(self):
        curve = sample_curve("upper_q", GridSpec(lo=0.05, hi=0.9, points=6, spacing="linear"))
        assert len(curve.samples) == 6
        assert all(0.0 < q <= p for p, q in curve.samples)


def _read(path):
    return [tuple(map(float, line.split(" "))) for line in path.read_text(encoding="ascii").splitlines()]


class TestFigureData:
    GAP_FILES = {
        "plot-K3sym045.dat",
        "plot-K3sym047.dat",
        "plot-K3sym05.dat",
        "plot-K3sym06.dat",
        "plot-K3brk021.dat",
        "plot-K3brk022.dat",
        "plot-K3hbrk2.dat",
        "plot-K3hbrk21.dat",
        "plot-Hsym5.dat",
        "plot-Hsym6.dat",
        "plot-Hsym7.dat",
    }

    def test_file_names(self):
        names = {figure.name for figure in FIGURE_FILES}
        assert {"plot-uppertailcurve.dat", "plot-lowersymcurve.dat", "plot-lowerbrkcurve.dat"} <= names
        assert self.GAP_FILES <= names
        for figure in FIGURE_FILES:
            CurveRegistry.get(figure.identifier)

    @pytest.fixture
    def gap_files(self, tmp_path):
        paths = emit_figure_data(tmp_path, names=self.GAP_FILES)
        return {path.name: _read(path) for path in paths}

    @pytest.mark.parametrize(
        "name, negative",
        [
            ("plot-K3sym045.dat", True),
            ("plot-K3sym047.dat", False),
            ("plot-K3sym05.dat", False),
            ("plot-K3sym06.dat", False),
            ("plot-K3brk021.dat", True),
            ("plot-K3brk022.dat", False),
            ("plot-K3hbrk2.dat", True),
            ("plot-K3hbrk21.dat", False),
        ],
    )
    def test_sign_patterns(self, gap_files, name, negative):
        rows = gap_files[name]
        assert len(rows) > 0
        xs = [x for x, _ in rows]
        assert xs == sorted(xs)
        assert any(y < -1e-12 for _, y in rows) is negative

    @pytest.mark.parametrize("name, r", [("plot-Hsym5.dat", 0.5), ("plot-Hsym6.dat", 0.6), ("plot-Hsym7.dat", 0.7)])
    def test_h_exp_crosses_once(self, gap_files, name, r):
        # 0 の近くでは負、r 以上では非負
        rows = gap_files[name]
        assert rows[0][1] < 0
        assert all(y >= -1e-12 for x, y in rows if x >= r)
        signs = [y >= -1e-12 for _, y in rows]
        assert signs == sorted(signs)

    def test_phase_curves(self, tmp_path):
        paths = emit_figure_data(
            tmp_path, points=8, names={"plot-uppertailcurve.dat", "plot-lowersymcurve.dat"}
        )
        assert [path.name for path in paths] == ["plot-uppertailcurve.dat", "plot-lowersymcurve.dat"]
        upper = _read(paths[1])
        assert len(upper) == 8
        assert all(0.0 < q <= p for p, q in upper)

    def test_unknown_name(self, tmp_path):
        with pytest.raises(ParameterError):
            emit_figure_data(tmp_path, names={"plot-K3sym99.dat"})
