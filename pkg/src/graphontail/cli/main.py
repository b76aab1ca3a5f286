# main.py - graphontail コマンドラインの入口

"""
src/graphontail/cli/main.py

定数表・相図曲線・ギャップ関数のデータ出力、対称性の証明書、破れの探索、
変分オラクル、モンテカルロ推定をサブコマンドとして公開します。

終了コード:
    0: 証明書が得られた／証拠が見つかった／正常終了
    2: 判定不能／証拠なし（科学的な結果であってエラーではない）
    64: 使い方の誤り
    65: 数値計算・予算・入出力の失敗
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Callable, Sequence

from pydantic import ValidationError

from graphontail.breaking.search import find_breaking, find_breaking_sparse
from graphontail.cli.config import OUTPUT_DIR_ENV, RunConfig, parse_override
from graphontail.cli.reporter import ProgressReporter
from graphontail.core.errors import GraphError, GraphontailError, ParameterError, UnknownIdentifierError
from graphontail.core.pubsub_base import disable_debug_logging, enable_debug_logging
from graphontail.empirics.montecarlo import estimates_to_csv, lower_tail_estimate, tail_curve
from graphontail.graphs.graph import Graph, graph_library, read_edge_list
from graphontail.phasecurves.constants import sparse_constants
from graphontail.phasecurves.emit import FIGURE_FILES, GridSpec, emit_curve, emit_figure_data
from graphontail.phasecurves.registry import CurveRegistry
from graphontail.store.settings import NumericsConfig
from graphontail.store.store import get_store, settings
from graphontail.symcheck.certificates import (
    lt_h_general_certificate,
    lt_h_k3_certificate,
    lt_k3_certificate,
    ut_k3_certificate,
)
from graphontail.varoracle.solver import parse_mode, solve_lt

logger = logging.getLogger("graphontail.cli")

EXIT_OK = 0
EXIT_NEGATIVE = 2
EXIT_USAGE = 64
EXIT_FAILURE = 65

CURVE_IDS = {
    "upper-q": "upper_q_curve",
    "lower-q": "lower_q_curve",
    "ut-boundary": "ut_boundary",
    "diagonal": "diagonal",
}

GAP_IDS = {
    "lt-k3": "lt_k3_gap",
    "ut-k3": "ut_k3_gap",
    "lt-h-k3": "lt_h_k3_gap",
    "h-exp": "h_exp_gap",
    "bip": "bip_gap",
    "bip-sparse": "bip_gap_sparse",
}


class _ArgumentParser(argparse.ArgumentParser):
    """使い方の誤りで終了コード 64 を返すパーサー。"""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def _require(args: argparse.Namespace, *names: str) -> dict[str, float]:
    missing = [name for name in names if getattr(args, name, None) is None]
    if missing:
        flags = ", ".join(f"--{name}" for name in missing)
        raise ParameterError(f"'{args.command}' needs {flags}")
    return {name: getattr(args, name) for name in names}


def _add_params(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--p", type=float, help="辺確率 p")
    parser.add_argument("--q", type=float, help="閾値 q")
    parser.add_argument("--r", type=float, help="疎極限の閾値 r")


def _add_grid(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--lo", type=float, help="区間の下端（既定: 関数の定義域）")
    parser.add_argument("--hi", type=float, help="区間の上端（既定: 関数の定義域）")
    parser.add_argument("--points", type=_positive_int, help="格子点数")
    parser.add_argument("--spacing", choices=["linear", "log", "mixed"], help="格子の間隔")
    parser.add_argument("--out", required=True, help="出力ファイル（.dat）")


def _add_graph(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--graph", help="辺リストファイル（1 行に 'u v'）")
    group.add_argument("--family", default="complete", help="グラフ族（既定: complete）")
    parser.add_argument("--size", type=_positive_int, default=3, help="族のサイズ（既定: 3）")
    parser.add_argument("--other", type=_positive_int, help="complete_bipartite の 2 つ目の部")


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="graphontail", description="グラフォンの下側裾の変分問題ツール")
    parser.add_argument("--threads", type=_positive_int, default=1, help="ワーカー数の上限")
    parser.add_argument("--seed", type=int, default=0, help="乱数シード")
    parser.add_argument(
        "--output-dir",
        type=Path,
        help=f"相対パスの出力先（既定: 環境変数 {OUTPUT_DIR_ENV} またはカレント）",
    )
    parser.add_argument("--set", action="append", default=[], metavar="KEY=VALUE", help="数値設定の上書き（例: oracle.restarts=40）")
    parser.add_argument("--verbose", action="store_true", help="デバッグログを表示")

    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("constants", help="r̄, r̲, r_trivial と r_m の表")

    curve = sub.add_parser("curve", help="相図の曲線を書き出す")
    curve.add_argument("--kind", required=True, choices=sorted(CURVE_IDS))
    _add_grid(curve)

    gap = sub.add_parser("gap", help="ギャップ関数を書き出す")
    gap.add_argument("--kind", required=True, choices=sorted(GAP_IDS))
    _add_params(gap)
    _add_grid(gap)

    check = sub.add_parser("check", help="対称性の証明書を調べる")
    check.add_argument("--problem", required=True, choices=["lt-k3", "ut-k3", "lt-h-k3", "lt-h"])
    _add_params(check)
    _add_graph(check)

    brk = sub.add_parser("break", help="BIP 族で対称性の破れを探す")
    brk.add_argument("--sparse", action="store_true", help="疎極限 LT(K_3, r)")
    _add_params(brk)

    figures = sub.add_parser("figures", help="図のデータファイルをまとめて書き出す")
    figures.add_argument("--dir", default=".", help="出力ディレクトリ（相対パスは --output-dir 基準）")
    figures.add_argument("--points", type=_positive_int, help="相図の曲線の点数")
    figures.add_argument("--only", nargs="+", choices=[f.name for f in FIGURE_FILES], help="書き出すファイル名")

    solve = sub.add_parser("solve", help="k ブロックの変分オラクル")
    _add_graph(solve)
    solve.add_argument("--mode", required=True, help="'sparse' または 'p=VALUE'")
    solve.add_argument("--target", type=float, required=True, help="q または r")
    solve.add_argument("--k", type=_positive_int, required=True, help="ブロック数")
    solve.add_argument("--restarts", type=_positive_int, help="スタート点の数")
    solve.add_argument("--out", help="JSON の出力先")

    simulate = sub.add_parser("simulate", help="G(n,p) の下側裾確率を推定")
    _add_graph(simulate)
    simulate.add_argument("--n", type=_positive_int, required=True)
    simulate.add_argument("--p", type=float, required=True)
    simulate.add_argument("--q", type=float, nargs="+", required=True)
    simulate.add_argument("--trials", type=_positive_int, required=True)
    simulate.add_argument("--seed", dest="sim_seed", type=int, help="試行のシード（既定: 全体の --seed）")
    simulate.add_argument("--oracle-k", type=int, default=4, help="予測に使うブロック数（0 で無効）")
    simulate.add_argument("--out", help="CSV の出力先")

    return parser


# --- サブコマンド --------------------------------------------------------


def _graph_from(args: argparse.Namespace) -> Graph:
    if args.graph:
        return read_edge_list(args.graph)
    return graph_library(args.family, args.size, args.other)


def _grid_from(args: argparse.Namespace) -> GridSpec:
    options = {"lo": args.lo, "hi": args.hi, "points": args.points, "spacing": args.spacing}
    return GridSpec(**{k: v for k, v in options.items() if v is not None})


def cmd_constants(args: argparse.Namespace, config: RunConfig) -> int:
    constants = sparse_constants()
    lines = [
        f"r_bar {constants.r_upper:.3f}",
        f"r_lower {constants.r_lower:.3f}",
        f"r_trivial {constants.r_trivial:.3f}",
    ]
    lines += [f"r_{m} {value:.3f}" for m, value in sorted(constants.r_m.items())]
    print("\n".join(lines))
    print(json.dumps(constants.model_dump(mode="json"), indent=2))
    return EXIT_OK


def cmd_curve(args: argparse.Namespace, config: RunConfig) -> int:
    path = config.resolve_output(args.out)
    path.parent.mkdir(parents=True, exist_ok=True)
    emit_curve(CURVE_IDS[args.kind], _grid_from(args), path)
    print(path)
    return EXIT_OK


def cmd_gap(args: argparse.Namespace, config: RunConfig) -> int:
    identifier = GAP_IDS[args.kind]
    params = _require(args, *CurveRegistry.get(identifier).params)
    path = config.resolve_output(args.out)
    path.parent.mkdir(parents=True, exist_ok=True)
    emit_curve(identifier, _grid_from(args), path, **params)
    print(path)
    return EXIT_OK


def cmd_figures(args: argparse.Namespace, config: RunConfig) -> int:
    names = set(args.only) if args.only else None
    for path in emit_figure_data(config.resolve_output(args.dir), args.points, names):
        print(path)
    return EXIT_OK


def cmd_check(args: argparse.Namespace, config: RunConfig) -> int:
    if args.problem == "lt-k3":
        certificate = lt_k3_certificate(**_require(args, "p", "q"))
    elif args.problem == "ut-k3":
        certificate = ut_k3_certificate(**_require(args, "p", "q"))
    elif args.problem == "lt-h-k3":
        certificate = lt_h_k3_certificate(**_require(args, "r"))
    else:
        certificate = lt_h_general_certificate(_graph_from(args), **_require(args, "r"))
    print(certificate.to_json(indent=2))
    return EXIT_OK if certificate.certified else EXIT_NEGATIVE


def cmd_break(args: argparse.Namespace, config: RunConfig) -> int:
    if args.sparse:
        witness = find_breaking_sparse(**_require(args, "r"))
    else:
        witness = find_breaking(**_require(args, "p", "q"))
    if witness is None:
        print("none")
        return EXIT_NEGATIVE
    print(witness.to_json(indent=2))
    return EXIT_OK


def cmd_solve(args: argparse.Namespace, config: RunConfig) -> int:
    opts = settings().oracle
    if args.restarts is not None:
        opts.restarts = args.restarts
    solution = solve_lt(_graph_from(args), parse_mode(args.mode), args.target, args.k, opts)
    text = solution.to_json(indent=2)
    if args.out:
        path = config.resolve_output(args.out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text + "\n", encoding="utf-8")
    print(text)
    return EXIT_OK


def cmd_simulate(args: argparse.Namespace, config: RunConfig) -> int:
    H = _graph_from(args)
    seed = config.seed if args.sim_seed is None else args.sim_seed
    oracle_k = args.oracle_k if args.oracle_k > 0 else None
    if len(args.q) == 1:
        estimates = [lower_tail_estimate(H, args.n, args.p, args.q[0], args.trials, seed, oracle_k)]
    else:
        estimates = tail_curve(H, args.n, args.p, args.q, args.trials, seed, oracle_k)
    path = None
    if args.out:
        path = config.resolve_output(args.out)
        path.parent.mkdir(parents=True, exist_ok=True)
    sys.stdout.write(estimates_to_csv(estimates, path))
    return EXIT_OK


HANDLERS: dict[str, Callable[[argparse.Namespace, RunConfig], int]] = {
    "constants": cmd_constants,
    "curve": cmd_curve,
    "gap": cmd_gap,
    "figures": cmd_figures,
    "check": cmd_check,
    "break": cmd_break,
    "solve": cmd_solve,
    "simulate": cmd_simulate,
}


def run(argv: Sequence[str] | None = None) -> int:
    """
    引数列を解釈してサブコマンドを実行し、終了コードを返す。

    数値設定の上書きは実行中だけ有効で、終了時に元に戻す。
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_OK

    try:
        options = {
            "command": args.command,
            "seed": args.seed,
            "threads": args.threads,
            "verbose": args.verbose,
            "overrides": dict(parse_override(item) for item in args.set),
        }
        if args.output_dir is not None:
            options["output_dir"] = args.output_dir
        config = RunConfig(**options)
    except (ParameterError, ValidationError) as exc:
        print(f"graphontail: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    if config.verbose:
        enable_debug_logging()

    store = get_store(NumericsConfig)
    snapshot = store.get_current_state()
    try:
        with ProgressReporter():
            config.apply(store)
            return HANDLERS[config.command](args, config)
    except (ParameterError, GraphError, UnknownIdentifierError, ValidationError) as exc:
        print(f"graphontail: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GraphontailError, OSError, ArithmeticError) as exc:
        logger.debug("command failed", exc_info=True)
        print(f"graphontail: failed: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    finally:
        store.replace_state(snapshot)
        if config.verbose:
            disable_debug_logging()


def main() -> None:
    sys.exit(run())
