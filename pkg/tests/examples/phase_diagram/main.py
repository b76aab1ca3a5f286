"""
graphontail 相図デモ

三角形の下側裾について、相境界曲線・ギャップ関数・オラクル解をまとめて
書き出す小さなスクリプト。出力先は第 1 引数（既定: ./phase_diagram_out）。

    python tests/examples/phase_diagram/main.py out/
"""

import logging
import sys
from pathlib import Path

from graphontail import (
    EntropyFn,
    emit_figure_data,
    find_breaking_sparse,
    graph_library,
    lt_h_k3_certificate,
    solve_lt,
    sparse_constants,
)
from graphontail.cli.reporter import ProgressReporter

logging.basicConfig(level=logging.INFO, format="%(name)s - %(message)s")


def main(out_dir: Path) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    K3 = graph_library("complete", 3)

    with ProgressReporter() as reporter:
        constants = sparse_constants()
        print(f"r_bar={constants.r_upper:.4f}  r_lower={constants.r_lower:.4f}  r_trivial={constants.r_trivial:.4f}")

        # 相図の曲線と各図のギャップ関数（plot-*.dat）
        for path in emit_figure_data(out_dir, points=120):
            print(path.name)

        # 疎極限の三角形下側裾: 証明書・破れ・オラクルの突き合わせ
        for r in (0.15, 0.3, 0.5, 0.8):
            certificate = lt_h_k3_certificate(r)
            witness = find_breaking_sparse(r)
            solution = solve_lt(K3, EntropyFn.sparse(), r, 4)
            print(
                f"r={r}: {certificate.verdict.value:<12} "
                f"witness={'none' if witness is None else witness.kind:<10} "
                f"oracle={solution.objective:.6f}  constant={solution.constant_objective:.6f}"
            )

    print(f"events: {dict(reporter.counts)}")


if __name__ == "__main__":
    main(Path(sys.argv[1]) if len(sys.argv) > 1 else Path("phase_diagram_out"))
