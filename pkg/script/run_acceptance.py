"""
Script de Verificação da Matriz de Aceitação
============================================

Executa todas as desigualdades listadas em config/matrix.yaml, grava o
CSV de células e o resumo JSON, e exibe uma tabela por desigualdade.

Uso:
    python script/run_acceptance.py [caminho/para/matrix.yaml]
"""

import logging
import sys
import time
from pathlib import Path

PROJECT_ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(PROJECT_ROOT))

from config.settings import get_config  # noqa: E402
from src.experiments.engine import VerificationEngine  # noqa: E402
from src.experiments.matrix import load_matrix  # noqa: E402
from src.storage import write_bound_reports, write_json  # noqa: E402

logging.basicConfig(
    level=logging.INFO,
    format="%(asctime)s | %(name)s | %(levelname)s | %(message)s",
)
logger = logging.getLogger(__name__)


def run_acceptance(matrix_path: Path | None = None) -> bool:
    """Roda a matriz completa e retorna True se todas as cotas aplicáveis valem."""
    config = get_config()
    matrix = load_matrix(matrix_path)
    engine = VerificationEngine(config)

    start = time.perf_counter()
    reports = engine.run_matrix(matrix)
    elapsed = time.perf_counter() - start

    out_dir = config.output_dir
    write_bound_reports(reports, out_dir / f"acceptance_M{matrix.resolution}.csv")
    summary = engine.summarize(reports)
    write_json({"M": matrix.resolution, "seconds": round(elapsed, 1), "summary": summary}, out_dir / f"acceptance_M{matrix.resolution}.json")

    print(f"\n📊 MATRIZ DE ACEITAÇÃO (M={matrix.resolution})")
    print(f"{'=' * 72}")
    print(f"{'Cota':<8} {'Células':<9} {'Valem':<8} {'Falham':<8} {'Sem C':<8} {'Margem mín':<14} {'Razão sup':<10}")
    print("-" * 72)
    for name, stats in summary.items():
        ratio = "-" if stats["sup_ratio"] is None else f"{stats['sup_ratio']:.4f}"
        print(
            f"{name:<8} {stats['cells']:<9} {stats['holds']:<8} {stats['fails']:<8} "
            f"{stats['unchecked']:<8} {stats['min_margin']:<14.3e} {ratio:<10}"
        )
    print(f"{'=' * 72}")

    ok = engine.all_hold(reports)
    print(f"{'✅ Todas as cotas valem' if ok else '❌ Há células violadas'} ({elapsed:.1f} s)")
    return ok


if __name__ == "__main__":
    path = Path(sys.argv[1]) if len(sys.argv) > 1 else None
    sys.exit(0 if run_acceptance(path) else 1)
