"""
Командная строка GRIDSTORE: python -m app.cli <команда> ...

Любая ошибка предметной области печатается одной JSON-строкой в stderr,
код выхода 1.
"""
import argparse
import csv
import json
import logging
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import IO, Iterator, Optional, Sequence

from pydantic import BaseModel, ValidationError

from app.core.config import settings
from app.core.exceptions import StorageError
from app.core.logging import setup_logging
from app.models.grid import GridSpec
from app.models.plan import Algorithm
from app.schemas.bench import BenchConfig
from app.schemas.instance import InstanceFile, MetricsRead, PlanFile
from app.schemas.oracle import CharacterizationRead, FeasibilityRead
from app.services.bench import (
    density_curve,
    generate_instance,
    run_benchmark,
    write_bench_csv,
    write_density_csv,
)
from app.services.executor import execute_plan
from app.services.oracle import brute_force_feasible, exhaustive_characterization
from app.services.registry import plan_instance
from app.services.trace import export_trace, write_trace

logger = logging.getLogger("app.cli")


class InvalidFile(Exception):
    """Файл не читается или не проходит валидацию"""


@contextmanager
def _output(path: Optional[Path]) -> Iterator[IO[str]]:
    if path is None:
        yield sys.stdout
    else:
        with path.open("w", encoding="utf-8", newline="") as stream:
            yield stream


def _read_model(path: Path, model: type[BaseModel]):
    try:
        return model.model_validate_json(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise InvalidFile(f"{path}: {exc.strerror}") from exc
    except ValidationError as exc:
        raise InvalidFile(f"{path}: {exc.error_count()} ошибок валидации") from exc


def _csv_list(value: str) -> list[str]:
    return [part.strip() for part in value.split(",") if part.strip()]


# ===== КОМАНДЫ =====

def cmd_plan(args: argparse.Namespace) -> None:
    instance = _read_model(args.instance, InstanceFile).to_domain()
    outcome = plan_instance(instance, Algorithm(args.algo), budget=args.budget)
    metrics = execute_plan(instance, outcome.plan)
    with _output(args.out) as stream:
        stream.write(PlanFile.from_domain(outcome.plan).model_dump_json(indent=1) + "\n")
    if args.out is not None:
        print(MetricsRead.from_metrics(metrics).model_dump_json())
    logger.info("План %s: %d действий", outcome.algorithm.value, metrics.total_actions)


def cmd_validate(args: argparse.Namespace) -> None:
    instance = _read_model(args.instance, InstanceFile).to_domain()
    plan = _read_model(args.plan, PlanFile).to_domain()
    metrics = execute_plan(instance, plan)
    print(MetricsRead.from_metrics(metrics).model_dump_json())


def cmd_generate(args: argparse.Namespace) -> None:
    grid = GridSpec(args.rows, args.cols)
    n = args.n if args.n is not None else grid.capacity
    instance = generate_instance(grid, n, args.seed)
    with _output(args.out) as stream:
        data = InstanceFile.from_domain(instance).model_dump_json(exclude_none=True)
        stream.write(data + "\n")


def cmd_bench(args: argparse.Namespace) -> None:
    try:
        config = BenchConfig(
            sizes=[int(x) for x in _csv_list(args.sizes)],
            seeds_per_size=args.seeds,
            algorithms=_csv_list(args.algos),
            seed_base=args.seed,
            workers=args.workers,
            online_budget=args.budget,
        )
    except (ValueError, ValidationError) as exc:
        raise InvalidFile(f"Некорректные параметры бенчмарка: {exc}") from exc
    rows = run_benchmark(config)
    with _output(args.out) as stream:
        write_bench_csv(rows, stream)


def cmd_oracle(args: argparse.Namespace) -> None:
    instance = _read_model(args.instance, InstanceFile).to_domain()
    result = brute_force_feasible(instance)
    print(FeasibilityRead.from_result(result).model_dump_json())


def cmd_characterize(args: argparse.Namespace) -> None:
    report = exhaustive_characterization(args.rows, args.cols, workers=args.workers)
    if args.out is None:
        print(CharacterizationRead.from_report(report).model_dump_json())
        return
    with _output(args.out) as stream:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(["r", "c", "total", "infeasible"])
        writer.writerow([report.rows, report.cols, report.total, report.infeasible])


def cmd_density_curve(args: argparse.Namespace) -> None:
    with _output(args.out) as stream:
        write_density_csv(density_curve(args.max_budget), stream)


def cmd_trace(args: argparse.Namespace) -> None:
    instance = _read_model(args.instance, InstanceFile).to_domain()
    plan = _read_model(args.plan, PlanFile).to_domain()
    records = export_trace(instance, plan)
    with _output(args.out) as stream:
        write_trace(records, stream)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gridstore",
        description="Планирование хранения и выдачи грузов на сетке",
    )
    parser.add_argument("--log-level", default=settings.log_level, help="Уровень логирования")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("plan", help="Построить план")
    p.add_argument("--algo", choices=[a.value for a in Algorithm], default=Algorithm.AUTO.value)
    p.add_argument("--instance", type=Path, required=True)
    p.add_argument("--out", type=Path)
    p.add_argument("--budget", type=int, help="Бюджет действий для онлайн-политики")
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("validate", help="Исполнить план и вывести метрики")
    p.add_argument("--instance", type=Path, required=True)
    p.add_argument("--plan", type=Path, required=True)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("generate", help="Случайный экземпляр")
    p.add_argument("--rows", type=int, required=True)
    p.add_argument("--cols", type=int, required=True)
    p.add_argument("--n", type=int, help="Число грузов (по умолчанию r·c)")
    p.add_argument("--seed", type=int, default=settings.bench_seed_base)
    p.add_argument("--out", type=Path)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("bench", help="Сравнительный бенчмарк")
    p.add_argument("--sizes", default="10,15")
    p.add_argument("--seeds", type=int, default=settings.bench_seeds_per_size)
    p.add_argument("--algos", default="offline,baseline")
    p.add_argument("--seed", type=int, default=settings.bench_seed_base, help="База сидов")
    p.add_argument("--workers", type=int, default=settings.bench_workers)
    p.add_argument("--budget", type=int, default=settings.online_bench_budget)
    p.add_argument("--out", type=Path)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("oracle", help="Проверить существование плана без перестановок")
    p.add_argument("--instance", type=Path, required=True)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("characterize", help="Перебрать все порядки прибытия")
    p.add_argument("--rows", type=int, required=True)
    p.add_argument("--cols", type=int, required=True)
    p.add_argument("--workers", type=int, default=settings.bench_workers)
    p.add_argument("--out", type=Path)
    p.set_defaults(func=cmd_characterize)

    p = sub.add_parser("density-curve", help="Кривая плотности по бюджету действий")
    p.add_argument("--max-budget", type=int, default=9)
    p.add_argument("--out", type=Path)
    p.set_defaults(func=cmd_density_curve)

    p = sub.add_parser("trace", help="Трасса исполнения плана (JSON Lines)")
    p.add_argument("--instance", type=Path, required=True)
    p.add_argument("--plan", type=Path, required=True)
    p.add_argument("--out", type=Path)
    p.set_defaults(func=cmd_trace)

    return parser


def _report(record: dict) -> None:
    sys.stderr.write(json.dumps(record, ensure_ascii=False) + "\n")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(args.log_level)
    try:
        args.func(args)
    except StorageError as exc:
        _report(exc.to_dict())
        return 1
    except InvalidFile as exc:
        _report({"error": "InvalidFile", "message": str(exc)})
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
