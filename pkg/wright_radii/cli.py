#!/usr/bin/env python3
"""
Wright Radii - 命令行入口

子命令：
    zeros    定位 𝔚 与 Ψ' 的正零点（可缓存）
    radius   求半径（可选 --verify 采样验证）
    verify   求半径并输出验证报告
    sweep    在 β / γ / α / 参数网格上扫描，CSV 输出
    table    g, h 的幂级数系数
    lemmas   半径估计所用不等式的随机检验
    oracle   零点和路径与直接级数路径的一致性检查

机器输出（json / csv / plain）写到 stdout，日志写到 stderr
"""

import argparse
import csv
import io
import json
import math
import os
import sys
from typing import Any, Dict, Iterable, List, Optional, Sequence

from loguru import logger
from pydantic import BaseModel, ConfigDict, Field

from .config import get_settings
from .errors import (
    EXIT_INVALID_PROBLEM,
    EXIT_OK,
    EXIT_USAGE,
    EXIT_VERIFICATION_FAILED,
    WrightRadiiError,
    ZeroSearchFailure,
    exit_code_for,
)
from .models import Normalization, RadiusFamily, RadiusProblem, WrightParams
from .normalized_functions import series_coefficients
from .radii_solvers import solve_radius
from .sweep_scheduler import CSV_HEADER, SWEEP_AXES, SweepScheduler
from .utils import parse_grid_arg
from .verify import check_radius, cross_oracle_suite, lemma_inequality_suite
from .zero_cache import load_table

JSON_DIGITS = 15
PLAIN_DIGITS = 10
ORACLE_MIN_ZEROS = 50


class RunConfig(BaseModel):
    """一次 CLI 运行的公共配置"""

    model_config = ConfigDict(frozen=True)

    params: WrightParams
    tol: float = Field(gt=0)
    max_terms: int = Field(ge=1)
    zero_count: int = Field(ge=1)
    output_format: str = Field(pattern="^(json|csv|plain)$")
    seed: int = 42
    zero_cache: Optional[str] = None


class _Parser(argparse.ArgumentParser):
    """参数错误统一以 64 退出"""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------------------
# 参数类型
# ---------------------------------------------------------------------------


def positive_float(s: str) -> float:
    try:
        value = float(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"无效的数值: {s}")
    if not math.isfinite(value) or value <= 0:
        raise argparse.ArgumentTypeError(f"必须为正的有限数: {s}")
    return value


def positive_int(s: str) -> int:
    try:
        value = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"无效的整数: {s}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"必须为正整数: {s}")
    return value


def beta_value(s: str) -> float:
    value = positive_float(s)
    if value > 1.0:
        raise argparse.ArgumentTypeError(f"β 必须在 (0, 1] 内: {s}")
    return value


def gamma_value(s: str) -> float:
    try:
        value = float(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"无效的数值: {s}")
    if not (-math.pi / 2 < value < math.pi / 2):
        raise argparse.ArgumentTypeError(f"γ 必须在 (-π/2, π/2) 内: {s}")
    return value


def alpha_value(s: str) -> float:
    try:
        value = float(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"无效的数值: {s}")
    if not (0.0 <= value < 1.0):
        raise argparse.ArgumentTypeError(f"α 必须在 [0, 1) 内: {s}")
    return value


def eps_value(s: str) -> float:
    value = positive_float(s)
    if value >= 0.1:
        raise argparse.ArgumentTypeError(f"eps 必须在 (0, 0.1) 内: {s}")
    return value


# ---------------------------------------------------------------------------
# 输出
# ---------------------------------------------------------------------------


def _round_json(obj: Any) -> Any:
    """浮点数保留 15 位有效数字；非有限值写为 null"""
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return None
        return float(f"{obj:.{JSON_DIGITS}g}")
    if isinstance(obj, dict):
        return {k: _round_json(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_json(v) for v in obj]
    return obj


def _fmt(value: Any, digits: int) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.{digits}g}"
    if hasattr(value, "value"):
        return str(value.value)
    return str(value)


def _emit_json(payload: Any) -> None:
    sys.stdout.write(json.dumps(_round_json(payload), indent=2, ensure_ascii=False) + "\n")


def _emit_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v, JSON_DIGITS) for v in row])
    sys.stdout.write(buf.getvalue())


def _emit_plain(pairs: Iterable[Sequence[Any]]) -> None:
    for key, value in pairs:
        sys.stdout.write(f"{key}: {_fmt(value, PLAIN_DIGITS)}\n")


def _flatten(prefix: str, data: Dict) -> List[Sequence[Any]]:
    pairs: List[Sequence[Any]] = []
    for key, value in data.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            pairs.extend(_flatten(f"{name}.", value))
        elif isinstance(value, (list, tuple)) and value and not isinstance(value[0], dict):
            pairs.append((name, ", ".join(_fmt(v, PLAIN_DIGITS) for v in value)))
        elif isinstance(value, (list, tuple)):
            for i, item in enumerate(value):
                pairs.extend(_flatten(f"{name}[{i}].", item) if isinstance(item, dict) else [(f"{name}[{i}]", item)])
        else:
            pairs.append((name, value))
    return pairs


def _emit_model(cfg: RunConfig, data: Dict) -> None:
    """json 与 plain 输出通用；csv 输出为 key,value 两列"""
    if cfg.output_format == "json":
        _emit_json(data)
    elif cfg.output_format == "plain":
        _emit_plain(_flatten("", data))
    else:
        _emit_csv(("key", "value"), _flatten("", data))


# ---------------------------------------------------------------------------
# 子命令
# ---------------------------------------------------------------------------


def _table(cfg: RunConfig, count: Optional[int] = None):
    return load_table(cfg.params, count or cfg.zero_count, cfg.zero_cache)


def _problem(cfg: RunConfig, args) -> RadiusProblem:
    family = RadiusFamily(args.family)
    return RadiusProblem.build(
        family=family,
        norm=Normalization(args.norm),
        params=cfg.params,
        beta=args.beta,
        gamma=args.gamma,
        alpha=args.alpha,
    )


def cmd_zeros(cfg: RunConfig, args) -> int:
    count = args.count or cfg.zero_count
    t = _table(cfg, count)
    if cfg.output_format == "json":
        _emit_json(t.model_dump(mode="json"))
    elif cfg.output_format == "csv":
        _emit_csv(("n", "psi", "psi_deriv"), ((n + 1, t.psi[n], t.psi_deriv[n]) for n in range(t.count)))
    else:
        _emit_plain([(f"psi[{n + 1}]", z) for n, z in enumerate(t.psi)])
        _emit_plain([(f"psi_deriv[{n + 1}]", z) for n, z in enumerate(t.psi_deriv)])
    return EXIT_OK


def cmd_radius(cfg: RunConfig, args) -> int:
    prob = _problem(cfg, args)
    t = _table(cfg)
    res = solve_radius(prob, t, args.solver_tol)
    data: Dict[str, Any] = {"problem": prob.model_dump(mode="json"), "result": res.model_dump(mode="json")}
    code = EXIT_OK
    if args.verify:
        report = check_radius(prob, res, t, args.samples, args.eps)
        data["verification"] = report.model_dump(mode="json", exclude={"problem"})
        code = EXIT_OK if report.passed else EXIT_VERIFICATION_FAILED
    _emit_model(cfg, data)
    return code


def cmd_verify(cfg: RunConfig, args) -> int:
    args.verify = True
    return cmd_radius(cfg, args)


def cmd_sweep(cfg: RunConfig, args) -> int:
    base = {
        "mu": cfg.params.mu,
        "a": cfg.params.a,
        "nu": cfg.params.nu,
        "b": cfg.params.b,
        "family": RadiusFamily(args.family),
        "norm": Normalization(args.norm),
        "beta": args.beta,
        "gamma": args.gamma,
        "alpha": args.alpha,
    }
    points = SweepScheduler.build_points(base, args.over, args.grid)
    scheduler = SweepScheduler(
        table_provider=lambda p: load_table(p, cfg.zero_count, cfg.zero_cache),
        tol=args.solver_tol,
        verify=args.verify,
        n_samples=args.samples,
        eps=args.eps,
    )
    rows = scheduler.run(points)

    if cfg.output_format == "json":
        _emit_json([r.model_dump(mode="json") for r in rows])
    elif cfg.output_format == "csv":
        _emit_csv(
            CSV_HEADER,
            (
                [getattr(r, key) for key in CSV_HEADER[:9]]
                + ([r.radius, r.residual, r.verified] if r.ok else [math.nan, math.nan, False])
                for r in rows
            ),
        )
    else:
        for r in rows:
            value = _fmt(r.radius, PLAIN_DIGITS) if r.ok else r.error
            sys.stdout.write(f"{args.over}={_fmt(getattr(r, args.over), PLAIN_DIGITS)}: {value}\n")

    if all(not r.ok for r in rows):
        return rows[0].exit_code
    if args.verify and any(r.ok and r.verified is False for r in rows):
        return EXIT_VERIFICATION_FAILED
    return EXIT_OK


def cmd_table(cfg: RunConfig, args) -> int:
    norm = Normalization(args.norm)
    coeffs = series_coefficients(norm, cfg.params, args.terms)
    if cfg.output_format == "json":
        _emit_json(
            {
                "norm": norm.value,
                "params": cfg.params.model_dump(),
                "coefficients": [{"k": k, "power": power, "coefficient": c} for k, (power, c) in enumerate(coeffs)],
            }
        )
    elif cfg.output_format == "csv":
        _emit_csv(("k", "power", "coefficient"), ((k, power, c) for k, (power, c) in enumerate(coeffs)))
    else:
        _emit_plain([(f"z^{power}", c) for power, c in coeffs])
    return EXIT_OK


def cmd_lemmas(cfg: RunConfig, args) -> int:
    result = lemma_inequality_suite(cfg.seed, args.trials)
    _emit_model(cfg, result.model_dump(mode="json"))
    return EXIT_OK if result.passed else EXIT_VERIFICATION_FAILED


def cmd_oracle(cfg: RunConfig, args) -> int:
    count = max(cfg.zero_count, ORACLE_MIN_ZEROS)
    t = _table(cfg, count)
    report = cross_oracle_suite(cfg.params, t, args.points, cfg.seed)
    _emit_model(cfg, report.model_dump(mode="json"))
    return EXIT_OK if report.passed else EXIT_VERIFICATION_FAILED


COMMANDS = {
    "zeros": cmd_zeros,
    "radius": cmd_radius,
    "verify": cmd_verify,
    "sweep": cmd_sweep,
    "table": cmd_table,
    "lemmas": cmd_lemmas,
    "oracle": cmd_oracle,
}


# ---------------------------------------------------------------------------
# 参数解析
# ---------------------------------------------------------------------------


def _common_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    group = common.add_argument_group("参数与运行选项")
    group.add_argument("--mu", type=positive_float, default=1.0, help="μ (默认: 1)")
    group.add_argument("--a", type=positive_float, default=1.0, help="a (默认: 1)")
    group.add_argument("--nu", type=positive_float, default=1.0, help="ν (默认: 1)")
    group.add_argument("--b", type=positive_float, default=1.0, help="b (默认: 1)")
    group.add_argument("--zero-count", type=positive_int, default=None, help="零点表长度 (默认: 20)")
    group.add_argument("--tol", type=positive_float, default=None, help="级数容差 (默认: 1e-14)")
    group.add_argument("--max-terms", type=positive_int, default=None, help="级数项数上限 (默认: 10000)")
    group.add_argument("--solver-tol", type=positive_float, default=None, help="半径求解容差 (默认: 1e-12)")
    group.add_argument("--seed", type=int, default=42, help="随机种子 (默认: 42)")
    group.add_argument("--threads", type=positive_int, default=None, help="并行线程上限 (默认: CPU 核数)")
    group.add_argument("--log-level", type=str, default=None, help="日志级别 (默认: INFO)")
    group.add_argument("--format", choices=["json", "csv", "plain"], default="plain", help="输出格式 (默认: plain)")
    group.add_argument("--zero-cache", type=str, default=None, help="零点表 JSON 缓存文件")
    return common


def _add_problem_arguments(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--family", choices=[f.value for f in RadiusFamily], required=True, help="半径问题族"
    )
    p.add_argument("--norm", choices=[n.value for n in Normalization], required=True, help="归一化 f | g | h")
    p.add_argument("--beta", type=beta_value, default=None, help="圆盘半径 β ∈ (0, 1]（star / convex）")
    p.add_argument("--gamma", type=gamma_value, default=0.0, help="螺旋角 γ ∈ (-π/2, π/2)（默认: 0）")
    p.add_argument("--alpha", type=alpha_value, default=0.0, help="阶 α ∈ [0, 1)（默认: 0）")
    p.add_argument("--samples", type=positive_int, default=720, help="验证采样点数 (默认: 720)")
    p.add_argument("--eps", type=eps_value, default=1e-3, help="验证内外圈偏移 (默认: 1e-3)")


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = _Parser(
        prog="wright-radii",
        description="Wright Radii - 四参数 Wright 函数归一化的星形/凸性/指数/螺旋半径",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
示例:
  # 前 3 个零点（CSV）
  wright-radii zeros --count 3 --format csv

  # g 的指数星形半径并验证
  wright-radii radius --family exp-star --norm g --verify

  # β 扫描
  wright-radii sweep --family star --norm g --beta 0.5 --over beta --grid 0.1:0.9:0.1 --format csv

  # 螺旋形半径（γ = 0.6, α = 0.25），参数 (μ, a, ν, b) = (1, 0.5, 1, 0.5)
  wright-radii radius --family spiral --norm f --gamma 0.6 --alpha 0.25 --a 0.5 --b 0.5

退出码:
  0 成功  1 验证失败  2 零点搜索失败  3 问题不满足适用条件  4 区间不变号  5 其他数值失败  64 用法错误
        """,
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("zeros", parents=[common], help="定位零点")
    p.add_argument("--count", type=positive_int, default=None, help="零点个数 (默认: --zero-count)")

    p = sub.add_parser("radius", parents=[common], help="求半径")
    _add_problem_arguments(p)
    p.add_argument("--verify", action="store_true", help="采样验证（失败时退出码 1）")

    p = sub.add_parser("verify", parents=[common], help="求半径并输出验证报告")
    _add_problem_arguments(p)

    p = sub.add_parser("sweep", parents=[common], help="网格扫描")
    _add_problem_arguments(p)
    p.add_argument("--over", choices=SWEEP_AXES, required=True, help="扫描轴")
    p.add_argument("--grid", type=parse_grid_arg, required=True, help="start:stop:step 或 '[v1, v2, ...]'")
    p.add_argument("--verify", action="store_true", help="每个点做采样验证")

    p = sub.add_parser("table", parents=[common], help="g, h 的幂级数系数")
    p.add_argument("--norm", choices=["g", "h"], required=True, help="归一化 g | h")
    p.add_argument("--terms", type=positive_int, default=10, help="系数个数 (默认: 10)")

    p = sub.add_parser("lemmas", parents=[common], help="不等式随机检验")
    p.add_argument("--trials", type=positive_int, default=10_000, help="每个不等式的试验次数 (默认: 10000)")

    p = sub.add_parser("oracle", parents=[common], help="双路径一致性检查")
    p.add_argument("--points", type=positive_int, default=200, help="每项检查的采样点数 (默认: 200)")
    return parser


def _apply_overrides(args) -> None:
    """命令行参数覆盖环境变量，然后重新读取配置"""
    overrides = {
        "WRIGHT_RADII_ZERO_COUNT": args.zero_count,
        "WRIGHT_RADII_TOL": args.tol,
        "WRIGHT_RADII_MAX_TERMS": args.max_terms,
        "WRIGHT_RADII_SOLVER_TOL": args.solver_tol,
        "WRIGHT_RADII_THREADS": args.threads,
        "WRIGHT_RADII_LOG_LEVEL": args.log_level,
    }
    for name, value in overrides.items():
        if value is not None:
            os.environ[name] = str(value)
    get_settings.cache_clear()


def _setup_logging(level: str) -> None:
    logger.remove()
    logger.add(sys.stderr, level=level)


def main(argv: Optional[List[str]] = None) -> int:
    """主函数，返回退出码"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    _apply_overrides(args)
    settings = get_settings()
    try:
        _setup_logging(settings.log_level)
    except ValueError:
        _setup_logging("INFO")
        logger.warning(f"⚠️  Unknown log level {settings.log_level!r}, using INFO")

    if args.command in ("radius", "verify", "sweep"):
        if args.family in (RadiusFamily.STAR_PHI.value, RadiusFamily.CONVEX_PHI.value) and args.beta is None:
            parser.print_usage(sys.stderr)
            sys.stderr.write(f"wright-radii: error: --beta is required for --family {args.family}\n")
            return EXIT_USAGE

    cfg = RunConfig(
        params=WrightParams(mu=args.mu, a=args.a, nu=args.nu, b=args.b),
        tol=settings.tol,
        max_terms=settings.max_terms,
        zero_count=settings.zero_count,
        output_format=args.format,
        seed=args.seed,
        zero_cache=args.zero_cache,
    )
    if getattr(args, "solver_tol", None) is None:
        args.solver_tol = settings.solver_tol

    try:
        return COMMANDS[args.command](cfg, args)
    except ZeroSearchFailure as e:
        logger.error(f"❌ Zero search failed: {e}")
        logger.error(f"   diagnostics: {e.diagnostics()}")
        return exit_code_for(e)
    except WrightRadiiError as e:
        logger.error(f"❌ {type(e).__name__}: {e}")
        return exit_code_for(e)
    except ValueError as e:
        logger.error(f"❌ Invalid input: {e}")
        return EXIT_INVALID_PROBLEM


if __name__ == "__main__":
    sys.exit(main())
