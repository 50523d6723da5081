import argparse
import ast
import math
from typing import List


def parse_list_arg(s):
    """
    解析命令行参数中的列表字符串，将其转换为数值列表

    使用 ast.literal_eval 安全地解析字符串字面量，只接受由数值组成的列表

    Args:
        s (str): 有效的 Python 列表字面量，例如 '[0.1, 0.5, 0.9]'

    Returns:
        list: 浮点数列表

    Raises:
        argparse.ArgumentTypeError: 格式无效、不是列表或含非数值元素
    """
    try:
        result = ast.literal_eval(s)

        # 确保解析结果是列表类型
        if not isinstance(result, list):
            raise ValueError("输入不是 list 类型")
        if not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in result):
            raise ValueError("list 元素必须是数值")

        return [float(x) for x in result]
    except (ValueError, SyntaxError) as e:
        # 当解析失败时，提供友好的错误信息
        raise argparse.ArgumentTypeError(f"无效的 list 格式: {s}，应为类似 '[0.1, 0.5]' 的字符串。错误: {e}")


def parse_grid_arg(s: str) -> List[float]:
    """
    解析网格参数：'start:stop:step'（闭区间）或列表字面量 '[...]'

    Example:
        >>> parse_grid_arg("0.1:0.9:0.1")
        [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9]
        >>> parse_grid_arg("[-1.2, 0, 1.2]")
        [-1.2, 0.0, 1.2]

    Raises:
        argparse.ArgumentTypeError: 格式无效或网格为空
    """
    s = s.strip()
    if s.startswith("["):
        values = parse_list_arg(s)
    else:
        parts = s.split(":")
        if len(parts) != 3:
            raise argparse.ArgumentTypeError(f"无效的网格格式: {s}，应为 start:stop:step 或 [..]")
        try:
            start, stop, step = (float(x) for x in parts)
        except ValueError as e:
            raise argparse.ArgumentTypeError(f"无效的网格格式: {s}，错误: {e}")
        if not all(math.isfinite(x) for x in (start, stop, step)) or step <= 0:
            raise argparse.ArgumentTypeError(f"网格步长必须为正的有限数: {s}")
        # 按索引生成，避免累加误差；末端允许 1e-9 步长的舍入
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        values = [round(start + i * step, 12) for i in range(max(count, 0))]

    if not values:
        raise argparse.ArgumentTypeError(f"网格为空: {s}")
    return values
