"""
工具函数模块
"""

from .parse_utils import parse_grid_arg, parse_list_arg

__all__ = ["parse_grid_arg", "parse_list_arg"]
