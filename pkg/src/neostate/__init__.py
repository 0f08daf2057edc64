"""Neostate - 4 维流形态和不变量精确计算工具"""

__version__ = "0.1.0"
