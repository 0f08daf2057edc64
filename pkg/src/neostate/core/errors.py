"""异常定义模块"""
from typing import Optional


class NeostateError(Exception):
    """所有 neostate 异常的基类"""


class StructureError(NeostateError, ValueError):
    """结构数据非法、构造参数越界或验证失败"""


class VerificationError(StructureError):
    """构造出的结构未通过相干恒等式验证"""


class TriangulationError(NeostateError, ValueError):
    """三角剖分不闭合、不可定向或文件格式错误"""


class LabellingError(NeostateError, ValueError):
    """标号不满足局部半平坦条件"""


class MethodNotApplicableError(NeostateError):
    """快速路径的前提条件不成立"""

    def __init__(self, method: str, reasons: list[str]):
        self.method = method
        self.reasons = list(reasons)
        super().__init__(f"method '{method}' not applicable: " + "; ".join(self.reasons))


class BudgetExceededError(NeostateError):
    """枚举规模超出预算"""

    def __init__(self, what: str, required: int, budget: int, hint: Optional[str] = None):
        self.what = what
        self.required = required
        self.budget = budget
        self.hint = hint
        message = f"{what}: {required} exceeds budget {budget}"
        if hint:
            message += f" ({hint})"
        super().__init__(message)
