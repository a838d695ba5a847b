from .enum_poly import EnumPoly, poly_mul, substitute_linear, weight_list
from .schemes import SchemeKind, WeightScheme

__all__ = [
    "EnumPoly",
    "poly_mul",
    "substitute_linear",
    "weight_list",
    "SchemeKind",
    "WeightScheme",
]
