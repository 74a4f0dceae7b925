from quadembed.algebra.calculus import DegreeData, Matrix2, degree_data, jacobian_det, partial_derivative
from quadembed.algebra.fields import Field, FieldValue, PrimeField, RationalFunctions, Rationals, parse_field
from quadembed.algebra.parser import parse_poly
from quadembed.algebra.poly import MinusInfinity, Poly, PolyRing, poly_arith, substitute

QQ = Rationals()

__all__ = [
    "DegreeData",
    "Field",
    "FieldValue",
    "Matrix2",
    "MinusInfinity",
    "Poly",
    "PolyRing",
    "PrimeField",
    "QQ",
    "RationalFunctions",
    "Rationals",
    "degree_data",
    "jacobian_det",
    "parse_field",
    "parse_poly",
    "partial_derivative",
    "poly_arith",
    "substitute",
]
