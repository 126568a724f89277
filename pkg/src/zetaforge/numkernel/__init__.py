"""Exact and arbitrary-precision arithmetic kernel."""

from .arith import (
    BigReal,
    ExactRational,
    RealLike,
    as_exact,
    check_prec,
    const_log,
    const_pi,
    decimal_digits,
    factorial,
    pow2,
    precision,
    to_big,
    to_decimal,
    working_prec,
)
from .gamma import gamma_real
from .quadrature import tanh_sinh_quadrature
from .rational import LogLinearValue, RationalPolynomial, rational_log_integral

__all__ = [
    "BigReal",
    "ExactRational",
    "LogLinearValue",
    "RationalPolynomial",
    "RealLike",
    "as_exact",
    "check_prec",
    "const_log",
    "const_pi",
    "decimal_digits",
    "factorial",
    "gamma_real",
    "pow2",
    "precision",
    "rational_log_integral",
    "tanh_sinh_quadrature",
    "to_big",
    "to_decimal",
    "working_prec",
]
