"""Scalar coefficients: exact rationals by default, floats as an escape hatch.

Every criterion in this package is ultimately a zero test (or sign test) of
some determinant, so the default scalar is `fractions.Fraction` and zero
tests are literal.  Floats only enter when an input is irrational -- in
practice the cosine/sine of a folding angle -- and then a zero test must be
relative to the size of the numbers that went into the computation.  Jets
in float mode therefore carry a running magnitude (`scale`) of their input
coefficients, and `ZeroCtx` turns (eps, scale) into is_zero/sign decisions.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

Scalar = Union[Fraction, float]

DEFAULT_EPS = 1e-9


def as_exact(value) -> Fraction:
    """Coerce an int/Fraction to Fraction; reject floats."""
    if isinstance(value, float):
        raise TypeError("float coefficient %r in exact mode (pass eps= for float mode)" % value)
    return Fraction(value)


class ZeroCtx:
    """Zero and sign tests under a fixed arithmetic mode.

    eps is None in exact mode.  In float mode a value x counts as zero when
    |x| < eps * max(1, scale), scale being the magnitude accumulator of the
    computation that produced x.
    """

    __slots__ = ("eps", "scale")

    def __init__(self, eps=None, scale=0.0):
        self.eps = eps
        self.scale = float(scale)

    @property
    def exact(self) -> bool:
        return self.eps is None

    def is_zero(self, x: Scalar) -> bool:
        if self.eps is None:
            return x == 0
        return abs(x) < self.eps * max(1.0, self.scale)

    def is_zero_vec(self, xs) -> bool:
        return all(self.is_zero(x) for x in xs)

    def sign(self, x: Scalar) -> int:
        if self.is_zero(x):
            return 0
        return 1 if x > 0 else -1

    def merge(self, other: "ZeroCtx") -> "ZeroCtx":
        if self.eps is None and other.eps is None:
            return self
        eps = max(e for e in (self.eps, other.eps) if e is not None)
        return ZeroCtx(eps, max(self.scale, other.scale))

    def __repr__(self):
        if self.eps is None:
            return "ZeroCtx(exact)"
        return "ZeroCtx(eps=%g, scale=%g)" % (self.eps, self.scale)


def fmt_scalar(x: Scalar) -> str:
    """Print a scalar exactly: `p/q` for rationals, 17 significant digits for floats."""
    if isinstance(x, float):
        return "%.17g" % x
    return str(x)
