"""Exact scalars and Bernoulli algebra.

Rationals are :class:`fractions.Fraction`. Exact complex parameters live in
:class:`GaussianRational`, the field Q(i). Float mode uses Python ``complex``.
"""

from __future__ import annotations

import math
import re
import threading
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Union

__all__ = [
    "Fraction",
    "GaussianRational",
    "Scalar",
    "ExactScalar",
    "is_exact",
    "to_complex",
    "check_finite",
    "bernoulli_number",
    "bernoulli_numbers",
    "modified_bernoulli_number",
    "bernoulli_polynomial",
    "poly_eval",
    "binomial_integer",
    "binomial_scalar",
    "rational_to_str",
    "rational_from_str",
    "scalar_to_json",
    "scalar_from_json",
    "parse_scalar",
    "format_scalar",
    "exact_pow",
]


class GaussianRational:
    """An element re + im*i of Q(i) with exact rational parts."""

    __slots__ = ("_re", "_im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            if im:
                raise TypeError("imaginary part given twice")
            re, im = re._re, re._im
        self._re = _as_fraction(re)
        self._im = _as_fraction(im)

    @property
    def re(self) -> Fraction:
        return self._re

    @property
    def im(self) -> Fraction:
        return self._im

    @property
    def real(self) -> Fraction:
        return self._re

    @property
    def imag(self) -> Fraction:
        return self._im

    @classmethod
    def coerce(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        return cls(value, 0)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self._re, -self._im)

    def norm(self) -> Fraction:
        return self._re * self._re + self._im * self._im

    def is_real(self) -> bool:
        return self._im == 0

    def __complex__(self) -> complex:
        return complex(float(self._re), float(self._im))

    def __abs__(self) -> float:
        return abs(complex(self))

    def __bool__(self) -> bool:
        return bool(self._re) or bool(self._im)

    def __hash__(self) -> int:
        if self._im == 0:
            return hash(self._re)
        return hash((self._re, self._im))

    def __eq__(self, other) -> bool:
        o = _maybe_gauss(other)
        if o is None:
            if isinstance(other, complex):
                return complex(self) == other
            return NotImplemented
        return self._re == o._re and self._im == o._im

    def __repr__(self) -> str:
        return f"GaussianRational({self._re!s}, {self._im!s})"

    def __str__(self) -> str:
        return format_scalar(self)

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self._re, -self._im)

    def __pos__(self) -> "GaussianRational":
        return self

    def __add__(self, other):
        o = _maybe_gauss(other)
        if o is None:
            return complex(self) + other if isinstance(other, complex) else NotImplemented
        return GaussianRational(self._re + o._re, self._im + o._im)

    __radd__ = __add__

    def __sub__(self, other):
        o = _maybe_gauss(other)
        if o is None:
            return complex(self) - other if isinstance(other, complex) else NotImplemented
        return GaussianRational(self._re - o._re, self._im - o._im)

    def __rsub__(self, other):
        o = _maybe_gauss(other)
        if o is None:
            return other - complex(self) if isinstance(other, complex) else NotImplemented
        return o - self

    def __mul__(self, other):
        o = _maybe_gauss(other)
        if o is None:
            return complex(self) * other if isinstance(other, complex) else NotImplemented
        return GaussianRational(
            self._re * o._re - self._im * o._im,
            self._re * o._im + self._im * o._re,
        )

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        d = self.norm()
        if d == 0:
            raise ZeroDivisionError("division by 0+0i")
        return GaussianRational(self._re / d, -self._im / d)

    def __truediv__(self, other):
        o = _maybe_gauss(other)
        if o is None:
            return complex(self) / other if isinstance(other, complex) else NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _maybe_gauss(other)
        if o is None:
            return other / complex(self) if isinstance(other, complex) else NotImplemented
        return o * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            return complex(self) ** k
        if k < 0:
            return self.inverse() ** (-k)
        result = GaussianRational(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result


ExactScalar = Union[int, Fraction, GaussianRational]
Scalar = Union[int, Fraction, GaussianRational, complex, float]


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    if isinstance(x, str):
        return rational_from_str(x)
    raise TypeError(f"cannot represent {x!r} exactly")


def _maybe_gauss(x) -> GaussianRational | None:
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return GaussianRational(x)
    return None


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction, GaussianRational)) and not isinstance(x, bool)


def to_complex(x) -> complex:
    return complex(x)


def check_finite(z: complex, what: str = "value") -> complex:
    """Reject NaN or infinite floats."""
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ArithmeticError(f"non-finite {what}: {z!r}")
    return z


def exact_pow(x, k: int):
    """Integer power that keeps exact types exact; 0**0 == 1."""
    if k == 0:
        return Fraction(1) if is_exact(x) else complex(1)
    if isinstance(x, int):
        x = Fraction(x)
    return x**k


# Bernoulli numbers ---------------------------------------------------------

_BERNOULLI: list[Fraction] = [Fraction(1)]
_BERNOULLI_LOCK = threading.Lock()


def _extend_bernoulli(k: int) -> None:
    with _BERNOULLI_LOCK:
        table = _BERNOULLI
        for m in range(len(table), k + 1):
            if m > 1 and m % 2 == 1:
                table.append(Fraction(0))
                continue
            # sum_{j<=m} C(m+1, j) B_j = 0
            acc = Fraction(0)
            for j in range(m):
                if table[j]:
                    acc += math.comb(m + 1, j) * table[j]
            table.append(-acc / (m + 1))


def bernoulli_number(k: int) -> Fraction:
    """B_k with the convention B_1 = -1/2."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if k >= len(_BERNOULLI):
        _extend_bernoulli(k)
    return _BERNOULLI[k]


def bernoulli_numbers(k: int) -> list[Fraction]:
    """The list [B_0, ..., B_k]."""
    bernoulli_number(k)
    return list(_BERNOULLI[: k + 1])


def modified_bernoulli_number(k: int) -> Fraction:
    """B_k, except that index 1 gives +1/2."""
    if k == 1:
        return Fraction(1, 2)
    return bernoulli_number(k)


def bernoulli_polynomial(k: int) -> tuple[Fraction, ...]:
    """Coefficients of B_k(x), constant term first."""
    if k < 0:
        raise ValueError("k must be non-negative")
    bs = bernoulli_numbers(k)
    return tuple(math.comb(k, d) * bs[k - d] for d in range(k + 1))


def poly_eval(coeffs, x):
    """Horner evaluation of an ascending coefficient sequence."""
    acc = Fraction(0) if is_exact(x) else complex(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


# Binomials -------------------------------------------------------------------


def binomial_integer(n: int, k: int) -> Fraction:
    """Falling-factorial binomial coefficient for any integer n."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if 0 <= n < k:
        return Fraction(0)
    if n >= 0:
        return Fraction(math.comb(n, k))
    # C(n, k) = (-1)^k C(k-n-1, k) for negative n
    return Fraction((-1) ** k * math.comb(k - n - 1, k))


def binomial_scalar(z, k: int):
    """z(z-1)...(z-k+1)/k! in the scalar type of z."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if isinstance(z, int) and not isinstance(z, bool):
        return binomial_integer(z, k)
    if is_exact(z):
        acc = Fraction(1) if isinstance(z, Fraction) else GaussianRational(1)
        for i in range(k):
            acc = acc * (z - i)
        return acc / math.factorial(k)
    z = complex(z)
    acc = complex(1)
    for i in range(k):
        acc *= (z - i) / (i + 1)
    return acc


# Serialization ---------------------------------------------------------------

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def rational_to_str(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def rational_from_str(text: str) -> Fraction:
    m = _RATIONAL_RE.match(text)
    if not m:
        raise ValueError(f"malformed rational {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def _float_str(x: float) -> str:
    return format(x, ".17g")


def scalar_to_json(x):
    """Exact scalars as "p/q" or {re, im}; floats as numbers or {re, im}."""
    if isinstance(x, GaussianRational):
        if x.im == 0:
            return rational_to_str(x.re)
        return {"re": rational_to_str(x.re), "im": rational_to_str(x.im)}
    if isinstance(x, (int, Fraction)):
        return rational_to_str(x)
    z = check_finite(complex(x))
    if z.imag == 0:
        return float(_float_str(z.real))
    return {"re": float(_float_str(z.real)), "im": float(_float_str(z.imag))}


def scalar_from_json(obj):
    if isinstance(obj, str):
        return parse_scalar(obj)
    if isinstance(obj, (int, float)) and not isinstance(obj, bool):
        return complex(obj) if isinstance(obj, float) else Fraction(obj)
    if isinstance(obj, dict) and set(obj) == {"re", "im"}:
        re_, im_ = obj["re"], obj["im"]
        if isinstance(re_, str) and isinstance(im_, str):
            g = GaussianRational(rational_from_str(re_), rational_from_str(im_))
            return g.re if g.im == 0 else g
        return complex(float(re_), float(im_))
    raise ValueError(f"malformed scalar {obj!r}")


def _parse_part(text: str):
    if "." in text or "e" in text.lower():
        return float(text)
    return rational_from_str(text)


def parse_scalar(text: str, exact: bool = True):
    """Parse "p/q", "a+bi", "i", "-3/2i" or a decimal.

    Rational input returns Fraction (or GaussianRational when an imaginary part
    is present).  Decimal input, or ``exact=False``, gives a complex float.
    """
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty scalar")
    re_part, im_part = s, None
    if s.endswith(("i", "j")):
        body = s[:-1].rstrip("*")
        cut = max(body.rfind("+", 1), body.rfind("-", 1))
        # exponent signs such as 1e-3 are not separators
        while cut > 0 and body[cut - 1] in "eE":
            cut = max(body.rfind("+", 1, cut), body.rfind("-", 1, cut))
        if cut > 0:
            re_part, im_part = body[:cut], body[cut:]
        else:
            re_part, im_part = "0", body
        if im_part in ("", "+"):
            im_part = "1"
        elif im_part == "-":
            im_part = "-1"
    try:
        re_v = _parse_part(re_part)
        im_v = _parse_part(im_part) if im_part is not None else Fraction(0)
    except ValueError:
        raise ValueError(f"malformed scalar {text!r}") from None
    if isinstance(re_v, float) or isinstance(im_v, float) or not exact:
        z = complex(float(re_v), float(im_v))
        return check_finite(z, "scalar")
    if im_v == 0:
        return re_v
    return GaussianRational(re_v, im_v)


def format_scalar(x) -> str:
    """Human/CLI form: "p/q", "a+bi", or 17-digit floats."""
    if isinstance(x, GaussianRational):
        if x.im == 0:
            return rational_to_str(x.re)
        im = x.im
        sign = "-" if im < 0 else "+"
        mag = rational_to_str(abs(im))
        if x.re == 0:
            return f"{'-' if im < 0 else ''}{mag}i"
        return f"{rational_to_str(x.re)}{sign}{mag}i"
    if isinstance(x, (int, Fraction)):
        return rational_to_str(x)
    z = complex(x)
    if z.imag == 0:
        return _float_str(z.real)
    sign = "-" if z.imag < 0 or (z.imag == 0 and math.copysign(1, z.imag) < 0) else "+"
    return f"{_float_str(z.real)}{sign}{_float_str(abs(z.imag))}i"
