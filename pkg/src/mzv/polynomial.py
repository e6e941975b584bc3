"""Sparse multivariate polynomials and the product coefficients c_n, c~_n."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .arith import exact_pow, is_exact

__all__ = [
    "MultivariatePolynomial",
    "CoefficientTable",
    "expand_c",
    "expand_c_tilde",
]

_FLOAT_PRUNE = 1e-300


def _is_zero(c) -> bool:
    if is_exact(c):
        return c == 0
    return abs(c) < _FLOAT_PRUNE


class MultivariatePolynomial:
    """Polynomial in n variables stored as {exponent tuple: coefficient}."""

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: Mapping[tuple[int, ...], object] | None = None):
        if n < 0:
            raise ValueError("dimension must be non-negative")
        self.n = n
        clean: dict[tuple[int, ...], object] = {}
        for k, c in (terms or {}).items():
            k = tuple(int(e) for e in k)
            if len(k) != n or any(e < 0 for e in k):
                raise ValueError(f"bad exponent {k} for dimension {n}")
            if not _is_zero(c):
                clean[k] = clean[k] + c if k in clean else c
                if _is_zero(clean[k]):
                    del clean[k]
        self._terms = dict(sorted(clean.items()))

    @classmethod
    def constant(cls, n: int, c=Fraction(1)) -> "MultivariatePolynomial":
        return cls(n, {(0,) * n: c})

    @classmethod
    def variable(cls, n: int, i: int, coeff=Fraction(1)) -> "MultivariatePolynomial":
        k = [0] * n
        k[i] = 1
        return cls(n, {tuple(k): coeff})

    @classmethod
    def monomial(cls, k: Sequence[int], coeff=Fraction(1)) -> "MultivariatePolynomial":
        return cls(len(k), {tuple(k): coeff})

    @property
    def terms(self) -> dict[tuple[int, ...], object]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, k: Sequence[int]):
        return self._terms.get(tuple(k), Fraction(0))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(k) for k in self._terms), default=-1)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultivariatePolynomial):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __repr__(self) -> str:
        return f"MultivariatePolynomial({self.n}, {self._terms!r})"

    def _check(self, other: "MultivariatePolynomial") -> None:
        if other.n != self.n:
            raise ValueError("dimension mismatch")

    def __add__(self, other) -> "MultivariatePolynomial":
        if not isinstance(other, MultivariatePolynomial):
            other = MultivariatePolynomial.constant(self.n, other)
        self._check(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out[k] + c if k in out else c
        return MultivariatePolynomial(self.n, out)

    __radd__ = __add__

    def __neg__(self) -> "MultivariatePolynomial":
        return MultivariatePolynomial(self.n, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other) -> "MultivariatePolynomial":
        return self + (-other)

    def scale(self, c) -> "MultivariatePolynomial":
        return MultivariatePolynomial(self.n, {k: c * v for k, v in self._terms.items()})

    def __mul__(self, other) -> "MultivariatePolynomial":
        if not isinstance(other, MultivariatePolynomial):
            return self.scale(other)
        self._check(other)
        out: dict[tuple[int, ...], object] = {}
        for ka, ca in self._terms.items():
            for kb, cb in other._terms.items():
                k = tuple(x + y for x, y in zip(ka, kb))
                v = ca * cb
                out[k] = out[k] + v if k in out else v
        return MultivariatePolynomial(self.n, out)

    def __rmul__(self, other) -> "MultivariatePolynomial":
        return self.scale(other)

    def __pow__(self, e: int) -> "MultivariatePolynomial":
        if e < 0:
            raise ValueError("negative power")
        result = MultivariatePolynomial.constant(self.n)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def evaluate(self, point: Sequence):
        if len(point) != self.n:
            raise ValueError("point dimension mismatch")
        exact = all(is_exact(x) for x in point) and all(is_exact(c) for c in self._terms.values())
        acc = Fraction(0) if exact else complex(0)
        for k, c in self._terms.items():
            term = c
            for x, e in zip(point, k):
                if e:
                    term = term * exact_pow(x, e)
            acc = acc + term
        return acc

    __call__ = evaluate


@dataclass(frozen=True)
class CoefficientTable:
    """Coefficients of a product polynomial keyed by the exponent vector k."""

    alpha: tuple[int, ...]
    b: tuple
    entries: Mapping[tuple[int, ...], object]

    def get(self, k: Sequence[int]):
        return self.entries.get(tuple(k), Fraction(0))

    def polynomial(self) -> MultivariatePolynomial:
        return MultivariatePolynomial(len(self.alpha), dict(self.entries))

    def items(self):
        return self.entries.items()


def _linear_form(n: int, j: int, weights: Sequence, shift) -> MultivariatePolynomial:
    terms: dict[tuple[int, ...], object] = {(0,) * n: shift}
    for i in range(j + 1):
        k = [0] * n
        k[i] = 1
        terms[tuple(k)] = weights[i]
    return MultivariatePolynomial(n, terms)


def _product(alpha: Sequence[int], weights: Sequence, shifts: Sequence) -> MultivariatePolynomial:
    n = len(alpha)
    if len(shifts) != n or len(weights) != n:
        raise ValueError("dimension mismatch")
    poly = MultivariatePolynomial.constant(n, Fraction(1) if all(map(is_exact, shifts)) else complex(1))
    for j, a in enumerate(alpha):
        if a < 0:
            raise ValueError("alpha entries must be non-negative")
        if a:
            poly = poly * _linear_form(n, j, weights, shifts[j]) ** a
    return poly


def expand_c(alpha: Sequence[int], b: Sequence) -> CoefficientTable:
    """Coefficients c_n(b; alpha, k) of prod_j (X_1 + ... + X_j + b_j)^alpha_j."""
    alpha = tuple(alpha)
    one = [Fraction(1)] * len(alpha)
    poly = _product(alpha, one, list(b))
    return CoefficientTable(alpha, tuple(b), poly.terms)


def expand_c_tilde(alpha: Sequence[int], u: Sequence, gamma: Sequence) -> CoefficientTable:
    """Coefficients of prod_j (gamma_1 X_1 + ... + gamma_j X_j + u_j)^alpha_j."""
    alpha = tuple(alpha)
    if len(gamma) != len(alpha):
        raise ValueError("dimension mismatch")
    poly = _product(alpha, list(gamma), list(u))
    return CoefficientTable(alpha, tuple(u), poly.terms)


def from_terms(n: int, items: Iterable[tuple[Sequence[int], object]]) -> MultivariatePolynomial:
    return MultivariatePolynomial(n, {tuple(k): c for k, c in items})
