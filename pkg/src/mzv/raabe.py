"""Raabe cube averaging on polynomials and its Bernoulli-polynomial inverse."""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .arith import bernoulli_polynomial
from .polynomial import MultivariatePolynomial

__all__ = [
    "cube_average",
    "bernoulli_lift",
    "raabe_numeric_check",
    "RaabeCheckReport",
]


def _average_power(k: int) -> dict[int, Fraction]:
    """Coefficients in x of the integral over y in [0,1] of (x+y)^k."""
    # (x+y)^k = sum_d C(k,d) x^d y^(k-d); integral of y^m over [0,1] is 1/(m+1)
    return {d: Fraction(math.comb(k, d), k - d + 1) for d in range(k + 1)}


def cube_average(g: MultivariatePolynomial) -> MultivariatePolynomial:
    """f(x) = integral of g(x + y) over the unit cube, computed exactly."""
    n = g.n
    out: dict[tuple[int, ...], object] = {}
    for k, c in g.items():
        factors = [_average_power(e) for e in k]
        for combo in itertools.product(*(sorted(f.items()) for f in factors)):
            d = tuple(e for e, _ in combo)
            w = c
            for _, r in combo:
                w = w * r
            out[d] = out[d] + w if d in out else w
    return MultivariatePolynomial(n, out)


def bernoulli_lift(f: MultivariatePolynomial) -> MultivariatePolynomial:
    """Replace each monomial x^alpha by the product of B_{alpha_i}(x_i)."""
    n = f.n
    out: dict[tuple[int, ...], object] = {}
    for k, c in f.items():
        factors = [bernoulli_polynomial(e) for e in k]
        ranges = [[(d, b) for d, b in enumerate(coefs) if b] for coefs in factors]
        for combo in itertools.product(*ranges):
            d = tuple(e for e, _ in combo)
            w = c
            for _, b in combo:
                w = w * b
            out[d] = out[d] + w if d in out else w
    return MultivariatePolynomial(n, out)


class RaabeCheckReport(dict):
    """Plain dict with fields probes, expected, computed, max_gap, passed."""

    @property
    def passed(self) -> bool:
        return bool(self["passed"])


def raabe_numeric_check(
    g: Callable[..., complex],
    f_expected: MultivariatePolynomial,
    probes: Sequence[Sequence[float]],
    tolerance: float = 1e-10,
    nodes: int = 12,
) -> RaabeCheckReport:
    """Integrate g over x + [0,1]^n by a tensor Gauss-Legendre rule at each probe."""
    n = f_expected.n
    xg, wg = np.polynomial.legendre.leggauss(nodes)
    xg = 0.5 * (xg + 1.0)
    wg = 0.5 * wg
    computed, expected = [], []
    for p in probes:
        p = [complex(v) for v in p]
        if len(p) != n:
            raise ValueError("probe dimension mismatch")
        acc = 0j
        for idx in itertools.product(range(nodes), repeat=n):
            w = 1.0
            pt = []
            for i, m in enumerate(idx):
                w *= wg[m]
                pt.append(p[i] + xg[m])
            acc += w * complex(g(*pt))
        computed.append(acc)
        expected.append(complex(f_expected.evaluate(p)))
    gaps = [abs(a - b) for a, b in zip(computed, expected)]
    max_gap = max(gaps, default=0.0)
    return RaabeCheckReport(
        probes=[list(map(complex, p)) for p in probes],
        expected=expected,
        computed=computed,
        gaps=gaps,
        max_gap=max_gap,
        tolerance=tolerance,
        passed=max_gap < tolerance,
    )

