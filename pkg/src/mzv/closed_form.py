"""Closed-form values at non-positive integer points.

The main entry is :func:`theorem1_value`, the exact regularized value of
zeta_n(s; gamma; b) along s = -N + t*theta as t -> 0.  The A-coefficients,
the polynomial psi(u) = lim Y_n(-N + t*theta; u; gamma) and the closed form of
Y_n(s; gamma) are exposed for cross-checks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .arith import (
    GaussianRational,
    bernoulli_number,
    binomial_integer,
    check_finite,
    exact_pow,
    is_exact,
)
from .combinatorics import (
    IndexSubset,
    MultiIndex,
    compute_K,
    compute_L,
    enumerate_contributing_alphas,
    multi_index,
    tail_sums,
)
from .errors import DomainError, PoleError
from .polynomial import MultivariatePolynomial, expand_c, expand_c_tilde
from .raabe import bernoulli_lift

__all__ = [
    "SpecialValueQuery",
    "EvaluationReport",
    "YClosedFormQuery",
    "TermRecord",
    "theorem1_value",
    "a_coefficient",
    "y_theta_value",
    "y_closed_form",
    "theorem1_via_raabe_identity",
    "check_domain",
]


def _normalize(x):
    if isinstance(x, GaussianRational) and x.im == 0:
        return x.re
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    return x


@dataclass(frozen=True)
class SpecialValueQuery:
    N: MultiIndex
    gamma: tuple
    b: tuple
    theta: tuple
    mode: str = "exact"
    force_domain: bool = False

    def __post_init__(self):
        N = multi_index(self.N)
        n = len(N)
        gamma, b, theta = (tuple(map(_normalize, v)) for v in (self.gamma, self.b, self.theta))
        if not (len(gamma) == len(b) == len(theta) == n):
            raise ValueError("N, gamma, b and theta must have the same length")
        mode = self.mode
        if mode not in ("exact", "float"):
            raise ValueError(f"unknown mode {mode!r}")
        if mode == "exact" and not all(is_exact(x) for x in gamma + b + theta):
            # parameters outside Q(i) cannot be handled exactly
            mode = "float"
        if mode == "float":
            gamma, b, theta = (tuple(complex(x) for x in v) for v in (gamma, b, theta))
        object.__setattr__(self, "N", N)
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "mode", mode)

    @property
    def n(self) -> int:
        return len(self.N)

    def with_theta(self, theta) -> "SpecialValueQuery":
        return SpecialValueQuery(self.N, self.gamma, self.b, tuple(theta), self.mode, self.force_domain)


@dataclass(frozen=True)
class TermRecord:
    I: IndexSubset
    alpha: MultiIndex
    k: MultiIndex
    value: object


@dataclass
class EvaluationReport:
    value: object
    terms: list[TermRecord]
    mode: str
    query: SpecialValueQuery
    domain_checked: bool = True
    notes: list[str] = field(default_factory=list)


@dataclass(frozen=True)
class YClosedFormQuery:
    s: tuple
    gamma: tuple

    def __post_init__(self):
        object.__setattr__(self, "s", tuple(map(_normalize, self.s)))
        object.__setattr__(self, "gamma", tuple(map(_normalize, self.gamma)))
        if len(self.s) != len(self.gamma) or not self.s:
            raise ValueError("s and gamma must have the same positive length")

    @property
    def n(self) -> int:
        return len(self.s)


def _re(x) -> float:
    return float(x.real) if not isinstance(x, GaussianRational) else float(x.re)


def check_domain(gamma: Sequence, b: Sequence, theta: Sequence) -> None:
    """Raise DomainError naming the first violated hypothesis."""
    for j, g in enumerate(gamma, start=1):
        if not _re(g) > 0:
            raise DomainError(f"Re(gamma_{j}) must be positive")
    g1 = _re(gamma[0])
    for j, v in enumerate(b, start=1):
        if not _re(v) > -g1:
            raise DomainError(f"Re(b_{j}) must exceed -Re(gamma_1)")
    _theta_tails(theta)


def _theta_tails(theta):
    S = tail_sums(theta)
    for j, s in enumerate(S, start=1):
        if s == 0:
            raise DomainError(f"theta tail sum at j={j} vanishes")
    return S


def _gaps(N, alpha) -> list[int]:
    n = len(N)
    return [sum(N[j:]) + (n - j) - sum(alpha[j:]) for j in range(n)]


def _base_coefficient(N, K: IndexSubset, L: IndexSubset, alpha, theta, S):
    """Sign, binomial and theta factors shared by every k for this alpha."""
    n = len(N)
    sign = n - len(K) + sum(alpha[j - 1] - N[j - 1] for j in L)
    num = Fraction((-1) ** (sign % 2))
    den = Fraction(1)
    T = _gaps(N, alpha)
    for j in range(1, n + 1):
        a, m = alpha[j - 1], N[j - 1]
        if j in L:
            den *= a * binomial_integer(a - 1, m)
            num = num * theta[j - 1]
        else:
            num = num * binomial_integer(m, a)
        if j in K:
            den = den * S[j - 1]
        else:
            den = den * T[j - 1]
    return num / den


def _as_index_subset(I, n: int) -> IndexSubset:
    return I if isinstance(I, IndexSubset) else IndexSubset(tuple(I), n)


def a_coefficient(N, I, alpha, theta, gamma):
    """The coefficient of u^alpha in psi(u) for alpha in J(I, N)."""
    N = multi_index(N)
    alpha = multi_index(alpha)
    n = len(N)
    I = _as_index_subset(I, n)
    theta = tuple(map(_normalize, theta))
    gamma = tuple(map(_normalize, gamma))
    K, L = compute_K(N, alpha), compute_L(N, alpha)
    if K.members != I.members or len(L) != len(I):
        raise ValueError(f"alpha={alpha} is not in J({I}, N={N})")
    S = _theta_tails(theta)
    val = _base_coefficient(N, K, L, alpha, theta, S)
    val = val * exact_pow(gamma[0], sum(N) - sum(alpha) + n)
    for g in gamma:
        val = val / g
    return _normalize(val)


def _gamma_factor(gamma, N, alpha, k):
    n = len(N)
    val = exact_pow(gamma[0], sum(N) - sum(alpha) + n + k[0] - 1)
    for j in range(1, n):
        val = val * exact_pow(gamma[j], k[j] - 1)
    return val


def theorem1_value(q: SpecialValueQuery) -> EvaluationReport:
    """Sum over I, alpha in J(I, N) and |k| <= |alpha| of the closed formula."""
    if not q.force_domain:
        check_domain(q.gamma, q.b, q.theta)
    S = _theta_tails(q.theta)
    N, n = q.N, q.n
    exact = q.mode == "exact"
    total = Fraction(0) if exact else complex(0)
    terms: list[TermRecord] = []
    for alpha, K, L in enumerate_contributing_alphas(N):
        base = _base_coefficient(N, K, L, alpha, q.theta, S)
        table = expand_c(alpha, q.b)
        for k, c in table.items():
            bern = Fraction(1)
            for kj in k:
                bern *= bernoulli_number(kj)
            if bern == 0:
                continue
            term = c * base * _gamma_factor(q.gamma, N, alpha, k) * bern
            term = _normalize(term)
            if not exact:
                term = check_finite(complex(term), "term")
            terms.append(TermRecord(K, alpha, k, term))
            total = total + term
    return EvaluationReport(
        value=_normalize(total),
        terms=terms,
        mode=q.mode,
        query=q,
        domain_checked=not q.force_domain,
        notes=[] if not q.force_domain else ["unchecked domain"],
    )


def y_theta_value(N, u, gamma, theta, check: bool = True):
    """Return (psi(u), psi) with psi = sum over I, alpha of A * u^alpha."""
    N = multi_index(N)
    n = len(N)
    u = tuple(map(_normalize, u))
    gamma = tuple(map(_normalize, gamma))
    theta = tuple(map(_normalize, theta))
    if not (len(u) == len(gamma) == len(theta) == n):
        raise ValueError("dimension mismatch")
    if check:
        check_domain(gamma, u, theta)
    poly = psi_polynomial(N, gamma, theta)
    return _normalize(poly.evaluate(list(u))), poly


def psi_polynomial(N, gamma, theta) -> MultivariatePolynomial:
    N = multi_index(N)
    terms = {}
    for alpha, K, _ in enumerate_contributing_alphas(N):
        terms[alpha] = a_coefficient(N, K, alpha, theta, gamma)
    return MultivariatePolynomial(len(N), terms)


def _pow_general(base, exponent):
    exponent = _normalize(exponent)
    if is_exact(base) and isinstance(exponent, Fraction) and exponent.denominator == 1:
        return exact_pow(base, int(exponent))
    return complex(base) ** complex(exponent)


def y_closed_form(q: YClosedFormQuery):
    """gamma_1^(n - |s|) / (gamma_1 ... gamma_n * prod_j (s_j + ... + s_n + j - n - 1))."""
    n = q.n
    for j, g in enumerate(q.gamma, start=1):
        if not _re(g) > 0:
            raise DomainError(f"Re(gamma_{j}) must be positive")
    tails = tail_sums(q.s)
    den = Fraction(1) if all(map(is_exact, q.s + q.gamma)) else complex(1)
    factors = [tails[j - 1] + j - n - 1 for j in range(1, n + 1)]
    hits = [j for j in range(1, n + 1) if factors[j - 1] == 0]
    if hits:
        # the innermost offending hyperplane is the one reported
        j = hits[-1]
        planes = ", ".join(f"s_{i}+...+s_n = {n + 1 - i}" for i in hits)
        raise PoleError(f"s lies on the polar hyperplane j={j} ({planes})", j)
    for f in factors:
        den = den * f
    for g in q.gamma:
        den = den * g
    num = _pow_general(q.gamma[0], n - tails[0])
    return _normalize(num / den)


def theorem1_via_raabe_identity(q: SpecialValueQuery):
    """z_0 obtained by Bernoulli-lifting f(a) = psi(u(a)) and evaluating at a = 0.

    Here u_j(a) = b_j + gamma_1 a_1 + ... + gamma_j a_j, so f is expanded with
    the c~ coefficients and the lift replaces each a^k by prod_j B_{k_j}(a_j).
    """
    if not q.force_domain:
        check_domain(q.gamma, q.b, q.theta)
    N, n = q.N, q.n
    psi = psi_polynomial(N, q.gamma, q.theta)
    f_terms: dict[tuple[int, ...], object] = {}
    for alpha, A in psi.items():
        for k, c in expand_c_tilde(alpha, q.b, q.gamma).items():
            v = A * c
            f_terms[k] = f_terms[k] + v if k in f_terms else v
    f = MultivariatePolynomial(n, f_terms)
    g = bernoulli_lift(f)
    zero = [Fraction(0)] * n if q.mode == "exact" else [0j] * n
    val = _normalize(g.evaluate(zero))
    if q.mode == "float":
        val = complex(val)
    return val
