"""Numerical continuation oracle for blocked multiple zeta series.

A blocked series is

    Z(s; u; gamma) = sum_{m_1 >= start, m_2..m_n >= 0}
                     prod_j prod_k (gamma_1 m_1 + ... + gamma_j m_j + u_{j,k})^(-s_{j,k})

with ``start = 1`` for the standard object.  ``continue_eval`` continues it
off the convergence domain by summing a finite head of the first variable
directly and removing the last variable of the tail with the Euler-Maclaurin
reduction (:func:`reduce_once`), recursively down to one dimension, where
Hurwitz zeta values finish the job.  Dropped remainders are bounded by
explicit majorants, never evaluated.
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Sequence

import numpy as np
from scipy import integrate

from .arith import bernoulli_number, bernoulli_polynomial, modified_bernoulli_number, poly_eval
from .combinatorics import g_delta, tail_sums
from .errors import DomainError, NearPoleError, OracleError

__all__ = [
    "ContinuationConfig",
    "BlockedSeriesSpec",
    "LaurentExpansion",
    "ReductionResult",
    "eval_in_domain",
    "reduce_once",
    "continue_eval",
    "continue_eval_detailed",
    "check_off_polar",
    "base_case_eval",
    "hurwitz_zeta",
    "hurwitz_exact",
    "laurent_along_direction",
    "default_radius",
    "quadrature_Y",
    "raabe_link_check",
]

_HALF_PI = 0.5 * math.pi
# rounding error per unit of accumulated magnitude (a few ulps)
_ROUND = 4e-16


@dataclass(frozen=True)
class ContinuationConfig:
    K: int = 8
    M: int = 16
    tolerance: float = 1e-8
    radius: float | None = None
    nodes: int = 16
    eps_sing: float = 1e-9
    max_factors: int = 12
    k_max: int = 40
    laurent_tolerance: float = 1e-6
    domain_margin: float = 1e-6
    max_lattice_points: int = 40_000_000

    def __post_init__(self):
        if self.K < 1:
            raise ValueError("K must be >= 1")
        if self.M < 8:
            raise ValueError("M must be >= 8")
        if self.nodes < 2:
            raise ValueError("nodes must be >= 2")
        if not self.eps_sing > 0:
            raise ValueError("eps_sing must be positive")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        if self.radius is not None and not 0 < self.radius < 0.5:
            raise ValueError("radius must lie in (0, 1/2)")
        if self.k_max < self.K:
            raise ValueError("k_max must be >= K")

    @classmethod
    def from_mapping(cls, data: dict) -> "ContinuationConfig":
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)


@dataclass(frozen=True)
class BlockedSeriesSpec:
    exponents: tuple[tuple[complex, ...], ...]
    shifts: tuple[tuple[complex, ...], ...]
    gamma: tuple[complex, ...]
    start: int = 1

    def __post_init__(self):
        ex = tuple(tuple(complex(e) for e in blk) for blk in self.exponents)
        sh = tuple(tuple(complex(u) for u in blk) for blk in self.shifts)
        ga = tuple(complex(g) for g in self.gamma)
        if not ga:
            raise ValueError("dimension must be >= 1")
        if len(ex) != len(ga) or len(sh) != len(ga):
            raise ValueError("exponents, shifts and gamma must have n entries")
        if any(len(a) != len(b) for a, b in zip(ex, sh)):
            raise ValueError("each block needs as many shifts as exponents")
        if self.start < 0:
            raise ValueError("start must be non-negative")
        for j, g in enumerate(ga, start=1):
            if not g.real > 0:
                raise DomainError(f"Re(gamma_{j}) must be positive")
        g1 = ga[0].real * self.start
        for j, blk in enumerate(sh, start=1):
            for u in blk:
                if not (u.real + g1) > 0:
                    raise DomainError(f"Re(u_{j},k + gamma_1*{self.start}) must be positive")
        object.__setattr__(self, "exponents", ex)
        object.__setattr__(self, "shifts", sh)
        object.__setattr__(self, "gamma", ga)

    @classmethod
    def simple(cls, s: Sequence, u: Sequence, gamma: Sequence, start: int = 1) -> "BlockedSeriesSpec":
        """One factor per block: the plain series with exponents s and shifts u."""
        return cls(tuple((x,) for x in s), tuple((x,) for x in u), tuple(gamma), start)

    @property
    def n(self) -> int:
        return len(self.gamma)

    @property
    def q(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.exponents)

    @property
    def total_factors(self) -> int:
        return sum(self.q)

    def block_exponent_sums(self) -> list[complex]:
        return [sum(b, 0j) for b in self.exponents]

    def in_domain(self, margin: float = 0.0) -> bool:
        n = self.n
        tails = tail_sums(self.block_exponent_sums())
        return all(tails[j].real > n - j + margin for j in range(n))

    def key(self):
        return (self.exponents, self.shifts, self.gamma, self.start)


@dataclass
class LaurentExpansion:
    order: int
    coefficients: dict[int, complex]
    residual: float
    radius: float
    nodes: int
    samples: list[complex] = field(default_factory=list)
    sample_bound: float = 0.0

    def error_bound(self, k: int) -> float:
        """Propagated sample error for z_k: max sample bound times r^k."""
        return self.sample_bound * self.radius**k

    def z(self, k: int) -> complex:
        return self.coefficients[k]

    @property
    def z0(self) -> complex:
        return self.coefficients[0]


@dataclass
class ReductionResult:
    terms: list[tuple[complex, BlockedSeriesSpec]]
    remainder_bound: float
    K: int
    center: complex


# small helpers ---------------------------------------------------------------


def _binom_seq(s: complex, order: int) -> list[complex]:
    """C(-s, a) for a = 0..order."""
    out = [1 + 0j]
    c = 1 + 0j
    for a in range(order):
        c = c * (-s - a) / (a + 1)
        out.append(c)
    return out


def _convolve(seqs: list[list[complex]], order: int) -> list[complex]:
    acc = [1 + 0j] + [0j] * order
    for seq in seqs:
        new = [0j] * (order + 1)
        for i, a in enumerate(acc):
            if a == 0:
                continue
            for j in range(order + 1 - i):
                new[i + j] += a * seq[j]
        acc = new
    return acc


def _majorant(exps: Sequence[complex], dists: Sequence[float], order: int) -> list[float]:
    """Coefficients of prod_i sum_a |C(-s_i, a)| d_i^a x^a up to x^order."""
    seqs = []
    for s, d in zip(exps, dists):
        b = _binom_seq(s, order)
        seqs.append([abs(c) * d**a for a, c in enumerate(b)])
    acc = [1.0] + [0.0] * order
    for seq in seqs:
        new = [0.0] * (order + 1)
        for i, a in enumerate(acc):
            if a == 0.0:
                continue
            for j in range(order + 1 - i):
                new[i + j] += a * seq[j]
        acc = new
    return acc


def _multi_indices(q: int, order: int):
    """All alpha in N^q with |alpha| <= order, by total degree then lexicographic."""
    for total in range(order + 1):
        for combo in itertools.product(range(total + 1), repeat=q):
            if sum(combo) == total:
                yield combo


def _bernoulli_sup(k: int) -> float:
    """Upper bound for sup |periodic B_k(x)| (k >= 1)."""
    if k == 1:
        return 0.5
    zeta_k = 1.0 + 2.0**-k + 2.0 ** (1 - k) / (k - 1)
    return 2.0 * zeta_k * math.factorial(k) / (2 * math.pi) ** k


def _canonical_block(exps, shifts):
    merged: dict[complex, complex] = {}
    for e, u in zip(exps, shifts):
        merged[u] = merged.get(u, 0j) + e
    items = sorted(merged.items(), key=lambda p: (p[0].real, p[0].imag))
    # A factor with exponent 0 can be removed only while another factor keeps the
    # block's exponent sum a free variable; a lone (m + u)^0 still carries u.
    nonzero = [p for p in items if p[1] != 0]
    items = nonzero if nonzero else items[:1]
    return tuple(e for _, e in items), tuple(u for u, _ in items)


def _canonical(spec: BlockedSeriesSpec) -> BlockedSeriesSpec:
    ex, sh = [], []
    for e, u in zip(spec.exponents, spec.shifts):
        a, b = _canonical_block(e, u)
        ex.append(a)
        sh.append(b)
    return BlockedSeriesSpec(tuple(ex), tuple(sh), spec.gamma, spec.start)


# Hurwitz zeta ----------------------------------------------------------------


def hurwitz_exact(N: int, a):
    """Exact zeta(-N, a) = -B_{N+1}(a)/(N+1) for exact a."""
    if N < 0:
        raise ValueError("N must be non-negative")
    return -poly_eval(bernoulli_polynomial(N + 1), a) / (N + 1)


@lru_cache(maxsize=1 << 18)
def _hurwitz(s: complex, a: complex, direct: int, terms: int) -> tuple[complex, float]:
    """Value and the sum of |summands| (the scale of the rounding error)."""
    shift = max(0, math.ceil(max(direct, abs(s) + 12) - a.real))
    acc = 0j
    mag = 0.0
    for k in range(shift):
        t = (a + k) ** (-s)
        acc += t
        mag += abs(t)
    x = a + shift
    xs = x ** (-s)
    lead = x * xs / (s - 1) + 0.5 * xs
    acc += lead
    mag += abs(lead)
    # tail corrections B_2j/(2j)! (s)_(2j-1) x^(-s-2j+1)
    rising = s
    xpow = xs / x
    inv_x2 = 1 / (x * x)
    fact = 2.0
    for j in range(1, terms + 1):
        term = float(bernoulli_number(2 * j)) / fact * rising * xpow
        acc += term
        mag += abs(term)
        if abs(term) <= 1e-18 * max(1.0, abs(acc)):
            break
        rising *= (s + 2 * j - 1) * (s + 2 * j)
        xpow *= inv_x2
        fact *= (2 * j + 1) * (2 * j + 2)
    return acc, mag


def hurwitz_zeta(s, a, cfg: ContinuationConfig | None = None) -> complex:
    """Hurwitz zeta(s, a) for Re a > 0 by Euler-Maclaurin summation."""
    cfg = cfg or ContinuationConfig()
    s, a = complex(s), complex(a)
    if abs(s - 1) < cfg.eps_sing:
        raise NearPoleError(f"s = {s} is within {cfg.eps_sing} of the pole at 1")
    if not a.real > 0:
        raise DomainError("Re(a) must be positive")
    return _hurwitz(s, a, cfg.M, max(cfg.K, 30))[0]


# base case -------------------------------------------------------------------


def _threshold(gamma: Sequence[complex], cfg: ContinuationConfig) -> float:
    return cfg.M * max(1.0, max(abs(g) for g in gamma))


def _head_length(spec: BlockedSeriesSpec, cfg: ContinuationConfig) -> int:
    shifts = [u for blk in spec.shifts for u in blk]
    lower = spec.gamma[0].real * spec.start + min((u.real for u in shifts), default=0.0)
    tau = _threshold(spec.gamma, cfg)
    if lower >= tau:
        return 0
    return math.ceil((tau - lower) / spec.gamma[0].real)


def _center(shifts: Sequence[complex]) -> complex:
    if not shifts:
        return 0j
    return sum(shifts, 0j) / len(shifts)


def _base(exps, shifts, gamma: complex, start: int, cfg: ContinuationConfig, target: float):
    """One-dimensional blocked series; returns (value, remainder bound)."""
    exps = [complex(e) for e in exps]
    shifts = [complex(u) for u in shifts]
    sigma = sum(exps, 0j)
    lower = gamma.real * start + min((u.real for u in shifts), default=0.0)
    tau = cfg.M * max(1.0, abs(gamma))
    head = 0 if lower >= tau else math.ceil((tau - lower) / gamma.real)
    value = 0j
    mag = 0.0
    for m in range(start, start + head):
        term = 1 + 0j
        for e, u in zip(exps, shifts):
            term *= (gamma * m + u) ** (-e)
        value += term
        mag += abs(term)
    m0 = start + head
    c = _center(shifts)
    dists = [abs(u - c) for u in shifts]
    base_re = gamma.real * m0 + c.real
    if max(dists, default=0.0) >= base_re:
        raise OracleError("Taylor expansion radius too small in the base case")
    imag = math.exp(_HALF_PI * sum(abs(e.imag) for e in exps))

    def tail_bound(K: int) -> float:
        extra = K + 40
        maj = _majorant(exps, dists, extra)
        tot = 0.0
        for a in range(K + 1, extra + 1):
            p = sigma.real + a
            if p <= 1.0:
                return math.inf
            zb = base_re ** (-p) + base_re ** (1 - p) / (gamma.real * (p - 1))
            tot += maj[a] * zb
        return tot * imag * 1.05

    K = cfg.K
    bound = tail_bound(K)
    while bound > target and K < cfg.k_max:
        K += 1
        bound = tail_bound(K)
    seqs = []
    for e, u in zip(exps, shifts):
        b = _binom_seq(e, K)
        d = u - c
        seqs.append([cf * d**a for a, cf in enumerate(b)])
    coeffs = _convolve(seqs, K)
    x0 = m0 + c / gamma
    for a, ea in enumerate(coeffs):
        if ea == 0:
            continue
        w = sigma + a
        if abs(w - 1) < cfg.eps_sing:
            raise NearPoleError(f"Hurwitz argument {w} within the singularity guard")
        scale = ea * gamma ** (-w)
        hv, hmag = _hurwitz(w, x0, cfg.M, max(cfg.K, 30))
        value += scale * hv
        mag += abs(scale) * hmag
    return value, bound + _ROUND * mag


def base_case_eval(s: Sequence, u: Sequence, gamma, cfg: ContinuationConfig | None = None, start: int = 1) -> complex:
    """sum_{m >= start} prod_k (gamma m + u_k)^(-s_k), continued in s."""
    cfg = cfg or ContinuationConfig()
    if len(s) != len(u):
        raise ValueError("s and u must have equal length")
    spec = BlockedSeriesSpec(((tuple(s)),), ((tuple(u)),), (gamma,), start)
    value, bound = _base(spec.exponents[0], spec.shifts[0], spec.gamma[0], start, cfg, cfg.tolerance)
    if bound > cfg.tolerance:
        raise OracleError(f"base-case remainder bound {bound:.3g} exceeds tolerance")
    return value


# reduction -------------------------------------------------------------------


def _lattice_majorant(n_outer: int, start: int, terms: list[tuple[float, float, float]], g_lo: float) -> float:
    """sum over T >= start of count(T) * prod (a T + b)^(-p).

    ``terms`` lists (a, b, p): each factor (a T + b)^(-p) must have a T + b > 0
    for T >= start; p may be negative.  count(T) is the number of lattice
    points m_1 >= start, m_2..m_{n_outer} >= 0 with m_1 + ... = T.
    """
    beta = sum(p for _, _, p in terms) - (n_outer - 1)
    if beta <= 1.0:
        return math.inf
    t_end = start + 4000
    T = np.arange(start, t_end + 1, dtype=float)
    logf = np.zeros_like(T)
    for a, b, p in terms:
        base = a * T + b
        if np.any(base <= 0):
            return math.inf
        logf -= p * np.log(base)
    if n_outer > 1:
        k = n_outer - 1
        logf += np.array([math.lgamma(t - start + k + 1) - math.lgamma(k + 1) - math.lgamma(t - start + 1) for t in T])
    f = np.exp(logf)
    total = float(np.sum(f))
    tail = float(f[-1]) * t_end / (beta - 1.0) * 2.0
    return total + tail


def _reduction_bound(spec: BlockedSeriesSpec, K: int, center: complex) -> float:
    """Majorant for the two remainders dropped at truncation order K."""
    n = spec.n
    s_n = spec.exponents[-1]
    u_n = spec.shifts[-1]
    g = spec.gamma
    g_n = g[-1]
    outer_g = g[: n - 1]
    Y0 = outer_g[0].real * spec.start
    G = max(abs(x) / x.real for x in g)
    sigma = sum(s_n, 0j)
    W = sigma.real + K + 1
    if W <= 1.0:
        return math.inf
    dists = [abs(u - center) for u in u_n]
    u_min = min((u.real for u in u_n), default=center.real)
    c_lo = center.real - max(dists, default=0.0)
    lo_shift = min(u_min, c_lo)
    if Y0 + lo_shift <= 0:
        return math.inf
    U = max((abs(u) for u in u_n), default=abs(center)) + abs(center)
    kappa = max(G, (G * Y0 + U) / (Y0 + lo_shift))
    p_neg = sum(max(0.0, -e.real) for e in s_n)
    imag = math.exp(_HALF_PI * sum(abs(e.imag) for blk in spec.exponents for e in blk))

    maj1 = _majorant(s_n, dists, K + 1)[K + 1]
    maj2 = _majorant(s_n, [1.0] * len(s_n), K + 1)[K + 1]
    coef = maj1 + _bernoulli_sup(K + 1) * abs(g_n) ** (K + 1) * maj2
    coef *= kappa**p_neg / (g_n.real * (W - 1.0))

    # outer factors: decaying bounds for block n-1, constants for earlier blocks
    g_lo = min(x.real for x in outer_g)
    g_hi = sum(abs(x) for x in outer_g)
    terms = [(g_lo, lo_shift, W - 1.0)]
    const = 1.0
    for j, (ex, sh) in enumerate(zip(spec.exponents[: n - 1], spec.shifts[: n - 1])):
        last = j == n - 2
        for e, u in zip(ex, sh):
            if e.real >= 0:
                if last:
                    terms.append((g_lo, u.real, e.real))
                else:
                    ell = outer_g[0].real * spec.start + u.real
                    if ell <= 0:
                        return math.inf
                    const *= ell ** (-e.real)
            else:
                terms.append((g_hi, abs(u), e.real))
    outer = _lattice_majorant(n - 1, spec.start, terms, g_lo)
    return coef * const * imag * outer


def _child(spec: BlockedSeriesSpec, new_exps, new_shifts) -> BlockedSeriesSpec:
    n = spec.n
    ex = list(spec.exponents[: n - 1])
    sh = list(spec.shifts[: n - 1])
    ex[-1] = ex[-1] + tuple(new_exps)
    sh[-1] = sh[-1] + tuple(new_shifts)
    return BlockedSeriesSpec(tuple(ex), tuple(sh), spec.gamma[: n - 1], spec.start)


def _choose_K(spec, cfg, center, target) -> tuple[int, float]:
    K = cfg.K
    bound = _reduction_bound(spec, K, center)
    while bound > target and K < cfg.k_max:
        K += 1
        bound = _reduction_bound(spec, K, center)
    return K, bound


def reduce_once(
    spec: BlockedSeriesSpec,
    cfg: ContinuationConfig | None = None,
    center: complex = 0j,
    K: int | None = None,
) -> ReductionResult:
    """Remove the last summation variable by Euler-Maclaurin and Taylor expansion.

    Family (i) comes from the integral term and family (ii) from the boundary
    terms; each child lives in dimension n-1.  ``center`` is the expansion
    point of the shifts u_{n,i} in family (i) (0 reproduces the plain form).
    """
    cfg = cfg or ContinuationConfig()
    if spec.n < 2:
        raise ValueError("reduce_once needs n >= 2")
    center = complex(center)
    if K is None:
        K, bound = _choose_K(spec, cfg, center, cfg.tolerance)
    else:
        bound = _reduction_bound(spec, K, center)
    s_n = spec.exponents[-1]
    u_n = spec.shifts[-1]
    g_n = spec.gamma[-1]
    q_n = len(s_n)
    sigma = sum(s_n, 0j)
    binoms = [_binom_seq(s, K) for s in s_n]
    terms: list[tuple[complex, BlockedSeriesSpec]] = []
    # family (i)
    for alpha in _multi_indices(q_n, K):
        shift_part = 1 + 0j
        for i, a in enumerate(alpha):
            shift_part *= (u_n[i] - center) ** a
        if shift_part == 0:
            # identically zero in s, not a removable 0/0
            continue
        lin = -1 + sigma + sum(alpha)
        if abs(lin) < cfg.eps_sing:
            raise NearPoleError(f"linear factor -1 + sum(s_n + alpha) = {lin} at alpha={alpha}")
        coef = shift_part
        for i, a in enumerate(alpha):
            coef *= binoms[i][a]
        if coef == 0:
            continue
        coef /= g_n * lin
        terms.append((coef, _child(spec, [lin], [center])))
    # family (ii)
    for alpha in _multi_indices(q_n, K):
        a_tot = sum(alpha)
        bt = modified_bernoulli_number(a_tot + 1)
        if bt == 0:
            continue
        coef = (-1) ** a_tot * float(bt) * g_n**a_tot / (a_tot + 1)
        for i, a in enumerate(alpha):
            coef *= binoms[i][a]
        if coef == 0:
            continue
        terms.append((coef, _child(spec, [s + a for s, a in zip(s_n, alpha)], u_n)))
    return ReductionResult(terms, bound, K, center)


# continuation ----------------------------------------------------------------


@dataclass
class _Stats:
    reductions: int = 0
    base_calls: int = 0


def _slice(spec: BlockedSeriesSpec, m1: int):
    g1 = spec.gamma[0]
    factor = 1 + 0j
    for e, u in zip(spec.exponents[0], spec.shifts[0]):
        factor *= (g1 * m1 + u) ** (-e)
    shifts = tuple(tuple(u + g1 * m1 for u in blk) for blk in spec.shifts[1:])
    child = BlockedSeriesSpec(spec.exponents[1:], shifts, spec.gamma[1:], 0)
    return factor, _canonical(child)


def _continue(spec: BlockedSeriesSpec, cfg: ContinuationConfig, weight: float, stats: _Stats):
    if spec.total_factors > cfg.max_factors:
        raise OracleError(f"blocked series has {spec.total_factors} factors, limit {cfg.max_factors}")
    target = cfg.tolerance * 1e-4 / max(weight, 1e-300)
    if spec.n == 1:
        stats.base_calls += 1
        return _base(spec.exponents[0], spec.shifts[0], spec.gamma[0], spec.start, cfg, target)
    value = 0j
    bound = 0.0
    head = _head_length(spec, cfg)
    for m1 in range(spec.start, spec.start + head):
        factor, child = _slice(spec, m1)
        v, b = _continue(child, cfg, weight * abs(factor), stats)
        value += factor * v
        bound += abs(factor) * (b + _ROUND * abs(v))
    tail = replace(spec, start=spec.start + head)
    center = _center(tail.shifts[-1])
    red = reduce_once(tail, replace(cfg, tolerance=target), center=center)
    stats.reductions += 1
    bound += red.remainder_bound
    merged: dict = {}
    for coef, child in red.terms:
        c = _canonical(child)
        k = c.key()
        if k in merged:
            merged[k] = (merged[k][0] + coef, c)
        else:
            merged[k] = (coef, c)
    for coef, child in merged.values():
        if coef == 0:
            continue
        v, b = _continue(child, cfg, weight * abs(coef), stats)
        value += coef * v
        bound += abs(coef) * (b + _ROUND * abs(v))
    return value, bound


def check_off_polar(spec: BlockedSeriesSpec, eps: float) -> None:
    """Refuse points within ``eps`` of the candidate polar hyperplanes.

    With T_j the tail sum of block exponent sums, the candidates are T_n = 1 and
    T_j = n - j + 1 - k (k = 0, 1, ...) for j < n.  This contains the polar set
    and the points of indeterminacy where two such hyperplanes meet.
    """
    n = spec.n
    tails = tail_sums(spec.block_exponent_sums())
    for j in range(1, n + 1):
        T = tails[j - 1]
        top = n - j + 1
        if j == n:
            near = abs(T - 1) < eps
        else:
            k = round(top - T.real)
            near = k >= 0 and abs(T - (top - k)) < eps
        if near:
            raise NearPoleError(f"s lies within {eps} of a polar hyperplane: tail sum from block {j} is {T}")


def continue_eval_detailed(spec: BlockedSeriesSpec, cfg: ContinuationConfig | None = None):
    """Return (value, accumulated remainder bound, statistics)."""
    cfg = cfg or ContinuationConfig()
    check_off_polar(spec, cfg.eps_sing)
    stats = _Stats()
    value, bound = _continue(_canonical(spec), cfg, 1.0, stats)
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise OracleError("non-finite continuation value")
    return value, bound, stats


def continue_eval(spec: BlockedSeriesSpec, cfg: ContinuationConfig | None = None) -> complex:
    """Meromorphic continuation of Z_{n,q}(s; u; gamma) at a point off the poles."""
    cfg = cfg or ContinuationConfig()
    value, bound, _ = continue_eval_detailed(spec, cfg)
    if bound > cfg.tolerance:
        raise OracleError(f"accumulated remainder bound {bound:.3g} exceeds tolerance {cfg.tolerance:.3g}")
    return value


# direct summation --------------------------------------------------------------


def _simplex(k: int, total: int) -> np.ndarray:
    """All points of N^k with coordinate sum <= total, in lexicographic order."""
    if k == 0:
        return np.zeros((1, 0), dtype=np.int64)
    if total < 0:
        return np.zeros((0, k), dtype=np.int64)
    prev = np.arange(total + 1, dtype=np.int64).reshape(-1, 1)
    for _ in range(k - 1):
        sums = prev.sum(axis=1)
        counts = total - sums + 1
        rep = np.repeat(np.arange(len(prev)), counts)
        offs = np.arange(int(counts.sum())) - np.repeat(np.cumsum(counts) - counts, counts)
        prev = np.concatenate([prev[rep], offs.reshape(-1, 1)], axis=1)
    return prev


def _lattice_points(dim: int, start: int, R: int, batch: int = 1 << 16):
    """Points with m_1 >= start, other m_j >= 0, sum <= R, in lexicographic batches."""
    if dim == 1:
        for lo in range(start, R + 1, batch):
            yield np.arange(lo, min(lo + batch, R + 1), dtype=np.int64).reshape(-1, 1)
        return
    chunk: list[np.ndarray] = []
    size = 0
    for m1 in range(start, R + 1):
        rest = _simplex(dim - 1, R - m1)
        chunk.append(np.concatenate([np.full((len(rest), 1), m1, dtype=np.int64), rest], axis=1))
        size += len(rest)
        if size >= batch:
            yield np.concatenate(chunk)
            chunk, size = [], 0
    if chunk:
        yield np.concatenate(chunk)


def _lattice_terms(spec: BlockedSeriesSpec, pts: np.ndarray, blocks: int) -> tuple[np.ndarray, np.ndarray]:
    """prod over the first ``blocks`` blocks of the factors at the given points."""
    g = np.array(spec.gamma[:blocks], dtype=complex)
    partial = np.cumsum(pts * g[None, :], axis=1)
    logt = np.zeros(len(pts), dtype=complex)
    for j, (ex, sh) in enumerate(zip(spec.exponents[:blocks], spec.shifts[:blocks])):
        for e, u in zip(ex, sh):
            logt -= e * np.log(partial[:, j] + u)
    return np.exp(logt), partial


def _decay_exponents(sums: Sequence[float]) -> list[float]:
    """d_j with H_j(P) = O(P^(-d_j)) for the nested envelopes below."""
    out = []
    d = None
    for S in sums:
        d = S if d is None else S + min(0.0, d - 1.0)
        out.append(d)
    return out


def _exact_inner(spec: BlockedSeriesSpec) -> bool:
    """True when the innermost sum can be done as one Hurwitz zeta value."""
    return len(spec.exponents[-1]) == 1


def _domain_tail(spec: BlockedSeriesSpec, R: int, exact_inner: bool = False) -> float:
    """Majorant for the sum of |terms| over the points cut off at level R.

    With P_j = m_1 + ... + m_j, each block factor is bounded by a function
    env_j(P_j); the chain P_1 <= ... <= P_n is summed by cumulative sums up
    to 8R and a power-law estimate covers the rest.  With ``exact_inner`` the
    cut is P_(n-1) > R and the innermost sum is bounded by an integral.
    """
    blocks = list(zip(spec.exponents, spec.shifts))
    gammas = spec.gamma
    if exact_inner:
        blocks, inner = blocks[:-1], blocks[-1]
        gammas = spec.gamma[:-1]
    g_lo = min(x.real for x in gammas)
    g_hi = max(abs(x) for x in spec.gamma)
    g1 = spec.gamma[0].real * spec.start
    Pmax = max(min(8 * R, R + 4_000_000), R + 2000)
    P = np.arange(0, Pmax + 1, dtype=float)
    valid = P >= spec.start
    Pv = np.where(valid, P, spec.start)
    lower = g1 + g_lo * (Pv - spec.start)
    H = None
    for ex, sh in blocks:
        logf = np.zeros_like(P)
        for e, u in zip(ex, sh):
            if e.real >= 0:
                logf -= e.real * np.log(lower + u.real)
            else:
                logf -= e.real * np.log(g_hi * Pv + abs(u))
        env = np.where(valid, np.exp(logf + _HALF_PI * sum(abs(e.imag) for e in ex)), 0.0)
        H = env if H is None else np.cumsum(H) * env
    sums = [sum(e.real for e in ex) for ex, _ in blocks]
    if exact_inner:
        (s,), (u,) = inner
        sigma, gn = s.real, spec.gamma[-1].real
        lo = lower + u.real
        H = H * math.exp(_HALF_PI * abs(s.imag)) * (lo ** (-sigma) + lo ** (1 - sigma) / (gn * (sigma - 1)))
        sums[-1] += sigma - 1
    total = float(np.sum(H[R + 1 :]))
    beta = _decay_exponents(sums)[-1] - 0.05
    if beta <= 1.0:
        return math.inf
    return total + 2.0 * float(H[-1]) * Pmax / (beta - 1.0)


def _simplex_count(n: int, start: int, R: int) -> int:
    if R < start:
        return 0
    return math.comb(R - start + n, n)


def _hurwitz_vec(s: complex, a: np.ndarray) -> np.ndarray:
    """Hurwitz zeta(s, a) for an array of a, Re s > 1, no a + k on the cut."""
    shift = max(0, math.ceil(abs(s) + 14 - float(np.min(a.real))))
    acc = np.zeros_like(a)
    for k in range(shift):
        acc += (a + k) ** (-s)
    x = a + shift
    xs = x ** (-s)
    acc += x * xs / (s - 1) + 0.5 * xs
    rising = s
    xpow = xs / x
    inv_x2 = 1 / (x * x)
    fact = 2.0
    for j in range(1, 40):
        term = float(bernoulli_number(2 * j)) / fact * rising * xpow
        acc += term
        if float(np.max(np.abs(term))) <= 1e-18 * max(1.0, float(np.min(np.abs(acc)))):
            break
        rising *= (s + 2 * j - 1) * (s + 2 * j)
        xpow *= inv_x2
        fact *= (2 * j + 1) * (2 * j + 2)
    return acc


def _inner_sums(spec: BlockedSeriesSpec, lead: np.ndarray) -> np.ndarray:
    """sum_{m >= 0} (lead + gamma_n m + u)^(-s) with s, u the single last factor.

    gamma^(-s) (a + m)^(-s) is the principal power because both lead + u + gamma m
    and gamma lie in the right half-plane.
    """
    (s,), (u,) = spec.exponents[-1], spec.shifts[-1]
    g = spec.gamma[-1]
    return g ** (-s) * _hurwitz_vec(s, (lead + u) / g)


def eval_in_domain(spec: BlockedSeriesSpec, cfg: ContinuationConfig | None = None) -> complex:
    """Direct lattice summation inside the convergence domain.

    The cutoff is the smallest power-of-two multiple of 32 whose tail majorant
    is below ``cfg.tolerance``.  A last block with a single factor is summed to
    infinity along m_n in closed form, so only the outer variables are cut.
    """
    cfg = cfg or ContinuationConfig()
    if not spec.in_domain(cfg.domain_margin):
        raise DomainError("s is not inside the convergence domain with the required margin")
    spec = _canonical(spec)
    exact = _exact_inner(spec)
    if exact and spec.n == 1:
        lead = np.array([spec.gamma[0] * spec.start], dtype=complex)
        return complex(_inner_sums(spec, lead)[0])
    dim = spec.n - 1 if exact else spec.n
    R = 32
    while _domain_tail(spec, R, exact) >= cfg.tolerance:
        R *= 2
        if _simplex_count(dim, spec.start, R) > cfg.max_lattice_points:
            raise OracleError(f"tail bound not below {cfg.tolerance:.3g} within {cfg.max_lattice_points} lattice points")
    value = 0j
    for pts in _lattice_points(dim, spec.start, R):
        terms, partial = _lattice_terms(spec, pts, dim)
        if exact:
            terms = terms * _inner_sums(spec, partial[:, -1])
        value += complex(np.sum(terms))
    return value


# Laurent coefficients ------------------------------------------------------------


def default_radius(theta) -> float:
    return min(0.25, g_delta(theta) / 2)


def laurent_along_direction(query, cfg: ContinuationConfig | None = None) -> LaurentExpansion:
    """Laurent data of t -> Z_n(-N + t theta; b; gamma) at t = 0 by contour sums."""
    cfg = cfg or ContinuationConfig()
    n = query.n
    theta = [complex(x) for x in query.theta]
    gamma = [complex(x) for x in query.gamma]
    b = [complex(x) for x in query.b]
    delta = g_delta(theta)
    r = cfg.radius if cfg.radius is not None else default_radius(theta)
    if not r < delta:
        raise OracleError(f"contour radius {r} is not below delta = {delta}")
    P = cfg.nodes
    if P < 2 * n + 4:
        raise OracleError(f"need at least {2 * n + 4} contour nodes")
    ts = [r * complex(math.cos(2 * math.pi * p / P), math.sin(2 * math.pi * p / P)) for p in range(P)]
    samples = []
    worst = 0.0
    for t in ts:
        s = [-Nj + t * th for Nj, th in zip(query.N, theta)]
        spec = BlockedSeriesSpec.simple(s, b, gamma)
        value, bound, _ = continue_eval_detailed(spec, cfg)
        if bound > cfg.tolerance:
            raise OracleError(f"sample at t={t:.6g} has remainder bound {bound:.3g} above {cfg.tolerance:.3g}")
        samples.append(value)
        worst = max(worst, bound)
    coeffs = {}
    for k in range(-(n + 2), 1):
        coeffs[k] = sum(f * t ** (-k) for f, t in zip(samples, ts)) / P
    residual = max(abs(coeffs[-(n + 1)]), abs(coeffs[-(n + 2)]))
    if residual > cfg.laurent_tolerance:
        raise OracleError(f"aliasing residual {residual:.3g} above {cfg.laurent_tolerance:.3g}")
    return LaurentExpansion(n, coeffs, residual, r, P, samples, worst)


# quadrature ---------------------------------------------------------------------


def _quad(f, a, b, tol):
    with warnings.catch_warnings():
        # the returned error estimate is checked by the callers
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        val, err = integrate.quad(f, a, b, epsabs=tol, epsrel=tol, limit=400, complex_func=True)
    return complex(val), abs(err)


def _blocked_integrand(exps, shifts, gamma):
    def factor(j, partial):
        acc = 1 + 0j
        for e, u in zip(exps[j], shifts[j]):
            acc *= (partial + u) ** (-e)
        return acc

    return factor


def _quad_blocked(exps, shifts, gamma, tol: float) -> tuple[complex, float]:
    n = len(gamma)
    factor = _blocked_integrand(exps, shifts, gamma)
    last_simple = len(exps[-1]) == 1

    def inner(j: int, partial: complex):
        # integrate variables j..n-1 given gamma_1 x_1 + ... + gamma_{j} x_{j} = partial
        if j == n - 1 and n >= 3 and last_simple:
            e, u = exps[-1][0], shifts[-1][0]
            # integral over x_n of (partial + gamma_n x + u)^(-e) in closed form
            return (partial + u) ** (1 - e) / (gamma[-1] * (e - 1)), 0.0
        lo = 1.0 if j == 0 else 0.0
        errs = []

        def f(x):
            p = partial + gamma[j] * x
            rest, err = (1 + 0j, 0.0) if j == n - 1 else inner(j + 1, p)
            errs.append(err)
            return factor(j, p) * rest

        val, err = _quad(f, lo, np.inf, tol)
        return val, err + (max(errs) if errs else 0.0)

    return inner(0, 0j)


def quadrature_Y(s: Sequence, u: Sequence, gamma: Sequence, cfg: ContinuationConfig | None = None) -> complex:
    """Adaptive quadrature of Y_n(s; u; gamma) over (1, inf) x (0, inf)^(n-1)."""
    cfg = cfg or ContinuationConfig()
    n = len(s)
    if n > 3:
        raise OracleError("quadrature_Y supports n <= 3")
    if len(u) != n or len(gamma) != n:
        raise ValueError("dimension mismatch")
    spec = BlockedSeriesSpec.simple(s, u, gamma)
    if not spec.in_domain(cfg.domain_margin):
        raise DomainError("s is not inside the convergence domain")
    tol = min(cfg.tolerance, 1e-10)
    val, err = _quad_blocked(spec.exponents, spec.shifts, spec.gamma, tol)
    if err > max(cfg.tolerance, 1e-8):
        raise OracleError(f"quadrature error estimate {err:.3g} too large")
    return val


def raabe_link_check(spec: BlockedSeriesSpec, cfg: ContinuationConfig | None = None, nodes: int = 8, tolerance: float = 1e-5) -> dict:
    """Compare Y_{n,q} with the cube integral of Z over shifted parameters."""
    cfg = cfg or ContinuationConfig()
    n = spec.n
    if n > 2:
        raise OracleError("raabe_link_check supports n <= 2")
    if not spec.in_domain(cfg.domain_margin):
        raise DomainError("s is not inside the convergence domain")
    y_val, y_err = _quad_blocked(spec.exponents, spec.shifts, spec.gamma, 1e-11)
    xg, wg = np.polynomial.legendre.leggauss(nodes)
    xg = 0.5 * (xg + 1.0)
    wg = 0.5 * wg
    z_int = 0j
    for idx in itertools.product(range(nodes), repeat=n):
        w = float(np.prod([wg[i] for i in idx]))
        bvec = [xg[i] for i in idx]
        shifts = []
        for j, blk in enumerate(spec.shifts):
            off = sum(spec.gamma[i] * bvec[i] for i in range(j + 1))
            shifts.append(tuple(u + off for u in blk))
        z_int += w * eval_in_domain(BlockedSeriesSpec(spec.exponents, tuple(shifts), spec.gamma, spec.start), cfg)
    gap = abs(z_int - y_val)
    return {"Y": y_val, "integral_of_Z": z_int, "gap": gap, "tolerance": tolerance, "passed": gap < tolerance}
