"""Index sets K, L, J and the G-function of the regularized limit.

Indices are 1-based in :class:`IndexSubset`, matching the usual notation
j = 1, ..., n; multi-indices are plain tuples of non-negative ints.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .arith import GaussianRational, binomial_integer, binomial_scalar, is_exact
from .errors import CapacityError, DomainError

__all__ = [
    "MultiIndex",
    "IndexSubset",
    "GLimitInput",
    "HypothesisViolated",
    "MAX_DIMENSION",
    "MAX_BOX",
    "multi_index",
    "compute_K",
    "compute_L",
    "enumerate_contributing_alphas",
    "enumerate_J",
    "tail_sums",
    "g_delta",
    "g_at_zero",
    "g_sample",
]

MultiIndex = tuple[int, ...]

MAX_DIMENSION = 6
MAX_BOX = 10**8


def multi_index(entries: Sequence[int]) -> MultiIndex:
    out = tuple(int(e) for e in entries)
    if not out:
        raise ValueError("multi-index must have length >= 1")
    if any(e < 0 for e in out):
        raise ValueError(f"negative entry in multi-index {out}")
    return out


@dataclass(frozen=True)
class IndexSubset:
    """Sorted subset of {1, ..., n}."""

    members: tuple[int, ...]
    n: int

    def __post_init__(self):
        m = tuple(sorted(set(self.members)))
        if any(j < 1 or j > self.n for j in m):
            raise ValueError(f"members {m} not within 1..{self.n}")
        object.__setattr__(self, "members", m)

    @classmethod
    def of(cls, members, n: int) -> "IndexSubset":
        return cls(tuple(members), n)

    def __contains__(self, j) -> bool:
        return j in self.members

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def complement(self) -> tuple[int, ...]:
        return tuple(j for j in range(1, self.n + 1) if j not in self.members)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.members)) + "}"


def _check_dims(N: Sequence[int], alpha: Sequence[int]) -> int:
    if len(N) != len(alpha):
        raise ValueError(f"dimension mismatch: N has {len(N)} entries, alpha has {len(alpha)}")
    return len(N)


def _suffix(values: Sequence[int]) -> list[int]:
    out = [0] * (len(values) + 1)
    for j in range(len(values) - 1, -1, -1):
        out[j] = out[j + 1] + values[j]
    return out


def _k_members(N, alpha) -> tuple[int, ...]:
    n = len(N)
    sn, sa = _suffix(N), _suffix(alpha)
    # position j (0-based) stands for index j+1, so n+1-(j+1) = n-j
    return tuple(j + 1 for j in range(n) if (n - j) + sn[j] == sa[j])


def _l_members(N, alpha) -> tuple[int, ...]:
    return tuple(j + 1 for j in range(len(N)) if alpha[j] >= N[j] + 1)


def compute_K(N: Sequence[int], alpha: Sequence[int]) -> IndexSubset:
    n = _check_dims(N, alpha)
    return IndexSubset(_k_members(N, alpha), n)


def compute_L(N: Sequence[int], alpha: Sequence[int]) -> IndexSubset:
    n = _check_dims(N, alpha)
    return IndexSubset(_l_members(N, alpha), n)


def _box_guard(N: Sequence[int]) -> int:
    n = len(N)
    side = sum(N) + n + 1
    if n > MAX_DIMENSION:
        raise CapacityError(f"dimension {n} exceeds the limit {MAX_DIMENSION}")
    if side**n > MAX_BOX:
        raise CapacityError(f"scan box {side}^{n} exceeds {MAX_BOX} points")
    return side


def enumerate_contributing_alphas(N: Sequence[int]) -> list[tuple[MultiIndex, IndexSubset, IndexSubset]]:
    """All alpha in the box {0..|N|+n}^n with |K(N, alpha)| = |L(N, alpha)|.

    Returned in lexicographic order of alpha, each with its K and L.
    """
    N = multi_index(N)
    n = len(N)
    side = _box_guard(N)
    out = []
    for alpha in itertools.product(range(side), repeat=n):
        k = _k_members(N, alpha)
        l = _l_members(N, alpha)
        if len(k) == len(l):
            out.append((alpha, IndexSubset(k, n), IndexSubset(l, n)))
    return out


def enumerate_J(I, N: Sequence[int]) -> list[MultiIndex]:
    """J(I, N) in lexicographic order."""
    N = multi_index(N)
    if not isinstance(I, IndexSubset):
        I = IndexSubset(tuple(I), len(N))
    if I.n != len(N):
        raise ValueError("subset dimension does not match N")
    return [a for a, k, _ in enumerate_contributing_alphas(N) if k.members == I.members]


def tail_sums(values: Sequence) -> list:
    """[v_1 + ... + v_n, v_2 + ... + v_n, ..., v_n]."""
    out = []
    acc = Fraction(0) if all(is_exact(v) for v in values) else complex(0)
    for v in reversed(values):
        acc = acc + v
        out.append(acc)
    return out[::-1]


@dataclass(frozen=True)
class GLimitInput:
    N: MultiIndex
    alpha: MultiIndex
    theta: tuple

    def __post_init__(self):
        object.__setattr__(self, "N", multi_index(self.N))
        object.__setattr__(self, "alpha", multi_index(self.alpha))
        object.__setattr__(self, "theta", tuple(self.theta))
        if not (len(self.N) == len(self.alpha) == len(self.theta)):
            raise ValueError("dimensions of N, alpha and theta must agree")


@dataclass(frozen=True)
class HypothesisViolated:
    """Signal returned when |K| != |L|; the value at zero is not the closed form."""

    q: int
    q_prime: int

    def __bool__(self) -> bool:
        return False


def _theta_tails(theta) -> list:
    S = tail_sums(theta)
    for j, s in enumerate(S, start=1):
        if s == 0:
            raise DomainError(f"tail sum theta_{j} + ... + theta_n vanishes")
    return S


def _gap(N, alpha) -> list[int]:
    """T_j = (N_j + ... + N_n) + (n+1-j) - (alpha_j + ... + alpha_n)."""
    n = len(N)
    sn, sa = _suffix(N), _suffix(alpha)
    return [sn[j] + (n - j) - sa[j] for j in range(n)]


def g_delta(theta) -> float:
    """Radius of the disk on which G is analytic."""
    S = _theta_tails(theta)
    cands = [1.0 / (1.0 + abs(complex(t))) for t in theta]
    cands += [1.0 / abs(complex(s)) for s in S]
    return 0.5 * min(cands)


def g_at_zero(inp: GLimitInput):
    """Closed value of G at t = 0 when |K| = |L|.

    Returns a :class:`HypothesisViolated` marker when |K| != |L|.
    """
    N, alpha, theta = inp.N, inp.alpha, inp.theta
    n = len(N)
    S = _theta_tails(theta)
    K = _k_members(N, alpha)
    L = _l_members(N, alpha)
    if len(K) != len(L):
        return HypothesisViolated(len(K), len(L))
    exact = all(is_exact(t) for t in theta)
    val = Fraction((-1) ** (n - len(K))) if exact else complex((-1) ** (n - len(K)))
    T = _gap(N, alpha)
    for j in range(1, n + 1):
        a, m = alpha[j - 1], N[j - 1]
        if j in L:
            val = val * ((-1) ** (a - m)) * theta[j - 1] / (a * binomial_integer(a - 1, m))
        else:
            val = val * binomial_integer(m, a)
        if j not in K:
            val = val * S[j - 1] / T[j - 1]
    return val


def g_sample(inp: GLimitInput, t):
    """Direct evaluation of G(t) for 0 < |t| < delta."""
    N, alpha, theta = inp.N, inp.alpha, inp.theta
    if t == 0:
        raise ValueError("t must be nonzero")
    delta = g_delta(theta)
    if abs(complex(t)) >= delta:
        raise ValueError(f"|t| = {abs(complex(t))} is not below delta = {delta}")
    S = tail_sums(theta)
    T = _gap(N, alpha)
    num = Fraction(1) if is_exact(t) and all(map(is_exact, theta)) else complex(1)
    den = num
    for j in range(len(N)):
        num = num * binomial_scalar(N[j] - t * theta[j], alpha[j])
        factor = t - Fraction(T[j]) / S[j] if is_exact(S[j]) else t - T[j] / S[j]
        if factor == 0:
            raise ZeroDivisionError(f"denominator factor {j + 1} vanishes at t = {t}")
        den = den * factor
    out = num / den
    if isinstance(out, GaussianRational) and out.im == 0:
        return out.re
    return out
