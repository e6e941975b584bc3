from __future__ import annotations

import math
import random
from dataclasses import replace
from fractions import Fraction as F

import pytest

from mzv.closed_form import SpecialValueQuery, YClosedFormQuery, theorem1_value, y_closed_form
from mzv.errors import DomainError, NearPoleError, OracleError, PoleError
from mzv.oracle import (
    BlockedSeriesSpec,
    ContinuationConfig,
    base_case_eval,
    check_off_polar,
    continue_eval,
    continue_eval_detailed,
    eval_in_domain,
    hurwitz_exact,
    hurwitz_zeta,
    laurent_along_direction,
    quadrature_Y,
    raabe_link_check,
    reduce_once,
)

ZETA2 = math.pi**2 / 6
CFG = ContinuationConfig()


def simple(s, u, gamma):
    return BlockedSeriesSpec.simple(list(s), list(u), list(gamma))


# Hurwitz zeta ----------------------------------------------------------------


def test_hurwitz_examples():
    assert hurwitz_zeta(-1, 1) == pytest.approx(-1 / 12, abs=1e-14)
    for a in (0.25, 1.0, 2.7, 0.5 + 0.5j):
        assert hurwitz_zeta(0, a) == pytest.approx(0.5 - a, abs=1e-13)
    assert hurwitz_zeta(2, 1) == pytest.approx(ZETA2, rel=1e-15)


# reference values from mpmath.zeta(s, a) at 30 digits
@pytest.mark.parametrize(
    "s,a,ref,tol",
    [
        (-1.5 + 2j, 0.3, -0.10410506269402033 - 0.10547052193722103j, 1e-12),
        (0.5, 1, -1.4603545088095868, 1e-13),
        (3, 2.5, 0.1181020258208637, 1e-14),
        (-2.5, 0.75, 0.00679865558288646, 1e-13),
        (2 + 10j, 1, 1.1979825006741847 - 0.07917049172052575j, 1e-12),
    ],
)
def test_hurwitz_against_reference(s, a, ref, tol):
    assert abs(hurwitz_zeta(s, a) - ref) < tol


def test_hurwitz_against_mpmath_live():
    mpmath = pytest.importorskip("mpmath")
    rng = random.Random(5)
    for _ in range(10):
        s = complex(rng.uniform(-4, 4), rng.uniform(-5, 5))
        a = complex(rng.uniform(0.1, 3), rng.uniform(-1, 1))
        ref = complex(mpmath.zeta(s, a))
        # at Re s < 0 the direct terms reach ~1e5 and cancel, so the error is absolute
        assert abs(hurwitz_zeta(s, a) - ref) < 1e-9 * max(1, abs(ref))


def test_hurwitz_exact_and_errors():
    assert hurwitz_exact(1, F(1)) == F(-1, 12)
    assert hurwitz_exact(0, F(1, 3)) == F(1, 6)
    with pytest.raises(ValueError):
        hurwitz_exact(-1, 1)
    with pytest.raises(NearPoleError):
        hurwitz_zeta(1 + 1e-12, 1)
    with pytest.raises(DomainError):
        hurwitz_zeta(2, -0.5)


# base case -------------------------------------------------------------------


def test_base_case_examples():
    assert base_case_eval([2], [0], 1) == pytest.approx(ZETA2, abs=1e-9)
    assert base_case_eval([0], [0], 1) == pytest.approx(-0.5, abs=1e-9)
    # the direct tail decays like 1/R here, so 1e-6 is the practical tolerance
    direct = eval_in_domain(BlockedSeriesSpec(((1.5, 0.5),), ((0, 1),), (1,)), ContinuationConfig(tolerance=1e-6))
    assert abs(base_case_eval([1.5, 0.5], [0, 1], 1) - direct) < 1e-6 + CFG.tolerance


def test_base_case_negative_integer():
    # sum_m (m + 1/2)^1 continued: zeta(-1, 3/2)
    assert base_case_eval([-1], [0.5], 1) == pytest.approx(float(hurwitz_exact(1, F(3, 2))), abs=1e-9)


# direct summation --------------------------------------------------------------


def test_eval_in_domain_examples():
    assert abs(eval_in_domain(simple([2], [0], [1]), ContinuationConfig(tolerance=1e-6)) - ZETA2) < 1e-6
    tol = ContinuationConfig(tolerance=1e-10)
    assert abs(eval_in_domain(simple([2, 2], [0, 1], [1, 1]), tol) - math.pi**4 / 120) < 1e-10


@pytest.mark.parametrize(
    "spec",
    [
        simple([2, 2], [0, 1], [1, 1]),
        simple([1.5, 2.5 + 1j], [0.3, 0.2], [1 + 0.5j, 0.7 - 0.3j]),
        BlockedSeriesSpec(((2,), (2.5, 1.5)), ((0,), (0.5, 1)), (1, 1)),
    ],
)
def test_eval_in_domain_tolerance_consistency(spec):
    a = eval_in_domain(spec, ContinuationConfig(tolerance=1e-8))
    b = eval_in_domain(spec, ContinuationConfig(tolerance=1e-10))
    assert abs(a - b) < 2e-8


def test_eval_in_domain_errors():
    with pytest.raises(DomainError):
        eval_in_domain(simple([1.5, 0.4], [0, 0], [1, 1]))
    with pytest.raises(OracleError):
        eval_in_domain(simple([1.01, 1.01], [0, 0], [1, 1]), ContinuationConfig(tolerance=1e-12, max_lattice_points=10**5))


def test_spec_validation():
    with pytest.raises(DomainError):
        simple([2], [0], [-1])
    with pytest.raises(DomainError):
        simple([2], [-1.5], [1])


# reduction -------------------------------------------------------------------


def test_reduce_once_child_sizes():
    red = reduce_once(simple([2.5, 3.5], [0, 0.25], [1, 1]), CFG, K=4)
    assert red.terms
    assert all(child.q == (2,) for _, child in red.terms)


def test_reduce_once_family_ii_leading_coefficient():
    spec = simple([2.5, 3.5], [0, 0.25], [1, 1])
    red = reduce_once(spec, CFG, K=3)
    lead = [c for c, child in red.terms if child.exponents[0][1:] == (3.5 + 0j,) and child.shifts[0][1:] == (0.25 + 0j,)]
    assert lead == [0.5]


def test_reduce_once_recombines_to_parent():
    cfg = ContinuationConfig(tolerance=1e-10)
    spec = simple([2.5, 4.5], [0, 0.3], [1, 1])
    red = reduce_once(spec, cfg, K=6)
    assert math.isfinite(red.remainder_bound)
    total = sum(c * eval_in_domain(child, cfg) for c, child in red.terms)
    slack = sum(abs(c) for c, _ in red.terms) * cfg.tolerance
    assert abs(total - eval_in_domain(spec, cfg)) <= red.remainder_bound + slack


def test_reduce_once_requires_two_dimensions():
    with pytest.raises(ValueError):
        reduce_once(simple([2], [0], [1]))


def test_reduce_once_near_pole_guard():
    # -1 + s_2 + 0 vanishes: the alpha = 0 family (i) term blows up
    with pytest.raises(NearPoleError):
        reduce_once(simple([2, 1], [0, 0.5], [1, 1]), CFG, K=2)


# continuation ----------------------------------------------------------------


def test_continue_eval_examples():
    assert continue_eval(simple([-1], [0], [1])) == pytest.approx(-1 / 12, abs=1e-8)
    assert continue_eval(simple([2, 2], [0, 1], [1, 1])) == pytest.approx(math.pi**4 / 120, abs=1e-8)


def test_continue_eval_refinement_stability():
    spec = simple([-0.25 + 1e-3, -0.25 + 2e-3j], [0, 1], [1, 1])
    a = continue_eval(spec, CFG)
    b = continue_eval(spec, replace(CFG, K=CFG.K + 2, M=2 * CFG.M))
    assert abs(a - b) < 10 * CFG.tolerance


def test_continue_eval_errors():
    with pytest.raises(NearPoleError):
        continue_eval(simple([1], [0], [1]))
    with pytest.raises(NearPoleError):
        continue_eval(simple([0, 0], [0, 1], [1, 1]))
    with pytest.raises(OracleError):
        spec = BlockedSeriesSpec(((2,) * 7, (1.5,) * 6), (tuple(0.1 * k for k in range(7)), tuple(0.1 * k for k in range(6))), (1, 1))
        continue_eval(spec)


def test_check_off_polar():
    check_off_polar(simple([0.5, 0.3], [0, 0], [1, 1]), 1e-9)
    for s in ([0.5, 1], [1.5, 0.5], [-1.5, 0.5], [2, 1 + 1e-12]):
        with pytest.raises(NearPoleError):
            check_off_polar(simple(s, [0, 0], [1, 1]), 1e-9)


def _random_domain_point(rng: random.Random):
    n = rng.randint(1, 3)
    s = [0.0] * n
    s[-1] = rng.uniform(3.5, 5.0)
    for j in range(n - 2, -1, -1):
        s[j] = rng.uniform(1.0, 2.5)
    s = [complex(x, rng.uniform(-1, 1)) for x in s]
    u = [rng.uniform(0, 1) for _ in range(n)]
    gamma = [complex(rng.uniform(0.6, 1.6), rng.uniform(-0.3, 0.3)) for _ in range(n)]
    return simple(s, u, gamma)


def test_overlap_consistency_randomized():
    rng = random.Random(31)
    direct_cfg = ContinuationConfig(tolerance=1e-9)
    for _ in range(20):
        spec = _random_domain_point(rng)
        assert spec.in_domain(1e-3)
        d = eval_in_domain(spec, direct_cfg)
        c = continue_eval(spec, CFG)
        assert abs(d - c) < CFG.tolerance + direct_cfg.tolerance


def test_refinement_within_bounds_randomized():
    rng = random.Random(8)
    fine = replace(CFG, K=CFG.K + 2, M=2 * CFG.M)
    for _ in range(20):
        n = rng.randint(1, 2)
        s = [complex(rng.uniform(-2.5, 0.8), rng.uniform(-1, 1)) for _ in range(n)]
        u = [rng.uniform(0, 1) for _ in range(n)]
        spec = simple(s, u, [1] * n)
        v1, b1, _ = continue_eval_detailed(spec, CFG)
        v2, b2, _ = continue_eval_detailed(spec, fine)
        assert abs(v1 - v2) <= b1 + b2


def test_determinism():
    spec = simple([-0.3 + 0.2j, 0.7], [0.1, 0.6], [1, 1.5])
    assert continue_eval(spec) == continue_eval(spec)
    assert eval_in_domain(simple([2, 3], [0, 0.5], [1, 1])) == eval_in_domain(simple([2, 3], [0, 0.5], [1, 1]))


# Laurent coefficients ------------------------------------------------------------


def _query(N, gamma, b, theta):
    return SpecialValueQuery(tuple(N), tuple(gamma), tuple(b), tuple(theta))


def test_laurent_n1_regular_point():
    lx = laurent_along_direction(_query((1,), (1,), (0,), (1,)))
    assert abs(lx.z(-1)) < 1e-6
    assert abs(lx.z0 + 1 / 12) < 1e-6


def test_laurent_n2_vanishing_poles_and_z0():
    qq = _query((0, 0), (1, 1), (0, 1), (1, 1))
    lx = laurent_along_direction(qq)
    assert abs(lx.z(-1)) < 1e-6 and abs(lx.z(-2)) < 1e-6
    assert abs(lx.z0 - complex(theorem1_value(qq).value)) < 1e-6


def test_laurent_direction_independence_n1():
    a = laurent_along_direction(_query((2,), (1,), (F(1, 2),), (1,))).z0
    b = laurent_along_direction(_query((2,), (1,), (F(1, 2),), (-2,))).z0
    assert abs(a - b) < 2e-6


@pytest.mark.parametrize(
    "N,theta",
    [((1, 0), (F(3, 4), F(-2, 5))), ((0, 2), (F(-1, 3), F(7, 6))), ((0, 0, 0), (F(2, 3), F(1, 2), F(5, 4)))],
)
def test_pole_order_cap_generic_theta(N, theta):
    n = len(N)
    gamma = tuple(F(j + 3, j + 2) for j in range(n))
    b = tuple(F(j, 3) for j in range(n))
    lx = laurent_along_direction(_query(N, gamma, b, theta))
    for k in range(1, n + 2):
        assert abs(lx.z(-k)) < 1e-6


def test_laurent_errors():
    qq = _query((0,), (1,), (0,), (1,))
    with pytest.raises(OracleError):
        laurent_along_direction(qq, replace(CFG, nodes=4))
    with pytest.raises(OracleError):
        # delta = 1 for theta = (1, 1); a radius of 0.49 stays below, 0.25 default
        laurent_along_direction(_query((0, 0), (1, 1), (0, 1), (4, -3)), replace(CFG, radius=0.49))


def test_config_validation():
    with pytest.raises(ValueError):
        ContinuationConfig(K=0)
    with pytest.raises(ValueError):
        ContinuationConfig(M=4)
    with pytest.raises(ValueError):
        ContinuationConfig(radius=0.6)
    with pytest.raises(ValueError):
        ContinuationConfig(eps_sing=0)
    assert ContinuationConfig.from_mapping({"K": 10}).K == 10
    with pytest.raises(ValueError):
        ContinuationConfig.from_mapping({"bogus": 1})


# quadrature ---------------------------------------------------------------------


def test_quadrature_examples():
    assert abs(quadrature_Y([2], [0], [1]) - 1) < 1e-10
    assert abs(quadrature_Y([2, 2], [0, 0], [1, 1]) - 0.5) < 1e-10
    assert y_closed_form(YClosedFormQuery((2, 2), (1, 1))) == F(1, 2)


def test_quadrature_matches_shift_series():
    # Y(s; u) = sum_alpha C(-s, alpha) u^alpha Y(s + alpha; 0)
    u = F(1, 4)
    total = F(0)
    for a1 in range(0, 40):
        for a2 in range(0, 40 - a1):
            c = F(math.comb(a1 + 1, a1) * (-1) ** a1) * F(math.comb(a2 + 1, a2) * (-1) ** a2)
            total += c * u ** (a1 + a2) * y_closed_form(YClosedFormQuery((2 + a1, 2 + a2), (1, 1)))
    assert abs(quadrature_Y([2, 2], [0.25, 0.25], [1, 1]) - float(total)) < 1e-9


def test_quadrature_n3_and_errors():
    want = float(y_closed_form(YClosedFormQuery((2, 2, 3), (1, 1, 1))))
    assert abs(quadrature_Y([2, 2, 3], [0, 0, 0], [1, 1, 1]) - want) < 1e-8
    with pytest.raises(OracleError):
        quadrature_Y([3] * 4, [0] * 4, [1] * 4)
    with pytest.raises(DomainError):
        quadrature_Y([1, 0.5], [0, 0], [1, 1])
    with pytest.raises(PoleError):
        y_closed_form(YClosedFormQuery((1,), (1,)))


# integral link ------------------------------------------------------------------


def test_raabe_link_examples():
    assert raabe_link_check(simple([3], [0], [1]))["gap"] < 1e-6
    rep = raabe_link_check(simple([2, 2], [0, 1], [1, 1]), ContinuationConfig(tolerance=1e-7))
    assert rep["gap"] < 1e-5 and rep["passed"]
    assert raabe_link_check(simple([6], [0], [1]))["gap"] < 1e-8


def test_raabe_link_rejects_n3():
    with pytest.raises(OracleError):
        raabe_link_check(simple([2, 2, 3], [0, 0, 0], [1, 1, 1]))
