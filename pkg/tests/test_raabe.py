from __future__ import annotations

from fractions import Fraction as F

from hypothesis import given, settings
from hypothesis import strategies as st

from mzv.arith import bernoulli_polynomial
from mzv.closed_form import y_theta_value
from mzv.oracle import BlockedSeriesSpec, ContinuationConfig, continue_eval
from mzv.polynomial import MultivariatePolynomial
from mzv.raabe import bernoulli_lift, cube_average, raabe_numeric_check


def _uni(coeffs):
    return MultivariatePolynomial(1, {(k,): c for k, c in enumerate(coeffs)})


def test_cube_average_examples():
    one = MultivariatePolynomial.constant(1)
    assert cube_average(one) == one
    assert cube_average(_uni(bernoulli_polynomial(1))) == MultivariatePolynomial.variable(1, 0)
    g = MultivariatePolynomial(2, {(1, 1): 1, (1, 0): F(-1, 2), (0, 1): F(-1, 2), (0, 0): F(1, 4)})
    assert cube_average(g) == MultivariatePolynomial(2, {(1, 1): 1})


def test_bernoulli_lift_examples():
    assert bernoulli_lift(MultivariatePolynomial.constant(1)) == MultivariatePolynomial.constant(1)
    assert bernoulli_lift(MultivariatePolynomial.variable(1, 0)) == _uni([F(-1, 2), 1])
    assert bernoulli_lift(MultivariatePolynomial.monomial((2,))) == _uni([F(1, 6), -1, 1])


def test_average_of_bernoulli_polynomials_is_power():
    for k in range(17):
        assert cube_average(_uni(bernoulli_polynomial(k))) == MultivariatePolynomial.monomial((k,))


poly_terms = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3)),
    st.fractions(min_value=-10, max_value=10, max_denominator=9),
    max_size=6,
)


@settings(max_examples=80, deadline=None)
@given(poly_terms)
def test_lift_then_average_is_identity(terms):
    f = MultivariatePolynomial(2, terms)
    assert cube_average(bernoulli_lift(f)) == f


@settings(max_examples=80, deadline=None)
@given(poly_terms)
def test_average_then_lift_is_identity(terms):
    g = MultivariatePolynomial(2, terms)
    assert bernoulli_lift(cube_average(g)) == g


def test_numeric_check_polynomial():
    f = MultivariatePolynomial.monomial((2,))
    g = bernoulli_lift(f)
    rep = raabe_numeric_check(lambda x: complex(g.evaluate([x])), f, [[0], [0.5], [2]])
    assert rep.passed and rep["max_gap"] < 1e-10


def test_numeric_check_constant():
    f = MultivariatePolynomial.constant(1, F(5))
    rep = raabe_numeric_check(lambda x: 5.0, f, [[0.1], [1.3]])
    assert rep.passed
    assert all(abs(c - 5) < 1e-12 for c in rep["computed"])


def test_numeric_check_on_oracle_section():
    # u -> Z_1(0; u; 1) averaged over [u, u+1] reproduces psi(u) = -1 - u
    cfg = ContinuationConfig()
    _, psi = y_theta_value((0,), (0,), (1,), (1,))

    def g(u):
        return continue_eval(BlockedSeriesSpec.simple([0], [u], [1]), cfg)

    rep = raabe_numeric_check(g, psi, [[0.2], [0.9], [1.7]], tolerance=1e-5, nodes=8)
    assert rep.passed
