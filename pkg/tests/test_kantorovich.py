import math
import threading

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from npkorovkin import kantorovich as ka
from npkorovkin.errors import ArgumentError, InconsistencyError
from npkorovkin.functions import UNIT, abs_centred, decaying_exponential, monomial
from npkorovkin.numerics import Interval, RealFunction


def brute_kantorovich(n, f_anti, x, u, v):
    """Termwise sum with exact binomials and exact cell integrals."""
    tot = 0.0
    for k in range(n + 1):
        cell = f_anti((k + 1) / (n + 1)) - f_anti(k / (n + 1))
        tot += math.comb(n, k) * u**k * v ** (n - k) * cell
    return (n + 1) * tot


def test_constant_reproduced():
    x = np.linspace(0, 1, 11)
    assert np.max(np.abs(ka.kantorovich(12, monomial(0), x) - 1.0)) < 1e-12


def test_first_moment_example():
    assert ka.kantorovich(9, monomial(1), 0.4) == pytest.approx(0.41, abs=1e-10)


@given(st.integers(1, 30), st.floats(0, 1), st.integers(0, 2))
def test_against_brute_sum(n, x, j):
    anti = lambda t: t ** (j + 1) / (j + 1)  # noqa: E731
    assert ka.kantorovich(n, monomial(j), x) == pytest.approx(brute_kantorovich(n, anti, x, x, 1 - x), abs=1e-12)
    assert ka.apply_bn(n, monomial(j), x) == pytest.approx(brute_kantorovich(n, anti, x, -x, 1 - x), abs=1e-12)


def test_domain_check():
    with pytest.raises(ArgumentError):
        ka.kantorovich(3, monomial(0), 1.5)
    with pytest.raises(ArgumentError):
        ka.apply_an(3, monomial(0), -0.1)


@given(st.integers(40, 60), st.floats(0, 1))
def test_log_space_weights_match_direct(n, x):
    w = ka.binomial_weights(n, [x], [1 - x])[0]
    direct = np.array([math.comb(n, k) * x**k * (1 - x) ** (n - k) for k in range(n + 1)])
    assert np.allclose(w, direct, rtol=1e-10, atol=1e-300)
    wb = ka.binomial_weights(n, [-x], [1 - x])[0]
    assert np.allclose(wb, direct * (-1.0) ** np.arange(n + 1), rtol=1e-10, atol=1e-300)


def test_large_order_stays_finite():
    x = np.linspace(0, 1, 101)
    v = ka.kantorovich(2000, monomial(2), x)
    assert np.all(np.isfinite(v))
    assert np.max(np.abs(v - ka.kantorovich_moment(2000, 2, x))) < 1e-10


@given(st.integers(1, 40), st.lists(st.floats(0, 5), min_size=3, max_size=9), st.floats(0, 1))
def test_positivity(n, knots, x):
    xs = np.linspace(0, 1, len(knots))
    f = RealFunction(lambda t: np.interp(t, xs, knots), UNIT, breakpoints=tuple(xs[1:-1]))
    assert ka.kantorovich(n, f, x) >= -1e-12


@given(st.integers(1, 40), st.integers(0, 10**6), st.floats(0, 1))
def test_alternating_dominated_by_positive(n, seed, x):
    rng = np.random.default_rng(seed)
    xs = np.linspace(0, 1, 7)
    ys = rng.normal(size=7)
    f = RealFunction(lambda t: np.interp(t, xs, ys), UNIT, breakpoints=tuple(xs[1:-1]))
    absf = RealFunction(lambda t: np.abs(np.interp(t, xs, ys)), UNIT, breakpoints=tuple(xs[1:-1]))
    assert abs(ka.apply_bn(n, f, x)) <= ka.kantorovich(n, absf, x) + 1e-9


@pytest.mark.parametrize("n,lo,hi", [(4, 0.0, 0.25), (5, 0.25, 0.5), (8, 0.0, 0.125), (1, 0.0, 1.0)])
def test_dyadic_examples(n, lo, hi):
    a = ka.dyadic_indicator(n)
    assert (a.interval.lo, a.interval.hi) == (lo, hi)


@given(st.integers(1, 10**6))
def test_dyadic_invariants(n):
    a = ka.dyadic_indicator(n)
    assert 0.0 <= a.interval.lo < a.interval.hi <= 1.0
    assert a.l1_norm == pytest.approx(2.0**-a.m)
    assert 2**a.m <= n < 2 ** (a.m + 1)


def test_dyadic_rejects():
    with pytest.raises(ArgumentError):
        ka.dyadic_indicator(0)


@pytest.mark.parametrize("n", [3, 7, 12, 40])
@pytest.mark.parametrize("j", [0, 1, 2])
def test_closed_forms(n, j):
    x = np.random.default_rng(n).uniform(0, 1, 1000)
    e = monomial(j)
    assert np.max(np.abs(ka.apply_an(n, e, x) - ka.an_moment(n, j, x))) < 1e-9
    assert np.max(np.abs(ka.apply_bn(n, e, x) - ka.bn_moment(n, j, x))) < 1e-9
    assert np.max(np.abs(ka.kantorovich(n, e, x) - ka.kantorovich_moment(n, j, x))) < 1e-9


def test_low_moment_closed_forms():
    n = 9
    x = np.linspace(0, 1, 21)
    a = ka.dyadic_indicator(n)(x)
    assert np.allclose(ka.apply_an(n, monomial(0), x), (1 - a) ** n)
    e1 = n * x / (2 * (n + 1)) * (1 - a) ** (n - 1) + (1 - a) ** n / (2 * (n + 1))
    assert np.allclose(ka.apply_an(n, monomial(1), x), e1, atol=1e-10)
    assert np.allclose(ka.apply_bn(n, monomial(0), x), (1 - 2 * x) ** n)


def test_bn_second_moment_middle_term():
    # the middle coefficient is -2 n x / (n+1)^2
    n, x = 6, 0.3
    s = 1 - 2 * x
    expect = (n * (n - 1) * x**2 * s ** (n - 2) - 2 * n * x * s ** (n - 1) + s**n / 3) / (n + 1) ** 2
    assert ka.apply_bn(n, monomial(2), x) == pytest.approx(expect, abs=1e-13)


def test_moment_rejects_high_order():
    with pytest.raises(ArgumentError):
        ka.moment(3, 3, 0.1, 0.9)


@pytest.mark.parametrize("n", [3, 7, 15])
def test_bn_e0_norm(n):
    assert ka.output_norm(ka.bn_operator(n), monomial(0)) == pytest.approx(1 / (n + 1), abs=1e-9)


@pytest.mark.parametrize("n", [3, 5, 7, 9])
def test_an_witness(n):
    w = ka.witness_an(n)
    assert w.value < 0
    assert ka.dyadic_indicator(n)(w.x) == 1.0
    assert w.value == pytest.approx(ka.an_witness_value(n, w.x), rel=1e-3)


def test_witness_argument_checks():
    with pytest.raises(ArgumentError):
        ka.witness_an(4)
    with pytest.raises(ArgumentError):
        ka.witness_bn(3, 0.4)
    assert ka.witness_bn(3).value == pytest.approx(-0.125)


def test_norm_bounds():
    rng = np.random.default_rng(3)
    probes = [ka.random_probe(rng) for _ in range(10)]
    assert ka.l1_operator_norm_bound(ka.IDENTITY, probes) == pytest.approx(1.0, abs=1e-6)
    assert ka.l1_operator_norm_bound(ka.kantorovich_operator(12), probes) <= 1 + 1e-6
    assert ka.l1_operator_norm_bound(ka.an_operator(11), probes) <= 3 + 1e-6
    zero = RealFunction(lambda t: np.zeros_like(np.asarray(t, dtype=float)), UNIT)
    with pytest.raises(ArgumentError):
        ka.l1_operator_norm_bound(ka.IDENTITY, [zero])


def test_l1_norm_splits_at_roots():
    # two full humps of |sin 7x| plus the tail past 2 pi / 7
    exact = 4 / 7 + (1 - math.cos(7)) / 7
    assert ka.l1_norm(lambda x: np.sin(7 * np.asarray(x))) == pytest.approx(exact, abs=1e-12)


@pytest.mark.parametrize("n", [5, 10, 20, 50])
def test_mu_closed_form(n):
    # mu_n^2 = int K_n(e2) - 2 x K_n(e1) + x^2 = 1 / (6 (n+1))
    assert ka.mu_n(ka.kantorovich_operator(n)) == pytest.approx(1 / math.sqrt(6 * (n + 1)), rel=1e-9)


def test_mu_identity_zero_and_inconsistency():
    assert ka.mu_n(ka.IDENTITY) == pytest.approx(0.0, abs=1e-6)
    # f - 2 f(0) is not positive: the integrand becomes -2 x^2
    bad = ka.L1Operator("bad", lambda f, x: np.asarray(f(x)) - 2 * f(0.0), lambda f, x: np.asarray(f(x)))
    with pytest.raises(InconsistencyError):
        ka.mu_n(bad)


@pytest.mark.parametrize("f", [abs_centred(), monomial(2)])
def test_mu_bound_holds(f):
    b = ka.mu_bound_check(ka.kantorovich_operator(20), f)
    assert b.holds and 0 < b.lhs < b.rhs


def test_characteristic_conditions():
    iv = Interval(0.2, 0.6)
    ident = ka.characteristic_condition_check(lambda n: ka.IDENTITY, None, iv, [1, 2])
    assert ident.values == pytest.approx((0.4, 0.4), abs=1e-12)
    k = ka.characteristic_condition_check(ka.kantorovich_operator, None, iv, [5, 10, 20, 40, 80])
    assert k.final_ok and all(v <= 0.4 + 1e-9 for v in k.values)
    b = ka.characteristic_condition_check(ka.bn_operator, None, iv, [5, 21, 81])
    assert abs(b.values[-1] - 0.4) < 0.02


def test_tent_errors_shrink():
    f = RealFunction(lambda t: 1 - 2 * np.asarray(t, dtype=float), UNIT, "C2")
    errs = [ka.output_norm(ka.bn_operator(n), f) for n in (4, 16, 64)]
    assert errs[0] > errs[1] > errs[2]


def test_cell_cache_threads():
    f = decaying_exponential()
    ka.CELLS.clear()
    out = []

    def work():
        out.append(ka.cell_integrals(f, 33).copy())

    threads = [threading.Thread(target=work) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    exact = np.exp(-np.arange(34) / 34) - np.exp(-np.arange(1, 35) / 34)
    for c in out:
        assert np.allclose(c, exact, atol=1e-15)


def test_cells_without_antiderivative():
    f = RealFunction(lambda t: np.asarray(t, dtype=float) ** 2, UNIT, "C2")
    c = ka.cell_integrals(f, 4)
    edges = np.arange(6) / 5
    assert np.allclose(c, np.diff(edges**3 / 3), atol=1e-13)
