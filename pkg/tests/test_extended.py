import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad, quad_vec

from npkorovkin import extended as ex
from npkorovkin.chebyshev import chebyshev_grid, shifted_pair
from npkorovkin.errors import ArgumentError, CapabilityError
from npkorovkin.fourier import FourierConvention, Spectrum
from npkorovkin.functions import bump_transform, gaussian_spectrum, tent
from npkorovkin.grunwald import apply_gn
from npkorovkin.numerics import Interval

ALT_ORDINARY = FourierConvention(phase_mode="alternating", frequency="ordinary")


def quad_vk(n, k, p):
    g = chebyshev_grid(n)
    re = quad(lambda t: shifted_pair(g, k, t, "product-form") * math.cos(p * t), 0, math.pi, limit=200)[0]
    im = quad(lambda t: shifted_pair(g, k, t, "product-form") * math.sin(p * t), 0, math.pi, limit=200)[0]
    return re + 1j * im


def test_rr_spot_values():
    # R_0(p) = 2 int_0^pi e^{i p t} dt
    assert ex.rr_term(0, 1.0, 5) == pytest.approx(4j)
    assert ex.rr_term(0, 0.0, 5) == pytest.approx(2 * math.pi)
    # the form has R_0(0) = 2, which cannot equal 2 pi
    assert ex.rr_term(0, 0.0, 5, "literal") == pytest.approx(2.0)


@pytest.mark.parametrize("r", [1, 2, 3, 5])
def test_rr_matches_quadrature(r):
    n, p = 8, 0.7
    a = math.pi / (2 * n)
    f = lambda t: math.cos(t - a) ** r + math.cos(t + a) ** r  # noqa: E731
    exact = (quad(lambda t: f(t) * math.cos(p * t), 0, math.pi)[0]
             + 1j * quad(lambda t: f(t) * math.sin(p * t), 0, math.pi)[0])
    assert ex.rr_term(r, p, n) == pytest.approx(exact, abs=1e-12)


def test_rr_validation():
    with pytest.raises(ArgumentError):
        ex.rr_term(-1, 0.0, 4)
    with pytest.raises(ArgumentError):
        ex.rr_term(2, 0.0, 4, "bogus")


def test_elementary_coeffs_reconstruct():
    g = chebyshev_grid(7)
    c = ex.elementary_coeffs(g, 3)
    t = np.linspace(0, math.pi, 11)
    expect = np.prod([np.cos(t) - g.cos_nodes[j] for j in range(7) if j != 2], axis=0)
    assert np.allclose(c.reconstruct(t), expect, atol=1e-13)
    assert all(type(v) is float for v in c.s)


@settings(max_examples=25)
@given(st.integers(1, 12), st.integers(1, 12), st.floats(-3, 3))
def test_closed_form_matches_oscillatory_quadrature(n, k, p):
    k = min(k, n)
    g = chebyshev_grid(n)
    assert ex.vk_closed_form(g, k, p) == pytest.approx(quad_vk(n, k, p), abs=1e-8)
    assert ex.vk_quadrature(n, [p])[0, k - 1] == pytest.approx(quad_vk(n, k, p), abs=1e-10)


def test_closed_form_capability_limit():
    with pytest.raises(CapabilityError):
        ex.vk_values(ex.CLOSED_FORM_CAP + 1, [1.0], "closed-form")
    with pytest.raises(CapabilityError):
        ex.apply_kn(40, gaussian_spectrum(), 1.0, 4, "closed-form")
    with pytest.raises(ArgumentError):
        ex.vk_values(4, [1.0], "fft")


def independent_kn(n, m, p, spectrum):
    """K_{n,m}(p) with V_k from adaptive quadrature and the alternating window phase."""
    g = chebyshev_grid(n)
    ls = np.arange(-m, m + 1)
    sums = ((-1.0) ** ls) @ spectrum(g.angles[None, :] + math.pi * ls[:, None])

    def integrand(t):
        pairs = np.array([shifted_pair(g, k, t) for k in range(1, n + 1)])
        return pairs * np.exp(1j * p * t)

    V = quad_vec(integrand, 0, math.pi, epsabs=1e-13)[0]
    return 0.5 * np.dot(sums, V) / (2 * math.pi)


def test_kn_gaussian_against_independent_oracle():
    g = gaussian_spectrum(1.0, "ordinary")
    for p in (1.0, math.pi / 4, 1.5):
        ours = ex.apply_kn(20, g, p, 20, conv=ALT_ORDINARY).value
        assert ours == pytest.approx(independent_kn(20, 20, p, g), abs=1e-11)


def test_kn_gaussian_reference_rows():
    g = gaussian_spectrum(1.0, "ordinary")
    v = ex.kn_values(50, g, [1.0, math.pi / 4, 1.5], 50, conv=ALT_ORDINARY)
    # frozen from the independent oracle above at n = m = 50
    assert v[0] == pytest.approx(0.15509756263, abs=1e-10)
    assert v[1] == pytest.approx(0.13250394274 - 0.04643900055j, abs=1e-10)
    # digits
    assert abs(v[0] - 0.15509756) < 1e-8
    assert abs(v[2].real - 0.095911405) < 1e-8 and abs(v[2].imag - 0.0959114) < 1e-7


def test_phase_modes_agree_at_odd_integer_points():
    # e^{i pi l x} = (-1)^l needs x odd
    g = gaussian_spectrum()
    x = [-3.0, -1.0, 1.0, 3.0]
    a = ex.kn_values(16, g, x, 8, conv=FourierConvention(phase_mode="exact"))
    b = ex.kn_values(16, g, x, 8, conv=FourierConvention(phase_mode="alternating"))
    assert np.allclose(a, b, atol=1e-14)
    c = ex.kn_values(16, g, [0.5, 2.0], 8, conv=FourierConvention(phase_mode="exact"))
    d = ex.kn_values(16, g, [0.5, 2.0], 8, conv=FourierConvention(phase_mode="alternating"))
    assert np.all(np.abs(c - d) > 1e-3)


def test_kn_window_is_gn_of_spectrum():
    # with one window, K is the inverse transform over [0, pi] of G_n applied to the spectrum
    n = 9
    spec = lambda t: np.exp(-np.asarray(t, dtype=float))  # noqa: E731
    x = 0.7
    gn = lambda t: apply_gn(n, spec, t)  # noqa: E731
    direct = quad(lambda t: gn(t) * math.cos(x * t), 0, math.pi)[0] + \
        1j * quad(lambda t: gn(t) * math.sin(x * t), 0, math.pi)[0]
    win = Spectrum(spec, Interval(0.0, math.pi - 1e-12))
    assert ex.kn_values(n, win, [x], 0)[0] == pytest.approx(direct / (2 * math.pi), abs=1e-12)


def test_auto_truncation():
    assert ex.auto_truncation(Spectrum(np.cos, Interval(-4 * math.pi, 4 * math.pi))) == 4
    assert ex.auto_truncation(gaussian_spectrum()) <= 8
    with pytest.raises(CapabilityError):
        ex.auto_truncation(lambda t: np.ones_like(t), m_max=8)
    with pytest.raises(ArgumentError):
        ex.kn_values(4, gaussian_spectrum(), [0.0], -1)


def test_hn_identity_and_convergence():
    f = tent()
    x = np.linspace(-1.5, 1.5, 7)
    for n, d in ((8, 0.5), (16, 0.2)):
        h = ex.hn_values(n, d, f, x)
        k = ex.kn_values(n, ex.product_spectrum(f, d), x, "auto")
        assert np.max(np.abs(h - k)) < 1e-8
    with pytest.raises(ArgumentError):
        ex.hn_values(8, 0.0, f, x)
    assert ex.apply_hn_delta(8, 0.5, f, 0.1) == pytest.approx(ex.hn_values(8, 0.5, f, [0.1])[0])


def test_rate_report_decreases():
    spec = Spectrum(bump_transform, Interval(-4 * math.pi, 4 * math.pi))
    t = ex.rate_report([8, 16, 32], spec, Interval(-2.0, 2.0), grid_step=1e-3)
    errs = t.column("l1_error")
    assert errs[0] > errs[1] > errs[2]
    with pytest.raises(ArgumentError):
        ex.rate_report([8], Spectrum(bump_transform), Interval(-2.0, 2.0))
