import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.integrate import quad

from npkorovkin.errors import ArgumentError
from npkorovkin.fourier import (FourierConvention, Spectrum, class_u_diagnostic, convolve, fejer_identity,
                                fejer_kernel, fejer_mass_outside, fourier_transform, inverse_transform,
                                transform_spectrum)
from npkorovkin.functions import SYMMETRIC, bump, bump_transform, gaussian_spectrum, tent
from npkorovkin.numerics import Interval, QuadratureSpec, RealFunction


def indicator_0_pi():
    return RealFunction(lambda t: np.ones_like(np.asarray(t, dtype=float)), Interval(0.0, math.pi), "C2",
                        compact_support=True)


def test_indicator_transform():
    f = indicator_0_pi()
    # int_0^pi e^{-i x theta} dx = (1 - e^{-i pi theta}) / (i theta)
    for th in (0.5, 2.0, 7.3):
        exact = (1 - np.exp(-1j * math.pi * th)) / (1j * th)
        assert fourier_transform(f, th) == pytest.approx(exact, abs=1e-12)
    assert abs(fourier_transform(f, 2.0) - (1 - np.exp(-2j * math.pi)) / 2j) < 1e-12


@given(st.floats(-60, 60))
def test_bump_transform_against_quad(theta):
    exact = quad(lambda x: (1 - x * x) ** 3 * math.cos(x * theta), -1, 1, limit=200)[0]
    assert bump_transform(theta) == pytest.approx(exact, abs=1e-10)


def test_bump_quadrature_matches_closed_form():
    th = np.linspace(-30, 30, 61)
    assert np.max(np.abs(fourier_transform(bump(), th) - bump_transform(th))) < 1e-12


def test_ordinary_frequency_gaussian():
    c = FourierConvention(frequency="ordinary")
    g = RealFunction(lambda x: np.exp(-np.asarray(x) ** 2), Interval(-9.0, 9.0), "C2", compact_support=True)
    th = np.array([0.0, 0.3, 1.0])
    assert np.allclose(fourier_transform(g, th, conv=c), gaussian_spectrum(1.0, "ordinary")(th), atol=1e-12)
    assert np.allclose(fourier_transform(g, th), gaussian_spectrum(1.0, "angular")(th), atol=1e-12)


def test_roundtrip_bump():
    spec = Spectrum(bump_transform, Interval(-400.0, 400.0))
    x = np.linspace(-1.2, 1.2, 13)
    assert np.max(np.abs(inverse_transform(spec, x) - bump()(x))) < 1e-7


def test_convention_aliases_and_errors():
    assert FourierConvention(phase_mode="alternating").phase_mode == "alternating-sign"
    assert FourierConvention(phase_mode="exact").phase_mode == "exact-exponential"
    assert FourierConvention().self_consistent
    assert FourierConvention(1.0, 1.0, frequency="ordinary").self_consistent
    assert not FourierConvention(1.0, 1.0).self_consistent
    with pytest.raises(ArgumentError):
        FourierConvention(phase_mode="sloppy")
    with pytest.raises(ArgumentError):
        FourierConvention(frequency="radians")
    with pytest.raises(ArgumentError):
        FourierConvention(forward_scale=math.nan)


def test_transform_needs_compact_support():
    with pytest.raises(ArgumentError):
        fourier_transform(RealFunction(np.sin, SYMMETRIC), 1.0)
    with pytest.raises(ArgumentError):
        inverse_transform(Spectrum(np.cos), 0.0)


def test_spectrum_support_truncates():
    s = Spectrum(lambda t: np.ones_like(t), Interval(-1.0, 1.0))
    assert s(2.0) == 0 and s(0.5) == 1


def test_fejer_kernel_mass():
    d = 0.1
    k = fejer_kernel(d)
    total = 2 * quad(k, 0, 2000 * d, limit=2000)[0]
    assert total == pytest.approx(1.0 - fejer_mass_outside(d, 2000 * d), abs=1e-8)


@pytest.mark.parametrize("ratio", [50.0, 200.0, 2000.0])
def test_fejer_mass_outside_tail(ratio):
    # the tail behaves like 2 delta / (pi R) to leading order
    d = 0.05
    m = fejer_mass_outside(d, ratio * d)
    assert m == pytest.approx(2 / (math.pi * ratio), rel=0.02)
    # R = 200 delta still leaves about 3.2e-3 of the mass outside
    assert (m < 1e-3) == (ratio >= 2000)


def test_fejer_transform_triangle():
    ai = fejer_identity(0.25)
    assert ai.transform(0.0) == 1.0
    assert ai.transform(2.0) == pytest.approx(0.5)
    assert ai.transform(5.0) == 0.0
    # the inverse of the triangle at 0 is its area over 2 pi
    assert inverse_transform(ai.transform, 0.0).real == pytest.approx(4.0 / (2 * math.pi), abs=1e-12)
    with pytest.raises(ArgumentError):
        fejer_identity(0.0)


def test_convolution_smooths_towards_function():
    f = tent()
    for d, tol in ((0.05, 0.2), (0.002, 0.02)):
        assert abs(convolve(f, fejer_identity(d), 0.25) - f(0.25)) < tol


def test_class_u_decay():
    g = gaussian_spectrum()
    d = class_u_diagnostic(g, 4)
    assert len(d.maxima) == 9
    assert d.maxima[4].peak == pytest.approx(math.sqrt(math.pi))
    assert d.tail_estimate < 1e-10
    slow = class_u_diagnostic(lambda t: np.ones_like(t), 3)
    assert slow.tail_estimate == math.inf
    with pytest.raises(ArgumentError):
        class_u_diagnostic(g, -1)


def test_transform_spectrum_exact_override():
    s = transform_spectrum(bump(), support=Interval(-5.0, 5.0), exact=bump_transform)
    assert s(1.0) == pytest.approx(bump_transform(1.0))
    assert s(6.0) == 0
