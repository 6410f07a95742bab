"""Quadrature Fourier transforms of compactly supported functions, window
peak diagnostics, and the Fejer approximate identity.

Conventions
-----------
``F(f)(theta) = forward_scale * int f(x) e^{-i x theta} dx`` and
``F^{-1}(g)(x) = inverse_scale * int g(theta) e^{i x theta} dtheta`` for the
angular frequency variable; the ordinary variable replaces ``x theta`` by
``2 pi x theta``. The pair is self-consistent when
``forward_scale * inverse_scale * 2 pi = 1`` (angular) or
``forward_scale * inverse_scale = 1`` (ordinary).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import ArgumentError, ToleranceNotMetError
from .numerics import (Interval, QuadratureSpec, RealFunction, evaluate_many, panel_nodes,
                       split_edges, sup_on_interval)

PHASE_MODES = ("exact-exponential", "alternating-sign")
PHASE_ALIASES = {"exact": "exact-exponential", "alternating": "alternating-sign"}
FREQUENCIES = ("angular", "ordinary")
PANELS_PER_PERIOD = 8
CHUNK = 1 << 22


@dataclass(frozen=True)
class FourierConvention:
    forward_scale: float = 1.0
    inverse_scale: float = 1.0 / (2.0 * math.pi)
    phase_mode: str = "exact-exponential"
    frequency: str = "angular"

    def __post_init__(self):
        mode = PHASE_ALIASES.get(self.phase_mode, self.phase_mode)
        if mode not in PHASE_MODES:
            raise ArgumentError(f"unknown phase mode {self.phase_mode!r}")
        object.__setattr__(self, "phase_mode", mode)
        if self.frequency not in FREQUENCIES:
            raise ArgumentError(f"unknown frequency variable {self.frequency!r}")
        if not (math.isfinite(self.forward_scale) and math.isfinite(self.inverse_scale)):
            raise ArgumentError("scales must be finite")

    @property
    def omega(self) -> float:
        """Factor multiplying ``x theta`` in the exponent."""
        return 1.0 if self.frequency == "angular" else 2.0 * math.pi

    @property
    def self_consistent(self) -> bool:
        target = 2.0 * math.pi if self.frequency == "angular" else 1.0
        return abs(self.forward_scale * self.inverse_scale * target - 1.0) < 1e-12

    def label(self) -> str:
        return f"{self.frequency}/{self.phase_mode}/fwd={self.forward_scale:g}/inv={self.inverse_scale:.6g}"


DEFAULT_CONVENTION = FourierConvention()


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Complex function of a frequency; ``support`` marks compact support."""

    evaluate: Callable
    support: Interval | None = None
    convention: FourierConvention = DEFAULT_CONVENTION
    breakpoints: tuple = ()
    name: str = ""

    def __call__(self, theta):
        t = np.asarray(theta, dtype=float)
        y = np.asarray(evaluate_many(self.evaluate, t), dtype=complex)
        if self.support is not None:
            y = np.where((t >= self.support.lo) & (t <= self.support.hi), y, 0.0)
        return y if t.ndim else complex(y)


def _oscillatory(values_at: Callable, lo: float, hi: float, breakpoints, freqs: np.ndarray,
                 sign: float, q: QuadratureSpec, where: str) -> np.ndarray:
    """``int_lo^hi v(s) e^{sign i freq s} ds`` for every ``freq``, panel Gauss.

    Panels resolve the fastest oscillation with ``PANELS_PER_PERIOD`` panels
    per period; the estimate is compared against a doubled panel count.
    """
    freqs = np.asarray(freqs, dtype=float)
    fmax = float(np.max(np.abs(freqs))) if freqs.size else 0.0
    length = hi - lo
    base = max(4, int(math.ceil(PANELS_PER_PERIOD * fmax * length / (2.0 * math.pi))))

    def estimate(panels):
        nodes, weights = panel_nodes(split_edges(lo, hi, panels, breakpoints))
        vals = np.asarray(values_at(nodes), dtype=complex) * weights
        out = np.empty(freqs.shape, dtype=complex)
        flat = freqs.ravel()
        step = max(1, CHUNK // max(nodes.size, 1))
        res = out.ravel()
        for s in range(0, flat.size, step):
            ph = np.exp(sign * 1j * np.outer(flat[s:s + step], nodes))
            res[s:s + step] = ph @ vals
        return res.reshape(freqs.shape)

    prev = estimate(base)
    panels = base
    for _ in range(min(q.max_refinement, 8)):
        panels *= 2
        cur = estimate(panels)
        if np.max(np.abs(cur - prev), initial=0.0) <= q.abs_tol:
            return cur
        prev = cur
    raise ToleranceNotMetError(f"{where}: oscillatory quadrature did not settle", prev)


def _support_of(f: RealFunction) -> tuple[float, float, tuple]:
    if not f.compact_support:
        raise ArgumentError("the transform needs a compactly supported function")
    return f.domain.lo, f.domain.hi, tuple(f.breakpoints)


def fourier_transform(f: RealFunction, theta, q: QuadratureSpec = QuadratureSpec(abs_tol=1e-11),
                      conv: FourierConvention = DEFAULT_CONVENTION):
    """``forward_scale * int f(x) e^{-i omega x theta} dx`` over the support of ``f``."""
    lo, hi, bps = _support_of(f)
    t = np.asarray(theta, dtype=float)
    out = conv.forward_scale * _oscillatory(lambda x: evaluate_many(f.evaluate, x), lo, hi, bps,
                                            conv.omega * t, -1.0, q, "fourier_transform")
    return out if t.ndim else complex(out)


def transform_spectrum(f: RealFunction, conv: FourierConvention = DEFAULT_CONVENTION,
                       q: QuadratureSpec = QuadratureSpec(abs_tol=1e-11), support: Interval | None = None,
                       exact: Callable | None = None) -> Spectrum:
    """The transform of ``f`` as a :class:`Spectrum`, optionally truncated to ``support``.

    ``exact`` replaces the quadrature by a known closed form.
    """
    ev = exact if exact is not None else (lambda t: fourier_transform(f, t, q, conv))
    return Spectrum(ev, support, conv, name=f"F({f.name})")


def inverse_transform(g: Spectrum, x, q: QuadratureSpec = QuadratureSpec(abs_tol=1e-11),
                      conv: FourierConvention | None = None):
    """``inverse_scale * int_support g(theta) e^{i omega x theta} dtheta``."""
    if g.support is None:
        raise ArgumentError("the inverse transform needs a compactly supported spectrum")
    conv = conv or g.convention
    xs = np.asarray(x, dtype=float)
    out = conv.inverse_scale * _oscillatory(lambda t: g(t), g.support.lo, g.support.hi, g.breakpoints,
                                            conv.omega * xs, 1.0, q, "inverse_transform")
    return out if xs.ndim else complex(out)


@dataclass(frozen=True)
class WindowPeak:
    l: int
    d: float
    peak: float


@dataclass(frozen=True)
class ClassUDiagnostic:
    l_range: int
    maxima: tuple
    partial_sum: float
    tail_estimate: float


def _geometric_tail(peaks) -> float:
    a, b, c = peaks
    if c == 0.0:
        return 0.0
    ratios = [r for r in (b / a if a > 0 else math.inf, c / b if b > 0 else math.inf)]
    r = max(ratios)
    if not r < 1.0:
        return math.inf
    return c * r / (1.0 - r)


def class_u_diagnostic(g: Callable, m: int, grid_step: float = math.pi / 256) -> ClassUDiagnostic:
    """Peaks of ``|g|`` on each window ``[l pi, (l+1) pi]``, ``|l| <= m``.

    The tail estimate extrapolates the last three peaks on each side
    geometrically; it is infinite when they do not decay.
    """
    if m < 0:
        raise ArgumentError("m must be >= 0")
    mag = lambda t: np.abs(np.asarray(g(t), dtype=complex))  # noqa: E731
    maxima = []
    for l in range(-m, m + 1):
        iv = Interval(l * math.pi, (l + 1) * math.pi)
        d, peak = sup_on_interval(mag, iv, min(grid_step, iv.length / 2))
        maxima.append(WindowPeak(l, d, peak))
    peaks = [w.peak for w in maxima]
    tail = 0.0
    if m >= 2:
        tail = _geometric_tail(peaks[-3:]) + _geometric_tail(peaks[:3][::-1])
    elif peaks and max(peaks[0], peaks[-1]) > 0:
        tail = math.inf
    return ClassUDiagnostic(m, tuple(maxima), float(sum(peaks)), float(tail))


@dataclass(frozen=True, eq=False)
class ApproximateIdentity:
    """Non-negative unit-mass kernel with compactly supported transform."""

    delta: float
    kernel: Callable
    transform: Spectrum

    def multiplier(self, conv: FourierConvention = DEFAULT_CONVENTION) -> Callable:
        """Unit-scale transform in the frequency variable of ``conv``."""
        w = conv.omega
        return lambda t: self.transform(w * np.asarray(t, dtype=float))


def fejer_kernel(delta: float):
    def k(x):
        u = np.asarray(x, dtype=float) / (2.0 * delta)
        return np.sinc(u / math.pi) ** 2 / (2.0 * math.pi * delta)

    return k


def fejer_identity(delta: float) -> ApproximateIdentity:
    """Fejer kernel ``(1/(2 pi delta)) (sin(x/2delta) / (x/2delta))^2``.

    Its transform is the triangle ``1 - |delta theta|`` on ``[-1/delta, 1/delta]``.
    """
    if not delta > 0:
        raise ArgumentError("delta must be > 0")
    tri = lambda t: np.clip(1.0 - np.abs(delta * np.asarray(t, dtype=float)), 0.0, None)  # noqa: E731
    spec = Spectrum(tri, Interval(-1.0 / delta, 1.0 / delta), breakpoints=(0.0,), name="triangle")
    return ApproximateIdentity(delta, fejer_kernel(delta), spec)


def fejer_mass_outside(delta: float, radius: float) -> float:
    """Kernel mass on ``|x| > radius``, from the sine integral."""
    from scipy.special import sici

    u = radius / (2.0 * delta)
    inside = (2.0 / math.pi) * (sici(2.0 * u)[0] - math.sin(u) ** 2 / u)
    return 1.0 - inside


def convolve(f: RealFunction, ai: ApproximateIdentity, x, q: QuadratureSpec = QuadratureSpec(abs_tol=1e-10)):
    """``int f(y) kernel(x - y) dy`` over the domain of ``f`` (zero outside)."""
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    lo, hi = f.domain.lo, f.domain.hi
    period = 4.0 * math.pi * ai.delta
    panels = max(4, int(math.ceil(PANELS_PER_PERIOD * (hi - lo) / period)))
    # the kernel peaks at y = x: put a breakpoint there so the panel resolves it
    out = np.empty(xs.shape)
    for i, xv in enumerate(xs):
        bps = tuple(f.breakpoints) + ((xv,) if lo < xv < hi else ())

        def est(p):
            nodes, w = panel_nodes(split_edges(lo, hi, p, bps))
            return float(np.dot(w, evaluate_many(f.evaluate, nodes) * ai.kernel(xv - nodes)))

        prev = est(panels)
        p = panels
        for _ in range(min(q.max_refinement, 10)):
            p *= 2
            cur = est(p)
            if abs(cur - prev) <= q.abs_tol:
                break
            prev = cur
        else:
            raise ToleranceNotMetError("convolve: quadrature did not settle", prev)
        out[i] = cur
    return out if np.ndim(x) else float(out[0])


def gaussian(scale: float = 1.0, conv: FourierConvention = DEFAULT_CONVENTION) -> Spectrum:
    """Transform of ``e^{-x^2}`` in ``conv`` (closed form, scaled by ``forward_scale * scale``)."""
    from .functions import gaussian_spectrum

    return Spectrum(gaussian_spectrum(conv.forward_scale * scale, conv.frequency), None, conv, name="gaussian")
