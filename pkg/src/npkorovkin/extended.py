"""Window-wise extension of G_n to functions on the line via their transform.

For a spectrum ``g`` the truncated operator is

    K_{n,m}(x) = s_inv * sum_{|l|<=m} 1/2 sum_k g(theta_k + l pi) W_{k,l}(x),
    W_{k,l}(x) = int_{l pi}^{(l+1) pi} pair_k(theta - l pi) e^{i x theta} dtheta
               = e^{i x l pi} V_k(x),
    V_k(x)     = int_0^pi pair_k(eta) e^{i x eta} deta.

The phase ``e^{i x l pi}`` can be replaced by ``(-1)^l``; the two agree only
for odd integer ``x``. ``V_k`` is computed by panel Gauss quadrature (any ``n``)
or from the expansion of ``cos^r`` into single cosines (small ``n``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy.special import comb

from . import kernels
from .chebyshev import ChebyshevGrid, chebyshev_grid
from .errors import ArgumentError, CapabilityError
from .fourier import (DEFAULT_CONVENTION, ApproximateIdentity, FourierConvention, Spectrum,
                      class_u_diagnostic, fejer_identity, fourier_transform, inverse_transform)
from .grunwald import xi_n
from .numerics import Interval, QuadratureSpec, RealFunction, gauss_legendre, panel_nodes
from .report import Column, ReportTable

RR_CAP = 24
CLOSED_FORM_CAP = 16
_SINGULAR = 1e-9


@dataclass(frozen=True)
class ClosedFormCoeffs:
    """``s[r]``: coefficient of ``X^{n-1-r}`` in ``prod_{j != k} (X - cos theta_j)``."""

    n: int
    k: int
    s: tuple

    def reconstruct(self, theta) -> np.ndarray:
        c = np.cos(np.asarray(theta, dtype=float))
        return np.polyval(np.asarray(self.s), c)


def elementary_coeffs(grid: ChebyshevGrid, k: int) -> ClosedFormCoeffs:
    """Signed elementary symmetric polynomials of the other node cosines."""
    if not 1 <= k <= grid.n:
        raise ArgumentError(f"node index must be in 1..{grid.n}")
    s = [1.0]
    for j, c in enumerate(grid.cos_nodes.tolist(), start=1):
        if j == k:
            continue
        nxt = s + [0.0]
        for r in range(1, len(nxt)):
            nxt[r] -= c * s[r - 1]
        s = nxt
    return ClosedFormCoeffs(grid.n, k, tuple(s))


def half_turn_exp(w):
    """``E(w) = int_0^pi e^{i w theta} dtheta`` with the limit ``pi`` at ``w = 0``."""
    w = np.asarray(w, dtype=float)
    small = np.abs(w) < _SINGULAR
    ws = np.where(small, 1.0, w)
    re = np.where(small, math.pi, np.sin(ws * math.pi) / ws)
    im = np.where(small, 0.0, (1.0 - np.cos(ws * math.pi)) / ws)
    return re + 1j * im


def _check_r(r: int):
    if isinstance(r, bool) or int(r) != r or r < 0:
        raise ArgumentError("r must be a non-negative integer")
    if r > RR_CAP:
        raise ArgumentError(f"r = {r} exceeds the enumeration cap {RR_CAP}")


def rr_term(r: int, p: float, n: int, variant: str = "exact") -> complex:
    """``R_r(p) = int_0^pi (cos^r(theta - a) + cos^r(theta + a)) e^{i p theta} dtheta``, ``a = pi/2n``.

    Parameters
    ----------
    variant : {"exact", "literal"}
        ``exact`` expands ``cos^r u = 2^-r sum_phi cos(F_phi u)`` over all sign
        vectors (grouped by ``F_phi`` through binomial multiplicities).
        ``literal`` evaluates the literal sum over ``Q(phi, r)``,
        including its constant ``2`` at ``r = p = 0``; it does not match the
        integral and exists for comparison only.
    """
    _check_r(r)
    a = math.pi / (2 * n)
    if variant == "exact":
        j = np.arange(r + 1)
        F = r - 2 * j
        mult = comb(r, j, exact=False)
        terms = mult * np.cos(F * a) * (half_turn_exp(p + F) + half_turn_exp(p - F))
        return complex(np.sum(terms) / 2.0**r)
    if variant == "literal":
        return _rr_literal(r, p, a)
    raise ArgumentError(f"unknown variant {variant!r}")


def _rr_literal(r: int, p: float, a: float) -> complex:
    if r == 0:
        if p == 0:
            return 2.0 + 0j
        return complex(2 * math.sin(p * math.pi) / p, 2 * (1 - math.cos(p * math.pi)) / p)
    scale = 2.0**r
    total = 0j
    # Q(phi, r) runs over the odd integers 1, 3, ..., 2^r - 1, once each
    step = 1 << 20
    for start in range(1, 1 << r, 2 * step):
        Q = np.arange(start, min(start + 2 * step, 1 << r), 2, dtype=float)
        for last in (-1.0, 1.0):
            w = Q + p * last
            c = w * math.pi / scale
            small = np.abs(w) < _SINGULAR
            ws = np.where(small, 1.0, w)
            re = np.where(small, math.pi / scale, np.sin(c) / ws)
            im = np.where(small, 0.0, (1 - np.cos(c)) / ws)
            total += complex(np.sum(2 * np.cos(a * Q / scale) * (re + 1j * im)))
    return total


def vk_closed_form(grid: ChebyshevGrid, k: int, p: float, variant: str = "exact") -> complex:
    """``V_k(p)`` from the cosine-power expansion.

    ``exact``: ``P_k = c_k prod_{j != k}(cos - cos theta_j)`` with
    ``c_k = (-1)^{k+1} 2^{n-1} sin(theta_k) / n``, so
    ``V_k = c_k sum_r s_r R_{n-1-r}``. ``literal``: the arrangement
    ``(-1)^{k+1} sin(theta_k)/n * sum_r s_r R_r`` with the literal ``R_r``.
    """
    n = grid.n
    if n > CLOSED_FORM_CAP:
        raise CapabilityError(f"closed form is limited to n <= {CLOSED_FORM_CAP}; use the quadrature path")
    s = elementary_coeffs(grid, k).s
    sign = 1.0 if k % 2 == 1 else -1.0
    theta_k = grid.angles[k - 1]
    if variant == "exact":
        ck = sign * 2.0 ** (n - 1) * math.sin(theta_k) / n
        return ck * sum(s[r] * rr_term(n - 1 - r, p, n, "exact") for r in range(n))
    if variant == "literal":
        ck = sign * math.sin(theta_k) / n
        return ck * sum(s[r] * rr_term(r, p, n, "literal") for r in range(n))
    raise ArgumentError(f"unknown variant {variant!r}")


@lru_cache(maxsize=32)
def _vk_nodes(n: int, panels: int):
    nodes, weights = panel_nodes(np.linspace(0.0, math.pi, panels + 1))
    weighted = kernels.pair_matrix(n, nodes) * weights[:, None]
    weighted.setflags(write=False)
    return nodes, weighted


def vk_panels(n: int, pmax: float) -> int:
    # about one oscillation of the integrand per panel of 32 nodes
    return max(4, int(math.ceil((n + abs(pmax)) / 2.0)) + 2)


def vk_quadrature(n: int, p) -> np.ndarray:
    """``V_k(p)`` for all ``k``; shape ``(len(p), n)``."""
    ps = np.atleast_1d(np.asarray(p, dtype=float))
    nodes, weighted = _vk_nodes(n, vk_panels(n, float(np.max(np.abs(ps))) if ps.size else 0.0))
    return np.exp(1j * np.outer(ps, nodes)) @ weighted


def vk_values(n: int, p, path: str = "quadrature") -> np.ndarray:
    ps = np.atleast_1d(np.asarray(p, dtype=float))
    if path == "quadrature":
        return vk_quadrature(n, ps)
    if path == "closed-form":
        grid = chebyshev_grid(n)
        if n > CLOSED_FORM_CAP:
            raise CapabilityError(f"closed form is limited to n <= {CLOSED_FORM_CAP}; use the quadrature path")
        return np.array([[vk_closed_form(grid, k, pv) for k in range(1, n + 1)] for pv in ps])
    raise ArgumentError(f"unknown path {path!r}")


@dataclass(frozen=True)
class KnResult:
    value: complex
    n: int
    m: int
    p: float
    path: str
    convention: FourierConvention


def auto_truncation(g: Callable, tol: float = 1e-8, m_max: int = 4096) -> int:
    """Smallest window count whose geometric tail estimate is below ``tol``."""
    support = getattr(g, "support", None)
    if support is not None:
        return int(math.ceil(max(abs(support.lo), abs(support.hi)) / math.pi))
    m = 2
    while m <= m_max:
        if class_u_diagnostic(g, m, math.pi / 64).tail_estimate < tol:
            return m
        m *= 2
    raise CapabilityError(f"window peaks do not decay below {tol} by m = {m_max}")


def _window_sums(n: int, g: Callable, m: int, x: np.ndarray, conv: FourierConvention) -> np.ndarray:
    """``sum_l phase_l(x) g(theta_k + l pi)``; shape ``(len(x), n)``."""
    grid = chebyshev_grid(n)
    ls = np.arange(-m, m + 1)
    vals = np.asarray(g(grid.angles[None, :] + math.pi * ls[:, None]), dtype=complex)
    if conv.phase_mode == "alternating-sign":
        phase = np.where(ls % 2 == 0, 1.0, -1.0)
        return np.broadcast_to(phase @ vals, (x.size, n))
    return np.exp(1j * math.pi * np.outer(x, ls)) @ vals


def kn_values(n: int, fhat: Callable, x, m="auto", path: str = "quadrature",
              conv: FourierConvention = DEFAULT_CONVENTION) -> np.ndarray:
    """``K_{n,m}`` at every point of ``x`` (vectorised form of :func:`apply_kn`)."""
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    m = auto_truncation(fhat) if m == "auto" else int(m)
    if m < 0:
        raise ArgumentError("m must be >= 0")
    V = vk_values(n, xs, path)
    S = _window_sums(n, fhat, m, xs, conv)
    return conv.inverse_scale * 0.5 * np.sum(V * S, axis=1)


def apply_kn(n: int, fhat: Callable, x: float, m="auto", path: str = "quadrature",
             q: QuadratureSpec | None = None, conv: FourierConvention = DEFAULT_CONVENTION) -> KnResult:
    """``K_{n,m}(f)(x)`` for the spectrum ``fhat`` of ``f``.

    Parameters
    ----------
    n : int
    fhat : callable or Spectrum
        Evaluated on ``[-(m+1) pi, (m+1) pi]``.
    x : float
    m : int or "auto"
        Window truncation; ``auto`` sizes it from the spectrum support or from
        the decay of its window peaks.
    path : {"quadrature", "closed-form"}
    q : QuadratureSpec, optional
        Unused by the Gauss path, which is exact to rounding for these
        trigonometric integrands; accepted for interface symmetry.
    conv : FourierConvention
        ``inverse_scale`` is the prefactor, ``phase_mode`` picks the window phase.
    """
    if path == "closed-form" and n > CLOSED_FORM_CAP:
        raise CapabilityError(f"closed form is limited to n <= {CLOSED_FORM_CAP}; use the quadrature path")
    m_used = auto_truncation(fhat) if m == "auto" else int(m)
    val = kn_values(n, fhat, [float(x)], m_used, path, conv)[0]
    return KnResult(complex(val), n, m_used, float(x), path, conv)


def _window_integrals(n: int, coeffs: np.ndarray, l: int, xs: np.ndarray) -> np.ndarray:
    """``int_{l pi}^{(l+1) pi} 1/2 sum_k c_k pair_k(theta - l pi) e^{i x theta} dtheta`` by direct quadrature."""
    panels = vk_panels(n, float(np.max(np.abs(xs))) if xs.size else 0.0)
    eta, w = panel_nodes(np.linspace(0.0, math.pi, panels + 1))
    G = kernels.weighted_pair_sum(n, coeffs, eta)
    theta = eta + l * math.pi
    return np.exp(1j * np.outer(xs, theta)) @ (w * G)


def hn_values(n: int, delta: float, f: RealFunction, x, q: QuadratureSpec = QuadratureSpec(abs_tol=1e-11),
              conv: FourierConvention = DEFAULT_CONVENTION, ai: ApproximateIdentity | None = None,
              fhat: Callable | None = None) -> np.ndarray:
    """``H_{n,delta}(f)`` at every point of ``x``.

    The regularised spectrum ``F(f) * F(phi_delta)`` vanishes outside
    ``[-1/delta, 1/delta]``, so only ``|l| <= ceil(1/(delta pi))`` windows
    contribute; each window integral is done by direct quadrature.
    """
    if not delta > 0:
        raise ArgumentError("delta must be > 0")
    ai = ai or fejer_identity(delta)
    fhat = fhat or (lambda t: fourier_transform(f, t, q, conv))
    mult = ai.multiplier(conv)
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    grid = chebyshev_grid(n)
    m = int(math.ceil(1.0 / (delta * math.pi * conv.omega)))
    total = np.zeros(xs.shape, dtype=complex)
    for l in range(-m, m + 1):
        t = grid.angles + l * math.pi
        c = np.asarray(fhat(t), dtype=complex) * mult(t)
        if not np.any(c):
            continue
        if conv.phase_mode == "alternating-sign":
            # same integral with the window phase forced to (-1)^l
            ph = (-1.0) ** l * np.exp(-1j * math.pi * l * xs)
        else:
            ph = 1.0
        total += ph * _window_integrals(n, c, l, xs)
    return conv.inverse_scale * total


def apply_hn_delta(n: int, delta: float, f: RealFunction, x: float,
                   q: QuadratureSpec = QuadratureSpec(abs_tol=1e-11),
                   conv: FourierConvention = DEFAULT_CONVENTION) -> complex:
    """``H_{n,delta}(f)(x) = K_n(f * phi_delta)(x)`` with the Fejer family."""
    return complex(hn_values(n, delta, f, [x], q, conv)[0])


def product_spectrum(f: RealFunction, delta: float, q: QuadratureSpec = QuadratureSpec(abs_tol=1e-11),
                     conv: FourierConvention = DEFAULT_CONVENTION) -> Spectrum:
    """``F(f) * F(phi_delta)`` restricted to its support."""
    mult = fejer_identity(delta).multiplier(conv)
    lim = 1.0 / (delta * conv.omega)
    return Spectrum(lambda t: fourier_transform(f, t, q, conv) * mult(t), Interval(-lim, lim), conv,
                    breakpoints=(0.0,), name=f"F({f.name})*triangle")


def l1_on_window(values: Callable, window: Interval, panels: int = 32) -> float:
    """``int_window |values(x)|`` by panel Gauss (values vectorised)."""
    nodes, w = panel_nodes(np.linspace(window.lo, window.hi, panels + 1))
    return float(np.dot(w, np.abs(values(nodes))))


def rate_report(n_list, fhat: Spectrum, window: Interval, q: QuadratureSpec = QuadratureSpec(abs_tol=1e-11),
                conv: FourierConvention = DEFAULT_CONVENTION, target: Callable | None = None,
                panels: int = 32, grid_step: float = 1e-4) -> ReportTable:
    """L1 error of ``K_n`` on ``window`` against the rate functional ``xi_n``.

    The reference is the inverse transform of ``fhat`` unless ``target`` is given.
    """
    if fhat.support is None:
        raise ArgumentError("the rate report needs a compactly supported spectrum")
    nodes, w = panel_nodes(np.linspace(window.lo, window.hi, panels + 1))
    ref = np.asarray(target(nodes) if target is not None else inverse_transform(fhat, nodes, q, conv))
    m = auto_truncation(fhat)
    table = ReportTable("kn_rate", [Column("n", "1", "int"), Column("l1_error", "1"),
                                    Column("xi_n", "rad"), Column("ratio", "1")])
    for n in n_list:
        vals = kn_values(int(n), fhat, nodes, m, "quadrature", conv)
        err = float(np.dot(w, np.abs(vals - ref)))
        xi = xi_n(int(n), grid_step)
        table.add(int(n), err, xi, err / xi)
    return table
