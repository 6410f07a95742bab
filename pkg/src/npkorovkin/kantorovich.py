"""Kantorovich-type operators on L1[0, 1] and their non-positive variants.

All three operators share the shape

    L(f)(x) = (n+1) sum_k C(n,k) u(x)^k v(x)^(n-k) int_{k/(n+1)}^{(k+1)/(n+1)} f

with ``(u, v) = (x, 1-x)`` for the classical operator, ``(x/2, 1 - a_n(x) - x/2)``
for the dyadic perturbation (``a_n`` a shrinking dyadic indicator), and
``(-x, 1-x)`` for the alternating one.
"""

from __future__ import annotations

import math
import threading
import weakref
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.optimize import brentq
from scipy.special import gammaln

from .errors import ArgumentError, InconsistencyError
from .functions import UNIT, decaying_exponential, monomial
from .numerics import (Interval, QuadratureSpec, RealFunction, evaluate_many, integrate,
                       modulus_of_continuity, panel_nodes, split_edges)

LOG_SPACE_ABOVE = 50
CELL_QUAD = QuadratureSpec("composite-gauss", 20, 1e-12)
_X_EDGE = 1e-12


class _CellCache:
    """Cell integrals per (function, n); concurrent fills write identical values."""

    def __init__(self):
        self._lock = threading.Lock()
        self._data: weakref.WeakKeyDictionary = weakref.WeakKeyDictionary()

    def get(self, f: RealFunction, n: int) -> np.ndarray:
        with self._lock:
            hit = self._data.get(f, {}).get(n)
        if hit is not None:
            return hit
        cells = _cell_integrals(f, n)
        with self._lock:
            self._data.setdefault(f, {})[n] = cells
        return cells

    def clear(self):
        with self._lock:
            self._data.clear()


CELLS = _CellCache()


def _cell_integrals(f: RealFunction, n: int) -> np.ndarray:
    edges = np.arange(n + 2) / (n + 1)
    if f.antiderivative is not None:
        F = np.asarray(evaluate_many(f.antiderivative, edges), dtype=float)
        return np.diff(F)
    out = np.empty(n + 1)
    for k in range(n + 1):
        out[k] = integrate(f, Interval(edges[k], edges[k + 1]), CELL_QUAD, f.breakpoints, panels=1)
    return out


def cell_integrals(f: RealFunction, n: int) -> np.ndarray:
    """``int_{k/(n+1)}^{(k+1)/(n+1)} f`` for ``k = 0..n`` (cached)."""
    return CELLS.get(f, n)


def binomial_weights(n: int, u, v) -> np.ndarray:
    """``C(n,k) u^k v^(n-k)``; shape ``(len(u), n+1)``.

    Above ``LOG_SPACE_ABOVE`` the magnitudes are formed in log space and the
    signs tracked separately.
    """
    u = np.atleast_1d(np.asarray(u, dtype=float))[:, None]
    v = np.atleast_1d(np.asarray(v, dtype=float))[:, None]
    k = np.arange(n + 1)[None, :]
    if n <= LOG_SPACE_ABOVE:
        c = np.array([math.comb(n, j) for j in range(n + 1)], dtype=float)[None, :]
        return c * u**k * v ** (n - k)
    logc = gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1)
    with np.errstate(divide="ignore", invalid="ignore"):
        lu, lv = np.log(np.abs(u)), np.log(np.abs(v))
        # 0 * log 0 counts as 0 so that 0^0 = 1
        tu = np.where(k == 0, 0.0, k * lu)
        tv = np.where(n - k == 0, 0.0, (n - k) * lv)
    sign = np.where((u < 0) & (k % 2 == 1), -1.0, 1.0) * np.where((v < 0) & ((n - k) % 2 == 1), -1.0, 1.0)
    return sign * np.exp(logc + tu + tv)


@dataclass(frozen=True)
class DyadicIndicator:
    n: int
    m: int
    interval: Interval

    @property
    def l1_norm(self) -> float:
        return self.interval.length

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return ((x >= self.interval.lo) & (x <= self.interval.hi)).astype(float)


def dyadic_indicator(n: int) -> DyadicIndicator:
    """Indicator of ``[(n - 2^m)/2^m, (n - 2^m + 1)/2^m]`` with ``2^m <= n < 2^(m+1)``."""
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise ArgumentError("n must be a positive integer")
    n = int(n)
    m = n.bit_length() - 1
    p = 2**m
    return DyadicIndicator(n, m, Interval((n - p) / p, (n - p + 1) / p))


def _check_x(x):
    x = np.asarray(x, dtype=float)
    if np.any(x < -_X_EDGE) or np.any(x > 1 + _X_EDGE):
        raise ArgumentError("x must lie in [0, 1]")
    return np.clip(x, 0.0, 1.0)


def _apply(n: int, f: RealFunction, x, uv: Callable):
    xs = _check_x(x)
    u, v = uv(np.atleast_1d(xs))
    out = (n + 1) * binomial_weights(n, u, v) @ cell_integrals(f, n)
    return out.reshape(xs.shape) if xs.ndim else float(out[0])


def _classical_uv(x):
    return x, 1.0 - x


def _dyadic_uv(n):
    a = dyadic_indicator(n)
    return lambda x: (x / 2.0, 1.0 - a(x) - x / 2.0)


def _alternating_uv(x):
    return -x, 1.0 - x


def kantorovich(n: int, f: RealFunction, x):
    """Classical (positive) Kantorovich operator of order ``n`` at ``x`` in [0, 1]."""
    return _apply(n, f, x, _classical_uv)


def apply_an(n: int, f: RealFunction, x):
    """Dyadic perturbation: weights ``(x/2)^k (1 - a_n(x) - x/2)^(n-k)``."""
    return _apply(n, f, x, _dyadic_uv(n))


def apply_bn(n: int, f: RealFunction, x):
    """Alternating variant: weights ``(-x)^k (1-x)^(n-k)``."""
    return _apply(n, f, x, _alternating_uv)


def moment(n: int, j: int, u, v):
    """``(n+1) sum_k C(n,k) u^k v^(n-k) int_cell t^j dt`` in closed form, ``j <= 2``."""
    u = np.asarray(u, dtype=float)
    s = u + np.asarray(v, dtype=float)
    p = lambda e: s**e if e >= 0 else np.zeros_like(s)  # noqa: E731
    if j == 0:
        return p(n)
    if j == 1:
        return (2 * n * u * p(n - 1) + p(n)) / (2 * (n + 1))
    if j == 2:
        return (n * (n - 1) * u**2 * p(n - 2) + 2 * n * u * p(n - 1) + p(n) / 3.0) / (n + 1) ** 2
    raise ArgumentError("closed forms exist for j in {0, 1, 2}")


def kantorovich_moment(n: int, j: int, x):
    x = np.asarray(x, dtype=float)
    return moment(n, j, x, 1.0 - x)


def an_moment(n: int, j: int, x):
    x = np.asarray(x, dtype=float)
    a = dyadic_indicator(n)(x)
    return moment(n, j, x / 2.0, 1.0 - a - x / 2.0)


def bn_moment(n: int, j: int, x):
    x = np.asarray(x, dtype=float)
    return moment(n, j, -x, 1.0 - x)


@dataclass(frozen=True, eq=False)
class L1Operator:
    """A linear operator on L1[0, 1] with its intended limit ``target``.

    ``breakpoints`` are points where outputs may jump or kink independently
    of the input.
    """

    label: str
    apply: Callable
    target: Callable
    breakpoints: tuple = ()
    n: int | None = None

    def __call__(self, f, x):
        return self.apply(f, x)


def _identity_apply(f, x):
    return evaluate_many(f, np.asarray(x, dtype=float)) if np.ndim(x) else float(f(x))


def _zero(f, x):
    return np.zeros(np.shape(x)) if np.ndim(x) else 0.0


def _halve(f, x):
    return _identity_apply(f, np.asarray(x, dtype=float) / 2.0) if np.ndim(x) else float(f(x / 2.0))


IDENTITY = L1Operator("identity", _identity_apply, _identity_apply)


def kantorovich_operator(n: int) -> L1Operator:
    return L1Operator(f"K_{n}", lambda f, x: kantorovich(n, f, x), _identity_apply, (), n)


def an_operator(n: int) -> L1Operator:
    iv = dyadic_indicator(n).interval
    return L1Operator(f"A_{n}", lambda f, x: apply_an(n, f, x), _halve, (iv.lo, iv.hi), n)


def bn_operator(n: int) -> L1Operator:
    return L1Operator(f"B_{n}", lambda f, x: apply_bn(n, f, x), _zero, (0.5,), n)


def _sign_changes(g: Callable, lo: float, hi: float, samples: int) -> list[float]:
    x = np.linspace(lo, hi, samples)
    y = np.asarray(g(x), dtype=float)
    roots = []
    for i in np.nonzero(np.sign(y[:-1]) * np.sign(y[1:]) < 0)[0]:
        scalar = lambda t: float(np.asarray(g(np.array([t])))[0])  # noqa: E731
        try:
            roots.append(brentq(scalar, x[i], x[i + 1], xtol=1e-15))
        except ValueError:
            # sign flip only at rounding level: any point of the cell will do
            roots.append(0.5 * (x[i] + x[i + 1]))
    return roots


def l1_norm(g: Callable, breakpoints=(), iv: Interval = UNIT, tol: float = 1e-11, samples: int = 1025) -> float:
    """``int_iv |g|`` for a vectorised, piecewise smooth ``g``.

    Sign changes are located first so that every Gauss panel integrates a
    smooth function.
    """
    cuts = sorted({iv.lo, iv.hi, *(b for b in breakpoints if iv.lo < b < iv.hi)})
    pts = set(cuts)
    for a, b in zip(cuts[:-1], cuts[1:]):
        eps = 1e-13 * (b - a)
        pts.update(_sign_changes(g, a + eps, b - eps, samples))
    pts = sorted(pts)
    total = 0.0
    for a, b in zip(pts[:-1], pts[1:]):
        prev = None
        panels = 2
        for _ in range(12):
            nodes, w = panel_nodes(np.linspace(a, b, panels + 1))
            cur = float(np.dot(w, np.abs(np.asarray(g(nodes), dtype=float))))
            if prev is not None and abs(cur - prev) <= tol * (b - a):
                break
            prev = cur
            panels *= 2
        total += cur
    return total


def output_norm(op: L1Operator, f: RealFunction) -> float:
    """``||op(f)||_1`` on [0, 1]."""
    return l1_norm(lambda x: op.apply(f, x), tuple(op.breakpoints) + tuple(f.breakpoints))


def l1_operator_norm_bound(op: L1Operator, probes) -> float:
    """Max of ``||op(f)||_1 / ||f||_1`` over ``probes`` (a lower bound on ``||op||``)."""
    best = 0.0
    for f in probes:
        nf = l1_norm(lambda x: evaluate_many(f, x), tuple(f.breakpoints))
        if nf == 0.0:
            raise ArgumentError("probe functions must be nonzero in L1")
        best = max(best, output_norm(op, f) / nf)
    return best


def random_probe(rng: np.random.Generator, knots: int = 8) -> RealFunction:
    """Random piecewise-linear function on [0, 1]."""
    xs = np.linspace(0.0, 1.0, knots + 1)
    ys = rng.normal(size=knots + 1)
    return RealFunction(lambda t, xs=xs, ys=ys: np.interp(t, xs, ys), UNIT, "piecewise-C1",
                        breakpoints=tuple(xs[1:-1]), name="probe")


def mu_squared(op: L1Operator, q: QuadratureSpec = QuadratureSpec("composite-gauss", 20, 1e-12)) -> float:
    """``int L_n(e2) L(e0) - 2 L_n(e1) L(e1) + L_n(e0) L(e2)`` on [0, 1]."""
    e = [monomial(j) for j in range(3)]

    def integrand(x):
        x = np.asarray(x, dtype=float)
        Ln = [np.asarray(op.apply(ej, x), dtype=float) for ej in e]
        L = [np.asarray(op.target(ej, x), dtype=float) for ej in e]
        return Ln[2] * L[0] - 2.0 * Ln[1] * L[1] + Ln[0] * L[2]

    return float(integrate(integrand, UNIT, q, op.breakpoints, panels=8))


def mu_n(op: L1Operator, n: int | None = None, q: QuadratureSpec = QuadratureSpec("composite-gauss", 20, 1e-12)) -> float:
    """Square root of :func:`mu_squared`, clamped at 0 within ``-1e-8``.

    ``n`` is informational (the operator carries its order).

    Raises
    ------
    InconsistencyError
        The integral is below ``-1e-8``: the pair is not positive or the
        target does not match.
    """
    val = mu_squared(op, q)
    if val < -1e-8:
        raise InconsistencyError(f"mu^2 = {val:.3e} < 0 for {op.label}")
    return math.sqrt(max(val, 0.0))


@dataclass(frozen=True)
class MuBound:
    mu: float
    lhs: float
    rhs: float
    holds: bool


def mu_bound_check(op: L1Operator, f: RealFunction, grid_step: float = 1e-5) -> MuBound:
    """``||L_n(f) L(e0) - L_n(e0) L(f)||_1 <= (int L_n(e0) L(e0) + 1) omega(f, mu_n)``."""
    mu = mu_n(op)
    e0 = monomial(0)

    def diff(x):
        x = np.asarray(x, dtype=float)
        return (np.asarray(op.apply(f, x)) * np.asarray(op.target(e0, x))
                - np.asarray(op.apply(e0, x)) * np.asarray(op.target(f, x)))

    bps = tuple(op.breakpoints) + tuple(f.breakpoints)
    lhs = l1_norm(diff, bps)
    mass = float(integrate(lambda x: np.asarray(op.apply(e0, x)) * np.asarray(op.target(e0, x)),
                           UNIT, QuadratureSpec("composite-gauss", 20, 1e-12), op.breakpoints, panels=8))
    omega = modulus_of_continuity(f, mu, UNIT, grid_step) if mu > 0 else 0.0
    rhs = (mass + 1.0) * omega
    return MuBound(mu, lhs, rhs, bool(lhs <= rhs))


def indicator(iv: Interval) -> RealFunction:
    return RealFunction(lambda t: ((np.asarray(t, dtype=float) >= iv.lo) & (np.asarray(t, dtype=float) <= iv.hi)).astype(float),
                        UNIT, "continuous", breakpoints=(iv.lo, iv.hi),
                        antiderivative=lambda t: np.clip(np.asarray(t, dtype=float), iv.lo, iv.hi) - iv.lo,
                        name=f"chi[{iv.lo:g},{iv.hi:g}]")


@dataclass(frozen=True)
class ConditionReport:
    n_list: tuple
    values: tuple
    g_norm: float
    final_ok: bool


def characteristic_condition_check(family: Callable, target: L1Operator | None, g_interval: Interval,
                                   n_list, slack: float = 0.02) -> ConditionReport:
    """``||(L_n - L + I)(g)||_1`` for ``g`` the indicator of ``g_interval``.

    ``target`` supplies ``L``; ``None`` uses each operator's own target.
    """
    g = indicator(g_interval)
    vals = []
    for n in n_list:
        op = family(n)
        L = (target or op).target

        def h(x, op=op, L=L):
            x = np.asarray(x, dtype=float)
            return np.asarray(op.apply(g, x)) - np.asarray(L(g, x)) + g(x)

        # the limit operator may move the jumps of g (e.g. to 2a, 2b)
        bps = tuple(op.breakpoints) + (g_interval.lo, g_interval.hi,
                                       2 * g_interval.lo, 2 * g_interval.hi)
        vals.append(l1_norm(h, bps))
    norm = g_interval.length
    return ConditionReport(tuple(n_list), tuple(vals), norm, bool(vals[-1] <= norm + slack))


@dataclass(frozen=True)
class KWitness:
    f: RealFunction
    x: float
    value: float


def witness_an(n: int) -> KWitness:
    """``e^{-t}`` at the centre of the dyadic interval gives a negative value for odd ``n``."""
    if n % 2 == 0:
        raise ArgumentError("the exponential witness needs odd n")
    f = decaying_exponential()
    iv = dyadic_indicator(n).interval
    x = 0.5 * (iv.lo + iv.hi)
    val = apply_an(n, f, x)
    if not val < 0:
        raise InconsistencyError(f"A_{n}(e^-t)({x}) = {val} is not negative")
    return KWitness(f, x, val)


def an_witness_value(n: int, x: float) -> float:
    """Closed form of ``A_n(e^{-t})(x)`` where the dyadic indicator is 1."""
    return -(n + 1) * (x / 2.0) ** n * (math.exp(-1.0 / (n + 1)) - 1.0) ** (n + 1)


def witness_bn(n: int, x: float = 0.75) -> KWitness:
    """``e_0`` at ``x > 1/2``: ``B_n(e_0)(x) = (1-2x)^n < 0`` for odd ``n``."""
    if n % 2 == 0 or not x > 0.5:
        raise ArgumentError("the constant witness needs odd n and x > 1/2")
    f = monomial(0)
    val = apply_bn(n, f, x)
    if not val < 0:
        raise InconsistencyError(f"B_{n}(e0)({x}) = {val} is not negative")
    return KWitness(f, x, val)
