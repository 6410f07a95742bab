"""The paired-interpolation operator G_n on C[0, pi] and its rate functionals.

``G_n(f)(theta) = 1/2 sum_k f(theta_k) [P_k(theta - pi/2n) + P_k(theta + pi/2n)]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from . import kernels
from .chebyshev import ChebyshevGrid, chebyshev_grid
from .errors import ArgumentError, WitnessNotFoundError
from .functions import HALF_TURN, hat
from .numerics import (Interval, RealFunction, evaluate_many, modulus_of_continuity,
                       sup_on_interval)
from .report import Column, ReportTable

DEFAULT_SUP_STEP = math.pi * 1e-5
DYADIC_SWEEP = tuple(2**j for j in range(1, 10))  # 2 .. 512
_EDGE = 1e-12


@dataclass(frozen=True)
class GrunwaldOperator:
    grid: ChebyshevGrid

    @property
    def n(self) -> int:
        return self.grid.n


def grunwald_operator(n: int) -> GrunwaldOperator:
    return GrunwaldOperator(chebyshev_grid(n))


@dataclass(frozen=True)
class RateFunctionals:
    n: int
    nu: float
    xi: float
    lebesgue_sup: float


def _as_operator(op) -> GrunwaldOperator:
    return op if isinstance(op, GrunwaldOperator) else grunwald_operator(op)


def _node_values(f: Callable, angles) -> np.ndarray:
    vals = np.asarray(evaluate_many(f, angles))
    if not np.all(np.isfinite(vals)):
        raise ArgumentError("f must be finite at every node angle")
    return vals


def apply_gn(op, f: Callable, theta):
    """``G_n(f)`` at ``theta`` in [0, pi]; scalar in, scalar out.

    ``op`` may be a :class:`GrunwaldOperator` or an order ``n``.
    """
    op = _as_operator(op)
    t = np.asarray(theta, dtype=float)
    if np.any(t < -_EDGE) or np.any(t > math.pi + _EDGE):
        raise ArgumentError("theta must lie in [0, pi]; use apply_gn_extended outside")
    out = kernels.weighted_pair_sum(op.n, _node_values(f, op.grid.angles), t.ravel())
    return out.reshape(t.shape) if t.ndim else out[0]


def apply_gn_extended(n: int, f: Callable, theta):
    """``G_n^j(f)(theta)`` with ``j = floor(theta / pi)`` on the whole line.

    Nodes and cardinal polynomials are shifted by ``j pi`` into the window
    containing ``theta``.
    """
    grid = chebyshev_grid(n)
    t = np.atleast_1d(np.asarray(theta, dtype=float))
    j = np.floor(t / math.pi)
    out = np.empty(t.shape, dtype=complex)
    for jj in np.unique(j):
        sel = j == jj
        vals = np.asarray(evaluate_many(f, grid.angles + jj * math.pi))
        out[sel] = kernels.weighted_pair_sum(n, vals, t[sel] - jj * math.pi)
    if not np.iscomplexobj(evaluate_many(f, grid.angles[:1])):
        out = out.real
    return out.reshape(np.shape(theta)) if np.ndim(theta) else out[0]


def lebesgue_function(n: int, theta):
    """``Lambda_n(theta) = 1/2 sum_k |P_k(theta - pi/2n) + P_k(theta + pi/2n)|``."""
    t = np.asarray(theta, dtype=float)
    lam = kernels.lebesgue_sums(n, t.ravel())[0]
    return lam.reshape(t.shape) if t.ndim else float(lam[0])


def _sums_component(n: int, which: int):
    def g(theta):
        t = np.atleast_1d(np.asarray(theta, dtype=float))
        return kernels.lebesgue_sums(n, t)[which]

    return g


@lru_cache(maxsize=256)
def _sup(n: int, which: int, grid_step: float) -> tuple[float, float]:
    return sup_on_interval(_sums_component(n, which), HALF_TURN, grid_step)


def operator_norm_gn(n: int, grid_step: float = DEFAULT_SUP_STEP) -> float:
    """``sup_theta Lambda_n(theta)``, the sup-norm operator norm of ``G_n``."""
    _check_step(grid_step)
    return _sup(int(n), 0, float(grid_step))[1]


def nu_n(n: int, grid_step: float = DEFAULT_SUP_STEP) -> float:
    """``sup_theta 1/2 sum_k |cos theta_k - cos theta| |pair_k(theta)|``."""
    _check_step(grid_step)
    return _sup(int(n), 1, float(grid_step))[1]


def xi_n(n: int, grid_step: float = DEFAULT_SUP_STEP) -> float:
    """``sup_eta 1/2 sum_k |theta_k - eta| |pair_k(eta)|``."""
    _check_step(grid_step)
    return _sup(int(n), 2, float(grid_step))[1]


def rate_functionals(n: int, grid_step: float = DEFAULT_SUP_STEP) -> RateFunctionals:
    return RateFunctionals(n, nu_n(n, grid_step), xi_n(n, grid_step), operator_norm_gn(n, grid_step))


def _check_step(grid_step):
    if not grid_step > 0:
        raise ArgumentError("grid_step must be > 0")


def c1_estimate(n_max: int = 512, grid_step: float = 1e-4) -> float:
    """Empirical bound constant: max of ``||G_n||`` over ``n = 2, 4, ..., n_max``."""
    ns = [n for n in DYADIC_SWEEP if n <= n_max] or [1]
    return max(operator_norm_gn(n, grid_step) for n in ns)


@dataclass(frozen=True)
class BoundReport:
    n: int
    flavor: str
    lhs_sup_error: float
    rhs_bound: float
    holds: bool
    rate: float
    c1: float


FLAVORS = ("nu-composed-cos", "xi-direct", "xi-derivative")


def sup_error(n: int, g: Callable, grid_step: float) -> float:
    """``sup_theta |G_n(g)(theta) - g(theta)|`` on [0, pi]."""
    grid = chebyshev_grid(n)
    vals = _node_values(g, grid.angles)

    def err(theta):
        t = np.atleast_1d(np.asarray(theta, dtype=float))
        return np.abs(kernels.weighted_pair_sum(n, vals, t) - evaluate_many(g, t))

    return sup_on_interval(err, HALF_TURN, grid_step)[1]


def quantitative_bound_report(n: int, f: RealFunction, flavor: str, grid_step: float = 1e-3,
                              c1: float | None = None, rate_step: float = DEFAULT_SUP_STEP) -> BoundReport:
    """Compare the sup error of ``G_n`` against its modulus-of-continuity bound.

    Parameters
    ----------
    n : int
    f : RealFunction
        On [-1, 1] for ``nu-composed-cos`` (the operator acts on ``f o cos``),
        on [0, pi] for the two ``xi`` flavors.
    flavor : {"nu-composed-cos", "xi-direct", "xi-derivative"}
    grid_step : float
        Grid for the sup error and the moduli.
    c1 : float, optional
        Bound constant; defaults to ``max(c1_estimate(), ||G_n||)``.
    rate_step : float
        Grid for the rate functional.
    """
    if flavor not in FLAVORS:
        raise ArgumentError(f"unknown flavor {flavor!r}")
    if flavor == "xi-derivative" and (f.derivative is None or f.smoothness == "continuous"):
        raise ArgumentError("the derivative flavor needs a piecewise-C1 function with a derivative")
    norm = operator_norm_gn(n, rate_step)
    c1 = max(c1_estimate(), norm) if c1 is None else c1
    if flavor == "nu-composed-cos":
        rate = nu_n(n, rate_step)
        lhs = sup_error(n, lambda t: f(np.cos(t)), grid_step)
        rhs = (c1 + 1.0) * modulus_of_continuity(f, rate, f.domain, grid_step * f.domain.length / math.pi)
    else:
        rate = xi_n(n, rate_step)
        lhs = sup_error(n, f, grid_step)
        if flavor == "xi-direct":
            rhs = (c1 + 1.0) * modulus_of_continuity(f, rate, f.domain, grid_step)
        else:
            d = f.derivative
            dmax = float(np.max(np.abs(evaluate_many(d, np.linspace(f.domain.lo, f.domain.hi, 4001)))))
            rhs = dmax * rate + 2 * math.pi * (c1 + 1.0) * modulus_of_continuity(d, rate, f.domain, grid_step)
    return BoundReport(n, flavor, float(lhs), float(rhs), bool(lhs <= rhs), float(rate), float(c1))


@dataclass(frozen=True)
class Witness:
    f: RealFunction
    theta: float
    value: float


def witness_search_interval(n: int) -> Interval:
    """Angles where ``theta + pi/2n`` lies strictly between nodes n-2 and n-1.

    There the hat witness gives a negative value of ``G_n``.
    """
    grid = chebyshev_grid(n)
    a = grid.half_step
    return Interval(grid.angles[n - 3] - a, grid.angles[n - 2] - a)


def nonpositivity_witness_gn(n: int, samples: int = 2001) -> Witness:
    """A non-negative ``f`` and an angle where ``G_n(f)`` is negative.

    ``f`` is the hat peaking (value 1) at the last node with support
    (theta_{n-1}, pi], so it vanishes at every other node.
    """
    if n < 3:
        raise ArgumentError("a witness needs n >= 3")
    grid = chebyshev_grid(n)
    f = hat(float(grid.angles[-1]), float(grid.angles[-2]), math.pi)
    iv = witness_search_interval(n)
    t = np.linspace(iv.lo, iv.hi, samples)[1:-1]
    g = apply_gn(grid.n, f, t)
    i = int(np.argmin(g))
    if not g[i] < 0:
        raise WitnessNotFoundError(f"no negative value of G_{n}(f) found in ({iv.lo}, {iv.hi})")
    return Witness(f, float(t[i]), float(g[i]))


def test_set_convergence_report(n_list, grid_step: float = 1e-3) -> ReportTable:
    """Sup errors of ``G_n`` on the test set {1, cos, cos^2}."""
    table = ReportTable("test_set_convergence", [
        Column("n", "1", "int"), Column("err_const", "1"), Column("err_cos", "1"), Column("err_cos2", "1")])
    probes = [lambda t: np.ones_like(np.asarray(t, dtype=float)), np.cos, lambda t: np.cos(t) ** 2]
    for n in n_list:
        table.add(int(n), *(sup_error(int(n), g, grid_step) for g in probes))
    return table


test_set_convergence_report.__test__ = False
