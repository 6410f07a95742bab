"""Chebyshev node angles and the cardinal (fundamental) Lagrange polynomials.

The cardinal polynomial for node ``k`` on the angles
``theta_k = (2k - 1) pi / (2n)`` is evaluated either in rational
trigonometric form

    P_k(theta) = (-1)^(k+1) cos(n theta) sin(theta_k) / (n (cos theta - cos theta_k))

or as the classical product over the other nodes. The rational form is O(1)
per node but 0/0 at the node itself, so inside a guard band it hands over to
the product form. Just outside that band the division still loses digits
to cancellation, so nodes closer than ``NEAR`` in cosine use an equivalent
half-angle form written through the offset from the node.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from ._kernels_py import GUARD, NEAR, near_form, product_form
from .errors import ArgumentError

MODES = ("rational-trig", "product-form")


@dataclass(frozen=True)
class ChebyshevGrid:
    """Node angles of order ``n``; ``angles[k-1]`` is the k-th node."""

    n: int
    angles: np.ndarray

    @property
    def cos_nodes(self) -> np.ndarray:
        return np.cos(self.angles)

    @property
    def half_step(self) -> float:
        """The shift pi/(2n) used by the paired polynomials."""
        return math.pi / (2 * self.n)

    def __hash__(self):
        return hash(("ChebyshevGrid", self.n))

    def __eq__(self, other):
        return isinstance(other, ChebyshevGrid) and other.n == self.n


def chebyshev_grid(n: int) -> ChebyshevGrid:
    """Return the grid of ``n`` Chebyshev angles in (0, pi)."""
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise ArgumentError(f"order must be a positive integer, got {n!r}")
    n = int(n)
    k = np.arange(1, n + 1)
    angles = (2 * k - 1) * np.pi / (2 * n)
    angles.setflags(write=False)
    return ChebyshevGrid(n, angles)


def _check_index(grid: ChebyshevGrid, k: int) -> int:
    if isinstance(k, bool) or int(k) != k or not 1 <= k <= grid.n:
        raise ArgumentError(f"node index must be in 1..{grid.n}, got {k!r}")
    return int(k)


def _rational(grid: ChebyshevGrid, k: int, theta: float) -> float:
    n = grid.n
    ck = math.cos(grid.angles[k - 1])
    d = math.cos(theta) - ck
    if abs(d) < GUARD:
        return _product(grid, k, theta)
    if abs(d) < NEAR:
        return float(near_form(n, np.array([theta]), grid.angles[k - 1])[0])
    sign = 1.0 if k % 2 == 1 else -1.0
    return sign * math.cos(n * theta) * math.sin(grid.angles[k - 1]) / (n * d)


def _product(grid: ChebyshevGrid, k: int, theta: float) -> float:
    return float(product_form(grid.n, k - 1, theta, grid.cos_nodes))


def fundamental_poly(grid: ChebyshevGrid, k: int, theta: float, mode: str = "rational-trig") -> float:
    """Cardinal polynomial ``P_k`` (1-based ``k``) at angle ``theta``.

    Parameters
    ----------
    grid : ChebyshevGrid
    k : int
        Node index, ``1 <= k <= n``.
    theta : float
        Angle in radians; any finite value.
    mode : {"rational-trig", "product-form"}

    Returns
    -------
    float
    """
    k = _check_index(grid, k)
    if mode not in MODES:
        raise ArgumentError(f"unknown evaluation mode {mode!r}")
    theta = float(theta)
    if not math.isfinite(theta):
        raise ArgumentError("theta must be finite")
    if mode == "rational-trig":
        return _rational(grid, k, theta)
    return _product(grid, k, theta)


def shifted_pair(grid: ChebyshevGrid, k: int, theta: float, mode: str = "rational-trig") -> float:
    """``P_k(theta - pi/2n) + P_k(theta + pi/2n)``."""
    a = grid.half_step
    return fundamental_poly(grid, k, theta - a, mode) + fundamental_poly(grid, k, theta + a, mode)


def cardinal_matrix(grid: ChebyshevGrid, theta) -> np.ndarray:
    """All ``P_k`` at all angles; shape ``(len(theta), n)``."""
    from ._kernels_py import _cardinal, node_data

    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    _, cosk, coef = node_data(grid.n)
    return _cardinal(grid.n, theta, cosk, coef)


def pair_matrix(grid: ChebyshevGrid, theta) -> np.ndarray:
    """All shifted pairs at all angles; shape ``(len(theta), n)``."""
    return kernels.pair_matrix(grid.n, np.atleast_1d(np.asarray(theta, dtype=float)))
