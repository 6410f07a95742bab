"""Shared numerical kernels: quadrature, sup-search, L1 distances and the
modulus of continuity.

Everything here is pure; functions are evaluated on numpy arrays when they
accept them and point by point otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np
from scipy.ndimage import maximum_filter1d, minimum_filter1d

from .errors import ArgumentError, EvaluationError, ToleranceNotMetError

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
GAUSS_ORDER = 32


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)) or not self.lo < self.hi:
            raise ArgumentError(f"invalid interval [{self.lo}, {self.hi}]")

    @property
    def length(self) -> float:
        return self.hi - self.lo

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi


@dataclass(frozen=True)
class QuadratureSpec:
    """Integration method and its stopping rule.

    ``max_refinement`` is the maximal bisection depth for adaptive Simpson
    and the maximal number of panel doublings for composite Gauss.
    """

    method: str = "adaptive-simpson"
    max_refinement: int = 50
    abs_tol: float = 1e-10

    def __post_init__(self):
        if self.method not in ("adaptive-simpson", "composite-gauss"):
            raise ArgumentError(f"unknown quadrature method {self.method!r}")
        if self.max_refinement < 1:
            raise ArgumentError("max_refinement must be >= 1")
        if not self.abs_tol > 0:
            raise ArgumentError("abs_tol must be > 0")


SMOOTHNESS = ("continuous", "piecewise-C1", "C2")


@dataclass(frozen=True, eq=False)
class RealFunction:
    """A real function on a closed interval, or on R with compact support.

    ``breakpoints`` lists interior kinks/jumps so that quadrature can split
    there. ``derivative`` and ``antiderivative`` are optional exact helpers.
    """

    evaluate: Callable
    domain: Interval
    smoothness: str = "continuous"
    compact_support: bool = False
    breakpoints: tuple = ()
    derivative: Callable | None = None
    antiderivative: Callable | None = None
    name: str = ""

    def __post_init__(self):
        if self.smoothness not in SMOOTHNESS:
            raise ArgumentError(f"unknown smoothness tag {self.smoothness!r}")

    def __call__(self, x):
        if self.compact_support:
            x_arr = np.asarray(x, dtype=float)
            inside = (x_arr >= self.domain.lo) & (x_arr <= self.domain.hi)
            if x_arr.ndim == 0:
                return float(evaluate_many(self.evaluate, x_arr)) if inside else 0.0
            out = np.zeros_like(x_arr)
            if inside.any():
                out[inside] = evaluate_many(self.evaluate, x_arr[inside])
            return out
        return evaluate_many(self.evaluate, x) if np.ndim(x) else self.evaluate(x)

    def pieces(self) -> list[tuple[float, float]]:
        cuts = sorted(b for b in self.breakpoints if self.domain.lo < b < self.domain.hi)
        pts = [self.domain.lo, *cuts, self.domain.hi]
        return list(zip(pts[:-1], pts[1:]))


def evaluate_many(f: Callable, x) -> np.ndarray:
    """Evaluate ``f`` on an array, vectorised when ``f`` allows it."""
    x = np.asarray(x, dtype=float)
    try:
        with np.errstate(all="ignore"):
            y = f(x)
        y = np.asarray(y)
        if y.shape == x.shape:
            return y
        if y.ndim == 0:
            return np.broadcast_to(y, x.shape).copy()
    except (TypeError, ValueError):
        pass
    flat = [f(float(v)) for v in x.ravel()]
    return np.asarray(flat).reshape(x.shape)


def _check_finite(y, where: str):
    if not np.all(np.isfinite(y)):
        raise EvaluationError(f"non-finite function value in {where}")


@lru_cache(maxsize=16)
def gauss_legendre(order: int = GAUSS_ORDER) -> tuple[np.ndarray, np.ndarray]:
    return np.polynomial.legendre.leggauss(order)


def panel_nodes(edges, order: int = GAUSS_ORDER) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights on consecutive panels given by ``edges``."""
    edges = np.asarray(edges, dtype=float)
    x, w = gauss_legendre(order)
    a = edges[:-1, None]
    b = edges[1:, None]
    half = (b - a) / 2.0
    nodes = (half * x + (a + b) / 2.0).ravel()
    weights = (half * w).ravel()
    return nodes, weights


def split_edges(lo: float, hi: float, panels: int, breakpoints: Sequence[float] = ()) -> np.ndarray:
    """Panel edges on [lo, hi] honouring breakpoints, ~``panels`` panels in total."""
    cuts = sorted({lo, hi, *(b for b in breakpoints if lo < b < hi)})
    edges = []
    total = hi - lo
    for a, b in zip(cuts[:-1], cuts[1:]):
        k = max(1, int(math.ceil(panels * (b - a) / total)))
        edges.append(np.linspace(a, b, k + 1)[:-1])
    edges.append(np.array([hi]))
    return np.concatenate(edges)


def _simpson(f, a, b, tol, max_depth):
    fa, fm, fb = f(a), f((a + b) / 2.0), f(b)
    _check_finite([fa, fm, fb], "integrate")
    whole = (b - a) * (fa + 4.0 * fm + fb) / 6.0
    total = 0.0
    ok = True
    stack = [(a, b, fa, fm, fb, whole, tol, 0)]
    while stack:
        a, b, fa, fm, fb, whole, tol, depth = stack.pop()
        m = (a + b) / 2.0
        lm, rm = (a + m) / 2.0, (m + b) / 2.0
        flm, frm = f(lm), f(rm)
        _check_finite([flm, frm], "integrate")
        left = (m - a) * (fa + 4.0 * flm + fm) / 6.0
        right = (b - m) * (fm + 4.0 * frm + fb) / 6.0
        delta = left + right - whole
        if abs(delta) <= 15.0 * tol:
            total += left + right + delta / 15.0
        elif depth >= max_depth:
            ok = False
            total += left + right + delta / 15.0
        else:
            stack.append((a, m, fa, flm, fm, left, tol / 2.0, depth + 1))
            stack.append((m, b, fm, frm, fb, right, tol / 2.0, depth + 1))
    return total, ok


def _gauss(f, a, b, tol, max_doublings, panels=1):
    def estimate(k):
        nodes, weights = panel_nodes(np.linspace(a, b, k + 1))
        y = evaluate_many(f, nodes)
        _check_finite(y, "integrate")
        return np.dot(weights, y)

    prev = estimate(panels)
    for _ in range(max_doublings):
        panels *= 2
        cur = estimate(panels)
        if abs(cur - prev) <= tol:
            return cur, True
        prev = cur
    return prev, False


def integrate(f: Callable, iv: Interval, q: QuadratureSpec = QuadratureSpec(),
              breakpoints: Sequence[float] = (), panels: int = 1):
    """Integrate ``f`` over ``iv`` to within ``q.abs_tol``.

    The interval is split at ``breakpoints`` first; the tolerance budget is
    shared out in proportion to piece length. ``panels`` is the starting
    panel count for composite Gauss (callers pass one that resolves the
    oscillation of their integrand).

    Raises
    ------
    EvaluationError
        ``f`` produced a non-finite value.
    ToleranceNotMetError
        The refinement limit was hit; ``best_estimate`` carries the result.
    """
    cuts = sorted({iv.lo, iv.hi, *(b for b in breakpoints if iv.lo < b < iv.hi)})
    total = 0.0
    converged = True
    for a, b in zip(cuts[:-1], cuts[1:]):
        tol = q.abs_tol * (b - a) / iv.length
        if q.method == "adaptive-simpson":
            val, ok = _simpson(f, a, b, tol, q.max_refinement)
        else:
            k = max(1, int(math.ceil(panels * (b - a) / iv.length)))
            val, ok = _gauss(f, a, b, tol, min(q.max_refinement, 20), k)
        total += val
        converged &= ok
    if not converged:
        raise ToleranceNotMetError("refinement limit reached before tolerance", total)
    return total


def l1_distance(f: Callable, g: Callable, iv: Interval, q: QuadratureSpec = QuadratureSpec(),
                breakpoints: Sequence[float] = ()) -> float:
    """``int_iv |f - g|``."""
    return float(integrate(lambda x: np.abs(np.asarray(f(x)) - np.asarray(g(x))), iv, q, breakpoints))


def _golden_max(f, a, b, tol=1e-13, max_iter=200):
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if abs(b - a) <= tol * max(1.0, abs(a) + abs(b)):
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = f(d)
    return (c, fc) if fc >= fd else (d, fd)


def sup_on_interval(f: Callable, iv: Interval, grid_step: float) -> tuple[float, float]:
    """Maximise ``f`` over a uniform grid, then polish the best grid point.

    The leftmost grid maximiser wins ties. The polish is a golden-section
    search over the two neighbouring grid cells followed by one parabolic
    step through the three grid values; a polished point replaces the grid
    point only if it is strictly better.
    """
    if not grid_step > 0 or not grid_step < iv.length:
        raise ArgumentError("grid_step must satisfy 0 < grid_step < |iv|")
    count = int(math.floor(iv.length / grid_step + 1e-9))
    x = iv.lo + grid_step * np.arange(count + 1)
    if x[-1] < iv.hi:
        x = np.append(x, iv.hi)
    y = np.asarray(evaluate_many(f, x), dtype=float)
    _check_finite(y, "sup_on_interval")
    i = int(np.argmax(y))
    best_x, best_y = float(x[i]), float(y[i])

    lo = float(x[max(i - 1, 0)])
    hi = float(x[min(i + 1, len(x) - 1)])

    def scalar(t):
        v = float(np.asarray(evaluate_many(f, np.array([t])))[0])
        _check_finite(v, "sup_on_interval")
        return v

    if hi > lo:
        gx, gy = _golden_max(scalar, lo, hi)
        if gy > best_y:
            best_x, best_y = float(gx), float(gy)
    if 0 < i < len(x) - 1:
        x0, x1, x2 = x[i - 1], x[i], x[i + 1]
        y0, y1, y2 = y[i - 1], y[i], y[i + 1]
        denom = (x1 - x0) * (y1 - y2) - (x1 - x2) * (y1 - y0)
        if denom != 0.0:
            num = (x1 - x0) ** 2 * (y1 - y2) - (x1 - x2) ** 2 * (y1 - y0)
            v = x1 - 0.5 * num / denom
            if lo < v < hi:
                pv = scalar(v)
                # near-ties go to the vertex: it pins down flat maxima far better
                slack = 4 * np.finfo(float).eps * max(1.0, abs(best_y))
                if pv > y1 and pv >= best_y - slack:
                    best_x, best_y = float(v), max(float(pv), best_y)
    return best_x, best_y


def grid_values(f: Callable, iv: Interval, grid_step: float) -> tuple[np.ndarray, np.ndarray, float]:
    count = max(1, int(math.ceil(iv.length / grid_step - 1e-9)))
    x = np.linspace(iv.lo, iv.hi, count + 1)
    y = evaluate_many(f, x)
    _check_finite(y, "modulus_of_continuity")
    return x, y, iv.length / count


def modulus_from_samples(y: np.ndarray, h: float, delta: float) -> float:
    """Grid modulus of continuity from equally spaced samples ``y`` of spacing ``h``."""
    if not delta > 0:
        raise ArgumentError("delta must be > 0")
    w = int(math.floor(delta / h + 1e-9))
    if w <= 0:
        return 0.0
    w = min(w, len(y) - 1)
    if np.iscomplexobj(y):
        best = 0.0
        for lag in range(1, w + 1):
            best = max(best, float(np.max(np.abs(y[lag:] - y[:-lag]))))
        return best
    y = np.asarray(y, dtype=float)
    # every window of w+1 consecutive samples is some centred filter window
    size = w + 1
    hi = maximum_filter1d(y, size=size, mode="nearest")
    lo = minimum_filter1d(y, size=size, mode="nearest")
    return float(np.max(hi - lo))


def modulus_of_continuity(f: Callable, delta: float, iv: Interval, grid_step: float) -> float:
    """``sup |f(x) - f(y)|`` over grid pairs in ``iv`` with ``|x - y| <= delta``.

    Real functions use a sliding max/min window (linear in the grid size);
    complex-valued functions fall back to a loop over lags.
    """
    if not delta > 0:
        raise ArgumentError("delta must be > 0")
    if not grid_step > 0:
        raise ArgumentError("grid_step must be > 0")
    _, y, h = grid_values(f, iv, grid_step)
    return modulus_from_samples(y, h, delta)
