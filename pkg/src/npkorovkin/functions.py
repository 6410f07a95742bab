"""Concrete test functions used by the reports and the test-suite."""

from __future__ import annotations

import math

import numpy as np

from .errors import ArgumentError
from .numerics import Interval, RealFunction

UNIT = Interval(0.0, 1.0)
SYMMETRIC = Interval(-1.0, 1.0)
HALF_TURN = Interval(0.0, math.pi)


def _tent(x):
    x = np.asarray(x, dtype=float)
    return np.where(x <= -0.5, -2 * x - 1, np.where(x <= 0.0, 2 * x + 1, -2 * x + 1))


def _tent_prime(x):
    x = np.asarray(x, dtype=float)
    return np.where(x <= -0.5, -2.0, np.where(x <= 0.0, 2.0, -2.0))


def _cubic(x):
    x = np.asarray(x, dtype=float)
    return np.select(
        [x <= -0.5, x <= 0.0, x <= 0.5],
        [0.5 * (x + 1) ** 3, -0.5 * x**3, 0.5 * x**3],
        0.5 * (1 - x) ** 3,
    )


def tent() -> RealFunction:
    """Piecewise linear with slopes of magnitude 2 and kinks at -0.5 and 0."""
    return RealFunction(_tent, SYMMETRIC, "piecewise-C1", compact_support=True,
                        breakpoints=(-0.5, 0.0), derivative=_tent_prime, name="tent")


def cubic() -> RealFunction:
    """Piecewise cubic, continuous, with kinks at -0.5, 0 and 0.5."""
    return RealFunction(_cubic, SYMMETRIC, "continuous", compact_support=True,
                        breakpoints=(-0.5, 0.0, 0.5), name="cubic")


EXAMPLES = {"tent": tent, "cubic-spline-like": cubic}


def example(name: str) -> RealFunction:
    try:
        return EXAMPLES[name]()
    except KeyError:
        raise ArgumentError(f"unknown example {name!r}; choose from {sorted(EXAMPLES)}") from None


def monomial(j: int, domain: Interval = UNIT) -> RealFunction:
    """``e_j(t) = t**j``."""
    return RealFunction(lambda t, j=j: np.asarray(t, dtype=float) ** j + 0.0 * np.asarray(t, dtype=float),
                        domain, "C2", antiderivative=lambda t, j=j: np.asarray(t, dtype=float) ** (j + 1) / (j + 1),
                        derivative=lambda t, j=j: j * np.asarray(t, dtype=float) ** max(j - 1, 0),
                        name=f"e{j}")


def constant(c: float, domain: Interval = UNIT) -> RealFunction:
    return RealFunction(lambda t, c=c: np.full(np.shape(t), c, dtype=float) if np.ndim(t) else c,
                        domain, "C2", antiderivative=lambda t, c=c: c * np.asarray(t, dtype=float),
                        derivative=lambda t: np.zeros(np.shape(t)) if np.ndim(t) else 0.0,
                        name=f"const{c:g}")


def decaying_exponential(domain: Interval = UNIT) -> RealFunction:
    """``e^{-t}``."""
    return RealFunction(lambda t: np.exp(-np.asarray(t, dtype=float)), domain, "C2",
                        antiderivative=lambda t: -np.exp(-np.asarray(t, dtype=float)),
                        derivative=lambda t: -np.exp(-np.asarray(t, dtype=float)), name="exp(-t)")


def bump() -> RealFunction:
    """``(1 - x^2)^3`` on [-1, 1], zero outside; twice continuously differentiable."""
    return RealFunction(lambda x: (1.0 - np.asarray(x, dtype=float) ** 2) ** 3, SYMMETRIC, "C2",
                        compact_support=True, name="bump")


def bump_transform(theta):
    """Exact transform ``int (1-x^2)^3 e^{-i x theta} dx`` (real, even)."""
    t = np.asarray(theta, dtype=float)
    out = np.empty_like(t)
    small = np.abs(t) < 0.5
    # series for small |t|: int (1-x^2)^3 x^{2j} dx = 2 * 48 / ((2j+1)(2j+3)(2j+5)(2j+7))
    ts = t[small]
    acc = np.zeros_like(ts)
    term = np.ones_like(ts)
    for j in range(12):
        mom = 96.0 / ((2 * j + 1) * (2 * j + 3) * (2 * j + 5) * (2 * j + 7))
        acc += term * mom
        term = -term * ts**2 / ((2 * j + 1) * (2 * j + 2))
    out[small] = acc
    tl = t[~small]
    s, c = np.sin(tl), np.cos(tl)
    # repeated integration by parts of the even polynomial against cos
    out[~small] = (96.0 * (15.0 - 6.0 * tl**2) * s / tl**7 - 96.0 * (15.0 * tl - tl**3) * c / tl**7)
    return out if np.ndim(theta) else float(out)


def abs_centred(domain: Interval = UNIT) -> RealFunction:
    """``|t - 1/2|``."""
    return RealFunction(lambda t: np.abs(np.asarray(t, dtype=float) - 0.5), domain, "piecewise-C1",
                        breakpoints=(0.5,), name="|t-1/2|")


def hat(peak: float, left: float, right: float, domain: Interval = HALF_TURN) -> RealFunction:
    """Non-negative hat: 0 outside (left, right), 1 at ``peak``, linear in between."""

    def ev(x):
        x = np.asarray(x, dtype=float)
        up = (x - left) / (peak - left)
        down = (right - x) / (right - peak)
        return np.clip(np.minimum(up, down), 0.0, None)

    return RealFunction(ev, domain, "continuous", breakpoints=(left, peak, right), name="hat")


def gaussian_spectrum(scale: float = 1.0, frequency: str = "angular"):
    """Transform of ``e^{-x^2}``.

    ``angular`` uses ``int f e^{-i x theta} dx = sqrt(pi) e^{-theta^2/4}``;
    ``ordinary`` uses ``int f e^{-2 pi i x theta} dx = sqrt(pi) e^{-pi^2 theta^2}``.
    """
    root = math.sqrt(math.pi)
    if frequency == "angular":
        return lambda t: scale * root * np.exp(-np.asarray(t, dtype=float) ** 2 / 4.0)
    if frequency == "ordinary":
        return lambda t: scale * root * np.exp(-(math.pi**2) * np.asarray(t, dtype=float) ** 2)
    raise ArgumentError(f"unknown frequency convention {frequency!r}")
