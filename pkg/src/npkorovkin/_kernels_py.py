"""Pure numpy implementations of the hot kernels.

Same signatures and results as the compiled ``_kernels`` module; used when
the extension is not built or ``NPKOROVKIN_PURE=1`` is set.
"""

import numpy as np

GUARD = 1e-8
# below this |cos phi - cos theta_k| the rational form loses digits to
# cancellation; switch to the half-angle form in the node offset
NEAR = 1e-2
CHUNK_ELEMS = 2_000_000


def node_data(n):
    k = np.arange(1, n + 1)
    angles = (2 * k - 1) * np.pi / (2 * n)
    cosk = np.cos(angles)
    coef = np.where(k % 2 == 1, 1.0, -1.0) * np.sin(angles) / n
    return angles, cosk, coef


def product_form(n, k, phi, cosk):
    """Cardinal polynomial P_k at angle ``phi`` as a product over the other nodes (k is 0-based)."""
    c = np.cos(phi)
    num = c - np.delete(cosk, k)
    den = cosk[k] - np.delete(cosk, k)
    ratio = num / den
    if np.any(ratio == 0.0):
        return 0.0
    sign = -1.0 if np.count_nonzero(ratio < 0) % 2 else 1.0
    return sign * np.exp(np.sum(np.log(np.abs(ratio))))


def near_form(n, phi, theta_k):
    """Cardinal polynomial written through the offset from its node.

    With psi the reduction of phi to [0, pi] and d = psi - theta_k,
    P_k = sin(n d) sin(theta_k) / (2n sin((psi + theta_k)/2) sin(d/2)).
    """
    psi = np.abs(np.remainder(phi + np.pi, 2 * np.pi) - np.pi)
    d = psi - theta_k
    with np.errstate(divide="ignore", invalid="ignore"):
        v = np.sin(n * d) * np.sin(theta_k) / (2 * n * np.sin((psi + theta_k) / 2) * np.sin(d / 2))
    return np.where(d == 0.0, 1.0, v)


def _cardinal(n, phi, cosk, coef):
    # rows: angles, columns: nodes
    c = np.cos(phi)[:, None]
    diff = c - cosk[None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        vals = np.cos(n * phi)[:, None] * coef[None, :] / diff
    near = np.abs(diff) < NEAR
    if near.any():
        i, j = np.nonzero(near)
        angles = (2 * j + 1) * np.pi / (2 * n)
        vals[i, j] = near_form(n, phi[i], angles)
    bad = np.abs(diff) < GUARD
    if bad.any():
        for i, j in zip(*np.nonzero(bad)):
            vals[i, j] = product_form(n, j, phi[i], cosk)
    return vals


def pair_matrix(n, theta):
    """Matrix of P_k(theta - pi/2n) + P_k(theta + pi/2n); shape (len(theta), n)."""
    theta = np.ascontiguousarray(theta, dtype=float).ravel()
    _, cosk, coef = node_data(n)
    a = np.pi / (2 * n)
    return _cardinal(n, theta - a, cosk, coef) + _cardinal(n, theta + a, cosk, coef)


def _chunks(m, n):
    step = max(1, CHUNK_ELEMS // max(n, 1))
    for s in range(0, m, step):
        yield slice(s, min(m, s + step))


def lebesgue_sums(n, theta):
    """Return (Lambda, nu-sum, xi-sum) at each angle.

    Lambda = 1/2 sum |pair_k|, nu-sum = 1/2 sum |cos theta_k - cos theta| |pair_k|,
    xi-sum = 1/2 sum |theta_k - theta| |pair_k|.
    """
    theta = np.ascontiguousarray(theta, dtype=float).ravel()
    angles, cosk, _ = node_data(n)
    lam = np.empty(theta.size)
    nu = np.empty(theta.size)
    xi = np.empty(theta.size)
    for sl in _chunks(theta.size, n):
        t = theta[sl]
        p = np.abs(pair_matrix(n, t))
        lam[sl] = 0.5 * p.sum(axis=1)
        nu[sl] = 0.5 * (np.abs(cosk[None, :] - np.cos(t)[:, None]) * p).sum(axis=1)
        xi[sl] = 0.5 * (np.abs(angles[None, :] - t[:, None]) * p).sum(axis=1)
    return lam, nu, xi


def weighted_pair_sum(n, values, theta):
    """1/2 sum_k values[k] * pair_k(theta) at each angle."""
    theta = np.ascontiguousarray(theta, dtype=float).ravel()
    values = np.asarray(values)
    out = np.empty(theta.size, dtype=np.result_type(values, float))
    for sl in _chunks(theta.size, n):
        out[sl] = 0.5 * pair_matrix(n, theta[sl]) @ values
    return out
