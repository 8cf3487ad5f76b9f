"""Pure numpy stencil, used when the compiled extension is unavailable.

Evaluates per agent exactly what ``_ckernel.step_field`` evaluates::

    q   = k_dir * (T_nbr - T) / h2            (or alpha*(t_env - T)/h, or 0)
    s   = (q_n + q_s) + (q_e + q_w)
    out = T + dt * (s + (klin * T + src)) / crho

Elementwise float64 arithmetic in numpy is correctly rounded, so both
backends agree bit for bit.
"""

from __future__ import annotations

import threading
from concurrent.futures import ThreadPoolExecutor

import numpy as np

_pools: dict[int, ThreadPoolExecutor] = {}
_pools_lock = threading.Lock()


def _pool(workers: int) -> ThreadPoolExecutor:
    with _pools_lock:
        pool = _pools.get(workers)
        if pool is None:
            pool = _pools[workers] = ThreadPoolExecutor(max_workers=workers)
        return pool


def row_bands(ny: int, workers: int) -> list[tuple[int, int]]:
    """Contiguous row bands, one per worker (empty bands dropped)."""
    chunk = -(-ny // workers)
    return [(j0, min(j0 + chunk, ny)) for j0 in range(0, ny, chunk)]


def _boundary(t_row, h, convective, alpha, t_env):
    if convective:
        return alpha * (t_env - t_row) / h
    return np.zeros_like(t_row)


def _step_band(T, out, kn, ks, ke, kw, crho, klin, src, h, dt, convective, alpha, t_env, j0, j1):
    # Overflow past the stability limit is a supported outcome, not an error.
    with np.errstate(over="ignore", invalid="ignore"):
        _band(T, out, kn, ks, ke, kw, crho, klin, src, h, dt, convective, alpha, t_env, j0, j1)


def _band(T, out, kn, ks, ke, kw, crho, klin, src, h, dt, convective, alpha, t_env, j0, j1):
    ny, nx = T.shape
    h2 = h * h
    t = T[j0:j1]

    qn = np.empty_like(t)
    lo = max(j0, 1)
    qn[lo - j0:] = kn[lo:j1] * (T[lo - 1:j1 - 1] - T[lo:j1]) / h2
    if j0 == 0:
        qn[0] = _boundary(T[0], h, convective, alpha, t_env)

    qs = np.empty_like(t)
    hi = min(j1, ny - 1)
    qs[: hi - j0] = ks[j0:hi] * (T[j0 + 1:hi + 1] - T[j0:hi]) / h2
    if j1 == ny:
        qs[-1] = _boundary(T[ny - 1], h, convective, alpha, t_env)

    qe = np.empty_like(t)
    qe[:, :-1] = ke[j0:j1, :-1] * (t[:, 1:] - t[:, :-1]) / h2
    qe[:, -1] = _boundary(t[:, -1], h, convective, alpha, t_env)

    qw = np.empty_like(t)
    qw[:, 1:] = kw[j0:j1, 1:] * (t[:, :-1] - t[:, 1:]) / h2
    qw[:, 0] = _boundary(t[:, 0], h, convective, alpha, t_env)

    s = (qn + qs) + (qe + qw)
    g = klin[j0:j1] * t + src[j0:j1]
    out[j0:j1] = t + dt * (s + g) / crho[j0:j1]


def step_field(T, out, kn, ks, ke, kw, crho, klin, src,
               h, dt, convective, alpha, t_env, workers=1):
    """Write one synchronous step of ``T`` into ``out``."""
    ny = T.shape[0]
    args = (T, out, kn, ks, ke, kw, crho, klin, src, h, dt, bool(convective), alpha, t_env)
    if workers <= 1 or ny == 1:
        _step_band(*args, 0, ny)
        return
    futures = [_pool(workers).submit(_step_band, *args, j0, j1)
               for j0, j1 in row_bands(ny, workers)]
    for f in futures:
        f.result()
