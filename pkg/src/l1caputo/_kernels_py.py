"""Pure-numpy L1 history sums, used when the compiled extension is unavailable.

For node ``n >= 1`` the history term is

    H_n = b[n-1] * y[0] + sum_{i=1}^{n-1} (b[n-i-1] - b[n-i]) * y[i]

so that the L1 operator reads ``scale * (y[n] - H_n)``.
"""

from __future__ import annotations

import numpy as np


def l1_history(b: np.ndarray, y: np.ndarray) -> np.ndarray:
    N = y.shape[0] - 1
    out = b[:N] * y[0]
    if N > 1:
        diffs = b[:-1] - b[1:]
        # direct (non-FFT) convolution: entry m holds the sum for n = m + 2
        out[1:] += np.convolve(diffs[: N - 1], y[1:N])[: N - 1]
    return out


def l1_history_at(b: np.ndarray, y: np.ndarray, n: int) -> float:
    acc = b[n - 1] * y[0]
    if n > 1:
        acc += np.dot(b[n - 2 :: -1][: n - 1] - b[n - 1 : 0 : -1], y[1:n])
    return float(acc)


def fode_march(b: np.ndarray, scale: float, lam: float, f: np.ndarray, y0: float) -> np.ndarray:
    N = f.shape[0] - 1
    diffs = b[:-1] - b[1:]
    rev = diffs[::-1].copy()  # tail rev[-(n-1):] lines up with Y[1:n]
    Y = np.empty(N + 1)
    Y[0] = y0
    denom = scale + lam
    for n in range(1, N + 1):
        acc = b[n - 1] * y0
        if n > 1:
            acc += np.dot(rev[len(rev) - n + 1 :], Y[1:n])
        Y[n] = (f[n] + scale * acc) / denom
    return Y
