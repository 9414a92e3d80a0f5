"""Pure numpy versions of the kernels in ``_kernels.pyx``.

Same contract and visiting order; used when the compiled module is not
available or ``KL_BACKEND=python`` is set.  Results agree with the compiled
kernels to rounding, not bit for bit.
"""

from __future__ import annotations

import numpy as np

MAXN = 64
_BLOCK = 1 << 21


def _tail(f: np.ndarray, start: int):
    """Products and log sums over coordinates start..n-1, lexicographic order."""
    N = f.shape[1]
    vals = f[start].copy()
    sums = np.arange(N, dtype=np.int64)
    for i in range(start + 1, f.shape[0]):
        vals = (vals[:, None] * f[i][None, :]).ravel()
        sums = ((sums[:, None] + np.arange(N)[None, :]) % N).ravel()
    return vals, sums


def _accumulate(out: np.ndarray, idx: np.ndarray, w: np.ndarray) -> None:
    N = out.shape[0]
    out += np.bincount(idx, weights=w.real, minlength=N) + 1j * np.bincount(
        idx, weights=w.imag, minlength=N
    )


def _pass(f: np.ndarray, level: int, v: complex, s: int, out: np.ndarray) -> None:
    n, N = f.shape
    if N ** (n - level) <= _BLOCK:
        vals, sums = _tail(f, level)
        _accumulate(out, (sums + s) % N, v * vals)
        return
    for x in range(N):
        _pass(f, level + 1, v * f[level, x], (s + x) % N, out)


def naive_table(f_in, chunk: int, threads: int = 1) -> np.ndarray:
    f = np.ascontiguousarray(f_in, dtype=np.complex128)
    n, N = f.shape
    if not 1 <= n <= MAXN:
        raise ValueError(f"n must be in [1, {MAXN}]")
    if n == 1:
        return f[0].copy()
    nchunks = (N + chunk - 1) // chunk
    out = np.zeros(N, dtype=np.complex128)
    for c in range(nchunks):
        part = np.zeros(N, dtype=np.complex128)
        for x1 in range(c * chunk, min((c + 1) * chunk, N)):
            _pass(f, 1, f[0, x1], x1, part)
        out += part
    return out


def single_sum(f_in, t: int) -> complex:
    f = np.ascontiguousarray(f_in, dtype=np.complex128)
    n, N = f.shape
    if not 1 <= n <= MAXN:
        raise ValueError(f"n must be in [1, {MAXN}]")
    t %= N
    if n == 1:
        return complex(f[0, t])
    total = 0j
    # the free coordinates x_1..x_{n-1}; x_n is solved from the product
    head = f[: n - 1]
    if N ** (n - 1) <= _BLOCK:
        vals, sums = _tail(head, 0)
        return complex(np.sum(vals * f[n - 1][(t - sums) % N]))
    rest = f[1:]
    for x in range(N):
        total += f[0, x] * single_sum(rest, t - x)
    return complex(total)
