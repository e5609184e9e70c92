"""Scalar special functions shared by the rest of the package.

Everything here is vectorized over numpy arrays and returns plain floats
for scalar input.  The three public functions are deliberately boring:
``sinc`` (the pi-normalized one, with exact zeros at nonzero integers),
``triangle`` (the unit hat function), and ``trigamma`` on the positive
half-line.
"""

from __future__ import annotations

import numpy as np

__all__ = ["sinc", "triangle", "trigamma"]

# Bernoulli numbers B_2, B_4, ..., B_12 for the trigamma asymptotic series.
_BERNOULLI_EVEN = (
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
)

_SINC_TAYLOR_CUT = 1e-4


def _as_array(x):
    arr = np.asarray(x, dtype=float)
    return arr, (arr.ndim == 0)


def sinc(x):
    """sin(pi x) / (pi x), with sinc(0) = 1.

    The argument of the sine is reduced with ``r = x - round(x)`` so that
    sinc is *exactly* zero at every nonzero integer and Poisson-type sums
    over integer grids come out exact.  A degree-6 Taylor branch covers
    ``|x| < 1e-4`` where the direct quotient loses accuracy.
    """
    arr, scalar = _as_array(x)
    n = np.round(arr)
    r = arr - n
    sign = 1.0 - 2.0 * np.mod(n, 2.0)  # (-1)**n for float n
    num = sign * np.sin(np.pi * r)
    with np.errstate(divide="ignore", invalid="ignore"):
        direct = num / (np.pi * arr)
    z2 = (np.pi * arr) ** 2
    taylor = 1.0 - (z2 / 6.0) * (1.0 - (z2 / 20.0) * (1.0 - z2 / 42.0))
    out = np.where(np.abs(arr) < _SINC_TAYLOR_CUT, taylor, direct)
    return float(out) if scalar else out


def triangle(t):
    """The unit hat max(1 - |t|, 0)."""
    arr, scalar = _as_array(t)
    out = np.maximum(1.0 - np.abs(arr), 0.0)
    return float(out) if scalar else out


def trigamma(x):
    """Trigamma psi'(x) for x > 0.

    Uses the recurrence psi'(x) = psi'(x+1) + 1/x^2 to push the argument
    above 10, then the asymptotic series
    1/y + 1/(2 y^2) + sum_k B_{2k} / y^{2k+1}.  Relative accuracy is
    better than 1e-12 across the domain.  Raises ValueError for x <= 0
    or non-finite input.
    """
    arr, scalar = _as_array(x)
    if not np.all(np.isfinite(arr)) or np.any(arr <= 0.0):
        raise ValueError("trigamma requires finite x > 0")

    work = arr.copy() if arr.ndim else arr.reshape(1).copy()
    acc = np.zeros_like(work)
    # Shift every argument above 10 (at most 10 steps since x > 0).
    for _ in range(10):
        low = work < 10.0
        if not np.any(low):
            break
        acc[low] += 1.0 / work[low] ** 2
        work[low] += 1.0

    # asymptotic: 1/y + 1/(2y^2) + B_2/y^3 + B_4/y^5 + ...
    inv = 1.0 / work
    inv2 = inv * inv
    tail = np.zeros_like(work)
    power = inv * inv2  # y^{-3}
    for b in _BERNOULLI_EVEN:
        tail += b * power
        power *= inv2

    out = acc + inv + 0.5 * inv2 + tail
    out = out.reshape(arr.shape)
    return float(out) if scalar else out
