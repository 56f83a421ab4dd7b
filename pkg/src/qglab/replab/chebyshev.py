"""Chebyshev interpolants used as polynomial surrogates for continuous functions."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

import numpy as np
from numpy.polynomial import chebyshev as C

from .._kernels import clenshaw

__all__ = ["ChebPoly", "chebyshev_approx", "NAMED_FUNCTIONS"]


def _ramp(s):
    return np.maximum(s, 0.0)


NAMED_FUNCTIONS: dict[str, Callable] = {
    "ramp": _ramp,
    "abs": np.abs,
    "identity": lambda s: np.asarray(s, dtype=float),
}


@lru_cache(maxsize=None)
def _cheb_power_table(n: int) -> tuple:
    """Integer power-basis coefficients of T_0..T_n."""
    rows = [(1,), (0, 1)]
    for k in range(2, n + 1):
        a, b = rows[k - 1], rows[k - 2]
        nxt = [0] * (k + 1)
        for i, c in enumerate(a):
            nxt[i + 1] += 2 * c
        for i, c in enumerate(b):
            nxt[i] -= c
        rows.append(tuple(nxt))
    return tuple(rows[: n + 1])


@dataclass(frozen=True)
class ChebPoly:
    coeffs: np.ndarray
    sup_error: float | None = None
    name: str = "custom"

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return clenshaw(self.coeffs, x.ravel()).reshape(x.shape)

    def power_coefficients_exact(self) -> list:
        """Exact rational power-basis coefficients of the (float-coefficient) series."""
        n = self.degree
        table = _cheb_power_table(max(n, 1))
        out = [Fraction(0)] * (n + 1)
        for k, ck in enumerate(self.coeffs):
            fk = Fraction(float(ck))
            if not fk:
                continue
            for i, t in enumerate(table[k]):
                if t:
                    out[i] += fk * t
        return out


def chebyshev_approx(f, D: int, grid_points: int = 10_000) -> ChebPoly:
    """Interpolant at the D+1 Chebyshev points of the first kind on [-1, 1].

    ``f`` is a name from ``NAMED_FUNCTIONS``, a callable, or a table
    ``(xs, ys)`` that is linearly interpolated.
    """
    if D < 0:
        raise ValueError("degree must be nonnegative")
    if isinstance(f, str):
        if f not in NAMED_FUNCTIONS:
            raise ValueError(f"unknown function {f!r}; known: {sorted(NAMED_FUNCTIONS)}")
        name, fn = f, NAMED_FUNCTIONS[f]
    elif callable(f):
        name, fn = getattr(f, "__name__", "custom"), f
    else:
        xs, ys = (np.asarray(t, dtype=float) for t in f)
        name, fn = "table", lambda s: np.interp(s, xs, ys)
    coef = C.chebinterpolate(lambda s: np.asarray(fn(s), dtype=float) * np.ones_like(s), D)
    coef = np.where(np.abs(coef) < 1e-15 * max(1.0, np.abs(coef).max()), 0.0, coef)
    grid = np.linspace(-1.0, 1.0, grid_points)
    err = float(np.max(np.abs(clenshaw(coef, grid) - fn(grid))))
    return ChebPoly(coef, err, name)
