"""Certified quadrature for integrands that leave the exact piece algebra.

All integration happens in the substitution u = log t, which turns power-law
ends into exponentially decaying integrands and makes the improper endpoints
t -> 0+ and t -> inf ordinary infinite limits for the adaptive rule.  Whether
an improper end converges at all is decided analytically from the attached
end behavior descriptors, never from the quadrature value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad

from .asymptotics import INF_END, ZERO_END, Asym, integrable
from .errors import NonIntegrable, NonIntegrableHead

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(24)


@dataclass
class NumericFn:
    """A nonnegative function on (0, R) known pointwise, with end descriptors.

    ``head`` and ``tail`` describe the behavior near 0 and near R = inf (the
    tail is ignored for finite R); they drive every convergence decision.
    ``breakpoints`` lists interior kinks so the adaptive rule can split there.
    """

    fn: object
    R: float
    breakpoints: tuple = ()
    head: Asym = Asym(0.0)
    tail: Asym = Asym(0.0)
    label: str = ""
    _cache: dict = field(default_factory=dict, repr=False)

    def __call__(self, t):
        arr = np.atleast_1d(np.asarray(t, dtype=float))
        out = np.asarray(self.fn(arr), dtype=float)
        return float(out[0]) if np.asarray(t).ndim == 0 else out

    def head_integrable(self) -> bool:
        return integrable(self.head, ZERO_END)

    def tail_integrable(self) -> bool:
        if math.isfinite(self.R):
            return True
        return integrable(self.tail, INF_END)

    def _quad_log(self, u_lo: float, u_hi: float) -> float:
        f = self.fn

        def g(u):
            # convergence at the ends is certified analytically before we get
            # here, so the transformed integrand may be flushed to 0 once t
            # under/overflows double precision
            if abs(u) > 700.0:
                return 0.0
            t = math.exp(u)
            with np.errstate(all="ignore"):
                v = float(f(np.asarray([t]))[0]) * t
            return v if math.isfinite(v) else 0.0

        pts = [math.log(b) for b in self.breakpoints
               if math.isfinite(u_lo) and math.isfinite(u_hi)
               and u_lo < math.log(b) < u_hi]
        val, _ = quad(g, u_lo, u_hi, points=pts or None, limit=300)
        return val

    def integrate(self, a: float = 0.0, b: float | None = None,
                  require_finite: bool = False) -> float:
        if b is None:
            b = self.R
        if not (0.0 <= a <= b <= self.R):
            raise ValueError("integration limits outside [0, R]")
        if a == b:
            return 0.0
        if a == 0.0 and not self.head_integrable():
            if require_finite:
                raise NonIntegrableHead(f"{self.label or 'integrand'} diverges at 0")
            return math.inf
        if b == math.inf and not self.tail_integrable():
            if require_finite:
                raise NonIntegrable(f"{self.label or 'integrand'} diverges at inf")
            return math.inf
        u_lo = -math.inf if a == 0.0 else math.log(a)
        u_hi = math.inf if b == math.inf else math.log(b)
        cuts = sorted(math.log(p) for p in self.breakpoints if a < p < b)
        total, lo = 0.0, u_lo
        for c in cuts:
            total += self._quad_log(lo, c)
            lo = c
        total += self._quad_log(lo, u_hi)
        return total


def merge_grid(grid: np.ndarray, breakpoints, R: float) -> np.ndarray:
    extra = [b for b in breakpoints if 0.0 < b < R and math.isfinite(b)]
    return np.union1d(grid, extra) if extra else np.asarray(grid, dtype=float)


def _segment_integrals(f: NumericFn, grid: np.ndarray) -> np.ndarray:
    """Gauss-Legendre integrals over each consecutive grid cell, in log coords."""
    u = np.log(grid)
    mid = 0.5 * (u[1:] + u[:-1])
    half = 0.5 * (u[1:] - u[:-1])
    # nodes: (cells, order)
    uu = mid[:, None] + half[:, None] * _GL_NODES[None, :]
    tt = np.exp(uu)
    vals = f(tt.ravel()).reshape(tt.shape) * tt
    return (vals * _GL_WEIGHTS[None, :]).sum(axis=1) * half


def cumulative_on_grid(f: NumericFn, grid: np.ndarray) -> np.ndarray:
    """I[k] = integral_0^{grid[k]} f; all +inf when the head diverges."""
    grid = np.asarray(grid, dtype=float)
    if not f.head_integrable():
        return np.full(len(grid), math.inf)
    key = ("cum", hash(grid.tobytes()))
    if key in f._cache:
        return f._cache[key]
    head = f._quad_log(-math.inf, math.log(grid[0]))
    segs = _segment_integrals(f, grid)
    out = head + np.concatenate([[0.0], np.cumsum(segs)])
    f._cache[key] = out
    return out


def suffix_on_grid(f: NumericFn, grid: np.ndarray) -> np.ndarray:
    """J[k] = integral_{grid[k]}^R f; all +inf when the tail diverges."""
    grid = np.asarray(grid, dtype=float)
    if not f.tail_integrable():
        return np.full(len(grid), math.inf)
    key = ("suf", hash(grid.tobytes()))
    if key in f._cache:
        return f._cache[key]
    u_hi = math.inf if math.isinf(f.R) else math.log(f.R)
    tail = f._quad_log(math.log(grid[-1]), u_hi)
    segs = _segment_integrals(f, grid)
    out = tail + np.concatenate([np.cumsum(segs[::-1])[::-1], [0.0]])
    f._cache[key] = out
    return out
