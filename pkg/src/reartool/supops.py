"""Weighted supremum operators S and T on rearranged inputs.

S takes the weighted running supremum from the left,
    S_phi f(t) = (1/phi(t)) sup_{0<s<=t} phi(s) f*(s),
and T from the right,
    T_psi f(t) = (1/psi(t)) sup_{t<=s<R} psi(s) f*(s).

On step inputs both are exact: since phi is nondecreasing, the supremum of
phi * f* over a constant piece sits at the piece's right endpoint, so a single
prefix (or suffix) running-max over pieces determines the operator everywhere.
For a pure-power weight the output lands back in the exact piece algebra,
with the S crossovers  phi(t) = P_i / v_i  solved in closed form; any other
weight yields a pointwise-exact closure with numerically located crossovers
recorded as quadrature breakpoints.

``s_bracket``/``t_bracket`` evaluate S and T of a general nonincreasing
function on a grid as certified lower/upper envelopes (the cell bound
phi(t_{j+1}) * g(t_j) squeezes the in-cell supremum); the bracket width is
controlled by the grid ratio, and each side is used on whichever side of an
inequality keeps the check conservative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .asymptotics import INF_END, ZERO_END, Asym, limit
from .errors import DomainMismatch
from .funcspace import (
    Domain,
    MonotoneStepFn,
    PiecewiseFn,
    StepFn,
    head_limit,
    rearrange,
)
from .quadrature import NumericFn


@dataclass
class OpResult:
    fn: object  # PiecewiseFn or NumericFn on (0, R)
    trivial: bool
    op: str
    crossovers: tuple = ()

    def __call__(self, t):
        return self.fn(t)

    @property
    def exact(self) -> bool:
        return isinstance(self.fn, PiecewiseFn)


def _as_rearranged(f: StepFn) -> MonotoneStepFn:
    if isinstance(f, MonotoneStepFn):
        return f
    return rearrange(f)


def _phi_at(phi, t: float) -> float:
    return float(np.asarray(phi(np.asarray([t])))[0])


def apply_S(phi, f: StepFn) -> OpResult:
    """Exact S_phi of a step function."""
    fs = _as_rearranged(f)
    if phi.domain.R != fs.domain.R:
        raise DomainMismatch("weight and function live on different intervals")
    bounds = fs.bounds
    vals = fs.values
    n = len(vals)
    # prefix maxima of v_j * phi(right endpoint of piece j)
    P = np.zeros(n + 1)
    for i in range(n):
        contrib = 0.0
        if vals[i] > 0.0:
            contrib = vals[i] * _phi_at(phi, bounds[i + 1]) \
                if math.isfinite(bounds[i + 1]) else math.inf
        P[i + 1] = max(P[i], contrib)

    power = phi.global_power()
    if power is not None:
        return _s_exact_power(fs, P, power)
    return _s_numeric(phi, fs, P)


def _s_exact_power(fs: MonotoneStepFn, P: np.ndarray, power) -> OpResult:
    c, a = power
    bounds = fs.bounds
    vals = fs.values
    new_bounds = [0.0]
    pieces = []
    crossovers = []
    for i, v in enumerate(vals):
        lo, hi = bounds[i], bounds[i + 1]
        pow_term = (P[i] / c, -a, 0)
        if P[i] == 0.0:
            segs = [((float(v), 0.0, 0),)]
            cuts = [hi]
        elif a == 0.0:
            segs = [((max(P[i] / c, v), 0.0, 0),)]
            cuts = [hi]
        elif v == 0.0:
            segs = [(pow_term,)]
            cuts = [hi]
        else:
            tc = (P[i] / (v * c)) ** (1.0 / a)
            if tc <= lo:
                segs, cuts = [((float(v), 0.0, 0),)], [hi]
            elif tc >= hi:
                segs, cuts = [(pow_term,)], [hi]
            else:
                segs = [(pow_term,), ((float(v), 0.0, 0),)]
                cuts = [tc, hi]
                crossovers.append(tc)
        for s, cut in zip(segs, cuts):
            pieces.append(s)
            new_bounds.append(cut)
    return OpResult(PiecewiseFn(fs.domain, new_bounds, pieces), False, "S",
                    tuple(crossovers))


def _s_numeric(phi, fs: MonotoneStepFn, P: np.ndarray) -> OpResult:
    bounds = fs.bounds
    vals = fs.values
    crossovers = []
    for i, v in enumerate(vals):
        if P[i] <= 0.0 or v <= 0.0:
            continue
        level = P[i] / v
        lo, hi = bounds[i], bounds[i + 1]
        hi_eff = hi if math.isfinite(hi) else max(10.0 * lo, 1.0)
        if _phi_at(phi, max(lo, 1e-300)) < level < _phi_at(phi, hi_eff):
            crossovers.append(float(brentq(
                lambda t: _phi_at(phi, t) - level, max(lo, 1e-300), hi_eff)))

    def fn(ts):
        ts = np.atleast_1d(np.asarray(ts, dtype=float))
        idx = np.clip(np.searchsorted(bounds, ts, side="right") - 1, 0, len(vals) - 1)
        return np.maximum(P[idx] / phi(ts), vals[idx])

    head = Asym(float(vals[0]))
    if fs.domain.finite:
        tail = Asym(0.0)
    else:
        tail = Asym(float(P[-1])) / phi.tail_asym() if P[-1] > 0 else Asym(0.0)
    out = NumericFn(fn, fs.domain.R,
                    breakpoints=tuple(sorted(set(list(bounds[1:-1]) + crossovers))),
                    head=head, tail=tail, label="S output")
    return OpResult(out, False, "S", tuple(crossovers))


def apply_T(psi, f: StepFn) -> OpResult:
    """Exact T_psi of a step function (compact support required when R=inf)."""
    fs = _as_rearranged(f)
    if psi.domain.R != fs.domain.R:
        raise DomainMismatch("weight and function live on different intervals")
    bounds = fs.bounds
    vals = fs.values
    n = len(vals)
    M = np.zeros(n + 1)
    for i in range(n - 1, -1, -1):
        contrib = 0.0
        if vals[i] > 0.0:
            if not math.isfinite(bounds[i + 1]):
                raise ValueError("positive value on an unbounded piece")
            contrib = vals[i] * _phi_at(psi, bounds[i + 1])
        M[i] = max(M[i + 1], contrib)

    power = psi.global_power()
    if power is not None:
        c, a = power
        pieces = []
        for i in range(n):
            if M[i] == 0.0:
                pieces.append(((0.0, 0.0, 0),))
            else:
                pieces.append(((M[i] / c, -a, 0),))
        return OpResult(PiecewiseFn(fs.domain, bounds, pieces), False, "T")

    def fn(ts):
        ts = np.atleast_1d(np.asarray(ts, dtype=float))
        idx = np.clip(np.searchsorted(bounds, ts, side="right") - 1, 0, len(vals) - 1)
        return M[idx] / psi(ts)

    head = Asym(float(M[0])) / psi.head_asym() if M[0] > 0 else Asym(0.0)
    out = NumericFn(fn, fs.domain.R, breakpoints=tuple(bounds[1:-1]),
                    head=head, tail=Asym(0.0), label="T output")
    return OpResult(out, False, "T")


# ---------------------------------------------------------------------------
# grid brackets for S/T of general nonincreasing functions


def s_bracket(phi, g, grid: np.ndarray, g_head: float | None = None):
    """Lower/upper envelopes of S_phi g at the grid points; g nonincreasing."""
    pv = np.asarray(phi(grid), dtype=float)
    gv = np.asarray(g(grid), dtype=float)
    prod = pv * gv
    lower = np.maximum.accumulate(prod) / pv
    if g_head is None:
        g_head = head_limit(g) if isinstance(g, PiecewiseFn) else float(gv[0])
    head_cell = pv[0] * g_head
    cells = np.concatenate([[head_cell], pv[1:] * gv[:-1]])
    upper = np.maximum(np.maximum.accumulate(cells), prod) / pv
    return lower, upper


def t_bracket(psi, g, grid: np.ndarray, tail_mass: float | None = None):
    """Lower/upper envelopes of T_psi g at the grid points; g nonincreasing.

    ``tail_mass`` bounds sup_{s>grid[-1]} s*g(s) (e.g. the total integral when
    g is a maximal function); it controls the unbounded tail region on R=inf.
    """
    R = psi.domain.R
    pv = np.asarray(psi(grid), dtype=float)
    gv = np.asarray(g(grid), dtype=float)
    prod = pv * gv
    if math.isfinite(R):
        end_val = float(np.asarray(psi(np.asarray([R])))[0])
        g_end = gv[-1]
        tail_cell = end_val * g_end
        tail_lo = tail_cell
    else:
        if isinstance(g, PiecewiseFn):
            tail_lo = limit(psi.tail_asym() * g.tail_asym(), INF_END)
        else:
            tail_lo = 0.0
        if tail_mass is not None:
            tail_cell = pv[-1] / grid[-1] * tail_mass
        else:
            tail_cell = tail_lo
    rev_lower = np.maximum.accumulate(np.concatenate([[tail_lo], prod[::-1]]))[1:]
    lower = np.maximum(rev_lower[::-1], tail_lo) / pv
    cells = np.concatenate([pv[1:] * gv[:-1], [tail_cell]])
    rev_upper = np.maximum.accumulate(cells[::-1])[::-1]
    upper = np.maximum(rev_upper, prod) / pv
    return lower, upper
