"""Suprema of weighted piecewise expressions over (0, R).

The workhorse is ``weighted_sup(phi, g)`` for sup_t phi(t) * g(t) with phi a
quasiconcave profile (or None for plain sup g) and g in the exact piece
algebra.  Candidates are every breakpoint of either factor, analytic limits at
both ends of the interval, closed-form interior critical points when the
product is a two-term power expression, and a local refinement pass per piece.
Breakpoint candidates are what make suprema attained at a kink exact rather
than grid-accurate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .asymptotics import CONST_ONE, INF_END, ZERO_END, Asym, limit
from .funcspace import PiecewiseFn, _dominant_term, _term_eval


@dataclass
class SupResult:
    value: float
    argmax: float | str
    attained: bool  # True when a candidate point realizes the value


def grid_sup_refine(fun, grid: np.ndarray, rounds: int = 3):
    """Argmax of a smooth function on a grid, sharpened by local zooming."""
    vals = np.asarray(fun(grid), dtype=float)
    k = int(np.nanargmax(vals))
    best_t, best_v = float(grid[k]), float(vals[k])
    lo = grid[max(k - 1, 0)]
    hi = grid[min(k + 1, len(grid) - 1)]
    for _ in range(rounds):
        win = np.geomspace(lo, hi, 33)
        wv = np.asarray(fun(win), dtype=float)
        j = int(np.nanargmax(wv))
        if wv[j] > best_v:
            best_v, best_t = float(wv[j]), float(win[j])
        lo = win[max(j - 1, 0)]
        hi = win[min(j + 1, len(win) - 1)]
    return best_t, best_v


def _two_term_critical(terms) -> list[float]:
    """Stationary points of c1*t^e1 + c2*t^e2 (no log factors)."""
    live = [(c, g) for c, g, m in terms if c != 0.0 and m == 0]
    if len(live) != 2 or any(c != 0.0 and m > 0 for c, g, m in terms):
        return []
    (c1, e1), (c2, e2) = live
    a, b = c1 * e1, c2 * e2
    if e1 == e2 or a == 0.0 or b == 0.0 or (a > 0) == (b > 0):
        return []
    # c1 e1 t^{e1-1} = -c2 e2 t^{e2-1}
    t = (-a / b) ** (1.0 / (e2 - e1))
    return [t] if math.isfinite(t) and t > 0 else []


def weighted_sup(phi, g: PiecewiseFn, refine: bool = True) -> SupResult:
    """sup over (0, R) of phi(t) * g(t); phi=None means sup of g itself."""
    R = g.domain.R
    if phi is None:
        phi_eval = lambda t: np.ones_like(np.atleast_1d(np.asarray(t, float)))
        phi_head = CONST_ONE
        phi_tail = CONST_ONE
        phi_breaks: tuple = ()
        phi_power: tuple[float, float] | None = (1.0, 0.0)
    else:
        phi_eval = phi
        phi_head = phi.head_asym()
        phi_tail = phi.tail_asym() if not g.domain.finite else CONST_ONE
        phi_breaks = phi.breakpoints()
        phi_power = phi.global_power()

    def h(ts):
        ts = np.atleast_1d(np.asarray(ts, dtype=float))
        return np.asarray(phi_eval(ts), dtype=float) * g(ts)

    def h1(t):
        return float(h(t)[0])

    cuts = sorted({float(b) for b in list(g.bounds[1:-1]) + list(phi_breaks)
                   if 0.0 < b < R and math.isfinite(b)})
    best_v, best_t = -math.inf, None
    for t in cuts:
        v = h1(t)
        if v > best_v:
            best_v, best_t = v, t
    # evaluation is right-continuous, so a sup sitting at the open right end
    # of a piece (downward jump) needs the piece expression itself at the edge
    for i, terms in enumerate(g.pieces):
        b = float(g.bounds[i + 1])
        if not (0.0 < b < R) or not math.isfinite(b):
            continue
        left = math.fsum(float(_term_eval(c, gg, m, np.asarray(b)))
                         for c, gg, m in terms)
        v = float(np.asarray(phi_eval(np.asarray([b])))[0]) * left
        if v > best_v:
            best_v, best_t = v, b
    if math.isfinite(R):
        v = float(np.asarray(phi_eval(np.asarray([R])))[0]) * g.eval_at_or_end(R)
        if v > best_v:
            best_v, best_t = v, R

    # end limits via the asymptotic algebra
    head_lim = limit(phi_head * _dominant_term(g.pieces[0], ZERO_END), ZERO_END)
    argmax: float | str | None = best_t
    if head_lim > best_v:
        best_v, argmax = head_lim, "0+"
    if not g.domain.finite:
        tail_lim = limit(phi_tail * _dominant_term(g.pieces[-1], INF_END), INF_END)
        if tail_lim > best_v:
            best_v, argmax = tail_lim, "inf"
    if math.isinf(best_v):
        return SupResult(best_v, argmax, False)

    attained = True
    # closed-form interior critical points for pure-power weights
    if phi_power is not None:
        cphi, aphi = phi_power
        for i, terms in enumerate(g.pieces):
            lo, hi = g.bounds[i], g.bounds[i + 1]
            shifted = [(c * cphi, gg + aphi, m) for c, gg, m in terms]
            for t in _two_term_critical(shifted):
                if lo < t < hi:
                    v = h1(t)
                    if v > best_v:
                        best_v, argmax = v, t

    if refine:
        seg_edges = [0.0] + cuts + [R]
        for lo, hi in zip(seg_edges[:-1], seg_edges[1:]):
            hi_eff = hi if math.isfinite(hi) else max(1e6, 100.0 * max(lo, 1.0))
            if math.isfinite(R) and hi_eff >= R:
                hi_eff = R * (1.0 - 1e-12)  # keep strictly inside (0, R)
            lo_eff = lo if lo > 0.0 else max(1e-9, hi_eff * 1e-9)
            if hi_eff <= lo_eff:
                continue
            pts = np.geomspace(lo_eff, hi_eff, 17)
            t_loc, v_loc = grid_sup_refine(h, pts, rounds=2)
            if v_loc > best_v * (1.0 + 1e-12):
                best_v, argmax, attained = v_loc, t_loc, False
    return SupResult(best_v, argmax, attained)
