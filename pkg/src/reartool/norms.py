"""Weighted norms on (0, R) built from the maximal function.

Two families: the weighted supremum norm  sup_t phi(t) f**(t)  over a
quasiconcave profile phi, and the weighted integral norm

    ( integral_0^R (f**)^p w )^{1/p}

for a weight w and exponent p >= 1.  The integral family degenerates unless
the weight passes two side conditions; rather than silently collapsing to
the zero space or to L^1, the degenerate cases raise ``TrivialSpace`` naming
which identification fired.  The fundamental function (the p-th power of the
norm of an indicator) is computed in closed form whenever the weight lives
in the exact piece algebra, and every end limit used by the criteria layer
is derived from the asymptotic descriptors, not from grid values.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .asymptotics import (
    INF_END,
    ZERO_END,
    Asym,
    dominant,
    integrable,
    integral_away_from_end,
    integral_toward_end,
    limit,
)
from .errors import TrivialSpace
from .extrema import weighted_sup
from .funcspace import Domain, PiecewiseFn, StepFn, log_grid, maximal, rearrange
from .quadrature import NumericFn, cumulative_on_grid, merge_grid, suffix_on_grid

_E = math.e


@dataclass(frozen=True)
class NormValue:
    value: float
    method: str  # "exact" | "quadrature"
    error_bound: float = 0.0  # relative

    def __float__(self) -> float:
        return self.value


class Weight:
    """A positive weight on (0, R); exact piece-algebra or pointwise backing.

    ``require_integrable=False`` admits weights whose integral diverges at 0
    (needed to exercise the embedding check); every space built on such a
    weight is degenerate and says so.
    """

    def __init__(self, domain: Domain, *, exact: PiecewiseFn | None = None,
                 numeric: NumericFn | None = None, label: str = "w",
                 require_integrable: bool = True):
        if (exact is None) == (numeric is None):
            raise ValueError("exactly one backing (exact or numeric) is required")
        self.domain = domain
        self.exact = exact
        self.numeric = numeric
        self.label = label
        if exact is not None:
            self.head = exact.head_asym()
            self.tail = exact.tail_asym() if not domain.finite else Asym(0.0)
        else:
            self.head = numeric.head
            self.tail = numeric.tail if not domain.finite else Asym(0.0)
        probe = log_grid(domain, 64)
        vals = self(probe)
        if np.any(~np.isfinite(vals)) or np.any(vals <= 0.0):
            k = int(np.argmax(~np.isfinite(vals) | (vals <= 0.0)))
            raise ValueError(f"weight must be positive and finite (fails near t={probe[k]:g})")
        self.locally_integrable = integrable(self.head, ZERO_END)
        if require_integrable and not self.locally_integrable:
            raise ValueError("weight is not integrable at 0; "
                             "pass require_integrable=False to build it anyway")
        self._suffix_cache: dict[float, object] = {}

    def __repr__(self):
        return f"Weight({self.label})"

    def __call__(self, t):
        if self.exact is not None:
            return self.exact(t)
        return self.numeric(t)

    def breakpoints(self) -> tuple:
        if self.exact is not None:
            return tuple(self.exact.breakpoints())
        return tuple(self.numeric.breakpoints)

    def scaled(self, c: float) -> "Weight":
        if c <= 0:
            raise ValueError("scale must be positive")
        if self.exact is not None:
            return Weight(self.domain, exact=self.exact.scale(c),
                          label=f"{c:g}*{self.label}",
                          require_integrable=self.locally_integrable)
        base = self.numeric
        nf = NumericFn(lambda t: c * base(t), base.R, breakpoints=base.breakpoints,
                       head=base.head.scaled(c), tail=base.tail.scaled(c),
                       label=f"{c:g}*{base.label}")
        return Weight(self.domain, numeric=nf, label=f"{c:g}*{self.label}",
                      require_integrable=self.locally_integrable)

    # -- integrals

    def cumulative(self, ts) -> np.ndarray | float:
        """integral_0^t of the weight, vectorized over scalar or array t."""
        if self.exact is not None:
            return self.exact.integral_from_zero(ts)
        if np.asarray(ts).ndim == 0:
            if not self.locally_integrable:
                return math.inf
            return self.numeric.integrate(0.0, float(ts))
        return _on_sorted(cumulative_on_grid, self.numeric,
                          np.asarray(ts, dtype=float))

    def _suffix_fn(self, p: float):
        """Backing object for s^{-p} * w(s), cached per exponent."""
        if p not in self._suffix_cache:
            if self.exact is not None:
                self._suffix_cache[p] = self.exact.shift_power(-p)
            else:
                base = self.numeric
                self._suffix_cache[p] = NumericFn(
                    lambda t: base(t) * np.asarray(t, dtype=float) ** (-p),
                    base.R, breakpoints=base.breakpoints,
                    head=base.head * Asym(1.0, -p),
                    tail=base.tail * Asym(1.0, -p) if not self.domain.finite else Asym(0.0),
                    label=f"t^-{p:g}*{base.label}")
        return self._suffix_cache[p]

    def suffix_power(self, p: float, ts) -> np.ndarray | float:
        """integral_t^R of s^{-p} w(s) ds, vectorized over scalar or array t."""
        g = self._suffix_fn(p)
        if self.exact is not None:
            return g.integral_to_end(ts)
        if np.asarray(ts).ndim == 0:
            return g.integrate(float(ts), self.domain.R)
        return _on_sorted(suffix_on_grid, g, np.asarray(ts, dtype=float))


def _on_sorted(grid_op, nf, ts: np.ndarray) -> np.ndarray:
    """Apply a sorted-grid cumulative routine to possibly unsorted points."""
    order = np.argsort(ts, kind="stable")
    if np.all(order[:-1] < order[1:]):
        return grid_op(nf, ts)
    vals = grid_op(nf, ts[order])
    out = np.empty_like(vals)
    out[order] = vals
    return out


def weight_power(c: float, gamma: float, R: float = math.inf, *,
                 require_integrable: bool = True) -> Weight:
    dom = Domain(R)
    pw = PiecewiseFn(dom, [0.0, R], [((float(c), float(gamma), 0),)])
    return Weight(dom, exact=pw, label=f"{c:g}*t^{gamma:g}",
                  require_integrable=require_integrable)


def weight_powlog(c: float, gamma: float, beta: float, R: float = math.inf, *,
                  require_integrable: bool = True) -> Weight:
    dom = Domain(R)

    def fn(t):
        arr = np.atleast_1d(np.asarray(t, dtype=float))
        out = c * arr ** gamma * (_E + np.abs(np.log(arr))) ** beta
        return float(out[0]) if np.asarray(t).ndim == 0 else out

    brk = (1.0,) if R > 1.0 else ()
    nf = NumericFn(fn, R, breakpoints=brk, head=Asym(c, gamma, beta),
                   tail=Asym(c, gamma, beta), label=f"{c:g}*t^{gamma:g}*L^{beta:g}")
    w = Weight(dom, numeric=nf, label=nf.label,
               require_integrable=require_integrable)
    w.powlog = (float(c), float(gamma), float(beta))  # descriptor round-trip
    return w


def weight_from_pieces(pw: PiecewiseFn, label: str = "w") -> Weight:
    return Weight(pw.domain, exact=pw, label=label)


def weight_from_fn(fn, R: float, head: Asym, tail: Asym = Asym(0.0),
                   breakpoints: tuple = (), label: str = "w") -> Weight:
    nf = NumericFn(fn, R, breakpoints=breakpoints, head=head, tail=tail, label=label)
    return Weight(Domain(R), numeric=nf, label=label)


class GammaSpace:
    """Exponent p in [1, inf) plus a weight; hosts the integral norm."""

    def __init__(self, p: float, weight: Weight):
        if not (1.0 <= p < math.inf):
            raise ValueError("exponent p must satisfy 1 <= p < inf")
        self.p = float(p)
        self.weight = weight
        self._nontrivial: tuple[bool, str, str] | None = None

    @property
    def domain(self) -> Domain:
        return self.weight.domain

    def __repr__(self):
        return f"GammaSpace(p={self.p:g}, {self.weight.label}, R={self.domain.R:g})"

    # -- degeneracy

    def nontriviality(self) -> tuple[bool, str, str]:
        """(ok, clause, detail); clause names the degenerate identification."""
        if self._nontrivial is not None:
            return self._nontrivial
        w = self.weight
        if not w.locally_integrable:
            out = (False, "zero-space", "weight not integrable at 0")
        elif not self.domain.finite:
            tail_ok = integrable(w.tail * Asym(1.0, -self.p), INF_END)
            if tail_ok and w.exact is not None:
                tail_ok = math.isfinite(float(w.suffix_power(self.p, 1.0)))
            out = ((True, "", "") if tail_ok else
                   (False, "zero-space",
                    "integral of s^-p * w over (1, inf) diverges"))
        else:
            head_div = not integrable(w.head * Asym(1.0, -self.p), ZERO_END)
            out = ((True, "", "") if head_div else
                   (False, "l1-space",
                    "integral of s^-p * w over (0, R) converges"))
        self._nontrivial = out
        return out

    def ensure_nontrivial(self) -> None:
        ok, clause, detail = self.nontriviality()
        if not ok:
            raise TrivialSpace(clause, detail)

    # -- fundamental function

    def fundamental(self, ts) -> np.ndarray | float:
        """integral_0^t w + t^p integral_t^R s^{-p} w, vectorized."""
        scalar = np.asarray(ts).ndim == 0
        tt = np.atleast_1d(np.asarray(ts, dtype=float))
        head = np.asarray(self.weight.cumulative(tt), dtype=float)
        tail = np.asarray(self.weight.suffix_power(self.p, tt), dtype=float)
        out = head + tt ** self.p * tail
        return float(out[0]) if scalar else out

    def fundamental_head(self) -> Asym:
        """Behavior of the fundamental function as t -> 0+."""
        w = self.weight
        a1 = integral_toward_end(w.head, ZERO_END)
        q = w.head * Asym(1.0, -self.p)
        if integrable(q, ZERO_END):
            # t^p times the (finite, positive) full integral
            a2 = Asym(float(w._suffix_fn(self.p).integrate()), self.p)
        else:
            a2 = Asym(1.0, self.p) * integral_away_from_end(q, ZERO_END)
        return dominant(a1, a2, ZERO_END)

    def fundamental_tail(self) -> Asym:
        """Behavior of the fundamental function as t -> R (only for R = inf)."""
        if self.domain.finite:
            raise ValueError("tail profile is only defined on (0, inf)")
        w = self.weight
        if integrable(w.tail, INF_END):
            total = (w.exact.integrate(require_finite=True) if w.exact is not None
                     else w.numeric.integrate(require_finite=True))
            b1 = Asym(total)
        else:
            b1 = integral_away_from_end(w.tail, INF_END)
        q = w.tail * Asym(1.0, -self.p)
        b2 = Asym(1.0, self.p) * integral_toward_end(q, INF_END)
        return dominant(b1, b2, INF_END)


def gamma_fundamental(space: GammaSpace, t: float) -> float:
    space.ensure_nontrivial()
    if not (0.0 < t < space.domain.R):
        raise ValueError("t must lie inside (0, R)")
    return float(space.fundamental(t))


# ---------------------------------------------------------------------------
# the two norms


def marcinkiewicz_norm(phi, f: StepFn) -> NormValue:
    """sup over (0, R) of phi(t) * f**(t) for a step function f."""
    fs = rearrange(f) if not f.is_nonincreasing() else f
    if isinstance(fs, StepFn) and (len(fs.values) == 0 or float(np.max(fs.values)) == 0.0):
        return NormValue(0.0, "exact", 0.0)
    fss = maximal(fs)
    res = weighted_sup(phi, fss)
    exact = phi.global_power() is not None or res.attained
    return NormValue(res.value, "exact" if exact else "quadrature",
                     0.0 if exact else 1e-6)


def marcinkiewicz_norm_of_decreasing(phi, g: PiecewiseFn) -> NormValue:
    """Same supremum for a nonincreasing piece-algebra function (g = some f*)."""
    fss = maximal(g)
    res = weighted_sup(phi, fss)
    exact = phi.global_power() is not None or res.attained
    return NormValue(res.value, "exact" if exact else "quadrature",
                     0.0 if exact else 1e-6)


def gamma_norm(space: GammaSpace, f: StepFn) -> NormValue:
    """( integral_0^R (f**)^p w )^{1/p} for a step function f."""
    space.ensure_nontrivial()
    fs = rearrange(f) if not f.is_nonincreasing() else f
    if len(fs.values) == 0 or float(np.max(fs.values)) == 0.0:
        return NormValue(0.0, "exact", 0.0)
    return _gamma_of_maximal(space, maximal(fs))


def gamma_norm_of_decreasing(space: GammaSpace, g: PiecewiseFn) -> NormValue:
    """Same integral norm for a nonincreasing piece-algebra function g = f*."""
    space.ensure_nontrivial()
    return _gamma_of_maximal(space, maximal(g))


def _gamma_of_maximal(space: GammaSpace, fss: PiecewiseFn) -> NormValue:
    p = space.p
    w = space.weight
    if w.exact is not None and p.is_integer():
        integrand = fss.power_int(int(p)).multiply(w.exact)
        val = integrand.integrate()
        return NormValue(val ** (1.0 / p), "exact", 0.0)

    head = fss.head_asym() ** p * w.head
    tail = (fss.tail_asym() ** p * w.tail if not space.domain.finite else Asym(0.0))
    cuts = tuple(sorted(set(
        [float(b) for b in fss.bounds[1:-1]] + list(w.breakpoints()))))

    def fn(ts):
        return fss(ts) ** p * np.asarray(w(ts), dtype=float)

    nf = NumericFn(fn, space.domain.R, breakpoints=cuts, head=head, tail=tail,
                   label="(f**)^p*w")
    val = nf.integrate()
    return NormValue(val ** (1.0 / p), "quadrature", 1e-8)


def l1_norm(f: StepFn) -> float:
    return float(f.integrate())


def linf_norm(f: StepFn) -> float:
    return float(np.max(f.values)) if len(f.values) else 0.0


# ---------------------------------------------------------------------------
# side conditions


def linfty_embedding_check(space: GammaSpace) -> bool:
    """Is  lim_{t->0+} t^p integral_t^R s^{-p} w(s) ds  strictly positive?

    Decided from the head descriptor; a coarse grid sweep cross-checks the
    verdict and warns on disagreement (it cannot override the analytic answer).
    """
    w = space.weight
    p = space.p
    q = w.head * Asym(1.0, -p)
    if integrable(q, ZERO_END):
        lim = 0.0
    else:
        prof = Asym(1.0, p) * integral_away_from_end(q, ZERO_END)
        lim = limit(prof, ZERO_END)
    verdict = lim > 0.0

    hi = 1.0 if not space.domain.finite else space.domain.R / 2
    ts = np.geomspace(1e-12 * hi, hi, 7)
    vals = ts ** p * np.asarray(w.suffix_power(p, ts), dtype=float)
    if verdict:
        consistent = vals[0] > 0.25 * min(lim, float(vals[-1]) + 1e-300) \
            if math.isfinite(lim) else vals[0] >= vals[-1] * 0.5
    else:
        consistent = vals[0] <= max(0.05, 0.5 * float(vals[-1]))
    if not consistent:
        warnings.warn("grid sweep disagrees with the analytic embedding verdict; "
                      "keeping the analytic answer", RuntimeWarning)
    return verdict


def s_nontriviality_check(space: GammaSpace, phi) -> bool:
    """Is  integral_0^R phi^{-p} w  finite?  Only binding when phi(0+) > 0."""
    if phi.value_at_zero_plus() == 0.0:
        return True
    p = space.p
    w = space.weight
    head_ok = integrable(w.head / phi.head_asym() ** p, ZERO_END)
    if space.domain.finite:
        return bool(head_ok)
    tail_ok = integrable(w.tail / phi.tail_asym() ** p, INF_END)
    return bool(head_ok and tail_ok)
