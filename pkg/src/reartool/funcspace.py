"""Piecewise function carriers on a half-open interval (0, R), R <= inf.

The working representation is a partition 0 = b_0 < b_1 < ... < b_n = R with,
on each piece, a finite sum of terms c * t^g * (log t)^m.  That family is
closed under addition, multiplication, integer powers, dilation and, crucially,
under cumulative integration: the antiderivative of every term is again a sum
of such terms (the g = -1 case producing the logarithm).  As a consequence
step functions, their level averages, and iterated averages all live in the
same exact algebra and integrals are evaluated in closed form, not by
quadrature.

Evaluation at a breakpoint uses the right-hand piece (right-continuity).
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np

from .asymptotics import INF_END, ZERO_END, Asym, ZERO_ASYM, dominant, integrable
from .errors import DomainMismatch, NonIntegrable, NonIntegrableHead

DEFAULT_GRID_N = 2048

Term = tuple[float, float, int]  # coefficient, power, log power


@dataclass(frozen=True)
class Domain:
    """The interval (0, R); R = math.inf is allowed."""

    R: float

    def __post_init__(self):
        if not (self.R > 0):
            raise ValueError("domain length must be positive")

    @property
    def finite(self) -> bool:
        return math.isfinite(self.R)

    def require_same(self, other: "Domain") -> None:
        if self.R != other.R:
            raise DomainMismatch(f"domains (0, {self.R}) and (0, {other.R}) differ")


def grid_size(override: int | None = None) -> int:
    if override is not None:
        return int(override)
    env = os.environ.get("REARTOOL_GRID")
    return int(env) if env else DEFAULT_GRID_N


def log_grid(domain: Domain, n: int | None = None) -> np.ndarray:
    """Logarithmically spaced evaluation grid covering (0, R) up to fixed cutoffs."""
    n = grid_size(n)
    if domain.finite:
        lo = max(1e-9, domain.R * 1e-9)
        hi = domain.R * (1.0 - 1e-9)
    else:
        lo, hi = 1e-9, 1e9
    pts = np.geomspace(lo, hi, n)
    if lo < 1.0 < hi:
        pts = np.union1d(pts, [1.0])
    return pts


# ---------------------------------------------------------------------------
# term arithmetic


def _term_eval(c: float, g: float, m: int, t: np.ndarray) -> np.ndarray:
    out = c * t ** g
    if m:
        out = out * np.log(t) ** m
    return out


def _antiderivative_terms(terms: tuple[Term, ...]) -> tuple[Term, ...]:
    """Exact antiderivative, again as a sum of c * t^g * (log t)^m terms."""
    out: dict[tuple[float, int], float] = {}
    for c, g, m in terms:
        if c == 0.0:
            continue
        if g == -1.0:
            key = (0.0, m + 1)
            out[key] = out.get(key, 0.0) + c / (m + 1)
        else:
            fact = 1.0
            for j in range(m + 1):
                coef = c * (-1.0) ** j * fact / (g + 1.0) ** (j + 1)
                key = (g + 1.0, m - j)
                out[key] = out.get(key, 0.0) + coef
                fact *= m - j
    return tuple((c, g, m) for (g, m), c in out.items() if c != 0.0)


def _terms_eval(terms: tuple[Term, ...], t: np.ndarray) -> np.ndarray:
    acc = np.zeros_like(t, dtype=float)
    for c, g, m in terms:
        acc += _term_eval(c, g, m, t)
    return acc


def _terms_limit_at_inf(terms: tuple[Term, ...]) -> float:
    """Limit of an antiderivative-style term sum as t -> inf (0, finite, or +-inf)."""
    best = None
    for c, g, m in terms:
        if c == 0.0:
            continue
        key = (g, m)
        if best is None or key > best[0]:
            best = (key, c)
        elif key == best[0]:
            best = (key, best[1] + c)
    if best is None:
        return 0.0
    (g, m), c = best
    if c == 0.0:
        return 0.0
    if g > 0.0 or (g == 0.0 and m > 0):
        return math.inf if c > 0 else -math.inf
    if g < 0.0:
        return 0.0
    return c


def _terms_defint(terms: tuple[Term, ...], a: float, b: float) -> float:
    """Exact integral of the term sum over [a, b] within one piece; may be +-inf."""
    if a == b:
        return 0.0
    anti = _antiderivative_terms(terms)
    if not anti:
        return 0.0
    if b == math.inf:
        upper = _terms_limit_at_inf(anti)
    else:
        upper = float(_terms_eval(anti, np.asarray(b, dtype=float)))
    if a == 0.0:
        # Every antiderivative term with g > 0 vanishes at 0; g <= 0 diverges.
        lower = 0.0
        for c, g, m in anti:
            if g <= 0.0 and c != 0.0 and not (g == 0.0 and m == 0):
                # t^g -> +inf (g<0) and (log t)^m -> (-1)^m * inf as t -> 0+
                sgn = c * (-1.0) ** m
                lower = math.inf if sgn > 0 else -math.inf
                break
            if g == 0.0 and m == 0:
                lower += c
    else:
        lower = float(_terms_eval(anti, np.asarray(a, dtype=float)))
    if math.isinf(upper) and math.isinf(lower) and upper == lower:
        raise ValueError("indeterminate piece integral")
    return upper - lower


def _merge_terms(groups: list[Term]) -> tuple[Term, ...]:
    out: dict[tuple[float, int], float] = {}
    for c, g, m in groups:
        if c == 0.0:
            continue
        key = (g, m)
        out[key] = out.get(key, 0.0) + c
    merged = tuple((c, g, m) for (g, m), c in sorted(out.items()) if c != 0.0)
    return merged


def _dominant_term(terms: tuple[Term, ...], end: str) -> Asym:
    best = None
    for c, g, m in terms:
        if c == 0.0:
            continue
        key = (-g, m) if end == ZERO_END else (g, m)
        if best is None or key > best[0]:
            best = (key, (c, g, m))
        elif key == best[0]:
            b_c, b_g, b_m = best[1]
            best = (key, (b_c + c, b_g, b_m))
    if best is None:
        return ZERO_ASYM
    c, g, m = best[1]
    coef = c * (-1.0) ** m if end == ZERO_END else c
    return Asym(coef, g, float(m))


# ---------------------------------------------------------------------------
# the carrier class


class PiecewiseFn:
    """Finite sums of c * t^g * (log t)^m on each piece of a partition of (0, R)."""

    def __init__(self, domain: Domain, bounds, pieces):
        bounds = np.asarray(bounds, dtype=float)
        if bounds[0] != 0.0 or bounds[-1] != domain.R:
            raise ValueError("bounds must run from 0 to R")
        if np.any(np.diff(bounds[:-1]) <= 0) or (domain.finite and bounds[-2] >= domain.R):
            raise ValueError("bounds must be strictly increasing")
        if len(pieces) != len(bounds) - 1:
            raise ValueError("need one piece per interval")
        self.domain = domain
        self._bounds = bounds
        self._pieces = tuple(tuple(p) for p in pieces)
        self._prefix: np.ndarray | None = None
        self._suffix: np.ndarray | None = None

    # -- construction helpers

    @classmethod
    def from_power_pieces(cls, domain: Domain, bounds, powers) -> "PiecewiseFn":
        """powers: sequence of (c, gamma) pairs, one per interval."""
        return cls(domain, bounds, [((float(c), float(g), 0),) for c, g in powers])

    @classmethod
    def constant(cls, value: float, domain: Domain) -> "PiecewiseFn":
        return cls(domain, [0.0, domain.R], [((float(value), 0.0, 0),)])

    # -- basic queries

    @property
    def bounds(self) -> np.ndarray:
        return self._bounds

    @property
    def pieces(self) -> tuple[tuple[Term, ...], ...]:
        return self._pieces

    def breakpoints(self) -> np.ndarray:
        return self._bounds[1:-1]

    def _piece_index(self, t: np.ndarray) -> np.ndarray:
        idx = np.searchsorted(self._bounds, t, side="right") - 1
        return np.minimum(idx, len(self._pieces) - 1)

    def __call__(self, t):
        arr = np.asarray(t, dtype=float)
        scalar = arr.ndim == 0
        arr = np.atleast_1d(arr)
        if np.any(arr <= 0.0) or np.any(arr >= self.domain.R):
            raise ValueError("evaluation points must lie strictly inside (0, R)")
        idx = self._piece_index(arr)
        out = np.empty_like(arr)
        for i in np.unique(idx):
            mask = idx == i
            out[mask] = _terms_eval(self._pieces[i], arr[mask])
        return float(out[0]) if scalar else out

    def eval_at_or_end(self, t: float) -> float:
        """Evaluate the governing piece formula at t, allowing t == R (finite)."""
        if t >= self.domain.R:
            if not self.domain.finite:
                raise ValueError("cannot evaluate at infinity")
            return float(_terms_eval(self._pieces[-1], np.asarray(t, dtype=float)))
        return self(t)

    # -- asymptotics

    def head_asym(self) -> Asym:
        return _dominant_term(self._pieces[0], ZERO_END)

    def tail_asym(self) -> Asym:
        if self.domain.finite:
            raise ValueError("tail behavior is only defined for R = inf")
        return _dominant_term(self._pieces[-1], INF_END)

    # -- algebra

    def _merged_with(self, other: "PiecewiseFn"):
        self.domain.require_same(other.domain)
        cuts = np.union1d(self._bounds, other._bounds)
        lo = cuts[:-1]
        ia = np.minimum(np.searchsorted(self._bounds, lo, side="right") - 1,
                        len(self._pieces) - 1)
        ib = np.minimum(np.searchsorted(other._bounds, lo, side="right") - 1,
                        len(other._pieces) - 1)
        return cuts, ia, ib

    def add(self, other: "PiecewiseFn") -> "PiecewiseFn":
        cuts, ia, ib = self._merged_with(other)
        pieces = [_merge_terms(list(self._pieces[i]) + list(other._pieces[j]))
                  for i, j in zip(ia, ib)]
        return PiecewiseFn(self.domain, cuts, pieces)

    def multiply(self, other: "PiecewiseFn") -> "PiecewiseFn":
        cuts, ia, ib = self._merged_with(other)
        pieces = []
        for i, j in zip(ia, ib):
            prods = [(c1 * c2, g1 + g2, m1 + m2)
                     for c1, g1, m1 in self._pieces[i]
                     for c2, g2, m2 in other._pieces[j]]
            pieces.append(_merge_terms(prods))
        return PiecewiseFn(self.domain, cuts, pieces)

    def scale(self, s: float) -> "PiecewiseFn":
        return PiecewiseFn(self.domain, self._bounds,
                           [[(c * s, g, m) for c, g, m in p] for p in self._pieces])

    def shift_power(self, dg: float) -> "PiecewiseFn":
        """Multiply by t^dg (exact, no breakpoint changes)."""
        return PiecewiseFn(self.domain, self._bounds,
                           [[(c, g + dg, m) for c, g, m in p] for p in self._pieces])

    def power_int(self, k: int) -> "PiecewiseFn":
        if k < 1 or k != int(k):
            raise ValueError("only positive integer powers stay inside the algebra")
        out = self
        for _ in range(int(k) - 1):
            out = out.multiply(self)
        return out

    def dilate(self, r: float) -> "PiecewiseFn":
        """Exact composition t -> f(r t); the domain scales to (0, R/r)."""
        if r <= 0:
            raise ValueError("dilation factor must be positive")
        new_dom = Domain(self.domain.R / r) if self.domain.finite else self.domain
        log_r = math.log(r)
        bounds = self._bounds / r
        bounds[0] = 0.0
        if not new_dom.finite:
            bounds[-1] = math.inf
        pieces = []
        for terms in self._pieces:
            new_terms: list[Term] = []
            for c, g, m in terms:
                base = c * r ** g
                for j in range(m + 1):
                    new_terms.append((base * math.comb(m, j) * log_r ** (m - j), g, j))
            pieces.append(_merge_terms(new_terms))
        return PiecewiseFn(new_dom, bounds, pieces)

    # -- integration

    def integrate(self, a: float = 0.0, b: float | None = None,
                  require_finite: bool = False) -> float:
        """Exact integral over (a, b); +inf when divergent."""
        if b is None:
            b = self.domain.R
        if not (0.0 <= a <= b <= self.domain.R):
            raise ValueError("integration limits outside [0, R]")
        total = 0.0
        for i in range(len(self._pieces)):
            lo = max(a, self._bounds[i])
            hi = min(b, self._bounds[i + 1])
            if hi <= lo:
                continue
            total += _terms_defint(self._pieces[i], lo, hi)
        if require_finite and not math.isfinite(total):
            raise NonIntegrable(f"integral over ({a}, {b}) is not finite")
        return total

    def _prefix_integrals(self) -> np.ndarray:
        if self._prefix is None:
            vals = [0.0]
            for i in range(len(self._pieces)):
                vals.append(vals[-1] + _terms_defint(
                    self._pieces[i], self._bounds[i], self._bounds[i + 1]))
            self._prefix = np.asarray(vals)
        return self._prefix

    def _suffix_integrals(self) -> np.ndarray:
        if self._suffix is None:
            vals = [0.0]
            for i in range(len(self._pieces) - 1, -1, -1):
                vals.append(vals[-1] + _terms_defint(
                    self._pieces[i], self._bounds[i], self._bounds[i + 1]))
            self._suffix = np.asarray(vals[::-1])
        return self._suffix

    def integral_from_zero(self, t) -> np.ndarray | float:
        """Vectorized exact t -> integral_0^t; all-inf when the head diverges."""
        arr = np.atleast_1d(np.asarray(t, dtype=float))
        scalar = np.asarray(t).ndim == 0
        prefix = self._prefix_integrals()
        idx = self._piece_index(arr)
        out = np.empty_like(arr)
        head_anchor = 0.5 * min(self._bounds[1], 1.0)
        head_part = _terms_defint(self._pieces[0], 0.0, head_anchor)
        if not math.isfinite(head_part):
            out[:] = head_part
        else:
            for i in np.unique(idx):
                mask = idx == i
                anti = _antiderivative_terms(self._pieces[i])
                # reconstruct F(b_i) through a finite interior anchor so the
                # b_i = 0 head (where F may diverge termwise) stays exact
                anchor = 0.5 * (self._bounds[i] + min(self._bounds[i + 1],
                                                      2 * self._bounds[i] + 1.0))
                lower = _terms_defint(self._pieces[i], self._bounds[i], anchor)
                f_anchor = float(_terms_eval(anti, np.asarray(anchor)))
                base = prefix[i] - (f_anchor - lower)
                out[mask] = base + _terms_eval(anti, arr[mask])
        return float(out[0]) if scalar else out

    def integral_to_end(self, t) -> np.ndarray | float:
        """Vectorized exact t -> integral_t^R; all-inf when the tail diverges."""
        arr = np.atleast_1d(np.asarray(t, dtype=float))
        scalar = np.asarray(t).ndim == 0
        suffix = self._suffix_integrals()
        idx = self._piece_index(arr)
        out = np.empty_like(arr)
        if self.domain.finite:
            tail_anchor = 0.5 * (self._bounds[-2] + self.domain.R)
        else:
            tail_anchor = self._bounds[-2] + 1.0
        tail_part = _terms_defint(self._pieces[-1], tail_anchor, self.domain.R)
        if not math.isfinite(tail_part):
            out[:] = tail_part
        else:
            for i in np.unique(idx):
                mask = idx == i
                anti = _antiderivative_terms(self._pieces[i])
                anchor = 0.5 * (self._bounds[i] + min(self._bounds[i + 1],
                                                      2 * self._bounds[i] + 1.0))
                upper = _terms_defint(self._pieces[i], anchor, self._bounds[i + 1])
                f_anchor = float(_terms_eval(anti, np.asarray(anchor)))
                base = suffix[i + 1] + upper + f_anchor
                out[mask] = base - _terms_eval(anti, arr[mask])
        return float(out[0]) if scalar else out

    # -- monotonicity probe (used to guard maximal-function preconditions)

    def check_points(self, per_piece: int = 3) -> np.ndarray:
        pts = []
        for i in range(len(self._pieces)):
            lo = self._bounds[i] if i > 0 else min(self._bounds[1] * 0.5, 1e-12)
            hi = self._bounds[i + 1]
            if math.isinf(hi):
                hi = max(2.0 * lo, 1e12)
            pts.extend(np.geomspace(max(lo, 1e-300), hi * (1 - 1e-12), per_piece))
        return np.unique(np.asarray(pts))

    def is_nonincreasing(self, rel_tol: float = 1e-9) -> bool:
        v = self(self.check_points(5))
        scale = np.maximum.accumulate(np.abs(v)) + 1e-300
        return bool(np.all(np.diff(v) <= rel_tol * scale[1:]))


class StepFn(PiecewiseFn):
    """Nonnegative piecewise-constant function; compactly supported when R = inf."""

    def __init__(self, breaks, values, domain: Domain):
        breaks = np.asarray(breaks, dtype=float)
        values = np.asarray(values, dtype=float)
        if len(values) != len(breaks) + 1:
            raise ValueError("need len(breaks) + 1 values")
        if np.any(values < 0) or not np.all(np.isfinite(values)):
            raise ValueError("step values must be finite and nonnegative")
        if not domain.finite and len(values) and values[-1] != 0.0:
            raise ValueError("on (0, inf) the final step value must be 0 (compact support)")
        bounds = np.concatenate([[0.0], breaks, [domain.R]])
        super().__init__(domain, bounds, [((float(v), 0.0, 0),) for v in values])

    @property
    def breaks(self) -> np.ndarray:
        return self._bounds[1:-1]

    @property
    def values(self) -> np.ndarray:
        return np.asarray([p[0][0] if p else 0.0 for p in self._pieces])

    def distribution_pairs(self) -> list:
        """The multiset of (value, length) pairs over positive pieces.

        This is the data a rearrangement preserves exactly; rearrange() carries
        the original pairs through so that level-set measures and p-norms of f
        and f* agree bit for bit, independent of how the rearranged breakpoints
        round.
        """
        pairs = self.__dict__.get("_dist_pairs")
        if pairs is not None:
            return list(pairs)
        b = self.bounds
        return [(float(v), float(b[i + 1] - b[i]))
                for i, v in enumerate(self.values) if v > 0.0]

    def truncate_above(self, level: float) -> "StepFn":
        """Pointwise min(f, level)."""
        return StepFn(self.breaks, np.minimum(self.values, level), self.domain)

    def excess_over(self, level: float) -> "StepFn":
        """Pointwise max(f - level, 0)."""
        return StepFn(self.breaks, np.maximum(self.values - level, 0.0), self.domain)

    def add_step(self, other: "StepFn") -> "StepFn":
        self.domain.require_same(other.domain)
        cuts = np.union1d(self.bounds, other.bounds)
        mids = cuts[:-1]
        vals = np.zeros(len(mids))
        for f in (self, other):
            idx = np.minimum(np.searchsorted(f.bounds, mids, side="right") - 1,
                             len(f.values) - 1)
            vals += f.values[idx]
        return StepFn(cuts[1:-1], vals, self.domain)


class MonotoneStepFn(StepFn):
    """A step function that is already nonincreasing (a rearrangement)."""

    def __init__(self, breaks, values, domain: Domain):
        super().__init__(breaks, values, domain)
        v = self.values
        if np.any(np.diff(v) > 0):
            raise ValueError("values must be nonincreasing")


def chi(a: float, domain: Domain) -> MonotoneStepFn:
    """Indicator of (0, a)."""
    if not (0 < a < domain.R):
        raise ValueError("support endpoint must lie inside the domain")
    return MonotoneStepFn([a], [1.0, 0.0], domain)


def measure_above(f: StepFn, lam: float) -> float:
    """Exact measure of {f > lam} for lam > 0.

    Summed with fsum so the result is independent of piece order; the level
    measure of f and of its rearrangement then agree to the last bit.
    """
    if lam < 0:
        raise ValueError("level must be nonnegative")
    return math.fsum(L for v, L in f.distribution_pairs() if v > lam)


def rearrange(f: StepFn) -> MonotoneStepFn:
    """The nonincreasing rearrangement of a step function, computed exactly.

    Pieces are sorted by value; equal values merge; zero-value mass fills the
    remainder of (0, R) (all of it, when R = inf).
    """
    groups: dict[float, list[float]] = {}
    for v, L in f.distribution_pairs():
        if math.isinf(L):
            raise ValueError("positive value on an infinite piece")
        groups.setdefault(v, []).append(L)
    breaks, values = [], []
    # Breaks are fsums over prefixes of the original lengths, and the original
    # (value, length) pairs ride along on the result, so level-set measures and
    # p-norms of f and f* agree bit for bit however the breaks round.
    pairs: list = []
    prefix: list[float] = []
    pos = 0.0
    for v in sorted(groups, reverse=True):
        prefix.extend(groups[v])
        pairs.extend((v, L) for L in groups[v])
        pos = math.fsum(prefix)
        values.append(v)
        breaks.append(pos)
    if f.domain.finite and pos >= f.domain.R:
        # support fills the whole interval; drop the final cut
        breaks.pop()
    else:
        values.append(0.0)
    if not values:
        values = [0.0]
    out = MonotoneStepFn(breaks, values, f.domain)
    out._dist_pairs = tuple(pairs)
    return out


def cumulative(f: PiecewiseFn) -> "CumulativeFn":
    return CumulativeFn(f)


class CumulativeFn(PiecewiseFn):
    """t -> integral_0^t f, kept inside the exact piece algebra."""

    def __init__(self, base: PiecewiseFn):
        prefix = base._prefix_integrals()
        head_part = _terms_defint(base.pieces[0], 0.0, 0.5 * min(base.bounds[1], 1.0))
        if not math.isfinite(head_part):
            raise NonIntegrableHead("the integral diverges at the left endpoint")
        pieces = []
        for i, terms in enumerate(base.pieces):
            anti = _antiderivative_terms(terms)
            at_start = (float(_terms_eval(anti, np.asarray(base.bounds[i])))
                        if i > 0 else 0.0)
            const = prefix[i] - at_start
            pieces.append(_merge_terms(list(anti) + [(const, 0.0, 0)]))
        super().__init__(base.domain, base.bounds, pieces)
        self.base = base
        self.total = float(prefix[-1])


def suffix_function(f: PiecewiseFn) -> PiecewiseFn:
    """t -> integral_t^R f, kept inside the exact piece algebra.

    The tail must converge (raise otherwise); on each piece the value is
    const_i - F(t) with F the antiderivative, so head divergence of F at 0
    is the correct +inf blowup of the suffix integral itself.
    """
    suffix = f._suffix_integrals()
    if not f.domain.finite:
        # tail convergence is the last piece's antiderivative having a limit
        tail_lim = _terms_limit_at_inf(_antiderivative_terms(f.pieces[-1]))
        if not math.isfinite(tail_lim):
            raise NonIntegrable("the integral diverges at the right endpoint")
    if not math.isfinite(suffix[1]):
        raise NonIntegrable("the integral diverges at the right endpoint")
    pieces = []
    for i, terms in enumerate(f.pieces):
        anti = _antiderivative_terms(terms)
        b_hi = f.bounds[i + 1]
        at_end = (_terms_limit_at_inf(anti) if math.isinf(b_hi)
                  else float(_terms_eval(anti, np.asarray(b_hi))))
        const = suffix[i + 1] + at_end
        pieces.append(_merge_terms([(-c, g, m) for c, g, m in anti]
                                   + [(const, 0.0, 0)]))
    return PiecewiseFn(f.domain, f.bounds, pieces)


def maximal(fstar: PiecewiseFn, *, checked: bool = True) -> PiecewiseFn:
    """The level average t -> (1/t) integral_0^t f*, exactly.

    ``fstar`` must be nonincreasing (a rearrangement or something built from
    one); pass checked=False to skip the monotonicity probe.
    """
    if checked and not isinstance(fstar, MonotoneStepFn) and not fstar.is_nonincreasing():
        raise ValueError("maximal() expects a nonincreasing function")
    return cumulative(fstar).shift_power(-1.0)


def integrate(f: PiecewiseFn, a: float = 0.0, b: float | None = None,
              require_finite: bool = False) -> float:
    return f.integrate(a, b, require_finite=require_finite)


def head_limit(f: PiecewiseFn) -> float:
    """Right limit at 0 of the first piece formula."""
    from .asymptotics import limit

    return limit(_dominant_term(f.pieces[0], ZERO_END), ZERO_END)


def dominant_sum(asyms, end: str) -> Asym:
    out = ZERO_ASYM
    for a in asyms:
        out = dominant(out, a, end)
    return out


def head_integrable(f: PiecewiseFn) -> bool:
    return integrable(f.head_asym(), ZERO_END)


def tail_integrable(f: PiecewiseFn) -> bool:
    if f.domain.finite:
        return True
    return integrable(f.tail_asym(), INF_END)
