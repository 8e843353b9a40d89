"""Empirical verification of the rearrangement-operator lemmas.

Each lemma is checked in the direction its hypotheses select: when the
averaging condition holds, bounded ratios over seeded random step families
(sufficiency); when it fails, the explicit counterexample families drive the
ratio to infinity and the verdict records the growth (necessity).  Ratios are
computed with the exact piece algebra wherever a closed form exists; grid
envelopes are used only on the conservative side of an inequality.

All verdicts concern functions on the half-line model (0, R): the abstract
measure-space statements are verified through their reductions to
rearrangements, which is the only computable content they have.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .criteria import hardy_condition, stgg_condition
from .errors import PreconditionViolated
from .extrema import weighted_sup
from .funcspace import (
    Domain,
    MonotoneStepFn,
    PiecewiseFn,
    head_limit,
    log_grid,
    maximal,
)
from .norms import (
    GammaSpace,
    gamma_norm,
    gamma_norm_of_decreasing,
    l1_norm,
    linf_norm,
    marcinkiewicz_norm,
    marcinkiewicz_norm_of_decreasing,
)
from .quadrature import cumulative_on_grid, merge_grid
from .quasiconcave import b_consensus
from .supops import apply_S, apply_T, s_bracket, t_bracket

_NOTE = ("verified on the computable class of step functions and their "
         "rearrangement algebra on (0, R)")


@dataclass
class LemmaVerdict:
    lemma: str
    direction: str  # "sufficiency" | "necessity"
    passed: bool
    max_ratio: float
    samples: int
    witness: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)
    note: str = _NOTE

    def as_dict(self) -> dict:
        return {
            "lemma": self.lemma,
            "direction": self.direction,
            "passed": self.passed,
            "max_ratio": self.max_ratio,
            "samples": self.samples,
            "witness": self.witness,
            "details": self.details,
            "note": self.note,
        }


def sample_steps(rng: np.random.Generator, domain: Domain,
                 count: int) -> list[MonotoneStepFn]:
    """Seeded nonincreasing step samples: 1-64 pieces, breakpoints spread over
    12 decades, values over 6 decades, compact support when R = inf."""
    out = []
    for _ in range(count):
        k = int(rng.integers(1, 65))
        if domain.finite:
            exps = rng.uniform(-12.0, 0.0, size=k)
            breaks = np.unique(domain.R * (10.0 ** exps) * (1.0 - 1e-9))
        else:
            breaks = np.unique(10.0 ** rng.uniform(-6.0, 6.0, size=k))
        vals = 10.0 ** rng.uniform(-3.0, 3.0, size=len(breaks))
        vals = np.sort(vals)[::-1]
        if domain.finite and rng.random() < 0.5:
            last = 10.0 ** rng.uniform(-3.0, float(math.log10(vals[-1])))
            values = np.concatenate([vals, [min(last, vals[-1])]])
        else:
            values = np.concatenate([vals, [0.0]])
        out.append(MonotoneStepFn(breaks, values, domain))
    return out


def _has_increasing_run(values, length: int = 3) -> bool:
    run = 1
    for a, b in zip(values, values[1:]):
        run = run + 1 if b > a else 1
        if run >= length:
            return True
    return False


def _stable(full: float, half: float) -> bool:
    return abs(full - half) <= 0.1 * max(abs(full), 1e-300)


def _phi_at(profile, t: float) -> float:
    return float(np.asarray(profile(np.asarray([t])))[0])


def _recip_integral(profile, recip_nf, lo: float, hi: float) -> float:
    power = profile.global_power()
    if power is not None:
        c, a = power
        if a == 1.0:
            return math.log(hi / lo) / c
        return (hi ** (1.0 - a) - lo ** (1.0 - a)) / (c * (1.0 - a))
    return recip_nf.integrate(lo, hi)


def _reciprocal_truncation(profile, level: float) -> PiecewiseFn:
    """min(level, 1/profile) restricted to (0, min(1, R/2)), nonincreasing."""
    domain = profile.domain
    cap = min(1.0, domain.R / 2.0)
    power = profile.global_power()
    if power is not None:
        c, a = power
        if a == 0.0:
            v = min(level, 1.0 / c)
            return PiecewiseFn(domain, [0.0, cap, domain.R],
                               [((v, 0.0, 0),), ((0.0, 0.0, 0),)])
        tc = min(max((1.0 / (level * c)) ** (1.0 / a), 0.0), cap)
        bounds, pieces = [0.0], []
        if tc > 0.0:
            bounds.append(tc)
            pieces.append(((float(level), 0.0, 0),))
        if tc < cap:
            bounds.append(cap)
            pieces.append(((1.0 / c, -a, 0),))
        bounds.append(domain.R)
        pieces.append(((0.0, 0.0, 0),))
        return PiecewiseFn(domain, bounds, pieces)
    # no closed form: sample the decreasing profile on a log grid
    nodes = np.geomspace(cap * 1e-8, cap, 96)
    vals = np.minimum(level, 1.0 / np.asarray(profile(nodes), dtype=float))
    vals = np.maximum.accumulate(vals[::-1])[::-1]  # enforce monotone samples
    return MonotoneStepFn(nodes, np.concatenate([vals, [0.0]]), domain)


# ---------------------------------------------------------------------------
# the one-star lemma: sup phi f** vs sup phi f*


def verify_one_star(phi, samples: int = 500, seed: int = 0) -> LemmaVerdict:
    cons = b_consensus(phi)
    rng = np.random.default_rng(seed)
    if cons.holds:
        worst = half = 0.0
        for i, fs in enumerate(sample_steps(rng, phi.domain, samples)):
            num = marcinkiewicz_norm(phi, fs).value
            den = weighted_sup(phi, fs).value
            if den > 0.0:
                worst = max(worst, num / den)
            if i + 1 == samples // 2:
                half = worst
        passed = worst <= cons.constant + 1e-6
        return LemmaVerdict(
            "one-star", "sufficiency", passed, worst, samples,
            details={"b_constant": cons.constant, "half_sample_ratio": half,
                     "stable": _stable(worst, half)})
    levels = [10.0 ** k for k in range(1, 6)]
    ratios = []
    for n in levels:
        f = _reciprocal_truncation(phi, n)
        num = marcinkiewicz_norm_of_decreasing(phi, f).value
        den = weighted_sup(phi, f).value
        ratios.append(num / den if den > 0.0 else math.inf)
    return LemmaVerdict(
        "one-star", "necessity", _has_increasing_run(ratios), max(ratios),
        len(levels),
        witness={"family": "truncations min(n, 1/phi) on (0, min(1, R/2))",
                 "levels": levels, "ratios": ratios})


# ---------------------------------------------------------------------------
# endpoint lemmas


def _marc_of_output(profile, res, grid: np.ndarray) -> float:
    if res.exact:
        return marcinkiewicz_norm_of_decreasing(profile, res.fn).value
    cum = cumulative_on_grid(res.fn, grid)
    pv = np.asarray(profile(grid), dtype=float)
    return float(np.max(pv * cum / grid))


def verify_endpoints(which: str, phi, samples: int = 500,
                     seed: int = 0) -> LemmaVerdict:
    if which not in ("T-L1", "T-M", "S-M", "S-Linf"):
        raise ValueError(f"unknown endpoint lemma {which!r}")
    domain = phi.domain
    rng = np.random.default_rng(seed)
    cons = b_consensus(phi)
    lemma = f"endpoint-{which}"

    if which == "S-Linf" or cons.holds:
        grid = merge_grid(log_grid(domain, 257), phi.breakpoints(), domain.R)
        worst = half = 0.0
        for i, fs in enumerate(sample_steps(rng, domain, samples)):
            if which == "T-L1":
                res = apply_T(phi, fs)
                num = res.fn.integrate()
                den = l1_norm(fs)
            elif which == "T-M":
                num = _marc_of_output(phi, apply_T(phi, fs), grid)
                den = marcinkiewicz_norm(phi, fs).value
            elif which == "S-M":
                num = _marc_of_output(phi, apply_S(phi, fs), grid)
                den = marcinkiewicz_norm(phi, fs).value
            else:  # S-Linf
                res = apply_S(phi, fs)
                num = (head_limit(res.fn) if res.exact
                       else float(np.asarray(res.fn(grid[:1]))[0]))
                den = linf_norm(fs)
            if den > 0.0:
                worst = max(worst, num / den)
            if i + 1 == samples // 2:
                half = worst
        tol = 1e-9 if which == "S-Linf" else 0.0
        passed = math.isfinite(worst) and (which != "S-Linf" or worst <= 1.0 + tol)
        details = {"half_sample_ratio": half, "stable": _stable(worst, half),
                   "b_holds": cons.holds, "b_constant": cons.constant}
        if which == "S-Linf" and not cons.holds:
            details["note"] = "bounded for every quasiconcave profile"
        return LemmaVerdict(lemma, "sufficiency", passed, worst, samples,
                            details=details)

    # necessity families, all exact lower bounds of the operator-norm ratio
    a = min(1.0, domain.R / 2.0)
    recip_nf = None if phi.global_power() is not None else phi.reciprocal_numeric()
    ratios = []
    if which == "T-L1":
        deltas = [a * 10.0 ** -k for k in range(1, 6)]
        for d in deltas:
            ratios.append(_phi_at(phi, a) * _recip_integral(phi, recip_nf, d, a) / a)
        family = {"family": "chi_(0,a), integral trimmed to (delta, a)",
                  "a": a, "deltas": deltas, "ratios": ratios}
    elif which == "T-M":
        deltas = [a * 10.0 ** -k for k in range(1, 6)]
        for d in deltas:
            ts = np.geomspace(d * (1 + 1e-12), a, 48)
            best = 0.0
            for t in ts:
                best = max(best, _phi_at(phi, t) / t
                           * _recip_integral(phi, recip_nf, d, t))
            ratios.append(best)
        family = {"family": "chi_(0,a), maximal average trimmed to (delta, t)",
                  "a": a, "deltas": deltas, "ratios": ratios}
    else:  # S-M
        cap = domain.R * (1.0 - 1e-9) if domain.finite else 1e6
        avals = [2.0 ** -k * a for k in range(1, 6)]
        for av in avals:
            ts = np.geomspace(av * (1 + 1e-12), cap, 48)
            best = 0.0
            for t in ts:
                best = max(best, _phi_at(phi, t) / t
                           * _recip_integral(phi, recip_nf, av, t))
            ratios.append(best)
        family = {"family": "chi_(0,a) with a = a0*2^-k", "avals": avals,
                  "ratios": ratios}
    return LemmaVerdict(lemma, "necessity", _has_increasing_run(ratios),
                        max(ratios), len(ratios), witness=family)


# ---------------------------------------------------------------------------
# starfall lemmas


def _grid_for(domain: Domain, fs, *profiles) -> np.ndarray:
    cuts = list(fs.bounds[1:-1])
    for prof in profiles:
        if prof is not None:
            cuts.extend(prof.breakpoints())
    return merge_grid(log_grid(domain, 193), cuts, domain.R)


def _eval(fn, grid: np.ndarray) -> np.ndarray:
    return np.asarray(fn(grid), dtype=float)


def verify_starfalls(which: str, phi=None, psi=None, samples: int = 500,
                     seed: int = 0) -> LemmaVerdict:
    if which not in ("Tff", "Tstar", "Sstar", "Sff", "combined"):
        raise ValueError(f"unknown starfall lemma {which!r}")
    needs_phi = which in ("Sstar", "Sff", "combined")
    needs_psi = which in ("Tff", "Tstar", "combined")
    if needs_phi and phi is None:
        raise ValueError(f"{which} needs the left-sup profile phi")
    if needs_psi and psi is None:
        raise ValueError(f"{which} needs the right-sup profile psi")
    domain = (phi or psi).domain
    if phi is not None and psi is not None:
        if phi.domain.R != psi.domain.R:
            raise ValueError("profiles live on different intervals")
    rng = np.random.default_rng(seed)
    lemma = f"starfall-{which}"
    ok_phi = b_consensus(phi).holds if phi is not None else True
    ok_psi = b_consensus(psi).holds if psi is not None else True

    if (not needs_phi or ok_phi) and (not needs_psi or ok_psi):
        worst = half = 0.0
        two_sided: dict[str, float] = {}
        for i, fs in enumerate(sample_steps(rng, domain, samples)):
            grid = _grid_for(domain, fs, phi, psi)
            fss = maximal(fs)
            fss_v = _eval(fss, grid)
            mass = fs.integrate()
            if which == "Tff":
                tf = apply_T(psi, fs)
                tf_v = _eval(tf.fn, grid)
                lhs = (_eval(maximal(tf.fn, checked=False), grid) if tf.exact
                       else cumulative_on_grid(tf.fn, grid) / grid)
                r = float(np.max(lhs / (tf_v + fss_v)))
            elif which == "Tstar":
                tf_v = _eval(apply_T(psi, fs).fn, grid)
                lo, hi = t_bracket(psi, fss, grid, tail_mass=mass)
                r1 = float(np.max(hi / (tf_v + fss_v)))
                r2 = float(np.max((tf_v + fss_v) / lo))
                two_sided["upper"] = max(two_sided.get("upper", 0.0), r1)
                two_sided["lower"] = max(two_sided.get("lower", 0.0), r2)
                r = max(r1, r2)
            elif which == "Sstar":
                sf = apply_S(phi, fs)
                lhs = (_eval(maximal(sf.fn, checked=False), grid) if sf.exact
                       else cumulative_on_grid(sf.fn, grid) / grid)
                lo, _ = s_bracket(phi, fss, grid)
                r = float(np.max(lhs / lo))
            elif which == "Sff":
                sf_v = _eval(apply_S(phi, fs).fn, grid)
                _, hi = s_bracket(phi, fss, grid)
                r = float(np.max(hi / sf_v))
            else:  # combined
                sf_v = _eval(apply_S(phi, fs).fn, grid)
                tf_v = _eval(apply_T(psi, fs).fn, grid)
                s_lo, s_hi = s_bracket(phi, fss, grid)
                t_lo, t_hi = t_bracket(psi, fss, grid, tail_mass=mass)
                r1 = float(np.max((s_hi + t_hi) / (sf_v + tf_v)))
                r2 = float(np.max((sf_v + tf_v) / (s_lo + t_lo)))
                two_sided["upper"] = max(two_sided.get("upper", 0.0), r1)
                two_sided["lower"] = max(two_sided.get("lower", 0.0), r2)
                r = max(r1, r2)
            worst = max(worst, r)
            if i + 1 == samples // 2:
                half = worst
        details = {"half_sample_ratio": half, "stable": _stable(worst, half)}
        if two_sided:
            details["one_sided_constants"] = two_sided
        return LemmaVerdict(lemma, "sufficiency", math.isfinite(worst), worst,
                            samples, details=details)

    # necessity: drive the failing side with the paper's families
    ratios: list[float]
    if which == "Tff":
        a = min(1.0, domain.R / 2.0)
        t0 = a / 2.0
        recip = (None if psi.global_power() is not None
                 else psi.reciprocal_numeric())
        den = _phi_at(psi, a) / _phi_at(psi, t0) + 1.0
        deltas = [t0 * 10.0 ** -k for k in range(1, 6)]
        ratios = [_phi_at(psi, a) / t0 * _recip_integral(psi, recip, d, t0) / den
                  for d in deltas]
        family = {"family": "chi_(0,a) maximal average trimmed at delta",
                  "a": a, "t": t0, "deltas": deltas, "ratios": ratios}
    elif which == "Sstar":
        a = min(1.0, domain.R / 4.0)
        cap = domain.R * (1.0 - 1e-9) if domain.finite else 1e6
        recip = (None if phi.global_power() is not None
                 else phi.reciprocal_numeric())
        tvals = list(np.geomspace(a * 4.0, cap, 5))
        ratios = [_phi_at(phi, t) / t * _recip_integral(phi, recip, a, t)
                  for t in tvals]
        family = {"family": "chi_(0,a), double star versus S chi** beyond a",
                  "a": a, "tvals": tvals, "ratios": ratios}
    else:
        # truncation families at level n for the remaining lemmas
        cap = min(1.0, domain.R / 2.0)
        levels = [10.0 ** k for k in range(1, 6)]
        ratios = []
        cut = PiecewiseFn(domain, [0.0, cap, domain.R],
                          [((1.0, 0.0, 0),), ((0.0, 0.0, 0),)])
        for n in levels:
            if which in ("Sff",) or (which == "combined" and not ok_phi):
                prof = phi
                f = _reciprocal_truncation(prof, n)
                fss_cut = maximal(f, checked=False).multiply(cut)
                num = weighted_sup(prof, fss_cut).value / _phi_at(prof, cap)
                den = weighted_sup(prof, f).value / _phi_at(prof, cap)
                if which == "combined":
                    den += _eval_T_at(psi, f, cap)
                ratios.append(num / den)
                fam_name = "truncations min(n, 1/phi), compared at t = cap"
            else:  # Tstar, or combined with the right-sup side failing
                prof = psi
                f = _reciprocal_truncation(prof, n)
                fcum = maximal(f, checked=False)
                tn = _truncation_knee(prof, n, cap)
                num = (_phi_at(prof, cap) * float(fcum(np.asarray([cap]))[0])
                       / _phi_at(prof, tn))
                den = (weighted_sup(prof, f).value / _phi_at(prof, tn)
                       + float(fcum(np.asarray([tn]))[0]))
                if which == "combined":
                    den += _eval_S_at(phi, f, tn)
                ratios.append(num / den)
                fam_name = "truncations min(n, 1/psi), compared at the knee"
        family = {"family": fam_name, "levels": levels, "ratios": ratios}
    return LemmaVerdict(lemma, "necessity", _has_increasing_run(ratios),
                        max(ratios), len(ratios), witness=family)


def _truncation_knee(profile, level: float, cap: float) -> float:
    power = profile.global_power()
    if power is not None:
        c, a = power
        if a > 0.0:
            return min(max((1.0 / (level * c)) ** (1.0 / a), 1e-12), cap)
        return cap / 2.0
    ts = np.geomspace(cap * 1e-10, cap, 400)
    vals = np.asarray(profile(ts), dtype=float)
    idx = int(np.searchsorted(vals, 1.0 / level))
    return float(ts[min(idx, len(ts) - 1)])


def _eval_S_at(phi, f: PiecewiseFn, t: float) -> float:
    """phi(t) * S_phi f(t) = sup_{s<t} phi f, via the restricted product."""
    cut = PiecewiseFn(f.domain, [0.0, t, f.domain.R],
                      [((1.0, 0.0, 0),), ((0.0, 0.0, 0),)])
    return weighted_sup(phi, f.multiply(cut)).value / _phi_at(phi, t)


def _eval_T_at(psi, f: PiecewiseFn, t: float) -> float:
    """T_psi f(t) bounded above by the unrestricted weighted sup."""
    return weighted_sup(psi, f).value / _phi_at(psi, t)


# ---------------------------------------------------------------------------
# the interpolation theorem


@dataclass(frozen=True)
class DemoOperator:
    """Concrete quasilinear operators acting on nonincreasing step data.

    truncated-sum is f -> f** + (D_2 f)**, the averaging demo summed with
    its dilated variant; dilation demos need R = inf (D_r shrinks a finite
    interval).
    """

    tag: str  # "hardy-average" | "identity" | "dilation:<r>" | "truncated-sum"
    quasilinear_K: float = 1.0

    @classmethod
    def parse(cls, tag: str) -> "DemoOperator":
        if (tag in ("hardy-average", "identity", "truncated-sum")
                or tag.startswith("dilation:")):
            return cls(tag)
        raise ValueError(f"unknown demo operator {tag!r}")

    def apply(self, fs: MonotoneStepFn) -> PiecewiseFn:
        if self.tag == "hardy-average":
            return maximal(fs)
        if self.tag == "identity":
            return fs
        if self.tag == "truncated-sum":
            if fs.domain.finite:
                raise ValueError("the truncated-sum demo needs R = inf")
            fss = maximal(fs)
            return fss.add(fss.dilate(2.0))
        r = float(self.tag.split(":", 1)[1])
        if not (r > 0.0):
            raise ValueError("dilation factor must be positive")
        if fs.domain.finite:
            raise ValueError("the dilation demo needs R = inf")
        return fs.dilate(r)


def verify_interpolation(T: DemoOperator, p: float, phi, psi, w1, w2,
                         samples: int = 200, seed: int = 0) -> LemmaVerdict:
    domain = phi.domain
    for other in (psi.domain, w1.domain, w2.domain):
        if other.R != domain.R:
            raise ValueError("interpolation inputs live on different intervals")
    if isinstance(T, str):
        T = DemoOperator.parse(T)
    rng = np.random.default_rng(seed)
    details: dict = {"operator": T.tag, "p": p}

    # precondition 1: empirical endpoint boundedness of T on both sup-norms
    worst_phi = worst_psi = 0.0
    for fs in sample_steps(rng, domain, min(50, samples)):
        tf = T.apply(fs)
        den_phi = marcinkiewicz_norm(phi, fs).value
        den_psi = marcinkiewicz_norm(psi, fs).value
        if den_phi > 0.0:
            worst_phi = max(worst_phi,
                            marcinkiewicz_norm_of_decreasing(phi, tf).value / den_phi)
        if den_psi > 0.0:
            worst_psi = max(worst_psi,
                            marcinkiewicz_norm_of_decreasing(psi, tf).value / den_psi)
    if not (math.isfinite(worst_phi) and math.isfinite(worst_psi)
            and max(worst_phi, worst_psi) < 1e6):
        raise PreconditionViolated(
            "endpoint-boundedness",
            f"operator {T.tag} is not bounded on the sup-norm pair "
            f"(ratios {worst_phi:.3g}, {worst_psi:.3g})")
    details["endpoint_constants"] = {"M_phi": worst_phi, "M_psi": worst_psi}

    # precondition 2: the combined criterion must be finite
    stgg = stgg_condition(p, phi, psi, w1, w2)
    if not stgg.finite:
        raise PreconditionViolated(
            "stgg", f"combined criterion diverges at {stgg.witness}")
    details["stgg_sup"] = stgg.sup_value

    # (a) the two truncation bounds, exactly, on random (f, t)
    hh_worst = dh_worst = 0.0
    for fs in sample_steps(rng, domain, 100):
        if domain.finite:
            t = float(domain.R * 10.0 ** rng.uniform(-6.0, -1e-9))
        else:
            t = float(10.0 ** rng.uniform(-6.0, 6.0))
        level = float(fs(np.asarray([t]))[0])
        head_part = fs.excess_over(level)
        tail_part = fs.truncate_above(level)
        fss_t = float(maximal(fs)(np.asarray([t]))[0])
        svals = np.unique(np.concatenate(
            [fs.bounds[1:-1], np.geomspace(max(1e-9, t * 1e-6),
                                           min(t * 1e6, domain.R * (1 - 1e-9)
                                               if domain.finite else t * 1e6),
                                           41), [t]]))
        hp = maximal(head_part)(svals)
        tp = maximal(tail_part)(svals)
        hh_worst = max(hh_worst, float(np.max(hp * svals / (t * fss_t))))
        dh_worst = max(dh_worst, float(np.max(tp / fss_t)))
    ok_a = hh_worst <= 1.0 + 1e-9 and dh_worst <= 1.0 + 1e-9
    details["truncation"] = {"hh_max": hh_worst, "dh_max": dh_worst,
                             "passed": ok_a}

    # (b) the pointwise chain (Tf)** <= C (S_phi f + T_psi f)
    chain_worst = 0.0
    for fs in sample_steps(rng, domain, min(100, samples)):
        grid = _grid_for(domain, fs, phi, psi)
        tf = T.apply(fs)
        lhs = _eval(maximal(tf, checked=False), grid)
        sf = _eval(apply_S(phi, fs).fn, grid)
        tpf = _eval(apply_T(psi, fs).fn, grid)
        chain_worst = max(chain_worst, float(np.max(lhs / (sf + tpf))))
    ok_b = math.isfinite(chain_worst)
    details["pointwise_chain"] = {"constant": chain_worst, "passed": ok_b}

    # (c) the norm conclusion across samples
    space1 = GammaSpace(p, w1)
    space2 = GammaSpace(p, w2)
    norm_worst = half = 0.0
    for i, fs in enumerate(sample_steps(rng, domain, samples)):
        den = gamma_norm(space1, fs).value
        num = gamma_norm_of_decreasing(space2, T.apply(fs)).value
        if den > 0.0:
            norm_worst = max(norm_worst, num / den)
        if i + 1 == samples // 2:
            half = norm_worst
    ok_c = math.isfinite(norm_worst)
    details["norm_ratio"] = {"constant": norm_worst,
                             "half_sample_ratio": half,
                             "stable": _stable(norm_worst, half)}
    if T.tag == "identity":
        ghs = hardy_condition("ghs", p, w1=w1, w2=w2)
        ok_c = ok_c and norm_worst ** p <= ghs.sup_value + 1e-6
        details["ghs_sup"] = ghs.sup_value

    passed = ok_a and ok_b and ok_c
    return LemmaVerdict("interpolation", "sufficiency", passed,
                        norm_worst, samples, details=details)
