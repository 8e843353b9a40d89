"""Shared generators and brute-force oracles used across the test suite."""

import math

import numpy as np

from reartool import Domain, StepFn, rearrange


def random_step(rng, domain=None, max_pieces=64, allow_zero_tail=True):
    """Arbitrary-order positive step function, breakpoints over 12 decades."""
    domain = domain or Domain(math.inf)
    k = int(rng.integers(1, max_pieces + 1))
    if domain.finite:
        exps = rng.uniform(-12.0, 0.0, size=k)
        breaks = np.unique(domain.R * (10.0 ** exps) * (1.0 - 1e-9))
    else:
        breaks = np.unique(10.0 ** rng.uniform(-6.0, 6.0, size=k))
    vals = 10.0 ** rng.uniform(-3.0, 3.0, size=len(breaks) + 1)
    if not domain.finite or allow_zero_tail:
        vals[-1] = 0.0
    return StepFn(breaks, vals, domain)


def random_decreasing(rng, domain=None, max_pieces=64):
    return rearrange(random_step(rng, domain, max_pieces))


def dense_points(fs, n=10_000):
    """Evaluation grid: log-spread plus both-sided breakpoint neighbors."""
    R = fs.domain.R
    hi = min(R * (1 - 1e-9), 1e7) if math.isfinite(R) else 1e7
    pts = [np.geomspace(1e-8, hi, n)]
    inner = fs.bounds[1:-1]
    pts.append(inner * (1.0 - 1e-13))
    pts.append(inner)
    pts.append(np.minimum(inner * (1.0 + 1e-13), hi))
    out = np.unique(np.concatenate(pts))
    return out[(out > 0) & (out < R)]


def brute_S(phi, fstar, ts, sgrid):
    """sup_{s<=t} phi(s) f*(s) / phi(t) on a dense grid, per evaluation point."""
    ts = np.asarray(ts, dtype=float)
    pv = np.asarray(phi(sgrid), dtype=float) * np.asarray(fstar(sgrid), dtype=float)
    prefix = np.maximum.accumulate(pv)
    idx = np.searchsorted(sgrid, ts, side="right") - 1
    out = np.empty_like(ts)
    pt = np.asarray(phi(ts), dtype=float)
    for j, (t, i) in enumerate(zip(ts, idx)):
        best = prefix[i] if i >= 0 else 0.0
        best = max(best, pt[j] * float(fstar(np.asarray([t]))[0]))
        out[j] = best / pt[j]
    return out


def brute_T(psi, fstar, ts, sgrid):
    """sup_{s>=t} psi(s) f*(s) / psi(t) on a dense grid, per evaluation point."""
    ts = np.asarray(ts, dtype=float)
    pv = np.asarray(psi(sgrid), dtype=float) * np.asarray(fstar(sgrid), dtype=float)
    suffix = np.maximum.accumulate(pv[::-1])[::-1]
    idx = np.searchsorted(sgrid, ts, side="left")
    out = np.empty_like(ts)
    pt = np.asarray(psi(ts), dtype=float)
    for j, (t, i) in enumerate(zip(ts, idx)):
        best = suffix[i] if i < len(sgrid) else 0.0
        best = max(best, pt[j] * float(fstar(np.asarray([t]))[0]))
        out[j] = best / pt[j]
    return out
