"""Supremum operators on rearranged steps: exact displays vs brute force."""

import math

import numpy as np
import pytest

from reartool import (
    Domain,
    DomainMismatch,
    StepFn,
    apply_S,
    apply_T,
    chi,
    closed_form,
    from_samples,
    rearrange,
    s_bracket,
    t_bracket,
)
from reartool.funcspace import log_grid
from reartool.quadrature import merge_grid

from conftest import brute_S, brute_T, dense_points, random_decreasing

INF = Domain(math.inf)

TWO_LEVEL = StepFn([1.0, 4.0], [2.0, 1.0, 0.0], INF)


def _phi_pool(rng):
    kind = rng.integers(0, 4)
    if kind == 0:
        return closed_form(float(rng.uniform(0.05, 1.0)))
    if kind == 1:
        a = float(rng.uniform(0.3, 0.9))
        return closed_form(a, float(rng.uniform(0.0, 0.25)))
    if kind == 2:
        return closed_form(float(rng.uniform(0.0, 1.0)), d=float(rng.uniform(0.1, 2.0)))
    ts = np.geomspace(1e-7, 1e7, 40)
    a = float(rng.uniform(0.2, 0.8))
    return from_samples(ts, ts ** a)


def test_s_indicator_closed_form():
    out = apply_S(closed_form(0.5), chi(1.0, INF))
    assert out.exact and not out.trivial
    ts = np.asarray([0.25, 0.5, 1.0, 4.0, 100.0])
    want = np.minimum(1.0, 1.0 / np.sqrt(ts))
    assert np.allclose(out(ts), want, rtol=1e-14)
    assert float(out(np.asarray([4.0]))[0]) == pytest.approx(0.5, rel=1e-14)


def test_s_two_level_values():
    out = apply_S(closed_form(0.5), TWO_LEVEL)
    assert float(out(np.asarray([1.0]))[0]) == pytest.approx(2.0, rel=1e-14)
    assert float(out(np.asarray([4.0]))[0]) == pytest.approx(1.0, rel=1e-14)


def test_s_interior_crossover_recorded():
    out = apply_S(closed_form(0.5), StepFn([1.0, 9.0], [2.0, 1.0, 0.0], INF))
    assert out.crossovers == (4.0,)
    assert float(out(np.asarray([2.0]))[0]) == pytest.approx(math.sqrt(2.0), rel=1e-14)
    assert float(out(np.asarray([5.0]))[0]) == pytest.approx(1.0, rel=1e-14)


def test_s_zero_function():
    out = apply_S(closed_form(0.5), StepFn([1.0], [0.0, 0.0], INF))
    assert np.all(out(np.geomspace(1e-3, 1e3, 20)) == 0.0)


def test_t_indicator_closed_form():
    out = apply_T(closed_form(0.5), chi(1.0, INF))
    assert float(out(np.asarray([0.25]))[0]) == pytest.approx(2.0, rel=1e-14)
    assert float(out(np.asarray([0.81]))[0]) == pytest.approx(1.0 / 0.9, rel=1e-14)
    assert np.all(out(np.asarray([1.5, 7.0])) == 0.0)


def test_t_two_level_values():
    out = apply_T(closed_form(0.5), TWO_LEVEL)
    assert float(out(np.asarray([0.25]))[0]) == pytest.approx(4.0, rel=1e-14)
    assert float(out(np.asarray([2.25]))[0]) == pytest.approx(4.0 / 3.0, rel=1e-14)
    assert float(out(np.asarray([5.0]))[0]) == 0.0


def test_t_zero_function():
    out = apply_T(closed_form(0.5), StepFn([1.0], [0.0, 0.0], INF))
    assert np.all(out(np.geomspace(1e-3, 1e3, 20)) == 0.0)


def test_domain_mismatch_raised():
    with pytest.raises(DomainMismatch):
        apply_S(closed_form(0.5, R=1.0), chi(1.0, INF))
    with pytest.raises(DomainMismatch):
        apply_T(closed_form(0.5, R=1.0), chi(1.0, INF))


def test_unsorted_input_is_rearranged_first():
    f = StepFn([1.0, 2.0, 5.0], [1.0, 3.0, 2.0, 0.0], INF)
    fs = rearrange(f)
    phi = closed_form(0.75)
    ts = np.geomspace(1e-3, 1e2, 50)
    assert np.allclose(apply_S(phi, f)(ts), apply_S(phi, fs)(ts), rtol=1e-14)
    assert np.allclose(apply_T(phi, f)(ts), apply_T(phi, fs)(ts), rtol=1e-14)


def test_output_monotone_for_random_pairs():
    rng = np.random.default_rng(21)
    for _ in range(200):
        fs = random_decreasing(rng, max_pieces=24)
        phi = _phi_pool(rng)
        ts = dense_points(fs, 400)
        for out in (apply_S(phi, fs), apply_T(phi, fs)):
            v = np.asarray(out(ts))
            assert np.all(np.diff(v) <= 1e-9 * np.maximum(v[:-1], 1e-300))


def test_domination():
    rng = np.random.default_rng(22)
    for _ in range(50):
        fs = random_decreasing(rng, max_pieces=24)
        phi = _phi_pool(rng)
        ts = dense_points(fs, 300)
        fv = np.asarray(fs(ts))
        assert np.all(np.asarray(apply_S(phi, fs)(ts)) >= fv * (1.0 - 1e-12))
        tv = np.asarray(apply_T(phi, fs)(ts))
        nxt = np.asarray(fs(np.nextafter(ts, np.inf)))
        assert np.all(tv >= nxt * (1.0 - 1e-12))


def test_s_idempotent_at_breakpoints():
    rng = np.random.default_rng(23)
    for _ in range(20):
        fs = random_decreasing(rng, max_pieces=16)
        phi = _phi_pool(rng)
        out = apply_S(phi, fs)
        bks = fs.bounds[1:-1]
        sgrid = dense_points(fs, 4000)
        again = brute_S(phi, out, bks, sgrid)
        assert np.allclose(again, np.asarray(out(bks)), rtol=1e-10)


def test_s_matches_min_form_brute_force():
    rng = np.random.default_rng(24)
    for phi in (closed_form(0.5), closed_form(0.6, 0.15), closed_form(0.4, d=0.7)):
        fs = random_decreasing(rng, max_pieces=20)
        out = apply_S(phi, fs)
        ygrid = dense_points(fs, 10_000)
        fy = np.asarray(fs(ygrid))
        py = np.asarray(phi(ygrid))
        ts = dense_points(fs, 40)
        pt = np.asarray(phi(ts))
        got = np.asarray(out(ts))
        for j, t in enumerate(ts):
            brute = float(np.max(fy * np.minimum(1.0, py / pt[j])))
            assert got[j] == pytest.approx(brute, rel=1e-10)


def test_positive_homogeneity():
    rng = np.random.default_rng(25)
    fs = random_decreasing(rng, max_pieces=20)
    phi = closed_form(0.5, 0.2)
    ts = dense_points(fs, 200)
    base_s = np.asarray(apply_S(phi, fs)(ts))
    base_t = np.asarray(apply_T(phi, fs)(ts))
    for c in (1e-3, 7.0, 1e4):
        scaled = StepFn(fs.breaks, c * fs.values, fs.domain)
        assert np.allclose(apply_S(phi, scaled)(ts), c * base_s, rtol=1e-12)
        assert np.allclose(apply_T(phi, scaled)(ts), c * base_t, rtol=1e-12)


def test_monotone_in_f():
    rng = np.random.default_rng(26)
    for _ in range(25):
        fs = random_decreasing(rng, max_pieces=16)
        g = fs.add_step(random_decreasing(rng, max_pieces=16))
        phi = _phi_pool(rng)
        ts = dense_points(fs, 200)
        assert np.all(np.asarray(apply_S(phi, fs)(ts))
                      <= np.asarray(apply_S(phi, g)(ts)) * (1.0 + 1e-12))
        assert np.all(np.asarray(apply_T(phi, fs)(ts))
                      <= np.asarray(apply_T(phi, g)(ts)) * (1.0 + 1e-12))


def test_brute_oracles_agree_with_exact():
    rng = np.random.default_rng(27)
    for _ in range(10):
        fs = random_decreasing(rng, max_pieces=20)
        phi = closed_form(float(rng.uniform(0.1, 0.9)))
        sgrid = dense_points(fs, 10_000)
        ts = dense_points(fs, 50)
        assert np.allclose(brute_S(phi, fs, ts, sgrid),
                           np.asarray(apply_S(phi, fs)(ts)), rtol=1e-10)
        assert np.allclose(brute_T(phi, fs, ts, sgrid),
                           np.asarray(apply_T(phi, fs)(ts)), rtol=1e-10)


def test_brackets_enclose_exact_values():
    rng = np.random.default_rng(28)
    for _ in range(20):
        fs = random_decreasing(rng, max_pieces=16)
        phi = _phi_pool(rng)
        grid = merge_grid(log_grid(fs.domain, 129), fs.bounds, fs.domain.R)
        s_exact = np.asarray(apply_S(phi, fs)(grid))
        lo, hi = s_bracket(phi, fs, grid)
        assert np.all(lo <= s_exact * (1.0 + 1e-11))
        assert np.all(s_exact <= hi * (1.0 + 1e-11))
        t_exact = np.asarray(apply_T(phi, fs)(grid))
        lo, hi = t_bracket(phi, fs, grid, tail_mass=0.0)
        assert np.all(lo <= t_exact * (1.0 + 1e-11))
        assert np.all(t_exact <= hi * (1.0 + 1e-11))
