"""Marcinkiewicz and weighted-average norms, degeneracy and side conditions."""

import math

import numpy as np
import pytest

from reartool import (
    Domain,
    GammaSpace,
    PiecewiseFn,
    StepFn,
    TrivialSpace,
    b_check,
    chi,
    closed_form,
    gamma_fundamental,
    gamma_norm,
    l1_norm,
    linf_norm,
    linfty_embedding_check,
    marcinkiewicz_norm,
    marcinkiewicz_norm_of_decreasing,
    s_nontriviality_check,
    weight_power,
    weight_powlog,
)
from reartool.extrema import weighted_sup

from conftest import random_decreasing, random_step

INF = Domain(math.inf)


def test_marcinkiewicz_indicator_is_profile_value():
    nv = marcinkiewicz_norm(closed_form(0.5), chi(4.0, INF))
    assert nv.value == pytest.approx(2.0, rel=1e-12)
    assert nv.method == "exact"
    assert nv.error_bound == 0.0


def test_marcinkiewicz_linear_profile():
    nv = marcinkiewicz_norm(closed_form(1.0), chi(1.0, INF))
    assert nv.value == pytest.approx(1.0, rel=1e-12)


def test_marcinkiewicz_zero():
    nv = marcinkiewicz_norm(closed_form(0.5), StepFn([1.0], [0.0, 0.0], INF))
    assert nv.value == 0.0 and nv.method == "exact"


def test_gamma_norm_flat_weight_on_unit_interval():
    space = GammaSpace(1.0, weight_power(1.0, 0.0, R=1.0))
    f = chi(0.5, Domain(1.0))
    nv = gamma_norm(space, f)
    assert nv.value == pytest.approx(0.5 + 0.5 * math.log(2.0), rel=1e-12)
    assert nv.method == "exact"


def test_gamma_norm_sqrt_weight():
    space = GammaSpace(1.0, weight_power(1.0, -0.5))
    nv = gamma_norm(space, chi(1.0, INF))
    assert nv.value == pytest.approx(4.0, rel=1e-12)


def test_gamma_norm_zero():
    space = GammaSpace(1.0, weight_power(1.0, -0.5))
    nv = gamma_norm(space, StepFn([2.0], [0.0, 0.0], INF))
    assert nv.value == 0.0


def test_fundamental_values_and_head():
    space = GammaSpace(1.0, weight_power(1.0, -0.5))
    assert gamma_fundamental(space, 1.0) == pytest.approx(4.0, rel=1e-12)
    for t in (1e-8, 1e-4, 0.01):
        assert gamma_fundamental(space, t) == pytest.approx(4.0 * math.sqrt(t),
                                                            rel=1e-9)
    unit = GammaSpace(1.0, weight_power(1.0, 0.0, R=1.0))
    assert gamma_fundamental(unit, 1.0 - 1e-9) == pytest.approx(1.0, rel=1e-6)


def test_fundamental_matches_indicator_norm():
    spaces = [
        GammaSpace(1.0, weight_power(1.0, -0.5)),
        GammaSpace(2.0, weight_power(3.0, -0.5)),
        GammaSpace(1.0, weight_powlog(1.0, -0.5, -2.0)),
        GammaSpace(1.0, weight_power(1.0, 0.0, R=1.0)),
    ]
    for space in spaces:
        R = space.domain.R
        for t in (1e-3, 0.3, 0.9 if math.isfinite(R) else 7.0):
            ind = gamma_norm(space, chi(t, space.domain)).value ** space.p
            assert gamma_fundamental(space, t) == pytest.approx(ind, rel=1e-8)


def test_trivial_space_identifications():
    flat = GammaSpace(1.0, weight_power(1.0, 0.0))
    with pytest.raises(TrivialSpace) as exc:
        gamma_norm(flat, chi(1.0, INF))
    assert exc.value.clause == "zero-space"

    growing = GammaSpace(1.0, weight_power(1.0, 0.5, R=1.0))
    with pytest.raises(TrivialSpace) as exc:
        gamma_fundamental(growing, 0.5)
    assert exc.value.clause == "l1-space"

    rough = GammaSpace(1.0, weight_power(1.0, -1.0, R=1.0, require_integrable=False))
    assert rough.nontriviality()[1] == "zero-space"


def test_linfty_embedding_examples():
    rough = GammaSpace(1.0, weight_power(1.0, -1.0, R=1.0, require_integrable=False))
    assert linfty_embedding_check(rough)
    unit = GammaSpace(1.0, weight_power(1.0, 0.0, R=1.0))
    assert not linfty_embedding_check(unit)
    sqrt = GammaSpace(1.0, weight_power(1.0, -0.5))
    assert not linfty_embedding_check(sqrt)


def test_s_nontriviality_examples():
    jump = closed_form(1.0, d=1.0)
    assert s_nontriviality_check(GammaSpace(1.0, weight_power(1.0, -0.5, R=1.0)), jump)
    assert s_nontriviality_check(GammaSpace(1.0, weight_power(1.0, -0.5)), jump)
    # continuous profile: the condition is not imposed at all
    assert s_nontriviality_check(GammaSpace(1.0, weight_power(1.0, 0.0)),
                                 closed_form(0.5))
    # flat weight on (0, inf) makes the integral diverge at the tail
    assert not s_nontriviality_check(GammaSpace(1.0, weight_power(1.0, 0.0)), jump)


def test_l1_linf_helpers():
    f = StepFn([1.0, 3.0], [2.0, 0.5, 0.0], INF)
    assert l1_norm(f) == pytest.approx(3.0, rel=1e-14)
    assert linf_norm(f) == 2.0
    assert linf_norm(StepFn([1.0], [0.0, 0.0], INF)) == 0.0


def test_one_star_lemma_bound():
    rng = np.random.default_rng(31)
    for phi in (closed_form(0.5), closed_form(0.3)):
        C = b_check(phi, "integral").constant * (1.0 + 1e-6)
        for _ in range(200):
            fs = random_decreasing(rng, max_pieces=24)
            one = weighted_sup(phi, fs).value
            two = marcinkiewicz_norm(phi, fs).value
            assert one <= two * (1.0 + 1e-9)
            assert two <= C * one * (1.0 + 1e-9)


def test_one_star_ratio_grows_without_averaging_condition():
    # phi(t) = t fails the averaging condition; capped-reciprocal profiles
    # min(n, 1/t) on (0,1) separate the two sups by exactly 1 + ln n
    phi = closed_form(1.0)
    ratios = []
    for n in (10.0, 100.0, 1000.0, 10000.0):
        g = PiecewiseFn(INF, [0.0, 1.0 / n, 1.0, math.inf],
                        [((n, 0.0, 0),), ((1.0, -1.0, 0),), ()])
        one = weighted_sup(phi, g).value
        two = marcinkiewicz_norm_of_decreasing(phi, g).value
        ratios.append(two / one)
        assert two / one == pytest.approx(1.0 + math.log(n), rel=1e-9)
    assert ratios[0] < ratios[1] < ratios[2] < ratios[3]


def test_norm_homogeneity():
    rng = np.random.default_rng(32)
    phi = closed_form(0.5)
    space = GammaSpace(1.0, weight_power(1.0, -0.5))
    for _ in range(20):
        f = random_step(rng, max_pieces=20)
        c = float(10.0 ** rng.uniform(-3, 3))
        cf = StepFn(f.breaks, c * f.values, f.domain)
        assert marcinkiewicz_norm(phi, cf).value == pytest.approx(
            c * marcinkiewicz_norm(phi, f).value, rel=1e-12)
        assert gamma_norm(space, cf).value == pytest.approx(
            c * gamma_norm(space, f).value, rel=1e-12)


def test_norm_triangle_inequality():
    rng = np.random.default_rng(33)
    phi = closed_form(0.5)
    spaces = [GammaSpace(1.0, weight_power(1.0, -0.5)),
              GammaSpace(2.0, weight_power(1.0, -0.5))]
    for _ in range(20):
        f = random_step(rng, max_pieces=16)
        g = random_step(rng, max_pieces=16)
        h = f.add_step(g)
        assert marcinkiewicz_norm(phi, h).value <= (
            marcinkiewicz_norm(phi, f).value
            + marcinkiewicz_norm(phi, g).value) * (1.0 + 1e-6)
        for space in spaces:
            assert gamma_norm(space, h).value <= (
                gamma_norm(space, f).value
                + gamma_norm(space, g).value) * (1.0 + 1e-6)


def test_norm_lattice_property():
    rng = np.random.default_rng(34)
    phi = closed_form(0.75)
    space = GammaSpace(1.0, weight_power(1.0, -0.5))
    for _ in range(20):
        f = random_decreasing(rng, max_pieces=16)
        g = f.add_step(random_decreasing(rng, max_pieces=16))
        assert marcinkiewicz_norm(phi, f).value <= \
            marcinkiewicz_norm(phi, g).value * (1.0 + 1e-12)
        assert gamma_norm(space, f).value <= \
            gamma_norm(space, g).value * (1.0 + 1e-12)


def test_quadrature_path_reports_error_bound():
    space = GammaSpace(1.5, weight_power(1.0, -0.5))
    nv = gamma_norm(space, chi(1.0, INF))
    assert nv.method == "quadrature"
    assert nv.error_bound > 0.0
    # p = 1.5 on the indicator: integral of (min(1, 1/t))^{1.5} t^{-1/2}
    want = (2.0 + 1.0) ** (1 / 1.5)  # int_0^1 t^-0.5 + int_1^inf t^-2
    assert nv.value == pytest.approx(want, rel=1e-8)


def test_gamma_space_validates_exponent():
    with pytest.raises(ValueError):
        GammaSpace(0.5, weight_power(1.0, -0.5))
    with pytest.raises(ValueError):
        GammaSpace(math.inf, weight_power(1.0, -0.5))
