"""Quasiconcave profiles, complementary functions, and the averaging condition."""

import math

import numpy as np
import pytest

from reartool import (
    NotQuasiconcave,
    b_check,
    b_consensus,
    closed_form,
    complementary,
    from_samples,
)
from reartool.quasiconcave import validate


def test_power_profiles_validate():
    for a in (0.0, 0.25, 0.5, 1.0):
        phi = closed_form(a)
        assert phi(1.0) == 1.0


def test_convex_power_rejected():
    with pytest.raises(NotQuasiconcave) as exc:
        closed_form(2.0)
    assert exc.value.clause == "ratio-not-nonincreasing"
    with pytest.raises(NotQuasiconcave) as exc:
        closed_form(-0.5)
    assert exc.value.clause == "not-nondecreasing"


def test_zero_profile_rejected():
    with pytest.raises(NotQuasiconcave) as exc:
        closed_form(0.5, c=0.0, d=0.0)
    assert exc.value.clause == "zero-value"


def test_jump_profile_valid_with_limit_at_zero():
    phi = closed_form(1.0, d=1.0)  # 1 + t
    assert phi.value_at_zero_plus() == 1.0
    assert phi(2.0) == 3.0
    assert phi(0.5) == 1.5


def test_reciprocal_log_profile_is_not_quasiconcave():
    # t/(e+|ln t|) fails (iii): phi(t)/t = 1/(e+|ln t|) increases on (0,1)
    with pytest.raises(NotQuasiconcave) as exc:
        closed_form(1.0, -1.0)
    assert exc.value.clause == "ratio-not-nonincreasing"
    with pytest.raises(NotQuasiconcave):
        closed_form(1.0, -1.0, R=1.0)


def test_grid_validation_catches_sampled_violations():
    ts = [0.5, 1.0, 2.0]
    with pytest.raises(NotQuasiconcave) as exc:
        from_samples(ts, [1.0, 3.0, 0.5])
    assert exc.value.clause == "not-nondecreasing"
    with pytest.raises(NotQuasiconcave) as exc:
        from_samples(ts, [1.0, 1.0, 4.5])  # value ratio grows faster than t
    assert exc.value.clause == "ratio-not-nonincreasing"
    with pytest.raises(NotQuasiconcave) as exc:
        from_samples(ts, [1.0, 0.0, 1.0])
    assert exc.value.clause == "zero-value"


def test_complementary_of_powers():
    tilde = complementary(closed_form(0.5))
    assert tilde(4.0) == 2.0
    flat = complementary(closed_form(1.0))
    assert flat(5.0) == 1.0
    assert flat(0.125) == 1.0
    assert flat.value_at_zero_plus() == 1.0


def test_complementary_involution_closed_form():
    phi = closed_form(0.75, 1.0, R=1.0)
    back = complementary(complementary(phi))
    assert back == phi
    ts = np.geomspace(1e-8, 0.999, 200)
    assert np.allclose(back(ts), phi(ts), rtol=1e-12, atol=0.0)


def test_complementary_involution_through_wrapper():
    phi = closed_form(1.0, d=1.0)
    assert complementary(complementary(phi)) is phi
    ts = np.geomspace(1e-4, 1e4, 60)
    sq = from_samples(ts, np.sqrt(ts))
    back = complementary(complementary(sq))
    assert back is sq
    # and the wrapper itself divides out exactly enough
    tilde = complementary(sq)
    mid = np.geomspace(1e-3, 1e3, 100)
    assert np.allclose(mid / tilde(mid), sq(mid), rtol=1e-12, atol=0.0)


def test_averaging_condition_sqrt_integral():
    rep = b_check(closed_form(0.5), "integral")
    assert rep.holds
    assert rep.constant == pytest.approx(2.0, rel=0.01)
    assert not rep.grid_limited


def test_averaging_condition_identity_fails():
    rep = b_check(closed_form(1.0), "integral")
    assert not rep.holds
    assert math.isinf(rep.constant)
    assert rep.witness == "0+"
    dil = b_check(closed_form(1.0), "dilation")
    assert not dil.holds
    assert dil.witness == "no contracting dilation"


def test_unknown_method_rejected():
    with pytest.raises(ValueError):
        b_check(closed_form(0.5), "bisection")


def test_consensus_power_holds():
    cons = b_consensus(closed_form(0.75))
    assert cons.holds
    assert cons.constant == pytest.approx(4.0, rel=0.01)
    assert all(r.holds for r in cons.reports.values())
    assert cons.bound_consistent
    assert math.isfinite(cons.dilation_bound)


def test_consensus_identity_fails():
    cons = b_consensus(closed_form(1.0))
    assert not cons.holds
    assert math.isinf(cons.constant)
    assert not any(r.holds for r in cons.reports.values())


def test_consensus_log_divergence_detected_analytically():
    # 1/phi for phi = t*(e+|ln t|)^(1/2) just barely fails integrability at 0;
    # the verdict comes from the head exponents, not from grid overflow
    phi = closed_form(1.0, 0.5, R=1.0)
    cons = b_consensus(phi)
    assert not cons.holds
    rep = cons.reports["integral"]
    assert rep.witness == "0+"
    assert "not integrable" in rep.details.get("reason", "")
    for r in cons.reports.values():
        assert math.isinf(r.constant) or not r.holds


def test_report_constant_positive_and_finite_when_holds():
    for phi in (closed_form(0.25), closed_form(0.5, 0.2),
                closed_form(0.9), closed_form(0.5, d=0.3)):
        for method in ("integral", "tilde-integral", "dilation"):
            rep = b_check(phi, method)
            assert rep.holds
            assert math.isfinite(rep.constant)
            assert rep.constant > 0.0


def test_sampled_verdict_is_grid_limited():
    ts = np.geomspace(1e-6, 1e6, 80)
    sq = from_samples(ts, np.sqrt(ts))
    rep = b_check(sq, "integral")
    assert rep.holds
    assert rep.grid_limited
    cons = b_consensus(sq)
    assert cons.holds


def test_continuity_under_grid_refinement():
    phi = closed_form(0.5, 0.2)
    jumps = []
    for n in (128, 512, 2048):
        grid = np.geomspace(1e-6, 1e6, n)
        v = phi(grid)
        jumps.append(float(np.max(np.abs(np.diff(v)) / v[:-1])))
    assert jumps[0] > jumps[1] > jumps[2]
    assert jumps[2] < 0.02


def test_monotone_pair():
    for phi in (closed_form(0.5), closed_form(0.75, 1.0, R=1.0),
                closed_form(1.0, d=0.5)):
        tilde = complementary(phi)
        hi = 0.999 if phi.domain.finite else 1e7
        grid = np.geomspace(1e-7, hi, 400)
        for g in (phi, tilde):
            v = g(grid)
            assert np.all(np.diff(v) >= -1e-12 * v[:-1])


def test_dilation_bound_dominates_integral_constant():
    # a contracting dilation with ratio rho at factor b implies the averaged
    # reciprocal stays below log(b)/(1 - rho); the measured sup must obey it
    for phi in (closed_form(0.25), closed_form(0.5), closed_form(0.75),
                closed_form(0.9), closed_form(0.5, 0.2)):
        cons = b_consensus(phi)
        assert cons.holds
        probes = cons.reports["dilation"].details["rho_by_probe"]
        bounds = [math.log(b) / (1.0 - rho)
                  for b, rho in probes.items() if rho < 1.0]
        assert bounds
        assert cons.constant <= min(bounds) * 1.05


def test_verdict_and_constant_scale_invariant():
    for base, scaled in (((0.5, 0.0), (0.5, 0.0)), ((0.5, 0.2), (0.5, 0.2))):
        ref = b_consensus(closed_form(base[0], base[1]))
        for c in (0.1, 10.0):
            got = b_consensus(closed_form(scaled[0], scaled[1], c=c))
            assert got.holds == ref.holds
            assert got.constant == pytest.approx(ref.constant, rel=1e-9)
    ref = b_consensus(closed_form(1.0))
    for c in (0.1, 10.0):
        got = b_consensus(closed_form(1.0, c=c))
        assert not got.holds and math.isinf(got.constant) == math.isinf(ref.constant)


def test_validate_rejects_doctored_sample_object():
    ts = np.geomspace(1e-3, 1e3, 50)
    sq = from_samples(ts, np.sqrt(ts))
    validate(sq)  # fine as built
    sq.vals = sq.vals.copy()
    sq.vals[10] *= 100.0  # break monotonicity behind the constructor's back
    sq._lv = np.log(sq.vals)
    sq._theta = np.diff(sq._lv) / np.diff(sq._lu)
    with pytest.raises(NotQuasiconcave):
        validate(sq)
