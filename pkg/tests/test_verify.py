"""Lemma verification harness: verdict structure, exact families, demos."""

import json
import math

import numpy as np
import pytest

from reartool import (
    DemoOperator,
    Domain,
    LemmaVerdict,
    b_consensus,
    chi,
    closed_form,
    sample_steps,
    verify_endpoints,
    verify_interpolation,
    verify_one_star,
    verify_starfalls,
    weight_power,
)
from reartool.errors import PreconditionViolated

INF = Domain(math.inf)
LN10 = math.log(10.0)

PHI_HALF = closed_form(0.5)
PHI_LIN = closed_form(1.0)  # fails the averaging condition


class TestSampleSteps:
    def test_seeded_and_shaped(self):
        a = sample_steps(np.random.default_rng(11), INF, 12)
        b = sample_steps(np.random.default_rng(11), INF, 12)
        assert len(a) == 12
        for fa, fb in zip(a, b):
            assert np.array_equal(fa.bounds, fb.bounds)
            assert np.array_equal(fa.values, fb.values)

    def test_compact_support_on_the_halfline(self):
        for fs in sample_steps(np.random.default_rng(2), INF, 30):
            assert fs.values[-1] == 0.0
            assert fs.is_nonincreasing()
            assert fs.bounds[-2] < math.inf

    def test_finite_domain_allows_positive_tail(self):
        dom = Domain(1.0)
        samples = sample_steps(np.random.default_rng(5), dom, 40)
        assert any(fs.values[-1] > 0.0 for fs in samples)
        for fs in samples:
            assert fs.bounds[-1] == 1.0
            assert fs.is_nonincreasing()


class TestOneStar:
    def test_sufficiency_stays_below_lemma_constant(self):
        v = verify_one_star(PHI_HALF, samples=120, seed=0)
        cons = b_consensus(PHI_HALF)
        assert v.direction == "sufficiency"
        assert v.passed
        assert 1.0 <= v.max_ratio <= cons.constant + 1e-6
        assert v.details["b_constant"] == pytest.approx(cons.constant)
        assert "stable" in v.details

    def test_necessity_ratios_for_linear_profile(self):
        # truncations min(n, 1/t): mass 1 + ln(n) against weighted sup 1
        v = verify_one_star(PHI_LIN)
        assert v.direction == "necessity"
        assert v.passed
        expected = [1.0 + k * LN10 for k in range(1, 6)]
        assert v.witness["ratios"] == pytest.approx(expected, rel=1e-10)
        assert v.max_ratio == pytest.approx(1.0 + 5 * LN10, rel=1e-10)


class TestEndpoints:
    def test_t_into_l1(self):
        v = verify_endpoints("T-L1", PHI_HALF, samples=120, seed=0)
        assert v.passed
        assert 1.0 <= v.max_ratio <= 2.0 + 1e-6

    def test_s_into_linf_is_exact(self):
        v = verify_endpoints("S-Linf", PHI_HALF, samples=80, seed=0)
        assert v.passed
        assert v.max_ratio == pytest.approx(1.0, abs=1e-12)

    def test_s_into_linf_needs_no_averaging(self):
        v = verify_endpoints("S-Linf", PHI_LIN, samples=40, seed=0)
        assert v.passed
        assert v.details["note"] == "bounded for every quasiconcave profile"

    def test_necessity_growth_for_linear_profile(self):
        # maximal average of chi_(0,1) trimmed at delta grows like ln(1/delta)
        v = verify_endpoints("T-M", PHI_LIN)
        assert v.direction == "necessity"
        assert v.passed
        assert v.max_ratio == pytest.approx(5 * LN10, rel=1e-10)

    def test_unknown_lemma(self):
        with pytest.raises(ValueError):
            verify_endpoints("T-L2", PHI_HALF)


class TestStarfalls:
    def test_s_output_average_bounded(self):
        phi = closed_form(0.75)
        v = verify_starfalls("Sstar", phi=phi, samples=60, seed=0)
        assert v.passed
        assert 1.0 <= v.max_ratio <= b_consensus(phi).constant + 1e-6

    def test_t_output_average_bounded(self):
        psi = closed_form(0.25)
        v = verify_starfalls("Tff", psi=psi, samples=60, seed=0)
        assert v.passed
        assert v.max_ratio <= 4.0 / 3.0 + 1e-6

    def test_combined_records_both_directions(self):
        v = verify_starfalls("combined", phi=closed_form(0.75),
                             psi=closed_form(0.25), samples=40, seed=0)
        assert v.passed
        sides = v.details["one_sided_constants"]
        assert set(sides) == {"upper", "lower"}
        assert all(c >= 1.0 - 1e-9 for c in sides.values())

    def test_necessity_for_linear_profile(self):
        v = verify_starfalls("Sff", phi=PHI_LIN)
        assert v.direction == "necessity"
        assert v.passed
        expected = [1.0 + k * LN10 for k in range(1, 6)]
        assert v.witness["ratios"] == pytest.approx(expected, rel=1e-9)

    def test_argument_validation(self):
        with pytest.raises(ValueError):
            verify_starfalls("Smax", phi=PHI_HALF)
        with pytest.raises(ValueError):
            verify_starfalls("Sstar")
        with pytest.raises(ValueError):
            verify_starfalls("combined", phi=PHI_HALF,
                             psi=closed_form(0.25, R=1.0))


class TestDemoOperators:
    def test_parse(self):
        assert DemoOperator.parse("identity").tag == "identity"
        assert DemoOperator.parse("dilation:2.0").tag == "dilation:2.0"
        with pytest.raises(ValueError):
            DemoOperator.parse("convolution")

    def test_identity_and_average(self):
        f = chi(1.0, INF)
        assert DemoOperator("identity").apply(f) is f
        avg = DemoOperator("hardy-average").apply(f)
        assert float(np.asarray(avg(np.array([4.0])))[0]) == pytest.approx(0.25)

    def test_dilation_shrinks_support(self):
        out = DemoOperator("dilation:2.0").apply(chi(1.0, INF))
        vals = np.asarray(out(np.array([0.3, 0.7])))
        assert vals[0] == 1.0 and vals[1] == 0.0

    def test_truncated_sum_values(self):
        # f** + (D_2 f)** at t=1 for an indicator: 1 + 1/2
        out = DemoOperator("truncated-sum").apply(chi(1.0, INF))
        assert float(np.asarray(out(np.array([1.0])))[0]) == pytest.approx(1.5)

    def test_demos_requiring_the_halfline(self):
        f = chi(0.5, Domain(1.0))
        with pytest.raises(ValueError):
            DemoOperator("dilation:2.0").apply(f)
        with pytest.raises(ValueError):
            DemoOperator("truncated-sum").apply(f)
        with pytest.raises(ValueError):
            DemoOperator("dilation:-1.0").apply(chi(1.0, INF))


class TestInterpolation:
    W = weight_power(1.0, -0.5)
    PHI = closed_form(0.75)
    PSI = closed_form(0.25)

    def test_hardy_average_fixture(self):
        v = verify_interpolation("hardy-average", 1.0, self.PHI, self.PSI,
                                 self.W, self.W, samples=60, seed=0)
        assert v.passed
        assert v.details["stgg_sup"] == pytest.approx(2.0, rel=1e-9)
        assert v.details["truncation"]["passed"]
        assert v.details["pointwise_chain"]["passed"]
        # indicators realize the ratio 2 exactly and nothing exceeds it
        assert 1.0 <= v.max_ratio <= 2.0 + 1e-9

    def test_identity_matches_single_operator_criterion(self):
        v = verify_interpolation("identity", 1.0, self.PHI, self.PSI,
                                 self.W, self.W, samples=40, seed=0)
        assert v.passed
        assert v.max_ratio == pytest.approx(1.0, abs=1e-12)
        assert v.details["ghs_sup"] == pytest.approx(1.0, rel=1e-9)

    def test_unbounded_operator_is_refused(self):
        with pytest.raises(PreconditionViolated) as exc:
            verify_interpolation("dilation:1e-12", 1.0, self.PHI, self.PSI,
                                 self.W, self.W, samples=20, seed=0)
        assert exc.value.clause == "endpoint-boundedness"

    def test_divergent_criterion_is_refused(self):
        half = closed_form(0.5)
        with pytest.raises(PreconditionViolated) as exc:
            verify_interpolation("identity", 1.0, half, half,
                                 self.W, self.W, samples=20, seed=0)
        assert exc.value.clause == "stgg"

    def test_domain_agreement(self):
        with pytest.raises(ValueError):
            verify_interpolation("identity", 1.0, self.PHI,
                                 closed_form(0.25, R=1.0), self.W, self.W)


class TestVerdictShape:
    def test_as_dict_is_jsonable(self):
        v = verify_one_star(PHI_LIN)
        d = v.as_dict()
        assert set(d) == {"lemma", "direction", "passed", "max_ratio",
                          "samples", "witness", "details", "note"}
        json.dumps(d)

    def test_note_mentions_sampling(self):
        v = verify_one_star(PHI_HALF, samples=20)
        assert isinstance(v, LemmaVerdict)
        assert v.note
