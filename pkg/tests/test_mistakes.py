import pytest
from hypothesis import given, strategies as st

from prefplan.mistakes import (MistakeReport, future_as_present_iterates,
                               future_as_present_posterior,
                               future_as_present_report,
                               single_sample_nesting_policy)

probs = st.floats(0.01, 0.99)


class TestFutureAsPresent:
    def test_uninformative_belief_leaves_prior(self):
        assert future_as_present_posterior(0.55, 0.5) == 0.55

    def test_paper_numbers(self):
        assert future_as_present_posterior(0.55, 0.55) == pytest.approx(
            0.599009900990099, abs=1e-5)

    def test_certain_belief_limit(self):
        assert future_as_present_posterior(0.55, 1 - 1e-12) == pytest.approx(
            1.0, abs=1e-9)

    @given(probs, probs, probs)
    def test_monotone_in_belief(self, p1, qa, qb):
        lo, hi = min(qa, qb), max(qa, qb)
        assert future_as_present_posterior(p1, lo) <= \
            future_as_present_posterior(p1, hi)

    @given(probs)
    def test_half_belief_is_identity(self, p1):
        assert future_as_present_posterior(p1, 0.5) == p1

    def test_iterates_escalate(self):
        seq = future_as_present_iterates(0.55, 0.55, 20)
        assert all(x < y for x, y in zip(seq, seq[1:]))
        assert seq[-1] > 0.9

    def test_report_values(self):
        r = future_as_present_report(0.55, 0.55)
        assert r.p_bar1 == pytest.approx(0.599009900990099, abs=1e-9)
        assert r.claimed_value == 1.0
        # meeting probability of the mixed policy against Bernoulli(0.55)
        assert r.true_value == pytest.approx(
            r.p_bar1 * 0.55 + (1 - r.p_bar1) * 0.45, abs=1e-12)
        assert r.rational_value == 0.55
        assert r.true_value < r.rational_value

    def test_domain_validation(self):
        with pytest.raises(ValueError):
            future_as_present_posterior(0.0, 0.5)
        with pytest.raises(ValueError):
            future_as_present_posterior(0.5, 1.0)


def enumerate_evasion_value(p_bar1, p_bar2, chaser_p1):
    """Brute force over the four joint outcomes of (evader bar, chaser bar)."""
    total = 0.0
    for evader, pe in ((1, p_bar1), (2, p_bar2)):
        for chaser, pc in ((1, chaser_p1), (2, 1 - chaser_p1)):
            if evader != chaser:
                total += pe * pc
    return total


class TestSingleSampleNesting:
    def test_paper_case(self):
        r = single_sample_nesting_policy(0.5, 0.55)
        assert r.p_bar2 == 0.55
        assert r.claimed_value == 1.0
        assert r.true_value == pytest.approx(0.505, abs=1e-12)
        assert r.rational_value == pytest.approx(0.55, abs=1e-12)

    def test_symmetric_case_nothing_to_exploit(self):
        r = single_sample_nesting_policy(0.5, 0.5)
        assert r.true_value == 0.5
        assert r.rational_value == 0.5

    @given(probs, probs)
    def test_true_value_equals_enumeration_exactly(self, evader_p1, chaser_p1):
        r = single_sample_nesting_policy(evader_p1, chaser_p1)
        assert r.true_value == enumerate_evasion_value(r.p_bar1, r.p_bar2, chaser_p1)

    def test_strict_suboptimality_across_grid(self):
        for k in range(1, 100):
            q = k / 100.0
            if q == 0.5:
                continue
            r = single_sample_nesting_policy(0.5, q)
            assert r.true_value < r.rational_value

    @given(probs)
    def test_policy_ignores_evader_prior(self, evader_p1):
        assert single_sample_nesting_policy(evader_p1, 0.55).p_bar2 == 0.55


class TestMistakeReport:
    def test_true_value_cannot_exceed_rational(self):
        with pytest.raises(ValueError):
            MistakeReport("m", 0.5, 0.5, 1.0, 0.9, 0.55)

    def test_policy_must_normalise(self):
        with pytest.raises(ValueError):
            MistakeReport("m", 0.5, 0.4, 1.0, 0.4, 0.55)
