"""Tests for Choquet aggregation and the axiom harness.

``choquet`` is checked against a brute-force oracle that evaluates the
defining sum for every sort permutation consistent with ties, so tie
invariance and correctness are verified together.
"""

import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from choquetkit.aggregate import (
    Aggregator,
    AxiomCheckConfig,
    check_in,
    check_lm,
    check_pw,
    check_spl,
    check_weak_spl,
    choquet,
    random_capacity,
    stock_aggregator,
    theorem1_suite,
    weighted_sum,
    zero_one_order_statistic,
)
from choquetkit.errors import DimensionMismatch, NotZeroOne
from choquetkit.setfn import (
    Game,
    additive_from_weights,
    enumerate_zero_one_capacities,
    linear_combine,
    make_capacity,
    unanimity,
)

CHOQUET = stock_aggregator("choquet")


def choquet_oracle(g, x):
    """Defining sum over every ascending permutation consistent with ties."""
    n = g.n
    results = []
    for perm in itertools.permutations(range(n)):
        if any(x[perm[i]] > x[perm[i + 1]] for i in range(n - 1)):
            continue
        total = 0.0
        for i in range(n):
            tail = 0
            for j in range(i, n):
                tail |= 1 << perm[j]
            total += x[perm[i]] * (g.values[tail] - g.values[tail & ~(1 << perm[i])])
        results.append(total)
    return results


MU2 = make_capacity(2, [0.0, 0.3, 0.5, 1.0])


# -- the integral itself --


def test_choquet_two_criteria_by_hand():
    assert choquet(MU2.game, (0.2, 0.8)) == pytest.approx(0.2 * (1 - 0.5) + 0.8 * 0.5)
    assert choquet(MU2.game, (0.8, 0.2)) == pytest.approx(0.2 * (1 - 0.3) + 0.8 * 0.3)
    assert choquet(MU2.game, (0.2, 0.8)) == pytest.approx(0.5)
    assert choquet(MU2.game, (0.8, 0.2)) == pytest.approx(0.38)


def test_choquet_constant_vector_dilates_by_full_value():
    rng = random.Random(7)
    for _ in range(50):
        n = rng.randrange(1, 5)
        cap = random_capacity(rng, n)
        beta = rng.uniform(-5, 5)
        assert choquet(cap.game, (beta,) * n) == beta
    g = Game((0.0, 0.2, -0.4, 0.5))
    assert choquet(g, (2.0, 2.0)) == 2.0 * 0.5


def test_choquet_of_unanimity_is_a_min_over_the_generator():
    cap = unanimity(3, 0b011)
    assert choquet(cap.game, (0.7, 0.4, 0.9)) == 0.4
    assert choquet(cap.game, (0.1, 0.4, 0.0)) == 0.1


def test_choquet_rejects_wrong_length():
    with pytest.raises(DimensionMismatch):
        choquet(MU2.game, (0.1, 0.2, 0.3))


def test_choquet_matches_permutation_oracle_randomized():
    rng = random.Random(123)
    for _ in range(500):
        n = rng.randrange(1, 6)
        cap = random_capacity(rng, n)
        if rng.random() < 0.5:
            x = tuple(rng.random() for _ in range(n))
        else:
            x = tuple(rng.choice((0.0, 0.25, 0.5, 0.75, 1.0)) for _ in range(n))
        values = choquet_oracle(cap.game, x)
        assert max(values) - min(values) <= 1e-12
        got = choquet(cap.game, x)
        for v in values:
            assert got == pytest.approx(v, abs=1e-12)


@settings(max_examples=200, deadline=None)
@given(
    st.integers(1, 4),
    st.lists(st.floats(-3, 3, allow_nan=False), min_size=4, max_size=4),
    st.integers(0, 10**6),
)
def test_choquet_tie_invariance_on_signed_games(n, raw_x, seed):
    rng = random.Random(seed)
    g = Game((0.0, *(rng.uniform(-2, 2) for _ in range((1 << n) - 1))))
    x = tuple(raw_x[:n])
    for v in choquet_oracle(g, x):
        assert choquet(g, x) == pytest.approx(v, abs=1e-12)


def test_choquet_is_linear_in_the_game():
    rng = random.Random(5)
    for _ in range(200):
        n = rng.randrange(1, 5)
        size = 1 << n
        g1 = Game((0.0, *(rng.uniform(-3, 3) for _ in range(size - 1))))
        g2 = Game((0.0, *(rng.uniform(-3, 3) for _ in range(size - 1))))
        gamma, delta = rng.uniform(-2, 2), rng.uniform(-2, 2)
        x = tuple(rng.random() for _ in range(n))
        combined = linear_combine([(gamma, g1), (delta, g2)])
        lhs = choquet(combined, x)
        rhs = gamma * choquet(g1, x) + delta * choquet(g2, x)
        assert lhs == pytest.approx(rhs, abs=1e-12)


def test_choquet_exact_on_binary_profiles():
    rng = random.Random(11)
    for _ in range(100):
        n = rng.randrange(1, 6)
        cap = random_capacity(rng, n)
        for bits in range(1 << n):
            x = tuple(1.0 if bits >> i & 1 else 0.0 for i in range(n))
            assert choquet(cap.game, x) == cap[bits]


# -- weighted sums --


def test_weighted_sum_basics():
    assert weighted_sum((0.5, 0.5), (0.2, 0.8)) == pytest.approx(0.5)
    assert weighted_sum((1.0, 0.0), (0.2, 0.8)) == pytest.approx(0.2)
    with pytest.raises(DimensionMismatch):
        weighted_sum((0.5, 0.5), (1.0,))


def test_weighted_sum_equals_choquet_of_additive_capacity():
    rng = random.Random(29)
    for _ in range(100):
        n = rng.randrange(1, 6)
        raw = [rng.random() + 0.01 for _ in range(n)]
        total = sum(raw)
        w = [v / total for v in raw]
        w[-1] = 1.0 - sum(w[:-1])
        cap = additive_from_weights(w)
        x = tuple(rng.uniform(-2, 2) for _ in range(n))
        assert choquet(cap.game, x) == pytest.approx(weighted_sum(w, x), abs=1e-12)


# -- 0-1 capacities as order statistics --


def test_order_statistic_min_and_max_capacities():
    n = 4
    min_cap = unanimity(n, (1 << n) - 1)
    x = (0.3, 0.9, 0.1, 0.5)
    assert zero_one_order_statistic(min_cap, x) == (0.1, 1)
    max_values = [0.0] + [1.0] * ((1 << n) - 1)
    max_cap = make_capacity(n, max_values)
    assert zero_one_order_statistic(max_cap, x) == (0.9, n)


def test_order_statistic_matches_worked_example():
    # Ascending order is 0.4, 0.7, 0.9; only the full tail contains {0, 1},
    # so the selected position is the first.
    value, k = zero_one_order_statistic(unanimity(3, 0b011), (0.7, 0.4, 0.9))
    assert value == 0.4
    assert k == 1


def test_order_statistic_equals_choquet_bitwise_for_all_zero_one_capacities():
    rng = random.Random(17)
    for n in (2, 3):
        for cap in enumerate_zero_one_capacities(n):
            for _ in range(100):
                x = tuple(rng.uniform(-1, 2) for _ in range(n))
                value, k = zero_one_order_statistic(cap, x)
                assert value == choquet(cap.game, x)
                assert 1 <= k <= n
                assert value in x


def test_order_statistic_rejects_fractional_capacities():
    with pytest.raises(NotZeroOne):
        zero_one_order_statistic(MU2, (0.1, 0.2))


# -- axiom checks --


def test_pw_passes_for_choquet_on_random_capacities():
    rng = random.Random(3)
    for _ in range(20):
        cap = random_capacity(rng, rng.randrange(1, 5))
        report = check_pw(CHOQUET, cap)
        assert report.passed
        assert report.counterexamples == ()


def test_pw_fails_for_the_mean_at_an_asymmetric_singleton():
    report = check_pw(stock_aggregator("mean"), MU2)
    assert not report.passed
    assert len(report.counterexamples) == 1
    (ce,) = report.counterexamples
    assert ce.inputs == (0b01,)
    assert ce.expected == pytest.approx(0.3)
    assert ce.got == pytest.approx(0.5)
    assert ce.deviation == pytest.approx(0.2)


def test_pw_passes_for_min_under_the_unanimity_capacity_of_everyone():
    report = check_pw(stock_aggregator("min"), unanimity(3, 0b111))
    assert report.passed


def test_weak_spl_passes_for_choquet():
    rng = random.Random(31)
    for _ in range(5):
        cap = random_capacity(rng, 3)
        assert check_weak_spl(CHOQUET, cap).passed


def test_weak_spl_worked_two_level_case():
    # alpha 2, beta 1 on the second criterion alone: profile (1, 3).
    assert choquet(MU2.game, (1.0, 3.0)) == pytest.approx(2 * 0.5 + 1)


def test_weak_spl_fails_for_a_quadratic_aggregator():
    quad = Aggregator("quad", lambda g, x: sum(v * v for v in x))
    report = check_weak_spl(quad, MU2)
    assert not report.passed


def test_in_passes_for_choquet_and_max():
    rng = random.Random(41)
    cap = random_capacity(rng, 4)
    assert check_in(CHOQUET, cap).passed
    assert check_in(stock_aggregator("max"), cap).passed


def test_in_fails_for_a_nonmonotone_signed_game():
    g = Game((0.0, 0.7, 0.3, 0.6))  # value drops from {0} to {0,1}
    report = check_in(CHOQUET, g)
    assert not report.passed
    x, hi = report.counterexamples[0].inputs
    assert all(a <= b for a, b in zip(x, hi))
    assert choquet(g, x) > choquet(g, hi)


def test_lm_passes_for_choquet_with_signed_coefficients():
    pair = (MU2, additive_from_weights([0.5, 0.5]))
    report = check_lm(CHOQUET, pair)
    assert report.passed


def test_lm_worked_combination():
    combined = linear_combine([(2.0, MU2.game), (-1.0, additive_from_weights([0.5, 0.5]).game)])
    assert combined.values == pytest.approx((0.0, 0.1, 0.5, 1.0))
    lhs = choquet(combined, (0.2, 0.8))
    rhs = 2.0 * choquet(MU2.game, (0.2, 0.8)) - 1.0 * 0.5
    assert lhs == pytest.approx(0.5)
    assert lhs == pytest.approx(rhs, abs=1e-12)


def test_lm_identity_combination_holds_for_any_aggregator():
    cfg = AxiomCheckConfig(samples=200, gamma_range=(1.0, 1.0), delta_range=(0.0, 0.0))
    report = check_lm(stock_aggregator("mean"), (MU2, MU2), cfg)
    assert report.passed


def test_lm_fails_for_a_support_min_aggregator():
    def support_min(g, x):
        supported = [x[i] for i in range(g.n) if g.values[1 << i] > 0]
        return min(supported) if supported else 0.0

    report = check_lm(Aggregator("support-min", support_min), (MU2, additive_from_weights([0.5, 0.5])))
    assert not report.passed


def test_spl_passes_for_choquet():
    rng = random.Random(53)
    cap = random_capacity(rng, 3)
    assert check_spl(CHOQUET, cap).passed


def test_spl_reports_on_a_midpoint_median():
    def midpoint_median(g, x):
        ordered = sorted(x)
        mid = len(ordered) // 2
        if len(ordered) % 2:
            return ordered[mid]
        return 0.5 * (ordered[mid - 1] + ordered[mid])

    report = check_spl(Aggregator("median", midpoint_median), MU2)
    assert report.axiom == "SPL"
    assert isinstance(report.passed, bool)


def test_spl_is_stronger_than_weak_spl_on_binary_profiles():
    # Any weak-stability failure is an instance of full stability failing
    # on a binary profile, so a full-stability pass implies a weak pass.
    quad = Aggregator("quad", lambda g, x: sum(v * v for v in x))
    weak = check_weak_spl(quad, MU2)
    assert not weak.passed


# -- two-level profile identities --


def test_two_level_profiles_evaluate_affinely_in_the_capacity():
    rng = random.Random(61)
    for _ in range(200):
        n = rng.randrange(1, 5)
        cap = random_capacity(rng, n)
        alpha = rng.uniform(0.1, 4.0)
        beta = rng.uniform(-5.0, 5.0)
        for bits in range(1 << n):
            x = tuple(alpha + beta if bits >> i & 1 else beta for i in range(n))
            expected = alpha * cap[bits] + beta * cap[cap.full]
            assert choquet(cap.game, x) == pytest.approx(expected, abs=1e-9)


def test_single_criterion_difference_ratios_survive_rescaling():
    rng = random.Random(67)
    trials = 0
    while trials < 100:
        n = rng.randrange(2, 5)
        cap = random_capacity(rng, n)
        i = rng.randrange(n)
        if cap[1 << i] < 0.05:
            continue
        trials += 1
        a, b = rng.random(), rng.random()
        c, d = rng.random(), rng.random()
        if abs(c - d) < 0.05:
            continue
        alpha = rng.uniform(0.1, 4.0)
        beta = rng.uniform(-5.0, 5.0)

        def level(v):
            x = [beta] * n
            x[i] = alpha * v + beta
            return choquet(cap.game, x)

        ratio = (level(a) - level(b)) / (level(c) - level(d))
        assert ratio == pytest.approx((a - b) / (c - d), rel=1e-7, abs=1e-9)


def test_binary_difference_ratios_survive_measure_scaling():
    rng = random.Random(71)
    trials = 0
    while trials < 100:
        n = rng.randrange(2, 5)
        cap = random_capacity(rng, n)
        size = 1 << n
        A, B, C, D = (rng.randrange(size) for _ in range(4))
        if abs(cap[C] - cap[D]) < 0.05:
            continue
        trials += 1
        gamma = rng.choice((-1.0, 1.0)) * rng.uniform(0.2, 3.0)
        scaled = linear_combine([(gamma, cap.game)])
        alpha = rng.uniform(0.1, 4.0)
        beta = rng.uniform(-5.0, 5.0)

        def vertex(bits):
            x = tuple(alpha + beta if bits >> i & 1 else beta for i in range(n))
            return choquet(scaled, x)

        ratio = (vertex(A) - vertex(B)) / (vertex(C) - vertex(D))
        expected = (cap[A] - cap[B]) / (cap[C] - cap[D])
        assert ratio == pytest.approx(expected, rel=1e-7, abs=1e-9)


# -- the full characterization suite --


def test_suite_confirms_choquet_with_zero_deviation():
    summary = theorem1_suite(CHOQUET, AxiomCheckConfig(samples=400), n=3)
    assert summary.passed
    assert summary.choquet_deviation == 0.0
    for axiom in ("LM", "In", "PW", "weakSPL"):
        assert summary.report(axiom).passed


def test_suite_rejects_singleton_weight_sums_on_nonadditive_capacities():
    summary = theorem1_suite(
        stock_aggregator("wsum"), AxiomCheckConfig(samples=200), capacities=[MU2]
    )
    assert not summary.passed
    assert not summary.report("PW").passed
    assert summary.choquet_deviation is None


def test_suite_rejects_max_at_singleton_vertices():
    summary = theorem1_suite(
        stock_aggregator("max"), AxiomCheckConfig(samples=100), capacities=[MU2]
    )
    assert not summary.report("PW").passed
    bad_bits = {ce.inputs[0] for ce in summary.report("PW").counterexamples}
    assert 0b01 in bad_bits  # max(1, 0) = 1 against mu({0}) = 0.3


def test_suite_is_reproducible_for_a_fixed_seed():
    cfg = AxiomCheckConfig(samples=100, seed=99)
    first = theorem1_suite(CHOQUET, cfg, n=2)
    second = theorem1_suite(CHOQUET, cfg, n=2)
    assert first == second


# -- configuration and plumbing --


def test_config_validation():
    with pytest.raises(ValueError):
        AxiomCheckConfig(samples=0)
    with pytest.raises(ValueError):
        AxiomCheckConfig(alpha_range=(0.0, 1.0))
    with pytest.raises(ValueError):
        AxiomCheckConfig(tolerance=-1e-9)
    with pytest.raises(ValueError):
        AxiomCheckConfig(beta_range=(2.0, 1.0))


def test_stock_aggregator_names():
    for name in ("choquet", "wsum", "min", "max", "mean"):
        agg = stock_aggregator(name)
        assert agg.name == name
    with pytest.raises(KeyError):
        stock_aggregator("sugeno")


def test_random_capacity_is_valid():
    rng = random.Random(0)
    for _ in range(50):
        cap = random_capacity(rng, rng.randrange(1, 6))
        make_capacity(cap.n, cap.values)  # revalidates monotonicity exactly
