import json
import math
from fractions import Fraction

import numpy as np
import pytest

from findcode import InvalidInputError, bsc, lambda_message, simulate
from findcode.simulate import BLOCK_TRIALS, cdf_thresholds, sample_symbols, substream

TWO64 = 1 << 64


def test_thresholds_are_scaled_cumulative_sums():
    t = cdf_thresholds([Fraction(1, 4), Fraction(3, 4)])
    assert t.tolist() == [1 << 62]
    t = cdf_thresholds([Fraction(1, 3), Fraction(1, 3), Fraction(1, 3)])
    assert t.tolist() == [-(-TWO64 // 3), -(-2 * TWO64 // 3)]


def test_sampling_boundaries():
    t = cdf_thresholds([Fraction(1, 4), Fraction(3, 4)])
    draws = np.array([0, (1 << 62) - 1, 1 << 62, TWO64 - 1], dtype=np.uint64)
    assert sample_symbols(t, draws).tolist() == [0, 0, 1, 1]


def test_zero_probability_symbols_are_never_drawn():
    t = cdf_thresholds([Fraction(1, 2), Fraction(0), Fraction(1, 2)])
    draws = np.array([0, (1 << 63) - 1, 1 << 63, TWO64 - 1], dtype=np.uint64)
    assert sample_symbols(t, draws).tolist() == [0, 0, 2, 2]


def test_noiseless_channel_never_errs(identity_code, noiseless2):
    result = simulate(identity_code, noiseless2, 5000, seed=1)
    assert result.per_message_errors == (0, 0)
    assert result.per_message_trials == (5000, 5000)


def test_erasure_code_rates(repetition2_bec, bec_half):
    trials = 40_000
    result = simulate(repetition2_bec, bec_half, trials, seed=7)
    assert result.per_message_errors[0] == 0
    p = 0.25
    sigma = math.sqrt(p * (1 - p) / trials)
    assert abs(result.per_message_errors[1] / trials - p) <= 4 * sigma


@pytest.mark.parametrize("trials", [0, 1, BLOCK_TRIALS - 1, BLOCK_TRIALS, 3 * BLOCK_TRIALS + 5])
def test_results_do_not_depend_on_workers(repetition3, bsc_quarter, trials):
    runs = {json.dumps(simulate(repetition3, bsc_quarter, trials, 99, workers=w).to_json()) for w in (1, 3, 8)}
    assert len(runs) == 1


def test_different_seeds_differ(repetition3, bsc_quarter):
    a = simulate(repetition3, bsc_quarter, 20_000, seed=1)
    b = simulate(repetition3, bsc_quarter, 20_000, seed=2)
    assert a.per_message_errors != b.per_message_errors


def test_json_shape(repetition3, bsc_quarter):
    out = simulate(repetition3, bsc_quarter, 10, seed=3).to_json()
    assert set(out) == {"per_message_trials", "per_message_errors", "empirical_rates", "seed"}
    assert out["seed"] == 3


def test_invalid_inputs(repetition3, bsc_quarter, bec_half):
    with pytest.raises(InvalidInputError):
        simulate(repetition3, bsc_quarter.as_stream(), 10, seed=0)
    with pytest.raises(InvalidInputError):
        simulate(repetition3, bsc_quarter, -1, seed=0)
    with pytest.raises(InvalidInputError):
        simulate(repetition3, bsc_quarter, 10, seed=-5)
    with pytest.raises(InvalidInputError):
        simulate(repetition3, bec_half, 10, seed=0)


def test_zero_trials_give_zero_counts(repetition3, bsc_quarter):
    result = simulate(repetition3, bsc_quarter, 0, seed=11)
    assert result.per_message_errors == (0, 0)
    assert result.per_message_trials == (0, 0)


@pytest.mark.parametrize("case", ["rep3-bsc4", "identity-bsc100", "rep2-bec2"])
def test_standard_set_within_four_sigma(case, repetition3, identity_code, repetition2_bec, bsc_quarter, bec_half):
    code, channel = {
        "rep3-bsc4": (repetition3, bsc_quarter),
        "identity-bsc100": (identity_code, bsc(Fraction(1, 100))),
        "rep2-bec2": (repetition2_bec, bec_half),
    }[case]
    trials = 100_000
    result = simulate(code, channel, trials, seed=2718)
    for d, errors in enumerate(result.per_message_errors, start=1):
        p = float(lambda_message(code, channel, d))
        sigma = math.sqrt(p * (1 - p) / trials)
        assert abs(errors / trials - p) <= 4 * sigma


@pytest.mark.parametrize(
    "row",
    [
        [Fraction(3, 4), Fraction(1, 4)],
        [Fraction(1, 2), Fraction(0), Fraction(1, 2)],
        [Fraction(1, 3), Fraction(1, 6), Fraction(1, 2)],
        [Fraction(1, 100), Fraction(99, 100)],
    ],
)
def test_sampled_symbol_frequencies(row):
    draws = 1_000_000
    symbols = sample_symbols(cdf_thresholds(row), substream(31337, 0, 0).random_raw(draws))
    counts = np.bincount(symbols, minlength=len(row))
    for count, p in zip(counts, row):
        p = float(p)
        sigma = math.sqrt(p * (1 - p) / draws)
        assert abs(count / draws - p) <= 4 * sigma
