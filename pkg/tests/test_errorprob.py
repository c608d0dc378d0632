from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from findcode import (
    BlockCode,
    Channel,
    InvalidInputError,
    achieves_error,
    bsc,
    enumerate_full,
    error_profile,
    lambda_max,
    lambda_message,
)
from findcode.creal import dyadic_below

from oracles import brute_lambda, brute_lambda_max


@st.composite
def channels(draw, max_in=3, max_out=3, max_weight=12):
    M = draw(st.integers(1, max_in))
    N = draw(st.integers(1, max_out))
    rows = []
    for _ in range(M):
        weights = draw(st.lists(st.integers(0, max_weight), min_size=N, max_size=N).filter(any))
        total = sum(weights)
        rows.append([Fraction(w, total) for w in weights])
    return Channel.exact(rows)


@st.composite
def codes_for(draw, channel, max_n=3, max_m=3):
    M, N = channel.input_size, channel.output_size
    n = draw(st.integers(1, max_n))
    m = draw(st.integers(1, max_m))
    word = st.tuples(*[st.integers(1, M)] * n)
    encoder = draw(st.lists(word, min_size=m, max_size=m))
    decoder = draw(st.lists(st.integers(1, m), min_size=N**n, max_size=N**n))
    return BlockCode.build(encoder, decoder, M, N)


@st.composite
def channel_and_code(draw):
    channel = draw(channels())
    return channel, draw(codes_for(channel))


def test_repetition_example(repetition3, bsc_quarter):
    assert lambda_message(repetition3, bsc_quarter, 1) == Fraction(5, 32)
    assert lambda_max(repetition3, bsc_quarter) == Fraction(5, 32)
    assert error_profile(repetition3, bsc_quarter).to_json() == {
        "per_message": ["5/32", "5/32"],
        "lambda_max": "5/32",
    }


def test_identity_over_noiseless(identity_code, noiseless2):
    assert lambda_message(identity_code, noiseless2, 1) == 0
    assert lambda_max(identity_code, noiseless2) == 0


def test_erasure_example(repetition2_bec, bec_half):
    assert lambda_message(repetition2_bec, bec_half, 1) == 0
    assert lambda_message(repetition2_bec, bec_half, 2) == Fraction(1, 4)


@settings(max_examples=200, deadline=None)
@given(channel_and_code())
def test_matches_direct_enumeration(pair):
    channel, code = pair
    profile = error_profile(code, channel)
    for d in range(1, code.m + 1):
        value = profile.per_message[d - 1]
        assert value == brute_lambda(code.encoder, code.decoder, channel.rows, d)
        assert 0 <= value <= 1
    assert profile.lambda_max == max(profile.per_message)


def test_large_denominators_stay_exact():
    p = Fraction(1, 10**7 + 19)
    channel = bsc(p)
    code = BlockCode.build([(1, 1, 1), (2, 2, 2)], [1, 1, 1, 2, 1, 2, 2, 2], 2, 2)
    assert lambda_max(code, channel) == 3 * p**2 * (1 - p) + p**3


@settings(max_examples=40, deadline=None)
@given(channel_and_code(), st.sampled_from([0, 6, 20]))
def test_stream_mode_agrees_with_exact(pair, n):
    channel, code = pair
    exact = error_profile(code, channel)
    stream = error_profile(code, channel.as_stream())
    for e, s in zip(exact.per_message, stream.per_message):
        assert abs(s.query(n) - e) < Fraction(1, 2**n)
    assert abs(stream.lambda_max.query(n) - exact.lambda_max) < Fraction(1, 2**n)


@pytest.mark.parametrize("b, expected", [(2, False), (1, True), (0, True)])
def test_achieves_error_examples(repetition3, bsc_quarter, b, expected):
    assert achieves_error(repetition3, bsc_quarter, b) is expected


@pytest.mark.parametrize("b", [0, 3, 40])
def test_achieves_error_trivial_code(identity_code, noiseless2, b):
    assert achieves_error(identity_code, noiseless2, b)
    assert achieves_error(identity_code, noiseless2.as_stream(), b)


@settings(max_examples=100, deadline=None)
@given(channel_and_code(), st.integers(0, 12))
def test_achieves_error_sound_and_monotone(pair, b):
    channel, code = pair
    value = lambda_max(code, channel)
    if achieves_error(code, channel, b):
        assert value < Fraction(1, 2**b)
        for smaller in range(b):
            assert achieves_error(code, channel, smaller)


@settings(max_examples=40, deadline=None)
@given(channel_and_code(), st.integers(0, 10))
def test_stream_acceptance_is_sound(pair, b):
    channel, code = pair
    value = lambda_max(code, channel)
    if achieves_error(code, channel.as_stream(), b):
        assert value < Fraction(1, 2**b)
    if value < Fraction(1, 2 ** (b + 2)):
        assert achieves_error(code, channel.as_stream(), b)


@pytest.mark.parametrize("n", [1, 2])
def test_repeated_codewords_give_half(n, bsc_quarter):
    for code in enumerate_full(2, 2, 2, n):
        if not code.is_injective:
            assert lambda_max(code, bsc_quarter) >= Fraction(1, 2)
            assert brute_lambda_max(code.encoder, code.decoder, bsc_quarter.rows) >= Fraction(1, 2)


def test_errors(repetition3, bec_half, bsc_quarter):
    with pytest.raises(InvalidInputError):
        lambda_message(repetition3, bec_half, 1)
    with pytest.raises(InvalidInputError):
        lambda_message(repetition3, bsc_quarter, 3)
    with pytest.raises(InvalidInputError):
        lambda_message(repetition3, bsc_quarter, 0)


def test_stream_labels_serialise(identity_code, noiseless2):
    profile = error_profile(identity_code, noiseless2.as_stream())
    text = profile.to_json()
    assert set(text) == {"per_message", "lambda_max"}
    assert dyadic_below(profile.lambda_max, 30)
