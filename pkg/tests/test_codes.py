import itertools
import json
import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from findcode import (
    BlockCode,
    EnumerationCursor,
    InvalidInputError,
    ResourceLimitError,
    code_count,
    enumerate_full,
    enumerate_pruned,
    message_number,
    parse_code,
    rate_at_least,
)
from findcode.codes import hamming_decoder, rate_check

from oracles import all_codes, min_distance_decoder


def serialise(code: BlockCode) -> str:
    return json.dumps(code.to_json(), sort_keys=True)


@pytest.mark.parametrize("R, n, m", [(Fraction(1, 2), 3, 3), (Fraction(1), 4, 16), (Fraction(1, 8), 9, 3), (Fraction(1, 16), 9, 2)])
def test_message_number_examples(R, n, m):
    assert message_number(R, n) == m


@given(st.fractions(min_value=Fraction(1, 50), max_value=4, max_denominator=50), st.integers(1, 30))
def test_message_number_is_the_least_solution(R, n):
    m = message_number(R, n)
    assert m ** R.denominator >= 2 ** (n * R.numerator)
    assert (m - 1) ** R.denominator < 2 ** (n * R.numerator)


def test_message_number_guards():
    with pytest.raises(ResourceLimitError):
        message_number(Fraction(1000), 2000, bit_limit=10**5)
    with pytest.raises(InvalidInputError):
        message_number(Fraction(0), 3)


@pytest.mark.parametrize("m, n, R, expected", [(2, 3, Fraction(1, 3), True), (2, 3, Fraction(1, 2), False), (1, 5, Fraction(1, 100), False)])
def test_rate_at_least_examples(m, n, R, expected):
    code = BlockCode.build([(1,) * n] * m, [1] * 2**n, 2, 2)
    assert rate_at_least(code, R) is expected


def test_rate_check_record(repetition3):
    assert rate_check(repetition3, Fraction(1, 3)) == {"m_pow_den": "8", "two_pow_n_num": "8"}


@pytest.mark.parametrize("params, count", [((2, 2, 2, 1), 16), ((2, 2, 2, 3), 16384), ((3, 2, 1, 2), 9), ((2, 2, 1, 1), 2)])
def test_code_count_examples(params, count):
    assert code_count(*params) == count


def test_first_full_code():
    first = next(enumerate_full(2, 2, 2, 1))
    assert first.encoder == ((1,), (1,))
    assert first.decoder == (1, 1)


def test_single_message_full_enumeration():
    codes = list(enumerate_full(2, 2, 1, 1))
    assert [c.encoder for c in codes] == [((1,),), ((2,),)]
    assert all(c.decoder == (1, 1) for c in codes)


@pytest.mark.parametrize("M, N, m, n", [(2, 2, 2, 1), (2, 2, 2, 2), (2, 3, 2, 1), (1, 2, 2, 2), (3, 1, 2, 1)])
def test_full_enumeration_matches_itertools_order(M, N, m, n):
    mine = [(c.encoder, c.decoder) for c in enumerate_full(M, N, m, n)]
    assert mine == list(all_codes(M, N, m, n))
    assert len(set(mine)) == code_count(M, N, m, n)


def test_pruned_examples():
    only = list(enumerate_pruned(2, 2, 2, 1))
    assert len(only) == 1
    assert only[0].encoder == ((1,), (2,))
    assert only[0].decoder == (1, 2)
    assert sum(1 for _ in enumerate_pruned(2, 2, 2, 3)) == 28


def test_pruned_repetition_decoder_is_majority(repetition3):
    for code in enumerate_pruned(2, 2, 2, 3):
        if code.encoder == ((1, 1, 1), (2, 2, 2)):
            assert code.decoder == repetition3.decoder
            return
    pytest.fail("repetition pair not enumerated")


def test_pruned_exhausts_when_no_injective_encoder():
    assert list(enumerate_pruned(2, 2, 5, 2)) == []


@pytest.mark.parametrize("M, N, m, n", [(2, 2, 2, 2), (2, 2, 3, 3), (3, 3, 2, 2), (2, 3, 3, 2)])
def test_pruned_family_structure(M, N, m, n):
    codes = list(enumerate_pruned(M, N, m, n))
    assert len(codes) == math.comb(M**n, m)
    assert len({serialise(c) for c in codes}) == len(codes)
    for code in codes:
        assert code.is_injective
        assert list(code.encoder) == sorted(code.encoder)
        assert code.decoder == min_distance_decoder(code.encoder, N, n)
    assert [c.encoder for c in codes] == list(
        itertools.combinations(itertools.product(range(1, M + 1), repeat=n), m)
    )


@pytest.mark.parametrize("n", [1, 2])
def test_pruned_is_a_subset_of_full(n):
    full = {serialise(c) for c in enumerate_full(2, 2, 2, n)}
    assert {serialise(c) for c in enumerate_pruned(2, 2, 2, n)} <= full


def test_pruned_rejects_other_channel_kinds():
    with pytest.raises(InvalidInputError):
        enumerate_pruned(2, 2, 2, 2, channel_kind="ml")


@given(st.data())
def test_cursor_positions_are_deterministic(data):
    mode = data.draw(st.sampled_from(["full", "pruned"]))
    cursor = EnumerationCursor(2, 2, 2, 2, mode)
    pos = data.draw(st.integers(0, cursor.total - 1))
    a = EnumerationCursor(2, 2, 2, 2, mode).seek(pos)
    b = EnumerationCursor(2, 2, 2, 2, mode)
    for _ in range(pos):
        next(b)
    assert serialise(next(a)) == serialise(next(b))
    assert serialise(cursor.candidate_at(pos)) == serialise(EnumerationCursor(2, 2, 2, 2, mode).candidate_at(pos))


def test_candidate_at_bounds():
    with pytest.raises(IndexError):
        EnumerationCursor(2, 2, 2, 1).candidate_at(16)


def test_hamming_decoder_matches_oracle():
    encoder = ((1, 2, 1), (2, 2, 2), (1, 1, 2))
    assert hamming_decoder(encoder, 2, 3) == min_distance_decoder(encoder, 2, 3)


def test_code_json_round_trip(repetition3):
    text = json.dumps(repetition3.to_json())
    assert parse_code(text) == repetition3
    assert repetition3.decode((1, 2, 2)) == 2


@pytest.mark.parametrize(
    "document",
    [
        {"m": 2, "n": 1, "M": 2, "N": 2, "encoder": [[1], [3]], "decoder": [1, 2]},
        {"m": 2, "n": 1, "M": 2, "N": 2, "encoder": [[1]], "decoder": [1, 2]},
        {"m": 2, "n": 1, "M": 2, "N": 2, "encoder": [[1], [2]], "decoder": [1, 2, 1]},
        {"m": 2, "n": 1, "M": 2, "N": 2, "encoder": [[1], [2]], "decoder": [0, 2]},
        {"m": 2, "n": 1, "M": 2, "N": 2, "encoder": [[1, 1], [2]], "decoder": [1, 2]},
        {"m": 2, "n": 1, "M": 2, "N": 2, "encoder": [[1], [2]]},
        {"m": 2, "n": 1, "M": 2, "N": 2, "encoder": [[1], [2]], "decoder": [1, 2], "x": 0},
        {"m": "2", "n": 1, "M": 2, "N": 2, "encoder": [[1], [2]], "decoder": [1, 2]},
        {"m": 2, "n": 1, "M": 2, "N": 2, "encoder": [["a"], [2]], "decoder": [1, 2]},
    ],
)
def test_parse_code_rejects(document):
    with pytest.raises(InvalidInputError):
        parse_code(document)
