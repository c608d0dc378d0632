"""Block error probabilities of a code over a channel.

For message ``d`` the error probability is the total channel probability of
the output words that the decoder does not map back to ``d`` when ``d``'s
codeword is sent.  Exact channels give exact rationals; stream channels give
computable reals assembled from ``cr_add``/``cr_mul``/``cr_max``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

import numpy as np

from .channel import Channel, all_words
from .codes import BlockCode, channel_matches
from .creal import Budget, ComputableReal, cr_from_rational, cr_max, cr_mul, cr_sum, dyadic_below
from .exceptions import InvalidInputError
from .rational import dyadic, format_rational

Value = Union[Fraction, ComputableReal]

_INT64_SAFE = 1 << 62


@dataclass(frozen=True)
class ErrorProfile:
    per_message: tuple[Value, ...]
    lambda_max: Value

    def to_json(self) -> dict:
        if isinstance(self.lambda_max, Fraction):
            return {
                "per_message": [format_rational(v) for v in self.per_message],
                "lambda_max": format_rational(self.lambda_max),
            }
        return {
            "per_message": [v.label for v in self.per_message],
            "lambda_max": self.lambda_max.label,
        }


class ExactEvaluator:
    """Exact error probabilities for one exact channel at one blocklength.

    The channel is scaled to integers over a common denominator ``L`` so a
    row of the Kronecker power is an integer vector over ``L**n``; rows are
    cached by codeword and decoding masks are applied with numpy.
    """

    def __init__(self, channel: Channel, n: int) -> None:
        if not channel.is_exact:
            raise InvalidInputError("exact evaluation needs an exact channel")
        self.channel = channel
        self.n = n
        L, A = channel.integer_form
        self.scale = L**n
        dtype = np.int64 if self.scale < _INT64_SAFE else object
        self._rows = [np.array(row, dtype=dtype) for row in A]
        self._cache: dict[tuple[int, ...], np.ndarray] = {}

    def row(self, word: tuple[int, ...]) -> np.ndarray:
        """Scaled transition probabilities from ``word`` to every output word."""
        hit = self._cache.get(word)
        if hit is None:
            if len(word) == 1:
                hit = self._rows[word[0] - 1]
            else:
                hit = np.outer(self.row(word[:-1]), self._rows[word[-1] - 1]).ravel()
            self._cache[word] = hit
        return hit

    def error_numerators(self, code: BlockCode) -> list[int]:
        decoder = np.asarray(code.decoder)
        return [
            int(self.row(word)[decoder != d].sum())
            for d, word in enumerate(code.encoder, start=1)
        ]

    def lambda_message(self, code: BlockCode, d: int) -> Fraction:
        row = self.row(code.encoder[d - 1])
        return Fraction(int(row[np.asarray(code.decoder) != d].sum()), self.scale)

    def lambda_max(self, code: BlockCode) -> Fraction:
        return Fraction(max(self.error_numerators(code)), self.scale)

    def profile(self, code: BlockCode) -> ErrorProfile:
        values = tuple(Fraction(v, self.scale) for v in self.error_numerators(code))
        return ErrorProfile(values, max(values))

    def achieves(self, code: BlockCode, b: int) -> bool:
        # lambda_max < 2**-(b+1)  <=>  numerator * 2**(b+1) < L**n
        return max(self.error_numerators(code)) << (b + 1) < self.scale


class StreamEvaluator:
    """Error probabilities as computable reals, sharing prefix products."""

    def __init__(self, channel: Channel, n: int) -> None:
        self.channel = channel.as_stream()
        self.n = n
        self._products: dict[tuple, ComputableReal] = {}

    def transition(self, x: tuple[int, ...], y: tuple[int, ...]) -> ComputableReal:
        key = (x, y)
        hit = self._products.get(key)
        if hit is None:
            entry = self.channel.entry(x[-1], y[-1])
            hit = entry if len(x) == 1 else cr_mul(self.transition(x[:-1], y[:-1]), entry)
            self._products[key] = hit
        return hit

    def lambda_message(self, code: BlockCode, d: int) -> ComputableReal:
        word = code.encoder[d - 1]
        terms = [
            self.transition(word, y)
            for y, decoded in zip(all_words(code.N, code.n), code.decoder)
            if decoded != d
        ]
        return cr_sum(terms)

    def profile(self, code: BlockCode) -> ErrorProfile:
        values = tuple(self.lambda_message(code, d) for d in range(1, code.m + 1))
        worst = cr_from_rational(Fraction(0))
        for value in values:
            worst = cr_max(worst, value)
        return ErrorProfile(values, worst)

    def lambda_max(self, code: BlockCode) -> ComputableReal:
        return self.profile(code).lambda_max

    def achieves(self, code: BlockCode, b: int, budget: Optional[Budget] = None) -> bool:
        return dyadic_below(self.lambda_max(code), b, budget)


def evaluator(channel: Channel, n: int):
    return ExactEvaluator(channel, n) if channel.is_exact else StreamEvaluator(channel, n)


def _check(code: BlockCode, channel: Channel, d: Optional[int] = None) -> None:
    channel_matches(code, channel)
    if d is not None and not 1 <= d <= code.m:
        raise InvalidInputError(f"message {d} outside 1..{code.m}")


def lambda_message(code: BlockCode, channel: Channel, d: int) -> Value:
    _check(code, channel, d)
    return evaluator(channel, code.n).lambda_message(code, d)


def error_profile(code: BlockCode, channel: Channel) -> ErrorProfile:
    _check(code, channel)
    return evaluator(channel, code.n).profile(code)


def lambda_max(code: BlockCode, channel: Channel) -> Value:
    return error_profile(code, channel).lambda_max


def achieves_error(
    code: BlockCode, channel: Channel, b: int, budget: Optional[Budget] = None
) -> bool:
    """Sound acceptance test: True implies ``lambda_max < 2**-b``.

    Exact channels compare ``lambda_max < 2**-(b+1)`` directly; stream
    channels query at precision ``b + 2`` against ``2**-(b+1)``.
    """
    _check(code, channel)
    if channel.is_exact:
        return lambda_max(code, channel) < dyadic(b + 1)
    return StreamEvaluator(channel, code.n).achieves(code, b, budget)
