"""Block codes and their lazy enumeration.

A code with ``m`` messages and blocklength ``n`` is a pair of tables: the
encoder lists one codeword per message, the decoder lists one message per
output word, indexed by the output word's lexicographic rank.  Enumeration is
position-addressable so disjoint position ranges can be scanned by separate
workers and still agree on which candidate sits where.
"""
from __future__ import annotations

import json
import math
import threading
from dataclasses import dataclass, field
from typing import Any, Iterator, Optional, Union

import numpy as np

from .channel import Channel, lex_order, word_at
from .exceptions import InvalidInputError, ResourceLimitError
from .rational import as_rational

DEFAULT_BIT_LIMIT = 10**6


@dataclass(frozen=True)
class BlockCode:
    m: int
    n: int
    M: int
    N: int
    encoder: tuple[tuple[int, ...], ...]
    decoder: tuple[int, ...]

    def __post_init__(self) -> None:
        if min(self.m, self.n, self.M, self.N) < 1:
            raise InvalidInputError("m, n, M, N must all be positive")
        if len(self.encoder) != self.m:
            raise InvalidInputError(f"encoder needs {self.m} codewords")
        for word in self.encoder:
            if len(word) != self.n or not all(1 <= s <= self.M for s in word):
                raise InvalidInputError(f"codeword {word} is not a word of [{self.M}]^{self.n}")
        if len(self.decoder) != self.N**self.n:
            raise InvalidInputError(f"decoder needs {self.N ** self.n} entries")
        if not all(1 <= d <= self.m for d in self.decoder):
            raise InvalidInputError(f"decoder entries must lie in 1..{self.m}")

    @classmethod
    def build(cls, encoder, decoder, M: int, N: int) -> "BlockCode":
        encoder = tuple(tuple(int(s) for s in word) for word in encoder)
        if not encoder:
            raise InvalidInputError("encoder must list at least one codeword")
        return cls(len(encoder), len(encoder[0]), M, N, encoder, tuple(int(d) for d in decoder))

    def decode(self, word) -> int:
        return self.decoder[lex_order(word, self.N) - 1]

    @property
    def is_injective(self) -> bool:
        return len(set(self.encoder)) == self.m

    def rate(self) -> float:
        return math.log2(self.m) / self.n

    def to_json(self) -> dict[str, Any]:
        return {
            "m": self.m,
            "n": self.n,
            "M": self.M,
            "N": self.N,
            "encoder": [list(word) for word in self.encoder],
            "decoder": list(self.decoder),
        }


_CODE_FIELDS = {"m", "n", "M", "N", "encoder", "decoder"}


def parse_code(document: Union[str, bytes, dict]) -> BlockCode:
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise InvalidInputError(f"code file is not valid JSON: {exc}") from None
    if not isinstance(document, dict):
        raise InvalidInputError("code document must be a JSON object")
    if set(document) != _CODE_FIELDS:
        raise InvalidInputError(f"code document needs exactly the fields {sorted(_CODE_FIELDS)}")
    for key in ("m", "n", "M", "N"):
        if not isinstance(document[key], int) or isinstance(document[key], bool):
            raise InvalidInputError(f"{key} must be an integer")
    try:
        encoder = tuple(tuple(int(s) for s in word) for word in document["encoder"])
        decoder = tuple(int(d) for d in document["decoder"])
    except (TypeError, ValueError):
        raise InvalidInputError("encoder and decoder must be integer tables") from None
    return BlockCode(document["m"], document["n"], document["M"], document["N"], encoder, decoder)


# -- rates and counts -------------------------------------------------------

def message_number(R, n: int, bit_limit: int = DEFAULT_BIT_LIMIT) -> int:
    """``ceil(2**(n R))``: least ``i`` with ``2**(n num) <= i**den``."""
    R = as_rational(R)
    if R <= 0:
        raise InvalidInputError("rate must be positive")
    if n < 1:
        raise InvalidInputError("blocklength must be positive")
    exponent, den = n * R.numerator, R.denominator
    if exponent > bit_limit:
        raise ResourceLimitError(
            f"2**{exponent} exceeds the {bit_limit}-bit limit", bits=exponent, bit_limit=bit_limit
        )
    target = 1 << exponent
    lo, hi = 1, 1 << -(-exponent // den)  # hi**den >= 2**exponent
    while lo < hi:
        mid = (lo + hi) // 2
        if mid**den >= target:
            hi = mid
        else:
            lo = mid + 1
    return lo


def rate_check(code: BlockCode, R) -> dict[str, str]:
    R = as_rational(R)
    return {
        "m_pow_den": str(code.m**R.denominator),
        "two_pow_n_num": str(1 << (code.n * R.numerator)),
    }


def rate_at_least(code: BlockCode, R) -> bool:
    """``log2(m)/n >= R`` decided with integers only."""
    R = as_rational(R)
    if R <= 0:
        return True
    return code.m**R.denominator >= 1 << (code.n * R.numerator)


def code_count(M: int, N: int, m: int, n: int) -> int:
    if min(M, N, m, n) < 1:
        raise InvalidInputError("all parameters must be positive")
    return M ** (m * n) * m ** (N**n)


def pruned_count(M: int, m: int, n: int) -> int:
    return math.comb(M**n, m)


# -- enumeration ------------------------------------------------------------

def _digits(value: int, base: int, length: int) -> list[int]:
    out = [0] * length
    for k in range(length - 1, -1, -1):
        value, out[k] = divmod(value, base)
    return out


def _unrank_combination(rank: int, universe: int, size: int) -> list[int]:
    """``rank``-th (0-based) increasing ``size``-subset of ``range(universe)``."""
    combo = []
    start = 0
    for slot in range(size, 0, -1):
        for c in range(start, universe):
            block = math.comb(universe - c - 1, slot - 1)
            if rank < block:
                combo.append(c)
                start = c + 1
                break
            rank -= block
    return combo


class HammingDecoderTable:
    """Cached distance vectors for minimum-distance decoding at fixed n."""

    def __init__(self, M: int, N: int, n: int) -> None:
        self.M, self.N, self.n = M, N, n
        outputs = np.array(_digits_table(N, n), dtype=np.int16) + 1
        self._outputs = outputs
        self._cache: dict[int, np.ndarray] = {}
        self._lock = threading.Lock()

    def distances(self, index: int) -> np.ndarray:
        """Hamming distances from every output word to codeword ``index`` (0-based)."""
        with self._lock:
            hit = self._cache.get(index)
        if hit is None:
            word = np.array(word_at(index + 1, self.M, self.n), dtype=np.int16)
            hit = (self._outputs != word).sum(axis=1).astype(np.int16)
            with self._lock:
                self._cache[index] = hit
        return hit

    def decoder(self, indices: list[int]) -> tuple[int, ...]:
        stacked = np.stack([self.distances(i) for i in indices])
        # argmin keeps the first minimum, i.e. the smallest message index
        return tuple((np.argmin(stacked, axis=0) + 1).tolist())


def _digits_table(base: int, n: int) -> np.ndarray:
    ranks = np.arange(base**n)
    return np.stack([(ranks // base ** (n - 1 - k)) % base for k in range(n)], axis=1)


@dataclass
class EnumerationCursor:
    """Position in the canonical enumeration of ``(m, n)`` codes.

    Full mode orders codes by the encoder table read as one flat tuple, then
    by the decoder table.  Pruned mode lists each strictly increasing
    ``m``-tuple of distinct codewords once, paired with its minimum Hamming
    distance decoder.
    """

    M: int
    N: int
    m: int
    n: int
    mode: str = "full"
    position: int = 0
    _hamming: Optional[HammingDecoderTable] = field(default=None, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.mode not in ("full", "pruned"):
            raise InvalidInputError(f"unknown enumeration mode {self.mode!r}")
        if min(self.M, self.N, self.m, self.n) < 1:
            raise InvalidInputError("all parameters must be positive")

    @property
    def total(self) -> int:
        if self.mode == "full":
            return code_count(self.M, self.N, self.m, self.n)
        return pruned_count(self.M, self.m, self.n)

    def candidate_at(self, position: int) -> BlockCode:
        if not 0 <= position < self.total:
            raise IndexError(position)
        if self.mode == "full":
            return self._full_at(position)
        return self._pruned_from(_unrank_combination(position, self.M**self.n, self.m))

    def _full_at(self, position: int) -> BlockCode:
        outputs = self.N**self.n
        enc_rank, dec_rank = divmod(position, self.m**outputs)
        flat = _digits(enc_rank, self.M, self.m * self.n)
        encoder = tuple(
            tuple(s + 1 for s in flat[i * self.n:(i + 1) * self.n]) for i in range(self.m)
        )
        decoder = tuple(d + 1 for d in _digits(dec_rank, self.m, outputs))
        return BlockCode(self.m, self.n, self.M, self.N, encoder, decoder)

    def _pruned_from(self, combo: list[int]) -> BlockCode:
        if self._hamming is None:
            self._hamming = HammingDecoderTable(self.M, self.N, self.n)
        encoder = tuple(word_at(c + 1, self.M, self.n) for c in combo)
        return BlockCode(self.m, self.n, self.M, self.N, encoder, self._hamming.decoder(combo))

    def seek(self, position: int) -> "EnumerationCursor":
        self.position = position
        return self

    def __iter__(self) -> Iterator[BlockCode]:
        return self

    def __next__(self) -> BlockCode:
        if self.position >= self.total:
            raise StopIteration
        code = self.candidate_at(self.position)
        self.position += 1
        return code


def enumerate_full(M: int, N: int, m: int, n: int, start: int = 0) -> EnumerationCursor:
    return EnumerationCursor(M, N, m, n, "full", start)


def enumerate_pruned(
    M: int, N: int, m: int, n: int, start: int = 0, channel_kind: str = "hamming"
) -> EnumerationCursor:
    if channel_kind != "hamming":
        raise InvalidInputError("pruned enumeration supports channel kind 'hamming' only")
    return EnumerationCursor(M, N, m, n, "pruned", start)


def hamming_decoder(encoder, N: int, n: int) -> tuple[int, ...]:
    """Minimum-distance decoder table, ties to the smallest message index."""
    table = []
    for rank in range(1, N**n + 1):
        y = word_at(rank, N, n)
        dists = [sum(a != b for a, b in zip(y, word)) for word in encoder]
        table.append(dists.index(min(dists)) + 1)
    return tuple(table)


def channel_matches(code: BlockCode, channel: Channel) -> None:
    if (code.M, code.N) != (channel.input_size, channel.output_size):
        raise InvalidInputError(
            f"code alphabets {code.M}x{code.N} do not match channel "
            f"{channel.input_size}x{channel.output_size}"
        )
