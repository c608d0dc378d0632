"""Discrete memoryless channels as stochastic matrices.

Symbols are 1-based throughout (``[k] = {1..k}``) and words of length n are
ranked lexicographically by :func:`lex_order`, so row ``i`` of a Kronecker
power belongs to the ``i``-th input word.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from itertools import product
from typing import Any, Sequence, Union

from .creal import ComputableReal, cr_from_rational, cr_mul, cr_sum, parse_expression
from .exceptions import InvalidInputError, ResourceLimitError
from .rational import dyadic, parse_rational

DEFAULT_CELL_LIMIT = 2**26
STREAM_CHECK_PRECISION = 20

Entry = Union[Fraction, ComputableReal]


def lex_order(word: Sequence[int], M: int) -> int:
    """1-based rank of ``word`` among all words of its length over ``[M]``."""
    rank = 0
    for symbol in word:
        if not 1 <= symbol <= M:
            raise InvalidInputError(f"symbol {symbol} outside 1..{M}")
        rank = rank * M + (symbol - 1)
    return rank + 1


def word_at(rank: int, M: int, n: int) -> tuple[int, ...]:
    """Inverse of :func:`lex_order`."""
    if not 1 <= rank <= M**n:
        raise InvalidInputError(f"rank {rank} outside 1..{M}**{n}")
    rank -= 1
    digits = [0] * n
    for k in range(n - 1, -1, -1):
        rank, digits[k] = divmod(rank, M)
    return tuple(d + 1 for d in digits)


def all_words(M: int, n: int):
    """Words of ``[M]**n`` in lexicographic order."""
    return product(range(1, M + 1), repeat=n)


@dataclass(frozen=True)
class Channel:
    input_size: int
    output_size: int
    rows: tuple[tuple[Entry, ...], ...]
    mode: str  # "exact" | "stream"

    def __post_init__(self) -> None:
        if self.mode not in ("exact", "stream"):
            raise InvalidInputError(f"unknown channel mode {self.mode!r}")
        if self.input_size < 1 or self.output_size < 1:
            raise InvalidInputError("alphabet sizes must be positive")
        if len(self.rows) != self.input_size:
            raise InvalidInputError(
                f"expected {self.input_size} rows, found {len(self.rows)}"
            )
        for i, row in enumerate(self.rows, start=1):
            if len(row) != self.output_size:
                raise InvalidInputError(
                    f"row {i} has {len(row)} entries, expected {self.output_size}"
                )
        if self.mode == "exact":
            self._check_exact()
        else:
            self._check_stream()

    def _check_exact(self) -> None:
        for i, row in enumerate(self.rows, start=1):
            for value in row:
                if not isinstance(value, Fraction):
                    raise InvalidInputError("exact channels hold rationals only")
                if not 0 <= value <= 1:
                    raise InvalidInputError(f"row {i}: entry {value} outside [0, 1]")
            total = sum(row, Fraction(0))
            if total != 1:
                raise InvalidInputError(f"row {i} sums to {total}, not 1")

    def _check_stream(self) -> None:
        # exact checks are undecidable here; accept within 2**-20
        n = STREAM_CHECK_PRECISION
        slack = dyadic(n)
        for i, row in enumerate(self.rows, start=1):
            for value in row:
                if not isinstance(value, ComputableReal):
                    raise InvalidInputError("stream channels hold computable reals only")
                q = value.query(n)
                if q < -slack or q > 1 + slack:
                    raise InvalidInputError(f"row {i}: entry {value.label} outside [0, 1]")
            total = cr_sum(list(row)).query(n)
            if abs(total - 1) >= slack:
                raise InvalidInputError(f"row {i} does not sum to 1 (approx. {total})")

    @classmethod
    def exact(cls, rows: Sequence[Sequence[Any]]) -> "Channel":
        parsed = tuple(tuple(_to_fraction(v) for v in row) for row in rows)
        if not parsed:
            raise InvalidInputError("channel needs at least one row")
        return cls(len(parsed), len(parsed[0]), parsed, "exact")

    @classmethod
    def stream(cls, rows: Sequence[Sequence[ComputableReal]]) -> "Channel":
        parsed = tuple(tuple(rows_i) for rows_i in rows)
        if not parsed:
            raise InvalidInputError("channel needs at least one row")
        return cls(len(parsed), len(parsed[0]), parsed, "stream")

    @property
    def is_exact(self) -> bool:
        return self.mode == "exact"

    def entry(self, x: int, y: int) -> Entry:
        """Transition probability ``p(y | x)`` with 1-based symbols."""
        return self.rows[x - 1][y - 1]

    @cached_property
    def integer_form(self) -> tuple[int, tuple[tuple[int, ...], ...]]:
        """Common denominator ``L`` and integer matrix with ``H = A / L``."""
        if not self.is_exact:
            raise InvalidInputError("integer form exists for exact channels only")
        L = reduce(math.lcm, (v.denominator for row in self.rows for v in row), 1)
        ints = tuple(tuple(v.numerator * (L // v.denominator) for v in row) for row in self.rows)
        return L, ints

    def as_stream(self) -> "Channel":
        if not self.is_exact:
            return self
        return Channel.stream([[cr_from_rational(v) for v in row] for row in self.rows])

    def to_json(self) -> dict[str, Any]:
        if self.is_exact:
            rows = [[str(v) for v in row] for row in self.rows]
        else:
            rows = [[v.label for v in row] for row in self.rows]
        return {"input_size": self.input_size, "output_size": self.output_size, "rows": rows}


def _to_fraction(value: Any) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return parse_rational(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInputError(str(exc)) from None
    raise InvalidInputError(f"cannot read channel entry {value!r}")


_FIELDS = {"input_size", "output_size", "rows"}


def parse_channel(document: Union[str, bytes, dict]) -> Channel:
    """Build a validated channel from its JSON document (text or decoded)."""
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise InvalidInputError(f"channel file is not valid JSON: {exc}") from None
    if not isinstance(document, dict):
        raise InvalidInputError("channel document must be a JSON object")
    unknown = set(document) - _FIELDS
    if unknown:
        raise InvalidInputError(f"unknown channel fields: {sorted(unknown)}")
    missing = _FIELDS - set(document)
    if missing:
        raise InvalidInputError(f"missing channel fields: {sorted(missing)}")
    M, N, rows = document["input_size"], document["output_size"], document["rows"]
    if not (isinstance(M, int) and isinstance(N, int)) or isinstance(M, bool) or isinstance(N, bool):
        raise InvalidInputError("input_size and output_size must be integers")
    if not isinstance(rows, list) or len(rows) != M:
        raise InvalidInputError(f"expected {M} rows")
    for row in rows:
        if not isinstance(row, list) or len(row) != N:
            raise InvalidInputError(f"every row needs exactly {N} entries")
        if not all(isinstance(v, str) for v in row):
            raise InvalidInputError("channel entries must be strings")
    streamed = [v.lstrip().startswith("(") for row in rows for v in row]
    if any(streamed) and not all(streamed):
        raise InvalidInputError("channel mixes rational and stream entries")
    if streamed and all(streamed):
        parsed = [[parse_expression(v) for v in row] for row in rows]
        return Channel(M, N, tuple(tuple(r) for r in parsed), "stream")
    return Channel(M, N, tuple(tuple(_to_fraction(v) for v in row) for row in rows), "exact")


def kron_power(channel: Channel, n: int, cell_limit: int = DEFAULT_CELL_LIMIT) -> Channel:
    """Transition matrix of ``n`` independent uses of ``channel``."""
    if n < 1:
        raise InvalidInputError("Kronecker power needs n >= 1")
    M, N = channel.input_size, channel.output_size
    cells = M**n * N**n
    if cells > cell_limit:
        raise ResourceLimitError(
            f"Kronecker power has {cells} cells, limit is {cell_limit}",
            cells=cells,
            cell_limit=cell_limit,
        )
    rows = channel.rows
    for _ in range(n - 1):
        rows = tuple(
            tuple(_times(a, b) for a in big for b in small)
            for big in rows
            for small in channel.rows
        )
    return Channel(M**n, N**n, rows, channel.mode)


def _times(a: Entry, b: Entry) -> Entry:
    if isinstance(a, Fraction):
        return a * b
    return cr_mul(a, b)


# -- common channels -------------------------------------------------------

def bsc(p) -> Channel:
    p = _to_fraction(p)
    return Channel.exact([[1 - p, p], [p, 1 - p]])


def bec(e) -> Channel:
    """Binary erasure channel; output symbol 3 is the erasure."""
    e = _to_fraction(e)
    return Channel.exact([[1 - e, 0, e], [0, 1 - e, e]])


def noiseless(M: int = 2) -> Channel:
    return Channel.exact([[int(i == j) for j in range(M)] for i in range(M)])
