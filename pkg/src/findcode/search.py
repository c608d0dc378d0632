"""Exhaustive code search.

:func:`find_code` walks blocklengths ``n = 1, 2, ...``; at each ``n`` it sets
the message count to ``ceil(2**(nR))`` and scans the canonical enumeration,
returning the first candidate that passes the dyadic acceptance test at level
``b = blb(epsilon)``.  When ``R`` is not below capacity the scan never ends,
so ``max_blocklength`` turns that case into a :class:`ResourceLimitError`.
"""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

from .capacity import DEFAULT_MAX_ITERATIONS, capacity_bounds, capacity_stream
from .channel import DEFAULT_CELL_LIMIT, Channel
from .codes import (
    DEFAULT_BIT_LIMIT,
    BlockCode,
    EnumerationCursor,
    HammingDecoderTable,
    message_number,
    rate_at_least,
    rate_check,
)
from .creal import (
    DEFAULT_STEP_BUDGET,
    Budget,
    ComputableReal,
    cr_add,
    cr_from_rational,
    interpolation_window,
    rlb,
)
from .errorprob import ExactEvaluator, StreamEvaluator
from .exceptions import InfeasibleError, InvalidInputError, ResourceLimitError
from .rational import as_rational, blb, dyadic, format_rational, simplest_between

log = logging.getLogger(__name__)


@dataclass
class SearchOptions:
    mode: str = "full"
    max_blocklength: int = 16
    cell_limit: int = DEFAULT_CELL_LIMIT
    bit_limit: int = DEFAULT_BIT_LIMIT
    step_budget: int = DEFAULT_STEP_BUDGET
    parallelism: int = 1
    chunk_size: int = 512
    max_candidates: int = 1 << 26
    channel_kind: str = "hamming"
    capacity_iterations: int = DEFAULT_MAX_ITERATIONS

    def __post_init__(self) -> None:
        if self.mode not in ("full", "pruned"):
            raise InvalidInputError(f"unknown search mode {self.mode!r}")
        if self.max_blocklength < 1:
            raise InvalidInputError("max_blocklength must be at least 1")
        if self.parallelism < 1:
            raise InvalidInputError("parallelism must be at least 1")
        if self.mode == "pruned" and self.channel_kind != "hamming":
            raise InvalidInputError("pruned search supports channel kind 'hamming' only")


@dataclass
class SearchReport:
    code: BlockCode
    n: int
    m: int
    rate: Fraction
    epsilon: Fraction
    b: int
    lambda_max: Optional[Fraction]
    candidates_examined: list[int]
    mode: str
    channel_mode: str
    extras: dict[str, Any] = field(default_factory=dict)

    @property
    def witness_bound(self) -> Fraction:
        """Sound upper bound on lambda_max guaranteed by the acceptance test."""
        return dyadic(self.b)

    def to_json(self) -> dict[str, Any]:
        out = {
            "n": self.n,
            "m": self.m,
            "code": self.code.to_json(),
            "lambda_max": None if self.lambda_max is None else format_rational(self.lambda_max),
            "rate_check": rate_check(self.code, self.rate),
            "candidates_examined": list(self.candidates_examined),
            "mode": self.mode,
            "rate": format_rational(self.rate),
            "epsilon": format_rational(self.epsilon),
            "witness_bound": format_rational(self.witness_bound),
            "channel_mode": self.channel_mode,
        }
        out.update(self.extras)
        return out


class _Scanner:
    """Finds the first passing position of one (n, m) family."""

    def __init__(self, channel: Channel, cursor: EnumerationCursor, b: int, opts: SearchOptions):
        self.channel = channel
        self.cursor = cursor
        self.b = b
        self.opts = opts
        if cursor.mode == "pruned" and cursor._hamming is None:
            # one distance table per blocklength, shared by every range
            cursor._hamming = HammingDecoderTable(cursor.M, cursor.N, cursor.n)
        if channel.is_exact:
            self.evaluator = ExactEvaluator(channel, cursor.n)
        else:
            self.evaluator = StreamEvaluator(channel, cursor.n)

    def passes(self, code: BlockCode) -> bool:
        if isinstance(self.evaluator, ExactEvaluator):
            return self.evaluator.achieves(code, self.b)
        return self.evaluator.achieves(code, self.b, Budget(self.opts.step_budget))

    def scan_range(self, start: int, stop: int) -> Optional[int]:
        # each range gets its own cursor; candidate_at is pure
        cursor = EnumerationCursor(
            self.cursor.M, self.cursor.N, self.cursor.m, self.cursor.n, self.cursor.mode
        )
        cursor._hamming = self.cursor._hamming
        cursor.seek(start)
        for position in range(start, stop):
            if self.passes(next(cursor)):
                return position
        return None

    def first_pass(self, limit: int) -> Optional[int]:
        """First passing position among the first ``limit`` candidates."""
        total = min(self.cursor.total, limit)
        workers = self.opts.parallelism
        chunk = self.opts.chunk_size
        if workers == 1:
            return self.scan_range(0, total)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            start = 0
            while start < total:
                # one wave of consecutive chunks; earliest passing chunk wins
                bounds = []
                for _ in range(workers):
                    if start >= total:
                        break
                    bounds.append((start, min(start + chunk, total)))
                    start += chunk
                results = list(pool.map(lambda r: self.scan_range(*r), bounds))
                for found in results:
                    if found is not None:
                        return found
        return None


def find_code(channel: Channel, R, epsilon, opts: Optional[SearchOptions] = None) -> SearchReport:
    """First code (canonical order, minimal blocklength) passing the dyadic test."""
    opts = opts or SearchOptions()
    R, epsilon = as_rational(R), as_rational(epsilon)
    if R <= 0:
        raise InvalidInputError("rate must be positive")
    if epsilon <= 0:
        raise InvalidInputError("epsilon must be positive")
    b = blb(epsilon)
    M, N = channel.input_size, channel.output_size
    examined: list[int] = []
    remaining = opts.max_candidates
    for n in range(1, opts.max_blocklength + 1):
        m = message_number(R, n, opts.bit_limit)
        cells = M**n * N**n
        if cells > opts.cell_limit:
            raise ResourceLimitError(
                f"blocklength {n} needs {cells} transition cells, limit is {opts.cell_limit}",
                blocklength=n,
                cells=cells,
                cell_limit=opts.cell_limit,
                candidates_examined=examined,
            )
        cursor = EnumerationCursor(M, N, m, n, opts.mode)
        if opts.mode == "pruned" and m > M**n:
            examined.append(0)
            continue
        found = _Scanner(channel, cursor, b, opts).first_pass(remaining)
        if found is None and cursor.total > remaining:
            raise ResourceLimitError(
                f"candidate limit of {opts.max_candidates} reached at blocklength {n}",
                blocklength=n,
                max_candidates=opts.max_candidates,
                candidates_examined=examined + [remaining],
            )
        if found is None:
            remaining -= cursor.total
            examined.append(cursor.total)
            log.debug("n=%d m=%d: no passing code among %d", n, m, cursor.total)
            continue
        examined.append(found + 1)
        code = cursor.candidate_at(found)
        exact = ExactEvaluator(channel, n).lambda_max(code) if channel.is_exact else None
        assert rate_at_least(code, R)
        return SearchReport(
            code=code,
            n=n,
            m=m,
            rate=R,
            epsilon=epsilon,
            b=b,
            lambda_max=exact,
            candidates_examined=examined,
            mode=opts.mode,
            channel_mode=channel.mode,
        )
    raise ResourceLimitError(
        f"no code found up to blocklength {opts.max_blocklength}; "
        "the rate may be at or above capacity, or epsilon too small for the budget",
        max_blocklength=opts.max_blocklength,
        candidates_examined=examined,
    )


def find_code_ext(
    channel: Channel, R, epsilon: ComputableReal, opts: Optional[SearchOptions] = None
) -> SearchReport:
    """:func:`find_code` with a computable-real tolerance, via a rational lower bound."""
    opts = opts or SearchOptions()
    lower = rlb(epsilon, Budget(opts.step_budget))
    report = find_code(channel, R, lower, opts)
    report.extras["epsilon_lower_bound"] = format_rational(lower)
    report.extras["epsilon_expression"] = epsilon.label
    return report


def capacity_sequence(channel: Channel, k: int, opts: Optional[SearchOptions] = None) -> SearchReport:
    """k-th code of a capacity-achieving sequence.

    Picks a rational rate strictly between ``C - 1/k`` and ``C`` and searches
    with tolerance ``1/k``.
    """
    opts = opts or SearchOptions()
    if k < 1:
        raise InvalidInputError("k must be a positive integer")
    if not channel.is_exact:
        raise InvalidInputError("the capacity sequence needs an exact channel")
    capacity = capacity_stream(channel, opts.capacity_iterations)
    # certify the capacity to better than 1/(2k) first, so the report can
    # show that (C - 1/k, C) holds the chosen rate
    precision = blb(Fraction(1, 2 * k))
    lo, hi = capacity_bounds(channel, precision, opts.capacity_iterations)
    target = cr_add(capacity, cr_from_rational(Fraction(-1, k)))
    low, high = interpolation_window(target, capacity, Budget(opts.step_budget))
    if (low + high) / 2 <= 0:
        raise InfeasibleError(
            f"no positive rate lies in (C - 1/{k}, C); capacity is at most {hi}"
        )
    # the window midpoint carries the capacity's dyadic denominators, which
    # make 2**(n*num) unmanageable; any point of the window is certified
    rate = simplest_between(max(low, Fraction(0)), high)
    report = find_code(channel, rate, Fraction(1, k), opts)
    report.extras["k"] = k
    report.extras["capacity_interval"] = [format_rational(lo), format_rational(hi)]
    return report
