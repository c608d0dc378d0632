"""Monte Carlo transmission of a code over an exact channel.

Randomness comes from NumPy's PCG64 generator (PCG-XSL-RR 128/64).  Every
(message, trial block) pair gets its own substream,
``SeedSequence(seed, spawn_key=(message, block))``, so counts do not depend
on how blocks are scheduled across workers.

Output symbols are drawn by inverse-CDF sampling without floating point: a
raw 64-bit draw ``w`` stands for ``u = w / 2**64`` and symbol ``j`` is chosen
when ``cdf[j-1] <= u < cdf[j]``.  Since ``w`` is an integer,
``u < cdf[j]`` holds exactly when ``w < ceil(cdf[j] * 2**64)``.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .channel import Channel
from .codes import BlockCode, channel_matches
from .exceptions import InvalidInputError

BLOCK_TRIALS = 1 << 14
_TWO64 = 1 << 64


@dataclass(frozen=True)
class SimulationResult:
    per_message_trials: tuple[int, ...]
    per_message_errors: tuple[int, ...]
    seed: int

    @property
    def empirical_rates(self) -> tuple[Fraction, ...]:
        return tuple(
            Fraction(e, t) if t else Fraction(0)
            for e, t in zip(self.per_message_errors, self.per_message_trials)
        )

    def to_json(self) -> dict:
        return {
            "per_message_trials": list(self.per_message_trials),
            "per_message_errors": list(self.per_message_errors),
            "empirical_rates": [str(r) for r in self.empirical_rates],
            "seed": self.seed,
        }


def cdf_thresholds(row: Sequence[Fraction]) -> np.ndarray:
    """Integer thresholds ``ceil(cdf[j] * 2**64)`` that fit in 64 bits."""
    thresholds = []
    total = Fraction(0)
    for p in row:
        total += p
        t = -((-total.numerator * _TWO64) // total.denominator)
        if t >= _TWO64:
            break  # never reached by a 64-bit draw
        thresholds.append(t)
    return np.array(thresholds, dtype=np.uint64)


def substream(seed: int, *key: int) -> np.random.PCG64:
    return np.random.PCG64(np.random.SeedSequence(seed, spawn_key=key))


def sample_symbols(thresholds: np.ndarray, draws: np.ndarray) -> np.ndarray:
    """0-based symbols for raw uint64 draws."""
    return np.searchsorted(thresholds, draws, side="right")


def _run_block(code: BlockCode, tables: list[np.ndarray], d: int, block: int,
               trials: int, seed: int) -> int:
    if trials == 0:
        return 0
    bits = substream(seed, d, block)
    draws = bits.random_raw(trials * code.n).reshape(trials, code.n)
    rank = np.zeros(trials, dtype=np.int64)
    for k, x in enumerate(code.encoder[d - 1]):
        rank = rank * code.N + sample_symbols(tables[x - 1], draws[:, k])
    decoded = np.asarray(code.decoder, dtype=np.int64)[rank]
    return int((decoded != d).sum())


def simulate(code: BlockCode, channel: Channel, trials_per_message: int, seed: int,
             workers: int = 1) -> SimulationResult:
    if not channel.is_exact:
        raise InvalidInputError("simulation needs an exact channel")
    if trials_per_message < 0:
        raise InvalidInputError("trial count must be non-negative")
    if not 0 <= seed < _TWO64:
        raise InvalidInputError("seed must be a 64-bit unsigned integer")
    channel_matches(code, channel)
    tables = [cdf_thresholds(row) for row in channel.rows]
    tasks = []
    for d in range(1, code.m + 1):
        for block, start in enumerate(range(0, trials_per_message, BLOCK_TRIALS)):
            tasks.append((d, block, min(BLOCK_TRIALS, trials_per_message - start)))

    def run(task):
        d, block, count = task
        return d, _run_block(code, tables, d, block, count, seed)

    errors = [0] * code.m
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(run, tasks))
    else:
        outcomes = [run(task) for task in tasks]
    for d, count in outcomes:
        errors[d - 1] += count
    return SimulationResult((trials_per_message,) * code.m, tuple(errors), seed)
