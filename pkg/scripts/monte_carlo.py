"""Compare exact block error probabilities of repetition codes with simulation.

    python scripts/monte_carlo.py --p 1/4 --lengths 1 3 5 7 --trials 100000
"""
from __future__ import annotations

import argparse
import math
from dataclasses import dataclass, field
from fractions import Fraction

from findcode import BlockCode, bsc, lambda_max, simulate
from findcode.codes import hamming_decoder


@dataclass
class Config:
    p: Fraction = Fraction(1, 4)
    lengths: list[int] = field(default_factory=lambda: [1, 3, 5, 7])
    trials: int = 100_000
    seed: int = 12345
    workers: int = 4


def repetition(n: int) -> BlockCode:
    encoder = [(1,) * n, (2,) * n]
    return BlockCode.build(encoder, hamming_decoder(encoder, 2, n), 2, 2)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--p", type=Fraction, default=Config.p)
    parser.add_argument("--lengths", type=int, nargs="+", default=Config().lengths)
    parser.add_argument("--trials", type=int, default=Config.trials)
    parser.add_argument("--seed", type=int, default=Config.seed)
    parser.add_argument("--workers", type=int, default=Config.workers)
    args = parser.parse_args()
    cfg = Config(args.p, args.lengths, args.trials, args.seed, args.workers)

    channel = bsc(cfg.p)
    print(f"{'n':>3} {'exact':>12} {'simulated':>24} {'z':>7}")
    for n in cfg.lengths:
        code = repetition(n)
        exact = float(lambda_max(code, channel))
        result = simulate(code, channel, cfg.trials, cfg.seed, workers=cfg.workers)
        rates = [e / cfg.trials for e in result.per_message_errors]
        sigma = math.sqrt(exact * (1 - exact) / cfg.trials) or 1.0
        z = max(abs(r - exact) / sigma for r in rates)
        shown = ", ".join(f"{r:.5f}" for r in rates)
        print(f"{n:>3} {exact:>12.6f} {shown:>24} {z:>7.2f}")


if __name__ == "__main__":
    main()
