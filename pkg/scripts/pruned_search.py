"""Pruned (minimum-distance) search on a binary symmetric channel.

    python scripts/pruned_search.py --p 1/4 --rate 1/16 --epsilon 1/5 --workers 4
"""
from __future__ import annotations

import argparse
import json
import time
from dataclasses import dataclass
from fractions import Fraction

from findcode import SearchOptions, bsc, find_code


@dataclass
class Config:
    p: Fraction = Fraction(1, 4)
    rate: Fraction = Fraction(1, 16)
    epsilon: Fraction = Fraction(1, 5)
    max_n: int = 12
    workers: int = 1


def run(cfg: Config) -> dict:
    start = time.perf_counter()
    report = find_code(
        bsc(cfg.p),
        cfg.rate,
        cfg.epsilon,
        SearchOptions(mode="pruned", max_blocklength=cfg.max_n, parallelism=cfg.workers),
    )
    out = report.to_json()
    out["lambda_max_float"] = float(report.lambda_max)
    out["seconds"] = round(time.perf_counter() - start, 3)
    return out


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--p", type=Fraction, default=Config.p)
    parser.add_argument("--rate", type=Fraction, default=Config.rate)
    parser.add_argument("--epsilon", type=Fraction, default=Config.epsilon)
    parser.add_argument("--max-n", type=int, default=Config.max_n)
    parser.add_argument("--workers", type=int, default=Config.workers)
    args = parser.parse_args()
    cfg = Config(args.p, args.rate, args.epsilon, args.max_n, args.workers)
    print(json.dumps(run(cfg), indent=2))


if __name__ == "__main__":
    main()
