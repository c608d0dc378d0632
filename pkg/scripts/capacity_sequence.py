"""Walk the first few codes of a capacity-achieving sequence.

For each k the script prints the chosen rate, the blocklength found and the
exact worst-case error next to the certified capacity interval.

    python scripts/capacity_sequence.py --p 1/100 --k-max 3
"""
from __future__ import annotations

import argparse
from dataclasses import dataclass
from fractions import Fraction

from findcode import InfeasibleError, ResourceLimitError, SearchOptions, bsc, capacity_sequence


@dataclass
class Config:
    p: Fraction = Fraction(1, 100)
    k_max: int = 3
    mode: str = "full"
    max_n: int = 8


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--p", type=Fraction, default=Config.p)
    parser.add_argument("--k-max", type=int, default=Config.k_max)
    parser.add_argument("--mode", choices=("full", "pruned"), default=Config.mode)
    parser.add_argument("--max-n", type=int, default=Config.max_n)
    args = parser.parse_args()
    cfg = Config(args.p, args.k_max, args.mode, args.max_n)

    channel = bsc(cfg.p)
    opts = SearchOptions(mode=cfg.mode, max_blocklength=cfg.max_n)
    print(f"{'k':>3} {'rate':>10} {'n':>3} {'m':>4} {'lambda_max':>12}  capacity interval")
    for k in range(1, cfg.k_max + 1):
        try:
            report = capacity_sequence(channel, k, opts)
        except InfeasibleError:
            print(f"{k:>3}  infeasible")
            continue
        except ResourceLimitError as exc:
            print(f"{k:>3}  stopped: {exc}")
            continue
        lo, hi = (float(Fraction(v)) for v in report.extras["capacity_interval"])
        print(
            f"{k:>3} {str(report.rate):>10} {report.n:>3} {report.m:>4} "
            f"{float(report.lambda_max):>12.6f}  [{lo:.6f}, {hi:.6f}]"
        )


if __name__ == "__main__":
    main()
