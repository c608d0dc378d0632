"""Certified base-2 logarithms and a certified capacity stream.

Capacity is computed with Blahut-Arimoto.  For any input distribution ``p``
the mutual information ``I(p)`` is a lower bound on capacity and
``max_x D(W(.|x) || pW)`` is an upper bound, so bracketing every logarithm
rigorously turns each iterate into a certified interval.  The update step
itself only steers ``p`` and may be computed in floating point.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import mpmath

from .channel import Channel
from .creal import ComputableReal
from .exceptions import InvalidInputError, ResourceLimitError
from .rational import dyadic

DEFAULT_MAX_ITERATIONS = 10_000
GRID_BITS = 64


def _floor_to_grid(q: Fraction, bits: int) -> Fraction:
    return Fraction((q.numerator << bits) // q.denominator, 1 << bits)


def _ceil_to_grid(q: Fraction, bits: int) -> Fraction:
    return Fraction(-((-q.numerator << bits) // q.denominator), 1 << bits)


def _atanh_series(z: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    """Bracket ``2*atanh(z) = ln((1+z)/(1-z))`` for ``0 <= z <= 1/3``.

    Partial sums are lower bounds (all terms are non-negative); the tail after
    the term of degree ``2J+1`` is at most ``2 z**(2J+3) / ((2J+3)(1 - z**2))``.
    """
    if z == 0:
        return Fraction(0), Fraction(0)
    target = dyadic(bits)
    z2 = z * z
    power = z
    total = Fraction(0)
    j = 0
    while True:
        total += 2 * power / (2 * j + 1)
        power *= z2
        tail = 2 * power / ((2 * j + 3) * (1 - z2))
        if tail <= target:
            return total, total + tail
        j += 1


@lru_cache(maxsize=None)
def _ln2_bounds(bits: int) -> tuple[Fraction, Fraction]:
    lo, hi = _atanh_series(Fraction(1, 3), bits)
    return _floor_to_grid(lo, bits + 2), _ceil_to_grid(hi, bits + 2)


def log2_bounds(q: Fraction, n: int) -> tuple[Fraction, Fraction]:
    """Rationals ``lo <= log2(q) <= hi`` with ``hi - lo <= 2**-n``."""
    q = Fraction(q)
    if q <= 0:
        raise InvalidInputError("log2 needs a positive argument")
    if n < 0:
        raise ValueError("precision must be a natural number")
    # q = 2**k * r with 1 <= r < 2
    k = q.numerator.bit_length() - q.denominator.bit_length()
    r = q / 2**k if k >= 0 else q * 2**-k
    if r < 1:
        k -= 1
        r *= 2
    if r == 1:
        return Fraction(k), Fraction(k)
    bits = n + 4
    ln_lo, ln_hi = _atanh_series((r - 1) / (r + 1), bits)
    two_lo, two_hi = _ln2_bounds(bits)
    lo = k + _floor_to_grid(ln_lo / two_hi, bits)
    hi = k + _ceil_to_grid(ln_hi / two_lo, bits)
    return lo, hi


# -- Blahut-Arimoto ---------------------------------------------------------

def _divergence_bounds(
    channel: Channel, p: list[Fraction], bits: int
) -> list[tuple[Fraction, Fraction]]:
    """Brackets of ``D(W(.|x) || pW)`` in bits, one per input symbol."""
    M, N = channel.input_size, channel.output_size
    out = [sum((p[x] * channel.rows[x][y] for x in range(M)), Fraction(0)) for y in range(N)]
    out_logs = [log2_bounds(q, bits) if q > 0 else None for q in out]
    result = []
    for x in range(M):
        lo = hi = Fraction(0)
        for y, w in enumerate(channel.rows[x]):
            if w == 0:
                continue
            w_lo, w_hi = log2_bounds(w, bits)
            q_lo, q_hi = out_logs[y]
            lo += w * (w_lo - q_hi)
            hi += w * (w_hi - q_lo)
        result.append((lo, hi))
    return result


def _snap_distribution(weights: list, bits: int = GRID_BITS) -> list[Fraction]:
    """Strictly positive distribution on the grid ``2**-bits`` summing to 1."""
    scale = 1 << bits
    total = sum(weights)
    counts = [max(1, int(mpmath.floor(w / total * scale))) for w in weights]
    counts[counts.index(max(counts))] += scale - sum(counts)
    return [Fraction(c, scale) for c in counts]


def capacity_bounds(
    channel: Channel, n: int, max_iterations: int = DEFAULT_MAX_ITERATIONS
) -> tuple[Fraction, Fraction]:
    """Certified ``lo <= C <= hi`` with ``hi - lo < 2**-n`` (bits per use)."""
    if not channel.is_exact:
        raise InvalidInputError("capacity is computed for exact channels only")
    M = channel.input_size
    bits = n + 3
    p = [Fraction(1, M)] * M
    with mpmath.workprec(n + 40):
        for iteration in range(max_iterations):
            brackets = _divergence_bounds(channel, p, bits)
            lower = sum((px * lo for px, (lo, _) in zip(p, brackets)), Fraction(0))
            upper = max(hi for _, hi in brackets)
            if upper - lower < dyadic(n):
                return lower, upper
            # multiplicative update p_x <- p_x 2**D_x, normalised and snapped
            weights = [
                mpmath.mpf(px.numerator) / px.denominator
                * mpmath.power(2, mpmath.mpf((lo + hi).numerator) / (2 * (lo + hi).denominator))
                for px, (lo, hi) in zip(p, brackets)
            ]
            p = _snap_distribution(weights)
    raise ResourceLimitError(
        f"capacity not certified to 2**-{n} within {max_iterations} iterations",
        precision=n,
        max_iterations=max_iterations,
        gap=str(upper - lower),
    )


def capacity_stream(
    channel: Channel, max_iterations: int = DEFAULT_MAX_ITERATIONS
) -> ComputableReal:
    """Capacity as a computable real: ``query(n)`` is a certified midpoint."""
    if not channel.is_exact:
        raise InvalidInputError("capacity is computed for exact channels only")

    def approx(n: int, budget) -> Fraction:
        lo, hi = capacity_bounds(channel, n, max_iterations)
        return (lo + hi) / 2

    return ComputableReal(approx, "capacity-stream", lambda: "(capacity)")
