"""Computable reals as rational approximation streams.

A :class:`ComputableReal` answers ``query(n)`` with a rational ``q`` such that
``|x - q| < 2**-n``.  Streams compose through :func:`cr_add`, :func:`cr_mul`
and :func:`cr_max`.  Equality and order between two computable reals are not
decidable, so none is offered; the only comparisons are the one-sided tests
:func:`dyadic_below`, :func:`rlb` and :func:`rat_interpolation`.
"""
from __future__ import annotations

import re
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Optional

from .exceptions import BudgetExhausted, InvalidInputError
from .rational import as_rational, dyadic, parse_rational

DEFAULT_STEP_BUDGET = 10**6

KINDS = ("rational-constant", "sum", "product", "max", "capacity-stream", "user-series")


class Budget:
    """Counts stream evaluations; raises once ``limit`` is exceeded."""

    def __init__(self, limit: int = DEFAULT_STEP_BUDGET) -> None:
        self.limit = limit
        self.used = 0
        self._lock = threading.Lock()

    def charge(self, steps: int = 1) -> None:
        with self._lock:
            self.used += steps
            if self.used > self.limit:
                raise BudgetExhausted(
                    f"step budget of {self.limit} stream evaluations exhausted",
                    limit=self.limit,
                )


Approximator = Callable[[int, Budget], Fraction]


class ComputableReal:
    __slots__ = ("kind", "_approx", "_cache", "_lock", "_describe")

    def __init__(
        self,
        approximator: Approximator,
        kind: str,
        describe: Callable[[], str] = lambda: "",
    ) -> None:
        if kind not in KINDS:
            raise ValueError(f"unknown stream kind {kind!r}")
        self.kind = kind
        self._describe = describe
        self._approx = approximator
        self._cache: dict[int, Fraction] = {}
        self._lock = threading.Lock()

    def query(self, n: int, budget: Optional[Budget] = None) -> Fraction:
        """Rational within ``2**-n`` of the value."""
        if n < 0:
            raise ValueError("precision must be a natural number")
        if budget is None:
            budget = Budget()
        budget.charge()
        with self._lock:
            hit = self._cache.get(n)
        if hit is not None:
            return hit
        value = self._approx(n, budget)
        with self._lock:
            # first writer wins so repeated queries are identical
            return self._cache.setdefault(n, value)

    @property
    def label(self) -> str:
        """Expression text of the stream (built on demand)."""
        return self._describe() or self.kind

    def __repr__(self) -> str:
        return f"ComputableReal({self.label or self.kind})"


def cr_from_rational(q) -> ComputableReal:
    q = as_rational(q)
    return ComputableReal(lambda n, budget: q, "rational-constant", lambda: f"(rat {q})")


def is_constant(x: ComputableReal) -> bool:
    return x.kind == "rational-constant"


def cr_query(x: ComputableReal, n: int, budget: Optional[Budget] = None) -> Fraction:
    return x.query(n, budget)


def cr_add(x: ComputableReal, y: ComputableReal) -> ComputableReal:
    def approx(n: int, budget: Budget) -> Fraction:
        return x.query(n + 1, budget) + y.query(n + 1, budget)

    return ComputableReal(approx, "sum", lambda: f"(add {x.label} {y.label})")


def magnitude_bound(x: ComputableReal, budget: Optional[Budget] = None) -> int:
    """Natural number strictly above ``|x|``, from the level-0 approximation."""
    q = abs(x.query(0, budget))
    # ceil(|q0|) + 1
    return -(-q.numerator // q.denominator) + 1


def cr_mul(x: ComputableReal, y: ComputableReal) -> ComputableReal:
    def approx(n: int, budget: Budget) -> Fraction:
        bound = magnitude_bound(x, budget) + magnitude_bound(y, budget)
        # (|a|+|b|) 2**-k + 2**-2k < 2**-n once 2**k >= bound * 2**(n+1)
        k = n + 1 + bound.bit_length()
        return x.query(k, budget) * y.query(k, budget)

    return ComputableReal(approx, "product", lambda: f"(mul {x.label} {y.label})")


def cr_max(x: ComputableReal, y: ComputableReal) -> ComputableReal:
    def approx(n: int, budget: Budget) -> Fraction:
        return max(x.query(n, budget), y.query(n, budget))

    return ComputableReal(approx, "max", lambda: f"(max {x.label} {y.label})")


def cr_sum(terms: list[ComputableReal]) -> ComputableReal:
    """Balanced fold of :func:`cr_add`; the empty sum is the constant 0."""
    if not terms:
        return cr_from_rational(Fraction(0))
    while len(terms) > 1:
        paired = [cr_add(terms[i], terms[i + 1]) for i in range(0, len(terms) - 1, 2)]
        if len(terms) % 2:
            paired.append(terms[-1])
        terms = paired
    return terms[0]


def dyadic_below(x: ComputableReal, b: int, budget: Optional[Budget] = None) -> bool:
    """Dyadic acceptance test at level ``b``.

    True guarantees ``x < 2**-b``; ``x < 2**-(b+2)`` guarantees True.  Inside
    ``[2**-(b+2), 2**-b)`` either answer is possible.
    """
    return x.query(b + 2, budget) < dyadic(b + 1)


def _steps(budget: Budget) -> Iterator[int]:
    n = 0
    while True:
        budget.charge()
        yield n
        n += 1


def rlb(epsilon: ComputableReal, budget: Optional[Budget] = None) -> Fraction:
    """Positive rational strictly below ``epsilon`` (which must be > 0)."""
    budget = budget or Budget()
    for n in _steps(budget):
        candidate = epsilon.query(n, budget) - dyadic(n)
        if candidate > 0:
            return candidate
    raise AssertionError("unreachable")


def interpolation_window(
    alpha: ComputableReal, beta: ComputableReal, budget: Optional[Budget] = None
) -> tuple[Fraction, Fraction]:
    """Open interval certified to lie strictly between ``alpha < beta``."""
    budget = budget or Budget()
    for n in _steps(budget):
        a = alpha.query(n, budget)
        b = beta.query(n, budget)
        # the gap must exceed 2**-(n-1) so the interval clears both error balls
        if b - a > dyadic(n - 1):
            return a + dyadic(n), b - dyadic(n)
    raise AssertionError("unreachable")


def rat_interpolation(
    alpha: ComputableReal, beta: ComputableReal, budget: Optional[Budget] = None
) -> Fraction:
    """Rational strictly between ``alpha`` and ``beta`` (requires alpha < beta)."""
    low, high = interpolation_window(alpha, beta, budget)
    return (low + high) / 2


# -- expression trees ------------------------------------------------------

_TOKEN = re.compile(r"\(|\)|[^\s()]+")
_OPS = {"add": cr_add, "mul": cr_mul, "max": cr_max}


@dataclass
class _Parser:
    tokens: list[str]
    pos: int = 0

    def peek(self) -> Optional[str]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, expected: Optional[str] = None) -> str:
        token = self.peek()
        if token is None:
            raise InvalidInputError("unexpected end of stream expression")
        if expected is not None and token != expected:
            raise InvalidInputError(f"expected {expected!r}, found {token!r}")
        self.pos += 1
        return token

    def expr(self) -> ComputableReal:
        self.take("(")
        head = self.take()
        if head == "rat":
            literal = self.take()
            try:
                value = parse_rational(literal)
            except (ValueError, ZeroDivisionError) as exc:
                raise InvalidInputError(str(exc)) from None
            self.take(")")
            return cr_from_rational(value)
        if head not in _OPS:
            raise InvalidInputError(f"unknown stream operator {head!r}")
        args = []
        while self.peek() == "(":
            args.append(self.expr())
        self.take(")")
        if len(args) < 2:
            raise InvalidInputError(f"{head} needs at least two operands")
        result = args[0]
        for arg in args[1:]:
            result = _OPS[head](result, arg)
        return result


def parse_expression(text: str) -> ComputableReal:
    """Parse a prefix stream expression such as ``(add (rat 1/3) (rat 1/6))``.

    Constant expressions keep the ``rational-constant`` kind; composite
    expressions are tagged ``user-series``.
    """
    parser = _Parser(_TOKEN.findall(text))
    tree = parser.expr()
    if parser.peek() is not None:
        raise InvalidInputError(f"trailing input after expression: {parser.peek()!r}")
    if is_constant(tree):
        return tree
    return ComputableReal(lambda n, budget: tree.query(n, budget), "user-series", lambda: tree.label)
