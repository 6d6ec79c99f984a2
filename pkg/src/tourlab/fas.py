"""Exact minimum feedback arc sets and the ordering-based dominance test.

a(H) is the size of a smallest edge set meeting every directed cycle,
computed as C(h,2) minus the maximum forward-edge count over vertex
orderings.  The dominance sufficient condition compares

    (1 + 2x)^(f - b) * (1 - 4x^2)^b  >  h!

with f = C(h,2) - a and b = a: when it holds, the single best ordering
already forces B(H,x) > d(H).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

import mpmath

from .core import Tournament, pair_count

__all__ = [
    "FasResult",
    "BadParameters",
    "InconclusiveAtPrecision",
    "min_fas",
    "in_A",
    "fas_dominance_condition",
    "sqrt_log_over",
    "CertifiedValue",
]


class BadParameters(ValueError):
    """Arguments outside the documented domain of the dominance check."""


class InconclusiveAtPrecision(ArithmeticError):
    """Interval evaluation could not separate the two sides even at the
    highest precision tried."""


@dataclass(frozen=True)
class FasResult:
    """Minimum feedback arc set size with a maximizing vertex ordering."""

    a: int
    max_forward: int
    witness_order: tuple[int, ...]


def min_fas(t: Tournament) -> FasResult:
    """Exact a(H) by DP over vertex subsets.

    best[S] is the maximum forward-edge count over orderings of S; the
    chosen last vertex is recorded for witness recovery, ties broken by
    smallest vertex index.
    """
    h = t.h
    out = t.out_masks
    full = (1 << h) - 1
    inmask = tuple(full & ~out[v] & ~(1 << v) for v in range(h))
    best = [0] * (1 << h)
    last = [0] * (1 << h)
    for s in range(1, 1 << h):
        top = -1
        choice = 0
        rest_bits = s
        while rest_bits:
            v_bit = rest_bits & -rest_bits
            rest_bits ^= v_bit
            v = v_bit.bit_length() - 1
            prev = s ^ v_bit
            cand = best[prev] + (inmask[v] & prev).bit_count()
            if cand > top:
                top = cand
                choice = v
        best[s] = top
        last[s] = choice
    order: list[int] = []
    s = full
    while s:
        v = last[s]
        order.append(v)
        s ^= 1 << v
    order.reverse()
    m = pair_count(h)
    return FasResult(a=m - best[full], max_forward=best[full], witness_order=tuple(order))


def in_A(t: Tournament, threshold: Fraction | int) -> bool:
    """True iff a(H) <= C(h,2)/2 - threshold, compared exactly."""
    threshold = Fraction(threshold)
    if threshold < 0:
        raise BadParameters(f"threshold must be nonnegative, got {threshold}")
    return Fraction(min_fas(t).a) <= Fraction(pair_count(t.h), 2) - threshold


class CertifiedValue:
    """A positive irrational given by rational bounds at a requested
    working precision (bits)."""

    def bounds(self, precision: int) -> tuple[Fraction, Fraction]:
        raise NotImplementedError


def _raw_mpf_to_fraction(raw) -> Fraction:
    sign, man, exp, _ = raw
    frac = Fraction(int(man), 1)
    frac = frac * (1 << exp) if exp >= 0 else frac / (1 << -exp)
    return -frac if sign else frac


@dataclass(frozen=True)
class _SqrtLogOver(CertifiedValue):
    h: int

    def bounds(self, precision: int) -> tuple[Fraction, Fraction]:
        ctx = mpmath.iv
        old = ctx.prec
        try:
            ctx.prec = precision
            value = ctx.sqrt(ctx.log(self.h) / self.h)
        finally:
            ctx.prec = old
        raw_lo, raw_hi = value._mpi_
        return _raw_mpf_to_fraction(raw_lo), _raw_mpf_to_fraction(raw_hi)


def sqrt_log_over(h: int) -> CertifiedValue:
    """The bias value x = sqrt(ln(h)/h) at which low-feedback tournaments
    clear the dominance condition, as a certified irrational."""
    if h < 2:
        raise BadParameters(f"need h >= 2, got {h}")
    return _SqrtLogOver(h)


def _lhs_bounds(fwd: int, bwd: int, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    # (1+2x)^(f-b) increases and (1-4x^2)^b decreases on 0 <= x < 1/2
    lower = (1 + 2 * lo) ** (fwd - bwd) * (1 - 4 * hi * hi) ** bwd
    upper = (1 + 2 * hi) ** (fwd - bwd) * (1 - 4 * lo * lo) ** bwd
    return lower, upper


def fas_dominance_condition(
    h: int, a: int, x: Fraction | CertifiedValue, max_precision: int = 1 << 14
) -> bool:
    """True iff (1+2x)^(f-b) (1-4x^2)^b > h! with f = C(h,2)-a, b = a.

    Rational x is evaluated exactly.  A CertifiedValue (irrational) x is
    evaluated through rational interval bounds with escalating precision;
    an exact tie would exhaust precision and raise InconclusiveAtPrecision,
    which cannot happen for irrational x.
    """
    m = pair_count(h)
    if h < 1 or a < 0 or 2 * a > m:
        raise BadParameters(f"need 0 <= a <= C(h,2)/2 = {Fraction(m, 2)}, got a={a}")
    fwd, bwd = m - a, a
    rhs = factorial(h)
    if isinstance(x, CertifiedValue):
        precision = 64
        while precision <= max_precision:
            lo, hi = x.bounds(precision)
            if not 0 < lo <= hi < Fraction(1, 2):
                raise BadParameters(f"certified x not in (0, 1/2): [{lo}, {hi}]")
            lower, upper = _lhs_bounds(fwd, bwd, lo, hi)
            if lower > rhs:
                return True
            if upper <= rhs:
                return False
            precision *= 2
        raise InconclusiveAtPrecision(
            f"could not separate at {max_precision} bits (h={h}, a={a})"
        )
    x = Fraction(x)
    if not 0 < x < Fraction(1, 2):
        raise BadParameters(f"x must lie in (0, 1/2), got {x}")
    return (1 + 2 * x) ** (fwd - bwd) * (1 - 4 * x * x) ** bwd > rhs
