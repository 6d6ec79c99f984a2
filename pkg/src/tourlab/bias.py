"""Exact bias polynomials, typical densities, and membership predicates.

For a tournament H on h vertices, the density of H in the ordered random
model with edge probability p is

    d(H,p) = (1/aut(H)) * sum_k N[k] * p^k * (1-p)^(m-k),    m = C(h,2),

where N[k] counts vertex orderings of H with exactly k forward edges.
The bias polynomial is the recentred form B(H,x) = d(H, x + 1/2); it is
even, B(H,0) is the typical density, and summing it over all isomorphism
classes gives the constant 1.

Everything here is exact: coefficients are big-integer numerators over
the denominator aut(H) * 2^m, converted to Fraction at the boundary.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Callable

from .core import CanonicalForm, Tournament, aut_size, canonical_form, pair_count
from .enumeration import TournamentCatalog
from .fas import min_fas

__all__ = [
    "ForwardHistogram",
    "DensityPolynomialP",
    "BiasPolynomial",
    "ClassificationRecord",
    "OddCoefficientResidue",
    "XOutOfRange",
    "forward_histogram",
    "density_poly_p",
    "bias_polynomial",
    "typical_density",
    "in_bias_subset",
    "in_F",
    "classify_catalog",
]

_DIGIT = 32  # packed-histogram digit width; counts stay below 10! < 2^22


class OddCoefficientResidue(ArithmeticError):
    """A bias polynomial came out with a nonzero odd coefficient, which is
    impossible for exact arithmetic and signals a bug."""


class XOutOfRange(ValueError):
    """Bias value x outside the open interval (0, 1/2)."""


@dataclass(frozen=True)
class ForwardHistogram:
    """counts[k] = number of vertex orderings with exactly k forward edges."""

    h: int
    counts: tuple[int, ...]

    @property
    def m(self) -> int:
        return pair_count(self.h)

    def total(self) -> int:
        return sum(self.counts)


@dataclass(frozen=True)
class DensityPolynomialP:
    """d(H,p) as an exact polynomial in p, coefficients ascending."""

    h: int
    coeffs: tuple[Fraction, ...]

    def evaluate(self, p: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * p + c
        return acc


@dataclass(frozen=True)
class BiasPolynomial:
    """B(H,x): even polynomial with exact rational coefficients.

    ``coeffs`` holds (exponent, coefficient) pairs with even exponents in
    ascending order; zero coefficients are omitted except the constant
    term, which is d(H).
    """

    h: int
    coeffs: tuple[tuple[int, Fraction], ...]

    @property
    def constant(self) -> Fraction:
        return self.coeffs[0][1]

    def coeff(self, exponent: int) -> Fraction:
        for e, c in self.coeffs:
            if e == exponent:
                return c
        return Fraction(0)

    def evaluate(self, x: Fraction) -> Fraction:
        x2 = Fraction(x) * Fraction(x)
        acc = Fraction(0)
        for e, c in reversed(self.coeffs):
            acc += c * x2 ** (e // 2)
        return acc

    def __str__(self) -> str:
        parts = []
        for e, c in self.coeffs:
            if e == 0:
                term = str(c)
            elif c == 1:
                term = f"x^{e}"
            elif c == -1:
                term = f"-x^{e}"
            else:
                term = f"{c}*x^{e}"
            parts.append(term)
        return " + ".join(parts).replace("+ -", "- ")


@dataclass(frozen=True)
class ClassificationRecord:
    """Per-isomorphism-class bundle of computed invariants."""

    canonical_form: CanonicalForm
    aut: int
    typical_density: Fraction
    bias: BiasPolynomial
    fas: int
    in_Bh: bool


def forward_histogram(t: Tournament) -> ForwardHistogram:
    """Exact ordering histogram via DP over vertex subsets.

    ways[S] accumulates, per forward-edge count k, the orderings of subset
    S; appending v after S\\{v} adds as many forward edges as v has
    in-neighbours inside S\\{v}.  The k-indexed array is packed into one
    big integer with 32-bit digits, which keeps the inner loop to a single
    shift-and-add.
    """
    h = t.h
    out = t.out_masks
    full = (1 << h) - 1
    inmask = tuple(full & ~out[v] & ~(1 << v) for v in range(h))
    ways = [0] * (1 << h)
    ways[0] = 1
    for s in range(1, 1 << h):
        acc = 0
        rest_bits = s
        while rest_bits:
            v_bit = rest_bits & -rest_bits
            rest_bits ^= v_bit
            v = v_bit.bit_length() - 1
            prev = s ^ v_bit
            k = (inmask[v] & prev).bit_count()
            acc += ways[prev] << (k * _DIGIT)
        ways[s] = acc
    packed = ways[full]
    m = pair_count(h)
    mask = (1 << _DIGIT) - 1
    counts = tuple((packed >> (k * _DIGIT)) & mask for k in range(m + 1))
    if sum(counts) != factorial(h):
        raise AssertionError(f"histogram mass {sum(counts)} != {h}!")
    return ForwardHistogram(h, counts)


@lru_cache(maxsize=None)
def _recentre_table(h: int) -> tuple[tuple[int, ...], ...]:
    """Integer coefficients of (1+2x)^k (1-2x)^(m-k) for k = 0..m.

    Summing these against N[k] gives 2^m * aut(H) * B(H,x).
    """
    m = pair_count(h)
    table = []
    for k in range(m + 1):
        coeffs = [0] * (m + 1)
        for i in range(k + 1):
            a = comb(k, i) << i
            for j in range(m - k + 1):
                coeffs[i + j] += a * comb(m - k, j) * ((-2) ** j)
        table.append(tuple(coeffs))
    return tuple(table)


def bias_polynomial(t: Tournament) -> BiasPolynomial:
    """B(H,x) = d(H, x + 1/2), exactly expanded.

    Odd coefficients must cancel; a nonzero residue raises
    OddCoefficientResidue.
    """
    hist = forward_histogram(t)
    m = hist.m
    table = _recentre_table(t.h)
    nums = [0] * (m + 1)
    for k, count in enumerate(hist.counts):
        if not count:
            continue
        row = table[k]
        for e in range(m + 1):
            nums[e] += count * row[e]
    den = aut_size(t) << m
    for e in range(1, m + 1, 2):
        if nums[e]:
            raise OddCoefficientResidue(
                f"odd coefficient x^{e} = {nums[e]}/{den} for {t.bits}"
            )
    coeffs = [(0, Fraction(nums[0], den))]
    for e in range(2, m + 1, 2):
        if nums[e]:
            coeffs.append((e, Fraction(nums[e], den)))
    return BiasPolynomial(t.h, tuple(coeffs))


def density_poly_p(t: Tournament) -> DensityPolynomialP:
    """d(H,p) as an exact polynomial: (1/aut) sum_k N[k] p^k (1-p)^(m-k)."""
    hist = forward_histogram(t)
    m = hist.m
    nums = [0] * (m + 1)
    for k, count in enumerate(hist.counts):
        if not count:
            continue
        for j in range(m - k + 1):
            nums[k + j] += count * comb(m - k, j) * ((-1) ** j)
    while len(nums) > 1 and nums[-1] == 0:
        nums.pop()
    aut = aut_size(t)
    return DensityPolynomialP(t.h, tuple(Fraction(n, aut) for n in nums))


def typical_density(t: Tournament) -> Fraction:
    """d(H) = h! 2^(-C(h,2)) / aut(H); equals B(H,0)."""
    return Fraction(factorial(t.h), aut_size(t) << pair_count(t.h))


def in_bias_subset(t: Tournament) -> bool:
    """True iff 0 is a local minimum of B(H,x): the lowest-order nonzero
    coefficient of B(H,x) - d(H) is positive.

    For h <= 2 the difference is identically zero (the only class is
    transitive with density 1) and there is no strict local minimum;
    returns False.
    """
    tail = [c for e, c in bias_polynomial(t).coeffs if e > 0]
    return bool(tail) and tail[0] > 0


def in_F(t: Tournament, x: Fraction) -> bool:
    """True iff B(H,x) > d(H) at the exact rational bias x in (0, 1/2)."""
    x = Fraction(x)
    if not 0 < x < Fraction(1, 2):
        raise XOutOfRange(f"x must lie in (0, 1/2), got {x}")
    b = bias_polynomial(t)
    return b.evaluate(x) > b.constant


def _classify_one(t: Tournament) -> ClassificationRecord:
    bias = bias_polynomial(t)
    tail = [c for e, c in bias.coeffs if e > 0]
    return ClassificationRecord(
        canonical_form=canonical_form(t),
        aut=aut_size(t),
        typical_density=typical_density(t),
        bias=bias,
        fas=min_fas(t).a,
        in_Bh=bool(tail) and tail[0] > 0,
    )


def classify_catalog(
    catalog: TournamentCatalog,
    threads: int = 1,
    progress: Callable[[str], None] | None = None,
) -> list[ClassificationRecord]:
    """One ClassificationRecord per class, in catalog order.

    Entries are pure and data-parallel; results are merged in input order,
    so the output is identical for any thread count.  ``progress``
    receives a status line every few thousand classes.
    """
    items = list(catalog.items)
    records: list[ClassificationRecord] = []
    step = 4096
    if threads > 1 and len(items) > 8 * threads:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            for start in range(0, len(items), step):
                chunk = items[start : start + step]
                records.extend(pool.map(_classify_one, chunk, chunksize=64))
                if progress is not None:
                    progress(f"classified {len(records)}/{len(items)}")
        return records
    for start in range(0, len(items), step):
        records.extend(_classify_one(t) for t in items[start : start + step])
        if progress is not None:
            progress(f"classified {len(records)}/{len(items)}")
    return records
