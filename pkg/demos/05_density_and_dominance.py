#!/usr/bin/env python3
"""Measuring densities and checking dominance empirically.

A family is dominated by a construction when every member's measured
density beats (1+beta) times its typical density.  This demo measures the
T(n, 1/2+x) model against the family it is built for and prints the
margins, then calibrates the Monte-Carlo estimator against exact counts.
"""

from fractions import Fraction

from tourlab import (
    bias_margin,
    build_tnp,
    density_exact,
    density_montecarlo,
    dominance_report,
    enumerate_tournaments,
    in_F,
    transitive,
)

x = Fraction(1, 10)
members = [t for t in enumerate_tournaments(4) if in_F(t, x)]
print(f"F(4, {x}) has {len(members)} member(s): {[t.bits for t in members]}")
beta = bias_margin(members, x)
print(f"exact bias margin min B(H,x)/d(H) - 1 = {beta} ~= {float(beta):.5f}")
print()

g = build_tnp(60, Fraction(1, 2) + x, seed=5)
print(f"measuring against one sampled G ~ T(60, {Fraction(1, 2) + x}), seed 5:")
reports = dominance_report(members, g, beta=beta / 2)
for r in reports:
    print(f"  pattern {r.pattern.bits}: density {r.estimate} "
          f"(ratio to typical {float(r.ratio):.4f}), margin {r.margin}")
satisfied = sum(r.margin > 0 for r in reports)
print(f"  -> {satisfied}/{len(reports)} beat (1 + beta/2) * typical")
print()

print("Monte-Carlo calibration on a smaller host (n=30, seed 21):")
g30 = build_tnp(30, Fraction(1, 2), seed=21)
exact = density_exact(g30, transitive(4))
print(f"  exact density of T4: {exact.estimate} ~= {float(exact.estimate):.5f}")
for samples in (1_000, 10_000, 100_000):
    mc = density_montecarlo(g30, transitive(4), samples, seed=33)
    sigmas = abs(mc.estimate - float(exact.estimate)) / mc.stderr
    print(f"  {samples:>7} samples: {mc.estimate:.5f} +- {mc.stderr:.5f} "
          f"({sigmas:.2f} sigma off)")
print()

print("Partition of unity, n=20 exact counts over all 4-vertex classes:")
g20 = build_tnp(20, Fraction(1, 2), seed=11)
total = sum(
    density_exact(g20, t).estimate for t in enumerate_tournaments(4)
)
print(f"  sum of densities = {total}")
