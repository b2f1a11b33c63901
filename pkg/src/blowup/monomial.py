"""The combinatorial phase: centers from exceptional exponents alone.

Once the reduced part of a pair is a unit on the singular locus, the state
is a monomial in exceptional coordinates (times that unit) and resolution
needs no more ideal computations.  At a point lying on divisors with
exponents a_i, the value h = (-p, omega, ell) records: the smallest number
p of those divisors whose exponents already sum to the bound, the largest
such normalized sum omega among size-p subsets, and the lexicographically
largest label tuple ell realizing it (labels listed largest first).  The
next center is the intersection of the ell divisors; blowing it up drops
h strictly, and a fresh divisor picks up the exponent sum(a_i) - b.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .invariants import GammaEntry


def gamma_at(exps: dict[int, int], bound: int) -> GammaEntry | None:
    """Value of h at a point whose divisors carry the given exponents.

    Returns None when no subset of the divisors reaches the bound, i.e. the
    point is not singular for the pair.
    """
    labels = sorted(l for l, a in exps.items() if a > 0)
    for p in range(1, len(labels) + 1):
        best = None
        for subset in combinations(labels, p):
            total = sum(exps[l] for l in subset)
            if total < bound:
                continue
            cand = (Fraction(total, bound), tuple(sorted(subset, reverse=True)))
            if best is None or cand > best:
                best = cand
        if best is not None:
            return GammaEntry(p, best[0], best[1])
    return None


def max_h_chart(exps: dict[int, int], bound: int) -> GammaEntry | None:
    """Maximal h over a chart.

    h only grows as more divisors pass through a point, so the chart-wise
    maximum sits at the deepest stratum and equals gamma_at of the full
    exponent record; its label tuple names the divisors whose intersection
    is the next center.
    """
    return gamma_at(exps, bound)


def exponent_after(exps: dict[int, int], subset, bound: int) -> int:
    """Exponent of the fresh divisor after blowing up the given intersection."""
    return sum(exps[l] for l in subset) - bound
