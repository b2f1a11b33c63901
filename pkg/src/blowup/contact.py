"""Maximal contact and coefficient ideals for simple pairs.

For a simple pair (K, c) a hypersurface of maximal contact through a chart
is found inside Delta^{c-1}(K): any generator of order one that is linear
in some variable z with a constant unit coefficient gives, after the
translation z -> z + r/u (Tschirnhausen), the coordinate hypersurface V(z).
Selection is deterministic: highest variable index first (the customary
"last variable" of a monic presentation, as in z^2 + x^2 + y^3), then
lowest generator index.  Exceptional coordinates are only accepted when no
translation would be needed, since moving one would wreck the divisor
bookkeeping.

Restricting to V(z) is done by the weighted coefficient ideal: writing each
generator f = sum_i a_i(x) z^i, the coefficients a_i for i < c enter with
exponent c!/(c-i), and the new pair has bound c!.  This keeps the singular
loci identified under blow-ups (the restriction commutes with controlled
transforms), at the price of factorially growing bounds - hence the hard
cap on c.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, lcm

from .errors import FactorialBlowup, NoUnitLinearVariable, ZeroCoefficientIdeal
from .ideals import Ideal, _coeffs_in
from .polyring import Polynomial


@dataclass(frozen=True)
class MaximalContact:
    """A contact variable plus the translation that straightens it.

    `shift` is the polynomial s (free of the variable) with new = old + s;
    a zero shift means the coordinate already works as-is.
    """

    var: int
    shift: Polynomial
    witness: Polynomial

    @property
    def needs_change(self) -> bool:
        return not self.shift.is_zero()


def find_maximal_contact(
    source: Ideal,
    exceptional: set[int] | frozenset[int] = frozenset(),
    excluded: set[int] | frozenset[int] = frozenset(),
) -> MaximalContact:
    """Pick a maximal-contact variable from generators of `source`.

    `source` should be Delta^{c-1}(K) for the simple pair (K, c);
    `exceptional` holds coordinate indices carrying divisors and `excluded`
    the contact variables already consumed by outer restrictions.
    """
    ctx = source.ctx
    gens = source.gens
    for v in range(ctx.nvars - 1, -1, -1):
        if v in exceptional or v in excluded:
            continue
        for g in gens:
            if g.degree_in(v) != 1:
                continue
            coeffs = _coeffs_in(g, v)
            lead = coeffs[1]
            if not lead.is_constant():
                continue
            rest = coeffs.get(0)
            if rest is None:
                shift = ctx.zero()
            else:
                shift = rest * (Fraction(1) / lead.constant_value())
            return MaximalContact(v, shift, g)
    # second pass: an exceptional coordinate is fine when it needs no move
    for v in range(ctx.nvars - 1, -1, -1):
        if v in excluded or v not in exceptional:
            continue
        mono = tuple(1 if j == v else 0 for j in range(ctx.nvars))
        for g in gens:
            if set(g.terms) == {mono}:
                return MaximalContact(v, ctx.zero(), g)
    raise NoUnitLinearVariable(
        "no generator is unit-linear in an admissible variable"
    )


def coefficient_ideal(a: Ideal, bound: int, var: int) -> Ideal:
    """Weighted restriction of (a, bound) to the hypersurface V(x_var).

    Returns the pair ideal with the implied bound factorial(bound); callers
    must treat the two together.  Raises FactorialBlowup past the cap and
    ZeroCoefficientIdeal when nothing survives the restriction.
    """
    if bound > FactorialBlowup.CAP:
        raise FactorialBlowup(
            f"coefficient ideal for bound {bound} would need bound {factorial(bound)}"
        )
    target = factorial(bound)
    gens: list[Polynomial] = []
    for g in a.gens:
        for i, c in _coeffs_in(g, var).items():
            if i >= bound or c.is_zero():
                continue
            gens.append(c ** (target // (bound - i)))
    if not gens:
        raise ZeroCoefficientIdeal(
            "ideal restricts to zero on the contact hypersurface"
        )
    return Ideal(a.ctx, gens)


def coefficient_bound(bound: int) -> int:
    return factorial(bound)


def intersect_objects(a: Ideal, b_a: int, k: Ideal, b_k: int) -> tuple[Ideal, int]:
    """Pair whose singular locus is the intersection of the two inputs:
    (A^{c} + K^{b}, b c)."""
    return a ** b_k + k ** b_a, b_a * b_k


def scaled_sum(a: Ideal, b_a: int, k: Ideal, b_k: int) -> tuple[Ideal, int]:
    """Same singular locus as intersect_objects but with bound lcm(b, c):
    (A^{m/b} + K^{m/c}, m).  Keeps bounds small enough for later coefficient
    ideals; the two forms are equivalent by the rescaling rule
    Sing(J^s, s b) = Sing(J, b)."""
    m = lcm(b_a, b_k)
    return a ** (m // b_a) + k ** (m // b_k), m
